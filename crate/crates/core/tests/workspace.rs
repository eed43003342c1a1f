use cobarlab::cli::{bundled, bundled_names, cmd_validate, parse_workspace, Workspace};

#[test]
fn good_fixtures_validate() {
    for name in ["example1", "example2", "comodules"] {
        let r = cmd_validate(bundled(name).unwrap()).unwrap();
        assert!(r.ok, "{name}:\n{}", r.render());
    }
}

#[test]
fn bad_fixtures_are_reported() {
    for name in ["bad_degree", "bad_span"] {
        let r = cmd_validate(bundled(name).unwrap()).unwrap();
        assert!(!r.ok, "{name} should fail");
        assert_eq!(r.exit_code(), 1);
        println!("{}", r.render());
    }
}

#[test]
fn round_trip() {
    for name in bundled_names() {
        let file = bundled(name).unwrap();
        let again = parse_workspace(&file.to_json()).unwrap();
        assert_eq!(file, again, "{name}");
    }
}

#[test]
fn strict_load_fails_on_first_bad_object() {
    assert!(Workspace::load(bundled("bad_span").unwrap()).is_err());
    assert!(Workspace::load(bundled("example2").unwrap()).is_ok());
}

#[test]
fn unknown_schema_version_is_a_parse_error() {
    let e = parse_workspace(r#"{"schema_version": 7}"#).unwrap_err();
    assert!(matches!(e, cobarlab::Error::Parse(_)));
}
