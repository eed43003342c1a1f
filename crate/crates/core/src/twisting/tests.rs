use super::*;
use crate::gradedlin::Field;

const Q: Field = Field::Rational;

fn ass_c() -> Cooperad {
    Cooperad::preset("Ass^c", 5, Q).unwrap()
}

fn s_ass() -> Operad {
    Operad::preset("Ass", 5, Q).unwrap().desuspend()
}

fn s_com() -> Operad {
    Operad::preset("Com", 5, Q).unwrap().desuspend()
}

#[test]
fn presets_are_valid() {
    for name in PRESET_TWISTINGS {
        let t = preset_twisting(name, 5, Q, 4).unwrap();
        assert!(t.report().mc_residual_zero, "{name}");
        assert!(t.mc_residual().unwrap().is_empty(), "{name}");
        let koszul = matches!(name, "kappa_ass" | "kappa_lie" | "kappa_cochain");
        assert_eq!(t.koszul(), koszul, "{name}");
    }
    assert!(matches!(
        preset_twisting("gamma", 5, Q, 4),
        Err(Error::UnknownName(_))
    ));
}

#[test]
fn kappa_images() {
    let k = preset_twisting("kappa_ass", 5, Q, 4).unwrap();
    let c = k.source();
    let p = k.target();
    let mu12 = c.index_of(2, "mu12*").unwrap();
    let mu21 = c.index_of(2, "mu21*").unwrap();
    assert_eq!(
        k.image(2, mu12),
        Vector::basis(Q, p.index_of(2, "mu12").unwrap())
    );
    assert_eq!(
        k.image(2, mu21),
        Vector::basis(Q, p.index_of(2, "mu21").unwrap()).negated()
    );
    for n in 3..=5 {
        for x in 0..c.dim(n).unwrap() {
            assert!(k.image(n, x).is_zero());
        }
    }
    let beta = preset_twisting("beta", 5, Q, 4).unwrap();
    assert_eq!(beta.image(2, mu12), Vector::basis(Q, 0));
    assert_eq!(beta.image(2, mu21), Vector::basis(Q, 0).negated());
    assert!(preset_twisting("epsilon", 5, Q, 4).unwrap().is_zero());
}

#[test]
fn degree_zero_images_are_rejected() {
    let ass = Operad::preset("Ass", 5, Q).unwrap();
    let err = make_twisting(
        "bad",
        &ass_c(),
        &ass,
        vec![((2, 0), Vector::basis(Q, 0))],
        false,
    )
    .unwrap_err();
    assert!(matches!(err, Error::Degree(_)), "{err}");
}

#[test]
fn equivariance_is_enforced() {
    // Dropping the sign on mu21* breaks equivariance against the twisted action.
    let images = vec![((2, 0), Vector::basis(Q, 0)), ((2, 1), Vector::basis(Q, 1))];
    let err = make_twisting("bad", &ass_c(), &s_ass(), images, false).unwrap_err();
    assert!(matches!(err, Error::Equivariance(_)), "{err}");
}

#[test]
fn maurer_cartan_is_enforced() {
    // α(mu12*) = mu12 + 2 mu21 is equivariant but squares to a nonzero ternary operation.
    let c = ass_c();
    let p = s_ass();
    let mut v = Vector::basis(Q, 0);
    v.add_term(1, Q.from_i64(2));
    let images = binary_orbit(&c, &p, 0, v).unwrap();
    let err = make_twisting("bad", &c, &p, images, false).unwrap_err();
    assert!(matches!(err, Error::MaurerCartan(_)), "{err}");
    // The scaled Koszul morphism is still a twisting morphism.
    let images = binary_orbit(&c, &p, 0, Vector::basis(Q, 0).scaled(&Q.from_i64(3))).unwrap();
    assert!(make_twisting("scaled", &c, &p, images, false).is_ok());
}

#[test]
fn cochain_presets_have_expected_ends() {
    let k = preset_twisting("kappa_cochain", 1, Q, 3).unwrap();
    let eta = k.source().index_of(1, "η").unwrap();
    assert!(k.image(1, eta).is_zero());
    let a = preset_twisting("alpha_cochain", 1, Q, 3).unwrap();
    assert_eq!(a.target().name(), "k[x]");
}

#[test]
fn kappa_then_ass_to_com_is_beta() {
    let kappa = preset_twisting("kappa_ass", 5, Q, 4).unwrap();
    let beta = preset_twisting("beta", 5, Q, 4).unwrap();
    let f = OperadMap::ass_to_com(&s_ass(), &s_com()).unwrap();
    assert!(kappa
        .compose_with_operad_map(&f)
        .unwrap()
        .same_images(&beta));
    let id = OperadMap::identity(&s_ass());
    assert!(kappa
        .compose_with_operad_map(&id)
        .unwrap()
        .same_images(&kappa));
    let wrong = OperadMap::identity(&s_com());
    assert!(matches!(
        kappa.compose_with_operad_map(&wrong),
        Err(Error::Mismatch(_))
    ));
}

#[test]
fn augmentation_gives_epsilon() {
    for name in ["kappa_ass", "beta"] {
        let alpha = preset_twisting(name, 5, Q, 4).unwrap();
        let unit = Operad::preset("Unit", 5, Q).unwrap();
        let aug = OperadMap::augmentation(alpha.target(), &unit).unwrap();
        let eps = epsilon(alpha.source()).unwrap();
        assert!(
            alpha
                .compose_with_operad_map(&aug)
                .unwrap()
                .same_images(&eps),
            "{name}"
        );
    }
}

#[test]
fn ass_to_lie_then_kappa_lie_is_beta() {
    let kappa_lie = preset_twisting("kappa_lie", 5, Q, 4).unwrap();
    let beta = preset_twisting("beta", 5, Q, 4).unwrap();
    let f = CooperadMap::ass_to_lie(&ass_c(), kappa_lie.source()).unwrap();
    let composite = TwistingMorphism::precompose_with_cooperad_map(&f, &kappa_lie).unwrap();
    assert!(composite.same_images(&beta));
    let id = CooperadMap::identity(kappa_lie.source());
    let same = TwistingMorphism::precompose_with_cooperad_map(&id, &kappa_lie).unwrap();
    assert!(same.same_images(&kappa_lie));
}

#[test]
fn zero_binary_component_gives_zero_binary_images() {
    let kappa = preset_twisting("kappa_ass", 5, Q, 4).unwrap();
    let c = ass_c();
    let mut columns = vec![Vec::new()];
    for n in 1..=5 {
        let dim = c.dim(n).unwrap();
        columns.push(
            (0..dim)
                .map(|x| {
                    if n == 2 {
                        Vector::zero(Q)
                    } else {
                        Vector::basis(Q, x)
                    }
                })
                .collect(),
        );
    }
    let f = CooperadMap::explicit(&c, &c, columns).unwrap();
    let composite = TwistingMorphism::precompose_with_cooperad_map(&f, &kappa).unwrap();
    for x in 0..2 {
        assert!(composite.image(2, x).is_zero());
    }
}

#[test]
fn composition_is_associative_on_presets() {
    let kappa = preset_twisting("kappa_ass", 5, Q, 4).unwrap();
    let f = OperadMap::ass_to_com(&s_ass(), &s_com()).unwrap();
    let unit = Operad::preset("Unit", 5, Q).unwrap();
    let g = OperadMap::augmentation(&s_com(), &unit).unwrap();
    let stepwise = kappa
        .compose_with_operad_map(&f)
        .unwrap()
        .compose_with_operad_map(&g)
        .unwrap();
    let at_once = kappa
        .compose_with_operad_map(&g.after(&f).unwrap())
        .unwrap();
    assert!(stepwise.same_images(&at_once));
}

#[test]
fn subsets_count_binomials() {
    assert_eq!(subsets(5, 2).len(), 10);
    assert_eq!(subsets(4, 4), vec![vec![0, 1, 2, 3]]);
    assert_eq!(subsets(3, 1).len(), 3);
}
