fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let dir = std::env::var("CARGO_MANIFEST_DIR").expect("set by cargo");
    cbindgen::Builder::new()
        .with_crate(&dir)
        .with_config(
            cbindgen::Config::from_file(format!("{dir}/cbindgen.toml")).expect("cbindgen.toml"),
        )
        .generate()
        .expect("unable to generate the C header")
        .write_to_file(format!("{dir}/include/cobarlab.h"));
}
