use std::env;
use std::path::PathBuf;

use cbindgen::{Config, Language};

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    println!("cargo:rerun-if-changed=src/lib.rs");

    let mut config = Config {
        language: Language::C,
        cpp_compat: true,
        include_guard: Some("HYPERGRAM_H".into()),
        header: Some("/* C API for the hypergram library. Generated by cbindgen; do not edit. */".into()),
        usize_is_size_t: true,
        ..Default::default()
    };
    config.enumeration.prefix_with_name = true;

    cbindgen::Builder::new()
        .with_config(config)
        .with_crate(&crate_dir)
        .generate()
        .expect("unable to generate C bindings")
        .write_to_file(crate_dir.join("include/hypergram.h"));
}
