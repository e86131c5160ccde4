//! Write an algebra to a spec file, read it back and validate it.
//!
//! `cargo run --example spec_files [PATH_OR_BUILTIN]`

use std::sync::Arc;

use blobcx::algebra::builtin::truncated_polynomial;
use blobcx::algebra::regular_bimodule;
use blobcx::specfile::{load, parse, SpecFile};
use blobcx::Q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    if let Some(source) = std::env::args().nth(1) {
        let loaded = load::<Q>(&source)?;
        println!("{} (sha256 {})", loaded.algebra.name(), loaded.digest);
        print!("{}", loaded.algebra.validate().summary());
        for m in &loaded.bimodules {
            print!("{}", m.validate().summary());
        }
        return Ok(());
    }

    let a = truncated_polynomial::<Q>(3);
    let reg = regular_bimodule(&Arc::new(a.clone()));
    let text = SpecFile::from_algebra(&a, &[&reg]).to_json();
    println!("{text}");
    let (back, modules) = parse(&text)?.build::<Q>()?;
    assert_eq!(*back, a);
    println!("round trip ok, {} bimodule(s)", modules.len());

    // a broken document reports where it broke
    let mut spec = parse(&text)?;
    spec.mult[0][0] = 9;
    println!("{}", spec.build::<Q>().unwrap_err());
    Ok(())
}
