//! The chain map from the Hochschild complex into the marked circle in
//! degrees 0, 1 and 2, and the degree-0 inverse through coinvariants.
//!
//! `cargo run --release --example comparison [ALGEBRA] [SITES]`

use blobcx::algebra::builtin;
use blobcx::comparison::{build_phi, h0_comparison};
use blobcx::linalg::rank;
use blobcx::Q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (a, m) = builtin::<Q>(args.first().map_or("matrix_algebra 2", String::as_str))?.pair();
    let sites = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);

    let cmp = build_phi(&a, &m, sites, 2)?;
    for k in 0..=2 {
        let phi = cmp.phi(k);
        println!("φ_{k}: {} × {}, rank {}, {} nonzeros", phi.nrows(), phi.ncols(), rank(phi), phi.nnz());
    }
    print!("{}", cmp.map.verify().summary());
    print!("{}", h0_comparison(&cmp)?.summary());
    Ok(())
}
