//! Hochschild homology of the builtin algebras from the bar complex, checked
//! against the periodic resolution for truncated polynomials.
//!
//! `cargo run --release --example hochschild [CAP]`

use std::sync::Arc;

use blobcx::algebra::{coinvariants, free_bimodule, regular_bimodule, BuiltinAlgebra};
use blobcx::hochschild::{build_hochschild, hh, small_resolution_hh};
use blobcx::Q;

fn main() {
    let cap: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let mut all = BuiltinAlgebra::standard();
    all.push(BuiltinAlgebra::Symmetric3);
    for b in all {
        let a = Arc::new(b.build::<Q>());
        let reg = Arc::new(regular_bimodule(&a));
        let c = if a.dim() > 4 { cap.min(3) } else { cap };
        let h = build_hochschild(&a, &reg, c);
        println!("{b}: dims {:?}", h.complex.dims());
        println!("  HH(C)     {:?}  (coinvariants {})", hh(&a, &reg, c).unwrap(), coinvariants(&reg).dim());
        if a.dim() <= 4 {
            println!("  HH(C ⊗ C) {:?}", hh(&a, &Arc::new(free_bimodule(&a)), c).unwrap());
        }
    }
    for n in [2, 3, 4] {
        let (betti, exactness) = small_resolution_hh::<Q>(n, cap).unwrap();
        println!("k[x]/(x^{n}) from the resolution: {betti:?}, exact: {}", exactness.passed());
    }
}
