//! The skein module in degree 0: the evaluation map on intervals, and
//! coinvariants on a circle with a marked point.
//!
//! `cargo run --release --example skein`

use std::sync::Arc;

use blobcx::algebra::{coinvariants, free_bimodule, regular_bimodule, BuiltinAlgebra};
use blobcx::blob::{BlobModel, BlobOptions, Manifold};
use blobcx::linalg::rank;
use blobcx::Q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for b in BuiltinAlgebra::standard() {
        let a = Arc::new(b.build::<Q>());
        let interval = BlobModel::build(&Manifold::interval(3), a.clone(), None, BlobOptions::with_cap(1))?;
        let ev = interval.evaluation()?;
        println!("{b}: interval(3) H₀ dim {} (dim C = {}, rank ev = {})", interval.skein()?.dim, a.dim(), rank(&ev));

        for m in [Arc::new(regular_bimodule(&a)), Arc::new(free_bimodule(&a))] {
            let circle = BlobModel::build(&Manifold::marked_circle(3), a.clone(), Some(m.clone()), BlobOptions::with_cap(1))?;
            println!("  marked circle(3), {}: H₀ dim {}, coinvariants {}", m.name(), circle.skein()?.dim, coinvariants(&m).dim());
        }
    }
    Ok(())
}
