//! Assemble the blob complex of a circle or interval and print its
//! configurations, dimensions and homology.
//!
//! `cargo run --release --example blob_complex [circle|interval] [SITES] [CAP] [ALGEBRA]`

use std::sync::Arc;

use blobcx::algebra::builtin;
use blobcx::blob::{BlobModel, BlobOptions, Manifold};
use blobcx::Q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let sites = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let cap = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(3);
    let manifold = match args.first().map(String::as_str) {
        Some("interval") => Manifold::interval(sites),
        _ => Manifold::circle(sites),
    };
    let (algebra, _) = builtin::<Q>(args.get(3).map_or("truncated_polynomial 2", String::as_str))?.pair();

    let model = BlobModel::build(&manifold, Arc::clone(&algebra), None, BlobOptions::with_cap(cap))?;
    println!("{manifold} with {}", algebra.name());
    let h = model.homology()?;
    for k in model.complex().degrees() {
        let bound = if h.exact[k] { "" } else { " (upper bound)" };
        println!("  degree {k}: {} configurations, dim {}, betti {}{bound}", model.config_counts()[k], model.complex().dim(k), h.betti_at(k));
    }
    println!("  ∂² = 0: {}", model.complex().is_valid());

    println!("a few 2-blob configurations:");
    for g in model.generators(2).iter().filter(|g| g.dim > 0).take(6) {
        println!("  {}  dim {}", g.config.describe(model.supports()), g.dim);
    }
    Ok(())
}
