//! The contracting homotopy of an interval: adding the whole interval as an
//! outermost blob.
//!
//! `cargo run --release --example contraction [SITES]`

use std::sync::Arc;

use blobcx::algebra::builtin::truncated_polynomial;
use blobcx::blob::{contracting_homotopy, BlobModel, BlobOptions, Manifold};
use blobcx::chain::{verify_homotopy, ChainMap};
use blobcx::Q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let a = Arc::new(truncated_polynomial::<Q>(2));
    let model = BlobModel::build(&Manifold::interval(n), a, None, BlobOptions::with_cap(3))?;
    println!("interval({n}): dims {:?}, betti {:?}", model.complex().dims(), model.betti()?);

    let c = contracting_homotopy(&model)?;
    for (k, h) in c.homotopy.components.iter().enumerate() {
        println!("  h_{k}: {} × {}, {} nonzeros", h.nrows(), h.ncols(), h.nnz());
    }
    let id = ChainMap::identity(model.complex().clone());
    print!("{}", verify_homotopy(&c.homotopy, &id, &c.projector)?.summary());
    Ok(())
}
