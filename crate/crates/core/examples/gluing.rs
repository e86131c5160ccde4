//! Closing an interval into a circle, and rotating the circle.
//!
//! `cargo run --release --example gluing`

use std::sync::Arc;

use blobcx::algebra::builtin::truncated_polynomial;
use blobcx::blob::{glue, rotation_action, BlobModel, BlobOptions, Manifold};
use blobcx::Q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = Arc::new(truncated_polynomial::<Q>(2));
    let interval = BlobModel::build(&Manifold::interval(3), a.clone(), None, BlobOptions::with_cap(3))?;
    let circle = BlobModel::build(&Manifold::circle(3), a, None, BlobOptions::with_cap(3))?;

    let gl = glue(&interval, &circle)?;
    println!("gluing interval(3) → circle(3)");
    println!("  source dims {:?}", interval.complex().dims());
    println!("  target dims {:?}", circle.complex().dims());
    println!("  ranks       {:?}", gl.ranks());
    println!("  chain map: {}", gl.is_chain_map());

    let r = rotation_action(&circle, 1)?;
    let r3 = r.compose(&r)?.compose(&r)?;
    let order_three = r3.components.iter().enumerate().all(|(k, m)| m.sub(&blobcx::linalg::SparseMatrix::identity(circle.complex().dim(k))).unwrap().is_zero());
    println!("rotation by one site: chain map {}, cube is the identity {order_three}", r.is_chain_map());
    Ok(())
}
