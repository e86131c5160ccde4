//! The blob complex of two intervals against the tensor product of theirs.
//!
//! `cargo run --release --example disjoint_union`

use std::sync::Arc;

use blobcx::algebra::builtin::truncated_polynomial;
use blobcx::blob::{disjoint_union_iso, BlobModel, BlobOptions, Manifold};
use blobcx::linalg::rank;
use blobcx::Q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = Arc::new(truncated_polynomial::<Q>(2));
    let (i1, i2) = (Manifold::interval(1), Manifold::interval(2));
    let union = Manifold::disjoint_union(&[i1.clone(), i2.clone()])?;
    let build = |m: &Manifold| BlobModel::build(m, a.clone(), None, BlobOptions::with_cap(2));
    let (mu, m1, m2) = (build(&union)?, build(&i1)?, build(&i2)?);

    let iso = disjoint_union_iso(&mu, &m1, &m2)?;
    println!("{union}: dims {:?}", mu.complex().dims());
    println!("tensor product:  dims {:?}", iso.target.dims());
    for (k, m) in iso.components.iter().enumerate() {
        println!("  degree {k}: rank {} of {}", rank(m), m.ncols());
    }
    print!("{}", iso.verify().summary());
    Ok(())
}
