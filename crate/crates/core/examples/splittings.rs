//! Refinement posets of cut points and the homology of their order
//! complexes.
//!
//! `cargo run --example splittings`

use blobcx::blob::{order_complex, order_complex_homology, splitting_poset, Manifold};
use blobcx::Q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=4 {
        for m in [Manifold::interval(n), Manifold::circle(n)] {
            let p = splitting_poset(&m)?;
            let chains: Vec<usize> = order_complex(&p)?.iter().map(Vec::len).collect();
            println!("{m}: {} splittings, simplices {chains:?}, reduced betti {:?}", p.len(), order_complex_homology::<Q>(&p)?);
        }
    }
    Ok(())
}
