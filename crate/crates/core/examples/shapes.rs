//! Polyhedra attached to blob configurations: nested blobs give simplices,
//! disjoint blobs give cubes, and mixtures give cone-products.
//!
//! `cargo run --example shapes`

use std::collections::BTreeMap;

use blobcx::blob::{shape, Manifold, Supports};

fn main() {
    let sup = Supports::new(&Manifold::interval(4));
    let mut seen: BTreeMap<String, (Vec<usize>, String)> = BTreeMap::new();
    for configs in sup.configurations(4, 4) {
        for c in configs {
            let p = shape(&sup, &c);
            seen.entry(p.to_string()).or_insert_with(|| (p.f_vector(), c.describe(&sup)));
        }
    }
    for (p, (f, example)) in seen {
        println!("{p:<40} f = {f:?}  e.g. {example}");
    }
}
