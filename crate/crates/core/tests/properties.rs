//! Randomized identities over builtin algebras and small manifolds.

use std::sync::Arc;

use blobcx::algebra::{coinvariants, regular_bimodule, BuiltinAlgebra};
use blobcx::blob::{estimate_dims, rotation_action, BlobModel, BlobOptions, Manifold};
use blobcx::comparison::build_phi;
use blobcx::hochschild::hh;
use blobcx::linalg::SparseVec;
use blobcx::{Field, Q};
use proptest::prelude::*;

fn algebra() -> impl Strategy<Value = BuiltinAlgebra> {
    prop::sample::select(BuiltinAlgebra::standard())
}

fn manifold() -> impl Strategy<Value = Manifold> {
    (1usize..=4, 0usize..3).prop_map(|(n, kind)| match kind {
        0 => Manifold::circle(n),
        1 => Manifold::marked_circle(n),
        _ => Manifold::interval(n),
    })
}

fn vector(dim: usize) -> impl Strategy<Value = SparseVec<Q>> {
    prop::collection::vec((0..dim, -3i64..=3), 1..6).prop_map(|pairs| SparseVec::from_pairs(pairs.into_iter().map(|(i, c)| (i, Q::from_i64(c))).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn assembled_models_are_complexes(b in algebra(), m in manifold(), cap in 1usize..=3) {
        let a = Arc::new(b.build::<Q>());
        let module = m.is_marked().then(|| Arc::new(regular_bimodule(&a)));
        let opts = BlobOptions::with_cap(cap);
        let model = BlobModel::build(&m, a.clone(), module, opts.clone()).unwrap();
        prop_assert!(model.complex().is_valid());
        let md = m.is_marked().then_some(a.dim());
        prop_assert_eq!(model.complex().dims(), &estimate_dims(&m, a.dim(), md, &opts)[..]);
    }

    #[test]
    fn skein_of_marked_circle_is_coinvariants(b in algebra(), n in 2usize..=4) {
        let a = Arc::new(b.build::<Q>());
        let module = Arc::new(regular_bimodule(&a));
        let model = BlobModel::build(&Manifold::marked_circle(n), a, Some(module.clone()), BlobOptions::with_cap(1)).unwrap();
        prop_assert_eq!(model.skein().unwrap().dim, coinvariants(&module).dim());
    }

    #[test]
    fn rotations_are_chain_automorphisms(b in algebra(), n in 1usize..=3, steps in 0usize..6) {
        let a = Arc::new(b.build::<Q>());
        let model = BlobModel::build(&Manifold::circle(n), a, None, BlobOptions::with_cap(2)).unwrap();
        let r = rotation_action(&model, steps).unwrap();
        prop_assert!(r.is_chain_map());
        prop_assert_eq!(r.ranks(), model.complex().dims().to_vec());
    }

    #[test]
    fn hh0_is_coinvariants(b in algebra()) {
        let a = Arc::new(b.build::<Q>());
        let m = Arc::new(regular_bimodule(&a));
        prop_assert_eq!(hh(&a, &m, 1).unwrap()[0], coinvariants(&m).dim());
    }

    #[test]
    fn phi_commutes_on_random_chains(x in vector(8), y in vector(4)) {
        let a = Arc::new(BuiltinAlgebra::TruncatedPolynomial(2).build::<Q>());
        let m = Arc::new(regular_bimodule(&a));
        let cmp = build_phi(&a, &m, 3, 2).unwrap();
        let hoch = &cmp.hochschild.complex;
        let blob = cmp.model.complex();
        for (k, v) in [(2usize, &x), (1, &y)] {
            let left = blob.boundary_or_zero(k).mul_vec(&cmp.phi(k).mul_vec(v).unwrap()).unwrap();
            let right = cmp.phi(k - 1).mul_vec(&hoch.boundary_or_zero(k).mul_vec(v).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
