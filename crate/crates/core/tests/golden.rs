//! Frozen values, each recomputed here by an independent method where one
//! exists.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use blobcx::algebra::builtin::{ground_field, matrix_algebra, truncated_polynomial};
use blobcx::algebra::regular_bimodule;
use blobcx::blob::{enumerate_configurations, BlobModel, BlobOptions, Manifold};
use blobcx::comparison::stabilization_study;
use blobcx::hochschild::{hh, hochschild_boundary, small_resolution_hh};
use blobcx::{Field, Q};

/// Arcs of a circle or interval as `(sites, cells)`; cells are sites `2s`
/// and gaps `2g + 1`.
fn arcs(n: usize, circle: bool) -> Vec<(BTreeSet<usize>, BTreeSet<usize>)> {
    let mut out = Vec::new();
    if circle {
        for s in 0..n {
            for e in 0..n {
                let len = if s == e { n } else { (e + n - s) % n };
                let sites: BTreeSet<usize> = (1..=len).map(|i| (s + i) % n).collect();
                let mut cells: BTreeSet<usize> = sites.iter().map(|x| 2 * x).collect();
                // gaps strictly inside the arc
                cells.extend((1..len).map(|i| 2 * ((s + i) % n) + 1));
                out.push((sites, cells));
            }
        }
    } else {
        // gaps 0..=n, site i between gaps i and i + 1
        for s in 0..=n {
            for e in s + 1..=n {
                let sites: BTreeSet<usize> = (s..e).collect();
                let mut cells: BTreeSet<usize> = sites.iter().map(|x| 2 * x).collect();
                cells.extend((s + 1..e).map(|g| 2 * g + 1));
                out.push((sites, cells));
            }
        }
    }
    out
}

/// Degreewise dims of the blob complex of `k[x]/(x²)`, by listing multisets
/// of arcs. A twig on `s` sites carries the `2^s − 2` dimensional kernel of
/// multiplication; other sites are free.
fn dual_numbers_dims(n: usize, circle: bool, cap: usize) -> Vec<usize> {
    let arcs = arcs(n, circle);
    let compatible = |a: usize, b: usize| {
        let (x, y) = (&arcs[a].1, &arcs[b].1);
        a == b || x.is_disjoint(y) || x.is_subset(y) || y.is_subset(x)
    };
    let mut dims = vec![0usize; cap + 1];
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(multiset) = stack.pop() {
        let k = multiset.len();
        let distinct: BTreeSet<usize> = multiset.iter().copied().collect();
        let twigs: Vec<usize> = distinct.iter().copied().filter(|&a| !distinct.iter().any(|&b| b != a && arcs[b].1.is_subset(&arcs[a].1))).collect();
        let covered: usize = twigs.iter().map(|&t| arcs[t].0.len()).sum();
        dims[k] += twigs.iter().map(|&t| (1usize << arcs[t].0.len()) - 2).product::<usize>() << (n - covered);
        if k < cap {
            let from = multiset.last().copied().unwrap_or(0);
            for a in from..arcs.len() {
                if multiset.iter().all(|&b| compatible(a, b)) {
                    let mut next = multiset.clone();
                    next.push(a);
                    stack.push(next);
                }
            }
        }
    }
    dims
}

#[test]
fn circle_three_dual_numbers() {
    let a = Arc::new(truncated_polynomial::<Q>(2));
    let model = BlobModel::build(&Manifold::circle(3), a, None, BlobOptions::with_cap(3)).unwrap();
    let dims = model.complex().dims().to_vec();
    assert_eq!(dims, dual_numbers_dims(3, true, 3));
    assert_eq!(dims, vec![8, 30, 54, 78]);
    assert_eq!(model.config_counts(), vec![1, 9, 36, 100]);
    assert_eq!(model.betti().unwrap(), vec![2, 1, 1]);
}

#[test]
fn dims_agree_with_enumeration_oracle() {
    let a = Arc::new(truncated_polynomial::<Q>(2));
    for n in 1..=4 {
        for (m, circle) in [(Manifold::circle(n), true), (Manifold::interval(n), false)] {
            let model = BlobModel::build(&m, a.clone(), None, BlobOptions::with_cap(3)).unwrap();
            assert_eq!(model.complex().dims(), dual_numbers_dims(n, circle, 3), "{m}");
        }
    }
}

#[test]
fn circle_two_pairs() {
    // exhaustive pair count from the cell model
    let arcs = arcs(2, true);
    let mut pairs = 0;
    for a in 0..arcs.len() {
        for b in a..arcs.len() {
            let (x, y) = (&arcs[a].1, &arcs[b].1);
            if a == b || x.is_disjoint(y) || x.is_subset(y) || y.is_subset(x) {
                pairs += 1;
            }
        }
    }
    assert_eq!(pairs, 9);
    assert_eq!(enumerate_configurations(&Manifold::circle(2), 2, 2).len(), pairs);
    assert_eq!(enumerate_configurations(&Manifold::circle(2), 1, 1).len(), 4);
    assert_eq!(enumerate_configurations(&Manifold::interval(3), 1, 1).len(), 6);
}

#[test]
fn hochschild_of_dual_numbers() {
    let a = Arc::new(truncated_polynomial::<Q>(2));
    let m = Arc::new(regular_bimodule(&a));
    let bar = hh(&a, &m, 5).unwrap();
    let (oracle, exactness) = small_resolution_hh::<Q>(2, 5).unwrap();
    assert!(exactness.passed());
    assert_eq!(bar, oracle);
    assert_eq!(bar, vec![2, 1, 1, 1, 1]);
    let g = Arc::new(ground_field::<Q>());
    assert_eq!(hh(&g, &Arc::new(regular_bimodule(&g)), 5).unwrap(), vec![1, 0, 0, 0, 0]);
}

/// `e_ij e_kl = δ_jk e_il` with `e_ij` at index `2i + j`.
fn unit_product(x: usize, y: usize) -> Option<usize> {
    let (i, j, k, l) = (x / 2, x % 2, y / 2, y % 2);
    (j == k).then_some(2 * i + l)
}

#[test]
fn degree_two_boundary_of_matrix_algebra() {
    let a = matrix_algebra::<Q>(2);
    let m = regular_bimodule(&Arc::new(a.clone()));
    let d2 = hochschild_boundary(&a, &m, 2);
    assert_eq!(d2.shape(), (16, 64));
    for mm in 0..4 {
        for x in 0..4 {
            for y in 0..4 {
                // m x ⊗ y − m ⊗ x y + y m ⊗ x
                let mut expected: BTreeMap<usize, i64> = BTreeMap::new();
                if let Some(p) = unit_product(mm, x) {
                    *expected.entry(4 * p + y).or_default() += 1;
                }
                if let Some(p) = unit_product(x, y) {
                    *expected.entry(4 * mm + p).or_default() -= 1;
                }
                if let Some(p) = unit_product(y, mm) {
                    *expected.entry(4 * p + x).or_default() += 1;
                }
                for row in 0..16 {
                    let want = Q::from_i64(expected.get(&row).copied().unwrap_or(0));
                    assert_eq!(d2.get(row, 16 * mm + 4 * x + y), want, "m={mm} a={x} b={y} row {row}");
                }
            }
        }
    }
}

#[test]
fn stabilization_of_dual_numbers() {
    let a = Arc::new(truncated_polynomial::<Q>(2));
    let m = Arc::new(regular_bimodule(&a));
    let (report, rows) = stabilization_study(&a, &m, 2..=6, 2, blobcx::blob::DEFAULT_BUDGET).unwrap();
    assert!(report.passed());
    let betti: Vec<Vec<usize>> = rows.into_iter().map(|r| r.betti.unwrap()).collect();
    assert_eq!(betti, vec![vec![2, 2, 0], vec![2, 1, 1], vec![2, 1, 1], vec![2, 1, 1], vec![2, 1, 1]]);
}

#[test]
fn stabilization_of_matrix_algebra() {
    let a = Arc::new(matrix_algebra::<Q>(2));
    let m = Arc::new(regular_bimodule(&a));
    let (report, rows) = stabilization_study(&a, &m, 2..=4, 2, blobcx::blob::DEFAULT_BUDGET).unwrap();
    assert!(report.passed());
    let betti: Vec<Vec<usize>> = rows.into_iter().map(|r| r.betti.unwrap()).collect();
    assert_eq!(betti, vec![vec![1, 9, 0], vec![1, 0, 27], vec![1, 0, 0]]);
}
