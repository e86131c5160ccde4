//! Sparse exact linear algebra: rank, kernels, solves and quotients.

mod echelon;
mod matrix;
mod subspace;
mod vector;

pub use echelon::{kernel_basis, rank, rref, solve, Echelon, LinearSolver, Solution};
pub use matrix::SparseMatrix;
pub use subspace::{quotient_by, quotient_projection, Quotient, Subspace};
pub use vector::SparseVec;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{context}: expected dimension {expected}, found {found}")]
    DimensionMismatch { context: &'static str, expected: usize, found: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("index {index} out of bounds (limit {bound})")]
    IndexOutOfBounds { index: usize, bound: usize },
    #[error("{0} is not a usable prime modulus")]
    InvalidModulus(u64),
    #[error("cannot parse field selection `{0}` (expected `q` or `p:<prime>`)")]
    InvalidFieldSpec(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Q};
    use proptest::prelude::*;

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    fn dense(rows: &[&[i64]]) -> SparseMatrix<Q> {
        SparseMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
    }

    /// Multiplication C⊗C → C for C = Q[x]/(x²), basis (1, x).
    fn dual_numbers_mult() -> SparseMatrix<Q> {
        // columns: 1⊗1, 1⊗x, x⊗1, x⊗x
        dense(&[&[1, 0, 0, 0], &[0, 1, 1, 0]])
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&SparseMatrix::<Q>::identity(2)), 2);
        assert_eq!(rank(&SparseMatrix::<Q>::zero(3, 3)), 0);
        assert_eq!(rank(&dual_numbers_mult()), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&SparseMatrix::<Q>::identity(3)).is_empty());
        let m = dual_numbers_mult();
        let ker = kernel_basis(&m);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).unwrap().is_zero());
        }
        // reduced echelon: x⊗x and 1⊗x - x⊗1
        assert_eq!(ker[0], SparseVec::from_pairs(vec![(1, q(1)), (2, q(-1))]));
        assert_eq!(ker[1], SparseVec::unit(3));
    }

    #[test]
    fn solve_examples() {
        let b = SparseVec::from_pairs(vec![(0, q(3)), (2, q(-1))]);
        assert_eq!(solve(&SparseMatrix::identity(3), &b).unwrap(), Solution::Solved(b.clone()));
        assert_eq!(solve(&SparseMatrix::<Q>::zero(3, 3), &b).unwrap(), Solution::Inconsistent);
        assert!(solve(&SparseMatrix::<Q>::identity(2), &b).is_err());
    }

    #[test]
    fn quotient_examples() {
        let qt = quotient_projection(2, &[SparseVec::<Q>::unit(0)]).unwrap();
        assert_eq!(qt.dim(), 1);
        let qt = quotient_projection(2, &[SparseVec::<Q>::unit(0), SparseVec::from_pairs(vec![(0, q(1)), (1, q(1))])]).unwrap();
        assert_eq!(qt.dim(), 0);
        let ker = kernel_basis(&dual_numbers_mult());
        let qt = quotient_projection(4, &ker).unwrap();
        assert_eq!(qt.dim(), 2);
        assert!(qt.projection.mul(&Subspace::span(4, ker).unwrap().inclusion()).unwrap().is_zero());
        assert!(quotient_projection(2, &[SparseVec::<Q>::unit(5)]).is_err());
    }

    #[test]
    fn subspace_coordinates_read_pivots() {
        let s = Subspace::span(4, vec![
            SparseVec::from_pairs(vec![(0, q(2)), (3, q(4))]),
            SparseVec::from_pairs(vec![(1, q(1)), (3, q(1))]),
        ])
        .unwrap();
        let v = SparseVec::from_pairs(vec![(0, q(1)), (1, q(5)), (3, q(7))]);
        assert_eq!(s.coordinates(&v), Some(vec![q(1), q(5)]));
        assert_eq!(s.coordinates(&SparseVec::unit(3)), None);
    }

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<(usize, usize, i64)>)> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), proptest::collection::vec((0..r, 0..c, -3i64..4), 0..20))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity_and_kernel((r, c, t) in small_matrix()) {
            let m = SparseMatrix::from_triplets(r, c, t.into_iter().map(|(i, j, v)| (i, j, q(v))).collect()).unwrap();
            let ker = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + ker.len(), c);
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
            for v in &ker {
                prop_assert!(m.mul_vec(v).unwrap().is_zero());
            }
        }

        #[test]
        fn solve_reproduces_rhs((r, c, t) in small_matrix(), x in proptest::collection::vec(-3i64..4, 7)) {
            let m = SparseMatrix::from_triplets(r, c, t.into_iter().map(|(i, j, v)| (i, j, q(v))).collect()).unwrap();
            let x = SparseVec::from_dense(&x[..c].iter().map(|&v| q(v)).collect::<Vec<_>>());
            let b = m.mul_vec(&x).unwrap();
            match solve(&m, &b).unwrap() {
                Solution::Solved(y) => prop_assert_eq!(m.mul_vec(&y).unwrap(), b),
                Solution::Inconsistent => prop_assert!(false, "consistent system reported inconsistent"),
            }
        }

        #[test]
        fn insertion_order_is_irrelevant((r, c, t) in small_matrix()) {
            let trip: Vec<(usize, usize, Q)> = t.into_iter().map(|(i, j, v)| (i, j, q(v))).collect();
            let mut rev = trip.clone();
            rev.reverse();
            let a = SparseMatrix::from_triplets(r, c, trip).unwrap();
            let b = SparseMatrix::from_triplets(r, c, rev).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(kernel_basis(&a), kernel_basis(&b));
        }
    }
}
