use crate::algebra::{Algebra, AlgebraError, Bimodule};
use crate::field::Field;
use crate::linalg::{SparseMatrix, SparseVec, Subspace};

/// One slot of an evaluation, read in clockwise order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Label<F> {
    Alg(SparseVec<F>),
    Mod(SparseVec<F>),
}

/// Tensor shape of an evaluation map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EvalShape {
    /// `C^{⊗k} → C`
    Plain(usize),
    /// `C^{⊗left} ⊗ M ⊗ C^{⊗right} → M`
    Marked { left: usize, right: usize },
}

impl EvalShape {
    pub fn slots(&self) -> usize {
        match *self {
            EvalShape::Plain(k) => k,
            EvalShape::Marked { left, right } => left + right + 1,
        }
    }

    pub fn tensor_dim<F: Field>(&self, algebra: &Algebra<F>, module: Option<&Bimodule<F>>) -> Result<usize, AlgebraError> {
        let d = algebra.dim();
        Ok(match *self {
            EvalShape::Plain(k) => d.pow(k as u32),
            EvalShape::Marked { left, right } => d.pow((left + right) as u32) * module.ok_or(AlgebraError::MissingModule)?.dim(),
        })
    }

    pub fn target_dim<F: Field>(&self, algebra: &Algebra<F>, module: Option<&Bimodule<F>>) -> Result<usize, AlgebraError> {
        Ok(match self {
            EvalShape::Plain(_) => algebra.dim(),
            EvalShape::Marked { .. } => module.ok_or(AlgebraError::MissingModule)?.dim(),
        })
    }
}

enum Acc<F> {
    Alg(SparseVec<F>),
    Mod(SparseVec<F>),
}

/// Product of the labels in order: `c_1 ⋯ c_j · m · d_1 ⋯ d_l` with a module
/// slot, `c_1 ⋯ c_k` without. The empty product is the unit.
pub fn evaluate<F: Field>(algebra: &Algebra<F>, module: Option<&Bimodule<F>>, labels: &[Label<F>]) -> Result<SparseVec<F>, AlgebraError> {
    let slots = labels.iter().filter(|l| matches!(l, Label::Mod(_))).count();
    if slots > 1 {
        return Err(AlgebraError::TooManyModuleSlots(slots));
    }
    if slots == 1 && module.is_none() {
        return Err(AlgebraError::MissingModule);
    }
    let mut acc = Acc::Alg(algebra.unit().clone());
    for label in labels {
        acc = match (acc, label) {
            (Acc::Alg(x), Label::Alg(a)) => Acc::Alg(algebra.mul(&x, a)),
            (Acc::Alg(x), Label::Mod(m)) => Acc::Mod(module.unwrap().act_left(&x, m)),
            (Acc::Mod(m), Label::Alg(a)) => Acc::Mod(module.unwrap().act_right(&m, a)),
            (Acc::Mod(_), Label::Mod(_)) => unreachable!(),
        };
    }
    Ok(match acc {
        Acc::Alg(x) | Acc::Mod(x) => x,
    })
}

/// Matrix of the evaluation map; tensor basis in mixed radix with the
/// first slot most significant.
pub fn evaluation_matrix<F: Field>(algebra: &Algebra<F>, module: Option<&Bimodule<F>>, shape: EvalShape) -> Result<SparseMatrix<F>, AlgebraError> {
    let target = shape.target_dim(algebra, module)?;
    let ncols = shape.tensor_dim(algebra, module)?;
    let mark = match shape {
        EvalShape::Plain(_) => None,
        EvalShape::Marked { left, .. } => Some(left),
    };
    let mut columns = Vec::with_capacity(ncols);
    let start = Acc::Alg(algebra.unit().clone());
    walk(algebra, module, shape.slots(), mark, 0, start, &mut columns);
    debug_assert_eq!(columns.len(), ncols);
    Ok(SparseMatrix::from_columns(target, columns)?)
}

fn walk<F: Field>(
    algebra: &Algebra<F>,
    module: Option<&Bimodule<F>>,
    slots: usize,
    mark: Option<usize>,
    pos: usize,
    acc: Acc<F>,
    out: &mut Vec<SparseVec<F>>,
) {
    if pos == slots {
        out.push(match acc {
            Acc::Alg(x) | Acc::Mod(x) => x,
        });
        return;
    }
    if mark == Some(pos) {
        let m = module.expect("marked shape has a module");
        let Acc::Alg(x) = acc else { unreachable!() };
        for b in 0..m.dim() {
            let next = m.act_left(&x, &SparseVec::unit(b));
            walk(algebra, module, slots, mark, pos + 1, Acc::Mod(next), out);
        }
        return;
    }
    for b in 0..algebra.dim() {
        let next = match &acc {
            Acc::Alg(x) => Acc::Alg(algebra.mul_basis_right(x, b)),
            Acc::Mod(v) => Acc::Mod(module.unwrap().act_right_basis(v, b)),
        };
        walk(algebra, module, slots, mark, pos + 1, next, out);
    }
}

/// Kernel of the evaluation map, in reduced echelon form.
pub fn evaluation_kernel<F: Field>(algebra: &Algebra<F>, module: Option<&Bimodule<F>>, shape: EvalShape) -> Result<Subspace<F>, AlgebraError> {
    let m = evaluation_matrix(algebra, module, shape)?;
    let basis = crate::linalg::kernel_basis(&m);
    Ok(Subspace::span(m.ncols(), basis)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin::{cyclic_group_algebra, ground_field, matrix_algebra, symmetric_group_algebra, truncated_polynomial};
    use crate::algebra::{free_bimodule, regular_bimodule};
    use crate::field::Q;
    use crate::linalg::rank;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn alg(v: SparseVec<Q>) -> Label<Q> {
        Label::Alg(v)
    }

    #[test]
    fn x_times_x_vanishes() {
        let c = truncated_polynomial::<Q>(2);
        let x = SparseVec::unit(1);
        assert!(evaluate(&c, None, &[alg(x.clone()), alg(x)]).unwrap().is_zero());
    }

    #[test]
    fn units_are_neutral() {
        let c = Arc::new(matrix_algebra::<Q>(2));
        let m = regular_bimodule(&c);
        let one = c.unit().clone();
        assert_eq!(evaluate(&c, None, &[alg(one.clone()), alg(one.clone()), alg(one.clone())]).unwrap(), one);
        let v = SparseVec::from_pairs(vec![(1, Q::from_i64(3)), (2, Q::from_i64(-1))]);
        let labels = [alg(one.clone()), Label::Mod(v.clone()), alg(one)];
        assert_eq!(evaluate(&c, Some(&m), &labels).unwrap(), v);
        assert_eq!(evaluate::<Q>(&c, None, &[]).unwrap(), *c.unit());
    }

    #[test]
    fn cyclic_position_gives_commutator() {
        let c = Arc::new(matrix_algebra::<Q>(2));
        let m = regular_bimodule(&c);
        let (e01, e10) = (SparseVec::unit(1), SparseVec::unit(2));
        let mc = evaluate(&c, Some(&m), &[Label::Mod(e01.clone()), alg(e10.clone())]).unwrap();
        let cm = evaluate(&c, Some(&m), &[alg(e10), Label::Mod(e01)]).unwrap();
        assert_eq!(mc, SparseVec::unit(0));
        assert_eq!(cm, SparseVec::unit(3));
        let coinv = crate::algebra::coinvariants(&m);
        assert!(coinv.relations().contains(&mc.sub(&cm)));
    }

    #[test]
    fn two_module_slots_rejected() {
        let c = Arc::new(truncated_polynomial::<Q>(2));
        let m = regular_bimodule(&c);
        let e = SparseVec::unit(0);
        assert_eq!(
            evaluate(&c, Some(&m), &[Label::Mod(e.clone()), Label::Mod(e.clone())]).unwrap_err(),
            AlgebraError::TooManyModuleSlots(2)
        );
        assert_eq!(evaluate(&c, None, &[Label::Mod(e)]).unwrap_err(), AlgebraError::MissingModule);
    }

    #[test]
    fn kernel_dimensions() {
        let dual = truncated_polynomial::<Q>(2);
        assert_eq!(evaluation_kernel(&dual, None, EvalShape::Plain(2)).unwrap().dim(), 2);
        let q = ground_field::<Q>();
        for k in 1..5 {
            assert_eq!(evaluation_kernel(&q, None, EvalShape::Plain(k)).unwrap().dim(), 0);
        }
        let m2 = matrix_algebra::<Q>(2);
        let ev = evaluation_matrix(&m2, None, EvalShape::Plain(2)).unwrap();
        assert_eq!(ev.shape(), (4, 16));
        assert_eq!(rank(&ev), 4);
        assert_eq!(evaluation_kernel(&m2, None, EvalShape::Plain(2)).unwrap().dim(), 12);
    }

    #[test]
    fn kernel_dim_is_tensor_minus_target() {
        for c in [truncated_polynomial::<Q>(3), cyclic_group_algebra(3), symmetric_group_algebra(), matrix_algebra(2)] {
            let c = Arc::new(c);
            for m in [regular_bimodule(&c), free_bimodule(&c)] {
                for shape in [EvalShape::Plain(1), EvalShape::Plain(2), EvalShape::Marked { left: 0, right: 1 }, EvalShape::Marked { left: 1, right: 1 }] {
                    if shape.tensor_dim(&c, Some(&m)).unwrap() > 2000 {
                        continue;
                    }
                    let kernel = evaluation_kernel(&c, Some(&m), shape).unwrap();
                    let expected = shape.tensor_dim(&c, Some(&m)).unwrap() - shape.target_dim(&c, Some(&m)).unwrap();
                    assert_eq!(kernel.dim(), expected, "{} {:?}", c.name(), shape);
                }
            }
        }
    }

    #[test]
    fn matrix_columns_match_evaluate() {
        let c = Arc::new(truncated_polynomial::<Q>(3));
        let m = free_bimodule(&c);
        let shape = EvalShape::Marked { left: 1, right: 1 };
        let mat = evaluation_matrix(&c, Some(&m), shape).unwrap();
        for a in 0..3 {
            for v in 0..9 {
                for b in 0..3 {
                    let col = (a * 9 + v) * 3 + b;
                    let labels = [alg(SparseVec::unit(a)), Label::Mod(SparseVec::unit(v)), alg(SparseVec::unit(b))];
                    assert_eq!(mat.column(col), &evaluate(&c, Some(&m), &labels).unwrap());
                }
            }
        }
    }

    #[test]
    fn involution_preserves_reversed_kernel() {
        // (ab)* = b* a*: applying * slotwise and reversing the slots maps ker to ker
        for c in [matrix_algebra::<Q>(2), symmetric_group_algebra(), truncated_polynomial(3)] {
            let inv = c.involution().unwrap().clone();
            let d = c.dim();
            let kernel = evaluation_kernel(&c, None, EvalShape::Plain(2)).unwrap();
            for v in kernel.basis() {
                let mut pairs = Vec::new();
                for (idx, coeff) in v.iter() {
                    let (i, j) = (idx / d, idx % d);
                    for (p, x) in inv.column(j).iter() {
                        for (q, y) in inv.column(i).iter() {
                            pairs.push((p * d + q, coeff.mul(x).mul(y)));
                        }
                    }
                }
                assert!(kernel.contains(&SparseVec::from_pairs(pairs)), "{}", c.name());
            }
        }
    }

    fn small_vec(dim: usize) -> impl Strategy<Value = SparseVec<Q>> {
        prop::collection::vec(-3i64..=3, dim).prop_map(|v| SparseVec::from_dense(&v.into_iter().map(Q::from_i64).collect::<Vec<_>>()))
    }

    proptest! {
        #[test]
        fn evaluate_is_multilinear(a in small_vec(4), b in small_vec(4), c in small_vec(4), s in -4i64..=4) {
            let m2 = matrix_algebra::<Q>(2);
            let s = Q::from_i64(s);
            let lhs = evaluate(&m2, None, &[alg(a.add_scaled(&s, &b)), alg(c.clone())]).unwrap();
            let rhs = evaluate(&m2, None, &[alg(a), alg(c.clone())]).unwrap()
                .add_scaled(&s, &evaluate(&m2, None, &[alg(b), alg(c)]).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
