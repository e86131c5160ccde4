use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::algebra::{describe_vector, Algebra, AlgebraError};
use crate::field::Field;
use crate::linalg::{quotient_by, rank, Quotient, SparseMatrix, SparseVec, Subspace};
use crate::report::Report;

/// Two-sided module over an [`Algebra`], with dense action tables.
#[derive(Clone, PartialEq, Eq)]
pub struct Bimodule<F> {
    name: String,
    labels: Vec<String>,
    base: Arc<Algebra<F>>,
    /// `left[a * dim + m]` = `e_a · f_m`
    left: Vec<SparseVec<F>>,
    /// `right[m * base_dim + a]` = `f_m · e_a`
    right: Vec<SparseVec<F>>,
}

impl<F: Field> Bimodule<F> {
    /// Builds from `(a, m, n, c)` left entries (`e_a f_m` has `c` on `f_n`)
    /// and `(m, a, n, c)` right entries.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        base: Arc<Algebra<F>>,
        left: Vec<(usize, usize, usize, F)>,
        right: Vec<(usize, usize, usize, F)>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        let d = base.dim();
        let mut lb: Vec<Vec<(usize, F)>> = vec![Vec::new(); d * dim];
        for (a, m, n, c) in left {
            check(a, d)?;
            check(m, dim)?;
            check(n, dim)?;
            lb[a * dim + m].push((n, c));
        }
        let mut rb: Vec<Vec<(usize, F)>> = vec![Vec::new(); dim * d];
        for (m, a, n, c) in right {
            check(m, dim)?;
            check(a, d)?;
            check(n, dim)?;
            rb[m * d + a].push((n, c));
        }
        Ok(Bimodule {
            name: name.into(),
            labels,
            base,
            left: lb.into_iter().map(SparseVec::from_pairs).collect(),
            right: rb.into_iter().map(SparseVec::from_pairs).collect(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn base(&self) -> &Arc<Algebra<F>> {
        &self.base
    }

    pub fn basis_left(&self, a: usize, m: usize) -> &SparseVec<F> {
        &self.left[a * self.dim() + m]
    }

    pub fn basis_right(&self, m: usize, a: usize) -> &SparseVec<F> {
        &self.right[m * self.base.dim() + a]
    }

    pub fn left_entries(&self) -> Vec<(usize, usize, usize, F)> {
        let dim = self.dim();
        let mut out = Vec::new();
        for a in 0..self.base.dim() {
            for m in 0..dim {
                for (n, c) in self.basis_left(a, m).iter() {
                    out.push((a, m, n, c.clone()));
                }
            }
        }
        out
    }

    pub fn right_entries(&self) -> Vec<(usize, usize, usize, F)> {
        let mut out = Vec::new();
        for m in 0..self.dim() {
            for a in 0..self.base.dim() {
                for (n, c) in self.basis_right(m, a).iter() {
                    out.push((m, a, n, c.clone()));
                }
            }
        }
        out
    }

    /// `a · m`
    pub fn act_left(&self, a: &SparseVec<F>, m: &SparseVec<F>) -> SparseVec<F> {
        let mut pairs = Vec::new();
        for (i, x) in a.iter() {
            for (j, y) in m.iter() {
                let xy = x.mul(y);
                for (k, c) in self.basis_left(i, j).iter() {
                    pairs.push((k, xy.mul(c)));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// `m · a`
    pub fn act_right(&self, m: &SparseVec<F>, a: &SparseVec<F>) -> SparseVec<F> {
        let mut pairs = Vec::new();
        for (j, y) in m.iter() {
            for (i, x) in a.iter() {
                let xy = x.mul(y);
                for (k, c) in self.basis_right(j, i).iter() {
                    pairs.push((k, xy.mul(c)));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// `m · e_a`
    pub fn act_right_basis(&self, m: &SparseVec<F>, a: usize) -> SparseVec<F> {
        let mut pairs = Vec::new();
        for (j, y) in m.iter() {
            for (k, c) in self.basis_right(j, a).iter() {
                pairs.push((k, y.mul(c)));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// Both associativity laws, unit actions, and commuting of the two
    /// actions, checked on basis elements.
    pub fn validate(&self) -> Report {
        let d = self.base.dim();
        let n = self.dim();
        let alg = &self.base;
        let mut report = Report::new();
        report.set_config("bimodule", &self.name);
        report.set_config("dim", n);

        let mut left_fail = None;
        let mut right_fail = None;
        let mut commute_fail = None;
        for a in 0..d {
            for b in 0..d {
                let ea = SparseVec::unit(a);
                let eb = SparseVec::unit(b);
                let ab = alg.basis_product(a, b);
                for m in 0..n {
                    let fm = SparseVec::unit(m);
                    if left_fail.is_none() && self.act_left(&ea, &self.act_left(&eb, &fm)) != self.act_left(ab, &fm) {
                        left_fail = Some((a, b, m));
                    }
                    if right_fail.is_none() && self.act_right(&self.act_right(&fm, &ea), &eb) != self.act_right(&fm, ab) {
                        right_fail = Some((m, a, b));
                    }
                    if commute_fail.is_none()
                        && self.act_right(&self.act_left(&ea, &fm), &eb) != self.act_left(&ea, &self.act_right(&fm, &eb))
                    {
                        commute_fail = Some((a, m, b));
                    }
                }
            }
        }
        for (name, fail) in [("left-associativity", left_fail), ("right-associativity", right_fail), ("actions-commute", commute_fail)] {
            let c = report.check(name, "bimodule-axioms", fail.is_none(), match fail {
                None => "holds on all basis triples".to_string(),
                Some(t) => format!("fails on basis triple {t:?}"),
            });
            if let Some((x, y, z)) = fail {
                c.with_witness(json!({ "triple": [x, y, z] }));
            }
        }
        let unit_fail = (0..n).find(|&m| {
            let fm = SparseVec::unit(m);
            self.act_left(alg.unit(), &fm) != fm || self.act_right(&fm, alg.unit()) != fm
        });
        let c = report.check("unit-acts-trivially", "bimodule-axioms", unit_fail.is_none(), match unit_fail {
            None => "1 m = m 1 = m".to_string(),
            Some(m) => format!("unit does not fix {}", self.labels[m]),
        });
        if let Some(m) = unit_fail {
            c.with_witness(json!({ "basis": m }));
        }
        report
    }

    /// Sub-bimodule spanned by `generators` (which must already be closed
    /// under both actions) and its inclusion.
    pub fn sub_bimodule(self: &Arc<Self>, name: impl Into<String>, generators: Vec<SparseVec<F>>) -> Result<(Arc<Bimodule<F>>, BimoduleMap<F>), AlgebraError> {
        let space = Subspace::span(self.dim(), generators)?;
        let d = self.base.dim();
        let k = space.dim();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (s, v) in space.basis().iter().enumerate() {
            for a in 0..d {
                let ea = SparseVec::unit(a);
                let l = space.coordinates(&self.act_left(&ea, v)).ok_or(AlgebraError::NotASubBimodule)?;
                let r = space.coordinates(&self.act_right(v, &ea)).ok_or(AlgebraError::NotASubBimodule)?;
                left.extend(l.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(t, c)| (a, s, t, c)));
                right.extend(r.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(t, c)| (s, a, t, c)));
            }
        }
        let labels = space.basis().iter().map(|v| describe_vector(v, &self.labels)).collect();
        let sub = Arc::new(Bimodule::new(name, labels, self.base.clone(), left, right)?);
        debug_assert_eq!(sub.dim(), k);
        let map = BimoduleMap { source: sub.clone(), target: self.clone(), matrix: space.inclusion() };
        Ok((sub, map))
    }

    /// Quotient by the sub-bimodule spanned by `relations`, with the
    /// projection.
    pub fn quotient(self: &Arc<Self>, name: impl Into<String>, relations: Vec<SparseVec<F>>) -> Result<(Arc<Bimodule<F>>, BimoduleMap<F>), AlgebraError> {
        let space = Subspace::span(self.dim(), relations)?;
        let q: Quotient<F> = quotient_by(space);
        let d = self.base.dim();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (s, rep) in q.representatives.iter().enumerate() {
            for a in 0..d {
                let ea = SparseVec::unit(a);
                let l = q.projection.mul_vec(&self.act_left(&ea, rep))?;
                let r = q.projection.mul_vec(&self.act_right(rep, &ea))?;
                left.extend(l.iter().map(|(t, c)| (a, s, t, c.clone())));
                right.extend(r.iter().map(|(t, c)| (s, a, t, c.clone())));
            }
        }
        let labels = q.representatives.iter().map(|v| format!("[{}]", describe_vector(v, &self.labels))).collect();
        let quot = Arc::new(Bimodule::new(name, labels, self.base.clone(), left, right)?);
        let map = BimoduleMap { source: self.clone(), target: quot.clone(), matrix: q.projection.clone() };
        if !map.is_bimodule_map() {
            return Err(AlgebraError::NotASubBimodule);
        }
        Ok((quot, map))
    }

    pub fn describe(&self, m: &SparseVec<F>) -> String {
        describe_vector(m, &self.labels)
    }
}

impl<F> fmt::Debug for Bimodule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bimodule({}, dim {} over {:?})", self.name, self.labels.len(), self.base)
    }
}

fn check(index: usize, dim: usize) -> Result<(), AlgebraError> {
    if index >= dim {
        Err(AlgebraError::IndexOutOfRange { index, dim })
    } else {
        Ok(())
    }
}

/// Linear map between bimodules over the same algebra.
#[derive(Clone, Debug)]
pub struct BimoduleMap<F> {
    pub source: Arc<Bimodule<F>>,
    pub target: Arc<Bimodule<F>>,
    /// `target.dim x source.dim`
    pub matrix: SparseMatrix<F>,
}

impl<F: Field> BimoduleMap<F> {
    pub fn is_bimodule_map(&self) -> bool {
        let d = self.source.base().dim();
        (0..self.source.dim()).all(|m| {
            let fm = SparseVec::unit(m);
            let image = self.matrix.column(m);
            (0..d).all(|a| {
                let ea = SparseVec::unit(a);
                let l = self.matrix.mul_vec(&self.source.act_left(&ea, &fm)).unwrap();
                let r = self.matrix.mul_vec(&self.source.act_right(&fm, &ea)).unwrap();
                l == self.target.act_left(&ea, image) && r == self.target.act_right(image, &ea)
            })
        })
    }

    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }
}

/// `C` as a bimodule over itself.
pub fn regular_bimodule<F: Field>(algebra: &Arc<Algebra<F>>) -> Bimodule<F> {
    let d = algebra.dim();
    let mut entries = Vec::new();
    for a in 0..d {
        for m in 0..d {
            for (n, c) in algebra.basis_product(a, m).iter() {
                entries.push((a, m, n, c.clone()));
            }
        }
    }
    let right = entries.clone();
    Bimodule::new(format!("regular({})", algebra.name()), algebra.labels().to_vec(), algebra.clone(), entries, right)
        .expect("indices come from the algebra")
}

/// `C ⊗ C` with `a (x ⊗ y) b = ax ⊗ yb`; basis `e_x ⊗ e_y` at `x * dim + y`.
pub fn free_bimodule<F: Field>(algebra: &Arc<Algebra<F>>) -> Bimodule<F> {
    let d = algebra.dim();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for x in 0..d {
        for y in 0..d {
            let m = x * d + y;
            for a in 0..d {
                for (k, c) in algebra.basis_product(a, x).iter() {
                    left.push((a, m, k * d + y, c.clone()));
                }
                for (k, c) in algebra.basis_product(y, a).iter() {
                    right.push((m, a, x * d + k, c.clone()));
                }
            }
        }
    }
    let labels = (0..d)
        .flat_map(|x| (0..d).map(move |y| (x, y)))
        .map(|(x, y)| format!("{}⊗{}", algebra.labels()[x], algebra.labels()[y]))
        .collect();
    Bimodule::new(format!("free({})", algebra.name()), labels, algebra.clone(), left, right).expect("indices come from the algebra")
}

/// Block-diagonal direct sum; basis of `m1` first.
pub fn direct_sum<F: Field>(m1: &Bimodule<F>, m2: &Bimodule<F>) -> Result<Bimodule<F>, AlgebraError> {
    if m1.base() != m2.base() {
        return Err(AlgebraError::BaseMismatch);
    }
    let off = m1.dim();
    let mut left = m1.left_entries();
    left.extend(m2.left_entries().into_iter().map(|(a, m, n, c)| (a, m + off, n + off, c)));
    let mut right = m1.right_entries();
    right.extend(m2.right_entries().into_iter().map(|(m, a, n, c)| (m + off, a, n + off, c)));
    let mut labels: Vec<String> = m1.labels().iter().map(|l| format!("{l}⊕0")).collect();
    labels.extend(m2.labels().iter().map(|l| format!("0⊕{l}")));
    Bimodule::new(format!("{}⊕{}", m1.name(), m2.name()), labels, m1.base().clone(), left, right)
}

/// `M / span{c m − m c}` with its projection.
#[derive(Clone, Debug)]
pub struct Coinvariants<F> {
    pub quotient: Quotient<F>,
}

impl<F: Field> Coinvariants<F> {
    pub fn relations(&self) -> &Subspace<F> {
        &self.quotient.relations
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// `dim(coinv) x dim(M)`
    pub fn projection(&self) -> &SparseMatrix<F> {
        &self.quotient.projection
    }
}

pub fn coinvariants<F: Field>(module: &Bimodule<F>) -> Coinvariants<F> {
    let d = module.base().dim();
    let mut rels = Vec::with_capacity(d * module.dim());
    for a in 0..d {
        for m in 0..module.dim() {
            rels.push(module.basis_left(a, m).sub(module.basis_right(m, a)));
        }
    }
    let relations = Subspace::span(module.dim(), rels).expect("commutators live in the module");
    Coinvariants { quotient: quotient_by(relations) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin::{cyclic_group_algebra, ground_field, matrix_algebra, truncated_polynomial};
    use crate::field::Q;

    fn arc<T>(t: T) -> Arc<T> {
        Arc::new(t)
    }

    #[test]
    fn regular_and_free_validate() {
        for alg in [ground_field::<Q>(), truncated_polynomial(2), matrix_algebra(2), cyclic_group_algebra(3)] {
            let alg = arc(alg);
            assert!(regular_bimodule(&alg).validate().passed());
            let free = free_bimodule(&alg);
            assert_eq!(free.dim(), alg.dim() * alg.dim());
            assert!(free.validate().passed());
        }
    }

    #[test]
    fn coinvariant_dimensions() {
        assert_eq!(coinvariants(&regular_bimodule(&arc(truncated_polynomial::<Q>(2)))).dim(), 2);
        assert_eq!(coinvariants(&regular_bimodule(&arc(matrix_algebra::<Q>(2)))).dim(), 1);
        assert_eq!(coinvariants(&regular_bimodule(&arc(cyclic_group_algebra::<Q>(3)))).dim(), 3);
        for alg in [ground_field::<Q>(), truncated_polynomial(2), truncated_polynomial(3), matrix_algebra(2)] {
            let alg = arc(alg);
            assert_eq!(coinvariants(&free_bimodule(&alg)).dim(), alg.dim(), "{}", alg.name());
        }
    }

    #[test]
    fn commutator_span_of_matrices_is_traceless() {
        // brute force: span of e_ij e_kl − e_kl e_ij over all index pairs has dim 3
        let m2 = matrix_algebra::<Q>(2);
        let mut vecs = Vec::new();
        for x in 0..4 {
            for y in 0..4 {
                vecs.push(m2.basis_product(x, y).sub(m2.basis_product(y, x)));
            }
        }
        let span = Subspace::span(4, vecs).unwrap();
        assert_eq!(span.dim(), 3);
        let c = coinvariants(&regular_bimodule(&arc(m2)));
        assert_eq!(c.relations(), &span);
    }

    #[test]
    fn direct_sum_adds_dimensions_and_coinvariants() {
        let alg = arc(truncated_polynomial::<Q>(2));
        let reg = regular_bimodule(&alg);
        let free = free_bimodule(&alg);
        let sum = direct_sum(&reg, &free).unwrap();
        assert_eq!(sum.dim(), 6);
        assert!(sum.validate().passed());
        assert_eq!(coinvariants(&sum).dim(), coinvariants(&reg).dim() + coinvariants(&free).dim());
        let other = regular_bimodule(&arc(matrix_algebra::<Q>(2)));
        assert_eq!(direct_sum(&reg, &other).unwrap_err(), AlgebraError::BaseMismatch);
    }

    #[test]
    fn sub_and_quotient_of_dual_numbers() {
        let alg = arc(truncated_polynomial::<Q>(2));
        let c = arc(regular_bimodule(&alg));
        let (xc, incl) = c.sub_bimodule("xC", vec![SparseVec::unit(1)]).unwrap();
        assert_eq!(xc.dim(), 1);
        assert!(xc.validate().passed());
        assert!(incl.is_bimodule_map());
        let (quot, proj) = c.quotient("C/xC", vec![SparseVec::unit(1)]).unwrap();
        assert_eq!(quot.dim(), 1);
        assert!(quot.validate().passed());
        assert!(proj.matrix.mul(&incl.matrix).unwrap().is_zero());
        assert_eq!(c.sub_bimodule("bad", vec![SparseVec::unit(0)]).unwrap_err(), AlgebraError::NotASubBimodule);
        let three = arc(regular_bimodule(&arc(truncated_polynomial::<Q>(3))));
        assert_eq!(three.sub_bimodule("x", vec![SparseVec::unit(1)]).unwrap_err(), AlgebraError::NotASubBimodule);
    }
}
