//! Chain map from the Hochschild complex into the marked-circle blob
//! complex in degrees ≤ 2, and the study of how the finite model's homology
//! compares with Hochschild homology as the number of sites grows.

use std::ops::RangeInclusive;
use std::sync::Arc;

use serde_json::json;

use crate::algebra::{coinvariants, Algebra, Bimodule};
use crate::blob::{BlobError, BlobModel, BlobOptions, Configuration, Manifold};
use crate::chain::ChainMap;
use crate::field::Field;
use crate::hochschild::{build_hochschild, hh, tensor_index, HochschildComplex};
use crate::linalg::{rank, LinearSolver, Solution, SparseMatrix, SparseVec};
use crate::report::{Report, Table};

/// `φ_0, φ_1, φ_2` from `M ⊗ C^{⊗k}` to `k`-blob diagrams on a marked
/// circle.
pub struct ComparisonMap<F> {
    pub hochschild: HochschildComplex<F>,
    pub model: BlobModel<F>,
    pub map: ChainMap<F>,
}

impl<F: Field> ComparisonMap<F> {
    pub fn phi(&self, k: usize) -> &SparseMatrix<F> {
        &self.map.components[k]
    }
}

/// Site tensor with the given label at each site, site 0 most significant.
fn site_tensor<F: Field>(labels: &[SparseVec<F>], dims: &[usize]) -> SparseVec<F> {
    let mut acc = vec![(0usize, F::one())];
    for (v, &d) in labels.iter().zip(dims) {
        let mut next = Vec::with_capacity(acc.len() * v.nnz());
        for (i, x) in &acc {
            for (j, y) in v.iter() {
                next.push((i * d + j, x.mul(y)));
            }
        }
        acc = next;
    }
    SparseVec::from_pairs(acc)
}

/// `φ_0(m)` is `m` at the base point with units elsewhere. `φ_1(m ⊗ a)`
/// puts `a` at site 1 and takes two blobs: one around sites 0 and 1
/// labelled `m ⊗ a − ma ⊗ 1`, and the full arc cut at gap 0 labelled
/// `m ⊗ a − am ⊗ 1`, with opposite signs. `φ_2` is a solution of
/// `∂φ_2 = φ_1 ∂`.
pub fn build_phi<F: Field>(algebra: &Arc<Algebra<F>>, module: &Arc<Bimodule<F>>, sites: usize, blob_cap: usize) -> Result<ComparisonMap<F>, BlobError> {
    if sites < 3 || blob_cap < 2 {
        return Err(BlobError::Unsupported(format!("the comparison needs at least 3 sites and blob cap 2 (got {sites}, {blob_cap})")));
    }
    let n = sites;
    let model = BlobModel::build(&Manifold::marked_circle(n), algebra.clone(), Some(module.clone()), BlobOptions::with_cap(blob_cap))?;
    let hochschild = build_hochschild(algebra, module, 3);
    let source = Arc::new(hochschild.complex.truncate(2));
    let (d, md) = (algebra.dim(), module.dim());
    let mut dims = vec![d; n];
    dims[0] = md;
    let unit = algebra.unit().clone();
    let field = |m: &SparseVec<F>, a: &SparseVec<F>| {
        let mut labels = vec![unit.clone(); n];
        labels[0] = m.clone();
        labels[1] = a.clone();
        site_tensor(&labels, &dims)
    };
    let target = model.complex().clone();

    let phi0 = SparseMatrix::from_columns(target.dim(0), (0..md).map(|m| field(&SparseVec::unit(m), &unit)).collect())?;

    let sup = model.supports();
    let around = Configuration { entries: vec![(sup.id_of(0, n - 1, 1).expect("arc"), 1)] };
    let full = Configuration { entries: vec![(sup.id_of(0, 0, 0).expect("arc"), 1)] };
    let mut cols1 = Vec::with_capacity(md * d);
    for m in 0..md {
        for a in 0..d {
            let (mv, av) = (SparseVec::unit(m), SparseVec::unit(a));
            let x = field(&mv, &av);
            let ma = field(&module.act_right(&mv, &av), &unit);
            let am = field(&module.act_left(&av, &mv), &unit);
            let bad = |what: &str| BlobError::IdealViolation(format!("{what} label of φ₁({} ⊗ {})", module.labels()[m], algebra.labels()[a]));
            let c1 = model.chain(1, &around, &x.sub(&ma))?.ok_or_else(|| bad("inner"))?;
            let c2 = model.chain(1, &full, &x.sub(&am))?.ok_or_else(|| bad("outer"))?;
            debug_assert_eq!(cols1.len(), tensor_index(m, &[a], d));
            cols1.push(c2.sub(&c1));
        }
    }
    let phi1 = SparseMatrix::from_columns(target.dim(1), cols1)?;

    let rhs = phi1.mul(source.boundary(2).expect("degree 2"))?;
    let solver = LinearSolver::new(target.boundary(2).expect("blob cap ≥ 2"));
    let mut cols2 = Vec::with_capacity(rhs.ncols());
    for (j, b) in rhs.columns().iter().enumerate() {
        match solver.solve(b)? {
            Solution::Solved(x) => cols2.push(x),
            Solution::Inconsistent => return Err(BlobError::NoPreimage(format!("φ₁∂ of {}", source.tag(2, j)))),
        }
    }
    let phi2 = SparseMatrix::from_columns(target.dim(2), cols2)?;
    let map = ChainMap::new(source, target, vec![phi0, phi1, phi2])?;
    Ok(ComparisonMap { hochschild, model, map })
}

/// Checks that `π ∘ ev` is well defined on the skein module and inverts the
/// map induced by `φ_0` there.
pub fn h0_comparison<F: Field>(cmp: &ComparisonMap<F>) -> Result<Report, BlobError> {
    let mut report = Report::new();
    let module = cmp.model.module().expect("marked model");
    let coinv = coinvariants(module);
    let pi = coinv.projection();
    let ev = cmp.model.evaluation()?;
    let pi_ev = pi.mul(&ev)?;
    let phi0 = cmp.phi(0);

    let kills = pi_ev.mul(&cmp.model.complex().boundary_or_zero(1))?.is_zero();
    report.check("evaluation-kills-boundaries", "h0-comparison", kills, "π∘ev∘∂₁ = 0");

    let round = pi_ev.mul(phi0)?.mul(&coinv.quotient.section())?;
    let id = round == SparseMatrix::identity(coinv.dim());
    report
        .check("inverse-on-coinvariants", "h0-comparison", id, format!("π∘ev∘φ₀ is the identity on a {}-dimensional space", coinv.dim()))
        .with_witness(json!({ "coinvariants": coinv.dim() }));

    let skein = cmp.model.skein()?;
    let iso = skein.dim == coinv.dim() && rank(&pi_ev) == coinv.dim();
    report.check("skein-dimension", "h0-comparison", iso, format!("dim H₀ = {}, dim coinv = {}", skein.dim, coinv.dim()));
    let inj = rank(phi0) == module.dim();
    report.check("phi0-injective", "h0-comparison", inj, format!("rank φ₀ = {} of {}", rank(phi0), module.dim()));
    Ok(report)
}

/// One row of the stabilization table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StudyRow {
    pub sites: usize,
    /// `None` when the model was over budget.
    pub betti: Option<Vec<usize>>,
}

/// Betti numbers of marked-circle models over a range of site counts next
/// to Hochschild homology. Degree 0 must agree for every `N ≥ 2`; other
/// degrees are recorded as findings.
pub fn stabilization_study<F: Field>(
    algebra: &Arc<Algebra<F>>,
    module: &Arc<Bimodule<F>>,
    sites: RangeInclusive<usize>,
    degree_cap: usize,
    budget: usize,
) -> Result<(Report, Vec<StudyRow>), BlobError> {
    let mut report = Report::new();
    let reference = hh(algebra, module, degree_cap + 1)?;
    let mut rows = Vec::new();
    for n in sites {
        let opts = BlobOptions { cap: degree_cap + 1, towers: true, budget };
        let betti = match BlobModel::build(&Manifold::marked_circle(n), algebra.clone(), Some(module.clone()), opts) {
            Ok(model) => Some(model.betti()?),
            Err(BlobError::Budget { .. }) => None,
            Err(e) => return Err(e),
        };
        rows.push(StudyRow { sites: n, betti });
    }

    let computed: Vec<&StudyRow> = rows.iter().filter(|r| r.sites >= 2 && r.betti.is_some()).collect();
    let h0_ok = !computed.is_empty() && computed.iter().all(|r| r.betti.as_ref().unwrap()[0] == reference[0]);
    report.check("degree-0", "stabilization", h0_ok, format!("H₀ = {} for every computed N ≥ 2", reference[0]));
    let skipped: Vec<usize> = rows.iter().filter(|r| r.betti.is_none()).map(|r| r.sites).collect();
    for k in 1..=degree_cap {
        let agree: Vec<usize> = computed.iter().filter(|r| r.betti.as_ref().unwrap()[k] == reference[k]).map(|r| r.sites).collect();
        let stable_from = computed
            .iter()
            .rev()
            .take_while(|r| r.betti.as_ref().unwrap()[k] == reference[k])
            .last()
            .map(|r| r.sites);
        let detail = match (agree.first(), stable_from) {
            (None, _) => format!("degree {k}: no agreement in range (hh = {})", reference[k]),
            (Some(first), Some(from)) => format!("degree {k}: first agreement at N = {first}, agreeing from N = {from} to the end of the range"),
            (Some(first), None) => format!("degree {k}: first agreement at N = {first}, not agreeing at the largest computed N"),
        };
        let detail = if skipped.is_empty() { detail } else { format!("{detail}; over budget at N = {skipped:?}") };
        report.info(format!("degree-{k}"), "stabilization", detail).with_witness(json!({ "agreeing_sites": agree, "hh": reference[k] }));
    }
    let mut table = Table {
        name: format!("stabilization {} / {}", algebra.name(), module.name()),
        columns: vec!["sites".into(), "blob betti".into(), "hochschild".into()],
        rows: Vec::new(),
    };
    for r in &rows {
        table.rows.push(vec![json!(r.sites), r.betti.as_ref().map_or(json!("over budget"), |b| json!(b)), json!(reference[..=degree_cap])]);
    }
    report.table(table);
    Ok((report, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin::{ground_field, matrix_algebra, truncated_polynomial};
    use crate::algebra::regular_bimodule;
    use crate::field::Q;

    fn pair(a: Algebra<Q>) -> (Arc<Algebra<Q>>, Arc<Bimodule<Q>>) {
        let a = Arc::new(a);
        let m = Arc::new(regular_bimodule(&a));
        (a, m)
    }

    #[test]
    fn phi_is_a_chain_map() {
        for a in [ground_field::<Q>(), truncated_polynomial(2), matrix_algebra(2)] {
            let (a, m) = pair(a);
            let cmp = build_phi(&a, &m, 3, 2).unwrap();
            assert!(cmp.map.is_chain_map(), "{}", a.name());
            assert!(h0_comparison(&cmp).unwrap().passed(), "{}", a.name());
        }
    }

    #[test]
    fn phi1_boundary_is_phi0_of_commutator() {
        let (a, m) = pair(matrix_algebra::<Q>(2));
        let cmp = build_phi(&a, &m, 3, 2).unwrap();
        let d1 = cmp.model.complex().boundary(1).unwrap();
        for mi in 0..4 {
            for ai in 0..4 {
                let (mv, av) = (SparseVec::unit(mi), SparseVec::unit(ai));
                let comm = m.act_right(&mv, &av).sub(&m.act_left(&av, &mv));
                let lhs = d1.mul_vec(cmp.phi(1).column(mi * 4 + ai)).unwrap();
                assert_eq!(lhs, cmp.phi(0).mul_vec(&comm).unwrap());
            }
        }
    }

    #[test]
    fn ground_field_study_agrees_everywhere() {
        let (a, m) = pair(ground_field::<Q>());
        let (report, rows) = stabilization_study(&a, &m, 1..=4, 2, 10_000).unwrap();
        assert!(report.passed());
        assert!(rows.iter().all(|r| r.betti.as_deref() == Some(&[1, 0, 0][..])));
    }

    #[test]
    fn small_inputs_are_rejected() {
        let (a, m) = pair(truncated_polynomial::<Q>(2));
        assert!(build_phi(&a, &m, 2, 2).is_err());
        assert!(build_phi(&a, &m, 3, 1).is_err());
    }
}
