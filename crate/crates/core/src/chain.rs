//! Finite chain complexes over exact fields, chain maps and homotopies.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use crate::field::Field;
use crate::linalg::{kernel_basis, rank, Echelon, LinalgError, SparseMatrix, SparseVec};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("degree {degree}: boundary has shape {found:?}, expected {expected:?}")]
    ShapeMismatch { degree: usize, expected: (usize, usize), found: (usize, usize) },
    #[error("boundary composite into degree {degree} is nonzero")]
    NotAComplex { degree: usize },
    #[error("degree {0} outside the complex")]
    DegreeOutOfRange(usize),
    #[error("{0}")]
    Linalg(#[from] LinalgError),
}

/// Graded spaces in degrees `d_min..=d_max` with `∂_k : C_k → C_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex<F> {
    d_min: usize,
    dims: Vec<usize>,
    /// `boundaries[i]` is `∂` out of degree `d_min + i`; the first one maps
    /// to the zero space below `d_min`.
    boundaries: Vec<SparseMatrix<F>>,
    tags: Option<Vec<Vec<String>>>,
    truncated: bool,
}

/// Betti numbers and optional cycle representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology<F> {
    pub d_min: usize,
    pub betti: Vec<usize>,
    /// Per degree; empty unless requested.
    pub representatives: Vec<Vec<SparseVec<F>>>,
    /// False at the top degree of a truncated complex, where the missing
    /// incoming boundary makes the value only an upper bound.
    pub exact: Vec<bool>,
}

impl<F> Homology<F> {
    pub fn betti_at(&self, degree: usize) -> usize {
        degree.checked_sub(self.d_min).and_then(|i| self.betti.get(i).copied()).unwrap_or(0)
    }

    /// Betti numbers of the degrees known exactly.
    pub fn exact_betti(&self) -> Vec<usize> {
        self.betti.iter().zip(&self.exact).filter(|(_, e)| **e).map(|(b, _)| *b).collect()
    }
}

impl<F: Field> ChainComplex<F> {
    pub fn new(d_min: usize, dims: Vec<usize>, boundaries: Vec<SparseMatrix<F>>) -> Result<Self, ChainError> {
        if boundaries.len() != dims.len() {
            return Err(ChainError::DegreeOutOfRange(d_min + boundaries.len().min(dims.len())));
        }
        for (i, b) in boundaries.iter().enumerate() {
            let below = if i == 0 { 0 } else { dims[i - 1] };
            if b.shape() != (below, dims[i]) {
                return Err(ChainError::ShapeMismatch { degree: d_min + i, expected: (below, dims[i]), found: b.shape() });
            }
        }
        Ok(ChainComplex { d_min, dims, boundaries, tags: None, truncated: false })
    }

    /// `C_0 ← C_1 ← …` from the boundaries `∂_1, ∂_2, …`.
    pub fn from_boundaries(dims: Vec<usize>, higher: Vec<SparseMatrix<F>>) -> Result<Self, ChainError> {
        let mut boundaries = Vec::with_capacity(dims.len());
        if !dims.is_empty() {
            boundaries.push(SparseMatrix::zero(0, dims[0]));
        }
        boundaries.extend(higher);
        ChainComplex::new(0, dims, boundaries)
    }

    /// A single space in one degree.
    pub fn concentrated(degree: usize, dim: usize) -> Self {
        ChainComplex::new(degree, vec![dim], vec![SparseMatrix::zero(0, dim)]).expect("shape is forced")
    }

    pub fn with_tags(mut self, tags: Vec<Vec<String>>) -> Self {
        debug_assert!(tags.len() == self.dims.len() && tags.iter().zip(&self.dims).all(|(t, d)| t.len() == *d));
        self.tags = Some(tags);
        self
    }

    /// Marks the top degree as cut off: the true complex continues above.
    pub fn with_truncated_top(mut self, truncated: bool) -> Self {
        self.truncated = truncated;
        self
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn d_min(&self) -> usize {
        self.d_min
    }

    pub fn d_max(&self) -> usize {
        (self.d_min + self.dims.len()).saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn degrees(&self) -> std::ops::Range<usize> {
        self.d_min..self.d_min + self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.index(degree).map_or(0, |i| self.dims[i])
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn index(&self, degree: usize) -> Option<usize> {
        degree.checked_sub(self.d_min).filter(|&i| i < self.dims.len())
    }

    /// `∂_k`, or `None` outside the stored degrees.
    pub fn boundary(&self, degree: usize) -> Option<&SparseMatrix<F>> {
        self.index(degree).map(|i| &self.boundaries[i])
    }

    /// `∂_k` as a matrix, zero outside the stored degrees.
    pub fn boundary_or_zero(&self, degree: usize) -> SparseMatrix<F> {
        match self.boundary(degree) {
            Some(b) => b.clone(),
            None => SparseMatrix::zero(degree.checked_sub(1).map_or(0, |d| self.dim(d)), self.dim(degree)),
        }
    }

    pub fn tags(&self, degree: usize) -> Option<&[String]> {
        let i = self.index(degree)?;
        self.tags.as_ref().map(|t| t[i].as_slice())
    }

    pub fn tag(&self, degree: usize, generator: usize) -> String {
        self.tags(degree).and_then(|t| t.get(generator).cloned()).unwrap_or_else(|| format!("g{degree}.{generator}"))
    }

    /// Checks every composite `∂_{k-1} ∂_k`.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let bad: Vec<(usize, Option<(usize, usize)>)> = self
            .degrees()
            .skip(1)
            .collect::<Vec<_>>()
            .into_par_iter()
            .filter_map(|k| {
                let lower = self.boundary(k - 1).unwrap();
                let upper = self.boundary(k).unwrap();
                let comp = lower.mul(upper).expect("adjacent shapes agree");
                let first = comp.triplets().next().map(|(r, c, _)| (k, Some((r, c))));
                first
            })
            .collect();
        let passed = bad.is_empty();
        let detail = if passed {
            format!("∂∂ = 0 in degrees {}..={}", self.d_min, self.d_max())
        } else {
            let (k, _) = bad[0];
            format!("∂_{}∂_{} ≠ 0", k - 1, k)
        };
        let c = report.check("boundary-squared", "chain-complex", passed, detail);
        if let Some((k, Some((r, col)))) = bad.first().copied() {
            c.with_witness(json!({ "degree": k, "generator": self.tag(k, col), "row": r }));
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().passed()
    }

    /// Ranks of every boundary, computed in parallel.
    pub fn boundary_ranks(&self) -> Vec<usize> {
        self.boundaries.par_iter().map(rank).collect()
    }

    /// Betti numbers; faster than [`ChainComplex::homology`] with
    /// representatives.
    pub fn betti(&self) -> Result<Vec<usize>, ChainError> {
        Ok(self.homology_inner(false)?.betti)
    }

    pub fn homology(&self) -> Result<Homology<F>, ChainError> {
        self.homology_inner(false)
    }

    pub fn homology_with_representatives(&self) -> Result<Homology<F>, ChainError> {
        self.homology_inner(true)
    }

    fn homology_inner(&self, reps: bool) -> Result<Homology<F>, ChainError> {
        if let Some(k) = self.first_failure() {
            return Err(ChainError::NotAComplex { degree: k });
        }
        let ranks = self.boundary_ranks();
        let n = self.dims.len();
        let mut betti = Vec::with_capacity(n);
        let mut exact = Vec::with_capacity(n);
        for i in 0..n {
            let incoming = if i + 1 < n { ranks[i + 1] } else { 0 };
            betti.push(self.dims[i] - ranks[i] - incoming);
            exact.push(!(self.truncated && i + 1 == n));
        }
        let representatives = if reps {
            (0..n)
                .into_par_iter()
                .map(|i| {
                    let cycles = kernel_basis(&self.boundaries[i]);
                    let mut ech = Echelon::new(self.dims[i]);
                    if i + 1 < n {
                        for (id, c) in self.boundaries[i + 1].columns().iter().enumerate() {
                            ech.insert(c.clone(), id);
                        }
                    }
                    cycles.into_iter().filter(|z| ech.insert(z.clone(), 0)).collect()
                })
                .collect()
        } else {
            vec![Vec::new(); n]
        };
        Ok(Homology { d_min: self.d_min, betti, representatives, exact })
    }

    fn first_failure(&self) -> Option<usize> {
        self.degrees().skip(1).find(|&k| !self.boundary(k - 1).unwrap().mul(self.boundary(k).unwrap()).expect("shapes").is_zero())
    }

    /// Keeps degrees `≤ d_max`; marks the result truncated when anything was
    /// dropped.
    pub fn truncate(&self, d_max: usize) -> Self {
        if d_max >= self.d_max() {
            return self.clone();
        }
        let keep = (d_max + 1).saturating_sub(self.d_min);
        ChainComplex {
            d_min: self.d_min,
            dims: self.dims[..keep].to_vec(),
            boundaries: self.boundaries[..keep].to_vec(),
            tags: self.tags.as_ref().map(|t| t[..keep].to_vec()),
            truncated: true,
        }
    }

    /// Koszul-signed tensor product: `d(a ⊗ b) = da ⊗ b + (-1)^{|a|} a ⊗ db`.
    /// Degree `n` is ordered by the degree of the `a` factor, then
    /// `ia * dim(b_j) + ib`.
    pub fn tensor(&self, other: &Self) -> Self {
        let layout = TensorLayout::new(self, other);
        let mut dims = Vec::new();
        let mut boundaries = Vec::new();
        for n in layout.degrees() {
            let dim_n = layout.dim(n);
            let mut cols = Vec::with_capacity(dim_n);
            for &(i, j) in layout.blocks(n) {
                let (da, db) = (self.boundary_or_zero(i), other.boundary_or_zero(j));
                let sign = F::sign(i % 2 == 1);
                for ia in 0..self.dim(i) {
                    for ib in 0..other.dim(j) {
                        let mut pairs = Vec::new();
                        if i > 0 {
                            let off = layout.offset(n - 1, i - 1);
                            for (ra, c) in da.column(ia).iter() {
                                if let Some(off) = off {
                                    pairs.push((off + ra * other.dim(j) + ib, c.clone()));
                                }
                            }
                        }
                        if j > 0 {
                            if let Some(off) = layout.offset(n - 1, i) {
                                for (rb, c) in db.column(ib).iter() {
                                    pairs.push((off + ia * other.dim(j - 1) + rb, c.mul(&sign)));
                                }
                            }
                        }
                        cols.push(SparseVec::from_pairs(pairs));
                    }
                }
            }
            let below = if n == layout.d_min { 0 } else { layout.dim(n - 1) };
            dims.push(dim_n);
            boundaries.push(SparseMatrix::from_columns(below, cols).expect("indices from the layout"));
        }
        let tags = match (&self.tags, &other.tags) {
            (Some(_), Some(_)) => Some(
                layout
                    .degrees()
                    .map(|n| {
                        let mut t = Vec::new();
                        for &(i, j) in layout.blocks(n) {
                            for ia in 0..self.dim(i) {
                                for ib in 0..other.dim(j) {
                                    t.push(format!("{} ⊗ {}", self.tag(i, ia), other.tag(j, ib)));
                                }
                            }
                        }
                        t
                    })
                    .collect(),
            ),
            _ => None,
        };
        ChainComplex { d_min: layout.d_min, dims, boundaries, tags, truncated: self.truncated || other.truncated }
    }

    /// Block sum; basis of `self` first in every degree.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let lo = self.d_min.min(other.d_min);
        let hi = self.d_max().max(other.d_max());
        let mut dims = Vec::new();
        let mut boundaries = Vec::new();
        for k in lo..=hi {
            dims.push(self.dim(k) + other.dim(k));
            let b = self.boundary_or_zero(k).direct_sum(&other.boundary_or_zero(k));
            boundaries.push(if k == lo { SparseMatrix::zero(0, b.ncols()) } else { b });
        }
        ChainComplex { d_min: lo, dims, boundaries, tags: None, truncated: self.truncated || other.truncated }
    }

    /// Same complex with each degree's basis permuted: generator `g` of
    /// degree `k` moves to position `perms[k - d_min][g]`.
    pub fn permute_basis(&self, perms: &[Vec<usize>]) -> Self {
        let boundaries = self
            .boundaries
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut cols = vec![SparseVec::new(); b.ncols()];
                for (g, col) in b.columns().iter().enumerate() {
                    cols[perms[i][g]] = if i == 0 { col.clone() } else { col.reindex(|r| perms[i - 1][r]) };
                }
                SparseMatrix::from_columns(b.nrows(), cols).expect("permutation keeps shapes")
            })
            .collect();
        ChainComplex { d_min: self.d_min, dims: self.dims.clone(), boundaries, tags: None, truncated: self.truncated }
    }
}

/// Block bookkeeping for tensor products.
pub struct TensorLayout {
    pub d_min: usize,
    blocks: Vec<Vec<(usize, usize)>>,
    offsets: Vec<Vec<usize>>,
    dims: Vec<usize>,
}

impl TensorLayout {
    pub fn new<F: Field>(a: &ChainComplex<F>, b: &ChainComplex<F>) -> Self {
        let d_min = a.d_min() + b.d_min();
        let d_max = if a.is_empty() || b.is_empty() { d_min } else { a.d_max() + b.d_max() };
        let mut blocks = Vec::new();
        let mut offsets = Vec::new();
        let mut dims = Vec::new();
        for n in d_min..=d_max {
            let mut bl = Vec::new();
            let mut off = Vec::new();
            let mut total = 0;
            for i in a.degrees() {
                if n < i {
                    continue;
                }
                let j = n - i;
                if !b.degrees().contains(&j) {
                    continue;
                }
                bl.push((i, j));
                off.push(total);
                total += a.dim(i) * b.dim(j);
            }
            blocks.push(bl);
            offsets.push(off);
            dims.push(total);
        }
        TensorLayout { d_min, blocks, offsets, dims }
    }

    pub fn degrees(&self) -> std::ops::Range<usize> {
        self.d_min..self.d_min + self.dims.len()
    }

    pub fn dim(&self, n: usize) -> usize {
        n.checked_sub(self.d_min).and_then(|i| self.dims.get(i).copied()).unwrap_or(0)
    }

    pub fn blocks(&self, n: usize) -> &[(usize, usize)] {
        &self.blocks[n - self.d_min]
    }

    /// Offset of the block `(i, n - i)` inside degree `n`.
    pub fn offset(&self, n: usize, i: usize) -> Option<usize> {
        let idx = n.checked_sub(self.d_min)?;
        let pos = self.blocks.get(idx)?.iter().position(|&(a, _)| a == i)?;
        Some(self.offsets[idx][pos])
    }
}

/// Degree-preserving map; `components[k - source.d_min()]` maps degree `k`.
#[derive(Clone, Debug)]
pub struct ChainMap<F> {
    pub source: Arc<ChainComplex<F>>,
    pub target: Arc<ChainComplex<F>>,
    pub components: Vec<SparseMatrix<F>>,
}

impl<F: Field> ChainMap<F> {
    pub fn new(source: Arc<ChainComplex<F>>, target: Arc<ChainComplex<F>>, components: Vec<SparseMatrix<F>>) -> Result<Self, ChainError> {
        if components.len() != source.dims().len() {
            return Err(ChainError::DegreeOutOfRange(source.d_min() + components.len()));
        }
        for (k, m) in source.degrees().zip(&components) {
            let expected = (target.dim(k), source.dim(k));
            if m.shape() != expected {
                return Err(ChainError::ShapeMismatch { degree: k, expected, found: m.shape() });
            }
        }
        Ok(ChainMap { source, target, components })
    }

    pub fn identity(c: Arc<ChainComplex<F>>) -> Self {
        let components = c.dims().iter().map(|&d| SparseMatrix::identity(d)).collect();
        ChainMap { source: c.clone(), target: c, components }
    }

    pub fn zero(source: Arc<ChainComplex<F>>, target: Arc<ChainComplex<F>>) -> Self {
        let components = source.degrees().map(|k| SparseMatrix::zero(target.dim(k), source.dim(k))).collect();
        ChainMap { source, target, components }
    }

    /// Component in degree `k`, zero outside the source.
    pub fn component(&self, k: usize) -> SparseMatrix<F> {
        match k.checked_sub(self.source.d_min()).and_then(|i| self.components.get(i)) {
            Some(m) => m.clone(),
            None => SparseMatrix::zero(self.target.dim(k), self.source.dim(k)),
        }
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &ChainMap<F>) -> Result<ChainMap<F>, ChainError> {
        let components = first
            .source
            .degrees()
            .map(|k| self.component(k).mul(&first.component(k)))
            .collect::<Result<Vec<_>, _>>()?;
        ChainMap::new(first.source.clone(), self.target.clone(), components)
    }

    pub fn sub(&self, other: &ChainMap<F>) -> Result<ChainMap<F>, ChainError> {
        let components = self.source.degrees().map(|k| self.component(k).sub(&other.component(k))).collect::<Result<Vec<_>, _>>()?;
        ChainMap::new(self.source.clone(), self.target.clone(), components)
    }

    /// Checks `∂ f_k = f_{k-1} ∂` in every source degree where the target
    /// has both degrees.
    pub fn verify(&self) -> Report {
        let mut report = Report::new();
        let failures: Vec<(usize, usize)> = self
            .source
            .degrees()
            .collect::<Vec<_>>()
            .into_par_iter()
            .filter_map(|k| {
                if k > self.target.d_max() || self.target.is_empty() {
                    return None;
                }
                let lhs = self.target.boundary_or_zero(k).mul(&self.component(k)).ok()?;
                let rhs = k.checked_sub(1).map_or_else(|| SparseMatrix::zero(0, self.source.dim(k)), |j| self.component(j).mul(&self.source.boundary_or_zero(k)).unwrap());
                let diff = lhs.sub(&rhs).ok()?;
                let first = diff.triplets().next().map(|(_, c, _)| (k, c));
                first
            })
            .collect();
        let passed = failures.is_empty();
        let c = report.check("commutes-with-boundary", "chain-map", passed, match failures.first() {
            None => format!("∂f = f∂ in degrees {}..={}", self.source.d_min(), self.source.d_max().min(self.target.d_max())),
            Some((k, _)) => format!("∂f ≠ f∂ in degree {k}"),
        });
        if let Some(&(k, g)) = failures.first() {
            c.with_witness(json!({ "degree": k, "generator": self.source.tag(k, g) }));
        }
        report
    }

    pub fn is_chain_map(&self) -> bool {
        self.verify().passed()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.components.par_iter().map(rank).collect()
    }
}

/// Maps `h_k : C_k → D_{k+1}`; `components[k - source.d_min()]`.
#[derive(Clone, Debug)]
pub struct ChainHomotopy<F> {
    pub source: Arc<ChainComplex<F>>,
    pub target: Arc<ChainComplex<F>>,
    pub components: Vec<SparseMatrix<F>>,
}

impl<F: Field> ChainHomotopy<F> {
    pub fn zero(source: Arc<ChainComplex<F>>, target: Arc<ChainComplex<F>>) -> Self {
        let components = source.degrees().map(|k| SparseMatrix::zero(target.dim(k + 1), source.dim(k))).collect();
        ChainHomotopy { source, target, components }
    }

    fn component(&self, k: usize) -> SparseMatrix<F> {
        match k.checked_sub(self.source.d_min()).and_then(|i| self.components.get(i)) {
            Some(m) => m.clone(),
            None => SparseMatrix::zero(self.target.dim(k + 1), self.source.dim(k)),
        }
    }
}

/// Checks `∂h + h∂ = f − g` in each degree `k` whose `h_k` lands inside the
/// target (the top degree of a truncated target is skipped).
pub fn verify_homotopy<F: Field>(h: &ChainHomotopy<F>, f: &ChainMap<F>, g: &ChainMap<F>) -> Result<Report, ChainError> {
    let mut report = Report::new();
    let degrees: Vec<usize> = h.source.degrees().filter(|&k| k < h.target.d_max() || !h.target.is_truncated()).collect();
    let mut failure = None;
    for &k in &degrees {
        let dh = h.target.boundary_or_zero(k + 1).mul(&h.component(k))?;
        let hd = match k.checked_sub(1) {
            Some(j) if k > h.source.d_min() => h.component(j).mul(&h.source.boundary_or_zero(k))?,
            _ => SparseMatrix::zero(h.target.dim(k), h.source.dim(k)),
        };
        let lhs = dh.add(&hd)?;
        let rhs = f.component(k).sub(&g.component(k))?;
        if lhs.shape() != rhs.shape() {
            return Err(ChainError::ShapeMismatch { degree: k, expected: rhs.shape(), found: lhs.shape() });
        }
        if let Some((_, c, _)) = lhs.sub(&rhs)?.triplets().next() {
            failure = Some((k, c));
            break;
        }
    }
    let c = report.check("homotopy-identity", "chain-homotopy", failure.is_none(), match failure {
        None => format!("∂h + h∂ = f − g in degrees {:?}", degrees),
        Some((k, _)) => format!("∂h + h∂ ≠ f − g in degree {k}"),
    });
    if let Some((k, gen)) = failure {
        c.with_witness(json!({ "degree": k, "generator": h.source.tag(k, gen) }));
    }
    Ok(report)
}

/// Per degree: `incl` injective, `proj` surjective, `proj ∘ incl = 0` and
/// `rank incl + rank proj = dim middle`, which together give exactness.
pub fn short_exact_check<F: Field>(incl: &ChainMap<F>, proj: &ChainMap<F>) -> Report {
    let mut report = Report::new();
    report.absorb("inclusion", incl.verify());
    report.absorb("projection", proj.verify());
    let middle = &incl.target;
    let rows: Vec<(usize, bool, bool, bool, bool)> = middle
        .degrees()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|k| {
            let i = incl.component(k);
            let p = proj.component(k);
            let (ri, rp) = (rank(&i), rank(&p));
            let injective = ri == incl.source.dim(k);
            let surjective = rp == proj.target.dim(k);
            let composite = p.mul(&i).map(|m| m.is_zero()).unwrap_or(false);
            let exact_middle = composite && ri + rp == middle.dim(k);
            (k, injective, surjective, composite, exact_middle)
        })
        .collect();
    for (k, inj, surj, comp, mid) in rows {
        let c = report.check(format!("degree-{k}"), "short-exact", inj && surj && comp && mid, format!(
            "injective {inj}, surjective {surj}, composite zero {comp}, kernel equals image {mid}; dims {} → {} → {}",
            incl.source.dim(k),
            middle.dim(k),
            proj.target.dim(k)
        ));
        if !(inj && surj && comp && mid) {
            c.with_witness(json!({ "degree": k }));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;
    use proptest::prelude::*;

    fn id_complex() -> ChainComplex<Q> {
        // 0 → Q → Q → 0 with identity
        ChainComplex::from_boundaries(vec![1, 1], vec![SparseMatrix::identity(1)]).unwrap()
    }

    #[test]
    fn small_examples() {
        let z: ChainComplex<Q> = ChainComplex::from_boundaries(vec![], vec![]).unwrap();
        assert!(z.validate().passed());
        let c = id_complex();
        assert!(c.validate().passed());
        assert_eq!(c.betti().unwrap(), vec![0, 0]);
        let single = ChainComplex::<Q>::concentrated(2, 1);
        assert_eq!(single.homology().unwrap().betti_at(2), 1);
    }

    #[test]
    fn shape_errors() {
        let err = ChainComplex::<Q>::from_boundaries(vec![1, 2], vec![SparseMatrix::identity(1)]).unwrap_err();
        assert_eq!(err, ChainError::ShapeMismatch { degree: 1, expected: (1, 2), found: (1, 1) });
    }

    #[test]
    fn invalid_complex_is_reported() {
        let one = SparseMatrix::<Q>::identity(1);
        let c = ChainComplex::from_boundaries(vec![1, 1, 1], vec![one.clone(), one]).unwrap();
        let r = c.validate();
        assert!(!r.passed());
        assert_eq!(r.checks[0].witness["degree"], 2);
        assert_eq!(c.homology().unwrap_err(), ChainError::NotAComplex { degree: 2 });
    }

    #[test]
    fn tensor_examples() {
        let unit = ChainComplex::<Q>::concentrated(0, 1);
        let c = id_complex();
        let t = c.tensor(&unit);
        assert_eq!(t.dims(), c.dims());
        assert_eq!(t.boundary(1), c.boundary(1));
        let tt = c.tensor(&c);
        assert_eq!(tt.dims(), &[1, 2, 1]);
        assert!(tt.is_valid());
        assert_eq!(tt.betti().unwrap(), vec![0, 0, 0]);
    }

    #[test]
    fn representatives_span_homology() {
        // circle with two vertices and two edges
        let d1 = SparseMatrix::from_dense(&[vec![Q::from_i64(-1), Q::from_i64(-1)], vec![Q::from_i64(1), Q::from_i64(1)]]);
        let c = ChainComplex::from_boundaries(vec![2, 2], vec![d1.clone()]).unwrap();
        let h = c.homology_with_representatives().unwrap();
        assert_eq!(h.betti, vec![1, 1]);
        let z = &h.representatives[1][0];
        assert!(d1.mul_vec(z).unwrap().is_zero());
    }

    #[test]
    fn truncation_flags_top_degree() {
        let c = id_complex().truncate(0);
        assert!(c.is_truncated());
        let h = c.homology().unwrap();
        assert_eq!(h.betti, vec![1]);
        assert_eq!(h.exact, vec![false]);
        assert!(h.exact_betti().is_empty());
    }

    #[test]
    fn chain_maps_and_homotopies() {
        let c = Arc::new(id_complex());
        let id = ChainMap::identity(c.clone());
        assert!(id.verify().passed());
        let zero = ChainMap::zero(c.clone(), c.clone());
        let h0 = ChainHomotopy::zero(c.clone(), c.clone());
        assert!(verify_homotopy(&h0, &id, &id).unwrap().passed());
        assert!(!verify_homotopy(&h0, &id, &zero).unwrap().passed());
        // contractible: h_0 = identity into degree 1
        let h = ChainHomotopy { source: c.clone(), target: c.clone(), components: vec![SparseMatrix::identity(1), SparseMatrix::zero(0, 1)] };
        assert!(verify_homotopy(&h, &id, &zero).unwrap().passed());
        let bad = ChainMap::new(c.clone(), c.clone(), vec![SparseMatrix::identity(1), SparseMatrix::zero(1, 1)]).unwrap();
        assert!(!bad.verify().passed());
    }

    #[test]
    fn split_short_exact_sequence() {
        let a = Arc::new(id_complex());
        let b = Arc::new(ChainComplex::<Q>::from_boundaries(vec![2, 1], vec![SparseMatrix::zero(2, 1)]).unwrap());
        let sum = Arc::new(a.direct_sum(&b));
        assert!(sum.is_valid());
        let incl = ChainMap::new(
            a.clone(),
            sum.clone(),
            a.degrees().map(|k| SparseMatrix::identity(a.dim(k)).direct_sum(&SparseMatrix::zero(b.dim(k), 0))).collect(),
        )
        .unwrap();
        let proj = ChainMap::new(
            sum.clone(),
            b.clone(),
            sum.degrees()
                .map(|k| {
                    let (da, db) = (a.dim(k), b.dim(k));
                    SparseMatrix::from_triplets(db, da + db, (0..db).map(|i| (i, da + i, Q::one())).collect()).unwrap()
                })
                .collect(),
        )
        .unwrap();
        let r = short_exact_check(&incl, &proj);
        assert!(r.passed(), "{}", r.summary());
        let zero = ChainMap::zero(a.clone(), sum.clone());
        assert!(!short_exact_check(&zero, &proj).passed());
    }

    fn random_complex() -> impl Strategy<Value = ChainComplex<Q>> {
        // d(e_i) built as a composite of two random maps through a zero to keep ∂² = 0:
        // C_2 --B--> C_1 --A--> C_0 with A B = 0 enforced by A = P, B spanning ker P.
        (1usize..4, 1usize..5, 1usize..4, prop::collection::vec(-2i64..=2, 16)).prop_map(|(d0, d1, d2, raw)| {
            let a = SparseMatrix::from_dense(&(0..d0).map(|r| (0..d1).map(|c| Q::from_i64(raw[(r * d1 + c) % raw.len()])).collect()).collect::<Vec<_>>());
            let ker = kernel_basis(&a);
            let cols: Vec<SparseVec<Q>> = (0..d2)
                .map(|j| ker.iter().enumerate().fold(SparseVec::new(), |acc, (t, v)| acc.add_scaled(&Q::from_i64(raw[(j + t) % raw.len()]), v)))
                .collect();
            let b = SparseMatrix::from_columns(d1, cols).unwrap();
            ChainComplex::from_boundaries(vec![d0, d1, d2], vec![a, b]).unwrap()
        })
    }

    proptest! {
        #[test]
        fn kunneth_over_a_field(a in random_complex(), b in random_complex()) {
            let t = a.tensor(&b);
            prop_assert!(t.is_valid());
            let (ha, hb, ht) = (a.betti().unwrap(), b.betti().unwrap(), t.betti().unwrap());
            for n in 0..ht.len() {
                let expected: usize = (0..=n).map(|i| ha.get(i).copied().unwrap_or(0) * hb.get(n - i).copied().unwrap_or(0)).sum();
                prop_assert_eq!(ht[n], expected);
            }
        }

        #[test]
        fn homology_invariant_under_basis_permutation(c in random_complex(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let perms: Vec<Vec<usize>> = c.dims().iter().map(|&d| { let mut p: Vec<usize> = (0..d).collect(); p.shuffle(&mut rng); p }).collect();
            let p = c.permute_basis(&perms);
            prop_assert!(p.is_valid());
            prop_assert_eq!(p.betti().unwrap(), c.betti().unwrap());
        }

        #[test]
        fn euler_characteristic_of_direct_sum(a in random_complex(), b in random_complex()) {
            let s = a.direct_sum(&b);
            prop_assert!(s.is_valid());
            for k in s.degrees() {
                prop_assert_eq!(s.dim(k), a.dim(k) + b.dim(k));
            }
            let hs = s.betti().unwrap();
            let (ha, hb) = (a.betti().unwrap(), b.betti().unwrap());
            for k in 0..hs.len() {
                prop_assert_eq!(hs[k], ha.get(k).copied().unwrap_or(0) + hb.get(k).copied().unwrap_or(0));
            }
        }
    }
}
