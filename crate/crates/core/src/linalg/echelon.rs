use crate::field::Field;
use crate::linalg::{LinalgError, SparseMatrix, SparseVec};

/// Incremental echelon basis.
///
/// Vectors are reduced against stored pivot vectors by eliminating their
/// leading (smallest-index) entry until the leading index is new; the stored
/// vectors are normalized to a leading coefficient of one. Pivot choice is a
/// pure function of insertion order, so results are reproducible.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    dim: usize,
    pivot_of: Vec<Option<usize>>,
    rows: Vec<SparseVec<F>>,
    combos: Option<Vec<SparseVec<F>>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, pivot_of: vec![None; dim], rows: Vec::new(), combos: None }
    }

    /// Also records each stored vector as a combination of the inserted ones.
    pub fn with_tracking(dim: usize) -> Self {
        Echelon { combos: Some(Vec::new()), ..Echelon::new(dim) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivot_indices(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.leading().expect("stored rows are nonzero").0).collect()
    }

    /// Reduces `v` until its leading index carries no pivot. Returns the
    /// remainder and the `(row, coefficient)` pairs that were subtracted.
    fn reduce_leading(&self, mut v: SparseVec<F>, record: bool) -> (SparseVec<F>, Vec<(usize, F)>) {
        let mut used = Vec::new();
        while let Some((i, c)) = v.leading() {
            let Some(r) = self.pivot_of[i] else { break };
            let c = c.clone();
            v = v.add_scaled(&c.neg(), &self.rows[r]);
            if record {
                used.push((r, c));
            }
        }
        (v, used)
    }

    /// Inserts `v` (identified as source `id` when tracking). Returns true
    /// when `v` was independent of the stored vectors.
    pub fn insert(&mut self, v: SparseVec<F>, id: usize) -> bool {
        let tracking = self.combos.is_some();
        let (rem, used) = self.reduce_leading(v, tracking);
        let Some((lead, c)) = rem.leading() else { return false };
        let inv = c.inv().expect("leading entry is nonzero");
        let normalized = rem.scale(&inv);
        let r = self.rows.len();
        self.pivot_of[lead] = Some(r);
        if let Some(combos) = &self.combos {
            let mut combo = SparseVec::unit(id);
            for (row, coeff) in &used {
                combo = combo.add_scaled(&coeff.neg(), &combos[*row]);
            }
            let combo = combo.scale(&inv);
            self.combos.as_mut().unwrap().push(combo);
        }
        self.rows.push(normalized);
        true
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce_leading(v.clone(), false).0.is_zero()
    }

    /// Expresses `v` as a combination of inserted vectors, or `None` when
    /// `v` is outside their span. Requires tracking.
    pub fn express(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        let combos = self.combos.as_ref().expect("express requires a tracking echelon");
        let (rem, used) = self.reduce_leading(v.clone(), true);
        if !rem.is_zero() {
            return None;
        }
        let mut x = SparseVec::new();
        for (row, coeff) in used {
            x = x.add_scaled(&coeff, &combos[row]);
        }
        Some(x)
    }

    /// Reduced row echelon form of the stored span: rows sorted by pivot,
    /// each pivot column zero in every other row.
    pub fn into_rref(self) -> (Vec<SparseVec<F>>, Vec<usize>) {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.leading().unwrap().0);
        let pivots: Vec<usize> = rows.iter().map(|r| r.leading().unwrap().0).collect();
        let mut row_of = vec![None; self.dim];
        for (k, &p) in pivots.iter().enumerate() {
            row_of[p] = Some(k);
        }
        for k in (0..rows.len()).rev() {
            let mut row = rows[k].clone();
            let targets: Vec<(usize, F)> = row
                .iter()
                .skip(1)
                .filter_map(|(i, v)| row_of[i].map(|r| (r, v.clone())))
                .collect();
            for (r, c) in targets {
                row = row.add_scaled(&c.neg(), &rows[r]);
            }
            rows[k] = row;
        }
        (rows, pivots)
    }
}

/// Exact rank. Inserts whichever of rows or columns is the smaller family.
pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return 0;
    }
    let vectors = if c <= r { m.columns().to_vec() } else { m.transpose().columns().to_vec() };
    let dim = if c <= r { r } else { c };
    let mut ech = Echelon::new(dim);
    for (id, v) in vectors.into_iter().enumerate() {
        ech.insert(v, id);
        if ech.rank() == dim {
            break;
        }
    }
    ech.rank()
}

/// Reduced row echelon form of the span of `vectors`.
pub fn rref<F: Field>(dim: usize, vectors: impl IntoIterator<Item = SparseVec<F>>) -> Result<(Vec<SparseVec<F>>, Vec<usize>), LinalgError> {
    let mut ech = Echelon::new(dim);
    for (id, v) in vectors.into_iter().enumerate() {
        if let Some(m) = v.max_index() {
            if m >= dim {
                return Err(LinalgError::DimensionMismatch { context: "vector in ambient space", expected: dim, found: m + 1 });
            }
        }
        ech.insert(v, id);
    }
    Ok(ech.into_rref())
}

/// Basis of `ker m` in reduced row echelon form.
pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>) -> Vec<SparseVec<F>> {
    let n = m.ncols();
    let (rows, pivots) = rref(n, m.transpose().columns().iter().cloned()).expect("rows of m live in its column space");
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut buckets: Vec<Vec<(usize, F)>> = vec![Vec::new(); n];
    for f in (0..n).filter(|&f| !is_pivot[f]) {
        buckets[f].push((f, F::one()));
    }
    for (row, &p) in rows.iter().zip(&pivots) {
        for (f, v) in row.iter().skip(1) {
            buckets[f].push((p, v.neg()));
        }
    }
    let raw: Vec<SparseVec<F>> = (0..n).filter(|&f| !is_pivot[f]).map(|f| SparseVec::from_pairs(std::mem::take(&mut buckets[f]))).collect();
    rref(n, raw).expect("kernel vectors live in the source").0
}

/// Result of [`solve`]: either a preimage or the `Inconsistent` sentinel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution<F> {
    Solved(SparseVec<F>),
    Inconsistent,
}

impl<F> Solution<F> {
    pub fn ok(self) -> Option<SparseVec<F>> {
        match self {
            Solution::Solved(x) => Some(x),
            Solution::Inconsistent => None,
        }
    }
}

/// Factorization of a matrix for repeated right-hand sides.
pub struct LinearSolver<F> {
    ncols: usize,
    ech: Echelon<F>,
}

impl<F: Field> LinearSolver<F> {
    pub fn new(m: &SparseMatrix<F>) -> Self {
        let mut ech = Echelon::with_tracking(m.nrows());
        for (j, c) in m.columns().iter().enumerate() {
            ech.insert(c.clone(), j);
        }
        LinearSolver { ncols: m.ncols(), ech }
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    pub fn solve(&self, b: &SparseVec<F>) -> Result<Solution<F>, LinalgError> {
        if let Some(m) = b.max_index() {
            if m >= self.ech.dim() {
                return Err(LinalgError::DimensionMismatch { context: "right-hand side", expected: self.ech.dim(), found: m + 1 });
            }
        }
        let x = self.ech.express(b);
        debug_assert!(x.as_ref().is_none_or(|x| x.max_index().is_none_or(|i| i < self.ncols)));
        Ok(x.map_or(Solution::Inconsistent, Solution::Solved))
    }
}

/// Solves `m x = b` exactly.
pub fn solve<F: Field>(m: &SparseMatrix<F>, b: &SparseVec<F>) -> Result<Solution<F>, LinalgError> {
    LinearSolver::new(m).solve(b)
}
