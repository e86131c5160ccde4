use crate::field::Field;
use crate::linalg::{rref, LinalgError, SparseMatrix, SparseVec};

/// Linear subspace of `F^n`, held as a reduced row echelon basis.
///
/// Because the basis is reduced, the coordinates of a member vector are its
/// entries at the pivot positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F> {
    ambient_dim: usize,
    basis: Vec<SparseVec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = SparseVec<F>>) -> Result<Self, LinalgError> {
        let (basis, pivots) = rref(ambient_dim, vectors)?;
        Ok(Subspace { ambient_dim, basis, pivots })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: (0..ambient_dim).map(SparseVec::unit).collect(), pivots: (0..ambient_dim).collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Ambient-by-dim matrix whose columns are the basis vectors.
    pub fn inclusion(&self) -> SparseMatrix<F> {
        SparseMatrix::from_columns_unchecked(self.ambient_dim, self.basis.clone())
    }

    /// Coordinates in the stored basis, or `None` when `v` is not a member.
    pub fn coordinates(&self, v: &SparseVec<F>) -> Option<Vec<F>> {
        let coords: Vec<F> = self.pivots.iter().map(|&p| v.get(p)).collect();
        let mut rem = v.clone();
        for (c, b) in coords.iter().zip(&self.basis) {
            rem = rem.add_scaled(&c.neg(), b);
        }
        rem.is_zero().then_some(coords)
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }
}

/// Projection onto `F^n / span(subspace)` together with representatives of
/// a quotient basis.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    pub relations: Subspace<F>,
    /// `quotient_dim x ambient_dim`
    pub projection: SparseMatrix<F>,
    /// Ambient representatives of the quotient basis (standard vectors at the
    /// non-pivot positions of the relations).
    pub representatives: Vec<SparseVec<F>>,
}

impl<F: Field> Quotient<F> {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// `ambient_dim x quotient_dim`; a right inverse of the projection.
    pub fn section(&self) -> SparseMatrix<F> {
        SparseMatrix::from_columns_unchecked(self.relations.ambient_dim(), self.representatives.clone())
    }
}

/// Projection killing exactly `span(subspace)`.
pub fn quotient_projection<F: Field>(ambient_dim: usize, subspace: &[SparseVec<F>]) -> Result<Quotient<F>, LinalgError> {
    let relations = Subspace::span(ambient_dim, subspace.iter().cloned())?;
    Ok(quotient_by(relations))
}

pub fn quotient_by<F: Field>(relations: Subspace<F>) -> Quotient<F> {
    let n = relations.ambient_dim();
    let mut position = vec![None; n];
    let mut free = Vec::new();
    let mut is_pivot = vec![false; n];
    for &p in relations.pivots() {
        is_pivot[p] = true;
    }
    for j in 0..n {
        if !is_pivot[j] {
            position[j] = Some(free.len());
            free.push(j);
        }
    }
    let mut cols: Vec<SparseVec<F>> = Vec::with_capacity(n);
    let mut row_of_pivot = vec![None; n];
    for (k, &p) in relations.pivots().iter().enumerate() {
        row_of_pivot[p] = Some(k);
    }
    for j in 0..n {
        match (position[j], row_of_pivot[j]) {
            (Some(q), _) => cols.push(SparseVec::unit(q)),
            (None, Some(k)) => {
                let row = &relations.basis()[k];
                cols.push(SparseVec::from_pairs(
                    row.iter().skip(1).map(|(i, v)| (position[i].expect("reduced rows vanish on other pivots"), v.neg())).collect(),
                ));
            }
            (None, None) => unreachable!(),
        }
    }
    let projection = SparseMatrix::from_columns_unchecked(free.len(), cols);
    let representatives = free.iter().map(|&j| SparseVec::unit(j)).collect();
    Quotient { relations, projection, representatives }
}
