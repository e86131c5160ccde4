use std::fmt;

use crate::field::Field;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize) -> Self {
        SparseVec { entries: vec![(index, F::one())] }
    }

    /// Builds from arbitrary (index, value) pairs, summing repeats and
    /// dropping zeros.
    pub fn from_pairs(mut pairs: Vec<(usize, F)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, F)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w = w.add(&v),
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    /// Trusts the caller: indices strictly increasing, values nonzero.
    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, F)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(values: &[F]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<F> {
        let mut out = vec![F::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, F)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &F)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<(usize, &F)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn get(&self, index: usize) -> F {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v.neg())).collect(),
        }
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &F, other: &Self) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (ia, ib) = (a[i].0, b[j].0);
            if ia < ib {
                out.push(a[i].clone());
                i += 1;
            } else if ib < ia {
                out.push((ib, b[j].1.mul(c)));
                j += 1;
            } else {
                let mut v = a[i].1.clone();
                v.add_mul_assign(c, &b[j].1);
                if !v.is_zero() {
                    out.push((ia, v));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(k, v)| (*k, v.mul(c))));
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&F::one().neg(), other)
    }

    pub fn dot(&self, other: &Self) -> F {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut acc = F::zero();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc.add_mul_assign(&a[i].1, &b[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Relabels indices through `map`; the map must be injective on the
    /// support.
    pub fn reindex(&self, map: impl Fn(usize) -> usize) -> Self {
        SparseVec::from_pairs(self.entries.iter().map(|(i, v)| (map(*i), v.clone())).collect())
    }
}

impl<F> SparseVec<F> {
    pub(crate) fn raw_entries(&self) -> &[(usize, F)] {
        &self.entries
    }
}

impl<F: fmt::Debug> fmt::Debug for SparseVec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (i, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}:{v:?}")?;
        }
        f.write_str("]")
    }
}

impl<F: Field> FromIterator<(usize, F)> for SparseVec<F> {
    fn from_iter<I: IntoIterator<Item = (usize, F)>>(iter: I) -> Self {
        SparseVec::from_pairs(iter.into_iter().collect())
    }
}
