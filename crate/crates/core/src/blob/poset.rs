use crate::blob::{BlobError, Component, Manifold};
use crate::chain::ChainComplex;
use crate::field::Field;
use crate::linalg::{SparseMatrix, SparseVec};

/// A finite poset given by its strict order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    pub labels: Vec<String>,
    /// `less[i][j]` iff element `i` is strictly below `j`
    pub less: Vec<Vec<bool>>,
}

const MAX_CUTS: usize = 12;
const MAX_CHAINS: usize = 200_000;

impl Poset {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Splittings of a single circle or interval: sets of gaps to cut at,
/// ordered by refinement (more cuts are finer, hence lower). A circle needs
/// at least one cut; an interval is cut only at interior gaps.
pub fn splitting_poset(manifold: &Manifold) -> Result<Poset, BlobError> {
    let (gaps, nonempty): (Vec<usize>, bool) = match manifold.components() {
        [Component::Circle(n)] => ((0..*n).collect(), true),
        [Component::Interval(n)] => ((1..*n).collect(), false),
        _ => return Err(BlobError::Unsupported("splittings of a single circle or interval".into())),
    };
    if gaps.len() > MAX_CUTS {
        return Err(BlobError::Budget { estimate: 1 << gaps.len(), limit: 1 << MAX_CUTS });
    }
    let masks: Vec<u32> = (0u32..1 << gaps.len()).filter(|&m| !nonempty || m != 0).collect();
    let labels = masks
        .iter()
        .map(|&m| {
            let cut: Vec<String> = gaps.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, g)| g.to_string()).collect();
            format!("{{{}}}", cut.join(","))
        })
        .collect();
    let less = masks.iter().map(|&a| masks.iter().map(|&b| a != b && a & b == b).collect()).collect();
    Ok(Poset { labels, less })
}

/// Chains of the poset grouped by length; a chain of `j + 1` elements is a
/// `j`-simplex, listed from the bottom element up.
pub fn order_complex(poset: &Poset) -> Result<Vec<Vec<Vec<usize>>>, BlobError> {
    let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut total = 0;
    let mut stack: Vec<Vec<usize>> = (0..poset.len()).map(|i| vec![i]).collect();
    while let Some(chain) = stack.pop() {
        total += 1;
        if total > MAX_CHAINS {
            return Err(BlobError::Budget { estimate: total, limit: MAX_CHAINS });
        }
        let top = *chain.last().unwrap();
        for next in 0..poset.len() {
            if poset.less[top][next] {
                let mut c = chain.clone();
                c.push(next);
                stack.push(c);
            }
        }
        let d = chain.len() - 1;
        if by_dim.len() <= d {
            by_dim.resize(d + 1, Vec::new());
        }
        by_dim[d].push(chain);
    }
    for simplices in &mut by_dim {
        simplices.sort();
    }
    Ok(by_dim)
}

/// Reduced Betti numbers of the order complex, in dimensions
/// `−1, 0, 1, …`.
pub fn order_complex_homology<F: Field>(poset: &Poset) -> Result<Vec<usize>, BlobError> {
    let simplices = order_complex(poset)?;
    Ok(augmented_complex::<F>(&simplices)?.betti()?)
}

/// Simplicial chains with the empty simplex in degree 0, so degree `j + 1`
/// holds the `j`-simplices.
pub(crate) fn augmented_complex<F: Field>(simplices: &[Vec<Vec<usize>>]) -> Result<ChainComplex<F>, BlobError> {
    let mut dims = vec![1];
    dims.extend(simplices.iter().map(Vec::len));
    let mut higher = Vec::new();
    for (d, list) in simplices.iter().enumerate() {
        let cols = list
            .iter()
            .map(|s| {
                if d == 0 {
                    return SparseVec::unit(0);
                }
                let below = &simplices[d - 1];
                SparseVec::from_pairs(
                    (0..s.len())
                        .map(|i| {
                            let mut face = s.clone();
                            face.remove(i);
                            (below.binary_search(&face).expect("faces of chains are chains"), F::sign(i % 2 == 1))
                        })
                        .collect(),
                )
            })
            .collect();
        higher.push(SparseMatrix::from_columns(dims[d], cols)?);
    }
    Ok(ChainComplex::from_boundaries(dims, higher)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    /// Nerve by brute force: every subset of elements, kept when totally
    /// ordered.
    fn nerve(poset: &Poset) -> Vec<Vec<Vec<usize>>> {
        let n = poset.len();
        let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        for mask in 1u64..1 << n {
            let mut elems: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let chain = elems.iter().all(|&a| elems.iter().all(|&b| a == b || poset.less[a][b] || poset.less[b][a]));
            if !chain {
                continue;
            }
            elems.sort_by(|&a, &b| if poset.less[a][b] { std::cmp::Ordering::Less } else { std::cmp::Ordering::Greater });
            let d = elems.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, Vec::new());
            }
            by_dim[d].push(elems);
        }
        for s in &mut by_dim {
            s.sort();
        }
        by_dim
    }

    #[test]
    fn splittings_are_contractible() {
        for n in 1..=4 {
            for m in [Manifold::circle(n), Manifold::interval(n)] {
                let p = splitting_poset(&m).unwrap();
                let betti = order_complex_homology::<Q>(&p).unwrap();
                assert!(betti.iter().all(|&b| b == 0), "{m}: {betti:?}");
            }
        }
    }

    #[test]
    fn brute_force_nerve_agrees() {
        let p = splitting_poset(&Manifold::circle(4)).unwrap();
        assert_eq!(p.len(), 15);
        let fast = order_complex(&p).unwrap();
        let slow = nerve(&p);
        assert_eq!(fast, slow);
        assert!(augmented_complex::<Q>(&slow).unwrap().betti().unwrap().iter().all(|&b| b == 0));
    }

    #[test]
    fn antichain_has_reduced_homology() {
        // two incomparable points: a 0-sphere
        let p = Poset { labels: vec!["a".into(), "b".into()], less: vec![vec![false; 2]; 2] };
        assert_eq!(order_complex_homology::<Q>(&p).unwrap(), vec![0, 1]);
    }
}
