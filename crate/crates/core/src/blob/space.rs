use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::{evaluation_kernel, Algebra, Bimodule, EvalShape};
use crate::blob::BlobError;
use crate::field::Field;
use crate::linalg::{SparseMatrix, SparseVec, Subspace};

/// What constrains the label of a group of sites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// A free algebra label.
    Site,
    /// A free module label at the base point.
    MarkedSite,
    /// The sites of a twig, constrained to the evaluation kernel.
    Twig(EvalShape),
}

/// Sites whose labels are tensored together, in reading order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Group {
    pub kind: GroupKind,
    pub sites: Vec<usize>,
}

impl Group {
    pub fn site(site: usize, marked: bool) -> Self {
        Group { kind: if marked { GroupKind::MarkedSite } else { GroupKind::Site }, sites: vec![site] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct BlockKey {
    source: Vec<(GroupKind, Vec<usize>)>,
    target: Vec<(GroupKind, Vec<usize>)>,
}

/// Label spaces of groups and the maps between tensor products of them.
///
/// A vector space attached to a list of groups is the tensor product of the
/// group spaces in list order, first group most significant. Every such
/// space sits inside the tensor product of the site labels, and `transport`
/// rewrites a vector of one product in the basis of another.
pub struct GroupSpace<F> {
    algebra: Arc<Algebra<F>>,
    module: Option<Arc<Bimodule<F>>>,
    kernels: Mutex<HashMap<GroupKind, Arc<Subspace<F>>>>,
    blocks: Mutex<HashMap<BlockKey, Arc<SparseMatrix<F>>>>,
}

impl<F: Field> GroupSpace<F> {
    pub fn new(algebra: Arc<Algebra<F>>, module: Option<Arc<Bimodule<F>>>) -> Self {
        GroupSpace { algebra, module, kernels: Mutex::new(HashMap::new()), blocks: Mutex::new(HashMap::new()) }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn module(&self) -> Option<&Arc<Bimodule<F>>> {
        self.module.as_ref()
    }

    fn module_dim(&self) -> usize {
        self.module.as_ref().map_or(0, |m| m.dim())
    }

    /// Label dimension of each slot of a group of `len` sites.
    pub fn slot_dims(&self, kind: GroupKind, len: usize) -> Vec<usize> {
        let d = self.algebra.dim();
        match kind {
            GroupKind::Site => vec![d],
            GroupKind::MarkedSite => vec![self.module_dim()],
            GroupKind::Twig(EvalShape::Plain(_)) => vec![d; len],
            GroupKind::Twig(EvalShape::Marked { left, .. }) => {
                let mut v = vec![d; len];
                v[left] = self.module_dim();
                v
            }
        }
    }

    pub fn space(&self, kind: GroupKind) -> Result<Arc<Subspace<F>>, BlobError> {
        if let Some(s) = self.kernels.lock().unwrap().get(&kind) {
            return Ok(s.clone());
        }
        let s = Arc::new(match kind {
            GroupKind::Site => Subspace::full(self.algebra.dim()),
            GroupKind::MarkedSite => Subspace::full(self.module_dim()),
            GroupKind::Twig(shape) => evaluation_kernel(&self.algebra, self.module.as_deref(), shape)?,
        });
        self.kernels.lock().unwrap().insert(kind, s.clone());
        Ok(s)
    }

    pub fn dim(&self, groups: &[Group]) -> Result<usize, BlobError> {
        groups.iter().try_fold(1usize, |acc, g| Ok(acc * self.space(g.kind)?.dim()))
    }

    /// Writes the coordinates of `v` in the group's tensor (reading order)
    /// onto sites, returning `Σ value(site) · stride(site)`.
    fn spread(&self, group: &Group, mut index: usize, stride: impl Fn(usize) -> usize) -> usize {
        let dims = self.slot_dims(group.kind, group.sites.len());
        let mut out = 0;
        for (pos, &site) in group.sites.iter().enumerate().rev() {
            out += (index % dims[pos]) * stride(site);
            index /= dims[pos];
        }
        out
    }

    /// Matrix rewriting the product over `source` (sites relabelled by
    /// `site_map`) in the basis of the product over `target`. Fails when a
    /// source vector does not lie in the target space.
    pub fn transport(&self, source: &[Group], target: &[Group], site_map: Option<&[usize]>) -> Result<SparseMatrix<F>, BlobError> {
        let mapped: Vec<Group> = match site_map {
            Some(m) => source.iter().map(|g| Group { kind: g.kind, sites: g.sites.iter().map(|&s| m[s]).collect() }).collect(),
            None => source.to_vec(),
        };
        let source = &mapped[..];
        let src_dims: Vec<usize> = source.iter().map(|g| self.space(g.kind).map(|s| s.dim())).collect::<Result<_, _>>()?;
        let tgt_dims: Vec<usize> = target.iter().map(|g| self.space(g.kind).map(|s| s.dim())).collect::<Result<_, _>>()?;
        let rows: usize = tgt_dims.iter().product();
        let cols: usize = src_dims.iter().product();
        if cols == 0 {
            return Ok(SparseMatrix::zero(rows, 0));
        }

        // union-find over groups sharing a site
        let n = source.len() + target.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut owner: HashMap<usize, usize> = HashMap::new();
        for (i, g) in source.iter().chain(target).enumerate() {
            for &s in &g.sites {
                if let Some(&j) = owner.get(&s) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                } else {
                    owner.insert(s, i);
                }
            }
        }
        let mut blocks: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut block_of: HashMap<usize, usize> = HashMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            let b = *block_of.entry(r).or_insert_with(|| {
                blocks.push((Vec::new(), Vec::new()));
                blocks.len() - 1
            });
            if i < source.len() {
                blocks[b].0.push(i);
            } else {
                blocks[b].1.push(i - source.len());
            }
        }

        let tgt_stride = strides(&tgt_dims);
        let src_stride = strides(&src_dims);
        struct Piece<F> {
            src: Vec<usize>,
            matrix: Arc<SparseMatrix<F>>,
            /// global target offset of each block row
            offsets: Vec<usize>,
        }
        let mut pieces = Vec::with_capacity(blocks.len());
        for (bs, bt) in &blocks {
            let src_groups: Vec<&Group> = bs.iter().map(|&i| &source[i]).collect();
            let tgt_groups: Vec<&Group> = bt.iter().map(|&i| &target[i]).collect();
            let mut site_set: Vec<usize> = src_groups.iter().flat_map(|g| g.sites.iter().copied()).collect();
            site_set.sort_unstable();
            let tgt_sites: Vec<usize> = {
                let mut t: Vec<usize> = tgt_groups.iter().flat_map(|g| g.sites.iter().copied()).collect();
                t.sort_unstable();
                t
            };
            if site_set != tgt_sites {
                return Err(BlobError::Unsupported(format!("source sites {site_set:?} do not match target sites {tgt_sites:?}")));
            }
            let matrix = if src_groups.len() == 1 && tgt_groups.len() == 1 && src_groups[0] == tgt_groups[0] {
                Arc::new(SparseMatrix::identity(src_dims[bs[0]]))
            } else {
                self.block(&src_groups, &tgt_groups, &site_set)?
            };
            let bt_dims: Vec<usize> = bt.iter().map(|&i| tgt_dims[i]).collect();
            let bt_strides = strides(&bt_dims);
            let offsets = (0..matrix.nrows())
                .map(|r| bt.iter().zip(&bt_dims).zip(&bt_strides).map(|((&g, &d), &s)| (r / s) % d * tgt_stride[g]).sum())
                .collect();
            pieces.push(Piece { src: bs.clone(), matrix, offsets });
        }

        let columns: Vec<SparseVec<F>> = (0..cols)
            .map(|j| {
                let mut acc: Vec<(usize, F)> = vec![(0, F::one())];
                for p in &pieces {
                    let mut col = 0;
                    for &g in &p.src {
                        col = col * src_dims[g] + (j / src_stride[g]) % src_dims[g];
                    }
                    let c = p.matrix.column(col);
                    let mut next = Vec::with_capacity(acc.len() * c.nnz());
                    for (base, a) in &acc {
                        for (r, v) in c.iter() {
                            next.push((base + p.offsets[r], a.mul(v)));
                        }
                    }
                    acc = next;
                }
                SparseVec::from_pairs(acc)
            })
            .collect();
        Ok(SparseMatrix::from_columns(rows, columns)?)
    }

    fn block(&self, source: &[&Group], target: &[&Group], sites: &[usize]) -> Result<Arc<SparseMatrix<F>>, BlobError> {
        let local = |s: usize| sites.binary_search(&s).expect("site in block");
        let describe = |gs: &[&Group]| gs.iter().map(|g| (g.kind, g.sites.iter().map(|&s| local(s)).collect())).collect();
        let key = BlockKey { source: describe(source), target: describe(target) };
        if let Some(m) = self.blocks.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }

        let mut site_dim = vec![0usize; sites.len()];
        for g in source {
            for (&s, d) in g.sites.iter().zip(self.slot_dims(g.kind, g.sites.len())) {
                site_dim[local(s)] = d;
            }
        }
        // assignments of the block's sites, mixed radix in site order
        let mut site_stride = vec![1usize; sites.len()];
        for i in (0..sites.len().saturating_sub(1)).rev() {
            site_stride[i] = site_stride[i + 1] * site_dim[i + 1];
        }
        let stride = |s: usize| site_stride[local(s)];

        // each basis vector of each group, spread onto the block sites
        let spread_basis = |g: &Group| -> Result<Vec<Vec<(usize, F)>>, BlobError> {
            let space = self.space(g.kind)?;
            Ok(space.basis().iter().map(|b| b.iter().map(|(i, c)| (self.spread(g, i, stride), c.clone())).collect()).collect())
        };
        let product = |parts: &[&Vec<(usize, F)>]| -> SparseVec<F> {
            let mut acc: Vec<(usize, F)> = vec![(0, F::one())];
            for part in parts {
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for (a, x) in &acc {
                    for (b, y) in part.iter() {
                        next.push((a + b, x.mul(y)));
                    }
                }
                acc = next;
            }
            SparseVec::from_pairs(acc)
        };
        let src_basis: Vec<Vec<Vec<(usize, F)>>> = source.iter().map(|g| spread_basis(g)).collect::<Result<_, _>>()?;
        let tgt_basis: Vec<Vec<Vec<(usize, F)>>> = target.iter().map(|g| spread_basis(g)).collect::<Result<_, _>>()?;
        let tgt_dims: Vec<usize> = tgt_basis.iter().map(Vec::len).collect();
        let src_dims: Vec<usize> = src_basis.iter().map(Vec::len).collect();

        // the pivot assignment of each target basis tuple
        let mut pivot_of: HashMap<usize, usize> = HashMap::new();
        let tgt_total: usize = tgt_dims.iter().product();
        let tgt_pivots: Vec<Vec<usize>> = target
            .iter()
            .map(|g| Ok(self.space(g.kind)?.pivots().iter().map(|&p| self.spread(g, p, stride)).collect()))
            .collect::<Result<_, BlobError>>()?;
        for t in 0..tgt_total {
            let digits = digits_of(t, &tgt_dims);
            let assignment: usize = digits.iter().enumerate().map(|(g, &b)| tgt_pivots[g][b]).sum();
            pivot_of.insert(assignment, t);
        }

        let src_total: usize = src_dims.iter().product();
        let mut columns = Vec::with_capacity(src_total);
        for j in 0..src_total {
            let digits = digits_of(j, &src_dims);
            let parts: Vec<&Vec<(usize, F)>> = digits.iter().enumerate().map(|(g, &b)| &src_basis[g][b]).collect();
            let v = product(&parts);
            let coords: Vec<(usize, F)> = v.iter().filter_map(|(a, c)| pivot_of.get(&a).map(|&t| (t, c.clone()))).collect();
            let mut rebuilt = SparseVec::new();
            for (t, c) in &coords {
                let digits = digits_of(*t, &tgt_dims);
                let parts: Vec<&Vec<(usize, F)>> = digits.iter().enumerate().map(|(g, &b)| &tgt_basis[g][b]).collect();
                rebuilt = rebuilt.add_scaled(c, &product(&parts));
            }
            if rebuilt != v {
                let names: Vec<String> = target.iter().map(|g| format!("{:?}", g.sites)).collect();
                return Err(BlobError::IdealViolation(names.join(" ")));
            }
            columns.push(SparseVec::from_pairs(coords));
        }
        let m = Arc::new(SparseMatrix::from_columns(tgt_total, columns)?);
        self.blocks.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }

    /// Groups of one free site each, in site order.
    pub fn singletons(sites: usize, marked: bool) -> Vec<Group> {
        (0..sites).map(|s| Group::site(s, marked && s == 0)).collect()
    }

    /// Inclusion of the product over `groups` into the full site tensor.
    pub fn embedding(&self, groups: &[Group], sites: usize, marked: bool) -> Result<SparseMatrix<F>, BlobError> {
        self.transport(groups, &Self::singletons(sites, marked), None)
    }

    /// Coordinates of a site-tensor vector in the product over `groups`, or
    /// `None` when it is not a member.
    pub fn coordinates(&self, groups: &[Group], sites: usize, marked: bool, v: &SparseVec<F>) -> Result<Option<SparseVec<F>>, BlobError> {
        let emb = self.embedding(groups, sites, marked)?;
        let site_dims: Vec<usize> = (0..sites).map(|s| if marked && s == 0 { self.module_dim() } else { self.algebra.dim() }).collect();
        let field_stride = strides(&site_dims);
        let dims: Vec<usize> = groups.iter().map(|g| self.space(g.kind).map(|s| s.dim())).collect::<Result<_, _>>()?;
        let pivots: Vec<Vec<usize>> = groups
            .iter()
            .map(|g| Ok(self.space(g.kind)?.pivots().iter().map(|&p| self.spread(g, p, |s| field_stride[s])).collect()))
            .collect::<Result<_, BlobError>>()?;
        let total: usize = dims.iter().product();
        let coords = SparseVec::from_pairs(
            (0..total)
                .map(|t| {
                    let at: usize = digits_of(t, &dims).iter().enumerate().map(|(g, &b)| pivots[g][b]).sum();
                    (t, v.get(at))
                })
                .collect(),
        );
        Ok((emb.mul_vec(&coords)? == *v).then_some(coords))
    }
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

fn digits_of(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for i in (0..dims.len()).rev() {
        out[i] = index % dims[i];
        index /= dims[i];
    }
    out
}
