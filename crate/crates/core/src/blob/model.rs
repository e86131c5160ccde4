use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{evaluation_matrix, Algebra, Bimodule, EvalShape};
use crate::blob::config::{Configuration, Supports};
use crate::blob::space::{Group, GroupKind, GroupSpace};
use crate::blob::{BlobError, Component, Manifold};
use crate::chain::{ChainComplex, ChainHomotopy, ChainMap, Homology};
use crate::field::Field;
use crate::linalg::{quotient_projection, Quotient, SparseMatrix, SparseVec};

/// Default limit on the total dimension of an assembled complex.
pub const DEFAULT_BUDGET: usize = 200_000;

/// Complexes with at most this many generators carry readable tags.
const TAG_LIMIT: usize = 5000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlobOptions {
    /// Highest blob count assembled.
    pub cap: usize,
    /// Allow towers of equal arcs. Without them each support is used once.
    pub towers: bool,
    pub budget: usize,
}

impl Default for BlobOptions {
    fn default() -> Self {
        BlobOptions { cap: 3, towers: true, budget: DEFAULT_BUDGET }
    }
}

impl BlobOptions {
    pub fn with_cap(cap: usize) -> Self {
        BlobOptions { cap, ..Self::default() }
    }

    fn max_level(&self) -> u32 {
        if self.towers {
            self.cap.max(1) as u32
        } else {
            1
        }
    }
}

/// One configuration and its block of generators.
#[derive(Clone, Debug)]
pub struct Generator {
    pub config: Configuration,
    pub groups: Vec<Group>,
    pub dim: usize,
    pub offset: usize,
}

/// The truncated blob complex of a labelled 1-manifold.
pub struct BlobModel<F> {
    manifold: Manifold,
    options: BlobOptions,
    supports: Arc<Supports>,
    space: Arc<GroupSpace<F>>,
    degrees: Vec<Vec<Generator>>,
    index: Vec<HashMap<Configuration, usize>>,
    complex: Arc<ChainComplex<F>>,
}

/// Twig groups and free sites of a configuration, ordered by first site.
pub(crate) fn groups_of(manifold: &Manifold, sup: &Supports, config: &Configuration) -> Vec<Group> {
    let marked = manifold.is_marked();
    let mut covered = vec![false; manifold.site_count()];
    let mut groups = Vec::new();
    for t in config.twigs(sup) {
        let sites = sup.info(t).sites.clone();
        let shape = match sites.iter().position(|&s| marked && s == 0) {
            Some(pos) => EvalShape::Marked { left: pos, right: sites.len() - pos - 1 },
            None => EvalShape::Plain(sites.len()),
        };
        for &s in &sites {
            covered[s] = true;
        }
        groups.push(Group { kind: GroupKind::Twig(shape), sites });
    }
    for (s, c) in covered.iter().enumerate() {
        if !c {
            groups.push(Group::site(s, marked && s == 0));
        }
    }
    groups.sort_by_key(|g| *g.sites.iter().min().unwrap());
    groups
}

/// Parity of the permutation sorting `keys`.
fn sort_sign<T: Ord>(keys: &[T]) -> bool {
    let mut odd = false;
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            if keys[i] > keys[j] {
                odd = !odd;
            }
        }
    }
    odd
}

/// Generator dimensions per degree without assembling anything. Every
/// evaluation is onto, so a twig on `L` sites contributes
/// `(tensor dim) − (target dim)`.
pub fn estimate_dims(manifold: &Manifold, algebra_dim: usize, module_dim: Option<usize>, options: &BlobOptions) -> Vec<usize> {
    let sup = Supports::new(manifold);
    let marked = manifold.is_marked();
    let m = module_dim.unwrap_or(0);
    sup.configurations(options.cap, options.max_level())
        .iter()
        .map(|configs| {
            configs
                .iter()
                .map(|c| {
                    groups_of(manifold, &sup, c)
                        .iter()
                        .map(|g| {
                            let has_mark = marked && g.sites.contains(&0);
                            let tensor = algebra_dim.pow(g.sites.len() as u32 - has_mark as u32) * if has_mark { m } else { 1 };
                            match g.kind {
                                GroupKind::Twig(_) => tensor - if has_mark { m } else { algebra_dim },
                                _ => tensor,
                            }
                        })
                        .product::<usize>()
                })
                .sum()
        })
        .collect()
}

impl<F: Field> BlobModel<F> {
    pub fn build(manifold: &Manifold, algebra: Arc<Algebra<F>>, module: Option<Arc<Bimodule<F>>>, options: BlobOptions) -> Result<Self, BlobError> {
        if manifold.is_marked() && module.is_none() {
            return Err(BlobError::Unsupported("a marked circle needs a bimodule".into()));
        }
        if manifold.site_count() > 24 {
            return Err(BlobError::Unsupported("at most 24 sites".into()));
        }
        let module = if manifold.is_marked() { module } else { None };
        let estimate: usize = estimate_dims(manifold, algebra.dim(), module.as_ref().map(|m| m.dim()), &options).iter().sum();
        if estimate > options.budget {
            return Err(BlobError::Budget { estimate, limit: options.budget });
        }
        let supports = Arc::new(Supports::new(manifold));
        let space = Arc::new(GroupSpace::new(algebra, module));
        Self::assemble(manifold.clone(), options, supports, space)
    }

    fn assemble(manifold: Manifold, options: BlobOptions, supports: Arc<Supports>, space: Arc<GroupSpace<F>>) -> Result<Self, BlobError> {
        let configs = supports.configurations(options.cap, options.max_level());
        let mut degrees = Vec::with_capacity(configs.len());
        let mut index: Vec<HashMap<Configuration, usize>> = Vec::with_capacity(configs.len());
        for list in configs {
            let mut gens: Vec<Generator> = list
                .into_par_iter()
                .map(|config| {
                    let groups = groups_of(&manifold, &supports, &config);
                    let dim = space.dim(&groups)?;
                    Ok(Generator { config, groups, dim, offset: 0 })
                })
                .collect::<Result<_, BlobError>>()?;
            let mut offset = 0;
            for g in &mut gens {
                g.offset = offset;
                offset += g.dim;
            }
            index.push(gens.iter().enumerate().map(|(i, g)| (g.config.clone(), i)).collect());
            degrees.push(gens);
        }
        let dims: Vec<usize> = degrees.iter().map(|g| g.iter().map(|x| x.dim).sum()).collect();
        let mut boundaries = vec![SparseMatrix::zero(0, dims[0])];
        for k in 1..degrees.len() {
            let cols: Vec<Vec<SparseVec<F>>> = degrees[k]
                .par_iter()
                .filter(|g| g.dim > 0)
                .map(|g| {
                    let mut pairs: Vec<Vec<(usize, F)>> = vec![Vec::new(); g.dim];
                    for i in 0..g.config.len() {
                        let face = g.config.face(i);
                        let target = &degrees[k - 1][index[k - 1][&face]];
                        let m = space.transport(&g.groups, &target.groups, None).map_err(|e| match e {
                            BlobError::IdealViolation(_) => BlobError::IdealViolation(g.config.describe(&supports)),
                            e => e,
                        })?;
                        let sign = F::sign(i % 2 == 1);
                        for (j, col) in m.columns().iter().enumerate() {
                            pairs[j].extend(col.iter().map(|(r, v)| (target.offset + r, v.mul(&sign))));
                        }
                    }
                    Ok(pairs.into_iter().map(SparseVec::from_pairs).collect())
                })
                .collect::<Result<_, BlobError>>()?;
            boundaries.push(SparseMatrix::from_columns(dims[k - 1], cols.into_iter().flatten().collect())?);
        }
        let mut complex = ChainComplex::new(0, dims.clone(), boundaries)?.with_truncated_top(true);
        if dims.iter().sum::<usize>() <= TAG_LIMIT {
            let tags = degrees
                .iter()
                .map(|gens| {
                    gens.iter()
                        .flat_map(|g| {
                            let name = g.config.describe(&supports);
                            (0..g.dim).map(move |j| format!("{name} #{j}"))
                        })
                        .collect()
                })
                .collect();
            complex = complex.with_tags(tags);
        }
        Ok(BlobModel { manifold, options, supports, space, degrees, index, complex: Arc::new(complex) })
    }

    pub fn manifold(&self) -> &Manifold {
        &self.manifold
    }

    pub fn options(&self) -> &BlobOptions {
        &self.options
    }

    pub fn cap(&self) -> usize {
        self.options.cap
    }

    pub fn supports(&self) -> &Supports {
        &self.supports
    }

    pub fn space(&self) -> &GroupSpace<F> {
        &self.space
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        self.space.algebra()
    }

    pub fn module(&self) -> Option<&Arc<Bimodule<F>>> {
        self.space.module()
    }

    pub fn complex(&self) -> &Arc<ChainComplex<F>> {
        &self.complex
    }

    pub fn generators(&self, k: usize) -> &[Generator] {
        &self.degrees[k]
    }

    /// Configurations per degree, including those with no generators.
    pub fn config_counts(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    pub fn generator(&self, k: usize, config: &Configuration) -> Option<&Generator> {
        self.index.get(k)?.get(config).map(|&i| &self.degrees[k][i])
    }

    pub fn field_dim(&self) -> usize {
        self.complex.dim(0)
    }

    pub fn homology(&self) -> Result<Homology<F>, BlobError> {
        Ok(self.complex.homology()?)
    }

    /// Betti numbers of the degrees below the cap.
    pub fn betti(&self) -> Result<Vec<usize>, BlobError> {
        Ok(self.homology()?.exact_betti())
    }

    /// The chain in degree `k` carried by `config` with site-tensor label
    /// `field`; `None` when the label violates the twig constraints.
    pub fn chain(&self, k: usize, config: &Configuration, field: &SparseVec<F>) -> Result<Option<SparseVec<F>>, BlobError> {
        let g = self.generator(k, config).ok_or_else(|| BlobError::Unsupported(format!("no configuration {}", config.describe(&self.supports))))?;
        let coords = self.space.coordinates(&g.groups, self.manifold.site_count(), self.manifold.is_marked(), field)?;
        Ok(coords.map(|c| c.reindex(|i| i + g.offset)))
    }

    /// Site tensor to the algebra (interval) or the module (marked circle),
    /// reading clockwise from site 0.
    pub fn evaluation(&self) -> Result<SparseMatrix<F>, BlobError> {
        let n = self.manifold.site_count();
        let shape = if self.manifold.is_marked() { EvalShape::Marked { left: 0, right: n - 1 } } else { EvalShape::Plain(n) };
        if !(self.manifold.is_single_interval() || self.manifold.is_single_circle()) {
            return Err(BlobError::Unsupported("evaluation needs a single component".into()));
        }
        Ok(evaluation_matrix(self.algebra(), self.module().map(|m| m.as_ref()), shape)?)
    }

    /// The skein module: fields modulo the boundaries of 1-blob diagrams.
    pub fn skein(&self) -> Result<Skein<F>, BlobError> {
        let d1 = self.complex.boundary_or_zero(1);
        let quotient = quotient_projection(self.field_dim(), d1.columns())?;
        Ok(Skein { dim: quotient.dim(), quotient })
    }
}

#[derive(Clone, Debug)]
pub struct Skein<F> {
    pub dim: usize,
    pub quotient: Quotient<F>,
}

/// The contraction of an interval model onto its skein module.
#[derive(Clone, Debug)]
pub struct Contraction<F> {
    /// `C →` site tensor: the label at site 0, units elsewhere.
    pub section: SparseMatrix<F>,
    /// Site tensor `→ C`: evaluation.
    pub evaluation: SparseMatrix<F>,
    /// `s ∘ p` as an endomorphism of the complex.
    pub projector: ChainMap<F>,
    pub homotopy: ChainHomotopy<F>,
}

/// `s(c) = c ⊗ 1 ⊗ … ⊗ 1`
fn unit_section<F: Field>(algebra: &Algebra<F>, first_dim: usize, others: usize) -> SparseMatrix<F> {
    let d = algebra.dim();
    let mut rest: SparseVec<F> = SparseVec::unit(0);
    let mut rest_len = 1;
    for _ in 0..others {
        let mut next = Vec::new();
        for (i, a) in rest.iter() {
            for (j, b) in algebra.unit().iter() {
                next.push((i * d + j, a.mul(b)));
            }
        }
        rest = SparseVec::from_pairs(next);
        rest_len *= d;
    }
    let cols = (0..first_dim).map(|c| rest.reindex(|i| c * rest_len + i)).collect();
    SparseMatrix::from_columns(first_dim * rest_len, cols).expect("indices in range")
}

pub(crate) fn section_at_base<F: Field>(model: &BlobModel<F>) -> SparseMatrix<F> {
    let n = model.manifold().site_count();
    let first = if model.manifold().is_marked() { model.module().unwrap().dim() } else { model.algebra().dim() };
    unit_section(model.algebra(), first, n - 1)
}

/// Adds the whole interval as a new outermost blob.
pub fn contracting_homotopy<F: Field>(model: &BlobModel<F>) -> Result<Contraction<F>, BlobError> {
    let n = match model.manifold().components() {
        [Component::Interval(n)] => *n,
        _ => return Err(BlobError::Unsupported("the contraction is defined on a single interval".into())),
    };
    if !model.options().towers {
        return Err(BlobError::Unsupported("the contraction stacks equal blobs; build with towers".into()));
    }
    let sup = model.supports();
    let full = sup.id_of(0, 0, n).expect("the whole interval is an arc");
    let c = model.complex();
    let section = section_at_base(model);
    let evaluation = model.evaluation()?;
    let sp = section.mul(&evaluation)?;

    let mut components = Vec::with_capacity(c.dims().len());
    for k in c.degrees() {
        let rows = c.dim(k + 1);
        if k + 1 > model.cap() {
            components.push(SparseMatrix::zero(0, c.dim(k)));
            continue;
        }
        if k == 0 {
            let (target, _) = Configuration::empty().push_outer(full);
            let cols = (0..c.dim(0))
                .map(|j| {
                    let x = SparseVec::unit(j).sub(sp.column(j));
                    model.chain(1, &target, &x)?.ok_or_else(|| BlobError::IdealViolation("x − s(p(x)) outside the relations".into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            components.push(SparseMatrix::from_columns(rows, cols)?);
            continue;
        }
        let mut cols = Vec::with_capacity(c.dim(k));
        for g in model.generators(k) {
            if g.dim == 0 {
                continue;
            }
            let (target_cfg, pos) = g.config.push_outer(full);
            let t = model.generator(k + 1, &target_cfg).expect("tower within the cap");
            let m = model.space().transport(&g.groups, &t.groups, None)?;
            let sign = F::sign(pos % 2 == 1);
            for col in m.columns() {
                cols.push(SparseVec::from_pairs(col.iter().map(|(r, v)| (t.offset + r, v.mul(&sign))).collect()));
            }
        }
        components.push(SparseMatrix::from_columns(rows, cols)?);
    }
    let homotopy = ChainHomotopy { source: c.clone(), target: c.clone(), components };
    let mut proj = vec![sp];
    proj.extend(c.degrees().skip(1).map(|k| SparseMatrix::zero(c.dim(k), c.dim(k))));
    let projector = ChainMap::new(c.clone(), c.clone(), proj)?;
    Ok(Contraction { section, evaluation, projector, homotopy })
}

/// Rewrites configurations of `source` as configurations of `target` by
/// mapping each support and each site; levels are kept and the sign of the
/// reordering is applied.
fn config_map<F: Field>(
    source: &BlobModel<F>,
    target: &BlobModel<F>,
    support_map: impl Fn(usize) -> usize + Sync,
    site_map: &[usize],
) -> Result<Vec<SparseMatrix<F>>, BlobError> {
    let t = target.complex();
    source
        .complex()
        .degrees()
        .map(|k| {
            let mut cols = Vec::with_capacity(source.complex().dim(k));
            for g in source.generators(k) {
                if g.dim == 0 {
                    continue;
                }
                let keys: Vec<(usize, u32)> = g.config.entries.iter().map(|&(s, l)| (support_map(s), l)).collect();
                let odd = sort_sign(&keys);
                let mut entries = keys.clone();
                entries.sort();
                let cfg = Configuration { entries };
                let tg = target.generator(k, &cfg).ok_or_else(|| BlobError::Unsupported(format!("{} has no image", g.config.describe(source.supports()))))?;
                let m = target.space().transport(&g.groups, &tg.groups, Some(site_map))?;
                let sign = F::sign(odd);
                for col in m.columns() {
                    cols.push(SparseVec::from_pairs(col.iter().map(|(r, v)| (tg.offset + r, v.mul(&sign))).collect()));
                }
            }
            Ok(SparseMatrix::from_columns(t.dim(k), cols)?)
        })
        .collect()
}

/// The chain map from interval(N) to circle(N) that closes the interval up
/// at gap `N − 1`.
pub fn glue<F: Field>(interval: &BlobModel<F>, circle: &BlobModel<F>) -> Result<ChainMap<F>, BlobError> {
    let (n, m) = match (interval.manifold().components(), circle.manifold().components()) {
        ([Component::Interval(n)], [Component::Circle(m)]) => (*n, *m),
        _ => return Err(BlobError::Unsupported("gluing takes an interval and a circle".into())),
    };
    if n != m || circle.manifold().is_marked() || interval.cap() > circle.cap() || interval.options().towers && !circle.options().towers {
        return Err(BlobError::Unsupported(format!("cannot glue interval({n}) into {}", circle.manifold())));
    }
    let (isup, csup) = (interval.supports(), circle.supports());
    let support_map = |s: usize| {
        let a = isup.info(s);
        csup.id_of(0, (a.start_gap + n - 1) % n, (a.end_gap + n - 1) % n).expect("every arc closes up")
    };
    let sites: Vec<usize> = (0..n).collect();
    let comps = config_map(interval, circle, support_map, &sites)?;
    Ok(ChainMap::new(interval.complex().clone(), circle.complex().clone(), comps)?)
}

/// Rotation of an unmarked circle by `steps` sites.
pub fn rotation_action<F: Field>(model: &BlobModel<F>, steps: usize) -> Result<ChainMap<F>, BlobError> {
    let n = match model.manifold().components() {
        [Component::Circle(n)] if !model.manifold().is_marked() => *n,
        _ => return Err(BlobError::Unsupported("rotation acts on an unmarked circle".into())),
    };
    let sup = model.supports();
    let support_map = |s: usize| {
        let a = sup.info(s);
        sup.id_of(0, (a.start_gap + steps) % n, (a.end_gap + steps) % n).expect("rotated arc")
    };
    let sites: Vec<usize> = (0..n).map(|s| (s + steps) % n).collect();
    let comps = config_map(model, model, support_map, &sites)?;
    Ok(ChainMap::new(model.complex().clone(), model.complex().clone(), comps)?)
}

/// The map from the model of `A ⊔ B` to the tensor product of the models
/// of `A` and `B`, splitting each configuration into its two halves with
/// the arcs of `A` first.
pub fn disjoint_union_iso<F: Field>(union: &BlobModel<F>, a: &BlobModel<F>, b: &BlobModel<F>) -> Result<ChainMap<F>, BlobError> {
    let ca = a.manifold().components().len();
    let expected = Manifold::disjoint_union(&[a.manifold().clone(), b.manifold().clone()])?;
    if *union.manifold() != expected || union.cap() > a.cap() + b.cap() {
        return Err(BlobError::Unsupported(format!("{} is not {} ⊔ {}", union.manifold(), a.manifold(), b.manifold())));
    }
    let na = a.manifold().site_count();
    let tensor = Arc::new(a.complex().tensor(b.complex()).truncate(union.cap()));
    let layout = crate::chain::TensorLayout::new(a.complex(), b.complex());
    let usup = union.supports();
    let mut comps = Vec::new();
    for k in union.complex().degrees() {
        let mut cols = Vec::with_capacity(union.complex().dim(k));
        for g in union.generators(k) {
            if g.dim == 0 {
                continue;
            }
            let mut pa = Vec::new();
            let mut pb = Vec::new();
            for &(s, l) in &g.config.entries {
                let info = usup.info(s);
                if info.component < ca {
                    pa.push((a.supports().id_of(info.component, info.start_gap, info.end_gap).unwrap(), l));
                } else {
                    pb.push((b.supports().id_of(info.component - ca, info.start_gap, info.end_gap).unwrap(), l));
                }
            }
            let (ka, kb) = (pa.len(), pb.len());
            let missing = || BlobError::Unsupported(format!("{} is beyond a factor's cap", g.config.describe(usup)));
            let ga = a.generator(ka, &Configuration { entries: pa }).ok_or_else(missing)?;
            let gb = b.generator(kb, &Configuration { entries: pb }).ok_or_else(missing)?;
            let mut target_groups = ga.groups.clone();
            target_groups.extend(gb.groups.iter().map(|x| Group { kind: x.kind, sites: x.sites.iter().map(|s| s + na).collect() }));
            let m = union.space().transport(&g.groups, &target_groups, None)?;
            let off = layout.offset(k, ka).expect("block present");
            let db = b.complex().dim(kb);
            for col in m.columns() {
                cols.push(SparseVec::from_pairs(
                    col.iter()
                        .map(|(r, v)| {
                            let (ia, ib) = (r / gb.dim, r % gb.dim);
                            (off + (ga.offset + ia) * db + gb.offset + ib, v.clone())
                        })
                        .collect(),
                ));
            }
        }
        comps.push(SparseMatrix::from_columns(tensor.dim(k), cols)?);
    }
    Ok(ChainMap::new(union.complex().clone(), tensor, comps)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin::{ground_field, matrix_algebra, truncated_polynomial};
    use crate::algebra::{coinvariants, regular_bimodule};
    use crate::chain::verify_homotopy;
    use crate::field::Q;
    use crate::linalg::rank;

    fn tp(n: usize) -> Arc<Algebra<Q>> {
        Arc::new(truncated_polynomial(n))
    }

    fn build(m: &Manifold, a: &Arc<Algebra<Q>>, cap: usize) -> BlobModel<Q> {
        BlobModel::build(m, a.clone(), None, BlobOptions::with_cap(cap)).unwrap()
    }

    #[test]
    fn trivial_models() {
        let q = Arc::new(ground_field::<Q>());
        let m = build(&Manifold::circle(1), &q, 3);
        assert_eq!(m.complex().dim(0), 1);
        assert!(m.complex().dims()[1..].iter().all(|&d| d == 0));
        let m = build(&Manifold::interval(1), &tp(2), 3);
        assert_eq!(m.complex().dims(), &[2, 0, 0, 0]);
    }

    #[test]
    fn boundary_squares_to_zero() {
        for a in [tp(2), tp(3), Arc::new(matrix_algebra(2))] {
            for m in [Manifold::circle(3), Manifold::interval(3)] {
                let model = build(&m, &a, 3);
                assert!(model.complex().is_valid(), "{m}");
            }
        }
    }

    #[test]
    fn dims_match_estimate() {
        let a = tp(2);
        for m in [Manifold::circle(3), Manifold::interval(4)] {
            let model = build(&m, &a, 3);
            assert_eq!(model.complex().dims(), estimate_dims(&m, 2, None, model.options()).as_slice());
        }
    }

    #[test]
    fn interval_homology_and_contraction() {
        let a = tp(2);
        for n in 1..=3 {
            let model = build(&Manifold::interval(n), &a, 3);
            assert_eq!(model.betti().unwrap(), vec![2, 0, 0]);
            let con = contracting_homotopy(&model).unwrap();
            let id = ChainMap::identity(model.complex().clone());
            assert!(verify_homotopy(&con.homotopy, &id, &con.projector).unwrap().passed(), "interval({n})");
        }
    }

    #[test]
    fn marked_circle_skein_is_coinvariants() {
        let a: Arc<Algebra<Q>> = Arc::new(matrix_algebra(2));
        let m = Arc::new(regular_bimodule(&a));
        let model = BlobModel::build(&Manifold::marked_circle(2), a.clone(), Some(m.clone()), BlobOptions::with_cap(1)).unwrap();
        assert_eq!(model.skein().unwrap().dim, coinvariants(&m).dim());
    }

    #[test]
    fn gluing_is_injective() {
        let a = tp(2);
        let i = build(&Manifold::interval(3), &a, 2);
        let c = build(&Manifold::circle(3), &a, 2);
        let gl = glue(&i, &c).unwrap();
        assert!(gl.is_chain_map());
        for k in 0..=2 {
            assert_eq!(rank(&gl.component(k)), i.complex().dim(k));
        }
        assert_eq!(gl.component(0), SparseMatrix::identity(8));
    }

    #[test]
    fn rotation_has_order_n() {
        let a = tp(2);
        let c = build(&Manifold::circle(3), &a, 2);
        let r = rotation_action(&c, 1).unwrap();
        assert!(r.is_chain_map());
        let r3 = r.compose(&r).unwrap().compose(&r).unwrap();
        for k in 0..=2 {
            assert_eq!(r3.component(k), SparseMatrix::identity(c.complex().dim(k)));
            assert_ne!(r.component(k), SparseMatrix::identity(c.complex().dim(k)));
        }
        assert_eq!(rotation_action(&c, 0).unwrap().components, ChainMap::identity(c.complex().clone()).components);
    }

    #[test]
    fn disjoint_union_matches_tensor() {
        let a = tp(2);
        let (x, y) = (Manifold::interval(1), Manifold::interval(2));
        let u = Manifold::disjoint_union(&[x.clone(), y.clone()]).unwrap();
        let (mx, my, mu) = (build(&x, &a, 2), build(&y, &a, 2), build(&u, &a, 2));
        let iso = disjoint_union_iso(&mu, &mx, &my).unwrap();
        assert!(iso.is_chain_map());
        for k in 0..=2 {
            assert_eq!(mu.complex().dim(k), iso.target.dim(k));
            assert_eq!(rank(&iso.component(k)), mu.complex().dim(k));
        }
    }

    #[test]
    fn budget_refusal() {
        let a: Arc<Algebra<Q>> = Arc::new(matrix_algebra(2));
        let opts = BlobOptions { budget: 100, ..BlobOptions::default() };
        assert!(matches!(BlobModel::build(&Manifold::circle(3), a, None, opts), Err(BlobError::Budget { .. })));
    }
}
