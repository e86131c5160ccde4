//! The acceptance suite: twelve items, each reported as one record.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::json;

use crate::algebra::{coinvariants, free_bimodule, regular_bimodule, Algebra, Bimodule, BuiltinAlgebra};
use crate::blob::{
    contracting_homotopy, disjoint_union_iso, glue, order_complex_homology, shape, splitting_poset, BlobError, BlobModel, BlobOptions, FaceLattice,
    Manifold, Polyhedron, Relation, Supports, DEFAULT_BUDGET,
};
use crate::chain::{verify_homotopy, ChainMap};
use crate::comparison::{build_phi, h0_comparison, stabilization_study};
use crate::field::Field;
use crate::hochschild::{build_hochschild, hh, property_suite, small_resolution_hh};
use crate::linalg::{rank, LinearSolver, SparseMatrix, SparseVec};
use crate::report::{Report, Status};

pub const ITEMS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(format!("unknown profile `{s}` (quick or full)")),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Quick => "quick",
            Profile::Full => "full",
        })
    }
}

struct Limits {
    max_sites: usize,
    blob_cap: usize,
    hochschild_cap: usize,
    budget: usize,
}

impl Profile {
    fn limits(self) -> Limits {
        match self {
            Profile::Quick => Limits { max_sites: 4, blob_cap: 3, hochschild_cap: 5, budget: DEFAULT_BUDGET },
            Profile::Full => Limits { max_sites: 5, blob_cap: 3, hochschild_cap: 6, budget: 500_000 },
        }
    }
}

pub fn title(item: usize) -> &'static str {
    match item {
        1 => "complex-validity",
        2 => "skein-h0",
        3 => "interval-contractible",
        4 => "disjoint-union",
        5 => "gluing",
        6 => "hochschild-properties",
        7 => "resolution-oracle",
        8 => "comparison-map",
        9 => "shape-map",
        10 => "splitting-posets",
        11 => "multiplicity-robustness",
        12 => "stabilization-study",
        _ => panic!("acceptance items are 1..={ITEMS}"),
    }
}

type Pair<F> = (Arc<Algebra<F>>, Arc<Bimodule<F>>);

fn builtins<F: Field>() -> Vec<Pair<F>> {
    BuiltinAlgebra::standard()
        .into_iter()
        .map(|b| {
            let a = Arc::new(b.build::<F>());
            let m = Arc::new(regular_bimodule(&a));
            (a, m)
        })
        .collect()
}

/// Every builtin algebra paired with its regular and its free bimodule.
fn builtin_pairs<F: Field>() -> Vec<Pair<F>> {
    builtins::<F>()
        .into_iter()
        .flat_map(|(a, reg)| {
            let free = Arc::new(free_bimodule(&a));
            [(a.clone(), reg), (a, free)]
        })
        .collect()
}

fn options(cap: usize, towers: bool, budget: usize) -> BlobOptions {
    BlobOptions { cap, towers, budget }
}

/// Models for items 1 and 11: circles, marked circles and intervals.
fn instances(max_sites: usize) -> Vec<(Manifold, bool)> {
    let mut out = Vec::new();
    for n in 1..=max_sites {
        out.push((Manifold::circle(n), false));
        out.push((Manifold::marked_circle(n), true));
        out.push((Manifold::interval(n), false));
    }
    out
}

fn item1<F: Field>(lim: &Limits) -> Result<Report, BlobError> {
    let mut report = Report::new();
    let mut models = 0;
    for (a, m) in builtins::<F>() {
        for (manifold, marked) in instances(lim.max_sites) {
            let module = marked.then(|| m.clone());
            let model = BlobModel::build(&manifold, a.clone(), module, options(lim.blob_cap, true, lim.budget))?;
            models += 1;
            let v = model.complex().validate();
            if !v.passed() {
                report.check(format!("blob {} {manifold}", a.name()), "boundary-squared", false, v.summary());
            }
        }
        let h = build_hochschild(&a, &m, lim.hochschild_cap);
        let v = h.complex.validate();
        report.check(format!("hochschild {}", a.name()), "boundary-squared", v.passed(), format!("cap {}, dims {:?}", lim.hochschild_cap, h.complex.dims()));
    }
    report.check("blob models", "boundary-squared", report.passed(), format!("∂² = 0 on {models} models, up to {} sites, cap {}", lim.max_sites, lim.blob_cap));
    Ok(report)
}

fn item2<F: Field>() -> Result<Report, BlobError> {
    let mut report = Report::new();
    for (a, _) in builtins::<F>() {
        for n in 2..=4 {
            let model = BlobModel::build(&Manifold::interval(n), a.clone(), None, BlobOptions::with_cap(1))?;
            let ev = model.evaluation()?;
            let kills = ev.mul(&model.complex().boundary_or_zero(1))?.is_zero();
            let skein = model.skein()?;
            let ok = kills && rank(&ev) == a.dim() && skein.dim == a.dim();
            report.check(format!("interval({n}) {}", a.name()), "skein-interval", ok, format!("H₀ dim {} = dim C {}, ev∘∂₁ = 0: {kills}", skein.dim, a.dim()));
        }
    }
    for (a, m) in builtin_pairs::<F>() {
        let coinv = coinvariants(&m);
        for n in 2..=4 {
            let model = BlobModel::build(&Manifold::marked_circle(n), a.clone(), Some(m.clone()), BlobOptions::with_cap(1))?;
            let pi_ev = coinv.projection().mul(&model.evaluation()?)?;
            let kills = pi_ev.mul(&model.complex().boundary_or_zero(1))?.is_zero();
            let skein = model.skein()?;
            // π∘ev induces an isomorphism when it kills boundaries, is onto and the dims agree
            let ok = kills && rank(&pi_ev) == coinv.dim() && skein.dim == coinv.dim();
            report.check(format!("marked circle({n}) {}", m.name()), "skein-coinvariants", ok, format!("H₀ dim {}, coinv dim {}", skein.dim, coinv.dim()));
        }
    }
    Ok(report)
}

fn item3<F: Field>(lim: &Limits) -> Result<Report, BlobError> {
    let mut report = Report::new();
    for (a, _) in builtins::<F>() {
        for n in 1..=lim.max_sites {
            let model = BlobModel::build(&Manifold::interval(n), a.clone(), None, options(lim.blob_cap, true, lim.budget))?;
            let betti = model.betti()?;
            let mut expected = vec![0; betti.len()];
            expected[0] = a.dim();
            report.check(format!("interval({n}) {} betti", a.name()), "interval-betti", betti == expected, format!("{betti:?}"));
            let c = contracting_homotopy(&model)?;
            let id = ChainMap::identity(model.complex().clone());
            let r = verify_homotopy(&c.homotopy, &id, &c.projector)?;
            report.check(format!("interval({n}) {} homotopy", a.name()), "interval-homotopy", r.passed(), "∂h + h∂ = 1 − s∘p in every degree");
        }
    }
    Ok(report)
}

/// Solves for the inverse of a square matrix column by column.
fn invert<F: Field>(m: &SparseMatrix<F>) -> Option<SparseMatrix<F>> {
    let n = m.nrows();
    if m.ncols() != n {
        return None;
    }
    let solver = LinearSolver::new(m);
    let cols = (0..n).map(|j| solver.solve(&SparseVec::unit(j)).ok()?.ok()).collect::<Option<Vec<_>>>()?;
    let inv = SparseMatrix::from_columns(n, cols).ok()?;
    (inv.mul(m).ok()? == SparseMatrix::identity(n)).then_some(inv)
}

fn item4<F: Field>() -> Result<Report, BlobError> {
    let mut report = Report::new();
    for (a, _) in builtins::<F>() {
        for (na, nb) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let (ia, ib) = (Manifold::interval(na), Manifold::interval(nb));
            let union = Manifold::disjoint_union(&[ia.clone(), ib.clone()])?;
            let build = |m: &Manifold| BlobModel::build(m, a.clone(), None, BlobOptions::with_cap(2));
            let (mu, ma, mb) = (build(&union)?, build(&ia)?, build(&ib)?);
            let iso = disjoint_union_iso(&mu, &ma, &mb)?;
            let forward = iso.verify().passed();
            let inverse: Option<Vec<SparseMatrix<F>>> = mu.complex().degrees().map(|k| invert(&iso.component(k))).collect();
            let two_sided = match inverse {
                Some(comps) => {
                    let back = ChainMap::new(iso.target.clone(), iso.source.clone(), comps)?;
                    let left = back.compose(&iso)?;
                    let right = iso.compose(&back)?;
                    back.verify().passed()
                        && left.components == ChainMap::identity(iso.source.clone()).components
                        && right.components == ChainMap::identity(iso.target.clone()).components
                }
                None => false,
            };
            report.check(
                format!("{} {union}", a.name()),
                "disjoint-union",
                forward && two_sided,
                format!("dims {:?} vs {:?}; chain map {forward}, inverse {two_sided}", mu.complex().dims(), iso.target.dims()),
            );
        }
    }
    Ok(report)
}

fn item5<F: Field>() -> Result<Report, BlobError> {
    let mut report = Report::new();
    let a = Arc::new(BuiltinAlgebra::TruncatedPolynomial(2).build::<F>());
    let interval = BlobModel::build(&Manifold::interval(3), a.clone(), None, BlobOptions::with_cap(3))?;
    let circle = BlobModel::build(&Manifold::circle(3), a, None, BlobOptions::with_cap(3))?;
    let gl = glue(&interval, &circle)?;
    report.check("chain map", "gluing", gl.verify().passed(), "∂ gl = gl ∂");
    let ranks = gl.ranks();
    let dims = interval.complex().dims();
    let injective = (0..=2).all(|k| ranks[k] == dims[k]);
    report.check("injective", "gluing", injective, format!("ranks {:?} of source dims {:?} in degrees ≤ 2", &ranks[..=2], &dims[..=2]));
    let id = gl.component(0) == SparseMatrix::identity(dims[0]);
    report.check("degree zero", "gluing", id, "identity on the field tensor");
    Ok(report)
}

fn item6<F: Field>(lim: &Limits) -> Result<Report, BlobError> {
    let mut report = Report::new();
    let cap = lim.hochschild_cap;
    for b in BuiltinAlgebra::standard() {
        let a = Arc::new(b.build::<F>());
        // the ideal xC for the short exact sequence
        let sub = matches!(b, BuiltinAlgebra::TruncatedPolynomial(2)).then(|| vec![SparseVec::unit(1)]);
        let r = if a.dim() <= 4 {
            property_suite(&a, cap, sub)?
        } else {
            let mut r = Report::new();
            let m = Arc::new(regular_bimodule(&a));
            let ok = hh(&a, &m, 1)?[0] == coinvariants(&m).dim();
            r.check("hh0-coinvariants", "hochschild-degree-zero", ok, "HH₀ equals coinvariants");
            r
        };
        report.absorb(a.name(), r);
    }
    Ok(report)
}

fn item7<F: Field>(lim: &Limits) -> Result<Report, BlobError> {
    let mut report = Report::new();
    for n in [2, 3] {
        let (oracle, exactness) = small_resolution_hh::<F>(n, lim.hochschild_cap)?;
        let passed = exactness.passed();
        report.absorb(&format!("resolution n={n}"), exactness);
        let a = Arc::new(BuiltinAlgebra::TruncatedPolynomial(n).build::<F>());
        let m = Arc::new(regular_bimodule(&a));
        let bar = hh(&a, &m, lim.hochschild_cap)?;
        report
            .check(format!("n={n}"), "oracle", passed && bar == oracle, format!("bar {bar:?}, resolution {oracle:?}"))
            .with_witness(json!({ "bar": bar, "resolution": oracle }));
    }
    Ok(report)
}

fn item8<F: Field>() -> Result<Report, BlobError> {
    let mut report = Report::new();
    for (a, m) in builtins::<F>().into_iter().filter(|(a, _)| a.dim() <= 4) {
        let cmp = build_phi(&a, &m, 3, 2)?;
        let r = cmp.map.verify();
        report.check(format!("{} chain map", a.name()), "comparison", r.passed(), "∂φ₁ = φ₀∂ and ∂φ₂ = φ₁∂ on full bases");
        report.absorb(a.name(), h0_comparison(&cmp)?);
    }
    Ok(report)
}

fn item9() -> Result<Report, BlobError> {
    let mut report = Report::new();
    let binom = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
    let mut counts = [0usize; 3];
    for manifold in [Manifold::interval(4), Manifold::circle(4)] {
        let sup = Supports::new(&manifold);
        for (k, configs) in sup.configurations(4, 4).into_iter().enumerate() {
            for c in configs {
                let p = shape(&sup, &c);
                let f = p.f_vector();
                counts[0] += 1;
                if f != FaceLattice::of(&p).f_vector() || p.dim() != k {
                    report.check(format!("{manifold} {}", c.describe(&sup)), "shape", false, format!("{p}: {f:?}"));
                }
                let pairs: Vec<Relation> =
                    (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).map(|(i, j)| sup.relation(c.entries[i].0, c.entries[j].0)).collect();
                if pairs.iter().all(|r| *r != Relation::Disjoint) {
                    counts[1] += 1;
                    let simplex: Vec<usize> = (0..=k).map(|j| binom(k + 1, j + 1)).collect();
                    if f != simplex {
                        report.check(format!("{manifold} {}", c.describe(&sup)), "shape-simplex", false, format!("{f:?} vs {simplex:?}"));
                    }
                }
                if pairs.iter().all(|r| *r == Relation::Disjoint) && k > 1 {
                    counts[2] += 1;
                    let cube: Vec<usize> = (0..=k).map(|j| binom(k, j) << (k - j)).collect();
                    if f != cube || p != Polyhedron::cube(k) {
                        report.check(format!("{manifold} {}", c.describe(&sup)), "shape-cube", false, format!("{f:?} vs {cube:?}"));
                    }
                }
            }
        }
    }
    report.check(
        "face counts",
        "shape",
        report.passed(),
        format!("{} configurations with k ≤ 4: {} nested give simplices, {} disjoint give cubes", counts[0], counts[1], counts[2]),
    );
    Ok(report)
}

fn item10<F: Field>() -> Result<Report, BlobError> {
    let mut report = Report::new();
    for n in 1..=4 {
        for m in [Manifold::interval(n), Manifold::circle(n)] {
            let p = splitting_poset(&m)?;
            let betti = order_complex_homology::<F>(&p)?;
            report.check(format!("{m}"), "splitting-poset", betti.iter().all(|&b| b == 0), format!("{} splittings, reduced betti {betti:?}", p.len()));
        }
    }
    Ok(report)
}

fn item11<F: Field>(lim: &Limits) -> Result<Report, BlobError> {
    let mut report = Report::new();
    let mut compared = 0;
    for (a, m) in builtins::<F>() {
        for (manifold, marked) in instances(lim.max_sites) {
            let module = marked.then(|| m.clone());
            let with = BlobModel::build(&manifold, a.clone(), module.clone(), options(lim.blob_cap, true, lim.budget))?.betti()?;
            let without = BlobModel::build(&manifold, a.clone(), module, options(lim.blob_cap, false, lim.budget))?.betti()?;
            compared += 1;
            if with != without {
                report.check(format!("{} {manifold}", a.name()), "multiplicity", false, format!("towers {with:?}, no towers {without:?}"));
            }
        }
    }
    report.check("towers", "multiplicity", report.passed(), format!("homology agrees on {compared} models"));
    Ok(report)
}

fn item12<F: Field>(lim: &Limits) -> Result<Report, BlobError> {
    let mut report = Report::new();
    for b in [BuiltinAlgebra::TruncatedPolynomial(2), BuiltinAlgebra::MatrixAlgebra(2)] {
        let a = Arc::new(b.build::<F>());
        let m = Arc::new(regular_bimodule(&a));
        let (r, _) = stabilization_study(&a, &m, 2..=6, 2, lim.budget)?;
        report.absorb(a.name(), r);
    }
    Ok(report)
}

/// The detailed report of one item.
pub fn run_item<F: Field>(item: usize, profile: Profile) -> Report {
    let lim = profile.limits();
    let result = match item {
        1 => item1::<F>(&lim),
        2 => item2::<F>(),
        3 => item3::<F>(&lim),
        4 => item4::<F>(),
        5 => item5::<F>(),
        6 => item6::<F>(&lim),
        7 => item7::<F>(&lim),
        8 => item8::<F>(),
        9 => item9(),
        10 => item10::<F>(),
        11 => item11::<F>(&lim),
        12 => item12::<F>(&lim),
        _ => panic!("acceptance items are 1..={ITEMS}"),
    };
    result.unwrap_or_else(|e| {
        let mut r = Report::new();
        r.check("error", title(item), false, e.to_string());
        r
    })
}

/// Folds an item's report into a single record on `summary`.
pub fn record(summary: &mut Report, item: usize, detail: Report) {
    let failed: Vec<String> = detail.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
    let findings: Vec<String> = detail.checks.iter().filter(|c| c.status == Status::Info).map(|c| format!("{}: {}", c.name, c.detail)).collect();
    let total = detail.checks.len() - findings.len();
    let text = if failed.is_empty() { format!("{total} check{} passed", if total == 1 { "" } else { "s" }) } else { format!("{} of {total} checks failed: {}", failed.len(), failed[0]) };
    summary.check(title(item), format!("acceptance-{item}"), failed.is_empty(), text).with_witness(json!({
        "checks": total,
        "failed": failed,
        "findings": findings,
    }));
    for t in detail.tables {
        summary.table(t);
    }
}

pub fn verify_all<F: Field>(profile: Profile) -> Report {
    let mut summary = Report::new();
    summary.set_config("profile", profile);
    summary.set_config("field", F::field_name());
    for item in 1..=ITEMS {
        record(&mut summary, item, run_item::<F>(item, profile));
    }
    summary
}

/// Axioms, `∂² = 0` and the degree-zero identities for one algebra and
/// bimodule; small enough to run on user input.
pub fn instance_suite<F: Field>(algebra: &Arc<Algebra<F>>, module: &Arc<Bimodule<F>>, sites: usize, cap: usize) -> Result<Report, BlobError> {
    let mut report = Report::new();
    report.absorb("algebra", algebra.validate());
    report.absorb("bimodule", module.validate());
    let h = build_hochschild(algebra, module, cap);
    report.check("hochschild", "boundary-squared", h.complex.is_valid(), format!("dims {:?}", h.complex.dims()));
    let coinv = coinvariants(module);
    let h0 = hh(algebra, module, 1)?[0];
    report.check("hh0-coinvariants", "hochschild-degree-zero", h0 == coinv.dim(), format!("HH₀ {h0}, coinv {}", coinv.dim()));
    let model = BlobModel::build(&Manifold::marked_circle(sites), algebra.clone(), Some(module.clone()), BlobOptions::with_cap(cap))?;
    report.check("blob", "boundary-squared", model.complex().is_valid(), format!("dims {:?}", model.complex().dims()));
    let skein = model.skein()?;
    report.check("skein-coinvariants", "skein-coinvariants", skein.dim == coinv.dim(), format!("H₀ {}, coinv {}", skein.dim, coinv.dim()));
    Ok(report)
}
