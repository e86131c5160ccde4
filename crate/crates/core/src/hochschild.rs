//! Hochschild complexes of bimodules and an independent oracle for
//! truncated polynomial algebras.

use std::sync::Arc;

use rayon::prelude::*;
use serde_json::json;

use crate::algebra::{coinvariants, direct_sum, free_bimodule, regular_bimodule, Algebra, Bimodule, BimoduleMap};
use crate::chain::{short_exact_check, ChainComplex, ChainError, ChainMap};
use crate::field::Field;
use crate::linalg::{quotient_projection, rank, SparseMatrix, SparseVec, Subspace};
use crate::report::{Report, Table};

/// `M ⊗ C^{⊗k}` in degrees `0..=cap` with the cyclic bar differential.
#[derive(Clone, Debug)]
pub struct HochschildComplex<F> {
    pub algebra: Arc<Algebra<F>>,
    pub module: Arc<Bimodule<F>>,
    pub cap: usize,
    pub complex: Arc<ChainComplex<F>>,
}

/// Index of `m ⊗ a_1 ⊗ … ⊗ a_k`: `m * d^k` plus the `a` word in base `d`,
/// `a_1` most significant.
pub fn tensor_index(m: usize, word: &[usize], d: usize) -> usize {
    word.iter().fold(m, |acc, &a| acc * d + a)
}

fn decode(mut index: usize, k: usize, d: usize) -> (usize, Vec<usize>) {
    let mut word = vec![0; k];
    for slot in (0..k).rev() {
        word[slot] = index % d;
        index /= d;
    }
    (index, word)
}

/// `∂(m⊗a_1⊗…⊗a_k) = m a_1 ⊗ a_2 ⊗ … + Σ (−1)^i m ⊗ … ⊗ a_i a_{i+1} ⊗ …
/// + (−1)^k a_k m ⊗ a_1 ⊗ … ⊗ a_{k−1}`
pub fn hochschild_boundary<F: Field>(algebra: &Algebra<F>, module: &Bimodule<F>, k: usize) -> SparseMatrix<F> {
    let d = algebra.dim();
    let n = module.dim();
    if k == 0 {
        return SparseMatrix::zero(0, n);
    }
    let ncols = n * d.pow(k as u32);
    let rows = n * d.pow(k as u32 - 1);
    let cols: Vec<SparseVec<F>> = (0..ncols)
        .into_par_iter()
        .map(|col| {
            let (m, word) = decode(col, k, d);
            let mut pairs = Vec::new();
            for (m2, c) in module.basis_right(m, word[0]).iter() {
                pairs.push((tensor_index(m2, &word[1..], d), c.clone()));
            }
            let mut buf = Vec::with_capacity(k - 1);
            for i in 1..k {
                let sign = F::sign(i % 2 == 1);
                for (p, c) in algebra.basis_product(word[i - 1], word[i]).iter() {
                    buf.clear();
                    buf.extend_from_slice(&word[..i - 1]);
                    buf.push(p);
                    buf.extend_from_slice(&word[i + 1..]);
                    pairs.push((tensor_index(m, &buf, d), c.mul(&sign)));
                }
            }
            let sign = F::sign(k % 2 == 1);
            for (m2, c) in module.basis_left(word[k - 1], m).iter() {
                pairs.push((tensor_index(m2, &word[..k - 1], d), c.mul(&sign)));
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    SparseMatrix::from_columns(rows, cols).expect("indices from the layout")
}

pub fn build_hochschild<F: Field>(algebra: &Arc<Algebra<F>>, module: &Arc<Bimodule<F>>, cap: usize) -> HochschildComplex<F> {
    let d = algebra.dim();
    let dims: Vec<usize> = (0..=cap).map(|k| module.dim() * d.pow(k as u32)).collect();
    let boundaries = (0..=cap).map(|k| hochschild_boundary(algebra, module, k)).collect();
    let small = dims.iter().sum::<usize>() <= 5000;
    let mut complex = ChainComplex::new(0, dims, boundaries).expect("shapes from the layout").with_truncated_top(true);
    if small {
        let tags = (0..=cap)
            .map(|k| {
                (0..module.dim() * d.pow(k as u32))
                    .map(|i| {
                        let (m, word) = decode(i, k, d);
                        let mut s = module.labels()[m].clone();
                        for a in word {
                            s.push_str(" ⊗ ");
                            s.push_str(&algebra.labels()[a]);
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        complex = complex.with_tags(tags);
    }
    HochschildComplex { algebra: algebra.clone(), module: module.clone(), cap, complex: Arc::new(complex) }
}

/// Betti numbers in degrees `0..cap`.
pub fn hh<F: Field>(algebra: &Arc<Algebra<F>>, module: &Arc<Bimodule<F>>, cap: usize) -> Result<Vec<usize>, ChainError> {
    let h = build_hochschild(algebra, module, cap);
    let mut b = h.complex.betti()?;
    b.truncate(cap);
    Ok(b)
}

/// Degreewise `f ⊗ id` between Hochschild complexes.
pub fn induced_map<F: Field>(f: &BimoduleMap<F>, source: &HochschildComplex<F>, target: &HochschildComplex<F>) -> ChainMap<F> {
    let d = source.algebra.dim();
    let components = (0..=source.cap).map(|k| f.matrix.kron(&SparseMatrix::identity(d.pow(k as u32)))).collect();
    ChainMap::new(source.complex.clone(), target.complex.clone(), components).expect("kron shapes")
}

/// Periodic free resolution of `C = k[x]/(x^n)` by `C ⊗ C`, built from
/// monomials without the bimodule machinery.
pub struct SmallResolution<F> {
    pub n: usize,
    /// `P_k → P_{k-1}` for `k = 1..=len`: `u` for odd `k`, `v` for even `k`.
    pub maps: Vec<SparseMatrix<F>>,
    /// `P_0 → C`, `a ⊗ b ↦ ab`.
    pub augmentation: SparseMatrix<F>,
}

impl<F: Field> SmallResolution<F> {
    /// `u(a⊗b) = xa⊗b − a⊗bx`, `v(a⊗b) = Σ_{i+j=n−1} x^i a ⊗ b x^j`;
    /// index of `x^p ⊗ x^q` is `p n + q`.
    pub fn new(n: usize, len: usize) -> Self {
        assert!(n >= 2);
        let idx = |p: usize, q: usize| p * n + q;
        let mut u = Vec::new();
        let mut v = Vec::new();
        let mut aug = Vec::new();
        for p in 0..n {
            for q in 0..n {
                let col = idx(p, q);
                if p + 1 < n {
                    u.push((idx(p + 1, q), col, F::one()));
                }
                if q + 1 < n {
                    u.push((idx(p, q + 1), col, F::one().neg()));
                }
                for i in 0..n {
                    let j = n - 1 - i;
                    if p + i < n && q + j < n {
                        v.push((idx(p + i, q + j), col, F::one()));
                    }
                }
                if p + q < n {
                    aug.push((p + q, col, F::one()));
                }
            }
        }
        let u = SparseMatrix::from_triplets(n * n, n * n, u).unwrap();
        let v = SparseMatrix::from_triplets(n * n, n * n, v).unwrap();
        let maps = (1..=len).map(|k| if k % 2 == 1 { u.clone() } else { v.clone() }).collect();
        SmallResolution { n, maps, augmentation: SparseMatrix::from_triplets(n, n * n, aug).unwrap() }
    }

    /// Exactness of `… → P_1 → P_0 → C → 0` at `C`, `P_0`, …, `P_{len-1}`.
    pub fn verify_exactness(&self) -> Report {
        let mut report = Report::new();
        let nn = self.n * self.n;
        let surj = rank(&self.augmentation) == self.n;
        report.check("augmentation-surjective", "resolution", surj, format!("rank {} onto C", rank(&self.augmentation)));
        let mut outgoing = self.augmentation.clone();
        for (k, incoming) in self.maps.iter().enumerate() {
            let zero = outgoing.mul(incoming).unwrap().is_zero();
            let exact = zero && nn - rank(&outgoing) == rank(incoming);
            report.check(format!("exact-at-P{k}"), "resolution", exact, format!("composite zero {zero}, ker dim {} vs image dim {}", nn - rank(&outgoing), rank(incoming)));
            outgoing = incoming.clone();
        }
        report
    }

    /// `C ⊗_{C^e} P_*`: coinvariants of each `P_k` with induced maps
    /// `π f σ`. Also checks that every map preserves the relations.
    pub fn coinvariant_complex(&self) -> (ChainComplex<F>, Report) {
        let n = self.n;
        let idx = |p: usize, q: usize| p * n + q;
        // relations x·(a⊗b) − (a⊗b)·x = xa⊗b − a⊗bx, together with those of higher powers
        let mut rels = Vec::new();
        for s in 1..n {
            for p in 0..n {
                for q in 0..n {
                    let mut pairs = Vec::new();
                    if p + s < n {
                        pairs.push((idx(p + s, q), F::one()));
                    }
                    if q + s < n {
                        pairs.push((idx(p, q + s), F::one().neg()));
                    }
                    rels.push(SparseVec::from_pairs(pairs));
                }
            }
        }
        let quotient = quotient_projection(n * n, &rels).expect("relations live in P");
        let relations = Subspace::span(n * n, rels).unwrap();
        let pi = quotient.projection.clone();
        let sigma = quotient.section();
        let mut report = Report::new();
        let preserved = self.maps.iter().all(|f| relations.basis().iter().all(|r| relations.contains(&f.mul_vec(r).unwrap())));
        report.check("maps-preserve-relations", "resolution", preserved, "each differential maps commutators to commutators");
        let q = quotient.dim();
        let induced: Vec<SparseMatrix<F>> = self.maps.iter().map(|f| pi.mul(&f.mul(&sigma).unwrap()).unwrap()).collect();
        let composites = induced.windows(2).all(|w| w[0].mul(&w[1]).unwrap().is_zero());
        report.check("coinvariant-composites-vanish", "resolution", composites, "g_{k-1} g_k = 0 after coinvariants");
        let complex = ChainComplex::from_boundaries(vec![q; self.maps.len() + 1], induced).expect("square blocks").with_truncated_top(true);
        (complex, report)
    }
}

/// Betti numbers of `k[x]/(x^n)` with coefficients in itself in degrees
/// `0..cap`, from the periodic resolution.
pub fn small_resolution_hh<F: Field>(n: usize, cap: usize) -> Result<(Vec<usize>, Report), ChainError> {
    let res = SmallResolution::<F>::new(n, cap + 1);
    let mut report = res.verify_exactness();
    let (complex, r) = res.coinvariant_complex();
    report.absorb("", r);
    let mut betti = complex.betti()?;
    betti.truncate(cap);
    Ok((betti, report))
}

/// Additivity, short exactness, `HH_0 = coinv` and contractibility of the
/// free bimodule, for one algebra.
pub fn property_suite<F: Field>(algebra: &Arc<Algebra<F>>, cap: usize, sub_generators: Option<Vec<SparseVec<F>>>) -> Result<Report, ChainError> {
    let mut report = Report::new();
    report.set_config("algebra", algebra.name());
    report.set_config("cap", cap);
    let reg = Arc::new(regular_bimodule(algebra));
    let free = Arc::new(free_bimodule(algebra));

    let sum = Arc::new(direct_sum(&reg, &reg).expect("same base"));
    let (h_reg, h_sum) = (hh(algebra, &reg, cap)?, hh(algebra, &sum, cap)?);
    let doubled: Vec<usize> = h_reg.iter().map(|b| 2 * b).collect();
    report
        .check("additivity", "hochschild-additivity", h_sum == doubled, format!("hh(C⊕C) = {h_sum:?}, 2·hh(C) = {doubled:?}"))
        .with_witness(json!({ "sum": h_sum, "parts": doubled }));

    if let Some(gens) = sub_generators {
        match (reg.sub_bimodule("sub", gens.clone()), reg.quotient("quotient", gens)) {
            (Ok((sub, incl)), Ok((quot, proj))) => {
                let (hs, hc, hq) = (build_hochschild(algebra, &sub, cap), build_hochschild(algebra, &reg, cap), build_hochschild(algebra, &quot, cap));
                let (i, p) = (induced_map(&incl, &hs, &hc), induced_map(&proj, &hc, &hq));
                let r = short_exact_check(&i, &p);
                let ok = r.passed();
                report.check("short-exactness", "hochschild-exactness", ok, format!("0 → {} → C → {} → 0 exact in degrees 0..={cap}", sub.dim(), quot.dim()));
                report.absorb("short-exactness", r);
            }
            (Err(e), _) | (_, Err(e)) => {
                report.check("short-exactness", "hochschild-exactness", false, format!("sub-bimodule rejected: {e}"));
            }
        }
    }

    let mut coinv_ok = true;
    let mut rows = Vec::new();
    for m in [&reg, &free] {
        let c = coinvariants(m).dim();
        let h0 = hh(algebra, m, 1)?[0];
        coinv_ok &= c == h0;
        rows.push(json!({ "module": m.name(), "coinvariants": c, "hh0": h0 }));
    }
    report.check("hh0-coinvariants", "hochschild-degree-zero", coinv_ok, "HH_0 equals coinvariants for regular and free bimodules").with_witness(json!(rows));

    let h_free = hh(algebra, &free, cap)?;
    let mut expected = vec![0; cap];
    if cap > 0 {
        expected[0] = algebra.dim();
    }
    report
        .check("free-contractible", "hochschild-free", h_free == expected, format!("hh(C⊗C) = {h_free:?}, expected {expected:?}"))
        .with_witness(json!({ "betti": h_free }));
    report.table(Table {
        name: format!("hochschild {}", algebra.name()),
        columns: vec!["module".into(), "betti".into()],
        rows: vec![vec![json!("regular"), json!(h_reg)], vec![json!("free"), json!(h_free)]],
    });
    Ok(report)
}
