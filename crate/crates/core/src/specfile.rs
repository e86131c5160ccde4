//! JSON documents describing an algebra and optional bimodules over it.
//!
//! ```json
//! {
//!   "name": "dual numbers",
//!   "dim": 2,
//!   "basis": ["1", "x"],
//!   "unit": [[1, 1], [0, 1]],
//!   "mult": [[0, 0, 0, 1, 1], [0, 1, 1, 1, 1], [1, 0, 1, 1, 1]],
//!   "involution": [[0, 0, 1, 1], [1, 1, 1, 1]],
//!   "bimodules": [{ "name": "regular", "dim": 2, "basis": ["1", "x"],
//!                   "left": [[i, m, n, num, den], ...],
//!                   "right": [[m, j, n, num, den], ...] }]
//! }
//! ```
//!
//! `mult` entries `[i, j, k, num, den]` say `e_i e_j` has coefficient
//! `num/den` on `e_k`; `involution` entries `[i, k, num, den]` give the image
//! of `e_i`. Scalars are always integer pairs.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::{builtin, parse_builtin, Algebra, AlgebraError, Bimodule};
use crate::field::{Field, Q};
use crate::linalg::{SparseMatrix, SparseVec};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("`{path}` is not a builtin name and cannot be read: {message}")]
    Io { path: String, message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    #[serde(default)]
    pub name: Option<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<[i64; 2]>,
    pub mult: Vec<[i64; 5]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<Vec<[i64; 4]>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bimodules: Vec<BimoduleSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub dim: usize,
    pub basis: Vec<String>,
    pub left: Vec<[i64; 5]>,
    pub right: Vec<[i64; 5]>,
}

pub type Built<F> = (Arc<Algebra<F>>, Vec<Arc<Bimodule<F>>>);

/// An algebra with the bimodules declared alongside it.
#[derive(Clone, Debug)]
pub struct Loaded<F> {
    pub algebra: Arc<Algebra<F>>,
    pub bimodules: Vec<Arc<Bimodule<F>>>,
    /// SHA-256 of the file bytes, or of the builtin name.
    pub digest: String,
}

impl<F: Field> Loaded<F> {
    /// The first declared bimodule, or the regular one.
    pub fn module(&self) -> Arc<Bimodule<F>> {
        self.bimodules.first().cloned().unwrap_or_else(|| Arc::new(crate::algebra::regular_bimodule(&self.algebra)))
    }
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> SpecError {
    SpecError::Field { field: field.into(), message: message.into() }
}

fn index(value: i64, bound: usize, field: impl Fn() -> String) -> Result<usize, SpecError> {
    usize::try_from(value).ok().filter(|&v| v < bound).ok_or_else(|| field_err(field(), format!("index {value} out of range 0..{bound}")))
}

fn scalar<F: Field>(num: i64, den: i64, field: impl Fn() -> String) -> Result<F, SpecError> {
    if den == 0 {
        return Err(field_err(field(), "zero denominator"));
    }
    F::from_ratio(num, den).map_err(|e| field_err(field(), e.to_string()))
}

pub fn parse(text: &str) -> Result<SpecFile, SpecError> {
    serde_json::from_str(text).map_err(|e| SpecError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })
}

impl SpecFile {
    /// Builds the algebra and bimodules; axioms are checked separately.
    pub fn build<F: Field>(&self) -> Result<Built<F>, SpecError> {
        let d = self.dim;
        if self.basis.len() != d {
            return Err(field_err("basis", format!("{} labels for dimension {d}", self.basis.len())));
        }
        if self.unit.len() != d {
            return Err(field_err("unit", format!("{} coordinates for dimension {d}", self.unit.len())));
        }
        let unit = SparseVec::from_pairs(
            self.unit.iter().enumerate().map(|(i, [n, q])| Ok((i, scalar(*n, *q, || format!("unit[{i}]"))?))).collect::<Result<_, SpecError>>()?,
        );
        let mut products = Vec::with_capacity(self.mult.len());
        for (e, [i, j, k, n, q]) in self.mult.iter().enumerate() {
            let at = || format!("mult[{e}]");
            products.push((index(*i, d, at)?, index(*j, d, at)?, index(*k, d, at)?, scalar(*n, *q, at)?));
        }
        let involution = match &self.involution {
            None => None,
            Some(entries) => {
                let mut trip = Vec::with_capacity(entries.len());
                for (e, [i, k, n, q]) in entries.iter().enumerate() {
                    let at = || format!("involution[{e}]");
                    trip.push((index(*k, d, at)?, index(*i, d, at)?, scalar(*n, *q, at)?));
                }
                Some(SparseMatrix::from_triplets(d, d, trip).map_err(|e| field_err("involution", e.to_string()))?)
            }
        };
        let name = self.name.clone().unwrap_or_else(|| "algebra".into());
        let algebra = Arc::new(Algebra::new(name, self.basis.clone(), products, unit, involution)?);

        let mut bimodules = Vec::with_capacity(self.bimodules.len());
        for (b, spec) in self.bimodules.iter().enumerate() {
            let md = spec.dim;
            if spec.basis.len() != md {
                return Err(field_err(format!("bimodules[{b}].basis"), format!("{} labels for dimension {md}", spec.basis.len())));
            }
            let mut left = Vec::with_capacity(spec.left.len());
            for (e, [a, m, n, num, den]) in spec.left.iter().enumerate() {
                let at = || format!("bimodules[{b}].left[{e}]");
                left.push((index(*a, d, at)?, index(*m, md, at)?, index(*n, md, at)?, scalar(*num, *den, at)?));
            }
            let mut right = Vec::with_capacity(spec.right.len());
            for (e, [m, a, n, num, den]) in spec.right.iter().enumerate() {
                let at = || format!("bimodules[{b}].right[{e}]");
                right.push((index(*m, md, at)?, index(*a, d, at)?, index(*n, md, at)?, scalar(*num, *den, at)?));
            }
            let name = spec.name.clone().unwrap_or_else(|| format!("bimodule {b}"));
            bimodules.push(Arc::new(Bimodule::new(name, spec.basis.clone(), algebra.clone(), left, right)?));
        }
        Ok((algebra, bimodules))
    }

    /// Writes a rational algebra and bimodules over it.
    pub fn from_algebra(algebra: &Algebra<Q>, bimodules: &[&Bimodule<Q>]) -> Self {
        let pair = |c: &Q| c.to_i64_pair().expect("coefficients fit in i64");
        let unit = (0..algebra.dim())
            .map(|i| {
                let (n, q) = pair(&algebra.unit().get(i));
                [n, q]
            })
            .collect();
        let mult = algebra
            .structure_constants()
            .iter()
            .map(|(i, j, k, c)| {
                let (n, q) = pair(c);
                [*i as i64, *j as i64, *k as i64, n, q]
            })
            .collect();
        let involution = algebra.involution().map(|m| {
            m.triplets()
                .map(|(k, i, c)| {
                    let (n, q) = pair(c);
                    [i as i64, k as i64, n, q]
                })
                .collect::<Vec<_>>()
        });
        let entries = |es: Vec<(usize, usize, usize, Q)>| {
            es.iter()
                .map(|(a, b, c, x)| {
                    let (n, q) = pair(x);
                    [*a as i64, *b as i64, *c as i64, n, q]
                })
                .collect::<Vec<_>>()
        };
        SpecFile {
            name: Some(algebra.name().to_string()),
            dim: algebra.dim(),
            basis: algebra.labels().to_vec(),
            unit,
            mult,
            involution,
            bimodules: bimodules
                .iter()
                .map(|b| BimoduleSpec {
                    name: Some(b.name().to_string()),
                    dim: b.dim(),
                    basis: b.labels().to_vec(),
                    left: entries(b.left_entries()),
                    right: entries(b.right_entries()),
                })
                .collect(),
        }
    }

    /// Indented JSON with each numeric tuple kept on one line.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        write_compact(&serde_json::to_value(self).expect("spec files serialize"), 0, &mut out);
        out
    }
}

fn write_compact(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => out.push_str(&v.to_string()),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_compact(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&format!("{}{}: ", pad(indent + 1), Value::String(k.clone())));
                write_compact(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        _ => out.push_str(&v.to_string()),
    }
}

fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Reads a builtin name such as `truncated_polynomial(2)` or, failing that,
/// a spec file at that path.
pub fn load<F: Field>(source: &str) -> Result<Loaded<F>, SpecError> {
    if parse_builtin(source).is_ok() {
        let (algebra, module) = builtin::<F>(source)?.pair();
        return Ok(Loaded { algebra, bimodules: vec![module], digest: digest(source.as_bytes()) });
    }
    let text = std::fs::read_to_string(source).map_err(|e| SpecError::Io { path: source.to_string(), message: e.to_string() })?;
    let (algebra, bimodules) = parse(&text)?.build()?;
    Ok(Loaded { algebra, bimodules, digest: digest(text.as_bytes()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::builtin::{matrix_algebra, truncated_polynomial};
    use crate::algebra::regular_bimodule;

    #[test]
    fn round_trip_matrix_algebra() {
        let a = matrix_algebra::<Q>(2);
        let reg = regular_bimodule(&Arc::new(a.clone()));
        let text = SpecFile::from_algebra(&a, &[&reg]).to_json();
        let (b, mods) = parse(&text).unwrap().build::<Q>().unwrap();
        assert_eq!(*b, a);
        assert!(b.validate().passed());
        assert_eq!(mods.len(), 1);
        assert!(mods[0].validate().passed());
        assert_eq!(mods[0].left_entries(), reg.left_entries());
    }

    #[test]
    fn shipped_file_matches_builtin() {
        let text = include_str!("../data/matrix_algebra_2.json");
        let (a, _) = parse(text).unwrap().build::<Q>().unwrap();
        assert_eq!(*a, matrix_algebra::<Q>(2));
    }

    #[test]
    fn diagnostics_name_the_problem() {
        let err = parse("{\"dim\": 2,\n \"basis\": [}").unwrap_err();
        assert!(matches!(err, SpecError::Syntax { line: 2, .. }), "{err}");
        let mut spec = SpecFile::from_algebra(&truncated_polynomial::<Q>(2), &[]);
        spec.mult[1][2] = 7;
        let err = spec.build::<Q>().unwrap_err();
        assert!(err.to_string().contains("mult[1]"), "{err}");
        let mut spec = SpecFile::from_algebra(&truncated_polynomial::<Q>(2), &[]);
        spec.unit[0] = [1, 0];
        assert!(spec.build::<Q>().unwrap_err().to_string().contains("zero denominator"));
    }

    #[test]
    fn non_associative_file_fails_validation() {
        let mut spec = SpecFile::from_algebra(&truncated_polynomial::<Q>(3), &[]);
        // x·x² = x² while (x·x)·x = 0
        spec.mult.push([1, 2, 2, 1, 1]);
        let (a, _) = spec.build::<Q>().unwrap();
        let report = a.validate();
        assert!(!report.passed());
    }
}
