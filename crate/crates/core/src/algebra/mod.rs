//! Finite-dimensional unital algebras, bimodules, evaluation maps and their
//! kernels, and coinvariants.

mod bimodule;
pub mod builtin;
mod eval;

pub use bimodule::{coinvariants, direct_sum, free_bimodule, regular_bimodule, Bimodule, BimoduleMap, Coinvariants};
pub use builtin::{builtin, parse_builtin, BuiltinAlgebra, BuiltinObject, BuiltinSpec};
pub use eval::{evaluate, evaluation_kernel, evaluation_matrix, EvalShape, Label};

use std::fmt;

use serde_json::json;
use thiserror::Error;

use crate::field::Field;
use crate::linalg::{LinalgError, SparseMatrix, SparseVec};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("{0}")]
    Linalg(#[from] LinalgError),
    #[error("bimodules over different algebras")]
    BaseMismatch,
    #[error("evaluation labels contain {0} module slots (at most one allowed)")]
    TooManyModuleSlots(usize),
    #[error("module label supplied without a module")]
    MissingModule,
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("bad builtin parameter for `{name}`: {reason}")]
    BadParameter { name: String, reason: String },
    #[error("subspace is not closed under the bimodule actions")]
    NotASubBimodule,
    #[error("{0}")]
    Invalid(String),
}

/// Unital associative algebra given by structure constants.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra<F> {
    name: String,
    labels: Vec<String>,
    /// `table[i * dim + j]` holds the coordinates of `e_i e_j`.
    table: Vec<SparseVec<F>>,
    unit: SparseVec<F>,
    involution: Option<SparseMatrix<F>>,
}

impl<F: Field> Algebra<F> {
    /// Builds an algebra from `(i, j, k, c)` entries meaning `e_i e_j` has
    /// coefficient `c` on `e_k`. Axioms are not checked here; see
    /// [`Algebra::validate`].
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        products: Vec<(usize, usize, usize, F)>,
        unit: SparseVec<F>,
        involution: Option<SparseMatrix<F>>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        let mut buckets: Vec<Vec<(usize, F)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in products {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(AlgebraError::IndexOutOfRange { index: idx, dim });
                }
            }
            buckets[i * dim + j].push((k, c));
        }
        if let Some(m) = unit.max_index() {
            if m >= dim {
                return Err(AlgebraError::IndexOutOfRange { index: m, dim });
            }
        }
        if let Some(inv) = &involution {
            if inv.shape() != (dim, dim) {
                return Err(AlgebraError::Linalg(LinalgError::ShapeMismatch { left: inv.shape(), right: (dim, dim) }));
            }
        }
        Ok(Algebra {
            name: name.into(),
            labels,
            table: buckets.into_iter().map(SparseVec::from_pairs).collect(),
            unit,
            involution,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &SparseVec<F> {
        &self.unit
    }

    pub fn involution(&self) -> Option<&SparseMatrix<F>> {
        self.involution.as_ref()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.table[i * self.dim() + j]
    }

    /// `(i, j, k, c)` entries of the structure constants.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, F)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.basis_product(i, j).iter() {
                    out.push((i, j, k, c.clone()));
                }
            }
        }
        out
    }

    pub fn mul(&self, x: &SparseVec<F>, y: &SparseVec<F>) -> SparseVec<F> {
        let mut pairs = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a.mul(b);
                for (k, c) in self.basis_product(i, j).iter() {
                    pairs.push((k, ab.mul(c)));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    /// `x * e_j`
    pub fn mul_basis_right(&self, x: &SparseVec<F>, j: usize) -> SparseVec<F> {
        let mut pairs = Vec::new();
        for (i, a) in x.iter() {
            for (k, c) in self.basis_product(i, j).iter() {
                pairs.push((k, a.mul(c)));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// Matrix of `x ⊗ y ↦ xy` from `C ⊗ C` (index `i * dim + j`) to `C`.
    pub fn multiplication_matrix(&self) -> SparseMatrix<F> {
        SparseMatrix::from_columns(self.dim(), self.table.clone()).expect("table entries in range")
    }

    pub fn apply_involution(&self, x: &SparseVec<F>) -> Option<SparseVec<F>> {
        self.involution.as_ref().map(|m| m.mul_vec(x).expect("involution is square"))
    }

    /// Associativity, unit laws and involution axioms, with witnesses.
    pub fn validate(&self) -> Report {
        let d = self.dim();
        let mut report = Report::new();
        report.set_config("algebra", &self.name);
        report.set_config("dim", d);

        let mut assoc_witness = None;
        'outer: for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j);
                for k in 0..d {
                    let left = self.mul_basis_right(ij, k);
                    let right = self.mul(&SparseVec::unit(i), self.basis_product(j, k));
                    if left != right {
                        assoc_witness = Some((i, j, k));
                        break 'outer;
                    }
                }
            }
        }
        let c = report.check("associativity", "associativity", assoc_witness.is_none(), match assoc_witness {
            None => format!("(e_i e_j) e_k = e_i (e_j e_k) for all {} basis triples", d * d * d),
            Some((i, j, k)) => format!("fails for ({}, {}, {})", self.labels[i], self.labels[j], self.labels[k]),
        });
        if let Some((i, j, k)) = assoc_witness {
            c.with_witness(json!({ "triple": [i, j, k] }));
        }

        let unit_witness = (0..d).find(|&i| {
            let e = SparseVec::unit(i);
            self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e
        });
        let c = report.check("unit", "unit-laws", unit_witness.is_none(), match unit_witness {
            None => "1 a = a 1 = a for every basis element".to_string(),
            Some(i) => format!("unit law fails on {}", self.labels[i]),
        });
        if let Some(i) = unit_witness {
            c.with_witness(json!({ "basis": i }));
        }

        if let Some(inv) = &self.involution {
            let squared = inv.mul(inv).expect("square");
            let order_two = squared == SparseMatrix::identity(d);
            report.check("involution-order", "involution", order_two, if order_two {
                "(a*)* = a".to_string()
            } else {
                "involution does not square to the identity".to_string()
            });
            let mut anti = None;
            'anti: for i in 0..d {
                for j in 0..d {
                    let lhs = inv.mul_vec(self.basis_product(i, j)).expect("square");
                    let rhs = self.mul(inv.column(j), inv.column(i));
                    if lhs != rhs {
                        anti = Some((i, j));
                        break 'anti;
                    }
                }
            }
            let c = report.check("involution-anti-multiplicative", "involution", anti.is_none(), match anti {
                None => "(ab)* = b* a*".to_string(),
                Some((i, j)) => format!("(ab)* != b*a* for ({}, {})", self.labels[i], self.labels[j]),
            });
            if let Some((i, j)) = anti {
                c.with_witness(json!({ "pair": [i, j] }));
            }
        }
        report
    }

    /// Re-expresses the structure constants over another field.
    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> Result<G, LinalgError>) -> Result<Algebra<G>, AlgebraError> {
        let conv = |v: &SparseVec<F>| -> Result<SparseVec<G>, LinalgError> {
            Ok(SparseVec::from_pairs(v.iter().map(|(i, c)| Ok((i, f(c)?))).collect::<Result<Vec<_>, LinalgError>>()?))
        };
        Ok(Algebra {
            name: self.name.clone(),
            labels: self.labels.clone(),
            table: self.table.iter().map(conv).collect::<Result<_, _>>()?,
            unit: conv(&self.unit)?,
            involution: match &self.involution {
                Some(m) => Some(SparseMatrix::from_columns(m.nrows(), m.columns().iter().map(conv).collect::<Result<_, _>>()?)?),
                None => None,
            },
        })
    }

    pub fn describe(&self, x: &SparseVec<F>) -> String {
        describe_vector(x, &self.labels)
    }
}

impl<F> fmt::Debug for Algebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}, dim {})", self.name, self.labels.len())
    }
}

pub(crate) fn describe_vector<F: Field>(x: &SparseVec<F>, labels: &[String]) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<String> = x
        .iter()
        .map(|(i, c)| {
            if c.is_one() {
                labels[i].clone()
            } else {
                format!("{c}*{}", labels[i])
            }
        })
        .collect();
    terms.join(" + ")
}
