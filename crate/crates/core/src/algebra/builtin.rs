use std::fmt;
use std::sync::Arc;

use crate::algebra::{free_bimodule, regular_bimodule, Algebra, AlgebraError, Bimodule};
use crate::field::Field;
use crate::linalg::{SparseMatrix, SparseVec};

const MAX_PARAM: usize = 12;

pub fn ground_field<F: Field>() -> Algebra<F> {
    Algebra::new(
        "ground_field",
        vec!["1".into()],
        vec![(0, 0, 0, F::one())],
        SparseVec::unit(0),
        Some(SparseMatrix::identity(1)),
    )
    .expect("static data")
}

/// `k[x]/(x^n)` with basis `1, x, …, x^{n-1}`.
pub fn truncated_polynomial<F: Field>(n: usize) -> Algebra<F> {
    assert!(n >= 1);
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n - i {
            products.push((i, j, i + j, F::one()));
        }
    }
    Algebra::new(format!("truncated_polynomial({n})"), labels, products, SparseVec::unit(0), Some(SparseMatrix::identity(n))).expect("indices in range")
}

/// Matrix units `e_ij` at index `n*i + j`; transpose as involution.
pub fn matrix_algebra<F: Field>(n: usize) -> Algebra<F> {
    assert!(n >= 1);
    let idx = |i: usize, j: usize| n * i + j;
    let labels = (0..n).flat_map(|i| (0..n).map(move |j| format!("e{i}{j}"))).collect();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                products.push((idx(i, j), idx(j, l), idx(i, l), F::one()));
            }
        }
    }
    let unit = SparseVec::from_pairs((0..n).map(|i| (idx(i, i), F::one())).collect());
    let transpose = SparseMatrix::from_triplets(n * n, n * n, (0..n).flat_map(|i| (0..n).map(move |j| (idx(j, i), idx(i, j), F::one()))).collect())
        .expect("indices in range");
    Algebra::new(format!("matrix_algebra({n})"), labels, products, unit, Some(transpose)).expect("indices in range")
}

/// Group algebra of `Z/n`, basis `g^i`, involution `g ↦ g^{-1}`.
pub fn cyclic_group_algebra<F: Field>(n: usize) -> Algebra<F> {
    assert!(n >= 1);
    let labels = (0..n).map(|i| if i == 0 { "e".to_string() } else { format!("g^{i}") }).collect();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            products.push((i, j, (i + j) % n, F::one()));
        }
    }
    let inverse = SparseMatrix::from_triplets(n, n, (0..n).map(|i| ((n - i) % n, i, F::one())).collect()).expect("indices in range");
    Algebra::new(format!("group_algebra(cyclic {n})"), labels, products, SparseVec::unit(0), Some(inverse)).expect("indices in range")
}

/// Group algebra of the symmetric group on three letters. Permutations in
/// lexicographic order of their one-line notation; `(στ)(x) = σ(τ(x))`.
pub fn symmetric_group_algebra<F: Field>() -> Algebra<F> {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    let labels = perms.iter().map(|p| format!("[{}{}{}]", p[0], p[1], p[2])).collect();
    let mut products = Vec::new();
    let mut inverse = Vec::new();
    for (i, s) in perms.iter().enumerate() {
        for (j, t) in perms.iter().enumerate() {
            products.push((i, j, index([s[t[0]], s[t[1]], s[t[2]]]), F::one()));
        }
        let mut inv = [0; 3];
        for x in 0..3 {
            inv[s[x]] = x;
        }
        inverse.push((index(inv), i, F::one()));
    }
    let inverse = SparseMatrix::from_triplets(6, 6, inverse).expect("indices in range");
    Algebra::new("group_algebra(symmetric 3)", labels, products, SparseVec::unit(0), Some(inverse)).expect("indices in range")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinAlgebra {
    GroundField,
    TruncatedPolynomial(usize),
    MatrixAlgebra(usize),
    Cyclic(usize),
    Symmetric3,
}

impl BuiltinAlgebra {
    pub fn build<F: Field>(&self) -> Algebra<F> {
        match *self {
            BuiltinAlgebra::GroundField => ground_field(),
            BuiltinAlgebra::TruncatedPolynomial(n) => truncated_polynomial(n),
            BuiltinAlgebra::MatrixAlgebra(n) => matrix_algebra(n),
            BuiltinAlgebra::Cyclic(n) => cyclic_group_algebra(n),
            BuiltinAlgebra::Symmetric3 => symmetric_group_algebra(),
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            BuiltinAlgebra::GroundField => 1,
            BuiltinAlgebra::TruncatedPolynomial(n) | BuiltinAlgebra::Cyclic(n) => n,
            BuiltinAlgebra::MatrixAlgebra(n) => n * n,
            BuiltinAlgebra::Symmetric3 => 6,
        }
    }

    /// The algebras every suite iterates over.
    pub fn standard() -> Vec<BuiltinAlgebra> {
        vec![
            BuiltinAlgebra::GroundField,
            BuiltinAlgebra::TruncatedPolynomial(2),
            BuiltinAlgebra::TruncatedPolynomial(3),
            BuiltinAlgebra::MatrixAlgebra(2),
            BuiltinAlgebra::Cyclic(3),
        ]
    }
}

impl fmt::Display for BuiltinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinAlgebra::GroundField => write!(f, "ground_field"),
            BuiltinAlgebra::TruncatedPolynomial(n) => write!(f, "truncated_polynomial({n})"),
            BuiltinAlgebra::MatrixAlgebra(n) => write!(f, "matrix_algebra({n})"),
            BuiltinAlgebra::Cyclic(n) => write!(f, "group_algebra(cyclic {n})"),
            BuiltinAlgebra::Symmetric3 => write!(f, "group_algebra(symmetric 3)"),
        }
    }
}

/// Parsed builtin name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinSpec {
    Algebra(BuiltinAlgebra),
    RegularBimodule(BuiltinAlgebra),
    FreeBimodule(BuiltinAlgebra),
}

impl BuiltinSpec {
    pub fn algebra(&self) -> BuiltinAlgebra {
        match *self {
            BuiltinSpec::Algebra(a) | BuiltinSpec::RegularBimodule(a) | BuiltinSpec::FreeBimodule(a) => a,
        }
    }

    pub fn build<F: Field>(&self) -> BuiltinObject<F> {
        let alg = Arc::new(self.algebra().build::<F>());
        match self {
            BuiltinSpec::Algebra(_) => BuiltinObject::Algebra(alg),
            BuiltinSpec::RegularBimodule(_) => BuiltinObject::Bimodule(Arc::new(regular_bimodule(&alg))),
            BuiltinSpec::FreeBimodule(_) => BuiltinObject::Bimodule(Arc::new(free_bimodule(&alg))),
        }
    }
}

impl fmt::Display for BuiltinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinSpec::Algebra(a) => write!(f, "{a}"),
            BuiltinSpec::RegularBimodule(a) => write!(f, "regular_bimodule({a})"),
            BuiltinSpec::FreeBimodule(a) => write!(f, "free_bimodule({a})"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum BuiltinObject<F> {
    Algebra(Arc<Algebra<F>>),
    Bimodule(Arc<Bimodule<F>>),
}

impl<F: Field> BuiltinObject<F> {
    /// The algebra and a bimodule over it; a bare algebra is paired with
    /// its regular bimodule.
    pub fn pair(&self) -> (Arc<Algebra<F>>, Arc<Bimodule<F>>) {
        match self {
            BuiltinObject::Algebra(a) => (a.clone(), Arc::new(regular_bimodule(a))),
            BuiltinObject::Bimodule(m) => (m.base().clone(), m.clone()),
        }
    }
}

/// Accepts `truncated_polynomial(2)`, `truncated_polynomial 2`,
/// `group_algebra(cyclic 3)`, `free_bimodule(matrix_algebra(2))` and so on.
pub fn parse_builtin(text: &str) -> Result<BuiltinSpec, AlgebraError> {
    let cleaned: String = text.chars().map(|c| if matches!(c, '(' | ')' | ',') { ' ' } else { c }).collect();
    let tokens: Vec<&str> = cleaned.split_whitespace().collect();
    let mut pos = 0;
    let spec = match tokens.first() {
        Some(&"regular_bimodule") => {
            pos = 1;
            BuiltinSpec::RegularBimodule(parse_algebra(&tokens, &mut pos, text)?)
        }
        Some(&"free_bimodule") => {
            pos = 1;
            BuiltinSpec::FreeBimodule(parse_algebra(&tokens, &mut pos, text)?)
        }
        _ => BuiltinSpec::Algebra(parse_algebra(&tokens, &mut pos, text)?),
    };
    if pos != tokens.len() {
        return Err(AlgebraError::UnknownBuiltin(text.trim().to_string()));
    }
    Ok(spec)
}

fn parse_algebra(tokens: &[&str], pos: &mut usize, text: &str) -> Result<BuiltinAlgebra, AlgebraError> {
    let unknown = || AlgebraError::UnknownBuiltin(text.trim().to_string());
    let name = *tokens.get(*pos).ok_or_else(unknown)?;
    *pos += 1;
    Ok(match name {
        "ground_field" => BuiltinAlgebra::GroundField,
        "truncated_polynomial" => BuiltinAlgebra::TruncatedPolynomial(number(tokens, pos, name, 1)?),
        "matrix_algebra" => BuiltinAlgebra::MatrixAlgebra(number(tokens, pos, name, 1)?),
        "group_algebra" => {
            let kind = *tokens.get(*pos).ok_or_else(unknown)?;
            *pos += 1;
            match kind {
                "cyclic" => BuiltinAlgebra::Cyclic(number(tokens, pos, "group_algebra(cyclic)", 1)?),
                "symmetric" => match number(tokens, pos, "group_algebra(symmetric)", 3)? {
                    3 => BuiltinAlgebra::Symmetric3,
                    n => return Err(AlgebraError::BadParameter { name: "group_algebra(symmetric)".into(), reason: format!("only 3 is built in, got {n}") }),
                },
                _ => return Err(unknown()),
            }
        }
        _ => return Err(unknown()),
    })
}

fn number(tokens: &[&str], pos: &mut usize, name: &str, min: usize) -> Result<usize, AlgebraError> {
    let raw = tokens.get(*pos).ok_or_else(|| AlgebraError::BadParameter { name: name.into(), reason: "missing size".into() })?;
    *pos += 1;
    let n: usize = raw.parse().map_err(|_| AlgebraError::BadParameter { name: name.into(), reason: format!("`{raw}` is not a count") })?;
    if n < min || n > MAX_PARAM {
        return Err(AlgebraError::BadParameter { name: name.into(), reason: format!("size {n} outside {min}..={MAX_PARAM}") });
    }
    Ok(n)
}

pub fn builtin<F: Field>(text: &str) -> Result<BuiltinObject<F>, AlgebraError> {
    Ok(parse_builtin(text)?.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::coinvariants;
    use crate::field::Q;

    #[test]
    fn every_builtin_validates() {
        let mut all = BuiltinAlgebra::standard();
        all.extend([BuiltinAlgebra::Symmetric3, BuiltinAlgebra::MatrixAlgebra(3), BuiltinAlgebra::Cyclic(4)]);
        for b in all {
            let a = b.build::<Q>();
            assert_eq!(a.dim(), b.dim());
            let r = a.validate();
            assert!(r.passed(), "{b}: {}", r.summary());
            assert_eq!(r.checks.len(), 4);
        }
    }

    #[test]
    fn parse_variants() {
        assert_eq!(parse_builtin("truncated_polynomial(2)").unwrap(), BuiltinSpec::Algebra(BuiltinAlgebra::TruncatedPolynomial(2)));
        assert_eq!(parse_builtin("truncated_polynomial 2").unwrap(), BuiltinSpec::Algebra(BuiltinAlgebra::TruncatedPolynomial(2)));
        assert_eq!(parse_builtin("group_algebra(cyclic 3)").unwrap(), BuiltinSpec::Algebra(BuiltinAlgebra::Cyclic(3)));
        assert_eq!(parse_builtin("group_algebra(symmetric 3)").unwrap(), BuiltinSpec::Algebra(BuiltinAlgebra::Symmetric3));
        assert_eq!(parse_builtin("free_bimodule(matrix_algebra(2))").unwrap(), BuiltinSpec::FreeBimodule(BuiltinAlgebra::MatrixAlgebra(2)));
        assert_eq!(parse_builtin(" regular_bimodule ground_field ").unwrap(), BuiltinSpec::RegularBimodule(BuiltinAlgebra::GroundField));
        for s in ["truncated_polynomial(2)", "group_algebra(cyclic 3)", "free_bimodule(matrix_algebra(2))", "regular_bimodule(ground_field)"] {
            assert_eq!(parse_builtin(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_builtin("quaternions"), Err(AlgebraError::UnknownBuiltin(_))));
        assert!(matches!(parse_builtin("truncated_polynomial(x)"), Err(AlgebraError::BadParameter { .. })));
        assert!(matches!(parse_builtin("truncated_polynomial"), Err(AlgebraError::BadParameter { .. })));
        assert!(matches!(parse_builtin("group_algebra(symmetric 4)"), Err(AlgebraError::BadParameter { .. })));
        assert!(matches!(parse_builtin("ground_field 3"), Err(AlgebraError::UnknownBuiltin(_))));
        assert!(matches!(parse_builtin(""), Err(AlgebraError::UnknownBuiltin(_))));
    }

    #[test]
    fn cyclic_three_is_commutative_with_full_coinvariants() {
        let (c, m) = builtin::<Q>("group_algebra(cyclic 3)").unwrap().pair();
        assert!(c.is_commutative());
        assert_eq!(coinvariants(&m).dim(), 3);
        let s3 = symmetric_group_algebra::<Q>();
        assert!(!s3.is_commutative());
        // conjugacy classes of S3
        assert_eq!(coinvariants(&regular_bimodule(&Arc::new(s3))).dim(), 3);
    }
}
