//! Exact scalar fields.
//!
//! Every computation in this crate is generic over [`Field`]. Two
//! implementations are provided: [`Q`], arbitrary-precision rationals with an
//! inline `i64` fast path, and [`Fp`], residues modulo a process-wide prime.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::linalg::LinalgError;

pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    /// `num / den`, failing when `den` vanishes in the field.
    fn from_ratio(num: i64, den: i64) -> Result<Self, LinalgError>;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, LinalgError>;
    /// Short human-readable name such as `Q` or `GF(7)`.
    fn field_name() -> String;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Result<Self, LinalgError> {
        Ok(self.mul(&other.inv()?))
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }

    fn sign(negative: bool) -> Self {
        if negative {
            Self::one().neg()
        } else {
            Self::one()
        }
    }
}

/// Exact rational number.
///
/// Values whose reduced numerator and denominator fit in `i64` are stored
/// inline; everything else spills to a `BigRational`. The representation is
/// canonical, so derived equality and hashing are value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Q(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced, denominator strictly positive.
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Q {
    pub fn new(num: i64, den: i64) -> Result<Q, LinalgError> {
        if den == 0 {
            return Err(LinalgError::DivisionByZero);
        }
        Ok(Q::from_i128(num as i128, den as i128))
    }

    fn from_i128(num: i128, den: i128) -> Q {
        debug_assert!(den != 0);
        if num == 0 {
            return Q(Repr::Small(0, 1));
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Q(Repr::Small(n, d)),
            _ => Q(Repr::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d))))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        // BigRational arithmetic already returns reduced values.
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            return Q(Repr::Small(n, d));
        }
        Q(Repr::Big(Box::new(r)))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    /// Numerator and denominator when both fit in `i64`.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        match &self.0 {
            Repr::Small(n, d) => Some((*n, *d)),
            Repr::Big(_) => None,
        }
    }

    pub fn numer_denom(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (b.numer().clone(), b.denom().clone()),
        }
    }

    fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else if b.is_zero() {
                    0
                } else {
                    1
                }
            }
        }
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128)))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Field for Q {
    fn zero() -> Q {
        Q(Repr::Small(0, 1))
    }

    fn one() -> Q {
        Q(Repr::Small(1, 1))
    }

    fn from_i64(n: i64) -> Q {
        Q(Repr::Small(n, 1))
    }

    fn from_ratio(num: i64, den: i64) -> Result<Q, LinalgError> {
        Q::new(num, den)
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    fn add(&self, other: &Q) -> Q {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            if b == d {
                return Q::from_i128(*a as i128 + *c as i128, *b as i128);
            }
            let num = (*a as i128)
                .checked_mul(*d as i128)
                .and_then(|x| x.checked_add((*c as i128).checked_mul(*b as i128)?));
            if let Some(num) = num {
                return Q::from_i128(num, *b as i128 * *d as i128);
            }
        }
        Q::from_big(self.to_big() + other.to_big())
    }

    fn sub(&self, other: &Q) -> Q {
        self.add(&other.neg())
    }

    fn mul(&self, other: &Q) -> Q {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            return Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128);
        }
        Q::from_big(self.to_big() * other.to_big())
    }

    fn neg(&self) -> Q {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Q(Repr::Small(m, *d)),
                None => Q::from_big(-self.to_big()),
            },
            Repr::Big(b) => Q::from_big(-(**b).clone()),
        }
    }

    fn inv(&self) -> Result<Q, LinalgError> {
        match &self.0 {
            Repr::Small(0, _) => Err(LinalgError::DivisionByZero),
            Repr::Small(n, d) => Ok(Q::from_i128(*d as i128, *n as i128)),
            Repr::Big(b) => Ok(Q::from_big(b.recip())),
        }
    }

    fn field_name() -> String {
        "Q".to_string()
    }

    fn add_mul_assign(&mut self, a: &Q, b: &Q) {
        if let (Repr::Small(sn, sd), Repr::Small(an, ad), Repr::Small(bn, bd)) = (&self.0, &a.0, &b.0) {
            let pn = *an as i128 * *bn as i128;
            let pd = *ad as i128 * *bd as i128;
            let (sn, sd) = (*sn as i128, *sd as i128);
            let num = sn.checked_mul(pd).and_then(|x| x.checked_add(pn.checked_mul(sd)?));
            let den = sd.checked_mul(pd);
            if let (Some(num), Some(den)) = (num, den) {
                *self = Q::from_i128(num, den);
                return;
            }
        }
        *self = self.add(&a.mul(b));
    }
}

impl Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

impl Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

impl Default for Q {
    fn default() -> Q {
        Q::zero()
    }
}

impl Q {
    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }
}

static MODULUS: OnceLock<u64> = OnceLock::new();

/// Modulus used when [`Fp::set_modulus`] was never called.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Residue modulo the process-wide prime.
///
/// The modulus is fixed once per process with [`Fp::set_modulus`]; all `Fp`
/// values share it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp(u64);

impl Fp {
    /// Fix the modulus. Fails if `p` is not a prime below 2^32, or if a
    /// different modulus is already in use.
    pub fn set_modulus(p: u64) -> Result<(), LinalgError> {
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(LinalgError::InvalidModulus(p));
        }
        let current = *MODULUS.get_or_init(|| p);
        if current != p {
            return Err(LinalgError::InvalidModulus(p));
        }
        Ok(())
    }

    pub fn modulus() -> u64 {
        *MODULUS.get_or_init(|| DEFAULT_PRIME)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn reduce_i64(n: i64) -> Fp {
        let p = Fp::modulus() as i128;
        Fp((n as i128).rem_euclid(p) as u64)
    }

    fn pow(self, mut e: u64) -> Fp {
        let p = Fp::modulus();
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp(acc)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for Fp {
    fn zero() -> Fp {
        Fp(0)
    }

    fn one() -> Fp {
        Fp(1 % Fp::modulus())
    }

    fn from_i64(n: i64) -> Fp {
        Fp::reduce_i64(n)
    }

    fn from_ratio(num: i64, den: i64) -> Result<Fp, LinalgError> {
        Ok(Fp::reduce_i64(num).mul(&Fp::reduce_i64(den).inv()?))
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn add(&self, other: &Fp) -> Fp {
        Fp((self.0 + other.0) % Fp::modulus())
    }

    fn sub(&self, other: &Fp) -> Fp {
        let p = Fp::modulus();
        Fp((self.0 + p - other.0) % p)
    }

    fn mul(&self, other: &Fp) -> Fp {
        Fp(self.0 * other.0 % Fp::modulus())
    }

    fn neg(&self) -> Fp {
        let p = Fp::modulus();
        Fp((p - self.0) % p)
    }

    fn inv(&self) -> Result<Fp, LinalgError> {
        if self.0 == 0 {
            return Err(LinalgError::DivisionByZero);
        }
        Ok(self.pow(Fp::modulus() - 2))
    }

    fn field_name() -> String {
        format!("GF({})", Fp::modulus())
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, Fp::modulus())
    }
}

/// Which field a run uses, as selected by the `BLOB_FIELD` environment
/// variable (`q` or `p:<prime>`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    Prime(u64),
}

impl FieldChoice {
    pub fn parse(s: &str) -> Result<FieldChoice, LinalgError> {
        let s = s.trim();
        if s.is_empty() || s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("rational") {
            return Ok(FieldChoice::Rational);
        }
        let p = s
            .strip_prefix("p:")
            .and_then(|rest| rest.parse::<u64>().ok())
            .ok_or_else(|| LinalgError::InvalidFieldSpec(s.to_string()))?;
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(LinalgError::InvalidModulus(p));
        }
        Ok(FieldChoice::Prime(p))
    }

    pub fn from_env() -> Result<FieldChoice, LinalgError> {
        match std::env::var("BLOB_FIELD") {
            Ok(v) => FieldChoice::parse(&v),
            Err(_) => Ok(FieldChoice::Rational),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            FieldChoice::Rational => "Q".to_string(),
            FieldChoice::Prime(p) => format!("GF({p})"),
        }
    }
}
