//! Exact positive magnitudes: unbounded integers, rationals and quadratic
//! surds `(p + q*sqrt(d))/r` over a single real quadratic field.
//!
//! Everything here is exact. Comparisons reduce to integer sign questions,
//! and no floating-point value ever enters a result (the one exception is
//! [`Magnitude::to_f64`], which exists for reporting).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type UnboundedInt = BigInt;
/// Reduced fraction with positive denominator.
pub type Rational = BigRational;

/// `(p + q*sqrt(d)) / r` in canonical form.
///
/// Invariants: `r > 0`, `d > 1` squarefree, `q != 0`, `gcd(p, q, r) = 1`.
/// Construct through [`normalize_surd`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    d: BigInt,
    r: BigInt,
}

impl QuadraticSurd {
    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// Squarefree radicand.
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    /// Sign of `p + q*sqrt(d)`; never zero because `d` is not a square.
    fn numerator_sign(&self) -> Ordering {
        surd_sign(&self.p, &self.q, &self.d)
    }
}

/// An exact real number: either rational or a quadratic surd.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Magnitude {
    Rational(Rational),
    Surd(QuadraticSurd),
}

/// `a + b*sqrt(d)` with rational coordinates; the working form for arithmetic.
struct FieldParts {
    a: Rational,
    b: Rational,
    d: Option<BigInt>,
}

/// Sign of `p + q*sqrt(d)` for integers `p, q` and non-square `d > 1`.
fn surd_sign(p: &BigInt, q: &BigInt, d: &BigInt) -> Ordering {
    let sp = p.sign();
    let sq = q.sign();
    match (sp, sq) {
        (_, Sign::NoSign) => p.cmp(&BigInt::zero()),
        (Sign::NoSign, _) | (Sign::Plus, Sign::Plus) => q.cmp(&BigInt::zero()),
        (Sign::Minus, Sign::Minus) => Ordering::Less,
        // p > 0 > q: positive iff p^2 > q^2 d
        (Sign::Plus, Sign::Minus) => (p * p).cmp(&(q * q * d)),
        // p < 0 < q: positive iff q^2 d > p^2
        (Sign::Minus, Sign::Plus) => (q * q * d).cmp(&(p * p)),
    }
}

/// Largest `k` with `k^2 <= n`.
pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::Domain(format!("isqrt of negative integer {n}")));
    }
    Ok(n.sqrt())
}

/// Splits `n > 0` into `(f, s)` with `n = f^2 * s` and `s` squarefree.
fn square_factor(n: &BigInt) -> (BigInt, BigInt) {
    let mut rem = n.clone();
    let mut f = BigInt::one();
    let mut s = BigInt::one();
    let mut i = BigInt::from(2u32);
    while &i * &i * &i <= rem {
        let sq = &i * &i;
        while (&rem % &sq).is_zero() {
            rem /= &sq;
            f *= &i;
        }
        if (&rem % &i).is_zero() {
            rem /= &i;
            s *= &i;
        }
        i += 1u32;
    }
    // rem now has at most two prime factors, all larger than the last i
    let root = rem.sqrt();
    if &root * &root == rem {
        f *= root;
    } else {
        s *= rem;
    }
    (f, s)
}

/// Canonicalizes `(p + q*sqrt(d))/r`.
///
/// Square factors are pulled out of `d`, the gcd of `(p, q, r)` is divided
/// out and `r` is made positive. The result collapses to a rational when
/// `q = 0` or the reduced radicand is a perfect square.
pub fn normalize_surd(p: BigInt, q: BigInt, d: BigInt, r: BigInt) -> Result<Magnitude> {
    if r.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if d.is_negative() {
        return Err(Error::NegativeRadicand(d.to_string()));
    }
    if q.is_zero() || d.is_zero() {
        return Ok(Magnitude::Rational(Rational::new(p, r)));
    }
    let (f, d) = square_factor(&d);
    let q = q * f;
    if d.is_one() {
        return Ok(Magnitude::Rational(Rational::new(p + q, r)));
    }
    let mut g = p.gcd(&q).gcd(&r);
    if r.is_negative() {
        g = -g;
    }
    Ok(Magnitude::Surd(QuadraticSurd {
        p: p / &g,
        q: q / &g,
        d,
        r: r / g,
    }))
}

impl Magnitude {
    pub fn integer(n: impl Into<BigInt>) -> Self {
        Magnitude::Rational(Rational::from_integer(n.into()))
    }

    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Magnitude::Rational(Rational::new(num.into(), den)))
    }

    /// `sqrt(d)` for `d >= 0`, collapsing to an integer for perfect squares.
    pub fn sqrt(d: impl Into<BigInt>) -> Result<Self> {
        normalize_surd(BigInt::zero(), BigInt::one(), d.into(), BigInt::one())
    }

    pub fn zero() -> Self {
        Magnitude::integer(0)
    }

    pub fn one() -> Self {
        Magnitude::integer(1)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Magnitude::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Magnitude::Rational(x) => Some(x),
            Magnitude::Surd(_) => None,
        }
    }

    /// The squarefree radicand, if this is an irrational surd.
    pub fn radicand(&self) -> Option<&BigInt> {
        match self {
            Magnitude::Rational(_) => None,
            Magnitude::Surd(s) => Some(&s.d),
        }
    }

    pub fn signum(&self) -> Ordering {
        match self {
            Magnitude::Rational(x) => x.numer().cmp(&BigInt::zero()),
            Magnitude::Surd(s) => s.numerator_sign(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }

    fn parts(&self) -> FieldParts {
        match self {
            Magnitude::Rational(x) => FieldParts {
                a: x.clone(),
                b: Rational::zero(),
                d: None,
            },
            Magnitude::Surd(s) => FieldParts {
                a: Rational::new(s.p.clone(), s.r.clone()),
                b: Rational::new(s.q.clone(), s.r.clone()),
                d: Some(s.d.clone()),
            },
        }
    }

    fn from_parts(a: Rational, b: Rational, d: Option<BigInt>) -> Magnitude {
        match d {
            Some(d) if !b.is_zero() => {
                let r = a.denom().lcm(b.denom());
                let p = a.numer() * (&r / a.denom());
                let q = b.numer() * (&r / b.denom());
                normalize_surd(p, q, d, r).expect("denominator is positive")
            }
            _ => Magnitude::Rational(a),
        }
    }

    fn common_radicand(&self, other: &Magnitude) -> Result<Option<BigInt>> {
        match (self.radicand(), other.radicand()) {
            (Some(x), Some(y)) if x != y => {
                Err(Error::IncomparableFields(x.to_string(), y.to_string()))
            }
            (Some(x), _) | (None, Some(x)) => Ok(Some(x.clone())),
            (None, None) => Ok(None),
        }
    }

    pub fn checked_add(&self, other: &Magnitude) -> Result<Magnitude> {
        let d = self.common_radicand(other)?;
        let (x, y) = (self.parts(), other.parts());
        Ok(Magnitude::from_parts(x.a + y.a, x.b + y.b, d))
    }

    pub fn checked_sub(&self, other: &Magnitude) -> Result<Magnitude> {
        let d = self.common_radicand(other)?;
        let (x, y) = (self.parts(), other.parts());
        Ok(Magnitude::from_parts(x.a - y.a, x.b - y.b, d))
    }

    pub fn checked_mul(&self, other: &Magnitude) -> Result<Magnitude> {
        let d = self.common_radicand(other)?;
        let (x, y) = (self.parts(), other.parts());
        let dd = Rational::from_integer(d.clone().unwrap_or_else(BigInt::zero));
        let a = &x.a * &y.a + &x.b * &y.b * dd;
        let b = &x.a * &y.b + &x.b * &y.a;
        Ok(Magnitude::from_parts(a, b, d))
    }

    pub fn checked_div(&self, other: &Magnitude) -> Result<Magnitude> {
        let d = self.common_radicand(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (x, y) = (self.parts(), other.parts());
        let dd = Rational::from_integer(d.clone().unwrap_or_else(BigInt::zero));
        // multiply through by the conjugate of the divisor
        let norm = &y.a * &y.a - &y.b * &y.b * &dd;
        let a = (&x.a * &y.a - &x.b * &y.b * &dd) / &norm;
        let b = (&x.b * &y.a - &x.a * &y.b) / &norm;
        Ok(Magnitude::from_parts(a, b, d))
    }

    pub fn neg(&self) -> Magnitude {
        let x = self.parts();
        Magnitude::from_parts(-x.a, -x.b, x.d)
    }

    /// Multiplication by an integer; never fails.
    pub fn scale(&self, k: &BigInt) -> Magnitude {
        let x = self.parts();
        let k = Rational::from_integer(k.clone());
        Magnitude::from_parts(x.a * &k, x.b * k, x.d)
    }

    pub fn square(&self) -> Magnitude {
        self.checked_mul(self).expect("same field")
    }

    /// Greatest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        match self {
            Magnitude::Rational(x) => x.numer().div_floor(x.denom()),
            Magnitude::Surd(s) => floor_surd(&s.p, &s.q, &s.d, &s.r),
        }
    }

    /// Approximate value for display only.
    pub fn to_f64(&self) -> f64 {
        match self {
            Magnitude::Rational(x) => x.to_f64().unwrap_or(f64::NAN),
            Magnitude::Surd(s) => {
                let p = s.p.to_f64().unwrap_or(f64::NAN);
                let q = s.q.to_f64().unwrap_or(f64::NAN);
                let d = s.d.to_f64().unwrap_or(f64::NAN);
                let r = s.r.to_f64().unwrap_or(f64::NAN);
                (p + q * d.sqrt()) / r
            }
        }
    }
}

/// `floor((p + q*sqrt(d))/r)` for `r > 0` and non-square `d`; `q` may be any sign.
pub(crate) fn floor_surd(p: &BigInt, q: &BigInt, d: &BigInt, r: &BigInt) -> BigInt {
    debug_assert!(r.is_positive());
    let m = (q * q * d).sqrt();
    // q*sqrt(d) lies strictly inside (m, m+1) or (-m-1, -m)
    let lower = if q.is_negative() { p - &m - 1 } else { p + &m };
    lower.div_floor(r)
}

/// Exact sign of `x - y`.
pub fn compare(x: &Magnitude, y: &Magnitude) -> Result<Ordering> {
    Ok(x.checked_sub(y)?.signum())
}

/// Greatest integer `<= x`.
pub fn floor_of(x: &Magnitude) -> BigInt {
    x.floor()
}

/// Least natural `n` with `n*a > b` (Archimedean property of magnitudes).
pub fn archimedean_witness(a: &Magnitude, b: &Magnitude) -> Result<BigInt> {
    for m in [a, b] {
        if !m.is_positive() {
            return Err(Error::NonPositive(m.to_string()));
        }
    }
    // (n-1)*a <= b < n*a  with  n = floor(b/a) + 1
    Ok(b.checked_div(a)?.floor() + 1)
}

impl From<i64> for Magnitude {
    fn from(n: i64) -> Self {
        Magnitude::integer(n)
    }
}

impl From<BigInt> for Magnitude {
    fn from(n: BigInt) -> Self {
        Magnitude::integer(n)
    }
}

impl From<Rational> for Magnitude {
    fn from(x: Rational) -> Self {
        Magnitude::Rational(x)
    }
}

fn write_sqrt_term(
    f: &mut fmt::Formatter<'_>,
    q: &BigInt,
    d: &BigInt,
    leading: bool,
) -> fmt::Result {
    let sign = if q.is_negative() {
        "-"
    } else if leading {
        ""
    } else {
        "+"
    };
    let mag = q.abs();
    if mag.is_one() {
        write!(f, "{sign}sqrt({d})")
    } else {
        write!(f, "{sign}{mag}*sqrt({d})")
    }
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Magnitude::Rational(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Magnitude::Surd(s) => {
                let grouped = !s.r.is_one();
                if grouped {
                    f.write_str("(")?;
                }
                if s.p.is_zero() {
                    write_sqrt_term(f, &s.q, &s.d, true)?;
                } else {
                    write!(f, "{}", s.p)?;
                    write_sqrt_term(f, &s.q, &s.d, false)?;
                }
                if grouped {
                    write!(f, ")/{}", s.r)?;
                }
                Ok(())
            }
        }
    }
}

impl std::str::FromStr for Magnitude {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_magnitude(s)
    }
}

impl Serialize for Magnitude {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Magnitude {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
