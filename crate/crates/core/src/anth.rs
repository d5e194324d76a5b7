//! Anthyphairesis (reciprocal subtraction) of exact magnitudes.
//!
//! For a pair `a > b > 0` the procedure writes `a = I0*b + g1`, `b = I1*g1 + g2`,
//! `g1 = I2*g2 + g3`, ... with strictly decreasing remainders. Commensurable
//! pairs stop with a common measure; pairs whose ratio is a quadratic surd
//! never stop but become periodic, which is detected exactly by watching the
//! `(P + sqrt(D))/Q` state of the complete quotient.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::magnitude::{compare, floor_surd, Magnitude};

/// Default bound on the number of quotients produced by [`anth_magnitudes`].
pub const DEFAULT_MAX_TERMS: usize = 64;

/// Quotients `I0, I1, I2, ...` of an anthyphairesis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QuotientSequence(Vec<BigInt>);

impl QuotientSequence {
    pub fn new(terms: Vec<BigInt>) -> Self {
        QuotientSequence(terms)
    }

    pub fn into_vec(self) -> Vec<BigInt> {
        self.0
    }
}

impl Deref for QuotientSequence {
    type Target = [BigInt];

    fn deref(&self) -> &[BigInt] {
        &self.0
    }
}

impl<T: Into<BigInt>> FromIterator<T> for QuotientSequence {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        QuotientSequence(iter.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for QuotientSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("]")
    }
}

impl Serialize for QuotientSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        #[serde(untagged)]
        enum Term {
            Num(u64),
            Text(String),
        }
        serializer.collect_seq(self.0.iter().map(|q| match q.to_u64() {
            Some(n) => Term::Num(n),
            None => Term::Text(q.to_string()),
        }))
    }
}

/// Result of running anthyphairesis on a pair of magnitudes.
///
/// The number of continued-fraction steps taken equals the total number of
/// quotients reported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnthOutcome {
    /// The pair is commensurable; `gcd` is the last nonzero remainder.
    Finite {
        quotients: QuotientSequence,
        gcd: Magnitude,
    },
    /// The quotient sequence is `preperiod` followed by `period` repeated forever.
    EventuallyPeriodic {
        preperiod: QuotientSequence,
        period: QuotientSequence,
    },
    /// The caller's term bound was reached before termination or recurrence.
    Truncated { quotients: QuotientSequence },
}

impl AnthOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            AnthOutcome::Finite { .. } => "finite",
            AnthOutcome::EventuallyPeriodic { .. } => "periodic",
            AnthOutcome::Truncated { .. } => "truncated",
        }
    }

    /// Quotient at position `i`, unrolling the period. `None` past the end of a
    /// finite or truncated sequence.
    pub fn quotient(&self, i: usize) -> Option<&BigInt> {
        match self {
            AnthOutcome::Finite { quotients, .. } | AnthOutcome::Truncated { quotients } => {
                quotients.get(i)
            }
            AnthOutcome::EventuallyPeriodic { preperiod, period } => {
                if i < preperiod.len() {
                    Some(&preperiod[i])
                } else {
                    Some(&period[(i - preperiod.len()) % period.len()])
                }
            }
        }
    }

    /// The first `n` quotients, or fewer if the sequence is shorter.
    pub fn expand(&self, n: usize) -> QuotientSequence {
        (0..n).map_while(|i| self.quotient(i).cloned()).collect()
    }
}

impl fmt::Display for AnthOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnthOutcome::Finite { quotients, gcd } => write!(f, "finite {quotients} gcd {gcd}"),
            AnthOutcome::EventuallyPeriodic { preperiod, period } => {
                write!(f, "periodic preperiod {preperiod} period {period}")
            }
            AnthOutcome::Truncated { quotients } => write!(f, "truncated {quotients}"),
        }
    }
}

impl Serialize for AnthOutcome {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Shape<'a> {
            kind: &'static str,
            quotients: &'a QuotientSequence,
            period: &'a QuotientSequence,
            gcd: Option<&'a Magnitude>,
        }
        let empty = QuotientSequence::default();
        let shape = match self {
            AnthOutcome::Finite { quotients, gcd } => Shape {
                kind: self.kind(),
                quotients,
                period: &empty,
                gcd: Some(gcd),
            },
            AnthOutcome::EventuallyPeriodic { preperiod, period } => Shape {
                kind: self.kind(),
                quotients: preperiod,
                period,
                gcd: None,
            },
            AnthOutcome::Truncated { quotients } => Shape {
                kind: self.kind(),
                quotients,
                period: &empty,
                gcd: None,
            },
        };
        shape.serialize(serializer)
    }
}

/// Complete quotient `(P + sqrt(D)) / Q` of a quadratic irrational.
///
/// Invariants: `Q != 0`, `Q | D - P^2`, `D > 0` not a perfect square.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PQState {
    p: BigInt,
    q: BigInt,
    d: BigInt,
}

impl PQState {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let (p, q, d) = (p.into(), q.into(), d.into());
        if q.is_zero() {
            return Err(Error::Domain("PQ state with Q = 0".into()));
        }
        if !d.is_positive() {
            return Err(Error::Domain(format!(
                "PQ state radicand {d} is not positive"
            )));
        }
        let root = d.sqrt();
        if &root * &root == d {
            return Err(Error::Domain(format!(
                "PQ state radicand {d} is a perfect square"
            )));
        }
        if !(&d - &p * &p).is_multiple_of(&q) {
            return Err(Error::Domain(format!("Q = {q} does not divide D - P^2")));
        }
        Ok(PQState { p, q, d })
    }

    /// State representing an irrational magnitude `(p + q*sqrt(d))/r`.
    pub fn from_magnitude(x: &Magnitude) -> Result<Self> {
        let s = match x {
            Magnitude::Surd(s) => s,
            Magnitude::Rational(_) => {
                return Err(Error::Domain(format!("{x} is rational; no PQ state")));
            }
        };
        // (p + q sqrt d)/r = (P + sqrt(q^2 d))/Q with the sign of q moved into Q
        let (mut p, mut q) = if s.q().is_negative() {
            (-s.p(), -s.r())
        } else {
            (s.p().clone(), s.r().clone())
        };
        let mut d = s.q() * s.q() * s.d();
        if !(&d - &p * &p).is_multiple_of(&q) {
            let scale = q.abs();
            p *= &scale;
            d *= &q * &q;
            q *= &scale;
        }
        PQState::new(p, q, d)
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }
}

/// One step of the surd continued-fraction recurrence:
/// `a = floor((P + sqrt D)/Q)`, `P' = aQ - P`, `Q' = (D - P'^2)/Q`.
pub fn cf_step(s: &PQState) -> (BigInt, PQState) {
    let a = if s.q.is_positive() {
        floor_surd(&s.p, &BigInt::one(), &s.d, &s.q)
    } else {
        floor_surd(&(-&s.p), &(-BigInt::one()), &s.d, &(-&s.q))
    };
    let p = &a * &s.q - &s.p;
    let q = (&s.d - &p * &p) / &s.q;
    debug_assert!(((&s.d - &p * &p) % &s.q).is_zero());
    (
        a,
        PQState {
            p,
            q,
            d: s.d.clone(),
        },
    )
}

fn positive_int(x: &BigInt) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositive(x.to_string()))
    }
}

/// Euclid's division chain on two positive integers.
pub fn anth_integers(a: &BigInt, b: &BigInt) -> Result<AnthOutcome> {
    positive_int(a)?;
    positive_int(b)?;
    let (mut x, mut y) = (a.clone(), b.clone());
    let mut quotients = Vec::new();
    loop {
        let (q, r) = x.div_rem(&y);
        quotients.push(q);
        if r.is_zero() {
            return Ok(AnthOutcome::Finite {
                quotients: QuotientSequence(quotients),
                gcd: Magnitude::integer(y),
            });
        }
        x = std::mem::replace(&mut y, r);
    }
}

fn positive(x: &Magnitude) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositive(x.to_string()))
    }
}

/// Removes a repeated word from `period` and folds any tail of `preperiod`
/// that belongs to the cycle, giving the canonical `(preperiod, period)`.
pub fn canonical_periodic(
    mut pre: Vec<BigInt>,
    mut period: Vec<BigInt>,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let n = period.len();
    if let Some(k) =
        (1..n).find(|&k| n.is_multiple_of(k) && (k..n).all(|i| period[i] == period[i - k]))
    {
        period.truncate(k);
    }
    while !pre.is_empty() && pre.last() == period.last() {
        pre.pop();
        period.rotate_right(1);
    }
    (pre, period)
}

/// One subtraction step on the remainder chain, checking `0 <= rem < cur`.
fn next_remainder(
    prev: &Magnitude,
    cur: &Magnitude,
    quotient: &BigInt,
    step: usize,
) -> Result<Magnitude> {
    let rem = prev.checked_sub(&cur.scale(quotient))?;
    if rem.is_negative() || compare(&rem, cur)?.is_ge() {
        return Err(Error::RemainderChain(step));
    }
    Ok(rem)
}

/// Anthyphairesis of `a` to `b`.
///
/// Commensurable pairs give [`AnthOutcome::Finite`]; surd ratios give
/// [`AnthOutcome::EventuallyPeriodic`] once a complete quotient recurs. The
/// run stops with [`AnthOutcome::Truncated`] after `max_terms` quotients.
pub fn anth_magnitudes(a: &Magnitude, b: &Magnitude, max_terms: usize) -> Result<AnthOutcome> {
    positive(a)?;
    positive(b)?;
    if max_terms == 0 {
        return Err(Error::Domain("max_terms must be at least 1".into()));
    }
    let ratio = a.checked_div(b)?;
    let (mut prev, mut cur) = (a.clone(), b.clone());
    let mut quotients = Vec::new();

    if ratio.is_rational() {
        loop {
            let q = prev.checked_div(&cur)?.floor();
            let rem = next_remainder(&prev, &cur, &q, quotients.len())?;
            quotients.push(q);
            if rem.is_zero() {
                return Ok(AnthOutcome::Finite {
                    quotients: QuotientSequence(quotients),
                    gcd: cur,
                });
            }
            if quotients.len() == max_terms {
                return Ok(AnthOutcome::Truncated {
                    quotients: QuotientSequence(quotients),
                });
            }
            prev = std::mem::replace(&mut cur, rem);
        }
    }

    let mut state = PQState::from_magnitude(&ratio)?;
    let mut seen: HashMap<PQState, usize> = HashMap::new();
    loop {
        if let Some(&start) = seen.get(&state) {
            let period = quotients.split_off(start);
            let (pre, period) = canonical_periodic(quotients, period);
            return Ok(AnthOutcome::EventuallyPeriodic {
                preperiod: QuotientSequence(pre),
                period: QuotientSequence(period),
            });
        }
        if quotients.len() == max_terms {
            return Ok(AnthOutcome::Truncated {
                quotients: QuotientSequence(quotients),
            });
        }
        let (q, next) = cf_step(&state);
        seen.insert(std::mem::replace(&mut state, next), quotients.len());
        // the remainders of the pair itself must track the engine exactly
        let rem = next_remainder(&prev, &cur, &q, quotients.len())?;
        if rem.is_zero() {
            return Err(Error::RemainderChain(quotients.len()));
        }
        quotients.push(q);
        prev = std::mem::replace(&mut cur, rem);
    }
}

/// Outcome of comparing two anthyphaireses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    NotEqual,
    Undecided,
}

/// Decides whether `Anth(a, b) = Anth(c, d)`.
pub fn logos_equal(
    a: &Magnitude,
    b: &Magnitude,
    c: &Magnitude,
    d: &Magnitude,
    max_terms: usize,
) -> Result<Verdict> {
    let left = anth_magnitudes(a, b, max_terms)?;
    let right = anth_magnitudes(c, d, max_terms)?;
    Ok(compare_outcomes(&left, &right))
}

/// Compares two outcomes term by term.
pub fn compare_outcomes(left: &AnthOutcome, right: &AnthOutcome) -> Verdict {
    use AnthOutcome::*;
    if let (
        EventuallyPeriodic {
            preperiod: p1,
            period: r1,
        },
        EventuallyPeriodic {
            preperiod: p2,
            period: r2,
        },
    ) = (left, right)
    {
        if p1 == p2 && r1 == r2 {
            return Verdict::Equal;
        }
    }
    let span = |o: &AnthOutcome| match o {
        Finite { quotients, .. } | Truncated { quotients } => quotients.len(),
        EventuallyPeriodic { preperiod, period } => preperiod.len() + period.len(),
    };
    let cycle = |o: &AnthOutcome| match o {
        EventuallyPeriodic { period, .. } => period.len(),
        _ => 1,
    };
    // two distinct eventually periodic words differ before this index
    let horizon = span(left) + span(right) + cycle(left) * cycle(right);
    for i in 0..horizon {
        match (left.quotient(i), right.quotient(i)) {
            (Some(x), Some(y)) if x != y => return Verdict::NotEqual,
            (Some(_), Some(_)) => {}
            (None, None) => {
                return if matches!(left, Truncated { .. }) || matches!(right, Truncated { .. }) {
                    Verdict::Undecided
                } else {
                    Verdict::Equal
                };
            }
            (None, Some(_)) if matches!(left, Truncated { .. }) => return Verdict::Undecided,
            (Some(_), None) if matches!(right, Truncated { .. }) => return Verdict::Undecided,
            _ => return Verdict::NotEqual,
        }
    }
    Verdict::Undecided
}

/// Checks the conclusion `a*d = b*c` under the hypotheses
/// `A a^2 = B ab + C b^2` and `A c^2 = B cd + C d^2`.
///
/// A tuple that fails either hypothesis is reported as an error rather than
/// as a counterexample.
pub fn verify_mean_proportional(
    big_a: &BigInt,
    big_b: &BigInt,
    big_c: &BigInt,
    a: &Magnitude,
    b: &Magnitude,
    c: &Magnitude,
    d: &Magnitude,
) -> Result<bool> {
    for m in [a, b, c, d] {
        positive(m)?;
    }
    let holds = |x: &Magnitude, y: &Magnitude| -> Result<bool> {
        let lhs = x.square().scale(big_a);
        let rhs = x
            .checked_mul(y)?
            .scale(big_b)
            .checked_add(&y.square().scale(big_c))?;
        Ok(compare(&lhs, &rhs)?.is_eq())
    };
    if !holds(a, b)? {
        return Err(Error::HypothesisViolation(format!(
            "{big_a}*a^2 != {big_b}*a*b + {big_c}*b^2 for a = {a}, b = {b}"
        )));
    }
    if !holds(c, d)? {
        return Err(Error::HypothesisViolation(format!(
            "{big_a}*c^2 != {big_b}*c*d + {big_c}*d^2 for c = {c}, d = {d}"
        )));
    }
    Ok(compare(&a.checked_mul(d)?, &b.checked_mul(c)?)?.is_eq())
}

/// Result of [`gnomon_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GnomonReport {
    /// First remainder `a - b`.
    pub c1: Magnitude,
    /// Second remainder `b - 2 c1`.
    pub c2: Magnitude,
    /// `b * c2 = c1^2`
    pub gnomon_preserved: bool,
    /// `a^2 = 2 b^2`
    pub right_angle: bool,
}

/// Computes the first two remainders of a pair in the regime `b < a < 3b/2`
/// and reports whether the gnomon identity and the right-angle identity hold.
/// The two flags always agree.
pub fn gnomon_check(a: &Magnitude, b: &Magnitude) -> Result<GnomonReport> {
    positive(b)?;
    let c1 = a.checked_sub(b)?;
    if !c1.is_positive() {
        return Err(Error::GnomonRegime {
            name: "c1",
            value: c1.to_string(),
        });
    }
    let c2 = b.checked_sub(&c1.scale(&BigInt::from(2)))?;
    if !c2.is_positive() {
        return Err(Error::GnomonRegime {
            name: "c2",
            value: c2.to_string(),
        });
    }
    let gnomon_preserved = compare(&b.checked_mul(&c2)?, &c1.square())?.is_eq();
    let right_angle = compare(&a.square(), &b.square().scale(&BigInt::from(2)))?.is_eq();
    Ok(GnomonReport {
        c1,
        c2,
        gnomon_preserved,
        right_angle,
    })
}

/// Convergents `h_k / k_k` of a simple continued fraction.
pub fn convergents(quotients: &[BigInt]) -> Vec<BigRational> {
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    quotients
        .iter()
        .map(|a| {
            let h = a * &h1 + &h0;
            let k = a * &k1 + &k0;
            h0 = std::mem::replace(&mut h1, h.clone());
            k0 = std::mem::replace(&mut k1, k.clone());
            BigRational::new(h, k)
        })
        .collect()
}
