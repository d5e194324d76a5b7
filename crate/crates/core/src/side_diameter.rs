//! Side and diameter numbers.
//!
//! `p1 = q1 = 1`, `p(n+1) = pn + qn`, `q(n+1) = 2pn + qn`. The pairs satisfy
//! `qn^2 - 2pn^2 = (-1)^n`, so the apex angle of the isosceles triangle
//! `(pn, pn, qn)` is alternately acute and obtuse and closes in on the right
//! angle from both sides.

use std::f64::consts::FRAC_PI_2;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::anth::{anth_integers, AnthOutcome, QuotientSequence};
use crate::error::{Error, Result};
use crate::magnitude::{compare, Magnitude};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideDiameterPair {
    /// 1-based index.
    pub n: usize,
    /// Side number.
    pub p: BigInt,
    /// Diameter number.
    pub q: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleClass {
    Acute,
    Right,
    Obtuse,
    Undetermined,
}

impl std::fmt::Display for AngleClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AngleClass::Acute => "acute",
            AngleClass::Right => "right",
            AngleClass::Obtuse => "obtuse",
            AngleClass::Undetermined => "undetermined",
        })
    }
}

/// Iterator over the side and diameter pairs starting at `n = 1`.
#[derive(Debug, Clone)]
pub struct SideDiameterIter {
    next: SideDiameterPair,
}

impl Default for SideDiameterIter {
    fn default() -> Self {
        SideDiameterIter {
            next: SideDiameterPair {
                n: 1,
                p: BigInt::one(),
                q: BigInt::one(),
            },
        }
    }
}

impl Iterator for SideDiameterIter {
    type Item = SideDiameterPair;

    fn next(&mut self) -> Option<SideDiameterPair> {
        let cur = &self.next;
        let following = SideDiameterPair {
            n: cur.n + 1,
            p: &cur.p + &cur.q,
            q: &cur.p * 2u32 + &cur.q,
        };
        Some(std::mem::replace(&mut self.next, following))
    }
}

/// The first `count` pairs.
pub fn generate(count: usize) -> Vec<SideDiameterPair> {
    SideDiameterIter::default().take(count).collect()
}

/// The `n`-th pair (1-based).
pub fn pair(n: usize) -> Result<SideDiameterPair> {
    if n == 0 {
        return Err(Error::Domain("side/diameter index starts at 1".into()));
    }
    Ok(SideDiameterIter::default()
        .nth(n - 1)
        .expect("infinite iterator"))
}

/// `q^2 - 2p^2`.
pub fn pell_residual(pair: &SideDiameterPair) -> BigInt {
    &pair.q * &pair.q - &pair.p * &pair.p * 2u32
}

/// Exact classification of the apex angle of the isosceles triangle with
/// legs `p` and base `q`.
pub fn classify_isosceles_apex(p: &Magnitude, q: &Magnitude) -> Result<AngleClass> {
    let two_p = p.scale(&BigInt::from(2));
    if !q.is_positive() || compare(q, &two_p)?.is_ge() {
        return Err(Error::DegenerateTriangle(format!(
            "isosceles triangle ({p}, {p}, {q}) needs 0 < q < 2p"
        )));
    }
    let base_sq = q.square();
    let legs_sq = p.square().scale(&BigInt::from(2));
    Ok(match compare(&base_sq, &legs_sq)? {
        std::cmp::Ordering::Less => AngleClass::Acute,
        std::cmp::Ordering::Equal => AngleClass::Right,
        std::cmp::Ordering::Greater => AngleClass::Obtuse,
    })
}

/// Apex angle `2 asin(q / 2p)` in radians.
pub fn apex_angle(p: f64, q: f64) -> Result<f64> {
    if !(p > 0.0 && q > 0.0 && q < 2.0 * p) {
        return Err(Error::DegenerateTriangle(format!(
            "isosceles triangle ({p}, {p}, {q}) needs 0 < q < 2p"
        )));
    }
    Ok(2.0 * (q / (2.0 * p)).asin())
}

/// Quotients of `Anth(q, p)`; `[1]` followed by `n - 1` twos.
pub fn anth_check(pair: &SideDiameterPair) -> QuotientSequence {
    match anth_integers(&pair.q, &pair.p).expect("side and diameter numbers are positive") {
        AnthOutcome::Finite { quotients, .. } => quotients,
        _ => unreachable!("integer anthyphairesis is finite"),
    }
}

/// Signed `omega_n - pi/2`.
///
/// Uses `2q^2/(4p^2) - 1 = (-1)^n / (2p^2)` so the gap keeps full relative
/// precision even when it is far below the spacing of doubles near `pi/2`.
pub fn signed_right_angle_gap(pair: &SideDiameterPair) -> f64 {
    // asin(x) - asin(1/sqrt2) = asin((2x^2 - 1) / (sqrt2 (x + sqrt(1 - x^2))))
    let x = BigRational::new(pair.q.clone(), &pair.p * 2u32)
        .to_f64()
        .expect("finite ratio");
    let two_p_sq = (&pair.p * &pair.p * 2u32).to_f64().unwrap_or(f64::INFINITY);
    let sign = if pair.n.is_even() { 1.0 } else { -1.0 };
    let numer = sign / two_p_sq;
    let denom = std::f64::consts::SQRT_2 * (x + (1.0 - x * x).sqrt());
    2.0 * (numer / denom).asin()
}

/// `|omega_n - pi/2|` for the `n`-th pair.
pub fn right_angle_gap(n: usize) -> Result<f64> {
    Ok(signed_right_angle_gap(&pair(n)?).abs())
}

/// Bounded version of the comparison-based definition: `omega` is acute if it
/// is below some odd-indexed apex angle, obtuse if it is above some
/// even-indexed one, searching indices up to `2 * n_max`.
pub fn pythagorean_classify(omega: f64, n_max: usize) -> Result<AngleClass> {
    if !(omega > 0.0 && omega < std::f64::consts::PI) {
        return Err(Error::Domain(format!("angle {omega} out of (0, pi)")));
    }
    // offsets from pi/2, exact for omega near pi/2
    let delta = omega - FRAC_PI_2;
    let mut verdict = AngleClass::Undetermined;
    for pair in SideDiameterIter::default().take(2 * n_max) {
        let gap = signed_right_angle_gap(&pair);
        if pair.n.is_odd() && delta < gap {
            verdict = AngleClass::Acute;
            break;
        }
        if pair.n.is_even() && delta > gap {
            verdict = AngleClass::Obtuse;
            break;
        }
    }
    debug_assert!(match verdict {
        AngleClass::Acute => omega < FRAC_PI_2,
        AngleClass::Obtuse => omega > FRAC_PI_2,
        _ => true,
    });
    Ok(verdict)
}

/// One row of the side/diameter table.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub p: String,
    pub q: String,
    pub pell_residual: String,
    pub angle_class: AngleClass,
    pub apex_angle_rad: f64,
    pub gap_rad: f64,
}

pub fn table(count: usize) -> Vec<TableRow> {
    generate(count)
        .into_iter()
        .map(|pair| {
            let class = classify_isosceles_apex(
                &Magnitude::integer(pair.p.clone()),
                &Magnitude::integer(pair.q.clone()),
            )
            .expect("generated pairs are nondegenerate");
            let signed = signed_right_angle_gap(&pair);
            TableRow {
                n: pair.n,
                p: pair.p.to_string(),
                q: pair.q.to_string(),
                pell_residual: pell_residual(&pair).to_string(),
                angle_class: class,
                apex_angle_rad: FRAC_PI_2 + signed,
                gap_rad: signed.abs(),
            }
        })
        .collect()
}
