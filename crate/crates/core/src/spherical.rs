//! Spherical triangles given by their three sides.
//!
//! The area of a triangle on the unit sphere equals its angle excess
//! `A + B + C - pi`. Two independent routes to it are provided: angles from
//! the law of cosines followed by the excess (Girard), and l'Huilier's closed
//! form directly from the sides. A uniform Monte Carlo estimate over an
//! explicit embedding serves as a third, geometric check.

use std::f64::consts::{PI, TAU};

use nalgebra::Vector3;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sampling::{estimate_area, Estimate};

/// Largest clamp applied to a trigonometric quantity before it is reported
/// as a numeric degeneracy.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

/// Tolerance for a slightly negative l'Huilier radicand.
pub const LHUILIER_TOLERANCE: f64 = 1e-15;

/// Spherical triangle with sides in radians, contained in an open hemisphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalTriangle {
    a: f64,
    b: f64,
    c: f64,
}

impl SphericalTriangle {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        make_triangle(a, b, c)
    }

    pub fn sides(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// The same triangle with sides in descending order. Excess routes work on
    /// this form so their results do not depend on the labelling.
    pub fn canonical(&self) -> SphericalTriangle {
        let mut sides = self.sides();
        sides.sort_by(|x, y| y.total_cmp(x));
        let [a, b, c] = sides;
        SphericalTriangle { a, b, c }
    }

    /// Semiperimeter.
    fn s(&self) -> f64 {
        0.5 * (self.a + self.b + self.c)
    }
}

/// Validates three great-circle sides.
pub fn make_triangle(a: f64, b: f64, c: f64) -> Result<SphericalTriangle> {
    let sides = [a, b, c];
    for (i, &x) in sides.iter().enumerate() {
        if !(x > 0.0 && x < PI) {
            return Err(Error::SideOutOfRange { index: i, value: x });
        }
    }
    for i in 0..3 {
        let (x, y, z) = (sides[i], sides[(i + 1) % 3], sides[(i + 2) % 3]);
        if x >= y + z {
            return Err(Error::TriangleInequality(format!("side {x} >= {y} + {z}")));
        }
    }
    let perimeter = a + b + c;
    if perimeter >= TAU {
        return Err(Error::PerimeterTooLarge(perimeter));
    }
    Ok(SphericalTriangle { a, b, c })
}

/// Interior angles, each opposite the side of the same name.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleTriple {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl AngleTriple {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        for (i, &x) in [a, b, c].iter().enumerate() {
            if !(x > 0.0 && x < PI) {
                return Err(Error::Domain(format!("angle {i} = {x} out of (0, pi)")));
            }
        }
        Ok(AngleTriple { a, b, c })
    }
}

/// Angles together with the largest clamp the computation needed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolvedAngles {
    pub angles: AngleTriple,
    pub clamp_used: f64,
}

/// Clamps `x` into `[0, 1]`, charging the distance moved to `budget`.
fn clamp_unit(x: f64, budget: &mut f64) -> Result<f64> {
    let clamped = x.clamp(0.0, 1.0);
    let moved = (x - clamped).abs();
    if moved > CLAMP_TOLERANCE {
        return Err(Error::NumericDegeneracy(format!(
            "clamp of {moved:e} exceeds tolerance {CLAMP_TOLERANCE:e}"
        )));
    }
    *budget = budget.max(moved);
    Ok(clamped)
}

/// Interior angles from the spherical law of cosines
/// `cos A = (cos a - cos b cos c) / (sin b sin c)`.
///
/// The law is evaluated in its half-angle form,
/// `sin^2(A/2) = sin(s-b) sin(s-c) / (sin b sin c)`, which avoids the
/// cancellation of the cosine form for small sides and angles near 0 or pi.
pub fn angles_from_sides(t: &SphericalTriangle) -> Result<SolvedAngles> {
    let s = t.s();
    let [a, b, c] = t.sides();
    let mut clamp_used = 0.0f64;
    let mut angle = |opp: f64, x: f64, y: f64| -> Result<f64> {
        let sin_half_sq = ((s - x).sin() * (s - y).sin()) / (x.sin() * y.sin());
        let cos_half_sq = ((s).sin() * (s - opp).sin()) / (x.sin() * y.sin());
        let sh = clamp_unit(sin_half_sq, &mut clamp_used)?;
        let ch = clamp_unit(cos_half_sq, &mut clamp_used)?;
        Ok(2.0 * sh.sqrt().atan2(ch.sqrt()))
    };
    let big_a = angle(a, b, c)?;
    let big_b = angle(b, c, a)?;
    let big_c = angle(c, a, b)?;
    Ok(SolvedAngles {
        angles: AngleTriple {
            a: big_a,
            b: big_b,
            c: big_c,
        },
        clamp_used,
    })
}

/// `A + B + C - pi`.
pub fn excess_from_angles(angles: &AngleTriple) -> Result<f64> {
    let e = angles.a + angles.b + angles.c - PI;
    if e <= 0.0 {
        return Err(Error::DegenerateTriangle(format!(
            "angle sum does not exceed pi (excess {e})"
        )));
    }
    Ok(e)
}

/// Girard route: law of cosines, then the angle excess.
pub fn excess_girard(t: &SphericalTriangle) -> Result<(f64, f64)> {
    let solved = angles_from_sides(&t.canonical())?;
    Ok((excess_from_angles(&solved.angles)?, solved.clamp_used))
}

/// l'Huilier's formula
/// `tan(E/4)^2 = tan(s/2) tan((s-a)/2) tan((s-b)/2) tan((s-c)/2)`.
pub fn excess_lhuilier(t: &SphericalTriangle) -> Result<f64> {
    Ok(lhuilier_with_clamp(t)?.0)
}

fn lhuilier_with_clamp(t: &SphericalTriangle) -> Result<(f64, f64)> {
    let t = t.canonical();
    let s = t.s();
    let [a, b, c] = t.sides();
    let product =
        (0.5 * s).tan() * (0.5 * (s - a)).tan() * (0.5 * (s - b)).tan() * (0.5 * (s - c)).tan();
    if product < -LHUILIER_TOLERANCE {
        return Err(Error::NumericDegeneracy(format!(
            "l'Huilier radicand {product:e} is negative"
        )));
    }
    let clamp = if product < 0.0 { -product } else { 0.0 };
    Ok((4.0 * product.max(0.0).sqrt().atan(), clamp))
}

/// Euclidean Heron formula; 0 for a degenerate (collinear) triangle.
pub fn heron_euclidean(a: f64, b: f64, c: f64) -> Result<f64> {
    let sides = [a, b, c];
    if sides.iter().any(|&x| !x.is_finite() || x < 0.0) {
        return Err(Error::TriangleInequality(format!(
            "sides ({a}, {b}, {c}) must be nonnegative and finite"
        )));
    }
    let mut sorted = sides;
    sorted.sort_by(f64::total_cmp);
    let [x, y, z] = sorted;
    if z > x + y {
        return Err(Error::TriangleInequality(format!("side {z} > {x} + {y}")));
    }
    // Kahan's ordering z >= y >= x for a stable product
    let product = (z + (y + x)) * (x - (z - y)) * (x + (z - y)) * (z + (y - x));
    Ok(0.25 * product.max(0.0).sqrt())
}

/// Ratio of the spherical excess of the scaled triangle `(eps a, eps b, eps c)`
/// to `eps^2` times its Euclidean area. Tends to 1 as `eps -> 0`.
pub fn flat_limit_ratio(a: f64, b: f64, c: f64, eps: f64) -> Result<f64> {
    let area = heron_euclidean(a, b, c)?;
    if area <= 0.0 {
        return Err(Error::DegenerateTriangle(format!(
            "({a}, {b}, {c}) has zero Euclidean area"
        )));
    }
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::Domain(format!("scale {eps} must be positive")));
    }
    let t = make_triangle(eps * a, eps * b, eps * c)?;
    Ok(excess_lhuilier(&t)? / (eps * eps * area))
}

/// Unit vectors `(A, B, C)` with the geodesic distances of `t`: `A` at the
/// pole, `B` on the `x` meridian, `C` at azimuth equal to the angle at `A`.
pub fn embed_triangle(t: &SphericalTriangle) -> Result<[Vector3<f64>; 3]> {
    let angle_a = angles_from_sides(t)?.angles.a;
    let [_, b, c] = t.sides();
    let va = Vector3::new(0.0, 0.0, 1.0);
    let vb = Vector3::new(c.sin(), 0.0, c.cos());
    let vc = Vector3::new(b.sin() * angle_a.cos(), b.sin() * angle_a.sin(), b.cos());
    Ok([va, vb, vc])
}

/// Great-circle distance between unit vectors.
pub fn geodesic_distance(u: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
    u.cross(v).norm().atan2(u.dot(v))
}

/// Whether `x` lies inside the spherical triangle with vertices `verts`.
pub fn triangle_contains(verts: &[Vector3<f64>; 3], x: &Vector3<f64>) -> bool {
    (0..3).all(|i| {
        let (p, q, opp) = (&verts[(i + 1) % 3], &verts[(i + 2) % 3], &verts[i]);
        let normal = p.cross(q);
        let side = normal.dot(opp).signum();
        normal.dot(x) * side > 0.0
    })
}

/// Monte Carlo estimate of the triangle's area on the unit sphere.
pub fn monte_carlo_excess(t: &SphericalTriangle, samples: u64, seed: u64) -> Result<Estimate> {
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let verts = embed_triangle(t)?;
    estimate_area(samples, seed, |x| triangle_contains(&verts, x))
}

/// Excess computation method selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExcessMethod {
    Girard,
    Lhuilier,
    Mc,
}

/// Serializable result of an excess query.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcessReport {
    pub method: ExcessMethod,
    pub excess_sr: f64,
    pub stderr: Option<f64>,
    pub clamp_budget_used: f64,
}

pub fn excess_report(
    t: &SphericalTriangle,
    method: ExcessMethod,
    samples: u64,
    seed: u64,
) -> Result<ExcessReport> {
    Ok(match method {
        ExcessMethod::Girard => {
            let (excess_sr, clamp) = excess_girard(t)?;
            ExcessReport {
                method,
                excess_sr,
                stderr: None,
                clamp_budget_used: clamp,
            }
        }
        ExcessMethod::Lhuilier => {
            let (excess_sr, clamp) = lhuilier_with_clamp(t)?;
            ExcessReport {
                method,
                excess_sr,
                stderr: None,
                clamp_budget_used: clamp,
            }
        }
        ExcessMethod::Mc => {
            let est = monte_carlo_excess(t, samples, seed)?;
            ExcessReport {
                method,
                excess_sr: est.value,
                stderr: Some(est.stderr),
                clamp_budget_used: 0.0,
            }
        }
    })
}
