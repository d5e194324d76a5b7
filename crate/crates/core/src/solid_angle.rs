//! Solid angles of polyhedral vertices, measured as subtended area on the
//! unit sphere (steradians).
//!
//! A trihedral vertex with face angles `f1, f2, f3` subtends the spherical
//! triangle with those sides. A regular vertex with `n` faces of apex angle
//! `alpha` subtends a regular spherical `n`-gon, whose area is computed from an
//! explicit symmetric embedding of the edge directions.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::{estimate_area, Estimate};
use crate::spherical::{embed_triangle, excess_lhuilier, SphericalTriangle};

/// Three planar face angles meeting at a vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrihedralAngle {
    faces: [f64; 3],
}

impl TrihedralAngle {
    pub fn faces(&self) -> [f64; 3] {
        self.faces
    }

    /// The spherical triangle cut out on the unit sphere; its sides are the
    /// face angles.
    pub fn spherical_triangle(&self) -> SphericalTriangle {
        let [a, b, c] = self.faces;
        SphericalTriangle::new(a, b, c).expect("trihedral constraints imply a valid triangle")
    }

    /// Unit vectors along the three edges.
    pub fn edges(&self) -> Result<[Vector3<f64>; 3]> {
        embed_triangle(&self.spherical_triangle())
    }
}

/// Checks face-angle range, the face-angle triangle inequality and the
/// total below four right angles.
pub fn validate_trihedral(f1: f64, f2: f64, f3: f64) -> Result<TrihedralAngle> {
    let faces = [f1, f2, f3];
    for (i, &f) in faces.iter().enumerate() {
        if !(f > 0.0 && f < PI) {
            return Err(Error::FaceAngleOutOfRange { index: i, value: f });
        }
    }
    for i in 0..3 {
        let (x, y, z) = (faces[i], faces[(i + 1) % 3], faces[(i + 2) % 3]);
        if x >= y + z {
            return Err(Error::FaceAngleInequality(format!("face {x} >= {y} + {z}")));
        }
    }
    let sum = f1 + f2 + f3;
    if sum >= TAU {
        return Err(Error::FaceAngleSum(sum));
    }
    Ok(TrihedralAngle { faces })
}

/// Solid angle of a trihedral vertex via the spherical excess of its triangle.
pub fn trihedral_solid_angle(t: &TrihedralAngle) -> Result<f64> {
    excess_lhuilier(&t.spherical_triangle())
}

/// Solid angle of the cone spanned by three unit vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TripleProductAngle {
    pub steradians: f64,
    /// Set when the vectors are coplanar; `steradians` is then 0.
    pub degenerate: bool,
}

const UNIT_TOLERANCE: f64 = 1e-9;
const COPLANAR_TOLERANCE: f64 = 1e-15;

/// `tan(Omega/2) = |u . (v x w)| / (1 + u.v + v.w + w.u)`, with the quadrant
/// taken from a two-argument arctangent so cones above `pi` sr come out right.
pub fn triple_product_solid_angle(
    u: &Vector3<f64>,
    v: &Vector3<f64>,
    w: &Vector3<f64>,
) -> Result<TripleProductAngle> {
    for x in [u, v, w] {
        if (x.norm() - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::Domain(format!("vector {x:?} is not a unit vector")));
        }
    }
    let triple = u.dot(&v.cross(w)).abs();
    if triple <= COPLANAR_TOLERANCE {
        return Ok(TripleProductAngle {
            steradians: 0.0,
            degenerate: true,
        });
    }
    let denom = 1.0 + u.dot(v) + v.dot(w) + w.dot(u);
    Ok(TripleProductAngle {
        steradians: 2.0 * triple.atan2(denom),
        degenerate: false,
    })
}

/// `n` congruent faces of apex angle `alpha` arranged symmetrically about a
/// vertex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegularVertexFigure {
    pub n: u32,
    pub alpha: f64,
}

impl RegularVertexFigure {
    pub fn new(n: u32, alpha: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::VertexFigure(format!(
                "{n} faces; at least 3 are needed"
            )));
        }
        if !(alpha > 0.0 && alpha < PI) {
            return Err(Error::VertexFigure(format!(
                "apex angle {alpha} out of (0, pi)"
            )));
        }
        let total = f64::from(n) * alpha;
        if total >= TAU {
            return Err(Error::VertexFigure(format!(
                "face angles sum to {total}, not below 2*pi (flat or reflex vertex)"
            )));
        }
        Ok(RegularVertexFigure { n, alpha })
    }

    /// Polar angle of the edges about the symmetry axis, from
    /// `sin^2(phi) = (1 - cos alpha) / (1 - cos(2 pi / n))`.
    pub fn edge_polar_angle(&self) -> Result<f64> {
        let sin_sq = (1.0 - self.alpha.cos()) / (1.0 - (TAU / f64::from(self.n)).cos());
        if sin_sq > 1.0 {
            return Err(Error::Unrealizable(sin_sq));
        }
        Ok(sin_sq.sqrt().asin())
    }

    /// Edge unit vectors in counterclockwise order about `+z`.
    pub fn edges(&self) -> Result<Vec<Vector3<f64>>> {
        let phi = self.edge_polar_angle()?;
        let step = TAU / f64::from(self.n);
        Ok((0..self.n)
            .map(|k| {
                let theta = step * f64::from(k);
                Vector3::new(phi.sin() * theta.cos(), phi.sin() * theta.sin(), phi.cos())
            })
            .collect())
    }
}

/// Angle at `at` between the great-circle arcs towards `p` and `q`.
fn vertex_angle(at: &Vector3<f64>, p: &Vector3<f64>, q: &Vector3<f64>) -> f64 {
    let tp = p - at * at.dot(p);
    let tq = q - at * at.dot(q);
    tp.cross(&tq).norm().atan2(tp.dot(&tq))
}

/// Area of a convex spherical polygon: angle sum minus `(n - 2) pi`.
pub fn spherical_polygon_area(verts: &[Vector3<f64>]) -> f64 {
    let n = verts.len();
    let angle_sum: f64 = (0..n)
        .map(|k| vertex_angle(&verts[k], &verts[(k + n - 1) % n], &verts[(k + 1) % n]))
        .sum();
    angle_sum - (n as f64 - 2.0) * PI
}

/// Solid angle of a regular vertex figure from its symmetric embedding.
pub fn regular_vertex_solid_angle(fig: &RegularVertexFigure) -> Result<f64> {
    let edges = fig.edges()?;
    let omega = spherical_polygon_area(&edges);
    if omega.is_nan() || omega <= 0.0 {
        return Err(Error::NumericDegeneracy(format!(
            "vertex figure ({}, {}) gave nonpositive area {omega}",
            fig.n, fig.alpha
        )));
    }
    Ok(omega)
}

/// Monte Carlo solid angle of the convex cone spanned by `edges`, listed in
/// order around the cone.
pub fn monte_carlo_solid_angle(
    edges: &[Vector3<f64>],
    samples: u64,
    seed: u64,
) -> Result<Estimate> {
    let n = edges.len();
    if n < 3 {
        return Err(Error::NonConvexCone(format!(
            "{n} edges; at least 3 are needed"
        )));
    }
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let edges: Vec<Vector3<f64>> = edges.iter().map(|e| e.normalize()).collect();
    let mut normals: Vec<Vector3<f64>> = Vec::with_capacity(n);
    for k in 0..n {
        let normal = edges[k].cross(&edges[(k + 1) % n]);
        if normal.norm() < 1e-12 {
            return Err(Error::NonConvexCone(format!(
                "edges {k} and {} are parallel",
                (k + 1) % n
            )));
        }
        normals.push(normal.normalize());
    }
    // orient the face normals inward using an edge off the first face
    let orientation = normals[0].dot(&edges[2 % n]).signum();
    for (k, normal) in normals.iter_mut().enumerate() {
        *normal *= orientation;
        for (j, e) in edges.iter().enumerate() {
            if j == k || j == (k + 1) % n {
                continue;
            }
            if normal.dot(e) <= 1e-12 {
                return Err(Error::NonConvexCone(format!(
                    "edge {j} is not strictly inside face plane {k}"
                )));
            }
        }
    }
    estimate_area(samples, seed, |x| {
        normals.iter().all(|nrm| nrm.dot(x) > 0.0)
    })
}

/// The five regular convex polyhedra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlatonicSolid {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
}

impl PlatonicSolid {
    pub const ALL: [PlatonicSolid; 5] = [
        PlatonicSolid::Tetrahedron,
        PlatonicSolid::Cube,
        PlatonicSolid::Octahedron,
        PlatonicSolid::Dodecahedron,
        PlatonicSolid::Icosahedron,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PlatonicSolid::Tetrahedron => "tetrahedron",
            PlatonicSolid::Cube => "cube",
            PlatonicSolid::Octahedron => "octahedron",
            PlatonicSolid::Dodecahedron => "dodecahedron",
            PlatonicSolid::Icosahedron => "icosahedron",
        }
    }

    /// `(sides per face, faces per vertex)`.
    pub fn schlafli(&self) -> (u32, u32) {
        match self {
            PlatonicSolid::Tetrahedron => (3, 3),
            PlatonicSolid::Cube => (4, 3),
            PlatonicSolid::Octahedron => (3, 4),
            PlatonicSolid::Dodecahedron => (5, 3),
            PlatonicSolid::Icosahedron => (3, 5),
        }
    }

    /// Dihedral angle from `sin(delta/2) = cos(pi/q) / sin(pi/p)`.
    pub fn dihedral_angle(&self) -> f64 {
        let (p, q) = self.schlafli();
        let ratio = (PI / f64::from(q)).cos() / (PI / f64::from(p)).sin();
        2.0 * ratio.asin()
    }

    /// Vertex solid angle from the dihedral angle: `q delta - (q - 2) pi`.
    /// Independent of the embedding route; used as a cross-check.
    pub fn dihedral_solid_angle(&self) -> f64 {
        let q = f64::from(self.schlafli().1);
        q * self.dihedral_angle() - (q - 2.0) * PI
    }
}

impl fmt::Display for PlatonicSolid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PlatonicSolid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PlatonicSolid::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Domain(format!("unknown Platonic solid '{s}'")))
    }
}

/// Faces per vertex and face apex angle of each solid.
pub fn platonic_vertex_figure(s: PlatonicSolid) -> RegularVertexFigure {
    let (p, q) = s.schlafli();
    // interior angle of a regular p-gon
    let alpha = PI * f64::from(p - 2) / f64::from(p);
    RegularVertexFigure::new(q, alpha).expect("Platonic vertices are convex")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlatonicRow {
    pub solid: PlatonicSolid,
    pub n: u32,
    pub alpha: f64,
    pub solid_angle_sr: f64,
    pub fraction_of_sphere: f64,
}

pub fn platonic_row(s: PlatonicSolid) -> PlatonicRow {
    let fig = platonic_vertex_figure(s);
    let omega = regular_vertex_solid_angle(&fig).expect("Platonic vertices are realizable");
    PlatonicRow {
        solid: s,
        n: fig.n,
        alpha: fig.alpha,
        solid_angle_sr: omega,
        fraction_of_sphere: omega / (4.0 * PI),
    }
}

pub fn platonic_table() -> Vec<PlatonicRow> {
    PlatonicSolid::ALL.into_iter().map(platonic_row).collect()
}

/// A table row together with its two independent checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlatonicCheck {
    pub row: PlatonicRow,
    pub dihedral_sr: f64,
    pub monte_carlo: Estimate,
}

impl PlatonicCheck {
    pub fn dihedral_deviation(&self) -> f64 {
        (self.row.solid_angle_sr - self.dihedral_sr).abs()
    }

    /// Deviation from the Monte Carlo estimate in standard errors.
    pub fn monte_carlo_z(&self) -> f64 {
        (self.row.solid_angle_sr - self.monte_carlo.value).abs() / self.monte_carlo.stderr
    }
}

/// Cross-checks every table row against the dihedral formula and a Monte
/// Carlo estimate over the embedded vertex cone. Solid `i` uses seed `seed + i`.
pub fn verify_platonic_table(samples: u64, seed: u64) -> Result<Vec<PlatonicCheck>> {
    PlatonicSolid::ALL
        .into_iter()
        .zip(0u64..)
        .map(|(s, i)| {
            let row = platonic_row(s);
            let edges = platonic_vertex_figure(s).edges()?;
            let monte_carlo = monte_carlo_solid_angle(&edges, samples, seed.wrapping_add(i))?;
            Ok(PlatonicCheck {
                row,
                dihedral_sr: s.dihedral_solid_angle(),
                monte_carlo,
            })
        })
        .collect()
}

/// Entry of a vertex-figure corpus file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub faces_at_vertex: u32,
    pub apex_angle_rad: f64,
}

/// The five Platonic vertex figures as a corpus.
pub fn default_corpus() -> Vec<CorpusEntry> {
    PlatonicSolid::ALL
        .into_iter()
        .map(|s| {
            let fig = platonic_vertex_figure(s);
            CorpusEntry {
                name: s.name().to_string(),
                faces_at_vertex: fig.n,
                apex_angle_rad: fig.alpha,
            }
        })
        .collect()
}

pub fn parse_corpus(json: &str) -> Result<Vec<CorpusEntry>> {
    serde_json::from_str(json).map_err(|e| Error::Domain(format!("corpus: {e}")))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusResult {
    pub name: String,
    pub n: u32,
    pub alpha: f64,
    pub solid_angle_sr: f64,
    pub fraction_of_sphere: f64,
}

/// Evaluates one corpus entry, tagging errors with the entry name.
pub fn evaluate_entry(entry: &CorpusEntry) -> Result<CorpusResult> {
    let tag = |e: Error| match e {
        Error::VertexFigure(m) => Error::VertexFigure(format!("{}: {m}", entry.name)),
        other => other,
    };
    let fig = RegularVertexFigure::new(entry.faces_at_vertex, entry.apex_angle_rad).map_err(tag)?;
    let omega = regular_vertex_solid_angle(&fig)?;
    Ok(CorpusResult {
        name: entry.name.clone(),
        n: fig.n,
        alpha: fig.alpha,
        solid_angle_sr: omega,
        fraction_of_sphere: omega / (4.0 * PI),
    })
}
