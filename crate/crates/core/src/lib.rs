//! Exact anthyphairesis of magnitudes, side and diameter numbers, spherical
//! excess and the solid angles of polyhedral vertices.
//!
//! The exact half ([`magnitude`], [`anth`], [`side_diameter`]) works over
//! unbounded integers, rationals and quadratic surds and never touches
//! floating point in its decisions. The metric half ([`spherical`],
//! [`solid_angle`]) works in double precision and pairs every quantity with
//! an independent route that it can be checked against.

pub mod anth;
pub mod error;
pub mod magnitude;
pub mod parse;
pub mod sampling;
pub mod side_diameter;
pub mod solid_angle;
pub mod spherical;

pub use anth::{
    anth_integers, anth_magnitudes, cf_step, gnomon_check, logos_equal, verify_mean_proportional,
    AnthOutcome, GnomonReport, PQState, QuotientSequence, Verdict, DEFAULT_MAX_TERMS,
};
pub use error::{Error, ErrorKind, Result};
pub use magnitude::{
    archimedean_witness, compare, floor_of, isqrt, normalize_surd, Magnitude, QuadraticSurd,
    Rational, UnboundedInt,
};
pub use parse::parse_magnitude;
pub use sampling::Estimate;
pub use side_diameter::{AngleClass, SideDiameterPair};
pub use solid_angle::{PlatonicSolid, RegularVertexFigure, TrihedralAngle};
pub use spherical::{AngleTriple, SphericalTriangle};
