//! Deterministic uniform sampling of the unit sphere.
//!
//! Samples are split into fixed-size batches; batch `i` draws from ChaCha
//! stream `i` of the seed, so the hit count depends only on `(samples, seed)`
//! and not on how rayon schedules the batches.

use nalgebra::Vector3;
use rand::distr::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

const BATCH_SIZE: u64 = 1 << 14;

/// Monte Carlo area estimate on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: u64,
    pub hits: u64,
}

impl Estimate {
    /// Whether `target` lies within `k` standard errors of the estimate.
    pub fn covers(&self, target: f64, k: f64) -> bool {
        (self.value - target).abs() <= k * self.stderr
    }
}

/// Uniform direction from two uniforms: azimuth and cosine of the polar angle.
fn direction(rng: &mut ChaCha8Rng, z: &Uniform<f64>, phi: &Uniform<f64>) -> Vector3<f64> {
    let cos_theta = z.sample(rng);
    let azimuth = phi.sample(rng);
    let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
    Vector3::new(
        sin_theta * azimuth.cos(),
        sin_theta * azimuth.sin(),
        cos_theta,
    )
}

/// Counts uniformly distributed directions accepted by `inside`.
pub fn count_hits<F>(samples: u64, seed: u64, inside: F) -> Result<u64>
where
    F: Fn(&Vector3<f64>) -> bool + Sync,
{
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    let z = Uniform::new_inclusive(-1.0, 1.0).expect("valid range");
    let phi = Uniform::new(0.0, std::f64::consts::TAU).expect("valid range");
    let batches = samples.div_ceil(BATCH_SIZE);
    Ok((0..batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(batch);
            let n = BATCH_SIZE.min(samples - batch * BATCH_SIZE);
            (0..n)
                .filter(|_| inside(&direction(&mut rng, &z, &phi)))
                .count() as u64
        })
        .sum())
}

/// `4 pi` times the accepted fraction, with its binomial standard error.
pub fn estimate_area<F>(samples: u64, seed: u64, inside: F) -> Result<Estimate>
where
    F: Fn(&Vector3<f64>) -> bool + Sync,
{
    let hits = count_hits(samples, seed, inside)?;
    let n = samples as f64;
    let frac = hits as f64 / n;
    let sphere = 4.0 * std::f64::consts::PI;
    Ok(Estimate {
        value: sphere * frac,
        stderr: sphere * (frac * (1.0 - frac) / n).sqrt(),
        samples,
        hits,
    })
}
