use rayon::prelude::*;

use super::member::family_member;
use super::report::{Band, Method, SearchReport, Tally};
use super::streams::{haar_orthogonal, stream, unit_vector, DOMAIN_SAMPLE};
use crate::error::{Error, Result};
use crate::field::{AugmentedField, FieldSpec, HessianField};

const CHUNK: u64 = 2048;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleConfig {
    pub samples: u64,
    pub seed: u64,
    pub band: Option<Band>,
    /// Keep one [`SampleRow`](super::SampleRow) per sample.
    pub rows: bool,
}

impl SampleConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        Self {
            samples,
            seed,
            band: None,
            rows: false,
        }
    }

    pub fn with_band(mut self, band: Band) -> Self {
        self.band = Some(band);
        self
    }

    pub fn with_rows(mut self) -> Self {
        self.rows = true;
        self
    }
}

fn run_chunk(field: &dyn HessianField, cfg: &SampleConfig, start: u64, end: u64) -> Result<Tally> {
    let n = field.dim();
    let mut tally = Tally::default();
    for i in start..end {
        let mut rng = stream(cfg.seed, DOMAIN_SAMPLE, i);
        let x = unit_vector(&mut rng, n);
        let y = unit_vector(&mut rng, n);
        let o = haar_orthogonal(&mut rng, n);
        let member = family_member(field, &x, &y, &o)?;
        let levels = match (field.orbit_level(&x), field.orbit_level(&y)) {
            (Some(px), Some(py)) => Some((px?, py?)),
            _ => None,
        };
        tally.observe(i, &member, levels, cfg.band, cfg.rows);
    }
    Ok(tally)
}

/// Samples `x, y` uniformly on the sphere and `O` from Haar measure on `O(n)`.
///
/// Sample `i` draws from its own stream, and chunk tallies are merged in
/// index order, so the report does not depend on the thread pool.
pub fn sample_certify(field: &dyn HessianField, cfg: &SampleConfig) -> Result<SearchReport> {
    if cfg.samples == 0 {
        return Err(Error::Config("at least one sample is required".into()));
    }
    let chunks: Vec<Result<Tally>> = (0..cfg.samples.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| run_chunk(field, cfg, c * CHUNK, ((c + 1) * CHUNK).min(cfg.samples)))
        .collect();
    let mut total = Tally::default();
    for chunk in chunks {
        total.merge(chunk?);
    }
    Ok(total.into_report(field.label(), Method::Sampling, cfg.seed, cfg.band, None))
}

/// One sampling report per exponent for `P₅/|x|^δ`, `δ ≥ 1`, without a band.
pub fn delta_scan(deltas: &[f64], samples: u64, seed: u64, rows: bool) -> Result<Vec<(f64, SearchReport)>> {
    if let Some(&bad) = deltas.iter().find(|d| !(**d >= 1.0 && d.is_finite())) {
        return Err(Error::OutOfDomain {
            name: "delta",
            value: bad,
            domain: "[1, inf)",
        });
    }
    let mut cfg = SampleConfig::new(samples, seed);
    cfg.rows = rows;
    deltas
        .iter()
        .map(|&d| Ok((d, sample_certify(&FieldSpec::w5_delta(d)?, &cfg)?)))
        .collect()
}

/// Sampling report for the ten-dimensional augmented family. Only
/// `Λ₁ > 0 > Λ₁₀` is treated as a requirement.
pub fn u10_certify(delta: f64, big_m: f64, samples: u64, seed: u64) -> Result<SearchReport> {
    let u = AugmentedField::new(delta, big_m)?;
    sample_certify(&u, &SampleConfig::new(samples, seed))
}
