use nalgebra::DMatrix;
use rand::Rng;
use rayon::prelude::*;

use super::member::{family_member, FamilyMember};
use super::report::{Band, Method, SearchReport, Tally};
use super::streams::{gaussian_vector, stream, DOMAIN_SEARCH};
use crate::error::{Error, Result};
use crate::field::HessianField;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchConfig {
    pub restarts: u64,
    pub seed: u64,
    pub band: Option<Band>,
    /// Search only over `x = y`, where the member is traceless.
    pub tie_xy: bool,
    pub initial_step: f64,
    pub final_step: f64,
    pub max_evaluations: u64,
    /// Points with `‖M‖_F` at or below this are not accepted.
    pub norm_floor: f64,
}

impl SearchConfig {
    pub fn new(restarts: u64, seed: u64) -> Self {
        Self {
            restarts,
            seed,
            band: None,
            tie_xy: false,
            initial_step: 0.3,
            final_step: 1e-6,
            max_evaluations: 20_000,
            norm_floor: 1e-6,
        }
    }

    pub fn with_band(mut self, band: Band) -> Self {
        self.band = Some(band);
        self
    }

    pub fn tied(mut self) -> Self {
        self.tie_xy = true;
        self
    }
}

struct Objective<'a> {
    field: &'a dyn HessianField,
    n: usize,
    tie: bool,
    reflect: bool,
    floor: f64,
    sign: f64,
}

fn normalized(v: &[f64]) -> Option<Vec<f64>> {
    let r = v.iter().map(|t| t * t).sum::<f64>().sqrt();
    (r > 1e-9).then(|| v.iter().map(|t| t / r).collect())
}

impl Objective<'_> {
    fn n_params(&self) -> usize {
        let n = self.n;
        n * (n - 1) / 2 + if self.tie { n } else { 2 * n }
    }

    /// `O = exp(S)·R`, `S` skew with the given upper-triangle entries.
    fn orthogonal(&self, s: &[f64]) -> DMatrix<f64> {
        let n = self.n;
        let mut skew = DMatrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                skew[(i, j)] = s[k];
                skew[(j, i)] = -s[k];
                k += 1;
            }
        }
        let mut o = skew.exp();
        if self.reflect {
            o.column_mut(0).neg_mut();
        }
        o
    }

    fn member(&self, params: &[f64]) -> Option<FamilyMember> {
        let n = self.n;
        let x = normalized(&params[..n])?;
        let (y, rest) = if self.tie {
            (x.clone(), &params[n..])
        } else {
            (normalized(&params[n..2 * n])?, &params[2 * n..])
        };
        let m = family_member(self.field, &x, &y, &self.orthogonal(rest)).ok()?;
        (m.norm > self.floor).then_some(m)
    }

    fn score(&self, m: &FamilyMember) -> f64 {
        self.sign * m.extended_ratio().ln()
    }
}

struct RunResult {
    best: Option<FamilyMember>,
    evaluations: u64,
}

fn pattern_search(obj: &Objective<'_>, start: Vec<f64>, cfg: &SearchConfig) -> RunResult {
    let mut evaluations = 1;
    let Some(mut best) = obj.member(&start) else {
        return RunResult {
            best: None,
            evaluations,
        };
    };
    let mut best_score = obj.score(&best);
    let mut point = start;
    let mut step = cfg.initial_step;
    'outer: while step >= cfg.final_step && evaluations < cfg.max_evaluations {
        if best_score == f64::INFINITY {
            break;
        }
        let mut improved = false;
        for k in 0..point.len() {
            for dir in [1.0, -1.0] {
                let mut trial = point.clone();
                trial[k] += dir * step;
                evaluations += 1;
                if let Some(m) = obj.member(&trial) {
                    let s = obj.score(&m);
                    if s > best_score {
                        best_score = s;
                        best = m;
                        point = trial;
                        improved = true;
                        break;
                    }
                }
                if evaluations >= cfg.max_evaluations {
                    break 'outer;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    RunResult {
        best: Some(best),
        evaluations,
    }
}

/// Multi-start compass search over `(x, y, S)` with `O = exp(S)·R`,
/// maximizing and minimizing `−Λ₁/Λ_n` from each start. The local optima
/// are tallied as members; a non-hyperbolic member ends its run early.
pub fn worst_case_search(field: &dyn HessianField, cfg: &SearchConfig) -> Result<SearchReport> {
    if cfg.restarts == 0 {
        return Err(Error::Config("at least one restart is required".into()));
    }
    let n = field.dim();
    let runs: Vec<[RunResult; 2]> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream(cfg.seed, DOMAIN_SEARCH, r);
            let reflect = rng.random::<bool>();
            let make = |sign| Objective {
                field,
                n,
                tie: cfg.tie_xy,
                reflect,
                floor: cfg.norm_floor,
                sign,
            };
            let (up, down) = (make(1.0), make(-1.0));
            let start = gaussian_vector(&mut rng, up.n_params());
            [
                pattern_search(&up, start.clone(), cfg),
                pattern_search(&down, start, cfg),
            ]
        })
        .collect();

    let mut tally = Tally::default();
    let mut evaluations = 0;
    for (r, pair) in runs.iter().enumerate() {
        for (k, run) in pair.iter().enumerate() {
            evaluations += run.evaluations;
            if let Some(m) = &run.best {
                let levels = match (field.orbit_level(&m.x), field.orbit_level(&m.y)) {
                    (Some(px), Some(py)) => Some((px?, py?)),
                    _ => None,
                };
                tally.observe(2 * r as u64 + k as u64, m, levels, cfg.band, false);
            }
        }
    }
    Ok(tally.into_report(
        field.label(),
        Method::PatternSearch,
        cfg.seed,
        cfg.band,
        Some(evaluations),
    ))
}
