use anyhow::Result;
use eigencone::hyperbolicity::streams::{stream, unit_vector, DOMAIN_SAMPLE};
use eigencone::hyperbolicity::{
    delta_scan, sample_certify, u10_certify, worst_case_search, Band, MemberSummary, SampleConfig,
    SearchConfig, SearchReport, EXCLUSION_TOL, INEQUALITY_TOL, INPUT_TOL, WEYL_TOL,
};
use eigencone::{AugmentedField, FieldSpec, HessianField};
use serde::Serialize;

use super::{band, build_field, positive, Verdict};
use crate::args::{CertifyArgs, FieldKind, Format, ScanArgs, U10Args, WitnessArgs};
use crate::output::{Meta, Sink};
use crate::UsageError;

#[derive(Serialize, Clone, Copy)]
struct Tolerances {
    exclusion: f64,
    input: f64,
    inequality: f64,
    weyl: f64,
}

const TOLERANCES: Tolerances = Tolerances {
    exclusion: EXCLUSION_TOL,
    input: INPUT_TOL,
    inequality: INEQUALITY_TOL,
    weyl: WEYL_TOL,
};

#[derive(Serialize)]
struct CertifyReport {
    #[serde(flatten)]
    meta: Meta,
    field: String,
    seed: u64,
    samples: u64,
    restarts: u64,
    band: Band,
    tolerances: Tolerances,
    sampling: SearchReport,
    search: Option<SearchReport>,
    passed: bool,
}

fn clean(r: &SearchReport) -> bool {
    r.is_clean() && r.weyl_failures == 0 && r.inequalities.as_ref().is_none_or(|t| t.level_bounds_hold())
}

pub fn certify(a: &CertifyArgs, seed: u64, sink: &Sink) -> Result<Verdict> {
    let band = band(&a.band)?;
    if a.field == FieldKind::U10 && a.delta.is_some_and(|d| d < 0.0) {
        return Err(UsageError("--delta must be non-negative".into()).into());
    }
    let field = build_field(a.field, a.delta, a.big_m)?;
    let mut cfg = SampleConfig::new(a.samples, seed).with_band(band);
    cfg.rows = a.rows || sink.format == Format::Csv;
    let sampling = sample_certify(field.as_ref(), &cfg)?;
    let search = if a.restarts > 0 {
        Some(worst_case_search(
            field.as_ref(),
            &SearchConfig::new(a.restarts, seed).with_band(band),
        )?)
    } else {
        None
    };
    let passed = clean(&sampling) && search.as_ref().is_none_or(clean);
    if !passed {
        eprintln!(
            "certify: {} violation(s) in sampling, {} in search",
            sampling.n_violations,
            search.as_ref().map_or(0, |s| s.n_violations)
        );
    }
    let rows = sampling.rows.clone();
    let report = CertifyReport {
        meta: Meta::new("certify"),
        field: field.label(),
        seed,
        samples: a.samples,
        restarts: a.restarts,
        band,
        tolerances: TOLERANCES,
        sampling,
        search,
        passed,
    };
    sink.report(&report, rows)?;
    Ok(passed.into())
}

#[derive(Serialize)]
struct WitnessReport {
    #[serde(flatten)]
    meta: Meta,
    field: String,
    seed: u64,
    restarts: u64,
    band: Band,
    /// Members with `‖M‖_F` at or below this are never witnesses.
    norm_floor: f64,
    tolerances: Tolerances,
    witness: Option<MemberSummary>,
    search: SearchReport,
    found: bool,
}

pub fn witness_lawson(a: &WitnessArgs, seed: u64, sink: &Sink) -> Result<Verdict> {
    sink.reject_csv("witness-lawson")?;
    let band = band(&a.band)?;
    let w4 = FieldSpec::w4();
    let cfg = SearchConfig::new(a.restarts, seed).with_band(band);
    let search = worst_case_search(&w4, &cfg)?;
    let witness = search.violations.first().cloned();
    let found = witness.is_some();
    if !found {
        eprintln!(
            "witness-lawson: no member outside the band in {} restarts",
            a.restarts
        );
    }
    sink.json(&WitnessReport {
        meta: Meta::new("witness-lawson"),
        field: w4.label(),
        seed,
        restarts: a.restarts,
        band,
        norm_floor: cfg.norm_floor,
        tolerances: TOLERANCES,
        witness,
        search,
        found,
    })?;
    Ok(found.into())
}

#[derive(Serialize)]
struct ScanRow {
    delta: f64,
    n_samples: u64,
    n_excluded: u64,
    n_non_hyperbolic: u64,
    min_ratio: Option<f64>,
    max_ratio: Option<f64>,
    min_lambda_max: Option<f64>,
    max_lambda_min: Option<f64>,
}

#[derive(Serialize)]
struct ScanEntry {
    delta: f64,
    report: SearchReport,
}

#[derive(Serialize)]
struct ScanReport {
    #[serde(flatten)]
    meta: Meta,
    seed: u64,
    samples: u64,
    tolerances: Tolerances,
    scan: Vec<ScanEntry>,
}

pub fn scan_delta(a: &ScanArgs, seed: u64, sink: &Sink) -> Result<Verdict> {
    if let Some(d) = a.deltas.iter().find(|d| !(**d >= 1.0 && d.is_finite())) {
        return Err(UsageError(format!("every delta must be at least 1, got {d}")).into());
    }
    let scan = delta_scan(&a.deltas, a.samples, seed, false)?;
    let rows: Vec<ScanRow> = scan
        .iter()
        .map(|(d, r)| ScanRow {
            delta: *d,
            n_samples: r.n_samples,
            n_excluded: r.n_excluded,
            n_non_hyperbolic: r.n_non_hyperbolic,
            min_ratio: r.min_ratio,
            max_ratio: r.max_ratio,
            min_lambda_max: r.min_lambda_max,
            max_lambda_min: r.max_lambda_min,
        })
        .collect();
    let report = ScanReport {
        meta: Meta::new("scan-delta"),
        seed,
        samples: a.samples,
        tolerances: TOLERANCES,
        scan: scan
            .into_iter()
            .map(|(delta, report)| ScanEntry { delta, report })
            .collect(),
    };
    sink.report(&report, rows)?;
    Ok(Verdict::Pass)
}

#[derive(Serialize)]
struct U10Report {
    #[serde(flatten)]
    meta: Meta,
    delta: f64,
    big_m: f64,
    seed: u64,
    samples: u64,
    tolerances: Tolerances,
    homogeneity_tol: f64,
    homogeneity_points: u64,
    homogeneity_max_rel_error: f64,
    all_hyperbolic: bool,
    sampling: SearchReport,
}

const HOMOGENEITY_POINTS: u64 = 1000;

/// Largest `|u(2z) − 2^(2−2δ)u(z)| / |2^(2−2δ)u(z)|` over sampled unit `z`.
fn homogeneity_error(u: &AugmentedField, seed: u64) -> Result<f64> {
    let scale = 2f64.powf(u.homogeneity());
    let mut worst = 0.0f64;
    for i in 0..HOMOGENEITY_POINTS {
        let z = unit_vector(&mut stream(seed, DOMAIN_SAMPLE, i), 10);
        let z2: Vec<f64> = z.iter().map(|t| 2.0 * t).collect();
        let want = scale * u.value(&z)?;
        let err = (u.value(&z2)? - want).abs() / want.abs().max(f64::MIN_POSITIVE);
        worst = worst.max(err);
    }
    Ok(worst)
}

pub fn u10(a: &U10Args, seed: u64, sink: &Sink) -> Result<Verdict> {
    sink.reject_csv("u10")?;
    let tol = positive("--tol", a.tol)?;
    if a.delta.is_nan() || a.delta < 0.0 {
        return Err(UsageError("--delta must be non-negative".into()).into());
    }
    let u = AugmentedField::new(a.delta, a.big_m).map_err(|e| UsageError(e.to_string()))?;
    let sampling = u10_certify(a.delta, a.big_m, a.samples, seed)?;
    let homogeneity_max_rel_error = homogeneity_error(&u, seed)?;
    if homogeneity_max_rel_error > tol {
        eprintln!("u10: homogeneity error {homogeneity_max_rel_error:e} exceeds {tol:e}");
    }
    sink.json(&U10Report {
        meta: Meta::new("u10"),
        delta: a.delta,
        big_m: a.big_m,
        seed,
        samples: a.samples,
        tolerances: TOLERANCES,
        homogeneity_tol: tol,
        homogeneity_points: HOMOGENEITY_POINTS,
        homogeneity_max_rel_error,
        all_hyperbolic: sampling.all_hyperbolic(),
        sampling,
    })?;
    Ok(Verdict::Pass)
}
