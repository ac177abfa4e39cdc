use anyhow::Result;
use eigencone::spectra::{char_factors, eigenvalues, ClosedFormSpectrum};
use eigencone::symmetry::{normal_form_of, NormalForm};
use eigencone::{FieldSpec, HessianField};
use serde::Serialize;

use super::{positive, Verdict};
use crate::args::SpectrumArgs;
use crate::output::{Meta, Sink};
use crate::UsageError;

const DEFAULT_GRID: u32 = 1001;

#[derive(Serialize, Clone, Copy)]
struct Row {
    p: f64,
    lambda1: f64,
    lambda2: f64,
    lambda3: f64,
    lambda4: f64,
    lambda5: f64,
    closed1: f64,
    closed2: f64,
    closed3: f64,
    closed4: f64,
    closed5: f64,
    max_abs_diff: f64,
}

#[derive(Serialize)]
struct SpectrumReport {
    #[serde(flatten)]
    meta: Meta,
    tol: f64,
    grid: Option<u32>,
    point: Option<Vec<f64>>,
    max_abs_diff: f64,
    closed_forms_ordered: bool,
    max_factor_residual: f64,
    passed: bool,
    rows: Vec<Row>,
}

fn row(w: &FieldSpec, x: &[f64], p: f64) -> Result<(Row, bool, f64)> {
    let numeric = eigenvalues(&w.hessian(x)?)?;
    let closed = ClosedFormSpectrum::at(p)?;
    let n = numeric.values();
    let c = closed.lambda;
    let residual = [c[0], c[2], c[4]]
        .iter()
        .map(|&l| char_factors(p, l).0.abs())
        .chain([c[1], c[3]].iter().map(|&l| char_factors(p, l).1.abs()))
        .fold(0.0, f64::max);
    Ok((
        Row {
            p,
            lambda1: n[0],
            lambda2: n[1],
            lambda3: n[2],
            lambda4: n[3],
            lambda5: n[4],
            closed1: c[0],
            closed2: c[1],
            closed3: c[2],
            closed4: c[3],
            closed5: c[4],
            max_abs_diff: numeric.max_abs_diff(&c),
        },
        closed.is_descending(),
        residual,
    ))
}

pub fn run(a: &SpectrumArgs, sink: &Sink) -> Result<Verdict> {
    let tol = positive("--tol", a.tol)?;
    let w = FieldSpec::w5();
    let mut points = Vec::new();
    if let Some(x) = &a.point {
        if x.len() != 5 {
            return Err(UsageError(format!("--point needs 5 coordinates, got {}", x.len())).into());
        }
        let nf = normal_form_of(x).map_err(|e| UsageError(format!("--point: {e}")))?;
        points.push((x.clone(), nf.p));
    } else {
        let n = a.grid.unwrap_or(DEFAULT_GRID);
        for k in 0..n {
            let p = (-1.0 + 2.0 * f64::from(k) / f64::from(n - 1)).clamp(-1.0, 1.0);
            points.push((NormalForm::from_level(p)?.point().to_vec(), p));
        }
    }
    let mut rows = Vec::with_capacity(points.len());
    let (mut ordered, mut residual) = (true, 0.0f64);
    for (x, p) in &points {
        let (r, o, f) = row(&w, x, *p)?;
        rows.push(r);
        ordered &= o;
        residual = residual.max(f);
    }
    let max_abs_diff = rows.iter().map(|r| r.max_abs_diff).fold(0.0, f64::max);
    let passed = max_abs_diff <= tol && ordered && residual <= tol;
    if !passed {
        eprintln!("spectrum: max diff {max_abs_diff:e}, factor residual {residual:e}, ordered {ordered}");
    }
    let report = SpectrumReport {
        meta: Meta::new("spectrum"),
        tol,
        grid: a.point.is_none().then(|| a.grid.unwrap_or(DEFAULT_GRID)),
        point: a.point.clone(),
        max_abs_diff,
        closed_forms_ordered: ordered,
        max_factor_residual: residual,
        passed,
        rows: rows.clone(),
    };
    sink.report(&report, rows)?;
    Ok(passed.into())
}
