use anyhow::Result;
use eigencone::poly::{cartan_p5, lawson_p4, octonion_p24, quaternion_p12};
use eigencone::spectra::eigenvalues;
use serde::Serialize;

use super::{build_field, Verdict};
use crate::args::{CubicKind, EvalArgs};
use crate::output::{Meta, Sink};
use crate::UsageError;

#[derive(Serialize)]
struct EvalReport {
    #[serde(flatten)]
    meta: Meta,
    field: String,
    point: Vec<f64>,
    value: f64,
    gradient: Vec<f64>,
    hessian: Vec<Vec<f64>>,
    spectrum: Vec<f64>,
    level: Option<f64>,
}

pub fn eval(a: &EvalArgs, sink: &Sink) -> Result<Verdict> {
    sink.reject_csv("eval")?;
    let field = build_field(a.field, a.delta, a.big_m)?;
    let x = &a.point;
    if x.len() != field.dim() {
        return Err(UsageError(format!(
            "{} takes {} coordinates, got {}",
            field.label(),
            field.dim(),
            x.len()
        ))
        .into());
    }
    let usage = |e: eigencone::Error| UsageError(format!("--point: {e}"));
    let h = field.hessian(x).map_err(usage)?;
    let r = x.iter().map(|t| t * t).sum::<f64>().sqrt();
    let unit: Vec<f64> = x.iter().map(|t| t / r).collect();
    sink.json(&EvalReport {
        meta: Meta::new("eval"),
        field: field.label(),
        point: x.clone(),
        value: field.value(x).map_err(usage)?,
        gradient: field.gradient(x).map_err(usage)?,
        hessian: h.row_iter().map(|row| row.iter().copied().collect()).collect(),
        spectrum: eigenvalues(&h)?.values().to_vec(),
        level: field.orbit_level(&unit).transpose()?,
    })?;
    Ok(Verdict::Pass)
}

pub fn dump(kind: CubicKind, sink: &Sink) -> Result<Verdict> {
    sink.reject_csv("dump")?;
    let p = match kind {
        CubicKind::P4 => lawson_p4(),
        CubicKind::P5 => cartan_p5(),
        CubicKind::P12 => quaternion_p12(),
        CubicKind::P24 => octonion_p24(),
    };
    sink.text(&p.to_text())?;
    Ok(Verdict::Pass)
}
