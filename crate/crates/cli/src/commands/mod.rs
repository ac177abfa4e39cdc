mod certify;
mod inspect;
mod spectrum;
mod symbolic;

use anyhow::Result;
use eigencone::hyperbolicity::Band;
use eigencone::{AugmentedField, FieldSpec, HessianField};

use crate::args::{Command, Common, FieldKind};
use crate::output::Sink;
use crate::UsageError;

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::VerifySymbolic { .. } => "verify-symbolic",
            Self::Spectrum(_) => "spectrum",
            Self::Certify(_) => "certify",
            Self::WitnessLawson(_) => "witness-lawson",
            Self::ScanDelta(_) => "scan-delta",
            Self::U10(_) => "u10",
            Self::Eval(_) => "eval",
            Self::Dump { .. } => "dump",
        }
    }
}

pub fn dispatch(command: &Command, common: &Common) -> Result<Verdict> {
    let sink = Sink {
        output: common.output.clone(),
        format: common.format,
    };
    match command {
        Command::VerifySymbolic { p5_from } => symbolic::verify(p5_from.as_deref(), &sink),
        Command::Spectrum(a) => spectrum::run(a, &sink),
        Command::Certify(a) => certify::certify(a, common.seed, &sink),
        Command::WitnessLawson(a) => certify::witness_lawson(a, common.seed, &sink),
        Command::ScanDelta(a) => certify::scan_delta(a, common.seed, &sink),
        Command::U10(a) => certify::u10(a, common.seed, &sink),
        Command::Eval(a) => inspect::eval(a, &sink),
        Command::Dump { poly } => inspect::dump(*poly, &sink),
    }
}

pub(crate) fn band(v: &[f64]) -> Result<Band> {
    match v {
        [lo, hi] => Band::new(*lo, *hi)
            .ok_or_else(|| UsageError(format!("band needs 0 < LO < HI, got {lo} {hi}")).into()),
        _ => Err(UsageError("band takes exactly two values".into()).into()),
    }
}

pub(crate) fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(UsageError(format!("{name} must be positive, got {v}")).into())
    }
}

pub(crate) fn build_field(kind: FieldKind, delta: Option<f64>, big_m: f64) -> Result<Box<dyn HessianField>> {
    let usage = |e: eigencone::Error| UsageError(e.to_string());
    Ok(match kind {
        FieldKind::W5 => Box::new(FieldSpec::w5()),
        FieldKind::W4 => Box::new(FieldSpec::w4()),
        FieldKind::W5Delta => {
            let d = delta.ok_or_else(|| UsageError("w5_delta needs --delta".into()))?;
            Box::new(FieldSpec::w5_delta(d).map_err(usage)?)
        }
        FieldKind::U10 => Box::new(AugmentedField::new(delta.unwrap_or(1e-6), big_m).map_err(usage)?),
    })
}
