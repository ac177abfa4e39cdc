use std::path::Path;

use anyhow::{Context, Result};
use eigencone::cone::{analyze_cubic, EigencubicReport, EigencubicSummary};
use eigencone::poly::{cartan_p5, lawson_p4, octonion_p24, quaternion_p12, Polynomial, Scalar};
use serde::Serialize;

use super::Verdict;
use crate::output::{Meta, Sink};
use crate::UsageError;

#[derive(Serialize)]
struct SymbolicReport {
    #[serde(flatten)]
    meta: Meta,
    tolerance: &'static str,
    cubics: Vec<EigencubicSummary>,
    passed: bool,
}

fn explain(name: &str, r: &EigencubicReport) {
    if let Some(t) = &r.laplacian_residual {
        eprintln!("{name}: Laplacian does not vanish, first term {t}");
    }
    if let Some(t) = &r.munzner_residual {
        eprintln!("{name}: |grad f|^2 - c|x|^4 does not vanish, first term {t}");
    }
    if let Some(t) = &r.weight_residual {
        eprintln!("{name}: L(f) - lambda|x|^2 f does not vanish, first term {t}");
    }
}

pub fn verify(p5_from: Option<&Path>, sink: &Sink) -> Result<Verdict> {
    sink.reject_csv("verify-symbolic")?;
    let p5 = match p5_from {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(|e| UsageError(format!("{e:#}")))?;
            text.parse::<Polynomial>()
                .map_err(|e| UsageError(format!("{}: {e}", path.display())))?
        }
        None => cartan_p5(),
    };
    let cubics = [
        ("P4", lawson_p4()),
        ("P5", p5),
        ("P12", quaternion_p12()),
        ("P24", octonion_p24()),
    ];
    let mut passed = true;
    let mut summaries = Vec::new();
    for (name, poly) in &cubics {
        let r = analyze_cubic(poly);
        let mut ok = r.is_harmonic;
        if *name == "P5" {
            let cartan =
                poly.nvars() == 5 && r.is_munzner(&Scalar::int(9)) && r.weight == Some(Scalar::int(-54));
            if !cartan {
                eprintln!("P5: expected harmonic, c = 9, weight = -54");
            }
            ok &= cartan;
        }
        if !ok {
            explain(name, &r);
        }
        passed &= ok;
        summaries.push(EigencubicSummary::new(*name, &r));
    }
    sink.json(&SymbolicReport {
        meta: Meta::new("verify-symbolic"),
        tolerance: "exact",
        cubics: summaries,
        passed,
    })?;
    Ok(passed.into())
}
