//! Acceptance criteria, one verdict line each. Exits non-zero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use eigencone::cone::analyze_cubic;
use eigencone::hyperbolicity::streams::{gaussian_vector, stream, unit_vector};
use eigencone::hyperbolicity::{
    sample_certify, u10_certify, worst_case_search, Band, SampleConfig, SearchConfig,
};
use eigencone::poly::{cartan_p5, lawson_p4, octonion_p24, quaternion_p12};
use eigencone::spectra::{char_factors, eigenvalues, weyl_bounds, ClosedFormSpectrum};
use eigencone::symmetry::{normal_form_of, orbit_rank, orbit_singular_values, NormalForm};
use eigencone::{AugmentedField, FieldSpec, HessianField, Scalar};
use nalgebra::DMatrix;

const SEED: u64 = 20_240_601;

type Criterion = (&'static str, fn() -> Vec<Check>);

struct Check {
    label: String,
    ok: bool,
    detail: String,
}

fn check(label: impl Into<String>, ok: bool, detail: impl Into<String>) -> Check {
    Check {
        label: label.into(),
        ok,
        detail: detail.into(),
    }
}

fn within(label: &str, elapsed: Duration, limit_s: f64) -> Check {
    let s = elapsed.as_secs_f64();
    check(label, s < limit_s, format!("{s:.2} s, limit {limit_s} s"))
}

fn symbolic_exactness() -> Vec<Check> {
    let start = Instant::now();
    let p5 = analyze_cubic(&cartan_p5());
    let others = [
        ("P4", analyze_cubic(&lawson_p4())),
        ("P12", analyze_cubic(&quaternion_p12())),
        ("P24", analyze_cubic(&octonion_p24())),
    ];
    let mut out = vec![
        check("Laplacian of P5 vanishes", p5.is_harmonic, ""),
        check(
            "|grad P5|^2 = 9|x|^4",
            p5.munzner_gradient_constant == Some(Scalar::int(9)),
            format!("{:?}", p5.munzner_gradient_constant.map(|c| c.to_string())),
        ),
        check(
            "L(P5) = -54|x|^2 P5",
            p5.weight == Some(Scalar::int(-54)),
            format!("{:?}", p5.weight.map(|c| c.to_string())),
        ),
    ];
    for (name, r) in &others {
        out.push(check(format!("Laplacian of {name} vanishes"), r.is_harmonic, ""));
    }
    for (name, r) in &others[1..] {
        let w = r.weight.as_ref();
        out.push(check(
            format!("{name} is a radial eigencubic with rational weight"),
            w.is_some_and(Scalar::is_rational),
            format!("weight {:?}", w.map(ToString::to_string)),
        ));
    }
    out.push(within("runtime", start.elapsed(), 5.0));
    out
}

fn spectral_agreement() -> Vec<Check> {
    let start = Instant::now();
    let w = FieldSpec::w5();
    let (mut diff, mut residual, mut ordered) = (0.0f64, 0.0f64, true);
    for k in 0..1001 {
        let p = (-1.0 + 2.0 * f64::from(k) / 1000.0).clamp(-1.0, 1.0);
        let x = NormalForm::from_level(p).unwrap().point();
        let numeric = eigenvalues(&w.hessian(&x).unwrap()).unwrap();
        let c = ClosedFormSpectrum::at(p).unwrap();
        diff = diff.max(numeric.max_abs_diff(&c.lambda));
        ordered &= c.is_descending() && numeric.values().windows(2).all(|v| v[0] >= v[1]);
        for l in [c.lambda[0], c.lambda[2], c.lambda[4]] {
            residual = residual.max(char_factors(p, l).0.abs());
        }
        for l in [c.lambda[1], c.lambda[3]] {
            residual = residual.max(char_factors(p, l).1.abs());
        }
    }
    vec![
        check(
            "numeric vs closed form on 1001 levels",
            diff <= 1e-9,
            format!("max diff {diff:e}"),
        ),
        check("closed forms ordered at every level", ordered, ""),
        check(
            "factors vanish at their roots",
            residual <= 1e-9,
            format!("max residual {residual:e}"),
        ),
        within("runtime", start.elapsed(), 10.0),
    ]
}

fn orbit_closure() -> Vec<Check> {
    let start = Instant::now();
    let w = FieldSpec::w5();
    let mut diff = 0.0f64;
    for i in 0..10_000 {
        let x = unit_vector(&mut stream(SEED, 3, i), 5);
        let p = normal_form_of(&x).unwrap().p;
        let s = eigenvalues(&w.hessian(&x).unwrap()).unwrap();
        diff = diff.max(s.max_abs_diff(&ClosedFormSpectrum::at(p).unwrap().lambda));
    }
    let base = [0.0; 4];
    let generic = [0.0, 0.0, 0.0, 0.7];
    vec![
        check(
            "spectrum predicted by normal form, 10^4 points",
            diff <= 1e-8,
            format!("max diff {diff:e}"),
        ),
        check(
            "orbit-map Jacobian rank 4 at (0,0,0,0)",
            orbit_rank(base) == 4,
            format!(
                "rank {}, singular values {:?}",
                orbit_rank(base),
                orbit_singular_values(base)
            ),
        ),
        check(
            "(info) orbit-map Jacobian rank at (0,0,0,0.7)",
            true,
            format!("rank {}", orbit_rank(generic)),
        ),
        within("runtime", start.elapsed(), 30.0),
    ]
}

fn trace_identity() -> Vec<Check> {
    let w = FieldSpec::w5();
    let mut worst = 0.0f64;
    for i in 0..10_000 {
        let x = unit_vector(&mut stream(SEED, 4, i), 5);
        worst = worst.max((w.hessian(&x).unwrap().trace() + 8.0 * w.value(&x).unwrap()).abs());
    }
    vec![check(
        "|tr D2w5 + 8 w5| on 10^4 unit points",
        worst <= 1e-10,
        format!("max {worst:e}"),
    )]
}

fn hyperbolicity_certification() -> Vec<Check> {
    let w = FieldSpec::w5();
    let start = Instant::now();
    let cfg = SampleConfig::new(1_000_000, SEED).with_band(Band::PROPOSITION);
    let s = sample_certify(&w, &cfg).unwrap();
    let sampling_time = start.elapsed();
    let start = Instant::now();
    let r = worst_case_search(&w, &SearchConfig::new(200, SEED).with_band(Band::PROPOSITION)).unwrap();
    let search_time = start.elapsed();
    let ineq = s.inequalities.clone().unwrap();
    vec![
        check(
            "10^6 samples: ratio in [1/20, 20], Lambda1 > 0 > Lambda5",
            s.n_violations == 0 && s.n_non_hyperbolic == 0,
            format!(
                "{} violations, {} excluded, ratio in [{:?}, {:?}], {:.1} s",
                s.n_violations,
                s.n_excluded,
                s.min_ratio,
                s.max_ratio,
                sampling_time.as_secs_f64()
            ),
        ),
        check(
            "level-difference inequalities on every sampled member (tol 1e-8)",
            ineq.level_bounds_hold() && ineq.checked + s.n_excluded == s.n_samples,
            format!(
                "checked {}, failures {}/{}/{}, min slacks {:?}",
                ineq.checked,
                ineq.lambda_max_failures,
                ineq.lambda_min_failures,
                ineq.trace_failures,
                ineq.min_slacks
            ),
        ),
        check(
            "200-restart search: max <= 20 + 1e-3, min >= 1/20 - 1e-5",
            r.all_hyperbolic()
                && r.max_ratio.is_some_and(|m| m <= 20.0 + 1e-3)
                && r.min_ratio.is_some_and(|m| m >= 0.05 - 1e-5),
            format!(
                "ratio in [{:?}, {:?}], {} evaluations, {:.1} s",
                r.min_ratio,
                r.max_ratio,
                r.evaluations.unwrap_or(0),
                search_time.as_secs_f64()
            ),
        ),
    ]
}

fn lawson_witness() -> Vec<Check> {
    let r = worst_case_search(
        &FieldSpec::w4(),
        &SearchConfig::new(200, SEED).with_band(Band::WITNESS),
    )
    .unwrap();
    let witness = r.violations.iter().find(|m| {
        m.norm > 1e-6
            && (m.lambda_max <= 0.0
                || m.lambda_min >= 0.0
                || m.ratio.is_some_and(|q| !Band::WITNESS.contains(q)))
    });
    vec![check(
        "member with ratio outside [1/100, 100] or Lambda1 <= 0 or Lambda4 >= 0",
        witness.is_some(),
        match witness {
            Some(m) => format!(
                "restart run {}: Lambda1 {:.4}, Lambda4 {:.4}, ratio {:?}; {} such members",
                m.index, m.lambda_max, m.lambda_min, m.ratio, r.n_violations
            ),
            None => "none found".into(),
        },
    )]
}

fn weyl_bounds_hold() -> Vec<Check> {
    let mut failures = 0;
    let mut worst = f64::NEG_INFINITY;
    for i in 0..1000u64 {
        let n = 2 + (i % 7) as usize;
        let mut rng = stream(SEED, 7, i);
        let sym = |v: Vec<f64>| {
            let a = DMatrix::from_vec(n, n, v);
            (&a + a.transpose()) * 0.5
        };
        let a = sym(gaussian_vector(&mut rng, n * n));
        let b = sym(gaussian_vector(&mut rng, n * n));
        let (hi, lo) = weyl_bounds(&a, &b).unwrap();
        let s = eigenvalues(&(&a - &b)).unwrap();
        let gap = (hi - s.max()).max(s.min() - lo);
        worst = worst.max(gap);
        failures += usize::from(gap > 1e-9);
    }
    vec![check(
        "1000 random symmetric pairs, dimensions 2-8",
        failures == 0,
        format!("{failures} failures, worst excess {worst:e}"),
    )]
}

fn augmented_probe() -> Vec<Check> {
    let (delta, big_m) = (1e-6, 100.0);
    let r = u10_certify(delta, big_m, 100_000, SEED).unwrap();
    let u = AugmentedField::new(delta, big_m).unwrap();
    let scale = 2f64.powf(2.0 - 2.0 * delta);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let z = unit_vector(&mut stream(SEED, 8, i), 10);
        let z2: Vec<f64> = z.iter().map(|t| 2.0 * t).collect();
        let want = scale * u.value(&z).unwrap();
        worst = worst.max((u.value(&z2).unwrap() - want).abs() / want.abs());
    }
    vec![
        check(
            "10^5 members with Lambda1 > 0 > Lambda10",
            r.n_non_hyperbolic == 0 && r.n_samples == 100_000,
            format!(
                "{} non-hyperbolic, {} excluded, ratio in [{:?}, {:?}]",
                r.n_non_hyperbolic, r.n_excluded, r.min_ratio, r.max_ratio
            ),
        ),
        check(
            "u(2z) = 2^(2-2delta) u(z)",
            worst <= 1e-9,
            format!("max relative error {worst:e}"),
        ),
    ]
}

/// Hessian by central second differences of the value.
fn fd_hessian(f: &dyn HessianField, x: &[f64], h: f64) -> DMatrix<f64> {
    let n = x.len();
    let at = |i: usize, si: f64, j: usize, sj: f64| {
        let mut y = x.to_vec();
        y[i] += si * h;
        y[j] += sj * h;
        f.value(&y).unwrap()
    };
    DMatrix::from_fn(n, n, |i, j| {
        (at(i, 1.0, j, 1.0) - at(i, 1.0, j, -1.0) - at(i, -1.0, j, 1.0) + at(i, -1.0, j, -1.0))
            / (4.0 * h * h)
    })
}

fn hessian_correctness() -> Vec<Check> {
    let fields: Vec<Box<dyn HessianField>> = vec![
        Box::new(FieldSpec::w5()),
        Box::new(FieldSpec::w4()),
        Box::new(FieldSpec::w5_delta(1.5).unwrap()),
        Box::new(AugmentedField::new(1e-6, 100.0).unwrap()),
        Box::new(AugmentedField::new(0.3, 2.0).unwrap()),
    ];
    fields
        .iter()
        .enumerate()
        .map(|(k, f)| {
            let mut worst = 0.0f64;
            for i in 0..100 {
                let mut rng = stream(SEED, 9, 1000 * k as u64 + i);
                let r = 0.5 + 1.5 * unit_vector(&mut rng, 1)[0].abs();
                let x: Vec<f64> = unit_vector(&mut rng, f.dim()).iter().map(|t| r * t).collect();
                let h = f.hessian(&x).unwrap();
                let err = (fd_hessian(f.as_ref(), &x, 1e-4) - &h).abs().max() / h.abs().max();
                worst = worst.max(err);
            }
            check(
                format!("{} at 100 points", f.label()),
                worst <= 1e-6,
                format!("max relative error {worst:e}"),
            )
        })
        .collect()
}

fn run_cli(args: &[&str], out: &Path, threads: &str) -> Vec<u8> {
    let status = Command::new(env!("CARGO_BIN_EXE_eigencone"))
        .args(args)
        .args(["--threads", threads, "--output", out.to_str().unwrap()])
        .env_remove("EIGENCONE_SEED")
        .stderr(std::process::Stdio::null())
        .status()
        .unwrap();
    assert!(status.code().is_some_and(|c| c <= 1), "{args:?}: {status}");
    std::fs::read(out).unwrap()
}

fn determinism() -> Vec<Check> {
    let dir = tempfile::TempDir::new().unwrap();
    let commands: [&[&str]; 4] = [
        &["certify", "--samples", "5000", "--restarts", "3", "--seed", "99"],
        &["witness-lawson", "--restarts", "6", "--seed", "99"],
        &["scan-delta", "--samples", "3000", "--seed", "99"],
        &["u10", "--samples", "2000", "--seed", "99"],
    ];
    commands
        .iter()
        .map(|args| {
            let a = run_cli(args, &dir.path().join("a.json"), "1");
            let b = run_cli(args, &dir.path().join("b.json"), "4");
            check(
                format!("{} with 1 and 4 threads", args[0]),
                a == b && !a.is_empty(),
                format!("{} bytes", a.len()),
            )
        })
        .collect()
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("symbolic exactness", symbolic_exactness),
        ("spectral agreement", spectral_agreement),
        ("orbit/normal-form closure", orbit_closure),
        ("trace identity", trace_identity),
        ("hyperbolicity certification", hyperbolicity_certification),
        ("Lawson non-hyperbolicity witness", lawson_witness),
        ("Weyl bounds", weyl_bounds_hold),
        ("augmented-field probe", augmented_probe),
        ("Hessian correctness", hessian_correctness),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (k, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let checks = run();
        let ok = checks.iter().all(|c| c.ok);
        println!(
            "criterion {:>2} {}  {title} ({:.1} s)",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        for c in &checks {
            let mark = if c.ok { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                println!("    {mark} {}", c.label);
            } else {
                println!("    {mark} {}: {}", c.label, c.detail);
            }
        }
        if !ok {
            failed.push(k + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria pass");
    } else {
        println!("acceptance: criteria {failed:?} fail");
        std::process::exit(1);
    }
}
