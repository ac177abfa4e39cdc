//! The normalized mean curvature operator
//! `L(f) = |∇f|²Δf − Σ f_ij f_i f_j` and the exact verdicts built on it.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::poly::{norm_sq, Monomial, Polynomial, Scalar};

/// `L(f)`, computed as `|∇f|²Δf − ½ ∇f·∇|∇f|²`.
///
/// The second form equals `Σ f_ij f_i f_j` because `∂_j |∇f|² = 2 Σ_i f_i f_ij`,
/// and needs one product per variable instead of one per variable pair.
pub fn mean_curvature_op(f: &Polynomial) -> Polynomial {
    let grad = f.gradient();
    let g = f.gradient_norm_sq();
    let first = g.checked_mul(&f.laplacian()).expect("same nvars");
    let mut second = Polynomial::zero(f.nvars());
    for (i, fi) in grad.iter().enumerate() {
        let dg = g.partial(i).expect("index in range");
        second = second
            .checked_add(&fi.checked_mul(&dg).expect("same nvars"))
            .expect("same nvars");
    }
    first
        .checked_sub(&second.scale(&Scalar::ratio(1, 2)))
        .expect("same nvars")
}

/// A nonzero term of a polynomial identity that failed to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualTerm {
    pub monomial: Monomial,
    pub coefficient: Scalar,
}

impl std::fmt::Display for ResidualTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})·{}", self.coefficient, self.monomial)
    }
}

fn first_residual(p: &Polynomial) -> Option<ResidualTerm> {
    p.first_term().map(|(m, c)| ResidualTerm {
        monomial: m.clone(),
        coefficient: c.clone(),
    })
}

/// Verdicts for a homogeneous cubic.
///
/// `munzner_gradient_constant` is `Some(c)` iff `|∇f|² − c|x|⁴ ≡ 0`, and
/// `weight` is `Some(λ)` iff `L(f) − λ|x|²f ≡ 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EigencubicReport {
    pub is_harmonic: bool,
    pub munzner_gradient_constant: Option<Scalar>,
    pub weight: Option<Scalar>,
    pub residual_zero: bool,
    /// First surviving term of `Δf`, when nonzero.
    pub laplacian_residual: Option<ResidualTerm>,
    /// First surviving term of `|∇f|² − c|x|⁴` for the candidate `c`.
    pub munzner_residual: Option<ResidualTerm>,
    /// First surviving term of `L(f) − λ|x|²f` for the candidate `λ`.
    pub weight_residual: Option<ResidualTerm>,
}

impl EigencubicReport {
    pub fn is_munzner(&self, c: &Scalar) -> bool {
        self.is_harmonic && self.munzner_gradient_constant.as_ref() == Some(c)
    }
}

/// Candidate `c` such that `num ≡ c·den`: the ratio of coefficients at the
/// graded-lex-least monomial of `den`, then verified globally.
fn proportionality(num: &Polynomial, den: &Polynomial) -> (Option<Scalar>, Option<ResidualTerm>) {
    let Some((m, d)) = den.first_term() else {
        return (None, first_residual(num));
    };
    let c = num
        .coefficient(m.exponents())
        .checked_div(d)
        .expect("stored coefficients are nonzero");
    let residual = num.checked_sub(&den.scale(&c)).expect("same nvars");
    match first_residual(&residual) {
        None => (Some(c), None),
        Some(r) => (None, Some(r)),
    }
}

/// Harmonicity and the Münzner gradient identity `|∇f|² = c|x|⁴`.
pub fn check_munzner(f: &Polynomial) -> EigencubicReport {
    let lap = f.laplacian();
    let r2 = norm_sq(f.nvars());
    let r4 = r2.checked_mul(&r2).expect("same nvars");
    let (c, residual) = proportionality(&f.gradient_norm_sq(), &r4);
    EigencubicReport {
        is_harmonic: lap.is_zero(),
        laplacian_residual: first_residual(&lap),
        munzner_gradient_constant: c,
        munzner_residual: residual,
        ..Default::default()
    }
}

/// The radial eigencubic identity `L(f) = λ|x|²f`.
pub fn check_radial_eigencubic(f: &Polynomial) -> EigencubicReport {
    let base = norm_sq(f.nvars()).checked_mul(f).expect("same nvars");
    let (weight, residual) = proportionality(&mean_curvature_op(f), &base);
    EigencubicReport {
        is_harmonic: f.laplacian().is_zero(),
        residual_zero: weight.is_some(),
        weight,
        weight_residual: residual,
        ..Default::default()
    }
}

/// Both checks merged into one report.
pub fn analyze_cubic(f: &Polynomial) -> EigencubicReport {
    let m = check_munzner(f);
    let w = check_radial_eigencubic(f);
    EigencubicReport {
        weight: w.weight,
        residual_zero: w.residual_zero,
        weight_residual: w.weight_residual,
        ..m
    }
}

/// The JSON shape `{name, harmonic, munzner_c, weight}` used in reports.
///
/// Rational integers serialize as JSON integers, other rationals as floats,
/// and anything with a √3 part as its exact string.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct EigencubicSummary {
    pub name: String,
    pub harmonic: bool,
    pub munzner_c: Option<ExactNumber>,
    pub weight: Option<ExactNumber>,
}

impl EigencubicSummary {
    pub fn new(name: impl Into<String>, r: &EigencubicReport) -> Self {
        Self {
            name: name.into(),
            harmonic: r.is_harmonic,
            munzner_c: r.munzner_gradient_constant.as_ref().map(Into::into),
            weight: r.weight.as_ref().map(Into::into),
        }
    }
}

/// A [`Scalar`] rendered as the most exact JSON value available.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactNumber {
    Integer(i64),
    Float(f64),
    Text(String),
}

impl From<&Scalar> for ExactNumber {
    fn from(s: &Scalar) -> Self {
        if let Some(i) = s.as_integer().and_then(|i| i.to_i64()) {
            ExactNumber::Integer(i)
        } else if s.is_rational() {
            ExactNumber::Float(s.to_f64())
        } else {
            ExactNumber::Text(s.to_string())
        }
    }
}

impl Serialize for ExactNumber {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            ExactNumber::Integer(i) => ser.serialize_i64(*i),
            ExactNumber::Float(f) => ser.serialize_f64(*f),
            ExactNumber::Text(t) => ser.serialize_str(t),
        }
    }
}
