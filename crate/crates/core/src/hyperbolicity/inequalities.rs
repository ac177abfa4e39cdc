use nalgebra::DMatrix;
use serde::Serialize;

use super::member::{family_member, FamilyMember};
use crate::error::{Error, Result};
use crate::field::HessianField;

/// Tolerance for the level-difference inequalities.
pub const INEQUALITY_TOL: f64 = 1e-8;

/// Level-difference bounds for one member of the Cartan family, evaluated
/// after ordering the two points so that `p ≥ p̄`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityRecord {
    pub p: f64,
    pub pbar: f64,
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub trace: f64,
    /// `Λ₁ ≥ 3(p − p̄)/2`
    pub lambda_max_bound: bool,
    /// `−Λ_n ≥ 3(p − p̄)`
    pub lambda_min_bound: bool,
    /// `0 ≤ −Tr ≤ 24(p − p̄)`
    pub trace_band: bool,
    /// `4(−Λ_n) ≥ Λ₁`, checked when `Tr ≤ 0`.
    pub extreme_ratio: Option<bool>,
    /// `−Λ_n ≥ 4Λ₁` read literally, checked when `Tr ≤ 0`.
    pub extreme_ratio_literal: Option<bool>,
    pub slacks: Slacks,
}

impl InequalityRecord {
    pub fn all_hold(&self) -> bool {
        self.lambda_max_bound && self.lambda_min_bound && self.trace_band && self.extreme_ratio != Some(false)
    }
}

/// Margins by which each bound holds; negative means violated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Slacks {
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub trace_lower: f64,
    pub trace_upper: f64,
    pub extreme_ratio: f64,
}

impl Slacks {
    fn worst(&self, other: &Self) -> Self {
        Self {
            lambda_max: self.lambda_max.min(other.lambda_max),
            lambda_min: self.lambda_min.min(other.lambda_min),
            trace_lower: self.trace_lower.min(other.trace_lower),
            trace_upper: self.trace_upper.min(other.trace_upper),
            extreme_ratio: self.extreme_ratio.min(other.extreme_ratio),
        }
    }
}

pub fn inequality_record(member: &FamilyMember, p_x: f64, p_y: f64, tol: f64) -> InequalityRecord {
    // M(y, x, Oᵀ) is conjugate to −M(x, y, O): swapping the points negates
    // and reverses the spectrum.
    let (hi, lo, tr) = (member.lambda_max(), member.lambda_min(), member.trace());
    let (p, pbar, hi, lo, tr) = if p_x >= p_y {
        (p_x, p_y, hi, lo, tr)
    } else {
        (p_y, p_x, -lo, -hi, -tr)
    };
    let d = p - pbar;
    let slacks = Slacks {
        lambda_max: hi - 1.5 * d,
        lambda_min: -lo - 3.0 * d,
        trace_lower: -tr,
        trace_upper: 24.0 * d + tr,
        extreme_ratio: if tr <= 0.0 { -4.0 * lo - hi } else { f64::INFINITY },
    };
    InequalityRecord {
        p,
        pbar,
        lambda_max: hi,
        lambda_min: lo,
        trace: tr,
        lambda_max_bound: slacks.lambda_max >= -tol,
        lambda_min_bound: slacks.lambda_min >= -tol,
        trace_band: slacks.trace_lower >= -tol && slacks.trace_upper >= -tol,
        extreme_ratio: (tr <= 0.0).then_some(slacks.extreme_ratio >= -tol),
        extreme_ratio_literal: (tr <= 0.0).then_some(-lo >= 4.0 * hi - tol),
        slacks,
    }
}

/// Builds the member and evaluates the level-difference bounds.
pub fn prop41_inequalities(
    field: &dyn HessianField,
    x: &[f64],
    y: &[f64],
    o: &DMatrix<f64>,
) -> Result<InequalityRecord> {
    let not_cartan = || Error::Config(format!("{} has no Cartan normal form", field.label()));
    let p_x = field.orbit_level(x).ok_or_else(not_cartan)??;
    let p_y = field.orbit_level(y).ok_or_else(not_cartan)??;
    let member = family_member(field, x, y, o)?;
    if member.excluded {
        return Err(Error::OutOfDomain {
            name: "|M|",
            value: member.norm,
            domain: "above the exclusion threshold",
        });
    }
    Ok(inequality_record(&member, p_x, p_y, INEQUALITY_TOL))
}

/// Failure counts and worst margins over many records.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityTally {
    pub checked: u64,
    pub lambda_max_failures: u64,
    pub lambda_min_failures: u64,
    pub trace_failures: u64,
    pub extreme_ratio_failures: u64,
    pub extreme_ratio_literal_holds: u64,
    pub min_slacks: Slacks,
}

impl Default for InequalityTally {
    fn default() -> Self {
        let inf = f64::INFINITY;
        Self {
            checked: 0,
            lambda_max_failures: 0,
            lambda_min_failures: 0,
            trace_failures: 0,
            extreme_ratio_failures: 0,
            extreme_ratio_literal_holds: 0,
            min_slacks: Slacks {
                lambda_max: inf,
                lambda_min: inf,
                trace_lower: inf,
                trace_upper: inf,
                extreme_ratio: inf,
            },
        }
    }
}

impl InequalityTally {
    pub fn record(&mut self, r: &InequalityRecord) {
        self.checked += 1;
        self.lambda_max_failures += u64::from(!r.lambda_max_bound);
        self.lambda_min_failures += u64::from(!r.lambda_min_bound);
        self.trace_failures += u64::from(!r.trace_band);
        self.extreme_ratio_failures += u64::from(r.extreme_ratio == Some(false));
        self.extreme_ratio_literal_holds += u64::from(r.extreme_ratio_literal == Some(true));
        self.min_slacks = self.min_slacks.worst(&r.slacks);
    }

    pub fn merge(&mut self, other: &Self) {
        self.checked += other.checked;
        self.lambda_max_failures += other.lambda_max_failures;
        self.lambda_min_failures += other.lambda_min_failures;
        self.trace_failures += other.trace_failures;
        self.extreme_ratio_failures += other.extreme_ratio_failures;
        self.extreme_ratio_literal_holds += other.extreme_ratio_literal_holds;
        self.min_slacks = self.min_slacks.worst(&other.min_slacks);
    }

    /// The three level-difference bounds held everywhere.
    pub fn level_bounds_hold(&self) -> bool {
        self.lambda_max_failures == 0 && self.lambda_min_failures == 0 && self.trace_failures == 0
    }
}
