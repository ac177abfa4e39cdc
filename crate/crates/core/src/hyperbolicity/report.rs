use serde::Serialize;

use super::inequalities::{inequality_record, InequalityTally, INEQUALITY_TOL};
use super::member::{FamilyMember, MemberSummary};

/// At most this many violating members are listed; all are counted.
pub const MAX_LISTED_VIOLATIONS: usize = 1000;
/// Absolute tolerance for the Weyl cross-check.
pub const WEYL_TOL: f64 = 1e-9;

/// Closed ratio interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
}

impl Band {
    pub const PROPOSITION: Band = Band { lo: 0.05, hi: 20.0 };
    pub const WITNESS: Band = Band { lo: 0.01, hi: 100.0 };

    pub fn new(lo: f64, hi: f64) -> Option<Self> {
        (lo.is_finite() && hi.is_finite() && 0.0 < lo && lo < hi).then_some(Self { lo, hi })
    }

    pub fn contains(&self, r: f64) -> bool {
        self.lo <= r && r <= self.hi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Sampling,
    PatternSearch,
}

/// Per-sample data for plotting. `p`/`pbar` are the levels of `x`/`y` when
/// the field has a normal form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SampleRow {
    pub index: u64,
    pub p: Option<f64>,
    pub pbar: Option<f64>,
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub field: String,
    pub method: Method,
    pub seed: u64,
    pub n_samples: u64,
    pub n_excluded: u64,
    pub n_non_hyperbolic: u64,
    pub n_violations: u64,
    pub weyl_failures: u64,
    pub band: Option<Band>,
    pub min_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
    /// Smallest `Λ₁` and largest `Λ_n` over non-excluded members.
    pub min_lambda_max: Option<f64>,
    pub max_lambda_min: Option<f64>,
    pub argmin: Option<MemberSummary>,
    pub argmax: Option<MemberSummary>,
    pub violations: Vec<MemberSummary>,
    pub inequalities: Option<InequalityTally>,
    pub evaluations: Option<u64>,
    #[serde(skip)]
    pub rows: Vec<SampleRow>,
}

impl SearchReport {
    /// Every non-excluded member had `Λ₁ > 0 > Λ_n`.
    pub fn all_hyperbolic(&self) -> bool {
        self.n_non_hyperbolic == 0
    }

    pub fn is_clean(&self) -> bool {
        self.n_violations == 0
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Tally {
    n: u64,
    excluded: u64,
    non_hyperbolic: u64,
    violations_total: u64,
    weyl_failures: u64,
    min: Option<MemberSummary>,
    max: Option<MemberSummary>,
    min_lambda_max: Option<f64>,
    max_lambda_min: Option<f64>,
    violations: Vec<MemberSummary>,
    inequalities: Option<InequalityTally>,
    rows: Vec<SampleRow>,
}

fn keep_min(slot: &mut Option<f64>, v: f64) {
    if slot.is_none_or(|s| v < s) {
        *slot = Some(v);
    }
}

fn keep_max(slot: &mut Option<f64>, v: f64) {
    if slot.is_none_or(|s| v > s) {
        *slot = Some(v);
    }
}

fn ratio_of(s: &Option<MemberSummary>) -> Option<f64> {
    s.as_ref().and_then(|m| m.ratio)
}

impl Tally {
    pub(crate) fn observe(
        &mut self,
        index: u64,
        member: &FamilyMember,
        levels: Option<(f64, f64)>,
        band: Option<Band>,
        want_row: bool,
    ) {
        self.n += 1;
        if want_row {
            self.rows.push(SampleRow {
                index,
                p: levels.map(|l| l.0),
                pbar: levels.map(|l| l.1),
                lambda_max: member.lambda_max(),
                lambda_min: member.lambda_min(),
                ratio: member.ratio,
            });
        }
        if member.excluded {
            self.excluded += 1;
            return;
        }
        if !member.satisfies_weyl(WEYL_TOL) {
            self.weyl_failures += 1;
        }
        keep_min(&mut self.min_lambda_max, member.lambda_max());
        keep_max(&mut self.max_lambda_min, member.lambda_min());
        if let Some((px, py)) = levels {
            self.inequalities
                .get_or_insert_with(InequalityTally::default)
                .record(&inequality_record(member, px, py, INEQUALITY_TOL));
        }
        let violation = match member.ratio {
            None => {
                self.non_hyperbolic += 1;
                true
            }
            Some(r) => {
                if ratio_of(&self.min).is_none_or(|m| r < m) {
                    self.min = Some(member.summary(index));
                }
                if ratio_of(&self.max).is_none_or(|m| r > m) {
                    self.max = Some(member.summary(index));
                }
                band.is_some_and(|b| !b.contains(r))
            }
        };
        if violation {
            self.violations_total += 1;
            if self.violations.len() < MAX_LISTED_VIOLATIONS {
                self.violations.push(member.summary(index));
            }
        }
    }

    /// Appends `other`, which must cover later indices than `self`.
    pub(crate) fn merge(&mut self, other: Tally) {
        self.n += other.n;
        self.excluded += other.excluded;
        self.non_hyperbolic += other.non_hyperbolic;
        self.violations_total += other.violations_total;
        self.weyl_failures += other.weyl_failures;
        if let Some(r) = ratio_of(&other.min) {
            if ratio_of(&self.min).is_none_or(|m| r < m) {
                self.min = other.min;
            }
        }
        if let Some(r) = ratio_of(&other.max) {
            if ratio_of(&self.max).is_none_or(|m| r > m) {
                self.max = other.max;
            }
        }
        if let Some(v) = other.min_lambda_max {
            keep_min(&mut self.min_lambda_max, v);
        }
        if let Some(v) = other.max_lambda_min {
            keep_max(&mut self.max_lambda_min, v);
        }
        let room = MAX_LISTED_VIOLATIONS - self.violations.len();
        self.violations.extend(other.violations.into_iter().take(room));
        match (&mut self.inequalities, other.inequalities) {
            (Some(a), Some(b)) => a.merge(&b),
            (slot @ None, Some(b)) => *slot = Some(b),
            _ => {}
        }
        self.rows.extend(other.rows);
    }

    pub(crate) fn into_report(
        self,
        field: String,
        method: Method,
        seed: u64,
        band: Option<Band>,
        evaluations: Option<u64>,
    ) -> SearchReport {
        SearchReport {
            field,
            method,
            seed,
            n_samples: self.n,
            n_excluded: self.excluded,
            n_non_hyperbolic: self.non_hyperbolic,
            n_violations: self.violations_total,
            weyl_failures: self.weyl_failures,
            band,
            min_ratio: ratio_of(&self.min),
            max_ratio: ratio_of(&self.max),
            min_lambda_max: self.min_lambda_max,
            max_lambda_min: self.max_lambda_min,
            argmin: self.min,
            argmax: self.max,
            violations: self.violations,
            inequalities: self.inequalities,
            evaluations,
            rows: self.rows,
        }
    }
}
