//! The difference family `M(x, y, O) = D²w(x) − Oᵀ·D²w(y)·O`: members,
//! sampling and adversarial search for its extreme-eigenvalue ratio, and
//! level-difference diagnostics for the Cartan field.

mod inequalities;
mod member;
mod report;
mod sampling;
mod search;
pub mod streams;

pub use inequalities::{
    inequality_record, prop41_inequalities, InequalityRecord, InequalityTally, Slacks, INEQUALITY_TOL,
};
pub use member::{family_member, FamilyMember, MemberSummary, EXCLUSION_TOL, INPUT_TOL};
pub use report::{Band, Method, SampleRow, SearchReport, MAX_LISTED_VIOLATIONS, WEYL_TOL};
pub use sampling::{delta_scan, sample_certify, u10_certify, SampleConfig};
pub use search::{worst_case_search, SearchConfig};
