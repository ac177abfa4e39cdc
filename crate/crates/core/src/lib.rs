//! Exact and numerical verification tools for cubic minimal cones and the
//! Hessians of the homogeneous fields `P/|x|^δ` they define.
//!
//! * [`poly`]: exact polynomials over `ℚ[√3]` and the cubics of interest.
//! * [`cone`]: the mean curvature operator and eigencubic verdicts.
//! * [`field`]: values, gradients and Hessians of `P/|x|^δ` and the ten-dimensional augmented field.
//! * [`spectra`]: a Jacobi eigensolver and closed-form Cartan spectra.
//! * [`symmetry`]: automorphisms of the Cartan cubic and normal forms.
//! * [`hyperbolicity`]: the difference family and its certification.

pub mod cone;
pub mod error;
pub mod field;
pub mod hyperbolicity;
pub mod poly;
pub mod spectra;
pub mod symmetry;

pub use cone::{
    analyze_cubic, check_munzner, check_radial_eigencubic, mean_curvature_op, EigencubicReport,
    EigencubicSummary,
};
pub use error::{Error, Result};
pub use field::{AugmentedField, FieldSpec, HessianField};
pub use hyperbolicity::{family_member, Band, FamilyMember, SearchReport};
pub use poly::{Monomial, Polynomial, Scalar};
pub use spectra::{eigenvalues, ClosedFormSpectrum, Spectrum};
pub use symmetry::{normal_form_of, NormalForm};
