use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::HessianField;
use crate::spectra::{eigenvalues, weyl_gaps, Spectrum};
use crate::symmetry::orthogonality_defect;

/// Members with `‖M‖_F` at or below this are excluded.
pub const EXCLUSION_TOL: f64 = 1e-8;
/// Unit-norm and orthogonality tolerance for member inputs.
pub const INPUT_TOL: f64 = 1e-10;

/// One matrix `M = D²w(x) − Oᵀ·D²w(y)·O` of the difference family.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub o: DMatrix<f64>,
    pub m: DMatrix<f64>,
    pub spectrum: Spectrum,
    /// `−Λ₁/Λ_n`, present iff `Λ₁ > 0 > Λ_n`.
    pub ratio: Option<f64>,
    pub norm: f64,
    pub excluded: bool,
    /// `(maxᵢ(λᵢ(x) − λᵢ(y)), minᵢ(λᵢ(x) − λᵢ(y)))` for the two Hessians.
    pub weyl: (f64, f64),
}

impl FamilyMember {
    pub fn lambda_max(&self) -> f64 {
        self.spectrum.max()
    }

    pub fn lambda_min(&self) -> f64 {
        self.spectrum.min()
    }

    pub fn trace(&self) -> f64 {
        self.m.trace()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.ratio.is_some()
    }

    pub fn satisfies_weyl(&self, tol: f64) -> bool {
        self.lambda_max() >= self.weyl.0 - tol && self.lambda_min() <= self.weyl.1 + tol
    }

    /// `−Λ₁/Λ_n` clamped below at `0`, and `+∞` when `Λ_n ≥ 0`.
    pub fn extended_ratio(&self) -> f64 {
        let (hi, lo) = (self.lambda_max(), self.lambda_min());
        if lo >= 0.0 {
            f64::INFINITY
        } else {
            (-hi / lo).max(0.0)
        }
    }

    pub fn summary(&self, index: u64) -> MemberSummary {
        MemberSummary {
            index,
            x: self.x.clone(),
            y: self.y.clone(),
            o: self.o.transpose().as_slice().to_vec(),
            lambda_max: self.lambda_max(),
            lambda_min: self.lambda_min(),
            ratio: self.ratio,
            norm: self.norm,
            trace: self.trace(),
        }
    }
}

/// Compact record of a member for reports; `o` is row-major.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MemberSummary {
    pub index: u64,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub o: Vec<f64>,
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub ratio: Option<f64>,
    pub norm: f64,
    pub trace: f64,
}

fn check_unit(v: &[f64], n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: v.len(),
        });
    }
    let r = v.iter().map(|t| t * t).sum::<f64>().sqrt();
    if (r - 1.0).abs() > INPUT_TOL {
        return Err(Error::NotUnit { norm: r });
    }
    Ok(())
}

pub fn family_member(
    field: &dyn HessianField,
    x: &[f64],
    y: &[f64],
    o: &DMatrix<f64>,
) -> Result<FamilyMember> {
    let n = field.dim();
    check_unit(x, n)?;
    check_unit(y, n)?;
    if o.nrows() != n || o.ncols() != n {
        return Err(Error::NotSquare {
            rows: o.nrows(),
            cols: o.ncols(),
        });
    }
    let defect = orthogonality_defect(o);
    if defect.is_nan() || defect > INPUT_TOL {
        return Err(Error::NotOrthogonal { defect });
    }
    let hx = field.hessian(x)?;
    let hy = field.hessian(y)?;
    let mut m = &hx - o.transpose() * &hy * o;
    let mt = m.transpose();
    m = (m + mt) * 0.5;
    let spectrum = eigenvalues(&m)?;
    let weyl = weyl_gaps(&eigenvalues(&hx)?, &eigenvalues(&hy)?);
    let norm = m.norm();
    let (hi, lo) = (spectrum.max(), spectrum.min());
    let ratio = (hi > 0.0 && lo < 0.0).then(|| -hi / lo);
    Ok(FamilyMember {
        x: x.to_vec(),
        y: y.to_vec(),
        o: o.clone(),
        m,
        spectrum,
        ratio,
        norm,
        excluded: norm <= EXCLUSION_TOL,
        weyl,
    })
}
