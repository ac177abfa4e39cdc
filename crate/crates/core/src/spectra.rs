//! Small dense symmetric eigenproblems and the closed-form spectrum of the
//! Cartan Hessian along the normal-form circle.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};

/// Absolute asymmetry tolerated by [`eigenvalues`].
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Jacobi stops once the off-diagonal Frobenius norm is this fraction of ‖A‖_F.
pub const JACOBI_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 64;

/// Eigenvalues sorted descending, `λ₁ ≥ … ≥ λ_n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ₁`, the largest eigenvalue.
    pub fn max(&self) -> f64 {
        self.0[0]
    }

    /// `λ_n`, the smallest eigenvalue.
    pub fn min(&self) -> f64 {
        self.0[self.0.len() - 1]
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn max_abs_diff(&self, other: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(other)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn check_symmetric(a: &DMatrix<f64>) -> Result<()> {
    let (r, c) = a.shape();
    if r != c {
        return Err(Error::NotSquare { rows: r, cols: c });
    }
    let mut asym = 0.0f64;
    for i in 0..r {
        for j in 0..i {
            let (x, y) = (a[(i, j)], a[(j, i)]);
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::OutOfDomain {
                    name: "matrix entry",
                    value: if x.is_finite() { y } else { x },
                    domain: "finite reals",
                });
            }
            asym = asym.max((x - y).abs());
        }
    }
    if asym > SYMMETRY_TOL {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }
    Ok(())
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn eigenvalues(a: &DMatrix<f64>) -> Result<Spectrum> {
    check_symmetric(a)?;
    let n = a.nrows();
    // row-major working copy, symmetrized
    let mut m: Vec<f64> = (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            0.5 * (a[(i, j)] + a[(j, i)])
        })
        .collect();
    let frob = m.iter().map(|v| v * v).sum::<f64>().sqrt();
    let off_norm = |m: &[f64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += m[i * n + j] * m[i * n + j];
                }
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let off = off_norm(&m);
        if off == 0.0 || off <= JACOBI_TOL * frob {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + theta.mul_add(theta, 1.0).sqrt())
                };
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / t.mul_add(t, 1.0).sqrt();
                let s = t * c;
                // columns p, q
                for k in 0..n {
                    let (kp, kq) = (m[k * n + p], m[k * n + q]);
                    m[k * n + p] = c * kp - s * kq;
                    m[k * n + q] = s * kp + c * kq;
                }
                // rows p, q
                for k in 0..n {
                    let (pk, qk) = (m[p * n + k], m[q * n + k]);
                    m[p * n + k] = c * pk - s * qk;
                    m[q * n + k] = s * pk + c * qk;
                }
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
            }
        }
    }
    if !converged && off_norm(&m) > JACOBI_TOL * frob {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }
    Ok(Spectrum::from_unsorted((0..n).map(|i| m[i * n + i]).collect()))
}

/// The Hessian spectrum of `w₅ = P₅/|x|` at `(p, 0, √(1−p²), 0, 0)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosedFormSpectrum {
    pub p: f64,
    pub lambda: [f64; 5],
    /// `√(5p⁶ − 30p⁴ + 45p² + 16)`
    pub r: f64,
}

impl ClosedFormSpectrum {
    pub fn at(p: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&p) {
            return Err(Error::OutOfDomain {
                name: "p",
                value: p,
                domain: "[-1, 1]",
            });
        }
        let p2 = p * p;
        let p3 = p2 * p;
        let s = (3.0 * (4.0 - p2)).sqrt();
        let r = (5.0 * p3 * p3 - 30.0 * p2 * p2 + 45.0 * p2 + 16.0).sqrt();
        let lambda = [
            (p3 - 6.0 * p + 3.0 * s) / 2.0,
            (5.0 * p3 - 15.0 * p + 3.0 * r) / 4.0,
            (p3 + 3.0 * p) / 2.0,
            (5.0 * p3 - 15.0 * p - 3.0 * r) / 4.0,
            (p3 - 6.0 * p - 3.0 * s) / 2.0,
        ];
        Ok(Self { p, lambda, r })
    }

    pub fn is_descending(&self) -> bool {
        self.lambda.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn sum(&self) -> f64 {
        self.lambda.iter().sum()
    }
}

/// Values `(F₁(S), F₂(S))` of the two factors of the characteristic polynomial
/// of the Cartan Hessian at level `p`.
pub fn char_factors(p: f64, s: f64) -> (f64, f64) {
    let p2 = p * p;
    let p3 = p2 * p;
    let p4 = p2 * p2;
    let p6 = p3 * p3;
    let f1 = (s - 1.5 * p - 0.5 * p3)
        * (s * s + 6.0 * p * s - p3 * s + 63.0 * p2 / 4.0 - 3.0 * p4 + p6 / 4.0 - 27.0);
    let f2 = s * s + 7.5 * p * s - 2.5 * p3 * s - 45.0 * p2 / 4.0 + 7.5 * p4 - 1.25 * p6 - 9.0;
    (f1, f2)
}

/// `(maxᵢ(λᵢ(A) − λᵢ(B)), minᵢ(λᵢ(A) − λᵢ(B)))` with both spectra descending.
/// These bound `λ₁(A−B)` from below and `λ_n(A−B)` from above.
pub fn weyl_bounds(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<(f64, f64)> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: b.nrows(),
        });
    }
    let (la, lb) = (eigenvalues(a)?, eigenvalues(b)?);
    Ok(weyl_gaps(&la, &lb))
}

pub(crate) fn weyl_gaps(la: &Spectrum, lb: &Spectrum) -> (f64, f64) {
    la.values()
        .iter()
        .zip(lb.values())
        .map(|(x, y)| x - y)
        .fold((f64::NEG_INFINITY, f64::INFINITY), |(hi, lo), d| {
            (hi.max(d), lo.min(d))
        })
}
