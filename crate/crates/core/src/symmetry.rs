//! One-parameter automorphisms of the Cartan cubic, the orbit map of the
//! reference circle, and recovery of the normal-form level of a point.

use std::sync::OnceLock;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{cartan_p5, CompiledPoly};

/// Orthogonality defect tolerated for group elements built here.
pub const ORTHOGONALITY_TOL: f64 = 1e-12;
/// Unit-norm tolerance for [`normal_form_of`].
pub const UNIT_TOL: f64 = 1e-10;
/// Cubic levels beyond `1 + LEVEL_SLACK` in magnitude are rejected.
pub const LEVEL_SLACK: f64 = 1e-9;
/// Relative singular-value threshold for [`orbit_rank`].
pub const RANK_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Generator {
    A1,
    A2,
    A3,
}

/// A 5×5 orthogonal matrix with the generator angles `(φ, ψ, θ)` it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub matrix: DMatrix<f64>,
    pub params: [f64; 3],
}

/// The rotation `A_k(t)` in coordinates `(x₁, x₂, z₁, z₂, z₃)`.
///
/// `A₁` rotates `(z₂, z₃)` by `t` and mixes `(x₁, x₂, z₁)`; `A₂` rotates
/// `(x₂, z₃)` by `2t` and `(z₁, z₂)` by `t`; `A₃` rotates `(z₁, z₃)` by `t`
/// and mixes `(x₁, x₂, z₂)`. Each one fixes `P₅`.
pub fn generator(kind: Generator, t: f64) -> GroupElement {
    let s3 = 3f64.sqrt();
    let (c, s) = (t.cos(), t.sin());
    let (c2, s2) = ((2.0 * t).cos(), (2.0 * t).sin());
    #[rustfmt::skip]
    let (rows, scale, params) = match kind {
        Generator::A1 => ([
            3.0 * c * c - 1.0, s3 * s * s,  s3 * s2,  0.0,      0.0,
            s3 * s * s,        1.0 + c * c, -s2,      0.0,      0.0,
            -s3 * s2,          s2,          2.0 * c2, 0.0,      0.0,
            0.0,               0.0,         0.0,      2.0 * c,  2.0 * s,
            0.0,               0.0,         0.0,      -2.0 * s, 2.0 * c,
        ], 0.5, [t, 0.0, 0.0]),
        Generator::A2 => ([
            1.0, 0.0, 0.0, 0.0, 0.0,
            0.0, c2,  0.0, 0.0, -s2,
            0.0, 0.0, c,   -s,  0.0,
            0.0, 0.0, s,   c,   0.0,
            0.0, s2,  0.0, 0.0, c2,
        ], 1.0, [0.0, t, 0.0]),
        Generator::A3 => ([
            3.0 * c * c - 1.0, -s3 * s * s, 0.0,     -s3 * s2, 0.0,
            -s3 * s * s,       1.0 + c * c, 0.0,     -s2,      0.0,
            0.0,               0.0,         2.0 * c, 0.0,      -2.0 * s,
            s3 * s2,           s2,          0.0,     2.0 * c2, 0.0,
            0.0,               0.0,         2.0 * s, 0.0,      2.0 * c,
        ], 0.5, [0.0, 0.0, t]),
    };
    GroupElement {
        matrix: DMatrix::from_row_slice(5, 5, &rows) * scale,
        params,
    }
}

impl GroupElement {
    pub fn identity() -> Self {
        Self {
            matrix: DMatrix::identity(5, 5),
            params: [0.0; 3],
        }
    }

    /// `A₁(φ)·A₂(ψ)·A₃(θ)`.
    pub fn from_angles(phi: f64, psi: f64, theta: f64) -> Self {
        let m = generator(Generator::A1, phi).matrix
            * generator(Generator::A2, psi).matrix
            * generator(Generator::A3, theta).matrix;
        Self {
            matrix: m,
            params: [phi, psi, theta],
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            matrix: &self.matrix * &other.matrix,
            params: [f64::NAN; 3],
        }
    }

    /// `O·x` for a column vector `x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (&self.matrix * DVector::from_column_slice(x)).as_slice().to_vec()
    }

    pub fn orthogonality_defect(&self) -> f64 {
        orthogonality_defect(&self.matrix)
    }

    pub fn is_orthogonal(&self) -> bool {
        self.orthogonality_defect() <= ORTHOGONALITY_TOL
    }

    pub fn determinant(&self) -> f64 {
        self.matrix.determinant()
    }
}

/// `max |OᵀO − I|` entrywise.
pub fn orthogonality_defect(o: &DMatrix<f64>) -> f64 {
    let n = o.ncols();
    (o.transpose() * o - DMatrix::<f64>::identity(n, n)).abs().max()
}

/// The image `(cos χ, 0, sin χ, 0, 0)·A₁(−φ)·A₂(−ψ)·A₃(−θ)` (row-vector action).
pub fn orbit_point(phi: f64, psi: f64, theta: f64, chi: f64) -> [f64; 5] {
    let g = GroupElement::from_angles(-phi, -psi, -theta);
    let row = DVector::from_column_slice(&[chi.cos(), 0.0, chi.sin(), 0.0, 0.0]);
    let v = g.matrix.transpose() * row;
    [v[0], v[1], v[2], v[3], v[4]]
}

/// 5×4 Jacobian of [`orbit_point`] in `(φ, ψ, θ, χ)` by central differences.
pub fn orbit_jacobian(at: [f64; 4]) -> DMatrix<f64> {
    let h = 1e-6;
    let mut j = DMatrix::zeros(5, 4);
    for k in 0..4 {
        let (mut a, mut b) = (at, at);
        a[k] += h;
        b[k] -= h;
        let (pa, pb) = (
            orbit_point(a[0], a[1], a[2], a[3]),
            orbit_point(b[0], b[1], b[2], b[3]),
        );
        for i in 0..5 {
            j[(i, k)] = (pa[i] - pb[i]) / (2.0 * h);
        }
    }
    j
}

/// Singular values of the orbit Jacobian, descending.
pub fn orbit_singular_values(at: [f64; 4]) -> Vec<f64> {
    let mut sv = orbit_jacobian(at).singular_values().as_slice().to_vec();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Number of singular values above `RANK_THRESHOLD` times the largest.
pub fn orbit_rank(at: [f64; 4]) -> usize {
    let sv = orbit_singular_values(at);
    let top = sv.first().copied().unwrap_or(0.0);
    sv.iter().filter(|&&s| s > RANK_THRESHOLD * top).count()
}

/// Representative `(p, 0, q, 0, 0)` of a point's orbit, with `q ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalForm {
    pub p: f64,
    pub q: f64,
}

impl NormalForm {
    pub fn from_level(p: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&p) {
            return Err(Error::OutOfDomain {
                name: "p",
                value: p,
                domain: "[-1, 1]",
            });
        }
        Ok(Self {
            p,
            q: (1.0 - p * p).max(0.0).sqrt(),
        })
    }

    pub fn point(&self) -> [f64; 5] {
        [self.p, 0.0, self.q, 0.0, 0.0]
    }
}

/// `p(3 − p²)/2`, the value of `w₅` at the normal-form point of level `p`.
pub fn level_value(p: f64) -> f64 {
    p * (3.0 - p * p) / 2.0
}

/// The unique `p ∈ [−1, 1]` with `p(3 − p²)/2 = w`, by safeguarded Newton.
pub fn level_from_value(w: f64) -> Result<f64> {
    if w.is_nan() || w.abs() > 1.0 + LEVEL_SLACK {
        return Err(Error::BrokenInvariant { value: w });
    }
    let w = w.clamp(-1.0, 1.0);
    if w == 1.0 || w == -1.0 {
        return Ok(w);
    }
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    let mut p = w.clamp(-0.999, 0.999);
    for _ in 0..200 {
        let f = level_value(p) - w;
        if f == 0.0 {
            return Ok(p);
        }
        if f < 0.0 {
            lo = p;
        } else {
            hi = p;
        }
        let df = 1.5 * (1.0 - p * p);
        let newton = p - f / df;
        let next = if df > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - p).abs() <= 1e-16 || hi - lo <= 1e-15 {
            return Ok(next);
        }
        p = next;
    }
    Ok(p)
}

fn cartan() -> &'static CompiledPoly {
    static P5: OnceLock<CompiledPoly> = OnceLock::new();
    P5.get_or_init(|| cartan_p5().compile())
}

/// Normal form of a unit vector, read off from the invariant `w₅(x) = P₅(x)`.
pub fn normal_form_of(x: &[f64]) -> Result<NormalForm> {
    if x.len() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            got: x.len(),
        });
    }
    let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (r - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnit { norm: r });
    }
    NormalForm::from_level(level_from_value(cartan().eval(x))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, HessianField};
    use crate::spectra::{eigenvalues, ClosedFormSpectrum};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    const KINDS: [Generator; 3] = [Generator::A1, Generator::A2, Generator::A3];

    fn gauss(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
        (0..n).map(|_| rng.sample(StandardNormal)).collect()
    }

    fn unit(rng: &mut ChaCha8Rng) -> Vec<f64> {
        let v = gauss(rng, 5);
        let r = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        v.iter().map(|t| t / r).collect()
    }

    #[test]
    fn generators_at_zero_are_identity() {
        for k in KINDS {
            assert!(
                (generator(k, 0.0).matrix - DMatrix::<f64>::identity(5, 5))
                    .abs()
                    .max()
                    < 1e-15
            );
        }
    }

    #[test]
    fn generators_are_rotations() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            for k in KINDS {
                let g = generator(k, rng.random_range(-7.0..7.0));
                assert!(g.orthogonality_defect() < 1e-13);
                assert!((g.determinant() - 1.0).abs() < 1e-12);
            }
        }
        assert!(generator(Generator::A2, 0.7).is_orthogonal());
    }

    #[test]
    fn generators_fix_the_cubic() {
        let p5 = cartan_p5();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..300 {
            let x: Vec<f64> = gauss(&mut rng, 5).iter().map(|t| t * 0.8).collect();
            let r = x.iter().map(|t| t * t).sum::<f64>().sqrt();
            let x: Vec<f64> = if r > 2.0 {
                x.iter().map(|t| t * 2.0 / r).collect()
            } else {
                x
            };
            let v = p5.eval(&x).unwrap();
            for k in KINDS {
                let g = generator(k, rng.random_range(-4.0..4.0));
                assert!((p5.eval(&g.apply(&x)).unwrap() - v).abs() <= 1e-11);
            }
        }
    }

    #[test]
    fn orbit_point_base_cases() {
        assert_eq!(orbit_point(0.0, 0.0, 0.0, 0.0), [1.0, 0.0, 0.0, 0.0, 0.0]);
        let chi = 0.9f64;
        let v = orbit_point(0.0, 0.0, 0.0, chi);
        let want = [chi.cos(), 0.0, chi.sin(), 0.0, 0.0];
        assert!(v.iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15));
        let v = orbit_point(0.3, -1.2, 2.0, 0.4);
        assert!((v.iter().map(|t| t * t).sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn orbit_rank_is_four_off_the_focal_points() {
        for chi in [0.3, 1.0, 1.5, 2.5, -0.7] {
            assert_eq!(orbit_rank([0.0, 0.0, 0.0, chi]), 4, "chi = {chi}");
        }
        assert_eq!(orbit_rank([0.4, -0.2, 1.1, 0.6]), 4);
    }

    #[test]
    fn orbit_rank_drops_to_two_at_the_focal_base_point() {
        // (1, 0, 0, 0, 0) has p = 1; its orbit is two-dimensional and the
        // circle is tangent to it there.
        assert_eq!(orbit_rank([0.0; 4]), 2);
        let sv = orbit_singular_values([0.0; 4]);
        assert!((sv[0] - 2.0).abs() < 1e-8 && (sv[1] - 3f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn level_map_is_monotone_and_inverted() {
        let mut prev = f64::NEG_INFINITY;
        for k in 0..=2000 {
            let p = -1.0 + f64::from(k) / 1000.0;
            let v = level_value(p);
            assert!(v > prev);
            prev = v;
            let back = level_from_value(v).unwrap();
            // the inverse is ill-conditioned only at the focal levels p = ±1
            let tol = if p.abs() > 0.999 { 1e-7 } else { 1e-12 };
            assert!((back - p).abs() < tol, "p = {p}, back = {back}");
        }
        assert!(level_from_value(1.0 + 1e-6).is_err());
        assert_eq!(level_from_value(1.0 + 1e-12).unwrap(), 1.0);
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(normal_form_of(&[1.0, 0.0, 0.0, 0.0, 0.0]).unwrap().p, 1.0);
        assert_eq!(normal_form_of(&[0.0, 0.0, 1.0, 0.0, 0.0]).unwrap().p, 0.0);
        assert!(matches!(
            normal_form_of(&[1.0, 1.0, 0.0, 0.0, 0.0]),
            Err(Error::NotUnit { .. })
        ));
        let nf = NormalForm::from_level(0.6).unwrap();
        assert!((nf.q - 0.8).abs() < 1e-15);
        let w = FieldSpec::w5().value(&nf.point()).unwrap();
        assert!((w - level_value(0.6)).abs() < 1e-12);
    }

    #[test]
    fn normal_form_predicts_the_hessian_spectrum() {
        let w = FieldSpec::w5();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..500 {
            let x = unit(&mut rng);
            let nf = normal_form_of(&x).unwrap();
            let s = eigenvalues(&w.hessian(&x).unwrap()).unwrap();
            let c = ClosedFormSpectrum::at(nf.p).unwrap();
            assert!(s.max_abs_diff(&c.lambda) < 1e-8);
        }
    }

    #[test]
    fn spectrum_is_transported_by_the_group() {
        let w = FieldSpec::w5();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let x = unit(&mut rng);
            let g = GroupElement::from_angles(
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
            )
            .compose(&generator(Generator::A2, rng.random_range(-3.0..3.0)));
            let a = eigenvalues(&w.hessian(&x).unwrap()).unwrap();
            let b = eigenvalues(&w.hessian(&g.apply(&x)).unwrap()).unwrap();
            assert!(a.max_abs_diff(b.values()) < 1e-9);
        }
    }
}
