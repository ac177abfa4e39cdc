//! Homogeneous fields `w = P/|x|^δ` with closed-form gradient and Hessian.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::poly::{cartan_p5, lawson_p4, CompiledPoly, Polynomial};
use crate::symmetry::level_from_value;

/// Points closer to the origin than this are rejected.
pub const ORIGIN_GUARD: f64 = 1e-8;

/// A scalar field with a Hessian, as consumed by the difference-family code.
pub trait HessianField: Send + Sync {
    fn dim(&self) -> usize;
    fn value(&self, x: &[f64]) -> Result<f64>;
    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>>;
    fn hessian(&self, x: &[f64]) -> Result<DMatrix<f64>>;
    /// Short human-readable name used in reports.
    fn label(&self) -> String;
    /// Level `p` of the normal form `(p, 0, q, 0, 0)` of a unit point, for
    /// fields whose numerator is the Cartan cubic.
    fn orbit_level(&self, _x: &[f64]) -> Option<Result<f64>> {
        None
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn guard(x: &[f64], dim: usize) -> Result<f64> {
    if x.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: x.len(),
        });
    }
    let r = norm(x);
    if r.is_nan() || r < ORIGIN_GUARD {
        return Err(Error::SingularPoint { norm: r });
    }
    Ok(r)
}

#[derive(Debug)]
struct Derivatives {
    value: CompiledPoly,
    grad: Vec<CompiledPoly>,
    /// upper triangle, row-major
    hess: Vec<CompiledPoly>,
}

/// `w = P/|x|^δ` for a homogeneous cubic `P`.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    poly: Polynomial,
    delta: f64,
    label: String,
    cartan: bool,
    derivs: Arc<Derivatives>,
}

impl FieldSpec {
    pub fn new(poly: Polynomial, delta: f64) -> Result<Self> {
        if !poly.is_homogeneous(3) || poly.is_zero() {
            return Err(Error::NotCubic);
        }
        if !(delta.is_finite() && delta >= 0.0) {
            return Err(Error::OutOfDomain {
                name: "delta",
                value: delta,
                domain: "[0, inf)",
            });
        }
        let n = poly.nvars();
        let grad_polys = poly.gradient();
        let mut hess = Vec::with_capacity(n * (n + 1) / 2);
        for (i, gi) in grad_polys.iter().enumerate() {
            for j in i..n {
                hess.push(gi.partial(j)?.compile());
            }
        }
        let derivs = Derivatives {
            value: poly.compile(),
            grad: grad_polys.iter().map(Polynomial::compile).collect(),
            hess,
        };
        let cartan = poly == cartan_p5();
        Ok(Self {
            label: format!("P/|x|^{delta}"),
            poly,
            delta,
            cartan,
            derivs: Arc::new(derivs),
        })
    }

    /// `w₅ = P₅/|x|`.
    pub fn w5() -> Self {
        Self::w5_delta(1.0).expect("valid exponent").with_label("w5")
    }

    /// `P₅/|x|^δ`.
    pub fn w5_delta(delta: f64) -> Result<Self> {
        Ok(Self::new(cartan_p5(), delta)?.with_label(format!("w5_delta({delta})")))
    }

    /// `w₄ = P₄/|x|` built on the Lawson cubic.
    pub fn w4() -> Self {
        Self::new(lawson_p4(), 1.0)
            .expect("Lawson cubic is a homogeneous cubic")
            .with_label("w4")
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Degree of homogeneity `3 − δ`.
    pub fn homogeneity(&self) -> f64 {
        3.0 - self.delta
    }

    pub fn is_cartan(&self) -> bool {
        self.cartan
    }

    fn poly_gradient(&self, x: &[f64]) -> Vec<f64> {
        self.derivs.grad.iter().map(|g| g.eval(x)).collect()
    }
}

impl HessianField for FieldSpec {
    fn dim(&self) -> usize {
        self.poly.nvars()
    }

    fn value(&self, x: &[f64]) -> Result<f64> {
        let r = guard(x, self.dim())?;
        Ok(self.derivs.value.eval(x) / r.powf(self.delta))
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        let r = guard(x, self.dim())?;
        let d = self.delta;
        let p = self.derivs.value.eval(x);
        let a = r.powf(-d);
        let b = d * p * r.powf(-d - 2.0);
        Ok(self
            .poly_gradient(x)
            .iter()
            .zip(x)
            .map(|(gi, xi)| gi * a - b * xi)
            .collect())
    }

    /// `H_ij = P_ij r^−δ − δ r^(−δ−2)(P_i x_j + P_j x_i) − δ P r^(−δ−2) δ_ij
    ///        + δ(δ+2) P x_i x_j r^(−δ−4)`.
    fn hessian(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        let r = guard(x, self.dim())?;
        let n = self.dim();
        let d = self.delta;
        let p = self.derivs.value.eval(x);
        let g = self.poly_gradient(x);
        let r0 = r.powf(-d);
        let r2 = r.powf(-d - 2.0);
        let r4 = r.powf(-d - 4.0);
        let mut h = DMatrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                let mut v = self.derivs.hess[k].eval(x) * r0 - d * r2 * (g[i] * x[j] + g[j] * x[i])
                    + d * (d + 2.0) * p * x[i] * x[j] * r4;
                if i == j {
                    v -= d * p * r2;
                }
                h[(i, j)] = v;
                h[(j, i)] = v;
                k += 1;
            }
        }
        Ok(h)
    }

    fn label(&self) -> String {
        self.label.clone()
    }

    fn orbit_level(&self, x: &[f64]) -> Option<Result<f64>> {
        if !self.cartan {
            return None;
        }
        Some(guard(x, 5).and_then(|r| level_from_value(self.derivs.value.eval(x) / (r * r * r))))
    }
}

/// `u(x, y) = (w₅(x) + w₅(y) + M(|x|² − |y|²)) / (|x|² + |y|²)^δ` on `ℝ⁵ × ℝ⁵`.
#[derive(Clone, Debug)]
pub struct AugmentedField {
    base: FieldSpec,
    delta: f64,
    big_m: f64,
}

impl AugmentedField {
    pub fn new(delta: f64, big_m: f64) -> Result<Self> {
        if !(delta.is_finite() && delta >= 0.0) {
            return Err(Error::OutOfDomain {
                name: "delta",
                value: delta,
                domain: "[0, inf)",
            });
        }
        if !big_m.is_finite() {
            return Err(Error::OutOfDomain {
                name: "M",
                value: big_m,
                domain: "finite reals",
            });
        }
        Ok(Self {
            base: FieldSpec::w5(),
            delta,
            big_m,
        })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn big_m(&self) -> f64 {
        self.big_m
    }

    /// Degree of homogeneity `2 − 2δ`.
    pub fn homogeneity(&self) -> f64 {
        2.0 - 2.0 * self.delta
    }

    fn split(xy: &[f64]) -> Result<(&[f64], &[f64])> {
        guard(xy, 10)?;
        Ok(xy.split_at(5))
    }

    fn numerator(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        let m = self.big_m;
        Ok(self.base.value(x)? + self.base.value(y)? + m * (dot(x, x) - dot(y, y)))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| u * v).sum()
}

impl HessianField for AugmentedField {
    fn dim(&self) -> usize {
        10
    }

    fn value(&self, xy: &[f64]) -> Result<f64> {
        let (x, y) = Self::split(xy)?;
        Ok(self.numerator(x, y)? * dot(xy, xy).powf(-self.delta))
    }

    fn gradient(&self, xy: &[f64]) -> Result<Vec<f64>> {
        let (x, y) = Self::split(xy)?;
        let (d, m) = (self.delta, self.big_m);
        let s = dot(xy, xy);
        let num = self.numerator(x, y)?;
        let gx = self.base.gradient(x)?;
        let gy = self.base.gradient(y)?;
        let grad_n = gx
            .iter()
            .zip(x)
            .map(|(g, v)| g + 2.0 * m * v)
            .chain(gy.iter().zip(y).map(|(g, v)| g - 2.0 * m * v));
        let a = s.powf(-d);
        let b = -2.0 * d * s.powf(-d - 1.0) * num;
        Ok(grad_n.zip(xy).map(|(gn, z)| gn * a + b * z).collect())
    }

    /// `D²u = g·D²N + ∇N∇gᵀ + ∇g∇Nᵀ + N·D²g` with `g = S^−δ`, `S = |z|²`.
    fn hessian(&self, xy: &[f64]) -> Result<DMatrix<f64>> {
        let (x, y) = Self::split(xy)?;
        let (d, m) = (self.delta, self.big_m);
        let s = dot(xy, xy);
        let num = self.numerator(x, y)?;

        let mut grad_n = Vec::with_capacity(10);
        for (g, v) in self.base.gradient(x)?.iter().zip(x) {
            grad_n.push(g + 2.0 * m * v);
        }
        for (g, v) in self.base.gradient(y)?.iter().zip(y) {
            grad_n.push(g - 2.0 * m * v);
        }
        let mut hess_n = DMatrix::zeros(10, 10);
        let hx = self.base.hessian(x)?;
        let hy = self.base.hessian(y)?;
        for i in 0..5 {
            for j in 0..5 {
                hess_n[(i, j)] = hx[(i, j)];
                hess_n[(i + 5, j + 5)] = hy[(i, j)];
            }
            hess_n[(i, i)] += 2.0 * m;
            hess_n[(i + 5, i + 5)] -= 2.0 * m;
        }

        let g = s.powf(-d);
        let dg = -2.0 * d * s.powf(-d - 1.0);
        let ddg = 4.0 * d * (d + 1.0) * s.powf(-d - 2.0);
        let mut h = DMatrix::zeros(10, 10);
        for i in 0..10 {
            for j in 0..10 {
                let mut v = g * hess_n[(i, j)]
                    + dg * (grad_n[i] * xy[j] + xy[i] * grad_n[j])
                    + num * ddg * xy[i] * xy[j];
                if i == j {
                    v += num * dg;
                }
                h[(i, j)] = v;
            }
        }
        Ok(h)
    }

    fn label(&self) -> String {
        format!("u10(delta={}, M={})", self.delta, self.big_m)
    }
}
