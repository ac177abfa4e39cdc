use super::algebra::{triple_real, Association};
use super::{Polynomial, Scalar};

fn cubic(nvars: usize, terms: &[(Scalar, [usize; 3])]) -> Polynomial {
    Polynomial::from_terms(
        nvars,
        terms.iter().map(|(c, vars)| {
            let mut e = vec![0; nvars];
            for &v in vars {
                e[v] += 1;
            }
            (c.clone(), e)
        }),
    )
    .expect("exponent vectors sized to nvars")
}

/// The Cartan isoparametric cubic in variables `(x₁, x₂, z₁, z₂, z₃)`:
///
/// `x₁³ + (3x₁/2)(z₁² + z₂² − 2z₃² − 2x₂²) + (3√3/2)(x₂z₁² − x₂z₂² + 2z₁z₂z₃)`.
pub fn cartan_p5() -> Polynomial {
    const X1: usize = 0;
    const X2: usize = 1;
    const Z1: usize = 2;
    const Z2: usize = 3;
    const Z3: usize = 4;
    cubic(
        5,
        &[
            (Scalar::int(1), [X1, X1, X1]),
            (Scalar::ratio(3, 2), [X1, Z1, Z1]),
            (Scalar::ratio(3, 2), [X1, Z2, Z2]),
            (Scalar::int(-3), [X1, Z3, Z3]),
            (Scalar::int(-3), [X1, X2, X2]),
            (Scalar::surd_ratio(3, 2), [X2, Z1, Z1]),
            (Scalar::surd_ratio(-3, 2), [X2, Z2, Z2]),
            (Scalar::surd_ratio(3, 1), [Z1, Z2, Z3]),
        ],
    )
}

/// The Lawson cubic `x₃(x₁² − x₂²) + 2x₁x₂x₄`.
pub fn lawson_p4() -> Polynomial {
    cubic(
        4,
        &[
            (Scalar::int(1), [2, 0, 0]),
            (Scalar::int(-1), [2, 1, 1]),
            (Scalar::int(2), [0, 1, 3]),
        ],
    )
}

fn triple_product_cubic(dim: usize, assoc: Association) -> Polynomial {
    let mut terms = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let c = triple_real(dim, i, j, k, assoc);
                if c != 0 {
                    terms.push((Scalar::int(c), [i, dim + j, 2 * dim + k]));
                }
            }
        }
    }
    cubic(3 * dim, &terms)
}

/// `Re(q₁q₂q₃)` on `ℍ³ = ℝ¹²`, blocks `(q₁, q₂, q₃)` each in basis `(1, i, j, k)`.
pub fn quaternion_p12() -> Polynomial {
    triple_product_cubic(4, Association::Left)
}

/// `Re((o₁o₂)o₃)` on `𝕆³ = ℝ²⁴`.
pub fn octonion_p24() -> Polynomial {
    triple_product_cubic(8, Association::Left)
}

/// `Re` of the octonion triple product with an explicit bracketing.
pub fn octonion_p24_with(assoc: Association) -> Polynomial {
    triple_product_cubic(8, assoc)
}

/// `|x|² = Σ xᵢ²` in `n` variables.
pub fn norm_sq(n: usize) -> Polynomial {
    assert!(n >= 1, "norm_sq needs at least one variable");
    Polynomial::from_terms(
        n,
        (0..n).map(|i| {
            let mut e = vec![0; n];
            e[i] = 2;
            (Scalar::one(), e)
        }),
    )
    .expect("sized exponents")
}
