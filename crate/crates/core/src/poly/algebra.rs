//! Cayley–Dickson doubling: ℝ → ℂ → ℍ → 𝕆 on integer coordinate vectors.

/// Bracketing of a triple product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Association {
    /// `(a·b)·c`
    Left,
    /// `a·(b·c)`
    Right,
}

fn conj(v: &[i64]) -> Vec<i64> {
    v.iter()
        .enumerate()
        .map(|(i, &t)| if i == 0 { t } else { -t })
        .collect()
}

/// Product in the Cayley–Dickson algebra of dimension `a.len()` (a power of two),
/// using `(a, b)(c, d) = (ac − d̄b, da + bc̄)`.
pub fn cayley_dickson_product(a: &[i64], b: &[i64]) -> Vec<i64> {
    assert_eq!(a.len(), b.len(), "operands must share a dimension");
    assert!(a.len().is_power_of_two(), "dimension must be a power of two");
    let n = a.len();
    if n == 1 {
        return vec![a[0] * b[0]];
    }
    let h = n / 2;
    let (p, q) = a.split_at(h);
    let (r, s) = b.split_at(h);
    let pr = cayley_dickson_product(p, r);
    let sq = cayley_dickson_product(&conj(s), q);
    let sp = cayley_dickson_product(s, p);
    let qr = cayley_dickson_product(q, &conj(r));
    pr.iter()
        .zip(&sq)
        .map(|(x, y)| x - y)
        .chain(sp.iter().zip(&qr).map(|(x, y)| x + y))
        .collect()
}

pub(crate) fn basis(n: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// `Re` of the triple product of basis elements `e_i, e_j, e_k`.
pub(crate) fn triple_real(n: usize, i: usize, j: usize, k: usize, assoc: Association) -> i64 {
    let (a, b, c) = (basis(n, i), basis(n, j), basis(n, k));
    let prod = match assoc {
        Association::Left => cayley_dickson_product(&cayley_dickson_product(&a, &b), &c),
        Association::Right => cayley_dickson_product(&a, &cayley_dickson_product(&b, &c)),
    };
    prod[0]
}
