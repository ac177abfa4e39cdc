use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Stream domains keep the draws of different procedures independent.
pub const DOMAIN_SAMPLE: u64 = 1;
pub const DOMAIN_SEARCH: u64 = 2;

/// The generator for item `index` of procedure `domain` under `seed`.
///
/// A pure function of its arguments, so items can be drawn in any order.
pub fn stream(seed: u64, domain: u64, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&domain.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

/// Uniform point on `S^{n−1}` by normalizing a Gaussian vector.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let v = gaussian_vector(rng, n);
        let r = v.iter().map(|t| t * t).sum::<f64>().sqrt();
        if r > 1e-12 {
            return v.into_iter().map(|t| t / r).collect();
        }
    }
}

/// Haar-distributed element of `O(n)`: sign-fixed QR of a Gaussian matrix,
/// then a reflection of the first coordinate with probability one half.
pub fn haar_orthogonal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let g = DMatrix::from_vec(n, n, gaussian_vector(rng, n * n));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if rng.random::<bool>() {
        q.row_mut(0).neg_mut();
    }
    q
}
