//! Random CPTP maps and channel membership of Choi matrices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{herm, hom_q, QuantumObj};
use crate::error::{Error, Result};
use crate::linal::AffSpace;

/// Choi matrix `sum_{jk} |j><k| ⊗ Φ(|j><k|)` of `Φ(ρ) = sum_i K_i ρ K_i^†`, input first.
pub fn choi_matrix(kraus: &[DMatrix<Complex64>]) -> DMatrix<Complex64> {
    let (n, m) = kraus[0].shape();
    let mut c = DMatrix::zeros(m * n, m * n);
    for k in kraus {
        for j in 0..m {
            for l in 0..m {
                for a in 0..n {
                    for b in 0..n {
                        c[(j * n + a, l * n + b)] += k[(a, j)] * k[(b, l)].conj();
                    }
                }
            }
        }
    }
    c
}

/// Choi coordinates of a channel `M_m -> M_n` given by Kraus operators (`n x m`).
pub fn choi_coords(kraus: &[DMatrix<Complex64>]) -> Result<DVector<f64>> {
    let (n, m) = kraus[0].shape();
    herm::to_coords(&choi_matrix(kraus), &[m, n])
}

/// Kraus operators of a random channel `M_m -> M_n` from a Gaussian isometry
/// `C^m -> C^n ⊗ C^r` with `r = m n`.
pub fn random_kraus(m: usize, n: usize, seed: u64) -> Vec<DMatrix<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = m * n;
    let g = DMatrix::from_fn(n * r, m, |_, _| {
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        Complex64::new(re, im)
    });
    let v = g.qr().q();
    (0..r).map(|i| v.rows(i * n, n).into_owned()).collect()
}

pub fn random_cptp(m: usize, n: usize, seed: u64) -> Result<DVector<f64>> {
    if m == 0 || n == 0 || m > 8 || n > 8 {
        return Err(Error::Dimension(format!("channel dimensions {m} -> {n} outside 1..=8")));
    }
    choi_coords(&random_kraus(m, n, seed))
}

/// Affine space of Choi matrices of trace-preserving maps `M_m -> M_n`.
pub fn channel_space(m: usize, n: usize) -> Result<AffSpace> {
    hom_q(&QuantumObj::first_order(m, 1.0), &QuantumObj::first_order(n, 1.0)).affine()
}

/// Smallest eigenvalue of the hermitian matrix with coordinates `c` on `⊗ C^{dims[k]}`.
pub fn psd_min_eig(c: &DVector<f64>, dims: &[usize]) -> Result<f64> {
    let m = herm::from_coords(c, dims)?;
    Ok(m.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min))
}

/// Affine membership within `tol` and eigenvalues at least `-1e-9 ‖C‖`.
pub fn is_channel_member(c: &DVector<f64>, m: usize, n: usize, tol: f64) -> Result<bool> {
    let space = channel_space(m, n)?;
    if c.len() != space.ambient() {
        return Err(Error::Dimension(format!("{} coordinates, expected {}", c.len(), space.ambient())));
    }
    Ok(space.contains(c, tol) && psd_min_eig(c, &[m, n])? >= -1e-9 * c.norm())
}
