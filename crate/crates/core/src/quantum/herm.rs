//! Real coordinates on hermitian matrices.
//!
//! For `M_n^h` the orthonormal basis under `Tr(AB)` is indexed by `j * n + k` (0-based):
//! `E_jj` on the diagonal, `(E_jk + E_kj)/√2` for `j < k`, and `i(E_kj - E_jk)/√2` at
//! index `j * n + k` for `j > k`. Products `M_{n_1} ⊗ M_{n_2} ⊗ ...` use tensor products of
//! these, first factor most significant.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

const R2: f64 = std::f64::consts::SQRT_2;

/// Nonzero entries `(row, col, value)` of basis element `idx` of `M_n^h`.
pub fn basis_entries(n: usize, idx: usize) -> Vec<(usize, usize, Complex64)> {
    let (j, k) = (idx / n, idx % n);
    let h = 1.0 / R2;
    if j == k {
        vec![(j, j, Complex64::new(1.0, 0.0))]
    } else if j < k {
        vec![(j, k, Complex64::new(h, 0.0)), (k, j, Complex64::new(h, 0.0))]
    } else {
        // p = k < q = j: i(E_pq - E_qp)/√2
        let (p, q) = (k, j);
        vec![(p, q, Complex64::new(0.0, h)), (q, p, Complex64::new(0.0, -h))]
    }
}

pub fn basis_matrix(n: usize, idx: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(n, n);
    for (r, c, v) in basis_entries(n, idx) {
        m[(r, c)] = v;
    }
    m
}

/// Human-readable name of basis element `idx` of `M_n^h` (1-based matrix units).
pub fn basis_label(n: usize, idx: usize) -> String {
    let (j, k) = (idx / n, idx % n);
    if j == k {
        format!("E{}{}", j + 1, j + 1)
    } else if j < k {
        format!("(E{a}{b}+E{b}{a})/√2", a = j + 1, b = k + 1)
    } else {
        format!("i(E{a}{b}-E{b}{a})/√2", a = k + 1, b = j + 1)
    }
}

/// `+1` on symmetric elements, `-1` on antisymmetric ones: entrywise complex conjugation
/// in coordinates.
pub fn conjugation_signs(n: usize) -> Vec<f64> {
    (0..n * n).map(|idx| if idx / n > idx % n { -1.0 } else { 1.0 }).collect()
}

/// Coordinates of `E_n`.
pub fn identity_coords(n: usize) -> DVector<f64> {
    DVector::from_fn(n * n, |idx, _| if idx / n == idx % n { 1.0 } else { 0.0 })
}

fn check_square(m: &DMatrix<Complex64>, dims: &[usize]) -> Result<usize> {
    let total: usize = dims.iter().product();
    if m.nrows() != total || m.ncols() != total {
        return Err(Error::Dimension(format!("matrix is {}x{}, dims give {total}", m.nrows(), m.ncols())));
    }
    Ok(total)
}

/// Matrix entries of basis element `idx` of the product space.
fn product_entries(dims: &[usize], idx: usize) -> Vec<(usize, usize, Complex64)> {
    let mut digits = vec![0; dims.len()];
    let mut rest = idx;
    for k in (0..dims.len()).rev() {
        digits[k] = rest % (dims[k] * dims[k]);
        rest /= dims[k] * dims[k];
    }
    let mut acc = vec![(0usize, 0usize, Complex64::new(1.0, 0.0))];
    for (k, &n) in dims.iter().enumerate() {
        let es = basis_entries(n, digits[k]);
        acc = acc
            .iter()
            .flat_map(|&(r, c, v)| es.iter().map(move |&(r2, c2, v2)| (r * n + r2, c * n + c2, v * v2)))
            .collect();
    }
    acc
}

/// Coordinates `Tr(B_idx M)` of a hermitian matrix on `⊗ C^{dims[k]}`.
pub fn to_coords(m: &DMatrix<Complex64>, dims: &[usize]) -> Result<DVector<f64>> {
    let total = check_square(m, dims)?;
    Ok(DVector::from_fn(total * total, |idx, _| {
        product_entries(dims, idx).iter().map(|&(r, c, v)| (v * m[(c, r)]).re).sum()
    }))
}

pub fn from_coords(v: &DVector<f64>, dims: &[usize]) -> Result<DMatrix<Complex64>> {
    let total: usize = dims.iter().product();
    if v.len() != total * total {
        return Err(Error::Dimension(format!("{} coordinates for a {total}x{total} matrix", v.len())));
    }
    let mut m = DMatrix::zeros(total, total);
    for idx in 0..v.len() {
        if v[idx] != 0.0 {
            for (r, c, x) in product_entries(dims, idx) {
                m[(r, c)] += x * v[idx];
            }
        }
    }
    Ok(m)
}
