//! Affine subspaces of `R^D`: duals, tensor products, internal homs and the subspace lattice.
//!
//! `V*` is identified with `V` through the standard inner product, so annihilators are
//! orthogonal complements. Subspaces always carry an orthonormal basis.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Residual-to-norm ratio below which a vector counts as dependent.
pub const RANK_TOL: f64 = 1e-9;
/// Projector Frobenius distance below which two subspaces are equal.
pub const EQ_TOL: f64 = 1e-8;
pub const MAX_DIM: usize = 4096;

fn check_dim(d: usize) -> Result<()> {
    if d > MAX_DIM {
        return Err(Error::Dimension(format!("ambient dimension {d} exceeds {MAX_DIM}")));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Subspace {
    /// `D x d`, orthonormal columns.
    basis: DMatrix<f64>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace { basis: DMatrix::zeros(ambient, 0) }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace { basis: DMatrix::identity(ambient, ambient) }
    }

    /// Wrap columns that are already orthonormal.
    pub fn from_orthonormal(basis: DMatrix<f64>) -> Subspace {
        debug_assert!({
            let g = basis.transpose() * &basis;
            (g - DMatrix::identity(basis.ncols(), basis.ncols())).norm() < 1e-8
        });
        Subspace { basis }
    }

    /// Span of the columns of `gens`.
    pub fn span(gens: &DMatrix<f64>, rank_tol: f64) -> Subspace {
        let floor = gens.column_iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut gs = Gram::new(gens.nrows(), floor);
        for c in gens.column_iter() {
            gs.push(&c.into_owned(), rank_tol);
        }
        gs.finish()
    }

    pub fn from_vectors(ambient: usize, vs: &[DVector<f64>]) -> Subspace {
        let mut gs = Gram::new(ambient, vs.iter().map(|v| v.norm()).fold(0.0, f64::max));
        for v in vs {
            gs.push(v, RANK_TOL);
        }
        gs.finish()
    }

    pub fn ambient(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn project(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.basis * (self.basis.tr_mul(v))
    }

    /// Component of `v` orthogonal to the subspace.
    pub fn residual(&self, v: &DVector<f64>) -> DVector<f64> {
        let r = v - self.project(v);
        &r - self.project(&r)
    }

    pub fn contains(&self, v: &DVector<f64>, tol: f64) -> bool {
        self.residual(v).norm() <= tol * (1.0 + v.norm())
    }

    pub fn projector(&self) -> DMatrix<f64> {
        &self.basis * self.basis.transpose()
    }

    /// `S ⊗ T` with the first factor most significant.
    pub fn tensor(&self, other: &Subspace) -> Subspace {
        Subspace { basis: self.basis.kronecker(&other.basis) }
    }

    /// Orthogonal direct sum of subspaces known to be mutually orthogonal.
    pub fn direct_sum(parts: &[&Subspace]) -> Subspace {
        let ambient = parts[0].ambient();
        let cols: usize = parts.iter().map(|p| p.dim()).sum();
        let mut basis = DMatrix::zeros(ambient, cols);
        let mut at = 0;
        for p in parts {
            basis.columns_mut(at, p.dim()).copy_from(&p.basis);
            at += p.dim();
        }
        Subspace::from_orthonormal(basis)
    }

    /// Orthogonal complement, from the full Householder factor of the basis.
    pub fn complement(&self) -> Subspace {
        let (n, d) = self.basis.shape();
        if d == 0 {
            return Subspace::full(n);
        }
        let qr = self.basis.clone().qr();
        let mut qt = DMatrix::identity(n, n);
        qr.q_tr_mul(&mut qt);
        // rows of Q^T beyond d span the complement
        let rest = qt.rows(d, n - d).transpose();
        Subspace { basis: rest }
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut gs = Gram::from_orthonormal(&self.basis);
        for c in other.basis.column_iter() {
            gs.push(&c.into_owned(), RANK_TOL);
        }
        gs.finish()
    }

    /// `S ∩ T`: directions of `S` whose distance to `T` is at most `tol`.
    pub fn intersect(&self, other: &Subspace, tol: f64) -> Subspace {
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient());
        }
        let proj = &other.basis * other.basis.tr_mul(&self.basis);
        let r = &self.basis - proj;
        let svd = r.svd(false, true);
        let v_t = svd.v_t.expect("right singular vectors");
        let keep: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] <= tol).collect();
        let mut gens = DMatrix::zeros(self.ambient(), keep.len());
        for (j, &i) in keep.iter().enumerate() {
            gens.set_column(j, &(&self.basis * v_t.row(i).transpose()));
        }
        Subspace::span(&gens, RANK_TOL)
    }

    /// Frobenius distance `‖P_S - P_T‖`, computed as
    /// `sqrt(‖(I - P_T) Q_S‖² + ‖(I - P_S) Q_T‖²)`.
    pub fn distance(&self, other: &Subspace) -> f64 {
        let a = &self.basis - &other.basis * other.basis.tr_mul(&self.basis);
        let b = &other.basis - &self.basis * self.basis.tr_mul(&other.basis);
        (a.norm_squared() + b.norm_squared()).sqrt()
    }

    pub fn equals(&self, other: &Subspace, tol: f64) -> bool {
        self.ambient() == other.ambient() && self.dim() == other.dim() && self.distance(other) <= tol
    }

    /// Reorder tensor factors: factor `j` of the result is factor `order[j]` of `self`.
    pub fn permute_factors(&self, dims: &[usize], order: &[usize]) -> Subspace {
        let map = factor_map(dims, order);
        let mut basis = DMatrix::zeros(self.ambient(), self.dim());
        for (old, &new) in map.iter().enumerate() {
            basis.row_mut(new).copy_from(&self.basis.row(old));
        }
        Subspace { basis }
    }
}

pub fn sub_intersect(s: &Subspace, t: &Subspace, tol: f64) -> Subspace {
    s.intersect(t, tol)
}

pub fn sub_sum(s: &Subspace, t: &Subspace) -> Subspace {
    s.sum(t)
}

pub fn sub_complement(s: &Subspace) -> Subspace {
    s.complement()
}

pub fn sub_equal(s: &Subspace, t: &Subspace, tol: f64) -> bool {
    s.equals(t, tol)
}

/// Modified Gram-Schmidt with one reorthogonalization pass. A residual is dropped when it is
/// below `tol` times the larger of its input norm and `floor`.
struct Gram {
    ambient: usize,
    cols: Vec<DVector<f64>>,
    floor: f64,
}

impl Gram {
    fn new(ambient: usize, floor: f64) -> Gram {
        Gram { ambient, cols: Vec::new(), floor }
    }

    fn from_orthonormal(basis: &DMatrix<f64>) -> Gram {
        Gram { ambient: basis.nrows(), cols: basis.column_iter().map(|c| c.into_owned()).collect(), floor: 1.0 }
    }

    fn push(&mut self, v: &DVector<f64>, tol: f64) -> bool {
        let norm = v.norm();
        if norm == 0.0 {
            return false;
        }
        let mut r = v.clone();
        for _ in 0..2 {
            for q in &self.cols {
                let c = q.dot(&r);
                r.axpy(-c, q, 1.0);
            }
        }
        let rn = r.norm();
        if rn <= tol * norm.max(self.floor) {
            return false;
        }
        self.cols.push(r / rn);
        true
    }

    fn finish(self) -> Subspace {
        let basis = if self.cols.is_empty() {
            DMatrix::zeros(self.ambient, 0)
        } else {
            DMatrix::from_columns(&self.cols)
        };
        Subspace { basis }
    }
}

/// Old flat index to new flat index under a reordering of tensor factors (factor 0 most
/// significant).
pub fn factor_map(dims: &[usize], order: &[usize]) -> Vec<usize> {
    let total: usize = dims.iter().product();
    let new_dims: Vec<usize> = order.iter().map(|&o| dims[o]).collect();
    let mut out = vec![0; total];
    let mut digits = vec![0; dims.len()];
    for (idx, slot) in out.iter_mut().enumerate() {
        let mut rest = idx;
        for k in (0..dims.len()).rev() {
            digits[k] = rest % dims[k];
            rest /= dims[k];
        }
        let mut new = 0;
        for (j, &o) in order.iter().enumerate() {
            new = new * new_dims[j] + digits[o];
        }
        *slot = new;
    }
    out
}

pub fn permute_vector(v: &DVector<f64>, dims: &[usize], order: &[usize]) -> DVector<f64> {
    let map = factor_map(dims, order);
    let mut out = DVector::zeros(v.len());
    for (old, &new) in map.iter().enumerate() {
        out[new] = v[old];
    }
    out
}

pub fn kron(a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
    a.kronecker(b)
}

/// Proper affine subspace `a + L`, stored with `a ⊥ L`.
#[derive(Clone, Debug)]
pub struct AffSpace {
    base: DVector<f64>,
    lin: Subspace,
}

impl AffSpace {
    /// `a + L`; the base point is replaced by its component orthogonal to `L`.
    pub fn new(base: DVector<f64>, lin: Subspace, tol: f64) -> Result<AffSpace> {
        if base.len() != lin.ambient() {
            return Err(Error::Dimension(format!("base point in R^{} but L in R^{}", base.len(), lin.ambient())));
        }
        check_dim(base.len())?;
        let w = lin.residual(&base);
        if w.norm() <= tol {
            return Err(Error::Degenerate("affine subspace passes through 0".into()));
        }
        Ok(AffSpace { base: w, lin })
    }

    /// `{v : <dual, v> = 1}`.
    pub fn hyperplane(dual: &DVector<f64>) -> Result<AffSpace> {
        let n2 = dual.norm_squared();
        if n2 == 0.0 {
            return Err(Error::Degenerate("zero functional".into()));
        }
        let lin = Subspace::from_orthonormal(DMatrix::from_column_slice(dual.len(), 1, (dual / n2.sqrt()).as_slice()))
            .complement();
        Ok(AffSpace { base: dual / n2, lin })
    }

    /// The single point `{a}`.
    pub fn point(a: DVector<f64>) -> Result<AffSpace> {
        let n = a.len();
        AffSpace::new(a, Subspace::zero(n), 0.0)
    }

    pub fn ambient(&self) -> usize {
        self.base.len()
    }

    pub fn dim(&self) -> usize {
        self.lin.dim()
    }

    /// Base point, orthogonal to the direction space.
    pub fn base(&self) -> &DVector<f64> {
        &self.base
    }

    pub fn lin(&self) -> &Subspace {
        &self.lin
    }

    /// `Span(A) = L ⊕ R a`.
    pub fn span(&self) -> Subspace {
        let u = &self.base / self.base.norm();
        let mut basis = self.lin.basis.clone().insert_column(self.lin.dim(), 0.0);
        basis.set_column(self.lin.dim(), &u);
        Subspace::from_orthonormal(basis)
    }

    /// Canonical point of `A*`: `w / |w|²`.
    pub fn dual_point(&self) -> DVector<f64> {
        &self.base / self.base.norm_squared()
    }

    pub fn contains(&self, v: &DVector<f64>, tol: f64) -> bool {
        v.len() == self.ambient() && self.lin.residual(&(v - &self.base)).norm() <= tol * (1.0 + v.norm())
    }

    pub fn dual(&self) -> Result<AffSpace> {
        aff_dual(self)
    }

    /// Equal direction spaces and a shared point.
    pub fn distance(&self, other: &AffSpace) -> f64 {
        let d = self.lin.distance(&other.lin);
        let off = other.lin.residual(&(&self.base - &other.base)).norm();
        d + off
    }

    pub fn equals(&self, other: &AffSpace, tol: f64) -> bool {
        self.ambient() == other.ambient() && self.dim() == other.dim() && self.distance(other) <= tol
    }

    pub fn permute_factors(&self, dims: &[usize], order: &[usize]) -> AffSpace {
        AffSpace { base: permute_vector(&self.base, dims, order), lin: self.lin.permute_factors(dims, order) }
    }
}

/// `A* = {v : <v, x> = 1 for all x in A}` with direction `Span(A)^⊥`.
pub fn aff_dual(a: &AffSpace) -> Result<AffSpace> {
    let w = &a.base;
    if w.norm() <= RANK_TOL {
        return Err(Error::Degenerate("affine subspace is not proper".into()));
    }
    Ok(AffSpace { base: a.dual_point(), lin: a.span().complement() })
}

/// Affine span of `A ⊗ B`: base `a ⊗ b`, direction `(a⊗L_B) + (L_A⊗b) + (L_A⊗L_B)`.
pub fn aff_tensor(a: &AffSpace, b: &AffSpace) -> Result<AffSpace> {
    check_dim(a.ambient() * b.ambient())?;
    // with a ⊥ L_A and b ⊥ L_B the three summands are orthogonal
    let ua = Subspace::from_orthonormal(DMatrix::from_column_slice(a.ambient(), 1, (a.base() / a.base.norm()).as_slice()));
    let ub = Subspace::from_orthonormal(DMatrix::from_column_slice(b.ambient(), 1, (b.base() / b.base.norm()).as_slice()));
    let lin = Subspace::direct_sum(&[&ua.tensor(&b.lin), &a.lin.tensor(&ub), &a.lin.tensor(&b.lin)]);
    Ok(AffSpace { base: kron(&a.base, &b.base), lin })
}

/// `A ⊸ B = (A ⊗ B*)*` on `V_A ⊗ V_B`.
pub fn aff_hom(a: &AffSpace, b: &AffSpace) -> Result<AffSpace> {
    aff_dual(&aff_tensor(a, &aff_dual(b)?)?)
}

pub fn contains(a: &AffSpace, v: &DVector<f64>, tol: f64) -> bool {
    a.contains(v, tol)
}

/// `C_M = sum_i e_i ⊗ M e_i`: coordinate `i * D_B + j` holds `M[j, i]`.
pub fn choi(m: &DMatrix<f64>) -> DVector<f64> {
    let (rows, cols) = m.shape();
    DVector::from_fn(rows * cols, |k, _| m[(k % rows, k / rows)])
}

/// Whether `M(A) ⊆ B`, checked on the base point and the direction space.
pub fn morphism_check(m: &DMatrix<f64>, a: &AffSpace, b: &AffSpace, tol: f64) -> Result<bool> {
    if m.shape() != (b.ambient(), a.ambient()) {
        return Err(Error::Dimension(format!(
            "map is {}x{}, spaces need {}x{}",
            m.nrows(),
            m.ncols(),
            b.ambient(),
            a.ambient()
        )));
    }
    if !b.contains(&(m * a.base()), tol) {
        return Ok(false);
    }
    let image = m * a.lin.basis();
    Ok(image.column_iter().all(|c| {
        let c = c.into_owned();
        b.lin.residual(&c).norm() <= tol * (1.0 + c.norm())
    }))
}
