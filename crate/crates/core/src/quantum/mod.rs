//! First-order quantum and classical objects, the subspaces `S_f` and `A_f`, internal homs of
//! quantum objects, the comb recursion and channel membership.

mod channel;
mod comb;
pub mod herm;

pub use channel::{
    channel_space, choi_coords, choi_matrix, is_channel_member, psd_min_eig, random_cptp, random_kraus,
};
pub use comb::{comb_oracle, CombSpace};

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::boolfun::BoolFun;
use crate::error::{Error, Result};
use crate::linal::{aff_dual, aff_tensor, AffSpace, Subspace, EQ_TOL, MAX_DIM};
use crate::typealg::{expr_to_type, TypeExpr};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// `M_n^h`.
    Quantum(usize),
    /// `R^k`.
    Classical(usize),
}

/// First-order object `{a : Tr a = c}` (quantum) or `{x : sum x = c}` (classical).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FirstOrderObj {
    pub kind: Kind,
    pub c: f64,
}

impl FirstOrderObj {
    pub fn quantum(n: usize, c: f64) -> FirstOrderObj {
        FirstOrderObj { kind: Kind::Quantum(n), c }
    }

    pub fn classical(k: usize, c: f64) -> FirstOrderObj {
        FirstOrderObj { kind: Kind::Classical(k), c }
    }

    /// Density matrices of `C^n`.
    pub fn state(n: usize) -> FirstOrderObj {
        FirstOrderObj::quantum(n, 1.0)
    }

    /// Local dimension `n` or number of levels `k`.
    pub fn levels(&self) -> usize {
        match self.kind {
            Kind::Quantum(n) | Kind::Classical(n) => n,
        }
    }

    /// Real dimension `D` of the carrier space.
    pub fn dim(&self) -> usize {
        match self.kind {
            Kind::Quantum(n) => n * n,
            Kind::Classical(k) => k,
        }
    }

    /// Coordinates of `E_n` or `e_k = (1, ..., 1)`.
    pub fn unit(&self) -> DVector<f64> {
        match self.kind {
            Kind::Quantum(n) => herm::identity_coords(n),
            Kind::Classical(k) => DVector::from_element(k, 1.0),
        }
    }

    /// `a = (c / n) E`.
    pub fn a(&self) -> DVector<f64> {
        self.unit() * (self.c / self.levels() as f64)
    }

    /// `ã = E / c`.
    pub fn a_tilde(&self) -> DVector<f64> {
        self.unit() / self.c
    }

    /// Conjugate object: `c ↦ n / c`.
    pub fn conjugate(&self) -> FirstOrderObj {
        FirstOrderObj { kind: self.kind, c: self.levels() as f64 / self.c }
    }

    pub fn affine(&self) -> AffSpace {
        AffSpace::hyperplane(&self.a_tilde()).expect("nonzero functional")
    }

    /// `L_0 = R a`.
    pub fn l0(&self) -> Subspace {
        let u = self.unit();
        let u = &u / u.norm();
        Subspace::from_orthonormal(DMatrix::from_column_slice(u.len(), 1, u.as_slice()))
    }

    /// `L_1 = {ã}^⊥`, spanned by off-diagonal units and traceless diagonal vectors.
    pub fn l1(&self) -> Subspace {
        let (d, diag): (usize, Vec<usize>) = match self.kind {
            Kind::Quantum(n) => (n * n, (0..n).map(|j| j * n + j).collect()),
            Kind::Classical(k) => (k, (0..k).collect()),
        };
        let m = diag.len();
        let mut basis = DMatrix::zeros(d, d - 1);
        let mut col = 0;
        for idx in 0..d {
            if !diag.contains(&idx) {
                basis[(idx, col)] = 1.0;
                col += 1;
            }
        }
        for k in 1..m {
            let s = ((k * (k + 1)) as f64).sqrt();
            for &i in &diag[..k] {
                basis[(i, col)] = 1.0 / s;
            }
            basis[(diag[k], col)] = -(k as f64) / s;
            col += 1;
        }
        Subspace::from_orthonormal(basis)
    }

    /// `L_u` for `u` in `{0, 1}`.
    pub fn l(&self, u: bool) -> Subspace {
        if u {
            self.l1()
        } else {
            self.l0()
        }
    }
}

fn total_dim(objs: &[FirstOrderObj]) -> Result<usize> {
    let d = objs.iter().try_fold(1usize, |acc, o| acc.checked_mul(o.dim()).filter(|&x| x <= MAX_DIM));
    d.ok_or_else(|| Error::Dimension(format!("total dimension exceeds {MAX_DIM}")))
}

fn check_arity(f: &BoolFun, objs: &[FirstOrderObj]) -> Result<()> {
    if objs.len() != f.n() {
        return Err(Error::ArityMismatch(f.n(), objs.len()));
    }
    Ok(())
}

/// `L_s = L_{1,s_1} ⊗ ... ⊗ L_{n,s_n}`.
pub fn l_s(objs: &[FirstOrderObj], idx: usize) -> Subspace {
    let mut acc = objs[0].l(idx & 1 != 0);
    for (i, o) in objs.iter().enumerate().skip(1) {
        acc = acc.tensor(&o.l(idx >> i & 1 != 0));
    }
    acc
}

fn sum_of_l(objs: &[FirstOrderObj], mut keep: impl FnMut(usize) -> bool) -> Result<Subspace> {
    let d = total_dim(objs)?;
    let parts: Vec<Subspace> = (0..1usize << objs.len()).filter(|&s| keep(s)).map(|s| l_s(objs, s)).collect();
    if parts.is_empty() {
        return Ok(Subspace::zero(d));
    }
    Ok(Subspace::direct_sum(&parts.iter().collect::<Vec<_>>()))
}

/// `a = a_1 ⊗ ... ⊗ a_n`.
pub fn base_point(objs: &[FirstOrderObj]) -> DVector<f64> {
    objs[1..].iter().fold(objs[0].a(), |acc, o| acc.kronecker(&o.a()))
}

/// `E = e_1 ⊗ ... ⊗ e_n`.
pub fn unit(objs: &[FirstOrderObj]) -> DVector<f64> {
    objs[1..].iter().fold(objs[0].unit(), |acc, o| acc.kronecker(&o.unit()))
}

/// `S_f = sum_{f(s)=1} L_s` and `A_f = S_f ∩ {ã}*`.
pub fn build_sf(f: &BoolFun, objs: &[FirstOrderObj]) -> Result<(Subspace, AffSpace)> {
    check_arity(f, objs)?;
    let s = sum_of_l(objs, |s| f.get(s))?;
    let lin = sum_of_l(objs, |s| s != 0 && f.get(s))?;
    Ok((s, AffSpace::new(base_point(objs), lin, 0.0)?))
}

/// `S_f^⊥ = sum_{f(s)=0} L_s`; the `L_s` are mutually orthogonal for these objects.
pub fn sf_complement(f: &BoolFun, objs: &[FirstOrderObj]) -> Result<Subspace> {
    check_arity(f, objs)?;
    sum_of_l(objs, |s| !f.get(s))
}

/// `dim S_f = sum_{f(s)=1} prod_{s_i=1} (D_i - 1)`.
pub fn sf_dim(f: &BoolFun, objs: &[FirstOrderObj]) -> usize {
    f.minterms()
        .iter()
        .map(|&s| objs.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).map(|(_, o)| o.dim() - 1).product::<usize>())
        .sum()
}

/// Evaluate an expression with affine duals and tensors. Leaf `i` stands for `X_i` when it
/// is an output and for its conjugate when it is an input; the result is laid out in index
/// order and equals `A_f(X_1, ..., X_n)` for the expression's type function `f`.
pub fn object_from_expr(e: &TypeExpr, objs: &[FirstOrderObj]) -> Result<AffSpace> {
    let (f, io) = expr_to_type(e)?;
    check_arity(&f, objs)?;
    total_dim(objs)?;
    fn eval(e: &TypeExpr, objs: &[FirstOrderObj], outputs: u32) -> Result<AffSpace> {
        match e {
            TypeExpr::Leaf(i) => {
                let o = objs[i - 1];
                let y = if outputs >> (i - 1) & 1 == 1 { o } else { o.conjugate() };
                Ok(y.affine())
            }
            TypeExpr::Dual(c) => aff_dual(&eval(c, objs, outputs)?),
            TypeExpr::Tensor(a, b) => aff_tensor(&eval(a, objs, outputs)?, &eval(b, objs, outputs)?),
        }
    }
    let raw = eval(e, objs, io.outputs)?;
    let leaves = e.leaves();
    let dims: Vec<usize> = leaves.iter().map(|&i| objs[i - 1].dim()).collect();
    let mut order = vec![0; leaves.len()];
    for (pos, &i) in leaves.iter().enumerate() {
        order[i - 1] = pos;
    }
    Ok(raw.permute_factors(&dims, &order))
}

/// Quantum object `{a in S : Tr a = c}` on `⊗_k M_{dims[k]}^h`, in product coordinates.
#[derive(Clone, Debug)]
pub struct QuantumObj {
    pub dims: Vec<usize>,
    pub s: Subspace,
    pub c: f64,
}

impl QuantumObj {
    pub fn first_order(n: usize, c: f64) -> QuantumObj {
        QuantumObj { dims: vec![n], s: Subspace::full(n * n), c }
    }

    /// Total matrix size `prod dims`.
    pub fn n(&self) -> usize {
        self.dims.iter().product()
    }

    fn identity(&self) -> DVector<f64> {
        self.dims.iter().fold(DVector::from_element(1, 1.0), |acc, &d| {
            crate::linal::kron(&acc, &herm::identity_coords(d))
        })
    }

    fn e_line(&self) -> Subspace {
        let e = self.identity();
        Subspace::from_vectors(e.len(), &[e])
    }

    /// `L = S ∩ E^⊥`.
    pub fn lin(&self) -> Subspace {
        let e = self.e_line();
        let p = e.basis().column(0).into_owned();
        let gens = self.s.basis() - &p * (p.transpose() * self.s.basis());
        Subspace::span(&gens, crate::linal::RANK_TOL)
    }

    /// `S* = S^⊥ ⊕ R E`, `c* = n / c`.
    pub fn dual(&self) -> QuantumObj {
        let s = Subspace::direct_sum(&[&self.s.complement(), &self.e_line()]);
        QuantumObj { dims: self.dims.clone(), s, c: self.n() as f64 / self.c }
    }

    pub fn tensor(&self, other: &QuantumObj) -> QuantumObj {
        let dims = self.dims.iter().chain(&other.dims).copied().collect();
        QuantumObj { dims, s: self.s.tensor(&other.s), c: self.c * other.c }
    }

    pub fn affine(&self) -> Result<AffSpace> {
        AffSpace::new(self.identity() * (self.c / self.n() as f64), self.lin(), 0.0)
    }
}

/// `S_{X⊸Y} = (S_X^⊥ ⊗ M_m^h) ⊕ (S_X ⊗ L_Y) ⊕ R E`, `c = n c_Y / c_X`.
pub fn hom_q(x: &QuantumObj, y: &QuantumObj) -> QuantumObj {
    let m2 = y.s.ambient();
    let dims: Vec<usize> = x.dims.iter().chain(&y.dims).copied().collect();
    let e = QuantumObj { dims: dims.clone(), s: Subspace::zero(0), c: 1.0 }.e_line();
    let s = Subspace::direct_sum(&[
        &x.s.complement().tensor(&Subspace::full(m2)),
        &x.s.tensor(&y.lin()),
        &e,
    ]);
    QuantumObj { dims, s, c: x.n() as f64 * y.c / x.c }
}

/// Distances for the lattice identities of `S_f`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct LatticeReport {
    /// `S_{f∧g}` vs `S_f ∩ S_g`.
    pub meet: f64,
    /// `S_{f∨g}` vs `S_f + S_g`.
    pub join: f64,
    /// `S_{f*}` vs `S_f^⊥ ⊕ R E`.
    pub star: f64,
}

impl LatticeReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.meet <= tol && self.join <= tol && self.star <= tol
    }

    pub fn violations(&self, tol: f64) -> Vec<&'static str> {
        [("meet", self.meet), ("join", self.join), ("star", self.star)]
            .into_iter()
            .filter(|&(_, d)| d > tol)
            .map(|(n, _)| n)
            .collect()
    }
}

/// Subspaces are compared by projector distance; a dimension mismatch counts as infinite.
pub fn projector_lattice_check(f: &BoolFun, g: &BoolFun, objs: &[FirstOrderObj]) -> Result<LatticeReport> {
    let (sf, _) = build_sf(f, objs)?;
    let (sg, _) = build_sf(g, objs)?;
    let dist = |a: &Subspace, b: &Subspace| if a.dim() == b.dim() { a.distance(b) } else { f64::INFINITY };
    let (meet, _) = build_sf(&f.meet(g)?, objs)?;
    let (join, _) = build_sf(&f.join(g)?, objs)?;
    let (star, _) = build_sf(&f.star(), objs)?;
    let e = unit(objs);
    let e_line = Subspace::from_orthonormal(DMatrix::from_column_slice(e.len(), 1, (&e / e.norm()).as_slice()));
    Ok(LatticeReport {
        meet: dist(&meet, &sf.intersect(&sg, EQ_TOL)),
        join: dist(&join, &sf.sum(&sg)),
        star: dist(&star, &sf.complement().sum(&e_line)),
    })
}
