//! Comb spaces built from the nesting `Z ⊸ (X ⊸ Y)` over the tiers of a chain type,
//! without reference to `S_f`.
//!
//! For first-order `X`, `Y` and `w` in `V_Z ⊗ V_X ⊗ V_Y`, `w` lies in `A_{Z⊸(X⊸Y)}` iff
//! `(id ⊗ ã_Y)(w)` lies in `A_{(Z⊗X)*}`, whose span is `(S_Z^⊥ ⊗ V_X) ⊕ R(ẑ ⊗ ã_X)`.

use nalgebra::{DMatrix, DVector};

use super::FirstOrderObj;
use crate::boolfun::{mask_elems, BoolFun, Mask};
use crate::error::{Error, Result};
use crate::linal::{AffSpace, Subspace};
use crate::poset::chain_info;

/// Comb affine space together with the annihilator of its span.
#[derive(Clone, Debug)]
pub struct CombSpace {
    pub affine: AffSpace,
    pub annihilator: Subspace,
}

/// Affine space tracked as `base + lin` with `base ⊥ lin`, plus `Span^⊥`.
struct State {
    /// Original 0-based indices, one tensor factor each.
    indices: Vec<usize>,
    dims: Vec<usize>,
    lin: Subspace,
    base: DVector<f64>,
    perp: Subspace,
}

fn line(v: &DVector<f64>) -> Subspace {
    let u = v / v.norm();
    Subspace::from_orthonormal(DMatrix::from_column_slice(u.len(), 1, u.as_slice()))
}

impl State {
    fn unit() -> State {
        State {
            indices: vec![],
            dims: vec![],
            lin: Subspace::zero(1),
            base: DVector::from_element(1, 1.0),
            perp: Subspace::zero(1),
        }
    }

    fn ambient(&self) -> usize {
        self.base.len()
    }

    fn span(&self) -> Subspace {
        Subspace::direct_sum(&[&self.lin, &line(&self.base)])
    }

    fn tensor(&self, other: &State) -> State {
        let (ua, ub) = (line(&self.base), line(&other.base));
        let lin = Subspace::direct_sum(&[&ua.tensor(&other.lin), &self.lin.tensor(&ub), &self.lin.tensor(&other.lin)]);
        let perp = Subspace::direct_sum(&[
            &self.perp.tensor(&Subspace::full(other.ambient())),
            &self.span().tensor(&other.perp),
        ]);
        State {
            indices: self.indices.iter().chain(&other.indices).copied().collect(),
            dims: self.dims.iter().chain(&other.dims).copied().collect(),
            lin,
            base: self.base.kronecker(&other.base),
            perp,
        }
    }
}

/// First-order group `⊗_{i in tier} Y_i`.
struct Group {
    indices: Vec<usize>,
    dims: Vec<usize>,
    a_tilde: DVector<f64>,
}

impl Group {
    fn new(ys: &[FirstOrderObj], tier: Mask) -> Group {
        let indices: Vec<usize> = mask_elems(tier).iter().map(|i| i - 1).collect();
        let a_tilde = indices.iter().fold(DVector::from_element(1, 1.0), |acc, &i| acc.kronecker(&ys[i].a_tilde()));
        Group { dims: indices.iter().map(|&i| ys[i].dim()).collect(), indices, a_tilde }
    }

    fn ambient(&self) -> usize {
        self.a_tilde.len()
    }

    /// `{ã}*`.
    fn hyperplane(&self) -> State {
        let e = line(&self.a_tilde);
        State {
            indices: self.indices.clone(),
            dims: self.dims.clone(),
            lin: e.complement(),
            base: &self.a_tilde / self.a_tilde.norm_squared(),
            perp: Subspace::zero(self.ambient()),
        }
    }

    /// `{ã}`, the dual of the hyperplane.
    fn point(&self) -> State {
        let e = line(&self.a_tilde);
        State {
            indices: self.indices.clone(),
            dims: self.dims.clone(),
            lin: Subspace::zero(self.ambient()),
            base: self.a_tilde.clone(),
            perp: e.complement(),
        }
    }
}

/// `Z ⊸ (X ⊸ Y)` on `V_Z ⊗ V_X ⊗ V_Y`.
fn nest(z: &State, x: &Group, y: &Group) -> State {
    let zn = line(&z.base);
    let z_hat = &z.base / z.base.norm_squared();
    let (ex, ey) = (line(&x.a_tilde), line(&y.a_tilde));
    let (vz, vx) = (Subspace::full(z.ambient()), Subspace::full(x.ambient()));
    let lin = Subspace::direct_sum(&[&z.perp.tensor(&vx).tensor(&ey), &vz.tensor(&vx).tensor(&ey.complement())]);
    let base = z_hat.kronecker(&x.a_tilde).kronecker(&(&y.a_tilde / y.a_tilde.norm_squared()));
    let span_z = Subspace::direct_sum(&[&z.lin, &zn]);
    let perp = Subspace::direct_sum(&[&z.lin.tensor(&ex).tensor(&ey), &span_z.tensor(&ex.complement()).tensor(&ey)]);
    State {
        indices: z.indices.iter().chain(&x.indices).chain(&y.indices).copied().collect(),
        dims: z.dims.iter().chain(&x.dims).chain(&y.dims).copied().collect(),
        lin,
        base,
        perp,
    }
}

/// Comb space of a chain type over `X_1, ..., X_n`, laid out in index order.
///
/// With tiers `T_0, ..., T_N` of the chain, `T_0` enters as the point `{ã}` of its group,
/// `T_N` as its hyperplane, and the middle tiers nest as
/// `C(T_1..T_{N-1}) = C(T_2..T_{N-2}) ⊸ (T_{N-1} ⊸ T_1)`.
pub fn comb_oracle(f: &BoolFun, objs: &[FirstOrderObj]) -> Result<CombSpace> {
    if objs.len() != f.n() {
        return Err(Error::ArityMismatch(f.n(), objs.len()));
    }
    let c = chain_info(f)?;
    super::total_dim(objs)?;
    let ys: Vec<FirstOrderObj> =
        objs.iter().enumerate().map(|(i, o)| if c.outputs >> i & 1 == 1 { *o } else { o.conjugate() }).collect();
    let groups: Vec<Group> = c.tiers.iter().map(|&t| Group::new(&ys, t)).collect();
    let k = groups.len();
    let mut core = State::unit();
    // innermost pair first
    let pairs = (k - 2) / 2;
    for j in (0..pairs).rev() {
        core = nest(&core, &groups[k - 2 - j], &groups[1 + j]);
    }
    let mut st = State::unit();
    if !groups[0].indices.is_empty() {
        st = groups[0].point();
    }
    st = if st.indices.is_empty() { core } else { st.tensor(&core) };
    if !groups[k - 1].indices.is_empty() {
        st = st.tensor(&groups[k - 1].hyperplane());
    }
    let mut order = vec![0; st.indices.len()];
    for (pos, &i) in st.indices.iter().enumerate() {
        order[i] = pos;
    }
    let affine = AffSpace::new(st.base, st.lin, 0.0)?.permute_factors(&st.dims, &order);
    Ok(CombSpace { affine, annihilator: st.perp.permute_factors(&st.dims, &order) })
}
