//! Type functions: causal products, chain types, input/output sets, membership and
//! normal forms.

mod enumerate;
mod expr;
mod structure;

pub use enumerate::{enum_cap, enumerate_types, enumerate_types_capped, TypeSet, DEFAULT_ENUM_CAP};
pub use expr::{expr_to_type, parse_expr, TypeExpr};
pub use structure::{structure_form, StructureForm};

use serde::{Deserialize, Serialize};

use crate::boolfun::{full_mask, mask_elems, mask_from, BoolFun, Mask};
use crate::error::{Error, Result};
use crate::mobius::{from_mobius, mobius_dense, MobiusCoeffs};
use crate::poset::{decompose, DecompositionTree};

/// Output and input sets of a type function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IOSets {
    pub outputs: Mask,
    pub inputs: Mask,
}

impl IOSets {
    pub fn swapped(self) -> IOSets {
        IOSets { outputs: self.inputs, inputs: self.outputs }
    }
}

#[derive(Serialize, Deserialize)]
struct IOJson {
    outputs: Vec<usize>,
    inputs: Vec<usize>,
}

impl Serialize for IOSets {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IOJson { outputs: mask_elems(self.outputs), inputs: mask_elems(self.inputs) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IOSets {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = IOJson::deserialize(d)?;
        Ok(IOSets { outputs: mask_from(&j.outputs), inputs: mask_from(&j.inputs) })
    }
}

/// `O = {j : f(e^j) = 1}`, `I` its complement.
pub fn io_sets(f: &BoolFun) -> IOSets {
    let outputs = f.unit_vector_ones();
    IOSets { outputs, inputs: full_mask(f.n()) & !outputs }
}

/// `p_I <= f <= p_O*` pointwise.
pub fn subtype_bounds(f: &BoolFun, io: IOSets) -> bool {
    let n = f.n();
    let (Ok(lo), Ok(hi)) = (BoolFun::make_p(n, io.inputs), BoolFun::make_p(n, io.outputs)) else {
        return false;
    };
    lo.le(f).unwrap_or(false) && f.le(&hi.star()).unwrap_or(false)
}

/// `f ◁ g`: equals `f(s1)` unless `s1` is the zero string, then `g(s2)`. `f` sits on the low
/// indices.
pub fn causal(f: &BoolFun, g: &BoolFun) -> Result<BoolFun> {
    let n1 = f.n();
    let low = (1usize << n1) - 1;
    BoolFun::from_fn(n1 + g.n(), |idx| if idx & low != 0 { f.get(idx & low) } else { g.get(idx >> n1) })
}

/// `g ◁ f` with `f` still on the low indices.
pub fn causal_rev(f: &BoolFun, g: &BoolFun) -> Result<BoolFun> {
    let n1 = f.n();
    let low = (1usize << n1) - 1;
    BoolFun::from_fn(n1 + g.n(), |idx| if idx >> n1 != 0 { g.get(idx >> n1) } else { f.get(idx & low) })
}

/// Chain type `sum_i (-1)^i p_{S_i}` of a chain `S_0 ⊊ S_1 ⊊ ...`.
pub fn chain_type(n: usize, chain: &[Mask]) -> Result<BoolFun> {
    if chain.windows(2).any(|w| w[0] & !w[1] != 0 || w[0] == w[1]) {
        return Err(Error::Precondition("subsets do not form a strict chain".into()));
    }
    let coeffs = chain
        .iter()
        .enumerate()
        .map(|(i, &s)| (s, if i % 2 == 0 { 1 } else { -1 }))
        .collect();
    from_mobius(&MobiusCoeffs { n, coeffs })
}

/// `γ_n`: the chain type of `∅ ⊊ {1} ⊊ ... ⊊ [n]` (`n` even) or `{1} ⊊ ... ⊊ [n]` (`n` odd).
pub fn gamma(n: usize) -> Result<BoolFun> {
    if n == 0 {
        return Err(Error::EmptyArity);
    }
    let start = if n % 2 == 0 { 0 } else { 1 };
    let chain: Vec<Mask> = (start..=n).map(full_mask).collect();
    chain_type(n, &chain)
}

/// Answer of [`is_type`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes(DecompositionTree),
    No(String),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }
}

/// Membership in `T_n` with the default enumeration cap.
pub fn is_type(f: &BoolFun) -> Verdict {
    is_type_capped(f, enum_cap())
}

/// Membership in `T_n`. Decides by the decomposition procedure; when `n <= cap` the answer
/// is also checked against the enumerated set and a disagreement panics.
pub fn is_type_capped(f: &BoolFun, cap: usize) -> Verdict {
    let verdict = decide(f);
    if f.n() <= cap {
        if let Ok(set) = enumerate_types_capped(f.n(), cap) {
            assert_eq!(
                set.contains(f),
                verdict.is_yes(),
                "decomposition and enumeration disagree on {f:?}"
            );
        }
    }
    verdict
}

fn decide(f: &BoolFun) -> Verdict {
    let dense = mobius_dense(f);
    if let Some((s, c)) = dense.iter().enumerate().find(|(_, c)| c.abs() > 1) {
        return Verdict::No(format!("Möbius coefficient {c} at {}", crate::boolfun::fmt_mask(s as Mask)));
    }
    if let Some(reason) = crate::poset::build_poset(f).flags.failure() {
        return Verdict::No(reason);
    }
    if !subtype_bounds(f, io_sets(f)) {
        return Verdict::No("subtype bounds p_I <= f <= p_O* fail".into());
    }
    match decompose(f) {
        Ok(t) => Verdict::Yes(t),
        Err(Error::NotAType(r)) => Verdict::No(r),
        Err(e) => Verdict::No(e.to_string()),
    }
}
