//! Recursive decomposition of a type function into chain types, and its inverse.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::chains::free_of;
use super::{build_poset, factor_dual_product, factor_product, p0, strip_chain_bottom, strip_chain_top};
use crate::boolfun::{mask_elems, mask_from, BoolFun, Mask};
use crate::error::{Error, Result};
use crate::perm::{self, Perm};
use crate::typealg::{causal, chain_type};

/// Certificate for a type function. Every node with a `perm` reconstructs as
/// `permute(combination of children, perm)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionTree {
    /// Chain type `sum_i (-1)^i p_{S_i}`.
    Chain { n: usize, chain: Vec<Mask> },
    Star(Box<DecompositionTree>),
    Tensor { children: Vec<DecompositionTree>, perm: Perm },
    Causal { left: Box<DecompositionTree>, right: Box<DecompositionTree>, perm: Perm },
}

use DecompositionTree as T;

impl DecompositionTree {
    pub fn n(&self) -> usize {
        match self {
            T::Chain { n, .. } => *n,
            T::Star(c) => c.n(),
            T::Tensor { children, .. } => children.iter().map(|c| c.n()).sum(),
            T::Causal { left, right, .. } => left.n() + right.n(),
        }
    }

    pub fn reconstruct(&self) -> Result<BoolFun> {
        match self {
            T::Chain { n, chain } => chain_type(*n, chain),
            T::Star(c) => Ok(c.reconstruct()?.star()),
            T::Tensor { children, perm } => {
                let mut acc = children[0].reconstruct()?;
                for c in &children[1..] {
                    acc = acc.tensor(&c.reconstruct()?)?;
                }
                acc.permute(perm)
            }
            T::Causal { left, right, perm } => causal(&left.reconstruct()?, &right.reconstruct()?)?.permute(perm),
        }
    }

    /// Chain leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<&DecompositionTree> {
        match self {
            T::Chain { .. } => vec![self],
            T::Star(c) => c.leaves(),
            T::Tensor { children, .. } => children.iter().flat_map(|c| c.leaves()).collect(),
            T::Causal { left, right, .. } => {
                let mut v = left.leaves();
                v.extend(right.leaves());
                v
            }
        }
    }

    fn leaf(f: &BoolFun) -> Result<DecompositionTree> {
        let p = build_poset(f);
        if !p.is_chain() {
            return Err(Error::NotAType("chain factor expected".into()));
        }
        Ok(T::Chain { n: f.n(), chain: p.nodes.iter().map(|x| x.subset).collect() })
    }
}

impl fmt::Display for DecompositionTree {
    /// Shape such as `Causal(Chain[1;1], Chain[2;3])`: arity and chain length of each leaf.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            T::Chain { n, chain } => write!(f, "Chain[{n};{}]", chain.len()),
            T::Star(c) => write!(f, "Star({c})"),
            T::Tensor { children, .. } => {
                write!(f, "Tensor(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            T::Causal { left, right, .. } => write!(f, "Causal({left}, {right})"),
        }
    }
}

pub fn decompose(f: &BoolFun) -> Result<DecompositionTree> {
    let tree = decompose_rec(f)?;
    if tree.reconstruct()? != *f {
        return Err(Error::NotAType("reconstruction mismatch".into()));
    }
    Ok(tree)
}

fn decompose_rec(f: &BoolFun) -> Result<DecompositionTree> {
    let p = build_poset(f);
    if let Some(reason) = p.flags.failure() {
        return Err(Error::NotAType(reason));
    }
    if p.is_chain() {
        return DecompositionTree::leaf(f);
    }
    let (inp, out) = free_of(&p);
    let (inp_s, out_s) = free_of(&build_poset(&f.star()));
    if out | out_s != 0 {
        let s = strip_chain_top(f).map_err(|e| Error::NotAType(format!("top chain stripping failed: {e}")))?;
        return Ok(T::Causal {
            left: Box::new(decompose_rec(&s.left)?),
            right: Box::new(DecompositionTree::leaf(&s.right)?),
            perm: s.perm,
        });
    }
    if inp | inp_s != 0 {
        let s = strip_chain_bottom(f).map_err(|e| Error::NotAType(format!("bottom chain stripping failed: {e}")))?;
        return Ok(T::Causal {
            left: Box::new(DecompositionTree::leaf(&s.left)?),
            right: Box::new(decompose_rec(&s.right)?),
            perm: s.perm,
        });
    }
    if p.contains(0) {
        return Ok(T::Star(Box::new(decompose_rec(&f.star())?)));
    }
    if p0(&p).independent_components().len() > 1 {
        let d = factor_dual_product(f).map_err(|e| Error::NotAType(format!("component factoring failed: {e}")))?;
        let children = d.factors.iter().map(decompose_child).collect::<Result<Vec<_>>>()?;
        return Ok(T::Star(Box::new(T::Tensor { children, perm: d.perm })));
    }
    let pr = factor_product(f).map_err(|e| Error::NotAType(format!("product coloring failed: {e}")))?;
    let children = pr.factors.iter().map(decompose_child).collect::<Result<Vec<_>>>()?;
    Ok(T::Tensor { children, perm: pr.perm })
}

fn decompose_child(f: &BoolFun) -> Result<DecompositionTree> {
    decompose_rec(f).map_err(|e| match e {
        Error::NotAType(r) => Error::NotAType(format!("component factoring produced non-type factor ({r})")),
        other => other,
    })
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum TreeJson {
    Chain { n: usize, subsets: Vec<Vec<usize>> },
    Star(Box<TreeJson>),
    Tensor { children: Vec<TreeJson>, perm: Vec<usize> },
    Causal { left: Box<TreeJson>, right: Box<TreeJson>, perm: Vec<usize> },
}

impl From<&DecompositionTree> for TreeJson {
    fn from(t: &DecompositionTree) -> Self {
        match t {
            T::Chain { n, chain } => TreeJson::Chain { n: *n, subsets: chain.iter().map(|&m| mask_elems(m)).collect() },
            T::Star(c) => TreeJson::Star(Box::new(c.as_ref().into())),
            T::Tensor { children, perm } => {
                TreeJson::Tensor { children: children.iter().map(Into::into).collect(), perm: perm.clone() }
            }
            T::Causal { left, right, perm } => TreeJson::Causal {
                left: Box::new(left.as_ref().into()),
                right: Box::new(right.as_ref().into()),
                perm: perm.clone(),
            },
        }
    }
}

impl TryFrom<TreeJson> for DecompositionTree {
    type Error = Error;

    fn try_from(t: TreeJson) -> Result<Self> {
        Ok(match t {
            TreeJson::Chain { n, subsets } => {
                if subsets.iter().flatten().any(|&i| i == 0 || i > n) {
                    return Err(Error::Parse(format!("chain subset outside [{n}]")));
                }
                T::Chain { n, chain: subsets.iter().map(|s| mask_from(s)).collect() }
            }
            TreeJson::Star(c) => T::Star(Box::new((*c).try_into()?)),
            TreeJson::Tensor { children, perm } => {
                perm::check(&perm)?;
                let children = children.into_iter().map(TryInto::try_into).collect::<Result<Vec<_>>>()?;
                if children.is_empty() {
                    return Err(Error::Parse("tensor node without children".into()));
                }
                T::Tensor { children, perm }
            }
            TreeJson::Causal { left, right, perm } => {
                perm::check(&perm)?;
                T::Causal { left: Box::new((*left).try_into()?), right: Box::new((*right).try_into()?), perm }
            }
        })
    }
}

impl Serialize for DecompositionTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TreeJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DecompositionTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = TreeJson::deserialize(d)?;
        t.try_into().map_err(serde::de::Error::custom)
    }
}
