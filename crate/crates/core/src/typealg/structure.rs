//! Normal form `f ≈ ∨_a ∧_b (β_{π(1)} ◁ ... ◁ β_{π(k)})` over chain types on fixed blocks.

use serde::{Deserialize, Serialize};

use super::{is_type, Verdict};
use crate::boolfun::BoolFun;
use crate::error::{Error, Result};
use crate::perm::{self, Perm};
use crate::poset::DecompositionTree;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureForm {
    /// Block sizes `n_1, ..., n_k`, blocks laid out consecutively.
    pub blocks: Vec<usize>,
    /// Chain type acting on each block.
    pub chains: Vec<BoolFun>,
    #[serde(rename = "A")]
    pub a: usize,
    #[serde(rename = "B")]
    pub b: usize,
    /// `perms[a][b]` lists block indices from first to last in the causal product.
    pub perms: Vec<Vec<Vec<usize>>>,
    /// Permutation taking the block layout to the original argument order.
    pub alignment: Perm,
}

impl StructureForm {
    fn leaf(beta: BoolFun) -> StructureForm {
        let n = beta.n();
        StructureForm { blocks: vec![n], chains: vec![beta], a: 1, b: 1, perms: vec![vec![vec![0]]], alignment: perm::identity(n) }
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().sum()
    }

    fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.blocks
            .iter()
            .map(|&s| {
                let o = acc;
                acc += s;
                o
            })
            .collect()
    }

    /// Value of one causal product at the string `idx` in block layout.
    fn chain_value(&self, order: &[usize], parts: &[usize]) -> bool {
        for &j in order {
            if parts[j] != 0 {
                return self.chains[j].get(parts[j]);
            }
        }
        true
    }

    fn parts(&self, idx: usize, offsets: &[usize]) -> Vec<usize> {
        self.blocks.iter().zip(offsets).map(|(&s, &o)| idx >> o & ((1 << s) - 1)).collect()
    }

    /// `∨_a ∧_b` in block layout.
    pub fn block_function(&self) -> Result<BoolFun> {
        let offsets = self.offsets();
        BoolFun::from_fn(self.n(), |idx| {
            let parts = self.parts(idx, &offsets);
            self.perms.iter().any(|row| row.iter().all(|o| self.chain_value(o, &parts)))
        })
    }

    /// `∧_b ∨_a` in block layout.
    pub fn block_function_dual_order(&self) -> Result<BoolFun> {
        let offsets = self.offsets();
        BoolFun::from_fn(self.n(), |idx| {
            let parts = self.parts(idx, &offsets);
            (0..self.b).all(|b| (0..self.a).any(|a| self.chain_value(&self.perms[a][b], &parts)))
        })
    }

    pub fn evaluate(&self) -> Result<BoolFun> {
        self.block_function()?.permute(&self.alignment)
    }

    pub fn evaluate_meet_join(&self) -> Result<BoolFun> {
        self.block_function_dual_order()?.permute(&self.alignment)
    }

    fn star(mut self) -> StructureForm {
        self.chains = self.chains.iter().map(BoolFun::star).collect();
        let perms = (0..self.b).map(|b| (0..self.a).map(|a| self.perms[a][b].clone()).collect()).collect();
        self.perms = perms;
        std::mem::swap(&mut self.a, &mut self.b);
        self
    }

    /// Blocks of `x` then `y`. Each entry of `sides` yields one causal order per pair of old
    /// orders: `true` puts the blocks of `x` first.
    fn combine(
        x: &StructureForm,
        y: &StructureForm,
        sides: &[bool],
        perm: &[usize],
    ) -> StructureForm {
        let k = x.blocks.len();
        let mut perms = Vec::with_capacity(x.a * y.a);
        for ra in &x.perms {
            for rc in &y.perms {
                let mut row = Vec::with_capacity(x.b * y.b * sides.len());
                for ob in ra {
                    for od in rc {
                        let shifted: Vec<usize> = od.iter().map(|j| j + k).collect();
                        for &x_first in sides {
                            let o: Vec<usize> = if x_first {
                                ob.iter().copied().chain(shifted.iter().copied()).collect()
                            } else {
                                shifted.iter().copied().chain(ob.iter().copied()).collect()
                            };
                            row.push(o);
                        }
                    }
                }
                perms.push(row);
            }
        }
        let inner = perm::direct_sum(&x.alignment, &y.alignment);
        StructureForm {
            blocks: x.blocks.iter().chain(&y.blocks).copied().collect(),
            chains: x.chains.iter().chain(&y.chains).cloned().collect(),
            a: x.a * y.a,
            b: x.b * y.b * sides.len(),
            perms,
            alignment: perm::compose(&inner, perm),
        }
    }

    pub fn from_tree(t: &DecompositionTree) -> Result<StructureForm> {
        Ok(match t {
            DecompositionTree::Chain { .. } => StructureForm::leaf(t.reconstruct()?),
            DecompositionTree::Star(c) => StructureForm::from_tree(c)?.star(),
            DecompositionTree::Tensor { children, perm } => {
                let mut acc = StructureForm::from_tree(&children[0])?;
                for c in &children[1..] {
                    let next = StructureForm::from_tree(c)?;
                    acc = StructureForm::combine(&acc, &next, &[true, false], &perm::identity(acc.n() + next.n()));
                }
                acc.alignment = perm::compose(&acc.alignment, perm);
                acc
            }
            DecompositionTree::Causal { left, right, perm } => {
                let x = StructureForm::from_tree(left)?;
                let y = StructureForm::from_tree(right)?;
                StructureForm::combine(&x, &y, &[true], perm)
            }
        })
    }
}

pub fn structure_form(f: &BoolFun) -> Result<StructureForm> {
    match is_type(f) {
        Verdict::Yes(t) => StructureForm::from_tree(&t),
        Verdict::No(r) => Err(Error::NotAType(r)),
    }
}
