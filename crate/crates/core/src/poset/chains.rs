//! Free indices, index ranks, chain (comb) structure and the ordinal-sum shape of `f ◁ g`.

use serde::Serialize;

use super::{build_poset, LabelledPoset};
use crate::boolfun::{full_mask, BoolFun, Mask};
use crate::error::{Error, Result};
use crate::typealg::causal;

/// `(I_F, O_F)` read off an already built `P_f`.
pub(crate) fn free_of(p: &LabelledPoset) -> (Mask, Mask) {
    let mins = p.minimal();
    let inputs = mins.iter().fold(full_mask(p.n), |m, &i| m & p.nodes[i].subset);
    let covered = p.nodes.iter().fold(0, |m, x| m | x.subset);
    (if mins.is_empty() { 0 } else { inputs }, full_mask(p.n) & !covered)
}

/// Free inputs (`∩` of minimal labels) and free outputs (indices in no node).
pub fn free_indices(f: &BoolFun) -> (Mask, Mask) {
    free_of(&build_poset(f))
}

pub fn is_chain(f: &BoolFun) -> bool {
    build_poset(f).is_chain()
}

/// Common rank of the nodes whose label contains `i` (1-based); `r(f) + 1` for free outputs.
pub fn rank_of_index(f: &BoolFun, i: usize) -> Result<usize> {
    if i == 0 || i > f.n() {
        return Err(Error::Precondition(format!("index {i} outside [{}]", f.n())));
    }
    let p = build_poset(f);
    let bit = 1 << (i - 1);
    let ranks: Vec<usize> = p.nodes.iter().filter(|x| x.label & bit != 0).map(|x| x.rank).collect();
    match ranks.first() {
        None => Ok(p.flags.rank + 1),
        Some(&r) if ranks.iter().all(|&q| q == r) => Ok(r),
        Some(_) => Err(Error::Precondition(format!("index {i} carries labels of different ranks"))),
    }
}

/// Comb reading of a chain type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombStructure {
    pub n: usize,
    /// `S_1 ⊊ ... ⊊ S_N`.
    pub chain: Vec<Mask>,
    /// `T_0 = S_1`, `T_j = S_{j+1} \ S_j`, `T_N = [n] \ S_N`.
    pub tiers: Vec<Mask>,
    pub inputs: Mask,
    pub outputs: Mask,
}

impl CombStructure {
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn free_inputs(&self) -> Mask {
        self.tiers[0]
    }

    pub fn free_outputs(&self) -> Mask {
        *self.tiers.last().unwrap()
    }

    /// Number of comb slots `(N - 1) / 2`.
    pub fn comb_order(&self) -> usize {
        (self.chain.len() - 1) / 2
    }
}

pub fn chain_info(f: &BoolFun) -> Result<CombStructure> {
    let p = build_poset(f);
    if !p.is_chain() {
        return Err(Error::Precondition("P_f is not a chain".into()));
    }
    chain_from_poset(&p)
}

pub(crate) fn chain_from_poset(p: &LabelledPoset) -> Result<CombStructure> {
    if !p.flags.type_like() {
        return Err(Error::NotAType(p.flags.failure().unwrap_or_default()));
    }
    let chain: Vec<Mask> = p.nodes.iter().map(|x| x.subset).collect();
    let mut tiers = vec![chain[0]];
    tiers.extend(chain.windows(2).map(|w| w[1] & !w[0]));
    tiers.push(full_mask(p.n) & !chain[chain.len() - 1]);
    let mut inputs = 0;
    let mut outputs = tiers[tiers.len() - 1];
    for (j, &t) in tiers[..tiers.len() - 1].iter().enumerate() {
        if j % 2 == 0 {
            inputs |= t;
        } else {
            outputs |= t;
        }
    }
    Ok(CombStructure { n: p.n, chain, tiers, inputs, outputs })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrdinalCase {
    A,
    B,
    C,
    D,
}

/// Predicted `P_{f◁g}` as a labelled node set.
fn predicted(f: &BoolFun, g: &BoolFun, case: OrdinalCase) -> Vec<(Mask, Mask)> {
    let pf = build_poset(f);
    let pg = build_poset(g);
    let n = f.n();
    let top = full_mask(n);
    let (_, free_out) = free_of(&pf);
    let g_min: Vec<Mask> = pg.minimal().iter().map(|&i| pg.nodes[i].subset).collect();
    let g_min_nonempty: Vec<Mask> = {
        let rest = pg.induced(&(0..pg.len()).filter(|&i| pg.nodes[i].subset != 0).collect::<Vec<_>>());
        rest.minimal().iter().map(|&i| rest.nodes[i].subset).collect()
    };
    let top_label = pf.index_of(top).map(|i| pf.nodes[i].label).unwrap_or(0);
    let mut out: Vec<(Mask, Mask)> = Vec::new();
    for x in &pf.nodes {
        if case == OrdinalCase::B && x.subset == top {
            continue;
        }
        out.push((x.subset, x.label));
    }
    if case == OrdinalCase::D {
        out.push((top, free_out));
    }
    for y in &pg.nodes {
        if y.subset == 0 && matches!(case, OrdinalCase::A | OrdinalCase::C) {
            continue;
        }
        let mut label = y.label << n;
        match case {
            OrdinalCase::B if g_min.contains(&y.subset) => label |= top_label,
            OrdinalCase::C if g_min_nonempty.contains(&y.subset) => label |= free_out,
            _ => {}
        }
        out.push((top | y.subset << n, label));
    }
    out.sort_unstable_by_key(|&(s, _)| (s.count_ones(), s));
    out
}

/// Classify `(f, g)` by `([n] ∈ P_f, ∅ ∈ P_g)` and check that `P_{f◁g}` has the predicted
/// ordinal-sum shape with adjusted labels.
pub fn ordinal_sum_check(f: &BoolFun, g: &BoolFun) -> Result<OrdinalCase> {
    let has_top = build_poset(f).contains(full_mask(f.n()));
    let has_bottom = build_poset(g).contains(0);
    let case = match (has_top, has_bottom) {
        (true, true) => OrdinalCase::A,
        (true, false) => OrdinalCase::B,
        (false, true) => OrdinalCase::C,
        (false, false) => OrdinalCase::D,
    };
    let actual = build_poset(&causal(f, g)?);
    let got: Vec<(Mask, Mask)> = actual.nodes.iter().map(|x| (x.subset, x.label)).collect();
    let want = predicted(f, g, case);
    if got != want {
        return Err(Error::Precondition(format!("case {case:?}: P_(f◁g) differs from the ordinal sum")));
    }
    Ok(case)
}
