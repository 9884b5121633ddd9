//! Splitting free-index-less functions into tensor factors read off `P_f^0`.
//!
//! Independent components of `P_f^0` give `f* ≈ f_1 ⊗ ... ⊗ f_k`. When there are none,
//! `f ≈ f_1 ⊗ ... ⊗ f_k` and the factors are recovered by coloring the labels of minimal
//! and minimal-covering elements.

use serde::Serialize;

use super::chains::free_of;
use super::{build_poset, p0, LabelledPoset, Node};
use crate::boolfun::{full_mask, mask_elems, BoolFun, Mask};
use crate::error::{Error, Result};
use crate::perm::{self, Perm};

/// `f* = permute(f_1 ⊗ ... ⊗ f_k, perm)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualProduct {
    pub factors: Vec<BoolFun>,
    /// Original positions (0-based mask) of each factor.
    pub blocks: Vec<Mask>,
    pub perm: Perm,
}

/// One row of the coloring table: a minimal-covering label with its `V` and `W` sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorRow {
    pub label: Mask,
    pub v: Mask,
    pub w: Mask,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub rows: Vec<ColorRow>,
    /// Row indices of each class, classes ordered by their smallest index.
    pub members: Vec<Vec<usize>>,
    /// Union of `V ∪ W ∪ L` over each class.
    pub classes: Vec<Mask>,
    /// Every index of each factor.
    pub colors: Vec<Mask>,
    /// `P_{f_l}^0` in the original coordinates.
    pub posets: Vec<LabelledPoset>,
}

/// `f = permute(f_1 ⊗ ... ⊗ f_k, perm)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub factors: Vec<BoolFun>,
    pub coloring: Coloring,
    pub perm: Perm,
}

fn free_less_checks(f: &BoolFun) -> Result<LabelledPoset> {
    let p = build_poset(f);
    if p.contains(0) {
        return Err(Error::Precondition("∅ ∈ P_f".into()));
    }
    let (i, o) = free_of(&p);
    let (is, os) = free_of(&build_poset(&f.star()));
    if i | o | is | os != 0 {
        return Err(Error::Precondition("f or f* has free indices".into()));
    }
    Ok(p)
}

/// Restrictions of `g` to the blocks, and the permutation reassembling `g` from their product.
fn split_blocks(g: &BoolFun, blocks: &[Mask]) -> Result<(Vec<BoolFun>, Perm)> {
    let mut order = Vec::with_capacity(g.n());
    let mut factors = Vec::with_capacity(blocks.len());
    for &b in blocks {
        let pos: Vec<usize> = mask_elems(b).iter().map(|i| i - 1).collect();
        factors.push(g.restrict(&pos)?);
        order.extend(pos);
    }
    if order.len() != g.n() {
        return Err(Error::Precondition("blocks do not partition the arguments".into()));
    }
    perm::check(&order)?;
    let perm = perm::inverse(&order);
    let mut prod = factors[0].clone();
    for h in &factors[1..] {
        prod = prod.tensor(h)?;
    }
    if prod.permute(&perm)? != *g {
        return Err(Error::Precondition("restrictions do not multiply back".into()));
    }
    Ok((factors, perm))
}

pub fn factor_dual_product(f: &BoolFun) -> Result<DualProduct> {
    let p = free_less_checks(f)?;
    let comps = p0(&p).independent_components();
    if comps.len() < 2 {
        return Err(Error::Precondition("single component".into()));
    }
    let blocks: Vec<Mask> = comps.iter().map(|c| c.label_union()).collect();
    let (factors, perm) = split_blocks(&f.star(), &blocks)?;
    Ok(DualProduct { factors, blocks, perm })
}

pub fn factor_product(f: &BoolFun) -> Result<Product> {
    let p = free_less_checks(f)?;
    let q = p0(&p);
    if q.independent_components().len() > 1 {
        return Err(Error::Precondition("P_f^0 has independent components".into()));
    }
    let coloring = coloring(&q)?;
    if coloring.colors.len() < 2 {
        return Err(Error::Precondition("a single color".into()));
    }
    let (factors, perm) = split_blocks(f, &coloring.colors)?;
    Ok(Product { factors, coloring, perm })
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

fn first(m: Mask) -> u32 {
    if m == 0 {
        u32::MAX
    } else {
        m.trailing_zeros()
    }
}

/// Coloring of a connected, free-index-less `P_f^0` without `∅`.
pub(crate) fn coloring(q: &LabelledPoset) -> Result<Coloring> {
    let mins = q.minimal();
    let u_all = mins.iter().fold(0, |m, &i| m | q.nodes[i].label);
    // minimal-covering label sets and the minima below them
    let mut groups: Vec<(Mask, Vec<usize>, Vec<usize>)> = Vec::new();
    for t in 0..q.len() {
        let below: Vec<usize> = q.lower_covers(t).into_iter().filter(|s| mins.contains(s)).collect();
        if below.is_empty() {
            continue;
        }
        let label = q.nodes[t].label;
        match groups.iter_mut().find(|g| g.0 == label) {
            Some(g) => {
                g.1.push(t);
                g.2.extend(below);
            }
            None => groups.push((label, vec![t], below)),
        }
    }
    groups.sort_by_key(|g| (first(g.0), g.0));
    let rows: Vec<ColorRow> = groups
        .iter()
        .map(|(label, _, below)| {
            let v = below.iter().fold(full_mask(q.n), |m, &u| m & q.nodes[u].label);
            let w = u_all & !below.iter().fold(0, |m, &u| m | q.nodes[u].label);
            ColorRow { label: *label, v, w }
        })
        .collect();
    let m = rows.len();
    let cprime: Vec<Mask> = rows.iter().map(|r| r.v | r.w | r.label).collect();
    let ups: Vec<Vec<bool>> = groups
        .iter()
        .map(|(_, nodes, _)| {
            let mut up = vec![false; q.len()];
            for &t in nodes {
                for j in q.up(t) {
                    up[j] = true;
                }
            }
            up
        })
        .collect();
    let mut dsu = Dsu((0..m).collect());
    for i in 0..m {
        for j in i + 1..m {
            let bound = ups[i].iter().zip(&ups[j]).any(|(a, b)| *a && *b);
            if bound || cprime[i] & cprime[j] != 0 {
                dsu.union(i, j);
            }
        }
    }
    // classes made only of rows with V = W = ∅ are merged by the components of U↑ \ {U}
    let roots: Vec<usize> = (0..m).map(|i| dsu.find(i)).collect();
    let empty_class = |r: usize| (0..m).filter(|&i| roots[i] == r).all(|i| rows[i].v == 0 && rows[i].w == 0);
    let empty_rows: Vec<usize> = (0..m).filter(|&i| empty_class(roots[i])).collect();
    if !empty_rows.is_empty() && !mins.is_empty() {
        let u = mins[0];
        let keep: Vec<usize> = q.up(u).into_iter().filter(|&j| j != u).collect();
        let comps = q.induced(&keep).independent_components();
        let mut comp_row: Vec<(usize, usize)> = Vec::new();
        for &i in &empty_rows {
            if let Some(c) = comps.iter().position(|c| c.nodes.iter().any(|x| x.label == rows[i].label)) {
                comp_row.push((c, i));
            }
        }
        for a in 0..comp_row.len() {
            for b in a + 1..comp_row.len() {
                if comp_row[a].0 == comp_row[b].0 {
                    dsu.union(comp_row[a].1, comp_row[b].1);
                }
            }
        }
    }
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut root_pos: Vec<Option<usize>> = vec![None; m];
    for i in 0..m {
        let r = dsu.find(i);
        match root_pos[r] {
            Some(k) => members[k].push(i),
            None => {
                root_pos[r] = Some(members.len());
                members.push(vec![i]);
            }
        }
    }
    let class_of = |ms: &Vec<usize>| ms.iter().fold(0, |acc, &i| acc | cprime[i]);
    members.sort_by_key(|ms| first(class_of(ms)));
    let classes: Vec<Mask> = members.iter().map(class_of).collect();
    let mut colors = Vec::with_capacity(classes.len());
    let mut posets = Vec::with_capacity(classes.len());
    for &c in &classes {
        let fp = color_min(q, &mins, c);
        colors.push(fp.label_union());
        posets.push(fp);
    }
    let total = colors.iter().fold(0, |acc, &c| acc | c);
    let disjoint = colors.iter().map(|c| c.count_ones()).sum::<u32>() == total.count_ones();
    if !disjoint || total != full_mask(q.n) {
        return Err(Error::Precondition("coloring does not partition the indices".into()));
    }
    Ok(Coloring { rows, members, classes, colors, posets })
}

/// `P_{f_l}^0` for the color `c`, in original coordinates.
fn color_min(q: &LabelledPoset, mins: &[usize], c: Mask) -> LabelledPoset {
    let u = mins[0];
    let lt = q.nodes[u].label & !c;
    let pl_mins: Vec<usize> = mins.iter().copied().filter(|&x| lt & !q.nodes[x].label == 0).collect();
    let mut in_pl = vec![false; q.len()];
    for &x in &pl_mins {
        for j in q.up(x) {
            in_pl[j] = true;
        }
    }
    let rest: Vec<usize> = (0..q.len()).filter(|&j| in_pl[j] && !pl_mins.contains(&j)).collect();
    let mut nodes: Vec<Node> = Vec::new();
    for comp in q.induced(&rest).independent_components() {
        let ours = comp.minimal().iter().any(|&i| comp.nodes[i].label & c != 0);
        if ours {
            nodes.extend(comp.nodes);
        }
    }
    for &x in &pl_mins {
        let mut node = q.nodes[x].clone();
        node.label &= !lt;
        nodes.push(node);
    }
    LabelledPoset::from_nodes(q.n, nodes, q.flags.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typealg::gamma;

    #[test]
    fn dual_product_of_gammas() {
        let g = gamma(2).unwrap();
        let f = g.tensor(&g).unwrap().star();
        let d = factor_dual_product(&f).unwrap();
        assert_eq!(d.factors, vec![g.clone(), g.clone()]);
        assert_eq!(d.blocks, vec![0b0011, 0b1100]);
        assert!(factor_product(&f).is_err());
    }

    #[test]
    fn connected_input_is_refused() {
        let g2 = gamma(2).unwrap();
        let x = g2.tensor(&g2).unwrap().star();
        let f = x.tensor(&g2).unwrap();
        let e = factor_dual_product(&f).unwrap_err();
        assert!(e.to_string().contains("single component"));
        let pr = factor_product(&f).unwrap();
        assert_eq!(pr.factors, vec![x, g2]);
        assert_eq!(pr.coloring.colors, vec![0b001111, 0b110000]);
    }
}
