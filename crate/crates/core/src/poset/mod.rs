//! Labelled posets `P_f` and `P_f^0` carried by the Möbius support of a function.
//!
//! Nodes are subsets of `[n]` ordered by inclusion. The label of a node is the set of its
//! elements not contained in any strictly smaller node.

mod chains;
mod decompose;
mod factor;
mod strip;

pub use chains::{chain_info, free_indices, is_chain, ordinal_sum_check, rank_of_index, CombStructure, OrdinalCase};
pub use decompose::{decompose, DecompositionTree};
pub use factor::{factor_dual_product, factor_product, Coloring, ColorRow, DualProduct, Product};
pub use strip::{predict_bottom_block, predict_top_block, strip_chain_bottom, strip_chain_top, Strip};

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::boolfun::{fmt_mask, mask_elems, mask_from, BoolFun, Mask};
use crate::mobius::mobius_dense;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub subset: Mask,
    pub coeff: i64,
    pub rank: usize,
    pub label: Mask,
}

/// Properties established while building `P_f`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PosetFlags {
    pub graded: bool,
    /// Largest rank `r(f)`.
    pub rank: usize,
    /// First coefficient outside `{-1, 0, 1}`, if any.
    pub bad_coeff: Option<(Mask, i64)>,
    /// Whether every coefficient equals `(-1)^rank`.
    pub signs_ok: bool,
}

impl PosetFlags {
    /// All necessary conditions for a type function.
    pub fn type_like(&self) -> bool {
        self.graded && self.rank % 2 == 0 && self.bad_coeff.is_none() && self.signs_ok
    }

    /// First failing necessary condition.
    pub fn failure(&self) -> Option<String> {
        if let Some((s, c)) = self.bad_coeff {
            return Some(format!("Möbius coefficient {c} at {}", fmt_mask(s)));
        }
        if !self.graded {
            return Some("poset not graded".into());
        }
        if self.rank % 2 == 1 {
            return Some(format!("odd rank {}", self.rank));
        }
        if !self.signs_ok {
            return Some("coefficient signs differ from (-1)^rank".into());
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledPoset {
    pub n: usize,
    /// Sorted by (size, mask).
    pub nodes: Vec<Node>,
    /// Cover relations `(lower, upper)` as node indices.
    pub covers: Vec<(usize, usize)>,
    pub flags: PosetFlags,
}

fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

fn sort_key(m: Mask) -> (u32, Mask) {
    (m.count_ones(), m)
}

/// Cover pairs of a family sorted by size.
fn cover_pairs(subsets: &[Mask]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for t in 0..subsets.len() {
        let mut maxes: Vec<usize> = Vec::new();
        for s in (0..t).rev() {
            if subsets[s] != subsets[t]
                && is_subset(subsets[s], subsets[t])
                && !maxes.iter().any(|&m| is_subset(subsets[s], subsets[m]))
            {
                maxes.push(s);
            }
        }
        for s in maxes.into_iter().rev() {
            covers.push((s, t));
        }
    }
    covers.sort_unstable();
    covers
}

pub fn build_poset(f: &BoolFun) -> LabelledPoset {
    let dense = mobius_dense(f);
    let mut support: Vec<(Mask, i64)> = dense
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(s, &c)| (s as Mask, c))
        .collect();
    support.sort_by_key(|(s, _)| sort_key(*s));
    let subsets: Vec<Mask> = support.iter().map(|(s, _)| *s).collect();
    let covers = cover_pairs(&subsets);
    let k = subsets.len();
    let mut lower: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut upper: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &(s, t) in &covers {
        lower[t].push(s);
        upper[s].push(t);
    }
    // longest chain from a minimal element
    let mut rank = vec![0usize; k];
    for t in 0..k {
        rank[t] = lower[t].iter().map(|&s| rank[s] + 1).max().unwrap_or(0);
    }
    let max_rank = rank.iter().copied().max().unwrap_or(0);
    let graded = covers.iter().all(|&(s, t)| rank[t] == rank[s] + 1)
        && (0..k).all(|t| !upper[t].is_empty() || rank[t] == max_rank);
    let bad_coeff = support.iter().find(|(_, c)| c.abs() > 1).copied();
    let signs_ok = (0..k).all(|t| support[t].1 == if rank[t] % 2 == 0 { 1 } else { -1 });
    let nodes = (0..k)
        .map(|t| {
            let below = (0..t)
                .filter(|&s| is_subset(subsets[s], subsets[t]) && subsets[s] != subsets[t])
                .fold(0, |m, s| m | subsets[s]);
            Node { subset: subsets[t], coeff: support[t].1, rank: rank[t], label: subsets[t] & !below }
        })
        .collect();
    LabelledPoset {
        n: f.n(),
        nodes,
        covers,
        flags: PosetFlags { graded, rank: max_rank, bad_coeff, signs_ok },
    }
}

/// The subposet of nodes with nonempty labels, together with `∅` when present.
pub fn p0(p: &LabelledPoset) -> LabelledPoset {
    let keep: Vec<usize> =
        (0..p.nodes.len()).filter(|&i| p.nodes[i].label != 0 || p.nodes[i].subset == 0).collect();
    p.induced(&keep)
}

impl LabelledPoset {
    /// Subposet on the given nodes with inherited order, ranks and labels.
    pub fn induced(&self, keep: &[usize]) -> LabelledPoset {
        LabelledPoset::from_nodes(self.n, keep.iter().map(|&i| self.nodes[i].clone()).collect(), self.flags.clone())
    }

    /// Poset over explicit nodes, ordered by inclusion of their subsets.
    pub fn from_nodes(n: usize, mut nodes: Vec<Node>, flags: PosetFlags) -> LabelledPoset {
        nodes.sort_by_key(|x| sort_key(x.subset));
        nodes.dedup_by_key(|x| x.subset);
        let subsets: Vec<Mask> = nodes.iter().map(|x| x.subset).collect();
        let covers = cover_pairs(&subsets);
        LabelledPoset { n, nodes, covers, flags }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, subset: Mask) -> Option<usize> {
        self.nodes.iter().position(|x| x.subset == subset)
    }

    pub fn contains(&self, subset: Mask) -> bool {
        self.index_of(subset).is_some()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        is_subset(self.nodes[i].subset, self.nodes[j].subset)
    }

    pub fn lower_covers(&self, t: usize) -> Vec<usize> {
        self.covers.iter().filter(|c| c.1 == t).map(|c| c.0).collect()
    }

    pub fn upper_covers(&self, s: usize) -> Vec<usize> {
        self.covers.iter().filter(|c| c.0 == s).map(|c| c.1).collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&t| !self.covers.iter().any(|c| c.1 == t)).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&s| !self.covers.iter().any(|c| c.0 == s)).collect()
    }

    pub fn least(&self) -> Option<usize> {
        let m = self.minimal();
        (m.len() == 1).then(|| m[0])
    }

    pub fn largest(&self) -> Option<usize> {
        let m = self.maximal();
        (m.len() == 1).then(|| m[0])
    }

    /// Up-set of a node, the node included.
    pub fn up(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(i, j)).collect()
    }

    pub fn down(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.leq(j, i)).collect()
    }

    pub fn is_chain(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.leq(i, j) || self.leq(j, i)))
    }

    pub fn label_union(&self) -> Mask {
        self.nodes.iter().fold(0, |m, x| m | x.label)
    }

    fn components_by(&self, label_links: bool) -> Vec<LabelledPoset> {
        let k = self.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for &(s, t) in &self.covers {
            let (a, b) = (find(&mut parent, s), find(&mut parent, t));
            parent[a] = b;
        }
        if label_links {
            for i in 0..k {
                for j in i + 1..k {
                    if self.nodes[i].label & self.nodes[j].label != 0 {
                        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut root_of: Vec<Option<usize>> = vec![None; k];
        for i in 0..k {
            let r = find(&mut parent, i);
            match root_of[r] {
                Some(g) => groups[g].push(i),
                None => {
                    root_of[r] = Some(groups.len());
                    groups.push(vec![i]);
                }
            }
        }
        let mut comps: Vec<LabelledPoset> = groups.iter().map(|g| self.induced(g)).collect();
        comps.sort_by_key(|c| {
            let u = c.label_union();
            (if u == 0 { u32::MAX } else { u.trailing_zeros() }, c.nodes[0].subset)
        });
        comps
    }

    /// Finest splitting into direct summands with pairwise disjoint label sets.
    pub fn independent_components(&self) -> Vec<LabelledPoset> {
        self.components_by(true)
    }

    /// Direct summands as a poset, ignoring labels.
    pub fn connected_components(&self) -> Vec<LabelledPoset> {
        self.components_by(false)
    }

    /// Deterministic Graphviz rendering; cover edges point upwards.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph P {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, x) in self.nodes.iter().enumerate() {
            let subset = if x.subset == 0 { "∅".to_string() } else { fmt_mask(x.subset) };
            let label = if x.label == 0 { "·".to_string() } else { fmt_mask(x.label) };
            let _ = writeln!(out, "  n{i} [label=\"{subset} | L={label}\"];");
        }
        for &(s, t) in &self.covers {
            let _ = writeln!(out, "  n{s} -> n{t};");
        }
        out.push_str("}\n");
        out
    }
}

pub fn independent_components(p: &LabelledPoset) -> Vec<LabelledPoset> {
    p.independent_components()
}

pub fn to_dot(p: &LabelledPoset) -> String {
    p.to_dot()
}

#[derive(Serialize, Deserialize)]
struct NodeJson {
    subset: Vec<usize>,
    coeff: i64,
    rank: usize,
    label: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    n: usize,
    nodes: Vec<NodeJson>,
}

impl Serialize for LabelledPoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nodes = self
            .nodes
            .iter()
            .map(|x| NodeJson {
                subset: mask_elems(x.subset),
                coeff: x.coeff,
                rank: x.rank,
                label: mask_elems(x.label),
            })
            .collect();
        PosetJson { n: self.n, nodes }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabelledPoset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PosetJson::deserialize(d)?;
        let nodes = j
            .nodes
            .iter()
            .map(|x| Node {
                subset: mask_from(&x.subset),
                coeff: x.coeff,
                rank: x.rank,
                label: mask_from(&x.label),
            })
            .collect();
        Ok(LabelledPoset::from_nodes(j.n, nodes, PosetFlags::default()))
    }
}
