#![allow(dead_code)]

use hotc_core::boolfun::{full_mask, BoolFun, Mask};
use hotc_core::quantum::FirstOrderObj;
use hotc_core::typealg::{causal, causal_rev, TypeExpr};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_fn(rng: &mut impl Rng, n: usize) -> BoolFun {
    BoolFun::from_fn(n, |idx| idx == 0 || rng.gen_bool(0.5)).unwrap()
}

/// Random strict chain of `len` subsets of `[n]` along a random maximal chain.
pub fn random_chain(rng: &mut impl Rng, n: usize, len: usize) -> Vec<Mask> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut cuts: Vec<usize> = (0..=n).collect();
    cuts.shuffle(rng);
    let mut cuts = cuts[..len].to_vec();
    cuts.sort_unstable();
    cuts.iter().map(|&c| order[..c].iter().fold(0, |m, &i| m | 1 << i)).collect()
}

fn law(ok: bool, name: &str, f: &BoolFun, g: &BoolFun) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(format!("{name} fails at {f:?}, {g:?}"))
    }
}

/// Pairwise laws of `◁`.
pub fn check_pair(f: &BoolFun, g: &BoolFun) -> Result<(), String> {
    let fg = causal(f, g).unwrap();
    law(fg.star() == causal(&f.star(), &g.star()).unwrap(), "star", f, g)?;
    // tensor is the meet of both causal orders on the fixed blocks
    law(f.tensor(g).unwrap() == fg.meet(&causal_rev(f, g).unwrap()).unwrap(), "tensor as meet", f, g)?;
    let (n1, n2) = (f.n(), g.n());
    let one = BoolFun::one(n2).unwrap();
    law(causal(f, &one).unwrap() == f.tensor(&one).unwrap(), "unit on the right", f, g)?;
    // 1 ◁ p = 1 - p_[n1] + p_[n]
    let lhs = causal(&BoolFun::one(n1).unwrap(), &BoolFun::p(n2).unwrap()).unwrap();
    let n = n1 + n2;
    let rhs = BoolFun::from_fn(n, |idx| idx & full_mask(n1) as usize != 0 || idx == 0).unwrap();
    law(lhs == rhs, "one before p", f, g)?;
    let low = full_mask(n1) as usize;
    let pointwise = (0..1usize << n).all(|idx| {
        let (s1, s2) = (idx & low, idx >> n1);
        fg.get(idx) == if s1 != 0 { f.get(s1) } else { g.get(s2) }
    });
    law(pointwise, "pointwise definition", f, g)
}

/// Join and meet laws of `◁` on `(f, g)` and `(h, k)`.
pub fn check_quad(f: &BoolFun, g: &BoolFun, h: &BoolFun, k: &BoolFun) -> Result<(), String> {
    let c = |a: &BoolFun, b: &BoolFun| causal(a, b).unwrap();
    let j = c(&f.join(g).unwrap(), &h.join(k).unwrap());
    law(j == c(f, h).join(&c(g, k)).unwrap() && j == c(f, k).join(&c(g, h)).unwrap(), "join", f, h)?;
    let m = c(&f.meet(g).unwrap(), &h.meet(k).unwrap());
    law(m == c(f, h).meet(&c(g, k)).unwrap() && m == c(f, k).meet(&c(g, h)).unwrap(), "meet", f, h)
}

/// Every expression over leaves `lo..=hi` in that order, one optional dual per node.
pub fn ordered_exprs(lo: usize, hi: usize) -> Vec<TypeExpr> {
    let bases: Vec<TypeExpr> = if lo == hi {
        vec![TypeExpr::leaf(lo)]
    } else {
        let mut v = Vec::new();
        for m in lo..hi {
            let left = ordered_exprs(lo, m);
            let right = ordered_exprs(m + 1, hi);
            for a in &left {
                for b in &right {
                    v.push(TypeExpr::tensor(a.clone(), b.clone()));
                }
            }
        }
        v
    };
    bases.into_iter().flat_map(|e| [e.clone(), TypeExpr::dual(e)]).collect()
}

pub fn qubits(n: usize) -> Vec<FirstOrderObj> {
    vec![FirstOrderObj::state(2); n]
}
