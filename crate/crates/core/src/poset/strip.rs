//! Peeling chain types off the top (`f ≈ h ◁ β`) or bottom (`f ≈ β ◁ h`) of a function.

use super::chains::free_of;
use super::{build_poset, p0, LabelledPoset};
use crate::boolfun::{full_mask, BoolFun, Mask};
use crate::error::{Error, Result};
use crate::perm::{self, Perm};
use crate::typealg::causal;

/// Result of a strip: `f = permute(causal(left, right), perm)`. For a top strip `right` is
/// the chain type, for a bottom strip `left` is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strip {
    pub left: BoolFun,
    pub right: BoolFun,
    /// Original (0-based) argument positions of `left`, then of `right`.
    pub order: Vec<usize>,
    pub perm: Perm,
}

impl Strip {
    pub fn reconstruct(&self) -> Result<BoolFun> {
        causal(&self.left, &self.right)?.permute(&self.perm)
    }

    /// Original positions of the chain factor.
    pub fn chain_positions(&self, top: bool) -> Mask {
        let k = self.left.n();
        let part = if top { &self.order[k..] } else { &self.order[..k] };
        part.iter().fold(0, |m, &p| m | 1 << p)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Layer {
    One,
    P,
}

fn layer_fun(kind: Layer, k: usize) -> Result<BoolFun> {
    match kind {
        Layer::One => BoolFun::one(k),
        Layer::P => BoolFun::p(k),
    }
}

fn split(pos: &[usize], local: Mask) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
    let mut taken = Vec::new();
    let mut rest_local = Vec::new();
    let mut rest = Vec::new();
    for (q, &p) in pos.iter().enumerate() {
        if local >> q & 1 == 1 {
            taken.push(p);
        } else {
            rest_local.push(q);
            rest.push(p);
        }
    }
    (taken, rest_local, rest)
}

fn chain_check(f: &BoolFun) -> Result<LabelledPoset> {
    let p = build_poset(f);
    if p.is_chain() {
        return Err(Error::Precondition("is chain".into()));
    }
    Ok(p)
}

/// `f ≈ h ◁ β` with `h`, `h*` free of free outputs and `β` a chain type.
pub fn strip_chain_top(f: &BoolFun) -> Result<Strip> {
    chain_check(f)?;
    let mut cur = f.clone();
    let mut pos: Vec<usize> = (0..f.n()).collect();
    let mut layers: Vec<(Layer, Vec<usize>)> = Vec::new();
    loop {
        let (_, out) = free_of(&build_poset(&cur));
        if out != 0 && out != full_mask(cur.n()) {
            let (taken, rest_local, rest) = split(&pos, out);
            cur = cur.restrict(&rest_local)?;
            layers.push((Layer::One, taken));
            pos = rest;
            continue;
        }
        let dual = cur.star();
        let (_, out) = free_of(&build_poset(&dual));
        if out != 0 && out != full_mask(cur.n()) {
            let (taken, rest_local, rest) = split(&pos, out);
            cur = dual.restrict(&rest_local)?.star();
            layers.push((Layer::P, taken));
            pos = rest;
            continue;
        }
        break;
    }
    if layers.is_empty() {
        return Err(Error::Precondition("neither f nor f* has a free output".into()));
    }
    let mut beta: Option<BoolFun> = None;
    let mut order = pos;
    for (kind, taken) in layers.iter().rev() {
        let l = layer_fun(*kind, taken.len())?;
        beta = Some(match beta {
            None => l,
            Some(b) => causal(&b, &l)?,
        });
        order.extend(taken);
    }
    finish(f, cur, beta.unwrap(), order)
}

/// `f ≈ β ◁ h` with `h`, `h*` free of free inputs and `β` a chain type.
pub fn strip_chain_bottom(f: &BoolFun) -> Result<Strip> {
    chain_check(f)?;
    let mut cur = f.clone();
    let mut pos: Vec<usize> = (0..f.n()).collect();
    let mut layers: Vec<(Layer, Vec<usize>)> = Vec::new();
    loop {
        let (inp, _) = free_of(&build_poset(&cur));
        if inp != 0 && inp != full_mask(cur.n()) {
            let (taken, rest_local, rest) = split(&pos, inp);
            cur = cur.restrict(&rest_local)?;
            layers.push((Layer::P, taken));
            pos = rest;
            continue;
        }
        let dual = cur.star();
        let (inp, _) = free_of(&build_poset(&dual));
        if inp != 0 && inp != full_mask(cur.n()) {
            let (taken, rest_local, rest) = split(&pos, inp);
            cur = dual.restrict(&rest_local)?.star();
            layers.push((Layer::One, taken));
            pos = rest;
            continue;
        }
        break;
    }
    if layers.is_empty() {
        return Err(Error::Precondition("neither f nor f* has a free input".into()));
    }
    let mut beta: Option<BoolFun> = None;
    let mut order = Vec::new();
    for (kind, taken) in &layers {
        let l = layer_fun(*kind, taken.len())?;
        beta = Some(match beta {
            None => l,
            Some(b) => causal(&b, &l)?,
        });
        order.extend(taken);
    }
    let k = order.len();
    order.extend(pos);
    let strip = finish(f, beta.unwrap(), cur, order)?;
    debug_assert_eq!(strip.left.n(), k);
    Ok(strip)
}

fn finish(f: &BoolFun, left: BoolFun, right: BoolFun, order: Vec<usize>) -> Result<Strip> {
    let perm = perm::inverse(&order);
    let strip = Strip { left, right, order, perm };
    if strip.reconstruct()? != *f {
        return Err(Error::Precondition("causal splitting does not reproduce f".into()));
    }
    Ok(strip)
}

/// Positions (0-based mask) of the top chain factor as read from `P_f^0`.
pub fn predict_top_block(f: &BoolFun) -> Option<Mask> {
    let p = build_poset(f);
    let (_, free_out) = free_of(&p);
    let q = p0(&p);
    if q.largest().is_none() {
        return (free_out != 0).then_some(free_out);
    }
    let s = (0..q.len())
        .filter(|&i| q.lower_covers(i).len() > 1)
        .max_by_key(|&i| q.nodes[i].subset.count_ones())?;
    let below: Mask = q
        .lower_covers(s)
        .iter()
        .flat_map(|&t| q.down(t))
        .fold(0, |m, i| m | q.nodes[i].label);
    Some(full_mask(f.n()) & !below)
}

/// Positions of the bottom chain factor as read from `P_f^0`.
pub fn predict_bottom_block(f: &BoolFun) -> Option<Mask> {
    let p = build_poset(f);
    let q = p0(&p);
    if q.least().is_none() {
        let (inp, _) = free_of(&p);
        return (inp != 0).then_some(inp);
    }
    let s = (0..q.len())
        .filter(|&i| q.upper_covers(i).len() > 1)
        .min_by_key(|&i| q.nodes[i].subset.count_ones())?;
    let l = q.upper_covers(s).iter().fold(full_mask(f.n()), |m, &t| m & q.nodes[t].label);
    Some(q.nodes[s].subset | l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::mask_from;
    use crate::typealg::gamma;

    fn comb_to_comb() -> BoolFun {
        gamma(2).unwrap().tensor(&gamma(4).unwrap().star()).unwrap().star()
    }

    #[test]
    fn strip_free_outputs() {
        let g = gamma(2).unwrap();
        let h = g.tensor(&g).unwrap();
        let f = h.tensor(&BoolFun::one(2).unwrap()).unwrap();
        let s = strip_chain_top(&f).unwrap();
        assert_eq!(s.right, BoolFun::one(2).unwrap());
        assert_eq!(s.left, h);
        assert_eq!(s.reconstruct().unwrap(), f);
    }

    #[test]
    fn strip_free_inputs() {
        let g = gamma(2).unwrap();
        let h = g.tensor(&g).unwrap().star();
        let f = BoolFun::p(1).unwrap().tensor(&h).unwrap();
        let s = strip_chain_bottom(&f).unwrap();
        assert_eq!(s.left, BoolFun::p(1).unwrap());
        assert_eq!(s.right, h);
    }

    #[test]
    fn comb_to_comb_peels_both_ends() {
        let f = comb_to_comb();
        let top = strip_chain_top(&f).unwrap();
        assert_eq!(top.right, BoolFun::p(1).unwrap());
        let bottom = strip_chain_bottom(&top.left).unwrap();
        assert_eq!(bottom.left, BoolFun::one(1).unwrap());
        let g = gamma(2).unwrap();
        assert_eq!(bottom.right.canonical().unwrap(), g.tensor(&g).unwrap().star().canonical().unwrap());
        assert_eq!(predict_top_block(&f), Some(top.chain_positions(true)));
    }

    #[test]
    fn dual_side_bottom_strip() {
        // f* = p_1 ◁ g gives f = 1_1 ◁ g*
        let g2 = gamma(2).unwrap();
        let g = g2.tensor(&g2).unwrap();
        let f = BoolFun::p(1).unwrap().tensor(&g).unwrap().star();
        let s = strip_chain_bottom(&f).unwrap();
        assert_eq!(s.left, BoolFun::one(1).unwrap());
        assert_eq!(s.right, g.star());
        assert_eq!(predict_bottom_block(&f), Some(mask_from(&[1])));
    }

    #[test]
    fn chains_are_refused() {
        let e = strip_chain_top(&gamma(4).unwrap()).unwrap_err();
        assert!(e.to_string().contains("is chain"));
        assert!(strip_chain_bottom(&BoolFun::p(2).unwrap()).is_err());
    }
}
