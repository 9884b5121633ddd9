//! Truth-table representation of functions `f: {0,1}^n -> {0,1}` with `f(0...0) = 1`.
//!
//! The string `s = s_1 ... s_n` is stored at index `idx(s) = sum_i s_i 2^(i-1)`. Subsets of
//! `[n]` are bit masks with bit `i-1` standing for element `i`; the zero set of a string is the
//! complement of its index within `n` bits.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{self, Perm};

/// Largest supported arity for truth tables.
pub const MAX_ARITY: usize = 20;
/// Largest arity accepted by [`BoolFun::canonical`].
pub const MAX_CANON_ARITY: usize = 8;

/// Subset of `[n]`, bit `i-1` set iff `i` belongs to it.
pub type Mask = u32;

pub fn full_mask(n: usize) -> Mask {
    if n == 0 {
        0
    } else {
        (u32::MAX) >> (32 - n)
    }
}

/// Zero set `{i : s_i = 0}` of the string stored at `idx`.
pub fn zero_set(idx: usize, n: usize) -> Mask {
    !(idx as Mask) & full_mask(n)
}

/// 1-based element list of a mask.
pub fn mask_elems(m: Mask) -> Vec<usize> {
    (0..32).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Mask from 1-based elements.
pub fn mask_from(elems: &[usize]) -> Mask {
    elems.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

/// `{1,3}` style rendering; the empty set renders as `{}`.
pub fn fmt_mask(m: Mask) -> String {
    let parts: Vec<String> = mask_elems(m).iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Image of a mask under a 0-based permutation.
pub fn map_mask(m: Mask, p: &[usize]) -> Mask {
    let mut out = 0;
    for (i, &x) in p.iter().enumerate() {
        if m >> i & 1 == 1 {
            out |= 1 << x;
        }
    }
    out
}

fn words_for(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolFun {
    n: usize,
    words: Vec<u64>,
}

impl BoolFun {
    fn zeroed(n: usize) -> Result<Self> {
        if n > MAX_ARITY {
            return Err(Error::ArityCap { got: n, cap: MAX_ARITY });
        }
        Ok(BoolFun { n, words: vec![0; words_for(n)] })
    }

    /// Build from a predicate on indices; fails unless the value at index 0 is 1.
    pub fn from_fn(n: usize, mut pred: impl FnMut(usize) -> bool) -> Result<Self> {
        let mut f = Self::zeroed(n)?;
        for idx in 0..1usize << n {
            if pred(idx) {
                f.words[idx >> 6] |= 1 << (idx & 63);
            }
        }
        f.check_theta()?;
        Ok(f)
    }

    pub fn from_table(table: &[u8]) -> Result<Self> {
        let n = table.len().trailing_zeros() as usize;
        if table.is_empty() || table.len() != 1 << n {
            return Err(Error::NotInFn(format!("table length {} is not a power of two", table.len())));
        }
        if table.iter().any(|&b| b > 1) {
            return Err(Error::NotInFn("table entries must be 0 or 1".into()));
        }
        Self::from_fn(n, |i| table[i] == 1)
    }

    pub fn from_minterms(n: usize, minterms: &[usize]) -> Result<Self> {
        let mut f = Self::zeroed(n)?;
        for &i in minterms {
            if i >= 1 << n {
                return Err(Error::NotInFn(format!("minterm {i} out of range for n={n}")));
            }
            f.words[i >> 6] |= 1 << (i & 63);
        }
        f.check_theta()?;
        Ok(f)
    }

    fn check_theta(&self) -> Result<()> {
        if self.words[0] & 1 == 0 {
            return Err(Error::NotInFn("value at the zero string must be 1".into()));
        }
        Ok(())
    }

    /// The constant `1_n`.
    pub fn one(n: usize) -> Result<Self> {
        Self::from_fn(n, |_| true)
    }

    /// `p_S(t) = prod_{j in S} (1 - t_j)`.
    pub fn make_p(n: usize, s: Mask) -> Result<Self> {
        if s & !full_mask(n) != 0 {
            return Err(Error::NotInFn(format!("subset {} not within [{n}]", fmt_mask(s))));
        }
        Self::from_fn(n, |idx| idx as Mask & s == 0)
    }

    /// `p_n`, the indicator of the zero string.
    pub fn p(n: usize) -> Result<Self> {
        Self::make_p(n, full_mask(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn get(&self, idx: usize) -> bool {
        self.words[idx >> 6] >> (idx & 63) & 1 == 1
    }

    /// Value at the string whose zero set is `z`.
    #[inline]
    pub fn at_zero_set(&self, z: Mask) -> bool {
        self.get((!z & full_mask(self.n)) as usize)
    }

    pub fn minterms(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.get(i)).collect()
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn table(&self) -> Vec<u8> {
        (0..self.len()).map(|i| self.get(i) as u8).collect()
    }

    fn tail_mask(&self) -> u64 {
        if self.n >= 6 {
            u64::MAX
        } else {
            (1u64 << (1 << self.n)) - 1
        }
    }

    fn same_arity(&self, g: &BoolFun) -> Result<()> {
        if self.n != g.n {
            return Err(Error::ArityMismatch(self.n, g.n));
        }
        Ok(())
    }

    /// `f* = 1 - f + p_n`.
    pub fn star(&self) -> BoolFun {
        let tail = self.tail_mask();
        let mut words: Vec<u64> = self.words.iter().map(|w| !w & tail).collect();
        words[0] |= 1;
        BoolFun { n: self.n, words }
    }

    pub fn meet(&self, g: &BoolFun) -> Result<BoolFun> {
        self.same_arity(g)?;
        let words = self.words.iter().zip(&g.words).map(|(a, b)| a & b).collect();
        Ok(BoolFun { n: self.n, words })
    }

    pub fn join(&self, g: &BoolFun) -> Result<BoolFun> {
        self.same_arity(g)?;
        let words = self.words.iter().zip(&g.words).map(|(a, b)| a | b).collect();
        Ok(BoolFun { n: self.n, words })
    }

    /// Pointwise `self <= g`.
    pub fn le(&self, g: &BoolFun) -> Result<bool> {
        self.same_arity(g)?;
        Ok(self.words.iter().zip(&g.words).all(|(a, b)| a & !b == 0))
    }

    /// `(f (x) g)(s1 s2) = f(s1) g(s2)`, with `f` on the low indices.
    pub fn tensor(&self, g: &BoolFun) -> Result<BoolFun> {
        let n1 = self.n;
        BoolFun::from_fn(n1 + g.n, |idx| self.get(idx & ((1 << n1) - 1)) && g.get(idx >> n1))
    }

    /// `(f o sigma)(s) = f(s o sigma^{-1})`; with this convention `p_S o sigma = p_{sigma^{-1}(S)}`.
    pub fn permute(&self, sigma: &[usize]) -> Result<BoolFun> {
        if sigma.len() != self.n {
            return Err(Error::InvalidPermutation(format!(
                "length {} for arity {}",
                sigma.len(),
                self.n
            )));
        }
        perm::check(sigma)?;
        Ok(self.permute_unchecked(sigma))
    }

    fn permute_unchecked(&self, sigma: &[usize]) -> BoolFun {
        let mut out = BoolFun { n: self.n, words: vec![0; self.words.len()] };
        for idx in 0..self.len() {
            let t = map_mask(idx as Mask, sigma) as usize;
            if self.get(t) {
                out.words[idx >> 6] |= 1 << (idx & 63);
            }
        }
        out
    }

    /// Restriction to the positions `pos` (0-based, in the given order), every other
    /// argument set to 0.
    pub fn restrict(&self, pos: &[usize]) -> Result<BoolFun> {
        BoolFun::from_fn(pos.len(), |t| {
            let mut idx = 0usize;
            for (q, &p) in pos.iter().enumerate() {
                if t >> q & 1 == 1 {
                    idx |= 1 << p;
                }
            }
            self.get(idx)
        })
    }

    /// Rearrange so that the result reads position `q` of `self` from argument `order[q]`:
    /// `out(s) = self(s_{order[0]}, s_{order[1]}, ...)`.
    pub fn align(&self, order: &[usize]) -> Result<BoolFun> {
        self.permute(&perm::inverse(order))
    }

    /// Lexicographic comparison of the bit sequences `b_0 b_1 ...`.
    pub fn lex_cmp(&self, g: &BoolFun) -> Ordering {
        for (a, b) in self.words.iter().zip(&g.words) {
            if a != b {
                let pos = (a ^ b).trailing_zeros();
                return if a >> pos & 1 == 0 { Ordering::Less } else { Ordering::Greater };
            }
        }
        self.n.cmp(&g.n)
    }

    /// Lexicographically least table in the permutation orbit.
    pub fn canonical(&self) -> Result<BoolFun> {
        Ok(self.canonical_with_perm()?.0)
    }

    /// Canonical form together with a permutation `sigma` such that `permute(self, sigma)` is it.
    pub fn canonical_with_perm(&self) -> Result<(BoolFun, Perm)> {
        if self.n > MAX_CANON_ARITY {
            return Err(Error::ArityCap { got: self.n, cap: MAX_CANON_ARITY });
        }
        let mut best = self.clone();
        let mut best_p = perm::identity(self.n);
        for p in perm::all(self.n).into_iter().skip(1) {
            let g = self.permute_unchecked(&p);
            if g.lex_cmp(&best) == Ordering::Less {
                best = g;
                best_p = p;
            }
        }
        Ok((best, best_p))
    }

    /// Indices `j` (0-based) such that `f(e^j) = 1`.
    pub fn unit_vector_ones(&self) -> Mask {
        (0..self.n).filter(|&j| self.get(1 << j)).fold(0, |m, j| m | 1 << j)
    }

    /// Whether `f` ignores argument `j` (0-based).
    pub fn ignores(&self, j: usize) -> bool {
        (0..self.len()).all(|i| i >> j & 1 == 1 || self.get(i) == self.get(i | 1 << j))
    }

    /// All of `F_n`: the `2^(2^n - 1)` tables with value 1 at the zero string.
    pub fn all_of_arity(n: usize) -> Result<Vec<BoolFun>> {
        if n > 4 {
            return Err(Error::ArityCap { got: n, cap: 4 });
        }
        let free = (1usize << n) - 1;
        Ok((0..1u64 << free)
            .map(|bits| BoolFun { n, words: vec![(bits << 1) | 1] })
            .collect())
    }
}

impl fmt::Debug for BoolFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolFun(n={}, ", self.n)?;
        if self.n <= 6 {
            let s: String = self.table().iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();
            write!(f, "[{s}])")
        } else {
            write!(f, "{} ones)", self.count_ones())
        }
    }
}

#[derive(Serialize, Deserialize)]
struct BoolFunJson {
    n: usize,
    minterms: Vec<usize>,
}

impl Serialize for BoolFun {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BoolFunJson { n: self.n, minterms: self.minterms() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoolFun {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = BoolFunJson::deserialize(d)?;
        if j.n == 0 {
            return Err(serde::de::Error::custom("arity must be at least 1"));
        }
        BoolFun::from_minterms(j.n, &j.minterms).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(bits: &[u8]) -> BoolFun {
        BoolFun::from_table(bits).unwrap()
    }

    #[test]
    fn make_p_examples() {
        assert_eq!(BoolFun::make_p(2, 0).unwrap(), BoolFun::one(2).unwrap());
        assert_eq!(BoolFun::make_p(2, 0b11).unwrap().table(), vec![1, 0, 0, 0]);
        assert_eq!(BoolFun::make_p(2, 0b01).unwrap().table(), vec![1, 0, 1, 0]);
    }

    #[test]
    fn star_examples() {
        assert_eq!(BoolFun::one(2).unwrap().star(), BoolFun::p(2).unwrap());
        let gamma2 = t(&[1, 1, 0, 1]);
        assert_eq!(gamma2.star().table(), vec![1, 0, 1, 0]);
    }

    #[test]
    fn join_of_singletons() {
        let a = BoolFun::make_p(2, 0b01).unwrap();
        let b = BoolFun::make_p(2, 0b10).unwrap();
        assert_eq!(a.join(&b).unwrap().table(), vec![1, 1, 1, 0]);
        assert!(a.join(&BoolFun::one(3).unwrap()).is_err());
    }

    #[test]
    fn meet_of_p_is_p_of_union() {
        for s in 0..8 {
            for u in 0..8 {
                let m = BoolFun::make_p(3, s).unwrap().meet(&BoolFun::make_p(3, u).unwrap()).unwrap();
                assert_eq!(m, BoolFun::make_p(3, s | u).unwrap());
            }
        }
    }

    #[test]
    fn tensor_of_constants() {
        let one = BoolFun::one(1).unwrap();
        let p = BoolFun::p(1).unwrap();
        assert_eq!(one.tensor(&one).unwrap(), BoolFun::one(2).unwrap());
        assert_eq!(p.tensor(&p).unwrap(), BoolFun::p(2).unwrap());
    }

    #[test]
    fn tensor_places_left_factor_low() {
        let f = BoolFun::make_p(1, 1).unwrap();
        let g = BoolFun::one(1).unwrap();
        // f on index 1: value 1 iff s_1 = 0
        assert_eq!(f.tensor(&g).unwrap().table(), vec![1, 0, 1, 0]);
        assert_eq!(g.tensor(&f).unwrap().table(), vec![1, 1, 0, 0]);
    }

    #[test]
    fn permute_examples() {
        let gamma2 = t(&[1, 1, 0, 1]);
        assert_eq!(gamma2.permute(&[0, 1]).unwrap(), gamma2);
        assert_eq!(gamma2.permute(&[1, 0]).unwrap().table(), vec![1, 0, 1, 1]);
        assert!(gamma2.permute(&[0, 0]).is_err());
    }

    #[test]
    fn permute_p_s_is_p_of_preimage() {
        let sigma = vec![2, 0, 3, 1];
        let inv = perm::inverse(&sigma);
        for s in 0..16 {
            let lhs = BoolFun::make_p(4, s).unwrap().permute(&sigma).unwrap();
            assert_eq!(lhs, BoolFun::make_p(4, map_mask(s, &inv)).unwrap());
        }
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(BoolFun::one(3).unwrap().canonical().unwrap(), BoolFun::one(3).unwrap());
        let gamma2 = t(&[1, 1, 0, 1]);
        let sw = gamma2.permute(&[1, 0]).unwrap();
        assert_eq!(sw.canonical().unwrap(), gamma2.canonical().unwrap());
        let (c, p) = gamma2.canonical_with_perm().unwrap();
        assert_eq!(gamma2.permute(&p).unwrap(), c);
        assert!(BoolFun::one(9).unwrap().canonical().is_err());
    }

    #[test]
    fn f2_has_eight_elements() {
        assert_eq!(BoolFun::all_of_arity(2).unwrap().len(), 8);
    }

    #[test]
    fn rejects_zero_at_theta() {
        assert!(BoolFun::from_table(&[0, 1]).is_err());
        assert!(BoolFun::from_minterms(2, &[1, 2]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let gamma2 = t(&[1, 1, 0, 1]);
        let s = serde_json::to_string(&gamma2).unwrap();
        assert_eq!(s, r#"{"n":2,"minterms":[0,1,3]}"#);
        let back: BoolFun = serde_json::from_str(&s).unwrap();
        assert_eq!(back, gamma2);
    }

    #[test]
    fn restrict_and_align() {
        let f = BoolFun::make_p(3, 0b101).unwrap();
        assert_eq!(f.restrict(&[0, 2]).unwrap(), BoolFun::p(2).unwrap());
        assert_eq!(f.restrict(&[1]).unwrap(), BoolFun::one(1).unwrap());
        let g = t(&[1, 1, 0, 1]).tensor(&BoolFun::one(1).unwrap()).unwrap();
        // order[q] is the argument feeding position q
        let h = g.align(&[2, 0, 1]).unwrap();
        for idx in 0..8usize {
            let s = |i: usize| idx >> i & 1;
            let inner = s(2) | s(0) << 1 | s(1) << 2;
            assert_eq!(h.get(idx), g.get(inner));
        }
    }
}
