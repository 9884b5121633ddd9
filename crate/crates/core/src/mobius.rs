//! Möbius expansion `f = sum_S hat_f(S) p_S` over the subset lattice.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::boolfun::{full_mask, mask_elems, mask_from, BoolFun, Mask, MAX_ARITY};
use crate::error::{Error, Result};

/// Nonzero Möbius coefficients of a function in `F_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusCoeffs {
    pub n: usize,
    pub coeffs: BTreeMap<Mask, i64>,
}

impl MobiusCoeffs {
    pub fn get(&self, s: Mask) -> i64 {
        self.coeffs.get(&s).copied().unwrap_or(0)
    }

    pub fn support(&self) -> Vec<Mask> {
        self.coeffs.keys().copied().collect()
    }
}

/// Dense coefficient vector indexed by subset mask.
pub fn mobius_dense(f: &BoolFun) -> Vec<i64> {
    let n = f.n();
    let full = full_mask(n);
    // value indexed by zero set, then subset-lattice inversion
    let mut v: Vec<i64> = (0..1usize << n)
        .map(|z| f.get((!(z as Mask) & full) as usize) as i64)
        .collect();
    for i in 0..n {
        let bit = 1usize << i;
        for z in 0..v.len() {
            if z & bit != 0 {
                v[z] -= v[z ^ bit];
            }
        }
    }
    v
}

pub fn mobius(f: &BoolFun) -> MobiusCoeffs {
    let coeffs = mobius_dense(f)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c != 0)
        .map(|(s, c)| (s as Mask, c))
        .collect();
    MobiusCoeffs { n: f.n(), coeffs }
}

pub fn from_mobius(c: &MobiusCoeffs) -> Result<BoolFun> {
    let n = c.n;
    if n == 0 || n > MAX_ARITY {
        return Err(Error::ArityCap { got: n, cap: MAX_ARITY });
    }
    let full = full_mask(n);
    let mut v = vec![0i64; 1 << n];
    for (&s, &x) in &c.coeffs {
        if s & !full != 0 {
            return Err(Error::NotInFn(format!("subset mask {s:#b} outside [{n}]")));
        }
        v[s as usize] = x;
    }
    for i in 0..n {
        let bit = 1usize << i;
        for z in 0..v.len() {
            if z & bit != 0 {
                v[z] += v[z ^ bit];
            }
        }
    }
    if let Some((z, x)) = v.iter().enumerate().find(|(_, x)| **x != 0 && **x != 1) {
        return Err(Error::NotInFn(format!(
            "value {x} at the string with zero set {:?}",
            mask_elems(z as Mask)
        )));
    }
    if v[full as usize] != 1 {
        return Err(Error::NotInFn("value 0 at the zero string".into()));
    }
    BoolFun::from_fn(n, |idx| v[(!(idx as Mask) & full) as usize] == 1)
}

#[derive(Serialize, Deserialize)]
struct Term {
    subset: Vec<usize>,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct MobiusJson {
    n: usize,
    terms: Vec<Term>,
}

impl Serialize for MobiusCoeffs {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut terms: Vec<Term> = self
            .coeffs
            .iter()
            .map(|(&m, &c)| Term { subset: mask_elems(m), coeff: c })
            .collect();
        terms.sort_by(|a, b| (a.subset.len(), &a.subset).cmp(&(b.subset.len(), &b.subset)));
        MobiusJson { n: self.n, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MobiusCoeffs {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MobiusJson::deserialize(d)?;
        let mut coeffs = BTreeMap::new();
        for t in j.terms {
            if t.subset.iter().any(|&i| i == 0 || i > j.n) {
                return Err(serde::de::Error::custom(format!("subset {:?} outside [{}]", t.subset, j.n)));
            }
            if t.coeff != 0 {
                *coeffs.entry(mask_from(&t.subset)).or_insert(0) += t.coeff;
            }
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(MobiusCoeffs { n: j.n, coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(n: usize, terms: &[(Mask, i64)]) -> MobiusCoeffs {
        MobiusCoeffs { n, coeffs: terms.iter().copied().collect() }
    }

    /// Direct evaluation of the defining sum
    /// `hat_f(S) = sum over t with t_j = 1 off S of (-1)^{sum_{j in S} t_j} f(t)`.
    fn mobius_by_definition(f: &BoolFun) -> Vec<i64> {
        let n = f.n();
        (0..1u32 << n)
            .map(|s| {
                let mut acc = 0i64;
                for idx in 0..1usize << n {
                    let t = idx as u32;
                    if t | s != full_mask(n) {
                        continue;
                    }
                    let sign = if (t & s).count_ones() % 2 == 0 { 1 } else { -1 };
                    acc += sign * f.get(idx) as i64;
                }
                acc
            })
            .collect()
    }

    #[test]
    fn p_s_has_single_coefficient() {
        for s in 0..8 {
            let m = mobius(&BoolFun::make_p(3, s).unwrap());
            assert_eq!(m, coeffs(3, &[(s, 1)]));
        }
    }

    #[test]
    fn gamma2_and_gstar() {
        let gamma2 = BoolFun::from_table(&[1, 1, 0, 1]).unwrap();
        assert_eq!(mobius(&gamma2), coeffs(2, &[(0, 1), (0b01, -1), (0b11, 1)]));
        let gstar = BoolFun::from_table(&[1, 1, 1, 0]).unwrap();
        assert_eq!(mobius(&gstar), coeffs(2, &[(0b01, 1), (0b10, 1), (0b11, -1)]));
    }

    #[test]
    fn matches_defining_sum() {
        for f in BoolFun::all_of_arity(3).unwrap() {
            assert_eq!(mobius_dense(&f), mobius_by_definition(&f));
        }
    }

    #[test]
    fn from_mobius_examples() {
        assert_eq!(from_mobius(&coeffs(3, &[(0, 1)])).unwrap(), BoolFun::one(3).unwrap());
        let g = from_mobius(&coeffs(2, &[(0, 1), (0b01, -1), (0b11, 1)])).unwrap();
        assert_eq!(g.table(), vec![1, 1, 0, 1]);
        assert_eq!(from_mobius(&coeffs(2, &[(0b01, 1)])).unwrap().table(), vec![1, 0, 1, 0]);
        assert!(from_mobius(&coeffs(2, &[(0, 2)])).is_err());
        assert!(from_mobius(&coeffs(2, &[(0b01, -1), (0, 1)])).is_err());
    }

    #[test]
    fn roundtrip_exhaustive_small() {
        for n in 1..=4 {
            for f in BoolFun::all_of_arity(n).unwrap() {
                assert_eq!(from_mobius(&mobius(&f)).unwrap(), f);
            }
        }
    }

    #[test]
    fn coefficients_sum_to_one() {
        for f in BoolFun::all_of_arity(3).unwrap() {
            assert_eq!(mobius(&f).coeffs.values().sum::<i64>(), 1);
        }
    }

    #[test]
    fn json_roundtrip() {
        let gamma2 = BoolFun::from_table(&[1, 1, 0, 1]).unwrap();
        let m = mobius(&gamma2);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"terms":[{"subset":[],"coeff":1},{"subset":[1],"coeff":-1},{"subset":[1,2],"coeff":1}]}"#
        );
        let back: MobiusCoeffs = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
