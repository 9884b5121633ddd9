//! Exhaustive generation of `T_n` as the closure of `{1_1}` under tensor, star and
//! permutation.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use crate::boolfun::{BoolFun, MAX_CANON_ARITY};
use crate::error::{Error, Result};
use crate::perm;

pub const DEFAULT_ENUM_CAP: usize = 5;

/// Cap from `HOTC_ENUM_CAP`, else [`DEFAULT_ENUM_CAP`].
pub fn enum_cap() -> usize {
    std::env::var("HOTC_ENUM_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUM_CAP)
}

/// `T_n` as canonical orbit representatives plus the full orbit union.
#[derive(Debug)]
pub struct TypeSet {
    pub n: usize,
    /// Canonical representatives, lexicographically sorted.
    pub reps: Vec<BoolFun>,
    /// All members, lexicographically sorted.
    pub members: Vec<BoolFun>,
    lookup: HashSet<BoolFun>,
}

impl TypeSet {
    pub fn contains(&self, f: &BoolFun) -> bool {
        self.lookup.contains(f)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<TypeSet>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<TypeSet>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn enumerate_types(n: usize) -> Result<Arc<TypeSet>> {
    enumerate_types_capped(n, enum_cap())
}

pub fn enumerate_types_capped(n: usize, cap: usize) -> Result<Arc<TypeSet>> {
    if n == 0 {
        return Err(Error::EmptyArity);
    }
    let cap = cap.min(MAX_CANON_ARITY);
    if n > cap {
        return Err(Error::ArityCap { got: n, cap });
    }
    let mut map = cache().lock().unwrap_or_else(|e| e.into_inner());
    build(&mut map, n)
}

fn sorted(mut v: Vec<BoolFun>) -> Vec<BoolFun> {
    v.sort_by(|a, b| a.lex_cmp(b));
    v
}

fn build(map: &mut HashMap<usize, Arc<TypeSet>>, n: usize) -> Result<Arc<TypeSet>> {
    if let Some(s) = map.get(&n) {
        return Ok(s.clone());
    }
    let reps: Vec<BoolFun> = if n == 1 {
        sorted(vec![BoolFun::one(1)?, BoolFun::p(1)?])
    } else {
        let mut found: HashSet<BoolFun> = HashSet::new();
        for k in 1..=n / 2 {
            let left = build(map, k)?;
            let right = build(map, n - k)?;
            for g in &left.reps {
                for h in &right.reps {
                    let t = g.tensor(h)?;
                    found.insert(t.canonical()?);
                    found.insert(t.star().canonical()?);
                }
            }
        }
        sorted(found.into_iter().collect())
    };
    let perms = perm::all(n);
    let mut lookup: HashSet<BoolFun> = HashSet::new();
    for r in &reps {
        for p in &perms {
            lookup.insert(r.permute(p)?);
        }
    }
    let members = sorted(lookup.iter().cloned().collect());
    debug_assert!(members.windows(2).all(|w| w[0].lex_cmp(&w[1]) == Ordering::Less));
    let set = Arc::new(TypeSet { n, reps, members, lookup });
    map.insert(n, set.clone());
    Ok(set)
}
