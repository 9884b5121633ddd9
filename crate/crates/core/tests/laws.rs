//! Algebraic laws of `F_n`, the Möbius expansion and the causal product.

mod common;

use common::{check_pair, check_quad, random_chain, random_fn};
use hotc_core::boolfun::{full_mask, map_mask, BoolFun};
use hotc_core::mobius::{from_mobius, mobius};
use hotc_core::perm;
use hotc_core::typealg::{causal, chain_type, enumerate_types, io_sets, is_type};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_chain_type(rng: &mut impl Rng, k: usize) -> BoolFun {
    let len = 2 * rng.gen_range(0..=k / 2) + 1;
    chain_type(k, &random_chain(rng, k, len)).unwrap()
}

fn arb_fn(max_n: usize) -> impl Strategy<Value = BoolFun> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), 1 << n)
            .prop_map(move |bits| BoolFun::from_fn(n, |i| i == 0 || bits[i]).unwrap())
    })
}

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

#[test]
fn f2_has_eight_elements() {
    assert_eq!(BoolFun::all_of_arity(2).unwrap().len(), 8);
    assert_eq!(BoolFun::all_of_arity(3).unwrap().len(), 128);
}

#[test]
fn mobius_roundtrip_exhaustive() {
    for n in 1..=4 {
        for f in BoolFun::all_of_arity(n).unwrap() {
            assert_eq!(from_mobius(&mobius(&f)).unwrap(), f);
        }
    }
}

#[test]
fn mobius_roundtrip_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=10);
        let f = random_fn(&mut rng, n);
        let m = mobius(&f);
        assert_eq!(m.coeffs.values().sum::<i64>(), 1);
        assert_eq!(from_mobius(&m).unwrap(), f);
    }
}

proptest! {
    #[test]
    fn mobius_of_permutation((f, s) in arb_fn(6).prop_flat_map(|f| { let n = f.n(); (Just(f), arb_perm(n)) })) {
        let m = mobius(&f);
        let mp = mobius(&f.permute(&s).unwrap());
        for set in 0..=full_mask(f.n()) {
            prop_assert_eq!(mp.get(set), m.get(map_mask(set, &s)));
        }
    }

    #[test]
    fn mobius_of_star(f in arb_fn(7)) {
        let m = mobius(&f);
        let ms = mobius(&f.star());
        let full = full_mask(f.n());
        for set in 0..=full {
            let want = if set == 0 || set == full { 1 - m.get(set) } else { -m.get(set) };
            prop_assert_eq!(ms.get(set), want);
        }
    }

    #[test]
    fn mobius_of_tensor(f in arb_fn(4), g in arb_fn(4)) {
        let (mf, mg) = (mobius(&f), mobius(&g));
        let mt = mobius(&f.tensor(&g).unwrap());
        let k = f.n();
        for set in 0..=full_mask(k + g.n()) {
            let (s, t) = (set & full_mask(k), set >> k);
            prop_assert_eq!(mt.get(set), mf.get(s) * mg.get(t));
        }
    }

    #[test]
    fn tensor_distributes((f, g, h) in arb_fn(3).prop_flat_map(|f| (1..=3usize).prop_flat_map(move |m| {
        let v = move || proptest::collection::vec(any::<bool>(), 1 << m)
            .prop_map(move |b| BoolFun::from_fn(m, |i| i == 0 || b[i]).unwrap());
        (Just(f.clone()), v(), v())
    }))) {
        prop_assert_eq!(f.tensor(&g.join(&h).unwrap()).unwrap(), f.tensor(&g).unwrap().join(&f.tensor(&h).unwrap()).unwrap());
        prop_assert_eq!(f.tensor(&g.meet(&h).unwrap()).unwrap(), f.tensor(&g).unwrap().meet(&f.tensor(&h).unwrap()).unwrap());
    }

    #[test]
    fn star_is_involution_and_reverses_order(f in arb_fn(6)) {
        prop_assert_eq!(f.star().star(), f.clone());
        let one = BoolFun::one(f.n()).unwrap();
        let p = BoolFun::p(f.n()).unwrap();
        prop_assert!(p.le(&f).unwrap() && f.le(&one).unwrap());
    }

    #[test]
    fn causal_is_associative_random(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (rng.gen_range(1..=3), rng.gen_range(1..=3), rng.gen_range(1..=3));
        let (f, g, h) = (random_fn(&mut rng, a), random_fn(&mut rng, b), random_fn(&mut rng, c));
        prop_assert_eq!(
            causal(&causal(&f, &g).unwrap(), &h).unwrap(),
            causal(&f, &causal(&g, &h).unwrap()).unwrap()
        );
    }
}

#[test]
fn tensor_below_dual_tensor() {
    for n1 in 1..=3 {
        for n2 in 1..=3 {
            let fs = BoolFun::all_of_arity(n1).unwrap();
            let gs = BoolFun::all_of_arity(n2).unwrap();
            for f in &fs {
                for g in &gs {
                    let lo = f.tensor(g).unwrap();
                    let hi = f.star().tensor(&g.star()).unwrap().star();
                    assert!(lo.le(&hi).unwrap());
                    let both_one = *f == BoolFun::one(n1).unwrap() && *g == BoolFun::one(n2).unwrap();
                    let both_p = *f == BoolFun::p(n1).unwrap() && *g == BoolFun::p(n2).unwrap();
                    assert_eq!(lo == hi, both_one || both_p, "{f:?} {g:?}");
                }
            }
        }
    }
}

#[test]
fn causal_laws_exhaustive() {
    for n1 in 1..=3 {
        for n2 in 1..=3 {
            let fs = BoolFun::all_of_arity(n1).unwrap();
            let gs = BoolFun::all_of_arity(n2).unwrap();
            for f in &fs {
                for g in &gs {
                    check_pair(f, g).unwrap();
                }
            }
        }
    }
    for n1 in 1..=2 {
        for n2 in 1..=2 {
            let fs = BoolFun::all_of_arity(n1).unwrap();
            let gs = BoolFun::all_of_arity(n2).unwrap();
            for f in &fs {
                for g in &fs {
                    for h in &gs {
                        for k in &gs {
                            check_quad(f, g, h, k).unwrap();
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn causal_laws_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let n1 = rng.gen_range(1..=7);
        let n2 = rng.gen_range(1..=8 - n1);
        let (f, g) = (random_fn(&mut rng, n1), random_fn(&mut rng, n1));
        let (h, k) = (random_fn(&mut rng, n2), random_fn(&mut rng, n2));
        check_pair(&f, &h).unwrap();
        check_quad(&f, &g, &h, &k).unwrap();
        let n3 = rng.gen_range(1..=3);
        let e = random_fn(&mut rng, n3);
        assert_eq!(causal(&causal(&f, &h).unwrap(), &e).unwrap(), causal(&f, &causal(&h, &e).unwrap()).unwrap());
    }
}

#[test]
fn chain_parity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut odd, mut even) = (0, 0);
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let len = rng.gen_range(1..=n + 1);
        let chain = random_chain(&mut rng, n, len);
        let typed = match chain_type(n, &chain) {
            Ok(f) => is_type(&f).is_yes(),
            Err(_) => false,
        };
        assert_eq!(typed, len % 2 == 1, "n={n} chain={chain:?}");
        if len % 2 == 1 { odd += 1 } else { even += 1 }
    }
    assert!(odd > 100 && even > 100);
}

#[test]
fn appending_a_chain_gives_a_type() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let n = rng.gen_range(1..=4);
        let set = enumerate_types(n).unwrap();
        let f = set.members.choose(&mut rng).unwrap().clone();
        let k = rng.gen_range(1..=3);
        let beta = random_chain_type(&mut rng, k);
        let s = perm::all(k).choose(&mut rng).unwrap().clone();
        let beta = beta.permute(&s).unwrap();
        assert!(is_type(&beta).is_yes());
        let (of, ob) = (io_sets(&f).outputs, io_sets(&beta).outputs);
        let fb = causal(&f, &beta).unwrap();
        assert!(is_type(&fb).is_yes(), "{f:?} ◁ {beta:?}");
        assert_eq!(io_sets(&fb).outputs, of | ob << n);
        let bf = causal(&beta, &f).unwrap();
        assert!(is_type(&bf).is_yes(), "{beta:?} ◁ {f:?}");
        assert_eq!(io_sets(&bf).outputs, ob | of << k);
    }
}
