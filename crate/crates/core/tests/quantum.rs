//! Quantum realizations: `S_f`, expression evaluation, combs, channels and morphisms.

mod common;

use common::{ordered_exprs, qubits};
use hotc_core::boolfun::BoolFun;
use hotc_core::linal::{aff_hom, choi, morphism_check, AffSpace, Subspace};
use hotc_core::quantum::{
    build_sf, herm, is_channel_member, object_from_expr, random_cptp, sf_dim, FirstOrderObj,
};
use hotc_core::typealg::{enumerate_types, expr_to_type, gamma};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn expression_counts() {
    let counts: Vec<usize> = (1..=4).map(|n| ordered_exprs(1, n).len()).collect();
    assert_eq!(counts, vec![2, 8, 64, 640]);
}

#[test]
fn expressions_match_sf_up_to_three_leaves() {
    for n in 1..=3 {
        let objs = qubits(n);
        for e in ordered_exprs(1, n) {
            let (f, _) = expr_to_type(&e).unwrap();
            let a = object_from_expr(&e, &objs).unwrap();
            let (s, af) = build_sf(&f, &objs).unwrap();
            assert!(a.equals(&af, 1e-8), "{e}");
            assert_eq!(s.dim(), sf_dim(&f, &objs), "{e}");
        }
    }
}

#[test]
fn mixed_objects() {
    let objs = [FirstOrderObj::classical(3, 1.0), FirstOrderObj::state(3), FirstOrderObj::quantum(2, 2.0)];
    for e in ordered_exprs(1, 3) {
        let (f, _) = expr_to_type(&e).unwrap();
        let (_, af) = build_sf(&f, &objs).unwrap();
        assert!(object_from_expr(&e, &objs).unwrap().equals(&af, 1e-8), "{e}");
    }
}

/// `diag(±1)` of entrywise conjugation on a qubit product.
fn conj_signs(n: usize) -> DVector<f64> {
    let one = DVector::from_vec(herm::conjugation_signs(2));
    (1..n).fold(one.clone(), |acc, _| acc.kronecker(&one))
}

#[test]
fn sf_is_conjugation_invariant() {
    for n in 1..=3 {
        let signs = DMatrix::from_diagonal(&conj_signs(n));
        for f in &enumerate_types(n).unwrap().members {
            let p = build_sf(f, &qubits(n)).unwrap().0.projector();
            assert!((&signs * &p - &p * &signs).norm() < 1e-10);
        }
    }
}

#[test]
fn dual_object_is_star_over_conjugates() {
    let objs = [FirstOrderObj::quantum(2, 0.5), FirstOrderObj::classical(2, 1.0), FirstOrderObj::state(2)];
    let conj: Vec<FirstOrderObj> = objs.iter().map(FirstOrderObj::conjugate).collect();
    for f in &enumerate_types(3).unwrap().members {
        let d = build_sf(f, &objs).unwrap().1.dual().unwrap();
        let s = build_sf(&f.star(), &conj).unwrap().1;
        assert!(d.equals(&s, 1e-8), "{f:?}");
    }
}

#[test]
fn dimension_bookkeeping() {
    for n in 1..=4 {
        let objs = qubits(n);
        let t = enumerate_types(n).unwrap();
        let fs = if n < 4 { &t.members } else { &t.reps };
        for f in fs {
            let (s, a) = build_sf(f, &objs).unwrap();
            // dimension by counting minterms with `D - 1 = 3` choices per set bit
            let direct: usize = f.minterms().iter().map(|&m| 3usize.pow(m.count_ones())).sum();
            assert_eq!(s.dim(), direct);
            assert_eq!(a.dim() + 1, s.dim());
        }
    }
    let one = BoolFun::one(3).unwrap();
    assert_eq!(build_sf(&one, &qubits(3)).unwrap().0.dim(), 64);
    assert_eq!(build_sf(&gamma(4).unwrap(), &qubits(4)).unwrap().0.dim(), 205);
}

fn random_aff(rng: &mut ChaCha8Rng, d: usize) -> AffSpace {
    let k = rng.gen_range(0..d);
    let gens = DMatrix::from_fn(d, k, |_, _| rng.gen_range(-1.0..1.0));
    let base = DVector::from_fn(d, |_, _| rng.gen_range(-1.0..1.0));
    AffSpace::new(base, Subspace::span(&gens, 1e-9), 1e-9).unwrap()
}

/// A map sending `A` into `B`: base to a point of `B`, `L_A` into `L_B`, plus noise on
/// `Span(A)^⊥`.
fn map_into(rng: &mut ChaCha8Rng, a: &AffSpace, b: &AffSpace) -> DMatrix<f64> {
    let db = b.ambient();
    let target = b.base() + b.lin().basis() * DVector::from_fn(b.dim(), |_, _| rng.gen_range(-1.0..1.0));
    let mut m = &target * a.dual_point().transpose();
    let k = DMatrix::from_fn(b.dim(), a.dim(), |_, _| rng.gen_range(-1.0..1.0));
    m += b.lin().basis() * k * a.lin().basis().transpose();
    let perp = a.span().complement();
    let noise = DMatrix::from_fn(db, perp.dim(), |_, _| rng.gen_range(-1.0..1.0));
    m += noise * perp.basis().transpose();
    m
}

#[test]
fn morphisms_agree_with_choi_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut members = 0;
    for t in 0..200 {
        let da = rng.gen_range(1..=5);
        let db = rng.gen_range(1..=5);
        let a = random_aff(&mut rng, da);
        let b = random_aff(&mut rng, db);
        let m = if t % 2 == 0 {
            map_into(&mut rng, &a, &b)
        } else {
            DMatrix::from_fn(db, da, |_, _| rng.gen_range(-1.0..1.0))
        };
        let direct = morphism_check(&m, &a, &b, 1e-8).unwrap();
        let hom = aff_hom(&a, &b).unwrap();
        assert_eq!(direct, hom.contains(&choi(&m), 1e-8), "trial {t}");
        members += direct as usize;
    }
    assert!(members >= 100);
    assert!(morphism_check(&DMatrix::zeros(2, 2), &random_aff(&mut rng, 3), &random_aff(&mut rng, 2), 1e-8).is_err());
}

#[test]
fn channels_between_different_sizes() {
    for seed in 0..5 {
        let c = random_cptp(3, 2, seed).unwrap();
        assert!(is_channel_member(&c, 3, 2, 1e-8).unwrap());
        assert!(!is_channel_member(&(&c * 0.5), 3, 2, 1e-8).unwrap());
    }
}
