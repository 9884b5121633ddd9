//! Verification suites. Results go to stdout in a fixed order; timings go to stderr.

use std::time::Instant;

use clap::ValueEnum;
use hotc_core::boolfun::{mask_from, BoolFun, Mask};
use hotc_core::mobius::{from_mobius, mobius};
use hotc_core::perm::block_permutation;
use hotc_core::poset::{build_poset, decompose, factor_dual_product, factor_product};
use hotc_core::quantum::{
    build_sf, comb_oracle, hom_q, is_channel_member, object_from_expr, projector_lattice_check, random_cptp, sf_dim,
    FirstOrderObj, QuantumObj,
};
use hotc_core::typealg::{
    causal, causal_rev, chain_type, enumerate_types_capped, expr_to_type, gamma, is_type_capped, structure_form,
    subtype_bounds, IOSets, TypeExpr, Verdict,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Boolean,
    Types,
    Posets,
    Quantum,
    All,
}

struct Ctx {
    seed: u64,
    cap: usize,
}

impl Ctx {
    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt)
    }
}

type Check = (&'static str, fn(&Ctx) -> Result<String, String>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: hotc_core::Error) -> String {
    e.to_string()
}

fn random_fn(rng: &mut impl Rng, n: usize) -> BoolFun {
    BoolFun::from_fn(n, |idx| idx == 0 || rng.gen_bool(0.5)).unwrap()
}

// boolean ---------------------------------------------------------------------------------

fn f2_count(_: &Ctx) -> Result<String, String> {
    let k = BoolFun::all_of_arity(2).map_err(e2s)?.len();
    ensure(k == 8, || format!("|F_2| = {k}"))?;
    Ok("|F_2| = 8".into())
}

fn mobius_roundtrip(ctx: &Ctx) -> Result<String, String> {
    for n in 1..=4 {
        for f in BoolFun::all_of_arity(n).map_err(e2s)? {
            ensure(from_mobius(&mobius(&f)).map_err(e2s)? == f, || format!("{f:?}"))?;
        }
    }
    let mut rng = ctx.rng(1);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=10);
        let f = random_fn(&mut rng, n);
        ensure(from_mobius(&mobius(&f)).map_err(e2s)? == f, || format!("{f:?}"))?;
    }
    Ok("exhaustive n <= 4, 1000 random n <= 10".into())
}

fn causal_laws(ctx: &Ctx) -> Result<String, String> {
    let check = |f: &BoolFun, g: &BoolFun| -> Result<(), String> {
        let fg = causal(f, g).map_err(e2s)?;
        ensure(fg.star() == causal(&f.star(), &g.star()).map_err(e2s)?, || format!("star at {f:?}, {g:?}"))?;
        let meet = fg.meet(&causal_rev(f, g).map_err(e2s)?).map_err(e2s)?;
        ensure(f.tensor(g).map_err(e2s)? == meet, || format!("tensor at {f:?}, {g:?}"))
    };
    for n1 in 1..=3 {
        for n2 in 1..=3 {
            let gs = BoolFun::all_of_arity(n2).map_err(e2s)?;
            for f in &BoolFun::all_of_arity(n1).map_err(e2s)? {
                for g in &gs {
                    check(f, g)?;
                }
            }
        }
    }
    let mut rng = ctx.rng(2);
    for _ in 0..500 {
        let n1 = rng.gen_range(1..=7);
        let n2 = rng.gen_range(1..=8 - n1);
        let (f, g, h) = (random_fn(&mut rng, n1), random_fn(&mut rng, n2), random_fn(&mut rng, 2));
        check(&f, &g)?;
        let left = causal(&causal(&f, &g).map_err(e2s)?, &h).map_err(e2s)?;
        let right = causal(&f, &causal(&g, &h).map_err(e2s)?).map_err(e2s)?;
        ensure(left == right, || format!("associativity at {f:?}, {g:?}, {h:?}"))?;
    }
    Ok("exhaustive n1, n2 <= 3, 500 random".into())
}

// types -----------------------------------------------------------------------------------

fn t_counts(ctx: &Ctx) -> Result<String, String> {
    let want = [2, 6, 26, 174, 1802];
    let top = ctx.cap.min(5);
    let mut got = Vec::new();
    for n in 1..=top {
        got.push(enumerate_types_capped(n, ctx.cap).map_err(e2s)?.len());
    }
    ensure(got[..] == want[..top], || format!("{got:?}"))?;
    Ok(format!("|T_n| for n = 1..{top}: {got:?}"))
}

fn counterexamples(ctx: &Ctx) -> Result<String, String> {
    let g = BoolFun::from_table(&[1, 1, 1, 0]).map_err(e2s)?.star();
    let reason = |f: &BoolFun| match is_type_capped(f, ctx.cap) {
        Verdict::No(r) => r,
        Verdict::Yes(_) => "accepted".into(),
    };
    let (a, b) = (reason(&g), reason(&g.star()));
    ensure(a.contains("coefficient 2") && b.contains("odd rank"), || format!("{a}; {b}"))?;
    ensure(!subtype_bounds(&g, IOSets { outputs: 0, inputs: 0 }), || "bounded for (∅, ∅)".into())?;
    Ok(format!("{a}; {b}"))
}

fn graded(ctx: &Ctx) -> Result<String, String> {
    let mut k = 0;
    for n in 1..=ctx.cap.min(5) {
        for f in &enumerate_types_capped(n, ctx.cap).map_err(e2s)?.members {
            let fl = build_poset(f).flags;
            ensure(fl.type_like(), || format!("{f:?}: {fl:?}"))?;
            k += 1;
        }
    }
    Ok(format!("{k} types graded with even rank and signs (-1)^rank"))
}

fn chain_parity(ctx: &Ctx) -> Result<String, String> {
    let mut rng = ctx.rng(3);
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let len = rng.gen_range(1..=n + 1);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut cuts: Vec<usize> = (0..=n).collect();
        cuts.shuffle(&mut rng);
        let mut cuts = cuts[..len].to_vec();
        cuts.sort_unstable();
        let chain: Vec<Mask> = cuts.iter().map(|&c| order[..c].iter().fold(0, |m, &i| m | 1 << i)).collect();
        let typed = chain_type(n, &chain).map(|f| is_type_capped(&f, ctx.cap).is_yes()).unwrap_or(false);
        ensure(typed == (len % 2 == 1), || format!("chain {chain:?} in [{n}]"))?;
    }
    Ok("500 random chains".into())
}

fn roundtrip_and_structure(ctx: &Ctx) -> Result<String, String> {
    let mut k = 0;
    for n in 1..=ctx.cap.min(5) {
        for f in &enumerate_types_capped(n, ctx.cap).map_err(e2s)?.members {
            ensure(&decompose(f).and_then(|t| t.reconstruct()).map_err(e2s)? == f, || format!("{f:?}"))?;
            if n <= 4 {
                let sf = structure_form(f).map_err(e2s)?;
                ensure(&sf.evaluate().map_err(e2s)? == f, || format!("∨∧ at {f:?}"))?;
                ensure(&sf.evaluate_meet_join().map_err(e2s)? == f, || format!("∧∨ at {f:?}"))?;
            }
            k += 1;
        }
    }
    Ok(format!("{k} decompositions, structure forms for n <= 4"))
}

// posets ----------------------------------------------------------------------------------

fn process() -> BoolFun {
    let g = gamma(2).unwrap();
    g.tensor(&g).unwrap().star()
}

fn comb_to_comb(_: &Ctx) -> Result<String, String> {
    let g2 = gamma(2).unwrap();
    let g = g2.tensor(&gamma(4).unwrap().star()).unwrap().star();
    let layered = causal(&causal(&BoolFun::one(1).unwrap(), &process()).unwrap(), &BoolFun::p(1).unwrap()).unwrap();
    ensure(layered.canonical().map_err(e2s)? == g.canonical().map_err(e2s)?, || "layering".into())?;
    let rho = block_permutation(&[0, 2, 1, 3], &[1, 2, 2, 1]).map_err(e2s)?;
    let g6 = gamma(6).unwrap();
    ensure(g6.join(&g6.permute(&rho).unwrap()).unwrap() == layered, || "γ_6 ∨ γ_6∘ρ".into())?;
    Ok(decompose(&g).map_err(e2s)?.to_string())
}

fn two_components(_: &Ctx) -> Result<String, String> {
    let g2 = gamma(2).unwrap();
    let g24 = g2.tensor(&gamma(4).unwrap()).unwrap().star();
    let a = process().tensor(&g24).unwrap().star();
    let b = process().tensor(&g2).unwrap().star();
    let f = a.tensor(&b).unwrap().star();
    let d = factor_dual_product(&f).map_err(e2s)?;
    ensure(d.factors == vec![a, b], || "factors".into())?;
    ensure(decompose(&f).and_then(|t| t.reconstruct()).map_err(e2s)? == f, || "round trip".into())?;
    Ok("two factors of arity 10 and 6".into())
}

fn three_colors(_: &Ctx) -> Result<String, String> {
    let g2 = gamma(2).unwrap();
    let f1 = causal(&process().tensor(&g2).unwrap(), &g2).unwrap();
    let f = f1.tensor(&gamma(6).unwrap()).unwrap().tensor(&process()).unwrap();
    let c = factor_product(&f).map_err(e2s)?.coloring;
    let want = vec![mask_from(&[1, 2, 3, 4, 5]), mask_from(&[9]), mask_from(&[15, 16, 17, 18])];
    ensure(c.classes == want, || format!("classes {:?}", c.classes))?;
    ensure(decompose(&f).and_then(|t| t.reconstruct()).map_err(e2s)? == f, || "round trip".into())?;
    Ok("classes {1..5}, {9}, {15..18}".into())
}

// quantum ---------------------------------------------------------------------------------

fn qubits(n: usize) -> Vec<FirstOrderObj> {
    vec![FirstOrderObj::state(2); n]
}

fn channel_arithmetic(_: &Ctx) -> Result<String, String> {
    let q = QuantumObj::first_order(2, 1.0);
    let h = hom_q(&q, &q);
    let d = h.affine().map_err(e2s)?.dim();
    ensure(d == 12 && (h.c - 2.0).abs() < 1e-12 && h.s.dim() == 13, || format!("d = {d}, c = {}", h.c))?;
    Ok("qubit channels: d = 12, c = 2".into())
}

fn ordered_exprs(lo: usize, hi: usize) -> Vec<TypeExpr> {
    let bases: Vec<TypeExpr> = if lo == hi {
        vec![TypeExpr::leaf(lo)]
    } else {
        (lo..hi)
            .flat_map(|m| {
                let right = ordered_exprs(m + 1, hi);
                ordered_exprs(lo, m)
                    .into_iter()
                    .flat_map(move |a| right.clone().into_iter().map(move |b| TypeExpr::tensor(a.clone(), b)))
            })
            .collect()
    };
    bases.into_iter().flat_map(|e| [e.clone(), TypeExpr::dual(e)]).collect()
}

fn oracle_equivalence(_: &Ctx) -> Result<String, String> {
    let mut k = 0;
    for n in 1..=4 {
        let objs = qubits(n);
        for e in ordered_exprs(1, n) {
            let (f, _) = expr_to_type(&e).map_err(e2s)?;
            let (s, a) = build_sf(&f, &objs).map_err(e2s)?;
            let x = object_from_expr(&e, &objs).map_err(e2s)?;
            ensure(x.equals(&a, 1e-8), || format!("{e}"))?;
            ensure(s.dim() == sf_dim(&f, &objs), || format!("{e}: dimension"))?;
            k += 1;
        }
    }
    Ok(format!("{k} expressions over qubits"))
}

fn combs(_: &Ctx) -> Result<String, String> {
    for n in [2, 4] {
        let f = gamma(n).unwrap();
        let c = comb_oracle(&f, &qubits(n)).map_err(e2s)?;
        let (_, a) = build_sf(&f, &qubits(n)).map_err(e2s)?;
        ensure(c.affine.equals(&a, 1e-8), || format!("γ_{n}"))?;
    }
    Ok("γ_2, γ_4 on qubits".into())
}

fn channels(ctx: &Ctx) -> Result<String, String> {
    let mut rng = ctx.rng(4);
    for _ in 0..100 {
        let c = random_cptp(2, 2, rng.gen()).map_err(e2s)?;
        ensure(is_channel_member(&c, 2, 2, 1e-8).map_err(e2s)?, || "random channel rejected".into())?;
        ensure(!is_channel_member(&(c * 1.5), 2, 2, 1e-8).map_err(e2s)?, || "scaled map accepted".into())?;
    }
    Ok("100 random channels accepted, their 1.5x scalings rejected".into())
}

fn lattice(_: &Ctx) -> Result<String, String> {
    let ts = enumerate_types_capped(2, 2).map_err(e2s)?;
    let mut k = 0;
    for f in &ts.members {
        for g in &ts.members {
            let r = projector_lattice_check(f, g, &qubits(2)).map_err(e2s)?;
            ensure(r.holds(1e-8), || format!("{f:?}, {g:?}: {:?}", r.violations(1e-8)))?;
            k += 1;
        }
    }
    Ok(format!("{k} pairs over T_2"))
}

fn suite(s: Suite) -> Vec<(&'static str, Vec<Check>)> {
    let boolean: Vec<Check> =
        vec![("F_2 count", f2_count), ("Möbius round trip", mobius_roundtrip), ("causal laws", causal_laws)];
    let types: Vec<Check> = vec![
        ("T_n counts", t_counts),
        ("counterexamples", counterexamples),
        ("graded posets", graded),
        ("chain parity", chain_parity),
        ("decompose and structure", roundtrip_and_structure),
    ];
    let posets: Vec<Check> =
        vec![("comb to comb", comb_to_comb), ("two components", two_components), ("three colors", three_colors)];
    let quantum: Vec<Check> = vec![
        ("channel arithmetic", channel_arithmetic),
        ("oracle equivalence", oracle_equivalence),
        ("comb oracle", combs),
        ("channel membership", channels),
        ("projector lattice", lattice),
    ];
    match s {
        Suite::Boolean => vec![("boolean", boolean)],
        Suite::Types => vec![("types", types)],
        Suite::Posets => vec![("posets", posets)],
        Suite::Quantum => vec![("quantum", quantum)],
        Suite::All => vec![("boolean", boolean), ("types", types), ("posets", posets), ("quantum", quantum)],
    }
}

/// Run a suite and return the number of failed checks.
pub fn run(s: Suite, seed: u64, cap: usize) -> usize {
    let ctx = Ctx { seed, cap };
    let mut failed = 0;
    for (name, checks) in suite(s) {
        for (check, f) in checks {
            let t = Instant::now();
            let out = f(&ctx);
            match &out {
                Ok(d) => println!("PASS  {name}/{check}: {d}"),
                Err(d) => println!("FAIL  {name}/{check}: {d}"),
            }
            eprintln!("      {name}/{check}: {:.3} s", t.elapsed().as_secs_f64());
            failed += out.is_err() as usize;
        }
    }
    println!("{}", if failed == 0 { "all checks passed".to_string() } else { format!("{failed} check(s) failed") });
    failed
}
