//! Acceptance battery: one pass/fail line per criterion, exact arithmetic
//! throughout. Exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use common::{brute_force_nw, kl_table_agrees, random_hecke, random_word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use soergel::bimod::{
    adjunction_fs, generic_splitting, graded_hom, hom_solve, standard_matrix, theta_exact_sequence, verify_theorem1,
    verify_theorem2, BSBimodule, BaseChange, BimodError, PolyRing,
};
use soergel::coxeter::{CoxeterMatrix, GroupTable};
use soergel::decat::{
    bs_in_kl_basis, hom_prediction, hom_rank_formula, specialize_q1, standard_multiplicities,
};
use soergel::field::FieldElement;
use soergel::hecke::{HeckeAlgebra, HeckeElement, KLTable};
use soergel::laurent::LaurentPoly;
use soergel::reps::{builtin_pair, check_rf, check_rvf, geometric_rep, RfWitness};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn group(name: &str) -> GroupTable {
    GroupTable::builtin(name).unwrap()
}

fn a2_geometric() -> (CoxeterMatrix, GroupTable, std::sync::Arc<PolyRing>) {
    let cm = CoxeterMatrix::builtin("A2").unwrap();
    let g = GroupTable::build(&cm, None).unwrap();
    let r = PolyRing::new(&geometric_rep(&cm).unwrap(), cm.labels()).unwrap();
    (cm, g, r)
}

fn words_up_to(rank: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (0..rank).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn hecke_kernel() -> Outcome {
    let g = group("A3");
    let h = HeckeAlgebra::new(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..1000 {
        let (a, b, c) = (random_hecke(&mut rng, &g, 3), random_hecke(&mut rng, &g, 3), random_hecke(&mut rng, &g, 3));
        let left = h.mul(&h.mul(&a, &b).unwrap(), &c).unwrap();
        let right = h.mul(&a, &h.mul(&b, &c).unwrap()).unwrap();
        ensure(left == right, || format!("associativity fails on triple {i}"))?;
        let bar_a = h.bar(&a).unwrap();
        ensure(h.bar(&bar_a).unwrap() == a, || format!("bar is not an involution on pair {i}"))?;
        let bar_ab = h.bar(&h.mul(&a, &b).unwrap()).unwrap();
        ensure(bar_ab == h.mul(&bar_a, &h.bar(&b).unwrap()).unwrap(), || format!("bar is not multiplicative on pair {i}"))?;
    }
    let q = LaurentPoly::q();
    for s in 0..g.rank() {
        let mut want = HeckeElement::scalar(q.clone());
        want.add_term(g.generator(s), &(&q - &LaurentPoly::one()));
        ensure(h.mul(&h.t_gen(s), &h.t_gen(s)).unwrap() == want, || format!("quadratic relation fails for generator {s}"))?;
    }
    Ok(())
}

fn kl_correctness() -> Outcome {
    for name in ["A2", "B2", "A3"] {
        let g = group(name);
        let h = HeckeAlgebra::new(&g);
        let kl = KLTable::build(&g).unwrap();
        for w in g.elements() {
            let c = kl.element(w);
            ensure(&h.bar(c).unwrap() == c, || format!("{name}: C'_{} is not bar-invariant", g.format(w)))?;
            ensure(h.h_coeff(c, w).is_one(), || format!("{name}: leading coefficient of C'_{}", g.format(w)))?;
            for (y, _) in c.terms() {
                ensure(y == w || h.h_coeff(c, y).min_exp().is_some_and(|e| e >= 1) && g.bruhat_leq(y, w), || {
                    format!("{name}: C'_{} not unitriangular at {}", g.format(w), g.format(y))
                })?;
            }
        }
        kl_table_agrees(&g, &kl).map_err(|e| format!("{name}: {e}"))?;
    }
    let g = group("A2");
    let h = HeckeAlgebra::new(&g);
    let kl = KLTable::build(&g).unwrap();
    let c = |w: &str| kl.element(g.parse(w).unwrap()).clone();
    let lhs = h.mul(&h.mul(&c("s"), &c("t")).unwrap(), &c("s")).unwrap();
    ensure(lhs == c("sts").add(&c("s")), || "C'_s C'_t C'_s != C'_sts + C'_s".into())
}

fn multiplicity_battery() -> Outcome {
    let check = |g: &GroupTable, word: &[usize]| -> Outcome {
        let table = standard_multiplicities(g, word).unwrap();
        ensure(table.n_w == brute_force_nw(g, word), || format!("n_w differs from brute force on {word:?}"))?;
        let n_e = table.n_identity(g);
        let sum_n_i = hom_rank_formula(g, word).unwrap().len() as u64;
        let tau_at_1 = table.bs_char.tau().eval_q1();
        ensure(n_e == sum_n_i && num_bigint::BigInt::from(n_e) == tau_at_1, || {
            format!("n_e = {n_e}, Σ n_i = {sum_n_i}, τ(1) = {tau_at_1} on {word:?}")
        })?;
        ensure(specialize_q1(g, word).unwrap() == table.n_w, || format!("specialisation at q = 1 differs on {word:?}"))
    };
    let a2 = group("A2");
    for word in words_up_to(2, 12) {
        check(&a2, &word)?;
    }
    let a3 = group("A3");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        check(&a3, &random_word(&mut rng, 3, 10))?;
    }
    Ok(())
}

fn hom_rank_property() -> Outcome {
    let (_, g, r) = a2_geometric();
    let ring = BSBimodule::ring_module(&r, 0);
    for word in [&[][..], &[0], &[0, 1], &[0, 1, 0]] {
        let m = BSBimodule::build(&r, word, 0);
        let pred = hom_prediction(&g, word, &[]).unwrap();
        for d in -6..=8 {
            let dim = hom_solve(&m, &ring, d).unwrap().dim() as u64;
            let want = pred.graded_dim(d, 2);
            ensure(dim == want, || format!("Hom({word:?}, R)_{d}: computed {dim}, predicted {want}"))?;
        }
    }
    let sts = BSBimodule::build(&r, &[0, 1, 0], 0);
    let gh = graded_hom(&sts, &ring, 8).map_err(|e| e.to_string())?;
    let mut gens = gh.generators.clone();
    gens.sort();
    let shifts = hom_rank_formula(&g, &[0, 1, 0]).unwrap();
    ensure(shifts.shifts() == [0, 2] && gens == [-2, 0], || format!("shifts {:?}, generator degrees {gens:?}", shifts.shifts()))?;
    ensure(gh.dim(-2) == 1 && gh.dim(0) == 3, || format!("dims {} and {}", gh.dim(-2), gh.dim(0)))
}

fn good_pair() -> (GroupTable, KLTable, BaseChange) {
    let cm = CoxeterMatrix::builtin("A2").unwrap();
    let g = GroupTable::build(&cm, None).unwrap();
    let kl = KLTable::build(&g).unwrap();
    let bc = BaseChange::new(&builtin_pair("builtin:geom-plus-trivial", &cm).unwrap(), &g).unwrap();
    (g, kl, bc)
}

const BATTERY: [&[usize]; 3] = [&[0], &[0, 1], &[0, 1, 0]];

fn hom_base_change() -> Outcome {
    let (g, _, bc) = good_pair();
    for m in BATTERY {
        for n in [&[][..], &[0]] {
            let top = hom_prediction(&g, m, n).unwrap().generator_degrees().into_iter().max().unwrap_or(0);
            let rep = verify_theorem1(&bc, &g, m, n, top + 2).map_err(|e| e.to_string())?;
            ensure(rep.holds(), || format!("Hom({m:?}, {n:?}): {rep:?}"))?;
        }
    }
    Ok(())
}

fn end0_base_change() -> Outcome {
    let (g, kl, bc) = good_pair();
    for m in BATTERY {
        let rep = verify_theorem2(&bc, &g, &kl, m, 17).map_err(|e| e.to_string())?;
        ensure(rep.holds(), || format!("End_0({m:?}): {rep:?}"))?;
        match m.len() {
            1 => ensure(rep.local && rep.local_prime, || "θ_s decomposes".into())?,
            3 => ensure(!rep.local && rep.ranks == [2, 6] && rep.ranks_prime == [2, 6], || format!("sts: {rep:?}"))?,
            _ => {}
        }
    }
    let m = BSBimodule::build(bc.ring(), &[0, 1, 0], 0);
    let dec = soergel::bimod::decompose_bs(&m, &g, &kl, 17).map_err(|e| e.to_string())?;
    let mut labels: Vec<String> = dec.summands.iter().map(|s| s.label.map(|x| g.format(x)).unwrap_or_default()).collect();
    labels.sort();
    ensure(dec.matched && labels == ["s", "sts"], || format!("summand labels {labels:?}"))
}

fn positivity() -> Outcome {
    for name in ["A2", "B2", "A3"] {
        let g = group(name);
        let kl = KLTable::build(&g).unwrap();
        for word in words_up_to(g.rank(), 6) {
            let e = bs_in_kl_basis(&g, &kl, &word).unwrap();
            ensure(e.positive, || format!("{name}: negative coefficient for {word:?}"))?;
        }
    }
    Ok(())
}

fn generic_points(rng: &mut ChaCha8Rng, r: &PolyRing) -> Vec<FieldElement> {
    (0..r.nvars()).map(|_| r.field().from_int(rng.gen_range(-20..=20))).collect()
}

fn section_three_formulas() -> Outcome {
    let (_, g, r) = a2_geometric();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for s in 0..2 {
        let seq = theta_exact_sequence(&r, s, 6);
        ensure(seq.holds(), || format!("exact sequence for generator {s}: {seq:?}"))?;
        let mut done = 0;
        while done < 5 {
            match generic_splitting(&r, s, &generic_points(&mut rng, &r)) {
                Ok(sp) => {
                    ensure(sp.invertible && sp.nu_mu.is_one(), || "ν_s ∘ μ_s != 1".into())?;
                    done += 1;
                }
                Err(BimodError::NonGeneric(_)) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    for word in words_up_to(2, 4) {
        let mut done = 0;
        while done < 5 {
            match standard_matrix(&r, &g, &word, &generic_points(&mut rng, &r)) {
                Ok(sm) => {
                    ensure(sm.invertible, || format!("standard matrix of {word:?} is singular"))?;
                    done += 1;
                }
                Err(BimodError::NonGeneric(_)) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    let ring = BSBimodule::ring_module(&r, 0);
    let pairs = [
        (BSBimodule::build(&r, &[1], 0), ring.clone()),
        (ring.clone(), ring.clone()),
        (BSBimodule::build(&r, &[1, 0], 0), BSBimodule::build(&r, &[0], 0)),
    ];
    for (m, n) in &pairs {
        for d in -4..=4 {
            let rep = adjunction_fs(0, m, n, d).map_err(|e| e.to_string())?;
            ensure(rep.holds(), || format!("adjunction {:?} -> {:?}: {rep:?}", m.word(), n.word()))?;
        }
    }
    Ok(())
}

fn representation_predicates() -> Outcome {
    for name in ["A2", "B2", "A3"] {
        let g = group(name);
        let rep = geometric_rep(g.coxeter_matrix()).unwrap();
        let rf = check_rf(&rep, &g);
        ensure(rf.holds && !rf.inconclusive, || format!("{name}: {rf:?}"))?;
    }
    let g = group("I2(inf)");
    let rep = geometric_rep(g.coxeter_matrix()).unwrap();
    let rvf = check_rvf(&rep, &g);
    ensure(rvf.holds, || format!("I2(inf) RVF: {rvf:?}"))?;
    let rf = check_rf(&rep, &g);
    let witness_len = match rf.witness {
        Some(RfWitness::FixedHyperplaneNotReflection(x))
        | Some(RfWitness::ReflectionWithoutHyperplane(x)) => Some(g.length(x)),
        Some(RfWitness::NotFaithful(_, x)) => Some(g.length(x)),
        None => None,
    };
    ensure(!rf.holds && witness_len == Some(2), || format!("I2(inf) RF: {rf:?}"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 9] = [
        ("Hecke kernel", hecke_kernel, Duration::from_secs(10)),
        ("KL correctness", kl_correctness, Duration::from_secs(30)),
        ("standard multiplicities", multiplicity_battery, Duration::from_secs(120)),
        ("graded Hom rank", hom_rank_property, Duration::from_secs(300)),
        ("Hom under base change", hom_base_change, Duration::from_secs(300)),
        ("End_0 under base change", end0_base_change, Duration::from_secs(300)),
        ("KL positivity", positivity, Duration::from_secs(300)),
        ("theta_s formulas", section_three_formulas, Duration::from_secs(300)),
        ("representation predicates", representation_predicates, Duration::from_secs(10)),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= *budget, || format!("took {elapsed:.2?}, budget {budget:?}"))
        });
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({elapsed:.2?})", i + 1),
            Err(e) => {
                failures += 1;
                println!("criterion {}: FAIL  {name} ({elapsed:.2?}): {e}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
