use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};
use soergel::bimod::{
    decompose_bs, graded_hom, theta_exact_sequence, verify_theorem1, verify_theorem2, BSBimodule, BaseChange, BsMap,
    PolyRing,
};
use soergel::coxeter::{CoxeterMatrix, Elem, GroupTable};
use soergel::decat::{bs_in_kl_basis, hom_prediction, standard_multiplicities, verify_words};
use soergel::hecke::{HeckeAlgebra, HeckeElement, KLTable};
use soergel::reps::{
    builtin_pair, check_good_pair, check_rf, check_rvf, geometric_rep, Representation, RfWitness, RvfWitness, SubRep,
};

use crate::args::{BimodCmd, Cli, Command, CoxeterCmd, DecatCmd, GroupArgs, HeckeCmd, RepArgs, RepsCmd};
use crate::{CliError, Report};

type Outcome = Result<Report, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn coxeter_matrix(ty: &str, file: Option<&Path>) -> Result<CoxeterMatrix, CliError> {
    Ok(match file {
        Some(p) => CoxeterMatrix::from_json(&read(p)?)?,
        None => CoxeterMatrix::builtin(ty)?,
    })
}

fn group(args: &GroupArgs) -> Result<GroupTable, CliError> {
    let cm = coxeter_matrix(&args.ty, args.coxeter.as_deref())?;
    Ok(GroupTable::build(&cm, bound(&cm, args.max_length))?)
}

/// Infinite groups are enumerated up to length 10 unless a bound is given.
fn bound(cm: &CoxeterMatrix, max_length: Option<usize>) -> Option<usize> {
    max_length.or_else(|| cm.has_infinite().then_some(10))
}

fn word(g: &GroupTable, text: &str) -> Result<Vec<usize>, CliError> {
    Ok(g.coxeter_matrix().parse_word(text)?)
}

fn element(g: &GroupTable, text: &str) -> Result<Elem, CliError> {
    Ok(g.from_word(&word(g, text)?)?)
}

fn fmt_word(g: &GroupTable, w: &[usize]) -> String {
    g.coxeter_matrix().format_word(w)
}

fn representation(g: &GroupTable, rep: &RepArgs) -> Result<Representation, CliError> {
    let cm = g.coxeter_matrix();
    Ok(match &rep.rep {
        Some(p) => Representation::from_json(&read(p)?, cm)?.0,
        None => geometric_rep(cm)?,
    })
}

fn pair(g: &GroupTable, spec: &str) -> Result<SubRep, CliError> {
    let cm = g.coxeter_matrix();
    if spec.starts_with("builtin:") {
        return Ok(builtin_pair(spec, cm)?);
    }
    let (rep, sub) = Representation::from_json(&read(Path::new(spec))?, cm)?;
    Ok(match sub {
        Some(basis) => SubRep::new(rep, basis)?,
        None => SubRep::full(rep),
    })
}

fn ring(g: &GroupTable, rep: &Representation) -> Result<Arc<PolyRing>, CliError> {
    Ok(PolyRing::new(rep, g.coxeter_matrix().labels())?)
}

pub fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Coxeter(c) => coxeter(c),
        Command::Hecke(c) => hecke(c),
        Command::Decat(c) => decat(c),
        Command::Reps(c) => reps(c),
        Command::Bimod(c) => bimod(c, cli.seed),
        Command::VerifyAll { group: ga, pair: p, max_len } => verify_all(ga, p, *max_len, cli.seed),
    }
}

fn coxeter(cmd: &CoxeterCmd) -> Outcome {
    match cmd {
        CoxeterCmd::Build { ty, file, max_length } => {
            let cm = coxeter_matrix(ty, file.as_deref())?;
            let g = GroupTable::build(&cm, bound(&cm, *max_length))?;
            let elements: Vec<String> = g.elements().map(|x| g.format(x)).collect();
            Ok(Report::ok(json!({
                "coxeter": cm.to_json(),
                "order": g.len(),
                "complete": g.is_complete(),
                "truncation": g.truncation(),
                "length_histogram": g.length_histogram(),
                "elements": elements,
            })))
        }
        CoxeterCmd::Bruhat { group: ga, x, w } => {
            let g = group(ga)?;
            let (xe, we) = (element(&g, x)?, element(&g, w)?);
            Ok(Report::ok(json!({ "x": g.format(xe), "w": g.format(we), "leq": g.bruhat_leq(xe, we) })))
        }
    }
}

fn kl_json(g: &GroupTable, kl: &KLTable) -> Value {
    let map: Map<String, Value> = g.elements().map(|w| (g.format(w), kl.element(w).to_json(g))).collect();
    Value::Object(map)
}

fn hecke(cmd: &HeckeCmd) -> Outcome {
    match cmd {
        HeckeCmd::Mul { group: ga, x, y } => {
            let g = group(ga)?;
            let h = HeckeAlgebra::new(&g);
            let prod = h.mul(&HeckeElement::t(element(&g, x)?), &HeckeElement::t(element(&g, y)?))?;
            Ok(Report::ok(json!({ "product": prod.to_json(&g) })))
        }
        HeckeCmd::Tau { group: ga, word: w } => {
            let g = group(ga)?;
            let w = word(&g, w)?;
            let c = HeckeAlgebra::new(&g).bs_character(&w)?;
            Ok(Report::ok(json!({ "word": fmt_word(&g, &w), "tau": c.tau() })))
        }
        HeckeCmd::Kl { group: ga } => {
            let g = group(ga)?;
            let kl = KLTable::build(&g)?;
            Ok(Report::ok(json!({ "basis": kl_json(&g, &kl) })))
        }
    }
}

fn decat_battery(g: &GroupTable, kl: &KLTable, max_len: usize) -> Result<(usize, Vec<String>), CliError> {
    let b = verify_words(g, kl, max_len)?;
    let mut failures: Vec<String> =
        b.multiplicity_failures.iter().map(|w| format!("multiplicities of {}", fmt_word(g, w))).collect();
    failures.extend(b.positivity_failures.iter().map(|w| format!("positivity of {}", fmt_word(g, w))));
    Ok((b.words, failures))
}

fn decat(cmd: &DecatCmd) -> Outcome {
    match cmd {
        DecatCmd::HomRank { group: ga, word: w, target } => {
            let g = group(ga)?;
            let (w, t) = (word(&g, w)?, word(&g, target)?);
            let shape = hom_prediction(&g, &w, &t)?;
            let mut body = json!({ "word": fmt_word(&g, &w), "shifts": shape });
            if !t.is_empty() {
                body["target"] = json!(fmt_word(&g, &t));
            }
            Ok(Report::ok(body))
        }
        DecatCmd::Nw { group: ga, word: w } => {
            let g = group(ga)?;
            let w = word(&g, w)?;
            let table = standard_multiplicities(&g, &w)?;
            let nw: BTreeMap<String, u64> = table.n_w.iter().map(|(x, n)| (g.format(*x), *n)).collect();
            Ok(Report {
                verified: table.invariants_hold(&g),
                body: json!({ "word": fmt_word(&g, &w), "n_w": nw, "total": table.total() }),
            })
        }
        DecatCmd::KlExpand { group: ga, word: w } => {
            let g = group(ga)?;
            let w = word(&g, w)?;
            let kl = KLTable::build(&g)?;
            let e = bs_in_kl_basis(&g, &kl, &w)?;
            let coeffs: Map<String, Value> =
                e.coefficients.iter().map(|(x, c)| (g.format(*x), serde_json::to_value(c).expect("serializable"))).collect();
            Ok(Report::ok(json!({ "word": fmt_word(&g, &w), "coefficients": coeffs, "positive": e.positive })))
        }
        DecatCmd::Verify { group: ga, max_len } => {
            let g = group(ga)?;
            let kl = KLTable::build(&g)?;
            let (count, failures) = decat_battery(&g, &kl, *max_len)?;
            Ok(Report {
                verified: failures.is_empty(),
                body: json!({ "max_len": max_len, "words": count, "failures": failures }),
            })
        }
    }
}

fn rf_json(g: &GroupTable, rep: &Representation) -> (bool, Value) {
    let rf = check_rf(rep, g);
    let witness = rf.witness.as_ref().map(|w| match w {
        RfWitness::NotFaithful(a, b) => format!("{} and {} act identically", g.format(*a), g.format(*b)),
        RfWitness::FixedHyperplaneNotReflection(x) => format!("{} fixes a hyperplane but is not a reflection", g.format(*x)),
        RfWitness::ReflectionWithoutHyperplane(x) => format!("{} is a reflection without a fixed hyperplane", g.format(*x)),
    });
    (
        rf.holds,
        json!({ "holds": rf.holds, "faithful": rf.faithful, "inconclusive": rf.inconclusive, "witness": witness }),
    )
}

fn reps(cmd: &RepsCmd) -> Outcome {
    let RepsCmd::Check { group: ga, file, pair: p, checks } = cmd;
    let g = group(ga)?;
    let sub = match file {
        Some(path) => pair(&g, &path.to_string_lossy())?,
        None => pair(&g, p)?,
    };
    let mut body = Map::new();
    let mut verified = true;
    for check in checks {
        match check.trim() {
            "rf" => {
                let (ok, v) = rf_json(&g, sub.ambient());
                verified &= ok;
                body.insert("rf".into(), v);
            }
            "rvf" => {
                let rvf = check_rvf(sub.ambient(), &g);
                verified &= rvf.holds;
                let witness = rvf.witness.as_ref().map(|w| match w {
                    RvfWitness::NotAReflection(x) => format!("{} does not act as a reflection", g.format(*x)),
                    RvfWitness::SameEigenline(a, b) => {
                        format!("{} and {} share a (-1)-eigenline", g.format(*a), g.format(*b))
                    }
                });
                body.insert(
                    "rvf".into(),
                    json!({ "holds": rvf.holds, "reflections_checked": rvf.reflections_checked, "witness": witness }),
                );
            }
            "goodpair" => {
                let r = check_good_pair(&sub, &g);
                verified &= r.is_good_pair();
                body.insert(
                    "goodpair".into(),
                    json!({
                        "holds": r.is_good_pair(),
                        "reflections_on_v": r.reflections_on_v.as_ref().err().map(|e| format!("{:?}", e.offending)),
                        "reflections_on_sub": r.reflections_on_sub.as_ref().err().map(|e| format!("{:?}", e.offending)),
                        "stable": r.stable,
                        "quotient_trivial": r.quotient_trivial,
                        "dim_v": sub.ambient().dim(),
                        "dim_sub": sub.restricted().dim(),
                    }),
                );
            }
            other => return Err(CliError(format!("unknown check `{other}` (expected rf, rvf or goodpair)"))),
        }
    }
    Ok(Report { body: Value::Object(body), verified })
}

fn map_json(f: &BsMap) -> Value {
    json!(f.iter().map(|row| row.iter().map(|p| p.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn default_cap(g: &GroupTable, src: &[usize], tgt: &[usize]) -> Result<i32, CliError> {
    Ok(hom_prediction(g, src, tgt)?.generator_degrees().into_iter().max().unwrap_or(0) + 2)
}

fn bimod(cmd: &BimodCmd, seed: u64) -> Outcome {
    match cmd {
        BimodCmd::HomRank { group: ga, rep, word: w, target, max_degree } => {
            let g = group(ga)?;
            let r = ring(&g, &representation(&g, rep)?)?;
            let (w, t) = (word(&g, w)?, word(&g, target)?);
            let m = BSBimodule::build(&r, &w, 0);
            let n = BSBimodule::build(&r, &t, 0);
            let gh = graded_hom(&m, &n, *max_degree)?;
            let pred = hom_prediction(&g, &w, &t)?;
            let mut gens = gh.generators.clone();
            gens.sort_unstable();
            let predicted = pred.generator_degrees();
            let dims: Map<String, Value> = gh.dims().iter().map(|(d, n)| (d.to_string(), json!(n))).collect();
            let hilbert = (gh.lo..=*max_degree).all(|d| gh.dim(d) as u64 == pred.graded_dim(d, r.nvars()));
            let verified = hilbert && gens == predicted;
            Ok(Report {
                verified,
                body: json!({
                    "word": fmt_word(&g, &w),
                    "target": fmt_word(&g, &t),
                    "dims": dims,
                    "generator_degrees": gens,
                    "predicted": predicted,
                    "matches": verified,
                }),
            })
        }
        BimodCmd::Decompose { group: ga, rep, word: w } => {
            let g = group(ga)?;
            let r = ring(&g, &representation(&g, rep)?)?;
            let w = word(&g, w)?;
            let kl = KLTable::build(&g)?;
            let d = decompose_bs(&BSBimodule::build(&r, &w, 0), &g, &kl, seed)?;
            let summands: Vec<Value> = d
                .summands
                .iter()
                .map(|s| {
                    json!({
                        "label": s.label.map(|x| g.format(x)),
                        "rank": s.rank,
                        "graded_rank": s.graded_rank,
                        "idempotent": map_json(&s.idempotent),
                    })
                })
                .collect();
            let predicted: Vec<Value> =
                d.predicted.iter().map(|(x, p)| json!({ "label": g.format(*x), "graded_rank": p })).collect();
            Ok(Report {
                verified: d.matched,
                body: json!({
                    "word": fmt_word(&g, &w),
                    "end0_dim": d.end0_dim,
                    "semisimple_dim": d.semisimple_dim,
                    "local": d.local,
                    "summands": summands,
                    "predicted": predicted,
                    "matched": d.matched,
                }),
            })
        }
        BimodCmd::Verify { group: ga, theorem, pair: p, word: w, target, max_degree } => {
            let g = group(ga)?;
            let bc = BaseChange::new(&pair(&g, p)?, &g)?;
            let (w, t) = (word(&g, w)?, word(&g, target)?);
            if *theorem == 1 {
                let cap = match max_degree {
                    Some(c) => *c,
                    None => default_cap(&g, &w, &t)?,
                };
                let rep = verify_theorem1(&bc, &g, &w, &t, cap)?;
                Ok(Report { verified: rep.holds(), body: theorem1_json(&g, &rep) })
            } else {
                let kl = KLTable::build(&g)?;
                let rep = verify_theorem2(&bc, &g, &kl, &w, seed)?;
                Ok(Report { verified: rep.holds(), body: theorem2_json(&g, &rep) })
            }
        }
    }
}

fn theorem1_json(g: &GroupTable, rep: &soergel::bimod::Theorem1Report) -> Value {
    json!({
        "theorem": 1,
        "word": fmt_word(g, &rep.src),
        "target": fmt_word(g, &rep.tgt),
        "cap": rep.cap,
        "generator_degrees": rep.generators,
        "generator_degrees_sub": rep.generators_prime,
        "predicted": rep.predicted,
        "dims": rep.dims.iter().map(|(d, a, b)| json!([d, a, b])).collect::<Vec<_>>(),
        "hilbert_ok": rep.hilbert_ok,
        "restriction_onto": rep.restriction_onto,
        "holds": rep.holds(),
    })
}

fn theorem2_json(g: &GroupTable, rep: &soergel::bimod::Theorem2Report) -> Value {
    json!({
        "theorem": 2,
        "word": fmt_word(g, &rep.word),
        "end0_dim": rep.end0_dim,
        "end0_dim_sub": rep.end0_dim_prime,
        "local": rep.local,
        "local_sub": rep.local_prime,
        "ranks": rep.ranks,
        "ranks_sub": rep.ranks_prime,
        "idempotents_transfer": rep.idempotents_transfer,
        "kl_match": rep.kl_match,
        "holds": rep.holds(),
    })
}

fn verify_all(ga: &GroupArgs, p: &str, max_len: usize, seed: u64) -> Outcome {
    let g = group(ga)?;
    let kl = KLTable::build(&g)?;
    let mut checks: Vec<Value> = Vec::new();
    let mut record = |name: String, pass: bool, detail: Value| checks.push(json!({ "check": name, "pass": pass, "detail": detail }));

    let (count, failures) = decat_battery(&g, &kl, max_len)?;
    record(format!("decat words <= {max_len}"), failures.is_empty(), json!({ "words": count, "failures": failures }));

    let sub = pair(&g, p)?;
    let gp = check_good_pair(&sub, &g);
    record("good pair".into(), gp.is_good_pair(), json!({ "stable": gp.stable, "quotient_trivial": gp.quotient_trivial }));
    let (rf_ok, rf) = rf_json(&g, sub.ambient());
    record("rf".into(), rf_ok, rf);

    let bc = BaseChange::new(&sub, &g)?;
    for s in 0..g.rank() {
        let seq = theta_exact_sequence(bc.ring(), s, 4);
        record(format!("exact sequence {}", fmt_word(&g, &[s])), seq.holds(), Value::Null);
    }
    let battery: Vec<Vec<usize>> = if g.rank() >= 2 { vec![vec![0], vec![0, 1], vec![0, 1, 0]] } else { vec![vec![0]] };
    for m in &battery {
        for n in [vec![], vec![0]] {
            let rep = verify_theorem1(&bc, &g, m, &n, default_cap(&g, m, &n)?)?;
            record(format!("theorem 1 {} -> {}", fmt_word(&g, m), fmt_word(&g, &n)), rep.holds(), theorem1_json(&g, &rep));
        }
    }
    for m in &battery {
        let rep = verify_theorem2(&bc, &g, &kl, m, seed)?;
        record(format!("theorem 2 {}", fmt_word(&g, m)), rep.holds(), theorem2_json(&g, &rep));
    }
    let passed = checks.iter().all(|c| c["pass"] == json!(true));
    let summary: Vec<String> = checks
        .iter()
        .map(|c| format!("{} {}", if c["pass"] == json!(true) { "PASS" } else { "FAIL" }, c["check"].as_str().unwrap_or("")))
        .collect();
    Ok(Report { verified: passed, body: json!({ "passed": passed, "summary": summary, "checks": checks }) })
}
