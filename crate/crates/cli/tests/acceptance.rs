//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero if any fails.
//!
//! Stable models are cross-checked against `naive_stable` below, written from the
//! definition (reduct, then minimality by enumerating subsets) and sharing no code with the
//! library's checker.

use std::collections::HashSet;
use std::f64::consts::E;
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use lpmln_core::frontends::mvpp::{mvpp_direct_distribution, mvpp_to_lpmln};
use lpmln_core::frontends::problog::{problog_distribution, problog_to_lpmln};
use lpmln_core::frontends::weak::{optimal_stable_models, weak_to_lpmln};
use lpmln_core::frontends::PlogModel;
use lpmln_core::ground::{ground_program, GroundProgram};
use lpmln_core::infer::{distribution, soft_only_distribution, weight_table};
use lpmln_core::logic::{AtomId, AtomSet, GroundAtom, Interpretation, Rule, SymbolicWeight, Value};
use lpmln_core::selftest::{self, Ctx};
use lpmln_core::stable::is_stable_model;
use lpmln_core::textio::{parse_lpmln, parse_mvpp, parse_plog, parse_problog, parse_query, parse_weak};
use lpmln_core::{Error, Limits};

const TOL: f64 = 1e-9;
const PAPER_TOL: f64 = 1e-4;

type Outcome = Result<String, String>;

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "corpus", name].iter().collect();
    std::fs::read_to_string(p).expect("corpus file")
}

fn corpus_path(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "corpus", name].iter().collect();
    p.display().to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(got: f64, want: f64, tol: f64, what: &str) -> Result<(), String> {
    ensure((got - want).abs() <= tol, || format!("{what}: got {got}, want {want} (tol {tol:e})"))
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

/// `I` is stable for `rules` iff it is a model of the reduct `{ head <- pos : I |= neg }` and
/// no proper subset of `I` is.
fn naive_stable(rules: &[Rule<AtomId>], i: &AtomSet, _: &Limits) -> lpmln_core::Result<bool> {
    let in_i = |a: &AtomId| i.contains(*a);
    let reduct: Vec<(&[AtomId], &[AtomId])> = rules
        .iter()
        .filter(|r| r.body.neg.iter().all(|f| f.eval(&in_i)))
        .map(|r| (r.head.as_slice(), r.body.pos.as_slice()))
        .collect();
    let model = |j: &HashSet<AtomId>| {
        reduct
            .iter()
            .all(|(head, pos)| !pos.iter().all(|a| j.contains(a)) || head.iter().any(|a| j.contains(a)))
    };
    let atoms: Vec<AtomId> = i.iter().collect();
    if !model(&atoms.iter().copied().collect()) {
        return Ok(false);
    }
    for mask in 0..(1u64 << atoms.len()) - 1 {
        let j: HashSet<AtomId> = (0..atoms.len()).filter(|k| mask >> k & 1 == 1).map(|k| atoms[k]).collect();
        if model(&j) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Weight of every interpretation of a ground program straight from the definition.
fn oracle_weights(g: &GroundProgram) -> Vec<(u64, SymbolicWeight)> {
    let n = g.atom_count();
    let lim = Limits::default();
    (0..1u64 << n)
        .map(|mask| {
            let i = AtomSet::from_mask(n, mask);
            let truth = |a: &AtomId| i.contains(*a);
            let sat: Vec<_> = g.rules.iter().filter(|r| r.rule.satisfied_by(&truth)).collect();
            let rules: Vec<Rule<AtomId>> = sat.iter().map(|r| r.rule.clone()).collect();
            if !naive_stable(&rules, &i, &lim).unwrap() {
                return (mask, SymbolicWeight::Zero);
            }
            let hard = sat.iter().filter(|r| r.weight.is_hard()).count() as u64;
            let soft = sat.iter().map(|r| r.weight.soft_value()).sum();
            (mask, SymbolicWeight::new(hard, soft))
        })
        .collect()
}

fn names(g: &GroundProgram, mask: u64) -> Vec<String> {
    let set = AtomSet::from_mask(g.atom_count(), mask);
    g.universe.to_interpretation(&set).iter().map(|a| a.to_string()).collect()
}

fn set(atoms: &[&str]) -> Interpretation {
    atoms.iter().map(|a| GroundAtom::new(*a, vec![Value::sym("jo")])).collect()
}

fn property(name: &str, seed: u64, n: usize, check: lpmln_core::stable::StableCheck) -> Result<String, String> {
    let limits = Limits::default();
    let ctx = Ctx { limits: &limits, check };
    let p = selftest::property(name).ok_or_else(|| format!("no property {name}"))?;
    let r = selftest::run(p, seed, n, &ctx);
    if let Some(f) = r.failure {
        return Err(format!("{name}: {}\n{}", f.message, f.counterexample));
    }
    ensure(r.cases == n, || format!("{name}: only {} applicable cases ({} skipped)", r.cases, r.skipped))?;
    Ok(format!("{name} {n}/{n}"))
}

fn birds_table() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_lpmln"))
        .args(["models", &corpus_path("birds.lpmln"), "--list-all", "--format", "json"])
        .output()
        .map_err(e)?;
    within(start, Duration::from_secs(1))?;
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(e)?;
    let rows = rows.as_array().ok_or("not an array")?;
    ensure(rows.len() == 8, || format!("{} rows", rows.len()))?;
    // (I, satisfied rules, hard tier or None for weight 0, probability)
    let third = 1.0 / 3.0;
    let want: [WantRow; 8] = [
        (&[], &[1, 2, 3], Some(3), 0.0),
        (&["residentBird"], &[2, 3, 4], Some(3), 0.0),
        (&["migratoryBird"], &[1, 3, 5], Some(3), 0.0),
        (&["bird"], &[1, 2, 3], None, 0.0),
        (&["residentBird", "bird"], &[1, 2, 3, 4], Some(4), third),
        (&["migratoryBird", "bird"], &[1, 2, 3, 5], Some(4), third),
        (&["residentBird", "migratoryBird"], &[4, 5], Some(2), 0.0),
        (&["residentBird", "migratoryBird", "bird"], &[1, 2, 4, 5], Some(4), third),
    ];
    for (atoms, sat, tier, p) in want {
        let key: Vec<String> = set(atoms).iter().map(|a| a.to_string()).collect();
        let row = rows
            .iter()
            .find(|r| {
                let mut got: Vec<String> =
                    r["atoms"].as_array().unwrap().iter().map(|a| a.as_str().unwrap().to_string()).collect();
                got.sort();
                let mut k = key.clone();
                k.sort();
                got == k
            })
            .ok_or_else(|| format!("no row for {key:?}"))?;
        let got_sat: Vec<u64> = row["satisfied"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
        ensure(got_sat == sat, || format!("{key:?}: satisfied {got_sat:?}, want {sat:?}"))?;
        let got_tier = row["weight"]["hard"].as_u64();
        ensure(got_tier == tier, || format!("{key:?}: tier {got_tier:?}, want {tier:?}"))?;
        if tier.is_some() {
            ensure(row["weight"]["soft"].as_f64() == Some(0.0), || format!("{key:?}: soft part"))?;
        }
        close(row["prob"].as_f64().unwrap(), p, TOL, &format!("P({key:?})"))?;
    }
    Ok(format!("8 rows, {:?}", start.elapsed()))
}

fn birds_soft() -> Outcome {
    let lim = Limits::default();
    let g = ground_program(&parse_lpmln(&corpus("birds_soft.lpmln")).map_err(e)?).map_err(e)?;
    let d = weight_table(&g, &lim).map_err(e)?;
    let z = E * E + E + 1.0;
    let p = |atoms: &[&str]| d.prob(&set(atoms)).unwrap();
    close(p(&["residentBird", "bird"]), E * E / z, TOL, "P({R,B})")?;
    close(p(&["migratoryBird", "bird"]), E / z, TOL, "P({M,B})")?;
    close(p(&[]), 1.0 / z, TOL, "P({})")?;
    let bird = d.query(&parse_query("bird(jo)").unwrap()).map_err(e)?;
    close(bird, 0.9100, PAPER_TOL, "P(bird(jo))")?;
    let weight = |atoms: &[&str]| {
        let s = g.universe.to_atom_set(&set(atoms)).unwrap();
        d.entries.iter().find(|x| x.atoms == s).unwrap().weight
    };
    let want: [(&[&str], SymbolicWeight); 8] = [
        (&[], SymbolicWeight::new(3, 0.0)),
        (&["residentBird"], SymbolicWeight::new(2, 2.0)),
        (&["migratoryBird"], SymbolicWeight::new(2, 1.0)),
        (&["bird"], SymbolicWeight::Zero),
        (&["residentBird", "bird"], SymbolicWeight::new(3, 2.0)),
        (&["migratoryBird", "bird"], SymbolicWeight::new(3, 1.0)),
        (&["residentBird", "migratoryBird"], SymbolicWeight::new(0, 3.0)),
        (&["residentBird", "migratoryBird", "bird"], SymbolicWeight::new(2, 3.0)),
    ];
    for (atoms, w) in want {
        ensure(weight(atoms) == w, || format!("W({atoms:?}) = {}, want {w}", weight(atoms)))?;
    }

    let hard = ground_program(&parse_lpmln(&corpus("birds.lpmln")).map_err(e)?).map_err(e)?;
    let support = |g: &GroundProgram| -> Result<HashSet<Interpretation>, String> {
        let d = distribution(g, &lim).map_err(e)?;
        Ok(d.support().iter().map(|x| g.universe.to_interpretation(&x.atoms)).collect())
    };
    let (before, after) = (support(&hard)?, support(&g)?);
    let removed: Vec<_> = before.difference(&after).cloned().collect();
    let added: Vec<_> = after.difference(&before).cloned().collect();
    ensure(removed == vec![set(&["residentBird", "migratoryBird", "bird"])], || format!("removed {removed:?}"))?;
    ensure(added == vec![set(&[])], || format!("added {added:?}"))?;
    Ok(format!("P(bird(jo)) = {bird:.4}; {{R,M,B}} replaced by {{}}"))
}

fn friends() -> Outcome {
    let lim = Limits::default();
    let marginals = |src: &str| -> Result<[f64; 3], String> {
        let d = distribution(&ground_program(&parse_lpmln(src).map_err(e)?).map_err(e)?, &lim).map_err(e)?;
        let q = |s: &str| d.query(&parse_query(s).unwrap()).map_err(e);
        Ok([q("influence(a,b)")?, q("influence(b,c)")?, q("influence(a,c)")?])
    };
    let src = corpus("friends.lpmln");
    let [ab, bc, ac] = marginals(&src)?;
    close(ab, 0.7311, PAPER_TOL, "P(influence(a,b))")?;
    close(bc, 0.7311, PAPER_TOL, "P(influence(b,c))")?;
    close(ac, 0.5344, PAPER_TOL, "P(influence(a,c))")?;
    let heavier = src.replace("1 : influence", "2 : influence");
    ensure(heavier != src, || "weight not found".into())?;
    let [ab2, bc2, ac2] = marginals(&heavier)?;
    ensure(ab2 > ab && bc2 > bc && ac2 > ac, || format!("weight 2 gives {ab2}, {bc2}, {ac2}"))?;
    Ok(format!("{ab:.4} {bc:.4} {ac:.4}; weight 2: {ab2:.4} {bc2:.4} {ac2:.4}"))
}

fn weak() -> Outcome {
    let lim = Limits::default();
    let w = parse_weak(&corpus("weak.asp")).map_err(e)?;
    let opt = optimal_stable_models(&w, &lim).map_err(e)?;
    let a: Interpretation = [GroundAtom::prop("a")].into_iter().collect();
    ensure(opt == vec![a.clone()], || format!("optimal {opt:?}"))?;
    let d = distribution(&ground_program(&weak_to_lpmln(&w)).map_err(e)?, &lim).map_err(e)?;
    let bc: Interpretation = [GroundAtom::prop("b"), GroundAtom::prop("c")].into_iter().collect();
    let (pa, pbc) = (d.prob(&a).map_err(e)?, d.prob(&bc).map_err(e)?);
    close(pa, 0.7311, PAPER_TOL, "P({a})")?;
    close(pbc, 0.2689, PAPER_TOL, "P({b,c})")?;
    let exact = E.powi(-1) / (E.powi(-1) + E.powi(-2));
    close(pa, exact, TOL, "P({a}) exact")?;
    Ok(format!("[{{a}}]; {pa:.4}/{pbc:.4}"))
}

fn problog() -> Outcome {
    let lim = Limits::default();
    let p = parse_problog(&corpus("coins.problog")).map_err(e)?;
    let r = parse_query("r").unwrap();
    let direct = problog_distribution(&p, &lim).map_err(e)?.query(&r).map_err(e)?;
    let via = distribution(&ground_program(&problog_to_lpmln(&p)).map_err(e)?, &lim)
        .map_err(e)?
        .query(&r)
        .map_err(e)?;
    close(direct, 0.72, TOL, "P(r) direct")?;
    close(via, 0.72, TOL, "P(r) translated")?;
    let prop = property("problog", 8, 200, is_stable_model)?;
    Ok(format!("P(r) = {direct} = {via}; {prop}"))
}

fn soft_only() -> Outcome {
    let prop = property("soft-only", 9, 200, is_stable_model)?;
    let g = ground_program(&parse_lpmln(&corpus("birds.lpmln")).map_err(e)?).map_err(e)?;
    match soft_only_distribution(&g, &Limits::default()) {
        Err(Error::NoHardConsistentModel) => Ok(format!("{prop}; birds refused")),
        other => Err(format!("birds: expected NoHardConsistentModel, got {other:?}")),
    }
}

fn mvpp() -> Outcome {
    let lim = Limits::default();
    let prop = property("mvpp", 10, 100, is_stable_model)?;
    let m = parse_mvpp(&corpus("dice.mvpp")).map_err(e)?;
    let win = parse_query("win").unwrap();
    let via = distribution(&ground_program(&mvpp_to_lpmln(&m).map_err(e)?).map_err(e)?, &lim)
        .map_err(e)?
        .query(&win)
        .map_err(e)?;
    let direct = mvpp_direct_distribution(&m, &lim).map_err(e)?.query(&win).map_err(e)?;
    close(via, 0.25, TOL, "P(win) translated")?;
    close(direct, 0.25, TOL, "P(win) direct")?;
    Ok(format!("{prop}; P(win) = {via}"))
}

fn plog() -> Outcome {
    let start = Instant::now();
    let lim = Limits::default();
    let p = parse_plog(&corpus("dice.plog")).map_err(e)?;
    let m = PlogModel::new(&p).map_err(e)?;
    let worlds = m.measure(&lim).map_err(e)?;
    let u = &m.tau.universe;
    let atom = |s: &str, arg: &str, v: Value| GroundAtom::with_value(s, vec![Value::sym(arg)], v);
    let cited: Interpretation = [
        atom("owner", "d1", Value::sym("mike")),
        atom("owner", "d2", Value::sym("john")),
        atom("roll", "d1", Value::Int(6)),
        atom("roll", "d2", Value::Int(3)),
        GroundAtom::new("even", vec![Value::sym("d1")]),
        atom("even", "d2", Value::f()),
    ]
    .into_iter()
    .collect();
    let target = u.to_atom_set(&cited).map_err(e)?;
    let w = worlds.iter().find(|w| w.atoms == target).ok_or("cited world missing")?;
    ensure(w.unnormalized == 1.0 / 24.0, || format!("mu-hat = {}", w.unnormalized))?;

    let d = distribution(&ground_program(&mvpp_to_lpmln(&m.to_mvpp().map_err(e)?).map_err(e)?).map_err(e)?, &lim)
        .map_err(e)?;
    for w in &worlds {
        close(d.query(&m.fw_formula(w)).map_err(e)?, w.prob, TOL, &format!("world {}", u.show(&w.atoms)))?;
    }
    let even = parse_query("even(d1)").unwrap();
    let (direct, via) = (m.prob(&worlds, &even).map_err(e)?, d.query(&even).map_err(e)?);
    close(direct, via, TOL, "P(even(d1))")?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} worlds; P(even(d1)) = {direct:.6}; {:?}", worlds.len(), start.elapsed()))
}

/// The naive oracle agrees with the library on the named programs, so it can stand in as
/// the reference checker for the randomized criteria.
fn oracle_sanity() -> Result<(), String> {
    let lim = Limits::default();
    for f in ["birds.lpmln", "birds_soft.lpmln"] {
        let g = ground_program(&parse_lpmln(&corpus(f)).map_err(e)?).map_err(e)?;
        let table = weight_table(&g, &lim).map_err(e)?;
        for (mask, w) in oracle_weights(&g) {
            let got = table.entries.iter().find(|x| x.atoms.as_mask() == mask).unwrap().weight;
            ensure(got == w, || format!("{f} {:?}: library {got}, oracle {w}", names(&g, mask)))?;
        }
    }
    Ok(())
}

type WantRow = (&'static [&'static str], &'static [u64], Option<u64>, f64);
type Criterion = Box<dyn Fn() -> Outcome>;

fn main() {
    let criteria: Vec<(&str, Criterion)> = vec![
        ("birds weight table, hard evidence", Box::new(birds_table)),
        ("birds weight table, soft evidence", Box::new(birds_soft)),
        ("friends influence marginals", Box::new(friends)),
        ("weak constraints", Box::new(weak)),
        (
            "ASP embedding is uniform over stable models",
            Box::new(|| {
                oracle_sanity()?;
                let start = Instant::now();
                let r = property("asp-embedding", 5, 200, naive_stable)?;
                within(start, Duration::from_secs(30))?;
                Ok(format!("{r}, {:?}", start.elapsed()))
            }),
        ),
        ("MLN embedding", Box::new(|| property("mln-embedding", 6, 200, is_stable_model))),
        (
            "completion and loop formulas",
            Box::new(|| {
                let a = property("completion", 7, 200, is_stable_model)?;
                let b = property("loop-mln", 7, 200, is_stable_model)?;
                Ok(format!("{a}; {b}"))
            }),
        ),
        ("ProbLog", Box::new(problog)),
        ("soft-only distribution", Box::new(soft_only)),
        ("multi-valued programs", Box::new(mvpp)),
        ("P-log dice", Box::new(plog)),
        ("reduct monotonicity", Box::new(|| property("reduct", 12, 500, is_stable_model))),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2}  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}  {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
