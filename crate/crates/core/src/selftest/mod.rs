//! Randomized dual-evaluation checks: each property evaluates random small instances two
//! ways and reports the first disagreement, shrunk greedily and printed as source text.

pub mod gen;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::frontends::mln::{completion, has_hard_consistent_model, loop_augmented_mln, mln_to_lpmln};
use crate::frontends::mvpp::{mvpp_direct_distribution, mvpp_to_lpmln};
use crate::frontends::plog::PlogModel;
use crate::frontends::problog::{problog_distribution, problog_to_lpmln};
use crate::frontends::weak::{as_set, optimal_by_penalty, optimal_stable_models};
use crate::ground::{ground_program, GroundProgram};
use crate::infer::mln::{ground_mln, mln_distribution};
use crate::infer::{distribution, max_difference, soft_only_distribution, weight_table, Distribution};
use crate::limits::Limits;
use crate::logic::{AtomId, AtomSet, Formula, GroundAtom, Interpretation, Program, Rule, WeightedRule};
use crate::stable::{completion_formulas, is_stable_model, is_tight, loop_formula, loops, unweighted, LoopMode, StableCheck};
use crate::textio::{self, Source};

use gen::RuleShape;

/// Tolerance for probability comparisons.
pub const TOL: f64 = 1e-9;

/// A generated instance: a program plus, for the reduct property, a subprogram and an
/// interpretation.
#[derive(Clone, Debug, PartialEq)]
pub struct Case {
    pub source: Source,
    pub subset: Vec<usize>,
    pub interp: Interpretation,
}

impl Case {
    fn of(source: Source) -> Self {
        Case {
            source,
            subset: Vec::new(),
            interp: Interpretation::new(),
        }
    }

    /// Source text, with the subprogram and interpretation as comments when present.
    pub fn render(&self) -> String {
        let mut out = textio::print(&self.source);
        if !self.subset.is_empty() || !self.interp.is_empty() {
            let sub: Vec<String> = self.subset.iter().map(|i| (i + 1).to_string()).collect();
            out.push_str(&format!("% subprogram: rules {}\n", sub.join(" ")));
            let i: Vec<String> = self.interp.iter().map(|a| a.to_string()).collect();
            out.push_str(&format!("% I = {{{}}}\n", i.join(", ")));
        }
        out
    }
}

pub enum Verdict {
    Pass,
    /// Preconditions do not hold; the case does not count.
    Skip,
    Fail(String),
}

pub struct Ctx<'a> {
    pub limits: &'a Limits,
    pub check: StableCheck,
}

pub struct Property {
    pub name: &'static str,
    pub about: &'static str,
    generate: fn(&mut ChaCha8Rng) -> Case,
    verify: fn(&Case, &Ctx) -> Result<Verdict>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Failure {
    pub case: usize,
    pub message: String,
    pub counterexample: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub property: &'static str,
    pub cases: usize,
    pub skipped: usize,
    pub failure: Option<Failure>,
}

fn lpmln(c: &Case) -> &Program {
    match &c.source {
        Source::Lpmln(p) => p,
        _ => unreachable!("case holds an LP^MLN program"),
    }
}

fn close(a: &Distribution, b: &Distribution) -> Option<String> {
    let d = max_difference(&a.to_map(), &b.to_map());
    (d > TOL).then(|| format!("distributions differ by {d:e}"))
}

fn all_sets(n: usize) -> impl Iterator<Item = AtomSet> {
    (0..1u64 << n).map(move |m| AtomSet::from_mask(n, m))
}

/// Stable models of the unweighted program by brute force with the given checker.
fn stable_models(g: &GroundProgram, ctx: &Ctx) -> Result<Vec<AtomSet>> {
    let rules = unweighted(&g.rules);
    let mut out = Vec::new();
    for i in all_sets(g.atom_count()) {
        if (ctx.check)(&rules, &i, ctx.limits)? {
            out.push(i);
        }
    }
    Ok(out)
}

fn gen_reduct(rng: &mut ChaCha8Rng) -> Case {
    let shape = RuleShape {
        max_atoms: 10,
        max_rules: 12,
        hard_ratio: 1.0,
        ..RuleShape::small()
    };
    let p = gen::asp(rng, &shape);
    let n = p.rules.len();
    let subset: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.5)).collect();
    let mut atoms = BTreeSet::new();
    for r in &p.rules {
        r.rule.for_each_atom(&mut |a| {
            atoms.insert(a.to_ground().expect("ground"));
        });
    }
    let atoms: Vec<GroundAtom> = atoms.into_iter().collect();
    let mut interp: Interpretation = atoms.iter().filter(|_| rng.random_bool(0.5)).cloned().collect();
    // Most random sets are not stable for the subprogram; prefer one that is, so the
    // implication is exercised rather than vacuous.
    let sub = Program::new(p.signature.clone(), subset_rules(&p, &subset));
    if let Ok(g) = ground_program(&sub) {
        let rules = unweighted(&g.rules);
        let limits = Limits::default();
        let stable: Vec<AtomSet> = all_sets(g.atom_count())
            .filter(|i| is_stable_model(&rules, i, &limits).unwrap_or(false))
            .collect();
        if !stable.is_empty() && rng.random_bool(0.9) {
            let pick = &stable[rng.random_range(0..stable.len())];
            interp = g.universe.to_interpretation(pick);
            // Atoms outside the subprogram may be added freely; they keep I a model of it.
            interp.extend(atoms.iter().filter(|a| g.universe.id(a).is_none() && rng.random_bool(0.3)).cloned());
        }
    }
    Case {
        source: Source::Lpmln(p),
        subset,
        interp,
    }
}

fn subset_rules(p: &Program, subset: &[usize]) -> Vec<WeightedRule<crate::logic::AtomPattern>> {
    subset.iter().filter_map(|&k| p.rules.get(k).cloned()).collect()
}

/// If `I` is stable for `Π′ ⊆ Π` and satisfies `Π`, it is stable for `Π`.
fn reduct(c: &Case, ctx: &Ctx) -> Result<Verdict> {
    let mut g = ground_program(lpmln(c))?;
    g.extend_universe(c.interp.iter().cloned());
    let i = g.universe.to_atom_set(&c.interp)?;
    let all = unweighted(&g.rules);
    let sub: Vec<Rule<AtomId>> = c.subset.iter().filter_map(|&k| all.get(k).cloned()).collect();
    let truth = |a: &AtomId| i.contains(*a);
    if !all.iter().all(|r| r.satisfied_by(&truth)) || !(ctx.check)(&sub, &i, ctx.limits)? {
        return Ok(Verdict::Skip);
    }
    if (ctx.check)(&all, &i, ctx.limits)? {
        Ok(Verdict::Pass)
    } else {
        Ok(Verdict::Fail("I is stable for the subprogram and satisfies the program, but is not stable for it".into()))
    }
}

fn gen_small_asp(rng: &mut ChaCha8Rng) -> Case {
    let shape = RuleShape {
        max_atoms: 6,
        hard_ratio: 1.0,
        ..RuleShape::small()
    };
    Case::of(Source::Lpmln(gen::asp(rng, &shape)))
}

/// Stable iff a model of the program and of every loop formula.
fn loop_formulas(c: &Case, ctx: &Ctx) -> Result<Verdict> {
    let g = ground_program(lpmln(c))?;
    let rules = unweighted(&g.rules);
    let n = g.atom_count();
    let lfs: Vec<Formula<AtomId>> = loops(n, &rules, LoopMode::Loops, ctx.limits.max_loops)?
        .iter()
        .map(|l| loop_formula(&rules, l))
        .collect();
    for i in all_sets(n) {
        let truth = |a: &AtomId| i.contains(*a);
        let by_lf = rules.iter().all(|r| r.satisfied_by(&truth)) && lfs.iter().all(|f| f.eval(&truth));
        if by_lf != (ctx.check)(&rules, &i, ctx.limits)? {
            return Ok(Verdict::Fail(format!(
                "{}: loop formulas say {by_lf}, stability check disagrees",
                g.universe.show(&i)
            )));
        }
    }
    Ok(Verdict::Pass)
}

/// For tight programs, models of the completion are the stable models.
fn tight_completion(c: &Case, ctx: &Ctx) -> Result<Verdict> {
    let g = ground_program(lpmln(c))?;
    let rules = unweighted(&g.rules);
    let n = g.atom_count();
    if !is_tight(n, &rules) {
        return Ok(Verdict::Skip);
    }
    let comp = completion_formulas(n, &rules);
    for i in all_sets(n) {
        let truth = |a: &AtomId| i.contains(*a);
        let classical = rules.iter().all(|r| r.satisfied_by(&truth)) && comp.iter().all(|f| f.eval(&truth));
        if classical != (ctx.check)(&rules, &i, ctx.limits)? {
            return Ok(Verdict::Fail(format!("{}: completion and stability disagree", g.universe.show(&i))));
        }
    }
    Ok(Verdict::Pass)
}

fn gen_asp(rng: &mut ChaCha8Rng) -> Case {
    let shape = RuleShape {
        max_atoms: 8,
        max_rules: 10,
        hard_ratio: 1.0,
        ..RuleShape::small()
    };
    Case::of(Source::Lpmln(gen::asp(rng, &shape)))
}

/// An all-hard program's distribution is uniform over its stable models.
fn asp_embedding(c: &Case, ctx: &Ctx) -> Result<Verdict> {
    let g = ground_program(lpmln(c))?;
    let sms = stable_models(&g, ctx)?;
    if sms.is_empty() {
        return Ok(Verdict::Skip);
    }
    let d = distribution(&g, ctx.limits)?;
    let support: Vec<&AtomSet> = d.support().iter().map(|e| &e.atoms).collect();
    if support != sms.iter().collect::<Vec<_>>() {
        return Ok(Verdict::Fail(format!(
            "support {:?} differs from stable models {:?}",
            support.iter().map(|s| g.universe.show(s)).collect::<Vec<_>>(),
            sms.iter().map(|s| g.universe.show(s)).collect::<Vec<_>>()
        )));
    }
    let u = 1.0 / sms.len() as f64;
    if let Some(e) = d.support().iter().find(|e| (e.prob - u).abs() > TOL) {
        return Ok(Verdict::Fail(format!("{} has probability {} instead of {u}", g.universe.show(&e.atoms), e.prob)));
    }
    Ok(Verdict::Pass)
}

fn gen_mln(rng: &mut ChaCha8Rng) -> Case {
    Case::of(Source::Mln(gen::mln(rng, 4, 6)))
}

/// An MLN and its LP^MLN embedding define the same distribution.
fn mln_embedding(c: &Case, ctx: &Ctx) -> Result<Verdict> {
    let Source::Mln(m) = &c.source else { unreachable!() };
    let l = ground_mln(m)?;
    let a = mln_distribution(&l, ctx.limits);
    let b = distribution(&mln_to_lpmln(&l), ctx.limits);
    Ok(match (a, b) {
        (Ok(a), Ok(b)) => close(&a, &b).map_or(Verdict::Pass, Verdict::Fail),
        (Err(x), Err(y)) if x == y => Verdict::Pass,
        (a, b) => Verdict::Fail(format!("one side failed: {:?} vs {:?}", a.err(), b.err())),
    })
}

fn gen_lpmln(rng: &mut ChaCha8Rng) -> Case {
    Case::of(Source::Lpmln(gen::lpmln(rng, &RuleShape::small())))
}

fn hard_consistent(g: &GroundProgram, ctx: &Ctx) -> Result<bool> {
    has_hard_consistent_model(g, ctx.limits)
}

/// Tight programs with `SM′ ≠ ∅` agree with the MLN of their completion.
fn completion_agrees(c: &Case, ctx: &Ctx) -> Result<Verdict> {
    let g = ground_program(lpmln(c))?;
    if !is_tight(g.atom_count(), &unweighted(&g.rules)) || !hard_consistent(&g, ctx)? {
        return Ok(Verdict::Skip);
    }
    let comp = completion(&g, false, ctx.limits)?;
    let a = distribution(&g, ctx.limits)?;
    let b = mln_distribution(&comp.mln, ctx.limits)?;
    Ok(close(&a, &b).map_or(Verdict::Pass, Verdict::Fail))
}

/// Programs with `SM′ ≠ ∅` agree with the MLN of their rules plus loop formulas.
fn loop_mln(c: &Case, ctx: &Ctx) -> Result<Verdict> {
    let g = ground_program(lpmln(c))?;
    if !hard_consistent(&g, ctx)? {
        return Ok(Verdict::Skip);
    }
    let a = distribution(&g, ctx.limits)?;
    let b = mln_distribution(&loop_augmented_mln(&g, ctx.limits)?, ctx.limits)?;
    Ok(close(&a, &b).map_or(Verdict::Pass, Verdict::Fail))
}

/// With `SM′ ≠ ∅` the soft-only distribution equals the full one, and the top tier holds
/// every hard rule.
fn soft_only(c: &Case, ctx: &Ctx) -> Result<Verdict> {
    let g = ground_program(lpmln(c))?;
    if !hard_consistent(&g, ctx)? {
        return Ok(Verdict::Skip);
    }
    let a = distribution(&g, ctx.limits)?;
    if a.max_tier != Some(g.hard_count() as u64) {
        return Ok(Verdict::Fail(format!("max tier {:?} but {} hard rules", a.max_tier, g.hard_count())));
    }
    let b = soft_only_distribution(&g, ctx.limits)?;
    Ok(close(&a, &b).map_or(Verdict::Pass, Verdict::Fail))
}

/// Branch-and-bound search and exhaustive enumeration agree.
fn engines(c: &Case, ctx: &Ctx) -> Result<Verdict> {
    let g = ground_program(lpmln(c))?;
    let a = distribution(&g, ctx.limits)?;
    let b = weight_table(&g, ctx.limits)?;
    if (a.total() - 1.0).abs() > TOL {
        return Ok(Verdict::Fail(format!("probabilities sum to {}", a.total())));
    }
    Ok(close(&a, &b).map_or(Verdict::Pass, Verdict::Fail))
}

fn gen_problog(rng: &mut ChaCha8Rng) -> Case {
    Case::of(Source::ProbLog(gen::problog(rng)))
}

/// Distribution semantics and the LP^MLN translation agree, and each probabilistic fact
/// keeps its marginal.
fn problog(c: &Case, ctx: &Ctx) -> Result<Verdict> {
    let Source::ProbLog(p) = &c.source else { unreachable!() };
    let a = match problog_distribution(p, ctx.limits) {
        Err(Error::NotWellDefined(..)) => return Ok(Verdict::Skip),
        r => r?,
    };
    let b = distribution(&ground_program(&problog_to_lpmln(p))?, ctx.limits)?;
    if let Some(m) = close(&a, &b) {
        return Ok(Verdict::Fail(m));
    }
    for f in &p.facts {
        let got = b.query(&Formula::Atom(f.atom.clone()))?;
        if (got - f.prob).abs() > TOL {
            return Ok(Verdict::Fail(format!("marginal of {} is {got}, declared {}", f.atom, f.prob)));
        }
    }
    Ok(Verdict::Pass)
}

fn gen_weak(rng: &mut ChaCha8Rng) -> Case {
    Case::of(Source::AspWeak(gen::weak(rng)))
}

/// The most probable stable models are the penalty minimizers.
fn weak(c: &Case, ctx: &Ctx) -> Result<Verdict> {
    let Source::AspWeak(w) = &c.source else { unreachable!() };
    let a = match optimal_by_penalty(w, ctx.limits) {
        Err(Error::NoStableModel) => return Ok(Verdict::Skip),
        r => r?,
    };
    let b = optimal_stable_models(w, ctx.limits)?;
    if as_set(&a) != as_set(&b) {
        return Ok(Verdict::Fail(format!("penalty optimum {a:?}, most probable {b:?}")));
    }
    Ok(Verdict::Pass)
}

fn gen_mvpp(rng: &mut ChaCha8Rng) -> Case {
    Case::of(Source::Mvpp(gen::mvpp(rng)))
}

/// Direct semantics and `T(Π)` agree.
fn mvpp(c: &Case, ctx: &Ctx) -> Result<Verdict> {
    let Source::Mvpp(m) = &c.source else { unreachable!() };
    let a = match mvpp_direct_distribution(m, ctx.limits) {
        Err(Error::EmptySmDoublePrime) => return Ok(Verdict::Skip),
        r => r?,
    };
    let b = distribution(&ground_program(&mvpp_to_lpmln(m)?)?, ctx.limits)?;
    Ok(close(&a, &b).map_or(Verdict::Pass, Verdict::Fail))
}

fn gen_plog(rng: &mut ChaCha8Rng) -> Case {
    Case::of(Source::Plog(gen::plog(rng)))
}

/// `μ(W)` equals the translated program's probability of `F_W` for every world.
fn plog(c: &Case, ctx: &Ctx) -> Result<Verdict> {
    let Source::Plog(p) = &c.source else { unreachable!() };
    let m = PlogModel::new(p)?;
    if !m.validate(ctx.limits)?.is_empty() {
        return Ok(Verdict::Skip);
    }
    let worlds = match m.measure(ctx.limits) {
        Err(Error::Inconsistent | Error::AllZeroMeasure) => return Ok(Verdict::Skip),
        r => r?,
    };
    let d = distribution(&ground_program(&mvpp_to_lpmln(&m.to_mvpp()?)?)?, ctx.limits)?;
    for w in &worlds {
        let got = d.query(&m.fw_formula(w))?;
        if (got - w.prob).abs() > TOL {
            return Ok(Verdict::Fail(format!(
                "world {}: mu = {}, translated P(F_W) = {got}",
                m.tau.universe.show(&w.atoms),
                w.prob
            )));
        }
    }
    for a in m.tau.universe.iter() {
        let q = Formula::Atom(a.clone());
        let (x, y) = (m.prob(&worlds, &q)?, d.query(&q)?);
        if (x - y).abs() > TOL {
            return Ok(Verdict::Fail(format!("P({a}) = {x} directly, {y} translated")));
        }
    }
    Ok(Verdict::Pass)
}

fn gen_any(rng: &mut ChaCha8Rng) -> Case {
    match rng.random_range(0..6) {
        0 => gen_lpmln(rng),
        1 => gen_weak(rng),
        2 => gen_mln(rng),
        3 => gen_problog(rng),
        4 => gen_mvpp(rng),
        _ => gen_plog(rng),
    }
}

/// Printing then parsing gives back the same value.
fn round_trip(c: &Case, _: &Ctx) -> Result<Verdict> {
    let text = textio::print(&c.source);
    let back = textio::parse(c.source.dialect(), &text)?;
    Ok(if back == c.source {
        Verdict::Pass
    } else {
        Verdict::Fail(format!("reparsed value differs:\n{}", textio::print(&back)))
    })
}

pub const PROPERTIES: &[Property] = &[
    Property {
        name: "reduct",
        about: "stable for a subprogram and a model of the program implies stable for the program",
        generate: gen_reduct,
        verify: reduct,
    },
    Property {
        name: "loop-formulas",
        about: "stable models are the models satisfying every loop formula",
        generate: gen_small_asp,
        verify: loop_formulas,
    },
    Property {
        name: "tight-completion",
        about: "for tight programs, completion models are the stable models",
        generate: gen_small_asp,
        verify: tight_completion,
    },
    Property {
        name: "asp-embedding",
        about: "an all-hard program is uniform over its stable models",
        generate: gen_asp,
        verify: asp_embedding,
    },
    Property {
        name: "mln-embedding",
        about: "an MLN and its LP^MLN embedding agree",
        generate: gen_mln,
        verify: mln_embedding,
    },
    Property {
        name: "completion",
        about: "tight programs with SM' nonempty agree with their completion",
        generate: gen_lpmln,
        verify: completion_agrees,
    },
    Property {
        name: "loop-mln",
        about: "programs with SM' nonempty agree with their loop-augmented MLN",
        generate: gen_lpmln,
        verify: loop_mln,
    },
    Property {
        name: "soft-only",
        about: "with SM' nonempty, soft weights alone give the distribution",
        generate: gen_lpmln,
        verify: soft_only,
    },
    Property {
        name: "engines",
        about: "search and exhaustive enumeration agree",
        generate: gen_lpmln,
        verify: engines,
    },
    Property {
        name: "problog",
        about: "ProbLog semantics and its translation agree",
        generate: gen_problog,
        verify: problog,
    },
    Property {
        name: "weak",
        about: "most probable stable models minimize the weak-constraint penalty",
        generate: gen_weak,
        verify: weak,
    },
    Property {
        name: "mvpp",
        about: "multi-valued programs and their translation agree",
        generate: gen_mvpp,
        verify: mvpp,
    },
    Property {
        name: "plog",
        about: "P-log measures and the translated program agree",
        generate: gen_plog,
        verify: plog,
    },
    Property {
        name: "round-trip",
        about: "printing then parsing is the identity",
        generate: gen_any,
        verify: round_trip,
    },
];

pub fn property(name: &str) -> Option<&'static Property> {
    PROPERTIES.iter().find(|p| p.name == name)
}

fn fails(p: &Property, c: &Case, ctx: &Ctx) -> Option<String> {
    match (p.verify)(c, ctx) {
        Ok(Verdict::Fail(m)) => Some(m),
        Err(e) => Some(format!("error: {e}")),
        _ => None,
    }
}

fn remove_at<T: Clone>(v: &[T], k: usize) -> Vec<T> {
    let mut v = v.to_vec();
    v.remove(k);
    v
}

/// One-step simplifications: drop a statement, or drop a body literal of a rule.
fn shrink_candidates(c: &Case) -> Vec<Case> {
    let mut out = Vec::new();
    let with = |source: Source, subset: Vec<usize>| Case {
        source,
        subset,
        interp: c.interp.clone(),
    };
    let drop_literals = |r: &Rule<crate::logic::AtomPattern>| -> Vec<Rule<crate::logic::AtomPattern>> {
        let mut v = Vec::new();
        for k in 0..r.body.pos.len() {
            let mut s = r.clone();
            s.body.pos.remove(k);
            v.push(s);
        }
        for k in 0..r.body.neg.len() {
            let mut s = r.clone();
            s.body.neg.remove(k);
            v.push(s);
        }
        v
    };
    match &c.source {
        Source::Lpmln(p) => {
            for k in 0..p.rules.len() {
                let subset = c.subset.iter().filter(|&&i| i != k).map(|&i| if i > k { i - 1 } else { i }).collect();
                out.push(with(Source::Lpmln(Program::new(p.signature.clone(), remove_at(&p.rules, k))), subset));
            }
            for (k, r) in p.rules.iter().enumerate() {
                for s in drop_literals(&r.rule) {
                    let mut q = p.clone();
                    q.rules[k] = WeightedRule::new(r.weight, s);
                    out.push(with(Source::Lpmln(q), c.subset.clone()));
                }
            }
            for k in 0..c.subset.len() {
                out.push(with(c.source.clone(), remove_at(&c.subset, k)));
            }
        }
        Source::AspWeak(w) => {
            for k in 0..w.rules.len() {
                let mut q = w.clone();
                q.rules.remove(k);
                out.push(Case::of(Source::AspWeak(q)));
            }
            for k in 0..w.weak.len() {
                let mut q = w.clone();
                q.weak.remove(k);
                out.push(Case::of(Source::AspWeak(q)));
            }
        }
        Source::Mln(m) => {
            for k in 0..m.formulas.len() {
                let mut q = m.clone();
                q.formulas.remove(k);
                out.push(Case::of(Source::Mln(q)));
            }
        }
        Source::ProbLog(p) => {
            for k in 0..p.rules.len() {
                let mut q = p.clone();
                q.rules.remove(k);
                out.push(Case::of(Source::ProbLog(q)));
            }
            for k in 0..p.facts.len() {
                let mut q = p.clone();
                q.facts.remove(k);
                out.push(Case::of(Source::ProbLog(q)));
            }
        }
        Source::Mvpp(m) => {
            for k in 0..m.rules.len() {
                let mut q = m.clone();
                q.rules.remove(k);
                out.push(Case::of(Source::Mvpp(q)));
            }
            for (k, r) in m.rules.iter().enumerate() {
                for s in drop_literals(r) {
                    let mut q = m.clone();
                    q.rules[k] = s;
                    out.push(Case::of(Source::Mvpp(q)));
                }
            }
        }
        Source::Plog(p) => {
            for k in 0..p.rules.len() {
                let mut q = p.clone();
                q.rules.remove(k);
                out.push(Case::of(Source::Plog(q)));
            }
            for k in 0..p.pr.len() {
                let mut q = p.clone();
                q.pr.remove(k);
                out.push(Case::of(Source::Plog(q)));
            }
            if !p.obs.is_empty() || !p.act.is_empty() {
                let mut q = p.clone();
                q.obs.clear();
                q.act.clear();
                out.push(Case::of(Source::Plog(q)));
            }
        }
    }
    out
}

/// Greedily applies simplifications that keep the case failing.
pub fn shrink(p: &Property, mut case: Case, mut message: String, ctx: &Ctx) -> (Case, String) {
    'outer: loop {
        for cand in shrink_candidates(&case) {
            if let Some(m) = fails(p, &cand, ctx) {
                case = cand;
                message = m;
                continue 'outer;
            }
        }
        return (case, message);
    }
}

/// Runs `n` applicable cases of one property. Cases whose preconditions fail are regenerated,
/// up to `50 n` attempts in total.
pub fn run(p: &Property, seed: u64, n: usize, ctx: &Ctx) -> Report {
    let index = PROPERTIES.iter().position(|q| q.name == p.name).unwrap_or(0) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index));
    let mut report = Report {
        property: p.name,
        cases: 0,
        skipped: 0,
        failure: None,
    };
    let mut attempts = 0;
    while report.cases < n && attempts < 50 * n.max(1) {
        attempts += 1;
        let case = (p.generate)(&mut rng);
        match (p.verify)(&case, ctx) {
            Ok(Verdict::Skip) => report.skipped += 1,
            Ok(Verdict::Pass) => report.cases += 1,
            Ok(Verdict::Fail(m)) => {
                return fail(p, report, case, m, ctx);
            }
            Err(e) => return fail(p, report, case, format!("error: {e}"), ctx),
        }
    }
    report
}

fn fail(p: &Property, mut report: Report, case: Case, m: String, ctx: &Ctx) -> Report {
    report.cases += 1;
    let (small, message) = shrink(p, case, m, ctx);
    report.failure = Some(Failure {
        case: report.cases,
        message,
        counterexample: small.render(),
    });
    report
}

/// Every property with `n` cases each.
pub fn selftest(seed: u64, n: usize, ctx: &Ctx) -> Vec<Report> {
    PROPERTIES.iter().map(|p| run(p, seed, n, ctx)).collect()
}
