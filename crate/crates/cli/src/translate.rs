//! `translate` targets and their text or JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::{json, Value as Json};

use lpmln_core::frontends::plog::PlogModel;
use lpmln_core::frontends::{completion, loop_augmented_mln};
use lpmln_core::infer::{ground_mln, GroundMln, MlnProgram};
use lpmln_core::logic::{AtomPattern, Formula, GroundAtom, Program, Value, Weight};
use lpmln_core::textio::json::{formula_json, program_json, weight_json};
use lpmln_core::textio::{printer, Dialect, Source};
use lpmln_core::{Error, Limits, Result};

use crate::pipeline::{as_lpmln, ground};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Target {
    /// The LP^MLN program the input denotes.
    Lpmln,
    /// That program, grounded.
    Ground,
    /// An MLN: the ground rules as formulas plus a hard loop formula per loop.
    Mln,
    /// An MLN: the ground rules plus the completion (tight programs only).
    Completion,
    /// The multi-valued program behind a P-log input.
    Mvpp,
}

pub enum Output {
    Program(Program),
    Mln(GroundMln),
    Mvpp(lpmln_core::frontends::MvppProgram),
}

pub struct Translation {
    pub output: Output,
    pub warnings: Vec<String>,
}

pub struct Options {
    pub force: bool,
    pub all_subsets: bool,
}

pub fn translate(src: &Source, to: Target, opts: &Options, limits: &Limits) -> Result<Translation> {
    let plain = |output| Translation {
        output,
        warnings: Vec::new(),
    };
    Ok(match to {
        Target::Lpmln => plain(Output::Program(as_lpmln(src)?)),
        Target::Ground => plain(Output::Program(ground(&as_lpmln(src)?, limits)?.to_program())),
        Target::Mln => match src {
            Source::Mln(m) => plain(Output::Mln(ground_mln(m)?)),
            _ => {
                let g = ground(&as_lpmln(src)?, limits)?;
                let mut mln = loop_augmented_mln(&g, limits)?;
                if opts.all_subsets {
                    let rules = lpmln_core::stable::unweighted(&g.rules);
                    let all = lpmln_core::stable::loops(
                        g.atom_count(),
                        &rules,
                        lpmln_core::stable::LoopMode::AllSubsets,
                        limits.max_loops,
                    )?;
                    mln.formulas.truncate(g.rules.len());
                    for l in all {
                        mln.formulas.push((Weight::Hard, lpmln_core::stable::loop_formula(&rules, &l)));
                    }
                }
                plain(Output::Mln(mln))
            }
        },
        Target::Completion => {
            let g = ground(&as_lpmln(src)?, limits)?;
            let c = completion(&g, opts.force, limits)?;
            Translation {
                output: Output::Mln(c.mln),
                warnings: c.warnings,
            }
        }
        Target::Mvpp => match src {
            Source::Plog(p) => plain(Output::Mvpp(PlogModel::new(p)?.to_mvpp()?)),
            Source::Mvpp(m) => plain(Output::Mvpp(m.clone())),
            other => {
                return Err(Error::Validation(lpmln_core::error::ValidationError::new(format!(
                    "--to mvpp needs a plog or mvpp input, not {}",
                    other.dialect()
                ))))
            }
        },
    })
}

fn mln_program(l: &GroundMln) -> MlnProgram {
    MlnProgram {
        signature: l.signature.clone(),
        formulas: (0..l.formulas.len())
            .map(|i| {
                let (w, f) = l.formula(i);
                (w, f.map(&mut |a: &GroundAtom| AtomPattern::from(a)))
            })
            .collect(),
    }
}

/// Source text in our own syntax, headed by a `#dialect` line.
pub fn render_text(out: &Output) -> String {
    let (dialect, body) = match out {
        Output::Program(p) => (Dialect::Lpmln, printer::print_lpmln(p)),
        Output::Mln(l) => (Dialect::Mln, printer::print_mln(&mln_program(l))),
        Output::Mvpp(m) => (Dialect::Mvpp, printer::print_mvpp(m)),
    };
    format!("#dialect {dialect}.\n{body}")
}

pub fn render_json(out: &Output) -> Json {
    match out {
        Output::Program(p) => program_json(p),
        Output::Mln(l) => {
            let formulas: Vec<Json> = (0..l.formulas.len())
                .map(|i| {
                    let (w, f) = l.formula(i);
                    json!({ "weight": weight_json(&w), "formula": formula_json(&f) })
                })
                .collect();
            json!({ "formulas": formulas })
        }
        Output::Mvpp(m) => {
            let decls: Vec<Json> = m
                .decls
                .iter()
                .map(|d| {
                    let choices: Vec<Json> = d
                        .choices
                        .iter()
                        .map(|(p, v)| json!({ "value": v.to_string(), "prob": p }))
                        .collect();
                    let args: Vec<String> = d.args.iter().map(|t| t.to_string()).collect();
                    json!({ "constant": d.symbol, "args": args, "choices": choices })
                })
                .collect();
            let rules = program_json(&Program::new(
                m.signature.clone(),
                m.rules.iter().cloned().map(|r| lpmln_core::logic::WeightedRule::new(Weight::Hard, r)).collect(),
            ));
            json!({ "decls": decls, "rules": rules["rules"] })
        }
    }
}

/// Alchemy-style MLN text: capitalized predicates and constants, `!`, `^`, `v`, `=>`, hard
/// formulas terminated by a period. Best effort; each argument position gets its own type.
pub fn render_alchemy(l: &GroundMln) -> String {
    fn cap(s: &str) -> String {
        let mut c = s.chars();
        match c.next() {
            Some(f) => f.to_uppercase().chain(c).collect(),
            None => String::new(),
        }
    }
    fn constant(v: &Value) -> String {
        match v {
            Value::Int(i) if *i < 0 => format!("Neg{}", -i),
            Value::Int(i) => format!("N{i}"),
            other => cap(&other.to_string()),
        }
    }
    fn args(a: &GroundAtom) -> Vec<&Value> {
        a.args.iter().chain(a.value.iter()).collect()
    }
    fn atom(a: &GroundAtom) -> String {
        let xs: Vec<String> = args(a).into_iter().map(constant).collect();
        format!("{}({})", cap(&a.symbol), xs.join(","))
    }
    // Alchemy has no truth constants; they are folded away first.
    fn fold(f: &Formula<GroundAtom>) -> Formula<GroundAtom> {
        match f {
            Formula::Not(g) => match fold(g) {
                Formula::True => Formula::False,
                Formula::False => Formula::True,
                g => Formula::not(g),
            },
            Formula::And(gs) => {
                let gs: Vec<_> = gs.iter().map(fold).filter(|g| *g != Formula::True).collect();
                if gs.contains(&Formula::False) {
                    Formula::False
                } else {
                    Formula::conj(gs)
                }
            }
            Formula::Or(gs) => {
                let gs: Vec<_> = gs.iter().map(fold).filter(|g| *g != Formula::False).collect();
                if gs.contains(&Formula::True) {
                    Formula::True
                } else {
                    Formula::disj(gs)
                }
            }
            Formula::Implies(a, b) => match (fold(a), fold(b)) {
                (Formula::False, _) | (_, Formula::True) => Formula::True,
                (Formula::True, b) => b,
                (a, Formula::False) => fold(&Formula::not(a)),
                (a, b) => Formula::implies(a, b),
            },
            other => other.clone(),
        }
    }
    fn formula(f: &Formula<GroundAtom>) -> String {
        match f {
            Formula::True | Formula::False => unreachable!("folded"),
            Formula::Atom(a) => atom(a),
            Formula::Not(g) => format!("!{}", formula(g)),
            Formula::And(gs) => format!("({})", gs.iter().map(formula).collect::<Vec<_>>().join(" ^ ")),
            Formula::Or(gs) => format!("({})", gs.iter().map(formula).collect::<Vec<_>>().join(" v ")),
            Formula::Implies(a, b) => format!("({} => {})", formula(a), formula(b)),
        }
    }

    let mut types: BTreeMap<(String, usize), Vec<String>> = BTreeMap::new();
    for a in l.universe.iter() {
        for (k, v) in args(a).into_iter().enumerate() {
            let e = types.entry((a.symbol.clone(), k)).or_default();
            let c = constant(v);
            if !e.contains(&c) {
                e.push(c);
            }
        }
    }
    let mut out = String::from("// types\n");
    for ((p, k), cs) in &types {
        writeln!(out, "t_{p}_{k} = {{{}}}", cs.join(", ")).unwrap();
    }
    out.push_str("\n// predicates\n");
    let mut seen = Vec::new();
    for a in l.universe.iter() {
        if seen.contains(&a.symbol) {
            continue;
        }
        seen.push(a.symbol.clone());
        let ts: Vec<String> = (0..args(a).len()).map(|k| format!("t_{}_{k}", a.symbol)).collect();
        writeln!(out, "{}({})", cap(&a.symbol), ts.join(",")).unwrap();
    }
    out.push_str("\n// formulas\n");
    for i in 0..l.formulas.len() {
        let (w, f) = l.formula(i);
        let text = match fold(&f) {
            // A tautology constrains nothing.
            Formula::True => continue,
            Formula::False => match l.universe.iter().next() {
                Some(a) => format!("({} ^ !{})", atom(a), atom(a)),
                None => continue,
            },
            g => formula(&g),
        };
        match w {
            Weight::Hard => writeln!(out, "{text}.").unwrap(),
            Weight::Soft(x) => writeln!(out, "{x} {text}").unwrap(),
        }
    }
    out
}
