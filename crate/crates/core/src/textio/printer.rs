use std::fmt::Write;

use crate::frontends::mvpp::MvppProgram;
use crate::frontends::plog::PlogProgram;
use crate::frontends::problog::ProbLogProgram;
use crate::frontends::weak::WeakProgram;
use crate::infer::mln::MlnProgram;
use crate::logic::{AtomPattern, DomainSpec, Program, Range, Signature, Term};

use super::Source;

fn args(out: &mut String, terms: &[Term]) {
    if !terms.is_empty() {
        let parts: Vec<String> = terms.iter().map(Term::to_string).collect();
        write!(out, "({})", parts.join(", ")).unwrap();
    }
}

pub fn print_signature(out: &mut String, sig: &Signature) {
    for (name, d) in &sig.domains {
        match d {
            DomainSpec::Range(lo, hi) => writeln!(out, "#domain {name} = {lo}..{hi}.").unwrap(),
            DomainSpec::Set(vs) => {
                let vs: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                writeln!(out, "#domain {name} = {{{}}}.", vs.join(", ")).unwrap()
            }
        }
    }
    for (v, d) in &sig.vars {
        writeln!(out, "#var {v} : {d}.").unwrap();
    }
    for (c, decl) in &sig.constants {
        write!(out, "#const {c}").unwrap();
        if !decl.args.is_empty() {
            write!(out, "({})", decl.args.join(", ")).unwrap();
        }
        match &decl.range {
            Range::Boolean => writeln!(out, " : bool.").unwrap(),
            Range::Domain(d) => writeln!(out, " : {d}.").unwrap(),
        }
    }
}

pub fn print_lpmln(p: &Program) -> String {
    let mut out = String::new();
    print_signature(&mut out, &p.signature);
    for r in &p.rules {
        writeln!(out, "{r}").unwrap();
    }
    out
}

pub fn print_weak(p: &WeakProgram) -> String {
    let mut out = String::new();
    print_signature(&mut out, &p.signature);
    for r in &p.rules {
        writeln!(out, "{r}").unwrap();
    }
    for w in &p.weak {
        writeln!(out, ":~ {}. [{}]", w.body, w.weight).unwrap();
    }
    out
}

pub fn print_mln(p: &MlnProgram) -> String {
    let mut out = String::new();
    print_signature(&mut out, &p.signature);
    for (w, f) in &p.formulas {
        writeln!(out, "{w} : {f}.").unwrap();
    }
    out
}

pub fn print_problog(p: &ProbLogProgram) -> String {
    let mut out = String::new();
    print_signature(&mut out, &p.signature);
    for f in &p.facts {
        writeln!(out, "{:?} :: {}.", f.prob, f.atom).unwrap();
    }
    for r in &p.rules {
        writeln!(out, "{r}").unwrap();
    }
    out
}

pub fn print_mvpp(p: &MvppProgram) -> String {
    let mut out = String::new();
    print_signature(&mut out, &p.signature);
    for d in &p.decls {
        let parts: Vec<String> = d
            .choices
            .iter()
            .map(|(prob, v)| {
                let a = AtomPattern {
                    symbol: d.symbol.clone(),
                    args: d.args.clone(),
                    value: Some(Term::Const(v.clone())),
                };
                format!("{prob:?} : {a}")
            })
            .collect();
        writeln!(out, "{}.", parts.join(" | ")).unwrap();
    }
    for r in &p.rules {
        writeln!(out, "{r}").unwrap();
    }
    out
}

pub fn print_plog(p: &PlogProgram) -> String {
    let mut out = String::new();
    print_signature(&mut out, &p.signature);
    for r in &p.rules {
        writeln!(out, "{r}").unwrap();
    }
    for r in &p.random {
        write!(out, "[{}", r.id).unwrap();
        args(&mut out, &r.id_args);
        write!(out, "] random({})", r.atom).unwrap();
        if !r.body.is_empty() {
            write!(out, " :- {}", r.body).unwrap();
        }
        out.push_str(".\n");
    }
    for a in &p.pr {
        if let Some((name, terms)) = &a.rule {
            write!(out, "[{name}").unwrap();
            args(&mut out, terms);
            out.push_str("] ");
        }
        write!(out, "pr({}", a.atom).unwrap();
        if !a.body.is_empty() {
            write!(out, " | {}", a.body).unwrap();
        }
        writeln!(out, ") = {:?}.", a.prob).unwrap();
    }
    for a in &p.obs {
        writeln!(out, "obs({a}).").unwrap();
    }
    for a in &p.act {
        writeln!(out, "do({a}).").unwrap();
    }
    out
}

/// Source text that parses back to `src` in the same dialect.
pub fn print(src: &Source) -> String {
    match src {
        Source::Lpmln(p) => print_lpmln(p),
        Source::AspWeak(p) => print_weak(p),
        Source::Mln(p) => print_mln(p),
        Source::ProbLog(p) => print_problog(p),
        Source::Mvpp(p) => print_mvpp(p),
        Source::Plog(p) => print_plog(p),
    }
}
