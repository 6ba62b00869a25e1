//! Concrete syntax for the six input dialects and for queries.
//!
//! The grammar is documented in `docs/grammar.md`. Every printer output parses back to a
//! structurally equal value.

pub mod json;
pub mod lexer;
mod parser;
pub mod printer;

use std::path::Path;

use crate::error::{Error, ParseError, Result, SourceSpan, ValidationError};
use crate::frontends::mvpp::MvppProgram;
use crate::frontends::plog::PlogProgram;
use crate::frontends::problog::ProbLogProgram;
use crate::frontends::weak::WeakProgram;
use crate::infer::mln::MlnProgram;
use crate::logic::{AtomPattern, Formula, GroundAtom, Program, Signature, Term};

use parser::Parser;
pub use printer::print;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dialect {
    Lpmln,
    AspWeak,
    Mln,
    ProbLog,
    Mvpp,
    Plog,
}

impl Dialect {
    pub const ALL: [Dialect; 6] = [
        Dialect::Lpmln,
        Dialect::AspWeak,
        Dialect::Mln,
        Dialect::ProbLog,
        Dialect::Mvpp,
        Dialect::Plog,
    ];

    /// Name used by `#dialect` and by the CLI; also the file extension.
    pub fn name(self) -> &'static str {
        match self {
            Dialect::Lpmln => "lpmln",
            Dialect::AspWeak => "asp",
            Dialect::Mln => "mln",
            Dialect::ProbLog => "problog",
            Dialect::Mvpp => "mvpp",
            Dialect::Plog => "plog",
        }
    }

    pub fn from_name(s: &str) -> Option<Dialect> {
        Dialect::ALL.into_iter().find(|d| d.name() == s)
    }

    pub fn from_path(path: &Path) -> Option<Dialect> {
        path.extension().and_then(|e| e.to_str()).and_then(Dialect::from_name)
    }
}

impl std::fmt::Display for Dialect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A parsed program of any dialect.
#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Lpmln(Program),
    AspWeak(WeakProgram),
    Mln(MlnProgram),
    ProbLog(ProbLogProgram),
    Mvpp(MvppProgram),
    Plog(PlogProgram),
}

impl Source {
    pub fn dialect(&self) -> Dialect {
        match self {
            Source::Lpmln(_) => Dialect::Lpmln,
            Source::AspWeak(_) => Dialect::AspWeak,
            Source::Mln(_) => Dialect::Mln,
            Source::ProbLog(_) => Dialect::ProbLog,
            Source::Mvpp(_) => Dialect::Mvpp,
            Source::Plog(_) => Dialect::Plog,
        }
    }

    pub fn signature(&self) -> &Signature {
        match self {
            Source::Lpmln(p) => &p.signature,
            Source::AspWeak(p) => &p.signature,
            Source::Mln(p) => &p.signature,
            Source::ProbLog(p) => &p.signature,
            Source::Mvpp(p) => &p.signature,
            Source::Plog(p) => &p.signature,
        }
    }

    /// Structural checks of the dialect (signature, probabilities, weights, head restrictions).
    pub fn validate(&self) -> std::result::Result<(), ValidationError> {
        match self {
            Source::Lpmln(p) => p.signature.validate(),
            Source::AspWeak(p) => p.validate(),
            Source::Mln(p) => p.signature.validate(),
            Source::ProbLog(p) => p.validate(),
            Source::Mvpp(p) => p.validate(),
            Source::Plog(p) => p.signature.validate(),
        }
    }
}

/// The `#dialect` header of `text`, if any.
pub fn declared_dialect(text: &str) -> Result<Option<Dialect>> {
    let toks = lexer::tokenize(text, None)?;
    for w in toks.windows(2) {
        if w[0].tok == lexer::Tok::Hash("dialect".into()) {
            if let lexer::Tok::Ident(name) = &w[1].tok {
                return Ok(Dialect::from_name(name));
            }
        }
    }
    Ok(None)
}

/// Parses and validates `text` as `dialect`. A `#dialect` header must agree with `dialect`.
pub fn parse_named(dialect: Dialect, text: &str, file: Option<&str>) -> Result<Source> {
    let mut p = Parser::new(text, file)?;
    let src = p.source(dialect)?;
    if let Some((declared, span)) = &p.declared {
        if *declared != dialect {
            return Err(ParseError {
                span: span.clone(),
                message: format!("file declares dialect {declared} but is read as {dialect}"),
                expected: Vec::new(),
            }
            .into());
        }
    }
    src.validate().map_err(|mut e| {
        if e.span.is_none() {
            e.span = Some(SourceSpan {
                file: file.map(str::to_string),
                line: 1,
                column: 1,
            });
        }
        Error::Validation(e)
    })?;
    Ok(src)
}

pub fn parse(dialect: Dialect, text: &str) -> Result<Source> {
    parse_named(dialect, text, None)
}

/// Reads a file, taking the dialect from `override_dialect`, the `#dialect` header or the
/// extension, in that order of precedence.
pub fn parse_file(path: &Path, override_dialect: Option<Dialect>) -> Result<Source> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::Parse(ParseError {
            span: SourceSpan {
                file: Some(name.clone()),
                line: 0,
                column: 0,
            },
            message: format!("cannot read file: {e}"),
            expected: Vec::new(),
        })
    })?;
    let dialect = match override_dialect {
        Some(d) => d,
        None => match declared_dialect(&text)?.or_else(|| Dialect::from_path(path)) {
            Some(d) => d,
            None => {
                return Err(Error::Parse(ParseError {
                    span: SourceSpan {
                        file: Some(name),
                        line: 1,
                        column: 1,
                    },
                    message: "cannot tell the dialect; add a `#dialect` line or use a known extension".into(),
                    expected: Dialect::ALL.iter().map(|d| format!(".{}", d.name())).collect(),
                }))
            }
        },
    };
    parse_named(dialect, &text, Some(&name))
}

macro_rules! typed_parser {
    ($name:ident, $variant:ident, $ty:ty) => {
        pub fn $name(text: &str) -> Result<$ty> {
            match parse(Dialect::$variant, text)? {
                Source::$variant(p) => Ok(p),
                _ => unreachable!("parser returns the requested dialect"),
            }
        }
    };
}

typed_parser!(parse_lpmln, Lpmln, Program);
typed_parser!(parse_weak, AspWeak, WeakProgram);
typed_parser!(parse_mln, Mln, MlnProgram);
typed_parser!(parse_problog, ProbLog, ProbLogProgram);
typed_parser!(parse_mvpp, Mvpp, MvppProgram);
typed_parser!(parse_plog, Plog, PlogProgram);

/// A propositional formula over possibly non-ground atoms.
pub fn parse_formula(text: &str) -> Result<Formula<AtomPattern>> {
    Ok(Parser::new(text, None)?.query()?)
}

/// A query over ground atoms: `not`/`~`, `&`/`,`, `|`/`;`, `->`, `#true`, `#false`.
pub fn parse_query(text: &str) -> Result<Formula<GroundAtom>> {
    let f = parse_formula(text)?;
    f.try_map(&mut |a: &AtomPattern| {
        a.to_ground().ok_or_else(|| {
            let var = a
                .args
                .iter()
                .chain(a.value.iter())
                .find_map(|t| match t {
                    Term::Var(v) => Some(v.clone()),
                    Term::Const(_) => None,
                })
                .unwrap_or_default();
            Error::NonGroundQuery(var)
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{Value, Weight};

    const BIRDS: &str = "\
#domain person = {jo}.
#var X : person.
alpha : bird(X) :- residentBird(X).
alpha : bird(X) :- migratoryBird(X).
alpha : :- residentBird(X), migratoryBird(X).
alpha : residentBird(jo).
alpha : migratoryBird(jo).
";

    #[test]
    fn hard_rule_with_variable() {
        let p = parse_lpmln(BIRDS).unwrap();
        assert_eq!(p.rules.len(), 5);
        assert!(p.rules[0].weight.is_hard());
        assert_eq!(p.rules[0].rule.head[0].args, vec![Term::Var("X".into())]);
        let again = parse_lpmln(&printer::print_lpmln(&p)).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn weights_and_round_trip() {
        let src = "2 : a :- not b.\n-1.5 : {c}.\nln(0.5) : b ; c :- a, not not c, (not a | not b), X != 1.\n";
        let p = parse_lpmln(src).unwrap();
        assert_eq!(p.rules[0].weight, Weight::Soft(2.0));
        assert_eq!(p.rules[1].weight, Weight::Soft(-1.5));
        assert_eq!(p.rules[2].weight, Weight::Soft(0.5f64.ln()));
        assert_eq!(p.rules[2].rule.body.neg.len(), 2);
        assert_eq!(parse_lpmln(&printer::print_lpmln(&p)).unwrap(), p);
    }

    #[test]
    fn problog_fact() {
        let p = parse_problog("0.6 :: p.\nr :- p.").unwrap();
        assert_eq!(p.facts[0].atom, GroundAtom::prop("p"));
        assert_eq!(p.facts[0].prob, 0.6);
    }

    #[test]
    fn mvpp_declaration() {
        let m = parse_mvpp(
            "0.25: outcome=6 | 0.15: outcome=5 | 0.15: outcome=4 | 0.15: outcome=3 | 0.15: outcome=2 | 0.15: outcome=1.",
        )
        .unwrap();
        assert_eq!(m.decls[0].symbol, "outcome");
        assert_eq!(m.decls[0].choices[0], (0.25, Value::Int(6)));
        assert_eq!(parse_mvpp(&printer::print_mvpp(&m)).unwrap(), m);
        let bad = parse_mvpp("0.5: c=1 | 0.4: c=2.");
        assert!(matches!(bad, Err(Error::Parse(_))));
    }

    #[test]
    fn weak_constraint() {
        let w = parse_weak("{a}.\n:~ a. [1]").unwrap();
        assert_eq!(w.weak[0].weight, 1);
        assert_eq!(w.weak[0].body.pos.len(), 1);
        assert_eq!(parse_weak(&printer::print_weak(&w)).unwrap(), w);
    }

    #[test]
    fn queries() {
        assert!(matches!(parse_query("bird(jo)").unwrap(), Formula::Atom(_)));
        assert!(matches!(parse_query("residentBird(jo) & bird(jo)").unwrap(), Formula::And(v) if v.len() == 2));
        let q = parse_query("roll(d1)=6").unwrap();
        assert_eq!(q, Formula::Atom(GroundAtom::with_value("roll", vec![Value::sym("d1")], Value::Int(6))));
        assert!(matches!(parse_query("a -> b | c").unwrap(), Formula::Implies(..)));
        assert!(matches!(parse_query("p(X)"), Err(Error::NonGroundQuery(_))));
    }

    #[test]
    fn errors_carry_positions() {
        let Err(Error::Parse(e)) = parse(Dialect::Lpmln, "a.\nb :- .") else {
            panic!("expected a parse error")
        };
        assert_eq!((e.span.line, e.span.column), (2, 6));
        assert!(matches!(parse(Dialect::Mln, "#dialect plog.\n1 : a."), Err(Error::Parse(_))));
    }

    #[test]
    fn empty_program_prints_empty() {
        assert_eq!(print(&parse(Dialect::Lpmln, "").unwrap()), "");
    }
}
