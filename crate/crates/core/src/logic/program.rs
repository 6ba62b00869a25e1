use std::collections::HashMap;
use std::fmt;

use super::rule::{Rule, WeightedRule};
use super::signature::Signature;
use super::value::{write_application, GroundAtom, Value};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(Value),
}

impl Term {
    pub fn substitute(&self, env: &HashMap<String, Value>) -> Option<Value> {
        match self {
            Term::Var(v) => env.get(v).cloned(),
            Term::Const(c) => Some(c.clone()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Const(c) => write!(f, "{c}"),
        }
    }
}

/// An atom that may mention variables: `c(t1,...,tn)` or `c(t1,...,tn)=v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomPattern {
    pub symbol: String,
    pub args: Vec<Term>,
    pub value: Option<Term>,
}

impl AtomPattern {
    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.args.iter().chain(self.value.iter()).filter_map(|t| match t {
            Term::Var(v) => Some(v.as_str()),
            Term::Const(_) => None,
        })
    }

    pub fn is_ground(&self) -> bool {
        self.vars().next().is_none()
    }

    pub fn substitute(&self, env: &HashMap<String, Value>) -> Option<GroundAtom> {
        Some(GroundAtom {
            symbol: self.symbol.clone(),
            args: self.args.iter().map(|t| t.substitute(env)).collect::<Option<_>>()?,
            value: match &self.value {
                Some(t) => Some(t.substitute(env)?),
                None => None,
            },
        })
    }

    pub fn to_ground(&self) -> Option<GroundAtom> {
        self.substitute(&HashMap::new())
    }
}

impl From<&GroundAtom> for AtomPattern {
    fn from(a: &GroundAtom) -> Self {
        AtomPattern {
            symbol: a.symbol.clone(),
            args: a.args.iter().cloned().map(Term::Const).collect(),
            value: a.value.clone().map(Term::Const),
        }
    }
}

impl From<GroundAtom> for AtomPattern {
    fn from(a: GroundAtom) -> Self {
        AtomPattern::from(&a)
    }
}

impl fmt::Display for AtomPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_application(f, &self.symbol, &self.args)?;
        if let Some(v) = &self.value {
            write!(f, "={v}")?;
        }
        Ok(())
    }
}

/// Integer expression usable in a builtin comparison.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Term(Term),
    Mod(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, env: &HashMap<String, Value>) -> Result<Value, String> {
        match self {
            Expr::Term(t) => t
                .substitute(env)
                .ok_or_else(|| format!("unbound variable in builtin: {t}")),
            Expr::Mod(l, r) => {
                let (l, r) = (l.eval(env)?, r.eval(env)?);
                match (l.as_int(), r.as_int()) {
                    (Some(_), Some(0)) => Err("modulo by zero".to_string()),
                    (Some(a), Some(b)) => Ok(Value::Int(a.rem_euclid(b))),
                    _ => Err(format!("mod needs integer operands, got {l} and {r}")),
                }
            }
        }
    }

    pub fn vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Term(Term::Var(v)) => out.push(v.clone()),
            Expr::Term(Term::Const(_)) => {}
            Expr::Mod(l, r) => {
                l.vars(out);
                r.vars(out);
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Term(t) => write!(f, "{t}"),
            Expr::Mod(l, r) => {
                // `mod` associates to the left, so only a nested right operand needs parentheses.
                write!(f, "{l} mod ")?;
                match r.as_ref() {
                    Expr::Mod(..) => write!(f, "({r})"),
                    _ => write!(f, "{r}"),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    pub fn symbol(&self) -> &'static str {
        match self {
            CmpOp::Eq => "=",
            CmpOp::Ne => "!=",
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
        }
    }
}

/// Grounding-time comparison such as `Y mod 2 = 0` or `X != Y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Builtin {
    pub lhs: Expr,
    pub op: CmpOp,
    pub rhs: Expr,
}

impl Builtin {
    pub fn eval(&self, env: &HashMap<String, Value>) -> Result<bool, String> {
        let (l, r) = (self.lhs.eval(env)?, self.rhs.eval(env)?);
        Ok(match self.op {
            CmpOp::Eq => l == r,
            CmpOp::Ne => l != r,
            CmpOp::Lt => l < r,
            CmpOp::Le => l <= r,
            CmpOp::Gt => l > r,
            CmpOp::Ge => l >= r,
        })
    }

    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.lhs.vars(&mut out);
        self.rhs.vars(&mut out);
        out
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.op.symbol(), self.rhs)
    }
}

/// Variables of a rule in order of first occurrence (head, body, builtins).
pub fn rule_vars(rule: &Rule<AtomPattern>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut push = |v: &str| {
        if !out.iter().any(|o| o == v) {
            out.push(v.to_string());
        }
    };
    rule.for_each_atom(&mut |a: &AtomPattern| a.vars().for_each(&mut push));
    for b in &rule.body.builtins {
        for v in b.vars() {
            push(&v);
        }
    }
    out
}

/// An LP^MLN program: a signature plus weighted rules that may contain variables.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Program {
    pub signature: Signature,
    pub rules: Vec<WeightedRule<AtomPattern>>,
}

impl Program {
    pub fn new(signature: Signature, rules: Vec<WeightedRule<AtomPattern>>) -> Self {
        Program { signature, rules }
    }

    /// The unweighted program obtained by dropping weights.
    pub fn unweighted(&self) -> Vec<Rule<AtomPattern>> {
        self.rules.iter().map(|r| r.rule.clone()).collect()
    }

    /// Builds a program from ground rules over the given signature.
    pub fn from_ground(signature: Signature, rules: Vec<WeightedRule<GroundAtom>>) -> Self {
        Program {
            signature,
            rules: rules
                .into_iter()
                .map(|r| WeightedRule::new(r.weight, r.rule.map(&mut |a: &GroundAtom| AtomPattern::from(a))))
                .collect(),
        }
    }
}
