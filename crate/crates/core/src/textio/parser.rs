use crate::error::{ParseError, SourceSpan};
use crate::frontends::mvpp::{MvppDecl, MvppProgram};
use crate::frontends::plog::{PlogProgram, PrAtom, RandomRule};
use crate::frontends::problog::{ProbFact, ProbLogProgram};
use crate::frontends::weak::{WeakConstraint, WeakProgram};
use crate::infer::mln::MlnProgram;
use crate::logic::{
    AtomPattern, Body, Builtin, CmpOp, ConstDecl, DomainSpec, Expr, Formula, GroundAtom, Program, Range, Rule,
    Signature, Term, Value, Weight, WeightedRule,
};

use super::lexer::{tokenize, Tok, Token};
use super::{Dialect, Source};

/// A `pr` atom awaiting its selection rule: optional rule id, head, condition.
type PendingPr = (Option<(String, Vec<Term>)>, AtomPattern, Body<AtomPattern>);

/// Words with a fixed meaning that cannot name predicates.
const RESERVED: &[&str] = &["not", "mod"];
const PLOG_RESERVED: &[&str] = &["random", "pr", "obs", "do"];

pub(crate) struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    file: Option<&'a str>,
    pub(crate) sig: Signature,
    pub(crate) declared: Option<(Dialect, SourceSpan)>,
}

type PResult<T> = Result<T, ParseError>;

fn is_cmp(t: &Tok) -> bool {
    matches!(t, Tok::Punct("=" | "!=" | "<" | "<=" | ">" | ">="))
}

impl<'a> Parser<'a> {
    pub(crate) fn new(text: &str, file: Option<&'a str>) -> PResult<Self> {
        Ok(Parser {
            toks: tokenize(text, file)?,
            pos: 0,
            file,
            sig: Signature::default(),
            declared: None,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn span(&self) -> SourceSpan {
        let t = &self.toks[self.pos];
        SourceSpan {
            file: self.file.map(str::to_string),
            line: t.line,
            column: t.column,
        }
    }

    pub(crate) fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    fn error<T>(&self, message: impl Into<String>, expected: &[&str]) -> PResult<T> {
        Err(ParseError {
            span: self.span(),
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn unexpected<T>(&self, expected: &[&str]) -> PResult<T> {
        self.error(format!("unexpected {}", self.peek()), expected)
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Tok::Punct(q) if *q == p)
    }

    fn is_ident(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.is_punct(p) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, p: &'static str) -> PResult<()> {
        if self.eat_punct(p) {
            Ok(())
        } else {
            self.unexpected(&[p])
        }
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error(format!("expected {what}, found {}", self.peek()), &["identifier"]),
        }
    }

    fn var(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Var(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.unexpected(&["variable"]),
        }
    }

    fn int(&mut self) -> PResult<i64> {
        let neg = self.eat_punct("-");
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(if neg { -n } else { n })
            }
            _ => self.unexpected(&["integer"]),
        }
    }

    fn value(&mut self) -> PResult<Value> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(Value::Sym(s))
            }
            Tok::Int(_) | Tok::Punct("-") => Ok(Value::Int(self.int()?)),
            _ => self.unexpected(&["constant", "integer"]),
        }
    }

    fn term(&mut self) -> PResult<Term> {
        match self.peek() {
            Tok::Var(_) => Ok(Term::Var(self.var()?)),
            _ => Ok(Term::Const(self.value()?)),
        }
    }

    fn terms_in_parens(&mut self) -> PResult<Vec<Term>> {
        let mut out = Vec::new();
        if self.eat_punct("(") {
            loop {
                out.push(self.term()?);
                if self.eat_punct(")") {
                    break;
                }
                self.expect_punct(",")?;
            }
        }
        Ok(out)
    }

    /// `~c(args)` (value `f`), `c(args)` or `c(args)=v`.
    fn atom(&mut self) -> PResult<AtomPattern> {
        let tilde = self.eat_punct("~");
        let span = self.span();
        let symbol = self.ident("an atom")?;
        if RESERVED.contains(&symbol.as_str()) {
            return Err(ParseError {
                span,
                message: format!("`{symbol}` is reserved and cannot name a predicate"),
                expected: Vec::new(),
            });
        }
        let args = self.terms_in_parens()?;
        let value = if tilde {
            Some(Term::Const(Value::f()))
        } else if self.eat_punct("=") {
            Some(self.term()?)
        } else {
            None
        };
        Ok(AtomPattern { symbol, args, value })
    }

    fn ground_atom(&mut self) -> PResult<GroundAtom> {
        let span = self.span();
        let a = self.atom()?;
        a.to_ground().ok_or_else(|| ParseError {
            span,
            message: format!("atom {a} must be ground"),
            expected: Vec::new(),
        })
    }

    /// Unsigned or signed decimal.
    fn number(&mut self) -> PResult<f64> {
        let neg = self.eat_punct("-");
        let x = match self.peek().clone() {
            Tok::Int(n) => n as f64,
            Tok::Float(s) => match s.parse::<f64>() {
                Ok(x) => x,
                Err(_) => return self.error(format!("malformed number {s}"), &[]),
            },
            _ => return self.unexpected(&["number"]),
        };
        self.bump();
        Ok(if neg { -x } else { x })
    }

    /// A number, optionally as a fraction `a/b`.
    fn probability(&mut self) -> PResult<f64> {
        let span = self.span();
        let x = self.number()?;
        if self.eat_punct("/") {
            let d = self.number()?;
            if d == 0.0 {
                return Err(ParseError {
                    span,
                    message: "division by zero in probability".into(),
                    expected: Vec::new(),
                });
            }
            return Ok(x / d);
        }
        Ok(x)
    }

    fn looks_like_weight(&self) -> bool {
        match self.peek() {
            Tok::Int(_) | Tok::Float(_) | Tok::Punct("-") => true,
            Tok::Ident(s) if s == "alpha" => matches!(self.peek_at(1), Tok::Punct(":")),
            Tok::Ident(s) if s == "ln" => {
                if !matches!(self.peek_at(1), Tok::Punct("(")) {
                    return false;
                }
                let mut k = 2;
                while !matches!(self.peek_at(k), Tok::Punct(")") | Tok::Eof) {
                    k += 1;
                }
                matches!(self.peek_at(k + 1), Tok::Punct(":"))
            }
            _ => false,
        }
    }

    /// `alpha`, a signed number or `ln(x)`.
    fn weight(&mut self) -> PResult<Weight> {
        let span = self.span();
        let w = if self.is_ident("alpha") {
            self.bump();
            return Ok(Weight::Hard);
        } else if self.is_ident("ln") {
            self.bump();
            self.expect_punct("(")?;
            let x = self.probability()?;
            self.expect_punct(")")?;
            if x <= 0.0 {
                return Err(ParseError {
                    span,
                    message: format!("ln({x}) is undefined; use a positive argument"),
                    expected: Vec::new(),
                });
            }
            x.ln()
        } else {
            self.number()?
        };
        if !w.is_finite() {
            return Err(ParseError {
                span,
                message: "weights must be finite".into(),
                expected: Vec::new(),
            });
        }
        Ok(Weight::Soft(w))
    }

    // ---- formulas -------------------------------------------------------------

    pub(crate) fn formula(&mut self) -> PResult<Formula<AtomPattern>> {
        let lhs = self.disjunction()?;
        if self.eat_punct("->") {
            let rhs = self.formula()?;
            return Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> PResult<Formula<AtomPattern>> {
        let mut items = vec![self.conjunction()?];
        while self.eat_punct("|") || self.eat_punct(";") {
            items.push(self.conjunction()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Formula::Or(items) })
    }

    fn conjunction(&mut self) -> PResult<Formula<AtomPattern>> {
        let mut items = vec![self.unary()?];
        while self.eat_punct("&") || self.eat_punct(",") {
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Formula::And(items) })
    }

    fn unary(&mut self) -> PResult<Formula<AtomPattern>> {
        if self.is_ident("not") || self.is_punct("~") {
            self.bump();
            return Ok(Formula::Not(Box::new(self.unary()?)));
        }
        if self.eat_punct("(") {
            let f = self.formula()?;
            self.expect_punct(")")?;
            return Ok(f);
        }
        match self.peek() {
            Tok::Hash(h) if h == "true" => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::Hash(h) if h == "false" => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(_) => Ok(Formula::Atom(self.atom()?)),
            _ => self.unexpected(&["atom", "not", "(", "#true", "#false"]),
        }
    }

    // ---- rules ---------------------------------------------------------------

    fn expr_term(&mut self) -> PResult<Expr> {
        if self.eat_punct("(") {
            let e = self.expr()?;
            self.expect_punct(")")?;
            return Ok(e);
        }
        Ok(Expr::Term(self.term()?))
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut e = self.expr_term()?;
        while self.is_ident("mod") {
            self.bump();
            let r = self.expr_term()?;
            e = Expr::Mod(Box::new(e), Box::new(r));
        }
        Ok(e)
    }

    fn builtin(&mut self) -> PResult<Builtin> {
        let lhs = self.expr()?;
        let op = match self.bump() {
            Tok::Punct("=") => CmpOp::Eq,
            Tok::Punct("!=") => CmpOp::Ne,
            Tok::Punct("<") => CmpOp::Lt,
            Tok::Punct("<=") => CmpOp::Le,
            Tok::Punct(">") => CmpOp::Gt,
            Tok::Punct(">=") => CmpOp::Ge,
            _ => {
                self.pos -= 1;
                return self.unexpected(&["=", "!=", "<", "<=", ">", ">="]);
            }
        };
        let rhs = self.expr()?;
        Ok(Builtin { lhs, op, rhs })
    }

    fn starts_builtin(&self) -> bool {
        match self.peek() {
            Tok::Var(_) | Tok::Int(_) | Tok::Punct("-") => true,
            Tok::Ident(s) if s == "not" => false,
            Tok::Ident(_) => {
                let next = self.peek_at(1);
                matches!(next, Tok::Ident(m) if m == "mod") || (is_cmp(next) && !matches!(next, Tok::Punct("=")))
            }
            _ => false,
        }
    }

    fn body_item(&mut self, body: &mut Body<AtomPattern>) -> PResult<()> {
        if self.is_ident("not") {
            self.bump();
            if self.is_ident("not") {
                self.bump();
                let a = self.atom()?;
                body.neg.push(Formula::not(Formula::not(Formula::Atom(a))));
            } else if self.eat_punct("(") {
                let f = self.formula()?;
                self.expect_punct(")")?;
                body.neg.push(Formula::not(f));
            } else {
                let a = self.atom()?;
                body.neg.push(Formula::not(Formula::Atom(a)));
            }
        } else if self.is_punct("(") {
            let span = self.span();
            self.bump();
            let f = self.formula()?;
            self.expect_punct(")")?;
            if !f.is_negative() {
                return Err(ParseError {
                    span,
                    message: format!("parenthesized body formula ({f}) must be negative (every atom under `not`)"),
                    expected: Vec::new(),
                });
            }
            body.neg.push(f);
        } else if self.starts_builtin() {
            body.builtins.push(self.builtin()?);
        } else {
            body.pos.push(self.atom()?);
        }
        Ok(())
    }

    /// Literals separated by `,` up to (not including) `end`.
    fn body(&mut self, end: &str) -> PResult<Body<AtomPattern>> {
        let mut body = Body::default();
        if self.is_punct(end) {
            return Ok(body);
        }
        loop {
            self.body_item(&mut body)?;
            if !self.eat_punct(",") {
                break;
            }
        }
        Ok(body)
    }

    /// `head [:- body].`, `{a} [:- body].` or `:- body.`
    fn rule(&mut self) -> PResult<Rule<AtomPattern>> {
        if self.eat_punct(":-") {
            let body = self.body(".")?;
            self.expect_punct(".")?;
            return Ok(Rule::constraint(body));
        }
        if self.eat_punct("{") {
            let a = self.atom()?;
            self.expect_punct("}")?;
            let body = if self.eat_punct(":-") { self.body(".")? } else { Body::default() };
            self.expect_punct(".")?;
            return Ok(Rule::choice(a, body));
        }
        let mut head = vec![self.atom()?];
        while self.eat_punct(";") {
            head.push(self.atom()?);
        }
        let body = if self.eat_punct(":-") {
            if self.is_punct(".") {
                return self.unexpected(&["body literal"]);
            }
            self.body(".")?
        } else {
            Body::default()
        };
        self.expect_punct(".")?;
        Ok(Rule { head, body })
    }

    // ---- directives ----------------------------------------------------------

    /// Consumes a `#...` directive if one starts here.
    fn directive(&mut self) -> PResult<bool> {
        let Tok::Hash(name) = self.peek().clone() else {
            return Ok(false);
        };
        let span = self.span();
        self.bump();
        match name.as_str() {
            "dialect" => {
                let d = self.ident("a dialect name")?;
                let Some(d) = Dialect::from_name(&d) else {
                    return Err(ParseError {
                        span,
                        message: format!("unknown dialect {d}"),
                        expected: Dialect::ALL.iter().map(|d| d.name().to_string()).collect(),
                    });
                };
                if self.declared.is_some() {
                    return self.error("duplicate #dialect directive", &[]);
                }
                self.declared = Some((d, span));
            }
            "domain" => {
                let d = self.ident("a domain name")?;
                self.expect_punct("=")?;
                let spec = if self.eat_punct("{") {
                    let mut vals = Vec::new();
                    if !self.is_punct("}") {
                        loop {
                            vals.push(self.value()?);
                            if !self.eat_punct(",") {
                                break;
                            }
                        }
                    }
                    self.expect_punct("}")?;
                    DomainSpec::Set(vals)
                } else {
                    let lo = self.int()?;
                    self.expect_punct("..")?;
                    let hi = self.int()?;
                    DomainSpec::Range(lo, hi)
                };
                if self.sig.domains.insert(d.clone(), spec).is_some() {
                    return Err(ParseError {
                        span,
                        message: format!("domain {d} declared twice"),
                        expected: Vec::new(),
                    });
                }
            }
            "var" => {
                let mut vars = vec![self.var()?];
                while self.eat_punct(",") {
                    vars.push(self.var()?);
                }
                self.expect_punct(":")?;
                let d = self.ident("a domain name")?;
                for v in vars {
                    self.sig.vars.insert(v, d.clone());
                }
            }
            "const" => {
                let c = self.ident("a constant name")?;
                let mut args = Vec::new();
                if self.eat_punct("(") {
                    loop {
                        args.push(self.ident("a domain name")?);
                        if self.eat_punct(")") {
                            break;
                        }
                        self.expect_punct(",")?;
                    }
                }
                self.expect_punct(":")?;
                let r = self.ident("`bool` or a domain name")?;
                let range = if r == "bool" { Range::Boolean } else { Range::Domain(r) };
                if self.sig.constants.insert(c.clone(), ConstDecl { args, range }).is_some() {
                    return Err(ParseError {
                        span,
                        message: format!("constant {c} declared twice"),
                        expected: Vec::new(),
                    });
                }
            }
            other => {
                return Err(ParseError {
                    span,
                    message: format!("unknown directive #{other}"),
                    expected: ["#dialect", "#domain", "#var", "#const"].iter().map(|s| s.to_string()).collect(),
                })
            }
        }
        self.expect_punct(".")?;
        Ok(true)
    }

    // ---- dialects -----------------------------------------------------------

    fn lpmln(&mut self) -> PResult<Vec<WeightedRule<AtomPattern>>> {
        let mut rules = Vec::new();
        while !self.at_eof() {
            if self.directive()? {
                continue;
            }
            let weight = if self.looks_like_weight() {
                let w = self.weight()?;
                self.expect_punct(":")?;
                w
            } else {
                Weight::Hard
            };
            rules.push(WeightedRule::new(weight, self.rule()?));
        }
        Ok(rules)
    }

    fn weak(&mut self) -> PResult<(Vec<Rule<AtomPattern>>, Vec<WeakConstraint>)> {
        let (mut rules, mut weak) = (Vec::new(), Vec::new());
        while !self.at_eof() {
            if self.directive()? {
                continue;
            }
            if self.eat_punct(":~") {
                let body = self.body(".")?;
                self.expect_punct(".")?;
                self.expect_punct("[")?;
                let span = self.span();
                let w = self.int()?;
                if w <= 0 {
                    return Err(ParseError {
                        span,
                        message: format!("weak constraint weight {w} must be a positive integer"),
                        expected: Vec::new(),
                    });
                }
                self.expect_punct("]")?;
                weak.push(WeakConstraint { body, weight: w as u64 });
            } else {
                rules.push(self.rule()?);
            }
        }
        Ok((rules, weak))
    }

    fn mln(&mut self) -> PResult<Vec<(Weight, Formula<AtomPattern>)>> {
        let mut out = Vec::new();
        while !self.at_eof() {
            if self.directive()? {
                continue;
            }
            let w = self.weight()?;
            self.expect_punct(":")?;
            let f = self.formula()?;
            self.expect_punct(".")?;
            out.push((w, f));
        }
        Ok(out)
    }

    fn check_prob(&self, span: SourceSpan, p: f64) -> PResult<f64> {
        if (0.0..=1.0).contains(&p) {
            Ok(p)
        } else {
            Err(ParseError {
                span,
                message: format!("probability {p} is outside [0,1]"),
                expected: Vec::new(),
            })
        }
    }

    fn problog(&mut self) -> PResult<(Vec<ProbFact>, Vec<Rule<AtomPattern>>)> {
        let (mut facts, mut rules) = (Vec::new(), Vec::new());
        while !self.at_eof() {
            if self.directive()? {
                continue;
            }
            if matches!(self.peek(), Tok::Int(_) | Tok::Float(_)) {
                let span = self.span();
                let p = self.probability()?;
                let prob = self.check_prob(span, p)?;
                self.expect_punct("::")?;
                let atom = self.ground_atom()?;
                self.expect_punct(".")?;
                facts.push(ProbFact { atom, prob });
            } else {
                rules.push(self.rule()?);
            }
        }
        Ok((facts, rules))
    }

    fn mvpp_decl(&mut self) -> PResult<MvppDecl> {
        let start = self.span();
        let mut decl: Option<MvppDecl> = None;
        loop {
            let span = self.span();
            let p = self.probability()?;
            let p = self.check_prob(span.clone(), p)?;
            self.expect_punct(":")?;
            let a = self.atom()?;
            let v = match a.value {
                None => Value::t(),
                Some(Term::Const(v)) => v,
                Some(Term::Var(x)) => {
                    return Err(ParseError {
                        span,
                        message: format!("declared value {x} must be a constant"),
                        expected: Vec::new(),
                    })
                }
            };
            match &mut decl {
                None => {
                    decl = Some(MvppDecl {
                        symbol: a.symbol,
                        args: a.args,
                        choices: vec![(p, v)],
                    })
                }
                Some(d) if d.symbol == a.symbol && d.args == a.args => d.choices.push((p, v)),
                Some(d) => {
                    return Err(ParseError {
                        span,
                        message: format!("declaration mixes constants {} and {}", d.symbol, a.symbol),
                        expected: Vec::new(),
                    })
                }
            }
            if !self.eat_punct("|") {
                break;
            }
        }
        self.expect_punct(".")?;
        let decl = decl.expect("at least one choice");
        let total: f64 = decl.choices.iter().map(|c| c.0).sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(ParseError {
                span: start,
                message: format!("probabilities of {} sum to {total}, not 1", decl.symbol),
                expected: Vec::new(),
            });
        }
        Ok(decl)
    }

    fn mvpp(&mut self) -> PResult<(Vec<MvppDecl>, Vec<Rule<AtomPattern>>)> {
        let (mut decls, mut rules) = (Vec::new(), Vec::new());
        while !self.at_eof() {
            if self.directive()? {
                continue;
            }
            if matches!(self.peek(), Tok::Int(_) | Tok::Float(_)) {
                decls.push(self.mvpp_decl()?);
            } else {
                rules.push(self.rule()?);
            }
        }
        Ok((decls, rules))
    }

    fn rule_id(&mut self) -> PResult<(String, Vec<Term>)> {
        self.expect_punct("[")?;
        let name = self.ident("a rule identifier")?;
        let args = self.terms_in_parens()?;
        self.expect_punct("]")?;
        Ok((name, args))
    }

    fn plog_keyword(&self) -> Option<&'static str> {
        let Tok::Ident(s) = self.peek() else {
            return None;
        };
        if !matches!(self.peek_at(1), Tok::Punct("(")) {
            return None;
        }
        PLOG_RESERVED.iter().copied().find(|k| k == s)
    }

    fn plog(&mut self) -> PResult<PlogProgram> {
        let mut p = PlogProgram::default();
        let mut pending: Vec<PendingPr> = Vec::new();
        while !self.at_eof() {
            if self.directive()? {
                continue;
            }
            let id = if self.is_punct("[") { Some(self.rule_id()?) } else { None };
            match self.plog_keyword() {
                Some("random") => {
                    self.bump();
                    self.expect_punct("(")?;
                    let span = self.span();
                    let atom = self.atom()?;
                    if atom.value.is_some() {
                        return Err(ParseError {
                            span,
                            message: format!("random({atom}) must name a constant without a value"),
                            expected: Vec::new(),
                        });
                    }
                    self.expect_punct(")")?;
                    let body = if self.eat_punct(":-") { self.body(".")? } else { Body::default() };
                    self.expect_punct(".")?;
                    pending.push((id, atom, body));
                }
                Some("pr") => {
                    self.bump();
                    self.expect_punct("(")?;
                    let atom = self.atom()?;
                    let body = if self.eat_punct("|") { self.body(")")? } else { Body::default() };
                    self.expect_punct(")")?;
                    self.expect_punct("=")?;
                    let span = self.span();
                    let prob = self.probability()?;
                    let prob = self.check_prob(span, prob)?;
                    self.expect_punct(".")?;
                    p.pr.push(PrAtom {
                        rule: id,
                        atom,
                        body,
                        prob,
                    });
                }
                Some(k @ ("obs" | "do")) if id.is_none() => {
                    self.bump();
                    self.expect_punct("(")?;
                    let a = self.ground_atom()?;
                    self.expect_punct(")")?;
                    self.expect_punct(".")?;
                    if k == "obs" {
                        p.obs.push(a);
                    } else {
                        p.act.push(a);
                    }
                }
                _ if id.is_some() => return self.unexpected(&["random", "pr"]),
                _ => p.rules.push(self.rule()?),
            }
        }
        // Unnamed selection rules get `r<k>` with the rule's variables as arguments.
        let mut used: Vec<String> = pending.iter().filter_map(|(id, _, _)| id.as_ref().map(|i| i.0.clone())).collect();
        let mut k = 0;
        for (id, atom, body) in pending {
            let (id, id_args) = match id {
                Some(i) => i,
                None => {
                    let name = loop {
                        k += 1;
                        let n = format!("r{k}");
                        if !used.contains(&n) {
                            break n;
                        }
                    };
                    used.push(name.clone());
                    let mut vars: Vec<String> = Vec::new();
                    let mut push = |v: &str| {
                        if !vars.iter().any(|o| o == v) {
                            vars.push(v.to_string());
                        }
                    };
                    atom.vars().for_each(&mut push);
                    body.for_each_atom(&mut |a: &AtomPattern| a.vars().for_each(&mut push));
                    for b in &body.builtins {
                        b.vars().iter().for_each(|v| push(v));
                    }
                    (name, vars.into_iter().map(Term::Var).collect())
                }
            };
            p.random.push(RandomRule {
                id,
                id_args,
                atom,
                body,
            });
        }
        Ok(p)
    }

    pub(crate) fn source(&mut self, dialect: Dialect) -> PResult<Source> {
        let src = match dialect {
            Dialect::Lpmln => {
                let rules = self.lpmln()?;
                Source::Lpmln(Program::new(self.sig.clone(), rules))
            }
            Dialect::AspWeak => {
                let (rules, weak) = self.weak()?;
                Source::AspWeak(WeakProgram {
                    signature: self.sig.clone(),
                    rules,
                    weak,
                })
            }
            Dialect::Mln => {
                let formulas = self.mln()?;
                Source::Mln(MlnProgram {
                    signature: self.sig.clone(),
                    formulas,
                })
            }
            Dialect::ProbLog => {
                let (facts, rules) = self.problog()?;
                Source::ProbLog(ProbLogProgram {
                    signature: self.sig.clone(),
                    facts,
                    rules,
                })
            }
            Dialect::Mvpp => {
                let (decls, rules) = self.mvpp()?;
                Source::Mvpp(MvppProgram {
                    signature: self.sig.clone(),
                    decls,
                    rules,
                })
            }
            Dialect::Plog => {
                let mut p = self.plog()?;
                p.signature = self.sig.clone();
                Source::Plog(p)
            }
        };
        Ok(src)
    }

    /// A whole query: one formula, optionally ending with `.`.
    pub(crate) fn query(&mut self) -> PResult<Formula<AtomPattern>> {
        let f = self.formula()?;
        self.eat_punct(".");
        if !self.at_eof() {
            return self.unexpected(&["end of query"]);
        }
        Ok(f)
    }
}
