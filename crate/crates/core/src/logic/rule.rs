use std::fmt;

use super::formula::Formula;
use super::program::Builtin;
use super::weight::Weight;

/// Rule body `B ∧ N`: positive atoms, negative formula items (read as a
/// conjunction) and, before grounding, builtin comparisons.
#[derive(Clone, Debug, PartialEq)]
pub struct Body<A> {
    pub pos: Vec<A>,
    pub neg: Vec<Formula<A>>,
    pub builtins: Vec<Builtin>,
}

impl<A> Default for Body<A> {
    fn default() -> Self {
        Body {
            pos: Vec::new(),
            neg: Vec::new(),
            builtins: Vec::new(),
        }
    }
}

impl<A: Clone> Body<A> {
    pub fn new(pos: Vec<A>, neg: Vec<Formula<A>>) -> Self {
        Body {
            pos,
            neg,
            builtins: Vec::new(),
        }
    }

    /// `N` as a single formula.
    pub fn neg_formula(&self) -> Formula<A> {
        Formula::conj(self.neg.clone())
    }

    /// `B ∧ N` as a single formula.
    pub fn formula(&self) -> Formula<A> {
        let mut items: Vec<Formula<A>> = self.pos.iter().cloned().map(Formula::Atom).collect();
        items.extend(self.neg.iter().cloned());
        Formula::conj(items)
    }

    pub fn is_empty(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty() && self.builtins.is_empty()
    }

    pub fn map<B>(&self, f: &mut impl FnMut(&A) -> B) -> Body<B> {
        Body {
            pos: self.pos.iter().map(&mut *f).collect(),
            neg: self.neg.iter().map(|n| n.map(f)).collect(),
            builtins: self.builtins.clone(),
        }
    }

    pub fn try_map<B, E>(&self, f: &mut impl FnMut(&A) -> Result<B, E>) -> Result<Body<B>, E> {
        Ok(Body {
            pos: self.pos.iter().map(&mut *f).collect::<Result<_, _>>()?,
            neg: self.neg.iter().map(|n| n.try_map(f)).collect::<Result<_, _>>()?,
            builtins: self.builtins.clone(),
        })
    }
}

impl<A> Body<A> {
    pub fn is_true<F: Fn(&A) -> bool + ?Sized>(&self, truth: &F) -> bool {
        self.pos.iter().all(truth) && self.neg.iter().all(|n| n.eval(truth))
    }

    pub fn eval3<F: Fn(&A) -> Option<bool> + ?Sized>(&self, truth: &F) -> Option<bool> {
        let mut unknown = false;
        for p in &self.pos {
            match truth(p) {
                Some(false) => return Some(false),
                None => unknown = true,
                Some(true) => {}
            }
        }
        for n in &self.neg {
            match n.eval3(truth) {
                Some(false) => return Some(false),
                None => unknown = true,
                Some(true) => {}
            }
        }
        if unknown {
            None
        } else {
            Some(true)
        }
    }

    pub fn for_each_atom<'a>(&'a self, f: &mut impl FnMut(&'a A)) {
        self.pos.iter().for_each(&mut *f);
        self.neg.iter().for_each(|n| n.for_each_atom(f));
    }
}

/// Rule `A ← B ∧ N` with a disjunctive head `A` (empty head is `⊥`).
#[derive(Clone, Debug, PartialEq)]
pub struct Rule<A> {
    pub head: Vec<A>,
    pub body: Body<A>,
}

impl<A: Clone> Rule<A> {
    pub fn new(head: Vec<A>, pos: Vec<A>, neg: Vec<Formula<A>>) -> Self {
        Rule {
            head,
            body: Body::new(pos, neg),
        }
    }

    pub fn fact(atom: A) -> Self {
        Rule::new(vec![atom], Vec::new(), Vec::new())
    }

    pub fn constraint(body: Body<A>) -> Self {
        Rule {
            head: Vec::new(),
            body,
        }
    }

    /// Choice rule `{a} ← Body`, i.e. `a ← Body ∧ ¬¬a`.
    pub fn choice(atom: A, mut body: Body<A>) -> Self {
        body.neg.push(Formula::not(Formula::not(Formula::Atom(atom.clone()))));
        Rule {
            head: vec![atom],
            body,
        }
    }

    /// The rule read as the implication `B ∧ N → A`.
    pub fn formula(&self) -> Formula<A> {
        Formula::implies(
            self.body.formula(),
            Formula::disj(self.head.iter().cloned().map(Formula::Atom).collect()),
        )
    }

    pub fn map<B>(&self, f: &mut impl FnMut(&A) -> B) -> Rule<B> {
        Rule {
            head: self.head.iter().map(&mut *f).collect(),
            body: self.body.map(f),
        }
    }

    pub fn try_map<B, E>(&self, f: &mut impl FnMut(&A) -> Result<B, E>) -> Result<Rule<B>, E> {
        Ok(Rule {
            head: self.head.iter().map(&mut *f).collect::<Result<_, _>>()?,
            body: self.body.try_map(f)?,
        })
    }
}

impl<A: PartialEq> Rule<A> {
    /// The head atom of a desugared choice rule, if this is one.
    pub fn choice_atom(&self) -> Option<&A> {
        if self.head.len() != 1 {
            return None;
        }
        match self.body.neg.last() {
            Some(Formula::Not(inner)) => match inner.as_ref() {
                Formula::Not(a) => match a.as_ref() {
                    Formula::Atom(x) if *x == self.head[0] => Some(x),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }
}

impl<A> Rule<A> {
    /// Classical satisfaction of `B ∧ N → A`.
    pub fn satisfied_by<F: Fn(&A) -> bool + ?Sized>(&self, truth: &F) -> bool {
        !self.body.is_true(truth) || self.head.iter().any(truth)
    }

    pub fn eval3<F: Fn(&A) -> Option<bool> + ?Sized>(&self, truth: &F) -> Option<bool> {
        let mut head = Some(false);
        for h in &self.head {
            match truth(h) {
                Some(true) => return Some(true),
                None => head = None,
                Some(false) => {}
            }
        }
        match (self.body.eval3(truth), head) {
            (Some(false), _) => Some(true),
            (Some(true), Some(false)) => Some(false),
            _ => None,
        }
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_empty()
    }

    /// Every negative item is a negative formula.
    pub fn is_well_formed(&self) -> bool {
        self.body.neg.iter().all(Formula::is_negative)
    }

    pub fn for_each_atom<'a>(&'a self, f: &mut impl FnMut(&'a A)) {
        self.head.iter().for_each(&mut *f);
        self.body.for_each_atom(f);
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedRule<A> {
    pub weight: Weight,
    pub rule: Rule<A>,
}

impl<A> WeightedRule<A> {
    pub fn new(weight: Weight, rule: Rule<A>) -> Self {
        WeightedRule { weight, rule }
    }

    pub fn hard(rule: Rule<A>) -> Self {
        WeightedRule::new(Weight::Hard, rule)
    }

    pub fn soft(w: f64, rule: Rule<A>) -> Self {
        WeightedRule::new(Weight::Soft(w), rule)
    }
}

impl<A: fmt::Display> fmt::Display for Body<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| {
            if first {
                first = false;
                Ok(())
            } else {
                f.write_str(", ")
            }
        };
        for p in &self.pos {
            sep(f)?;
            write!(f, "{p}")?;
        }
        for b in &self.builtins {
            sep(f)?;
            write!(f, "{b}")?;
        }
        for n in &self.neg {
            sep(f)?;
            write_neg_item(f, n)?;
        }
        Ok(())
    }
}

fn write_neg_item<A: fmt::Display>(f: &mut fmt::Formatter<'_>, item: &Formula<A>) -> fmt::Result {
    match item {
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Atom(a) => write!(f, "not {a}"),
            Formula::Not(x) if matches!(x.as_ref(), Formula::Atom(_)) => write!(f, "not not {x}"),
            other => write!(f, "not ({other})"),
        },
        other => write!(f, "({other})"),
    }
}

impl<A: fmt::Display + PartialEq + Clone> fmt::Display for Rule<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(atom) = self.choice_atom() {
            write!(f, "{{{atom}}}")?;
            let mut rest = self.body.clone();
            rest.neg.pop();
            if !rest.is_empty() {
                write!(f, " :- {rest}")?;
            }
            return f.write_str(".");
        }
        for (i, h) in self.head.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{h}")?;
        }
        if self.head.is_empty() {
            write!(f, ":- {}", self.body)?;
        } else if !self.body.is_empty() {
            write!(f, " :- {}", self.body)?;
        }
        f.write_str(".")
    }
}

impl<A: fmt::Display + PartialEq + Clone> fmt::Display for WeightedRule<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {}", self.weight, self.rule)
    }
}
