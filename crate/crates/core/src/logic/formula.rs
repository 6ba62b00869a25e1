use std::fmt;

/// A classical propositional formula over atoms of type `A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula<A> {
    True,
    False,
    Atom(A),
    Not(Box<Formula<A>>),
    And(Vec<Formula<A>>),
    Or(Vec<Formula<A>>),
    Implies(Box<Formula<A>>, Box<Formula<A>>),
}

impl<A> Formula<A> {
    pub fn atom(a: A) -> Self {
        Formula::Atom(a)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula<A>) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn implies(lhs: Formula<A>, rhs: Formula<A>) -> Self {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    /// Conjunction that collapses the empty and singleton cases.
    pub fn conj(mut items: Vec<Formula<A>>) -> Self {
        match items.len() {
            0 => Formula::True,
            1 => items.pop().unwrap(),
            _ => Formula::And(items),
        }
    }

    /// Disjunction that collapses the empty and singleton cases.
    pub fn disj(mut items: Vec<Formula<A>>) -> Self {
        match items.len() {
            0 => Formula::False,
            1 => items.pop().unwrap(),
            _ => Formula::Or(items),
        }
    }

    /// Classical truth value under `truth`.
    pub fn eval<F: Fn(&A) -> bool + ?Sized>(&self, truth: &F) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => truth(a),
            Formula::Not(f) => !f.eval(truth),
            Formula::And(fs) => fs.iter().all(|f| f.eval(truth)),
            Formula::Or(fs) => fs.iter().any(|f| f.eval(truth)),
            Formula::Implies(l, r) => !l.eval(truth) || r.eval(truth),
        }
    }

    /// Kleene three-valued evaluation; `None` means undetermined.
    pub fn eval3<F: Fn(&A) -> Option<bool> + ?Sized>(&self, truth: &F) -> Option<bool> {
        match self {
            Formula::True => Some(true),
            Formula::False => Some(false),
            Formula::Atom(a) => truth(a),
            Formula::Not(f) => f.eval3(truth).map(|b| !b),
            Formula::And(fs) => {
                let mut unknown = false;
                for f in fs {
                    match f.eval3(truth) {
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
            Formula::Or(fs) => {
                let mut unknown = false;
                for f in fs {
                    match f.eval3(truth) {
                        Some(true) => return Some(true),
                        None => unknown = true,
                        Some(false) => {}
                    }
                }
                if unknown {
                    None
                } else {
                    Some(false)
                }
            }
            Formula::Implies(l, r) => match (l.eval3(truth), r.eval3(truth)) {
                (Some(false), _) | (_, Some(true)) => Some(true),
                (Some(true), Some(false)) => Some(false),
                _ => None,
            },
        }
    }

    /// True iff every atom occurrence lies in the scope of at least one negation.
    pub fn is_negative(&self) -> bool {
        fn go<A>(f: &Formula<A>, negated: bool) -> bool {
            match f {
                Formula::True | Formula::False => true,
                Formula::Atom(_) => negated,
                Formula::Not(g) => go(g, true),
                Formula::And(fs) | Formula::Or(fs) => fs.iter().all(|g| go(g, negated)),
                Formula::Implies(l, r) => go(l, negated) && go(r, negated),
            }
        }
        go(self, false)
    }

    pub fn for_each_atom<'a>(&'a self, f: &mut impl FnMut(&'a A)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => f(a),
            Formula::Not(g) => g.for_each_atom(f),
            Formula::And(gs) | Formula::Or(gs) => gs.iter().for_each(|g| g.for_each_atom(f)),
            Formula::Implies(l, r) => {
                l.for_each_atom(f);
                r.for_each_atom(f);
            }
        }
    }

    pub fn atoms(&self) -> Vec<&A> {
        let mut out = Vec::new();
        self.for_each_atom(&mut |a| out.push(a));
        out
    }

    pub fn map<B>(&self, f: &mut impl FnMut(&A) -> B) -> Formula<B> {
        match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => Formula::Atom(f(a)),
            Formula::Not(g) => Formula::not(g.map(f)),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| g.map(f)).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| g.map(f)).collect()),
            Formula::Implies(l, r) => Formula::implies(l.map(f), r.map(f)),
        }
    }

    pub fn try_map<B, E>(&self, f: &mut impl FnMut(&A) -> Result<B, E>) -> Result<Formula<B>, E> {
        Ok(match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(a) => Formula::Atom(f(a)?),
            Formula::Not(g) => Formula::not(g.try_map(f)?),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| g.try_map(f)).collect::<Result<_, _>>()?),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| g.try_map(f)).collect::<Result<_, _>>()?),
            Formula::Implies(l, r) => Formula::implies(l.try_map(f)?, r.try_map(f)?),
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Implies(..) => 1,
            Formula::Or(_) => 2,
            Formula::And(_) => 3,
            _ => 4,
        }
    }
}

/// Prints in the query syntax: `not`, `&`, `|`, `->`, `#true`, `#false`.
/// Nested connectives are parenthesized so that parsing reproduces the tree.
impl<A: fmt::Display> fmt::Display for Formula<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child<A: fmt::Display>(f: &mut fmt::Formatter<'_>, g: &Formula<A>, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({g})")
            } else {
                write!(f, "{g}")
            }
        }
        match self {
            Formula::True => f.write_str("#true"),
            Formula::False => f.write_str("#false"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(g) => {
                f.write_str("not ")?;
                child(f, g, g.precedence() < 4)
            }
            Formula::And(gs) | Formula::Or(gs) => {
                let sep = if matches!(self, Formula::And(_)) { " & " } else { " | " };
                if gs.len() < 2 {
                    // Degenerate n-ary nodes have no infix form; keep them unambiguous.
                    let unit = if matches!(self, Formula::And(_)) { "#true" } else { "#false" };
                    f.write_str("(")?;
                    f.write_str(unit)?;
                    for g in gs {
                        f.write_str(sep)?;
                        child(f, g, g.precedence() < 4)?;
                    }
                    return f.write_str(")");
                }
                for (i, g) in gs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    child(f, g, g.precedence() < 4)?;
                }
                Ok(())
            }
            Formula::Implies(l, r) => {
                child(f, l, l.precedence() < 4)?;
                f.write_str(" -> ")?;
                child(f, r, r.precedence() < 4)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type F = Formula<u8>;

    fn a(i: u8) -> F {
        Formula::Atom(i)
    }

    #[test]
    fn negativity_examples() {
        // ¬a ∧ ¬¬b
        let f = F::And(vec![F::not(a(0)), F::not(F::not(a(1)))]);
        assert!(f.is_negative());
        assert!(!a(0).is_negative());
        assert!(F::not(F::Or(vec![a(0), a(1)])).is_negative());
        assert!(F::True.is_negative());
        assert!(!F::implies(F::not(a(0)), a(1)).is_negative());
    }

    #[test]
    fn eval_examples() {
        let truth = |x: &u8| *x == 0;
        assert!(F::Or(vec![a(0), F::not(a(0))]).eval(&truth));
        assert!(!F::not(F::not(a(1))).eval(&truth));
        assert!(F::implies(a(1), a(0)).eval(&truth));
    }

    #[test]
    fn eval3_is_kleene() {
        let partial = |x: &u8| match x {
            0 => Some(true),
            1 => Some(false),
            _ => None,
        };
        assert_eq!(F::And(vec![a(1), a(2)]).eval3(&partial), Some(false));
        assert_eq!(F::And(vec![a(0), a(2)]).eval3(&partial), None);
        assert_eq!(F::Or(vec![a(0), a(2)]).eval3(&partial), Some(true));
        assert_eq!(F::implies(a(2), a(0)).eval3(&partial), Some(true));
        assert_eq!(F::implies(a(0), a(2)).eval3(&partial), None);
    }

    fn arb_formula() -> impl Strategy<Value = F> {
        let leaf = prop_oneof![Just(F::True), Just(F::False), (0u8..4).prop_map(F::Atom)];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                inner.clone().prop_map(F::not),
                prop::collection::vec(inner.clone(), 2..4).prop_map(F::And),
                prop::collection::vec(inner.clone(), 2..4).prop_map(F::Or),
                (inner.clone(), inner).prop_map(|(l, r)| F::implies(l, r)),
            ]
        })
    }

    /// Truth-table oracle written against the connective definitions directly.
    fn table(f: &F, mask: u8) -> bool {
        match f {
            F::True => true,
            F::False => false,
            F::Atom(i) => mask & (1 << i) != 0,
            F::Not(g) => !table(g, mask),
            F::And(gs) => gs.iter().fold(true, |acc, g| acc & table(g, mask)),
            F::Or(gs) => gs.iter().fold(false, |acc, g| acc | table(g, mask)),
            F::Implies(l, r) => !(table(l, mask) & !table(r, mask)),
        }
    }

    proptest! {
        #[test]
        fn eval_matches_truth_table(f in arb_formula()) {
            for mask in 0u8..16 {
                prop_assert_eq!(f.eval(&|x: &u8| mask & (1 << x) != 0), table(&f, mask));
            }
        }

        #[test]
        fn negativity_closed_under_connectives(f in arb_formula(), g in arb_formula()) {
            let nf = F::not(f.clone());
            let ng = F::not(g);
            prop_assert!(nf.is_negative());
            prop_assert!(F::And(vec![nf.clone(), ng.clone()]).is_negative());
            prop_assert!(F::Or(vec![nf.clone(), ng]).is_negative());
            prop_assert!(F::not(nf).is_negative());
            if f.is_negative() {
                prop_assert!(F::And(vec![f.clone(), F::not(a(0))]).is_negative());
            }
        }

        #[test]
        fn eval3_agrees_with_eval_when_total(f in arb_formula(), mask in 0u8..16) {
            let total = |x: &u8| Some(mask & (1 << x) != 0);
            prop_assert_eq!(f.eval3(&total), Some(f.eval(&|x: &u8| mask & (1 << x) != 0)));
        }
    }
}
