//! ProbLog: independent probabilistic facts `p :: a` plus normal rules.

use crate::error::{Error, Result, ValidationError};
use crate::ground::{ground_program, GroundProgram};
use crate::infer::Distribution;
use crate::limits::Limits;
use crate::logic::{AtomId, AtomPattern, Body, GroundAtom, Program, Rule, Signature, SymbolicWeight, Term, Weight, WeightedRule};
use crate::stable::hard_stable_models;

#[derive(Clone, Debug, PartialEq)]
pub struct ProbFact {
    pub atom: GroundAtom,
    pub prob: f64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ProbLogProgram {
    pub signature: Signature,
    pub facts: Vec<ProbFact>,
    pub rules: Vec<Rule<AtomPattern>>,
}

fn may_match(pattern: &AtomPattern, atom: &GroundAtom) -> bool {
    pattern.symbol == atom.symbol
        && pattern.args.len() == atom.args.len()
        && pattern.args.iter().zip(&atom.args).all(|(t, v)| match t {
            Term::Var(_) => true,
            Term::Const(c) => c == v,
        })
}

impl ProbLogProgram {
    pub fn validate(&self) -> std::result::Result<(), ValidationError> {
        self.signature.validate()?;
        for (i, f) in self.facts.iter().enumerate() {
            if !(0.0..=1.0).contains(&f.prob) {
                return Err(ValidationError::new(format!("probability {} of {} is outside [0,1]", f.prob, f.atom)));
            }
            if self.facts[..i].iter().any(|g| g.atom == f.atom) {
                return Err(ValidationError::new(format!("probabilistic atom {} is declared twice", f.atom)));
            }
        }
        for r in &self.rules {
            if r.head.len() != 1 {
                return Err(ValidationError::new(format!("ProbLog rules need exactly one head atom: {r}")));
            }
            if let Some(f) = self.facts.iter().find(|f| may_match(&r.head[0], &f.atom)) {
                return Err(ValidationError::new(format!(
                    "probabilistic atom {} may not occur in a rule head: {r}",
                    f.atom
                )));
            }
        }
        Ok(())
    }
}

/// `ln p : a` and `ln(1-p) : ← a` for `0 < p < 1`; `α : a` for `p = 1`; `α : ← a` for `p = 0`;
/// every rule hard.
pub fn problog_to_lpmln(p: &ProbLogProgram) -> Program {
    let mut rules = Vec::new();
    for f in &p.facts {
        let a = AtomPattern::from(&f.atom);
        let fact = Rule::fact(a.clone());
        let deny = Rule::constraint(Body::new(vec![a], vec![]));
        if f.prob >= 1.0 {
            rules.push(WeightedRule::hard(fact));
        } else if f.prob <= 0.0 {
            rules.push(WeightedRule::hard(deny));
        } else {
            rules.push(WeightedRule::soft(f.prob.ln(), fact));
            rules.push(WeightedRule::soft((1.0 - f.prob).ln(), deny));
        }
    }
    rules.extend(p.rules.iter().cloned().map(WeightedRule::hard));
    Program::new(p.signature.clone(), rules)
}

/// The distribution semantics: each total choice `TC` has probability
/// `∏_{a ∈ TC} p(a) · ∏_{a ∉ TC} (1 − p(a))` and selects the unique stable model of the
/// rules with `TC` as facts and the other probabilistic atoms denied.
pub fn problog_distribution(p: &ProbLogProgram, limits: &Limits) -> Result<Distribution> {
    p.validate()?;
    let base = Program::new(p.signature.clone(), p.rules.iter().cloned().map(WeightedRule::hard).collect());
    let mut g: GroundProgram = ground_program(&base)?;
    g.extend_universe(p.facts.iter().map(|f| f.atom.clone()));
    let ids: Vec<AtomId> = p
        .facts
        .iter()
        .map(|f| g.universe.id(&g.signature.normalize(f.atom.clone())).expect("interned above"))
        .collect();
    let k = ids.len();
    if k > 24 {
        return Err(Error::UniverseExplosion { atoms: k, cap: 24 });
    }
    let n = g.atom_count();
    let mut weights = Vec::new();
    for choice in 0..(1u64 << k) {
        let mut rules = g.rules.clone();
        let mut prob = 1.0;
        let mut shown = Vec::new();
        for (j, &a) in ids.iter().enumerate() {
            let chosen = choice & (1 << j) != 0;
            let pr = p.facts[j].prob;
            if chosen {
                prob *= pr;
                shown.push(p.facts[j].atom.to_string());
                rules.push(WeightedRule::new(Weight::Hard, Rule::fact(a)));
            } else {
                prob *= 1.0 - pr;
                rules.push(WeightedRule::new(Weight::Hard, Rule::constraint(Body::new(vec![a], vec![]))));
            }
        }
        let models = hard_stable_models(n, &rules, limits)?;
        if models.len() != 1 {
            return Err(Error::NotWellDefined(format!("{{{}}}", shown.join(", ")), models.len()));
        }
        if prob > 0.0 {
            weights.push((models.into_iter().next().unwrap(), SymbolicWeight::new(0, prob.ln())));
        }
    }
    weights.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Distribution::from_weights(g.universe.clone(), weights))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::ground_program;
    use crate::infer::{distribution, max_difference};
    use crate::logic::Formula;

    fn pat(s: &str) -> AtomPattern {
        AtomPattern::from(GroundAtom::prop(s))
    }

    fn two_facts() -> ProbLogProgram {
        ProbLogProgram {
            signature: Signature::default(),
            facts: vec![
                ProbFact { atom: GroundAtom::prop("p"), prob: 0.6 },
                ProbFact { atom: GroundAtom::prop("q"), prob: 0.3 },
            ],
            rules: vec![
                Rule::new(vec![pat("r")], vec![pat("p")], vec![]),
                Rule::new(vec![pat("r")], vec![pat("q")], vec![]),
            ],
        }
    }

    #[test]
    fn two_fact_example_both_pipelines() {
        let lim = Limits::default();
        let p = two_facts();
        let direct = problog_distribution(&p, &lim).unwrap();
        let r = Formula::Atom(GroundAtom::prop("r"));
        assert!((direct.query(&r).unwrap() - 0.72).abs() < 1e-12);
        let lp = distribution(&ground_program(&problog_to_lpmln(&p)).unwrap(), &lim).unwrap();
        assert!((lp.query(&r).unwrap() - 0.72).abs() < 1e-12);
        assert!(max_difference(&direct.to_map(), &lp.to_map()) < 1e-12);
    }

    #[test]
    fn clauses_for_extreme_probabilities() {
        let p = ProbLogProgram {
            facts: vec![
                ProbFact { atom: GroundAtom::prop("a"), prob: 1.0 },
                ProbFact { atom: GroundAtom::prop("b"), prob: 0.0 },
            ],
            ..Default::default()
        };
        let t = problog_to_lpmln(&p);
        assert_eq!(t.rules.len(), 2);
        assert!(t.rules.iter().all(|r| r.weight.is_hard()));
        assert!(t.rules[1].rule.is_constraint());
    }

    #[test]
    fn positive_loop_through_negation_is_not_well_defined() {
        // a :- not b. b :- not a. gives two stable models for the empty total choice
        let p = ProbLogProgram {
            facts: vec![ProbFact { atom: GroundAtom::prop("c"), prob: 0.5 }],
            rules: vec![
                Rule::new(vec![pat("a")], vec![], vec![Formula::not(Formula::Atom(pat("b")))]),
                Rule::new(vec![pat("b")], vec![], vec![Formula::not(Formula::Atom(pat("a")))]),
            ],
            ..Default::default()
        };
        assert!(matches!(problog_distribution(&p, &Limits::default()), Err(Error::NotWellDefined(_, 2))));
    }
}
