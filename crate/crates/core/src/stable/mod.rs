//! Deterministic stable-model machinery.

pub mod exhaustive;
pub mod formulas;
pub mod graph;
pub mod search;

pub use formulas::{completion_formulas, external_support, loop_formula};
pub use graph::{is_tight, loops, positive_dependency_graph, LoopMode, PosDepGraph};
pub use search::{search, Semantics, Solution, TierPolicy};

use crate::error::{Error, Result};
use crate::ground::GroundProgram;
use crate::limits::Limits;
use crate::logic::{AtomId, AtomSet, Rule, WeightedRule};

/// Positive rule `A ← B` of a reduct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRule {
    pub head: Vec<AtomId>,
    pub body: Vec<AtomId>,
}

/// `Π^I`: `A ← B` for every rule whose negative part `N` holds in `I`.
pub fn reduct(rules: &[Rule<AtomId>], i: &AtomSet) -> Vec<PositiveRule> {
    rules
        .iter()
        .filter(|r| r.body.neg.iter().all(|n| n.eval(&|a: &AtomId| i.contains(*a))))
        .map(|r| PositiveRule {
            head: r.head.clone(),
            body: r.body.pos.clone(),
        })
        .collect()
}

fn positive_satisfied(rule: &PositiveRule, i: &AtomSet) -> bool {
    !rule.body.iter().all(|a| i.contains(*a)) || rule.head.iter().any(|a| i.contains(*a))
}

/// Least model of the rules whose head has at most one atom; rules with larger heads are ignored.
fn horn_least_model(rules: &[PositiveRule], capacity: usize) -> AtomSet {
    let mut m = AtomSet::new(capacity);
    loop {
        let mut changed = false;
        for r in rules {
            if r.head.len() == 1 && !m.contains(r.head[0]) && r.body.iter().all(|a| m.contains(*a)) {
                m.insert(r.head[0]);
                changed = true;
            }
        }
        if !changed {
            return m;
        }
    }
}

/// True iff `I` satisfies the positive program and no proper subset of `I` does.
pub fn is_minimal_model(i: &AtomSet, program: &[PositiveRule], limits: &Limits) -> Result<bool> {
    if !program.iter().all(|r| positive_satisfied(r, i)) {
        return Ok(false);
    }
    // Only rules with B ⊆ I constrain subsets of I, and head atoms outside I are false there.
    let relevant: Vec<PositiveRule> = program
        .iter()
        .filter(|r| r.body.iter().all(|a| i.contains(*a)))
        .map(|r| PositiveRule {
            head: r.head.iter().copied().filter(|a| i.contains(*a)).collect(),
            body: r.body.clone(),
        })
        .collect();
    let capacity = i.iter().last().map_or(1, |m| m as usize + 1);
    let lm = horn_least_model(&relevant, capacity);
    if lm == *i {
        return Ok(true);
    }
    if relevant.iter().all(|r| r.head.len() <= 1) {
        return Ok(false);
    }
    let free: Vec<AtomId> = i.iter().filter(|a| !lm.contains(*a)).collect();
    if free.len() > limits.max_subset_atoms.min(63) {
        return Err(Error::SubsetExplosion {
            atoms: free.len(),
            cap: limits.max_subset_atoms,
        });
    }
    let full = (1u64 << free.len()) - 1;
    for mask in 0..full {
        let mut j = lm.clone();
        for (k, a) in free.iter().enumerate() {
            if mask & (1 << k) != 0 {
                j.insert(*a);
            }
        }
        if relevant.iter().all(|r| positive_satisfied(r, &j)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `I` satisfies every rule and is a minimal model of the reduct.
pub fn is_stable_model(rules: &[Rule<AtomId>], i: &AtomSet, limits: &Limits) -> Result<bool> {
    stable_among(rules.iter(), i, limits)
}

pub(crate) fn stable_among<'a>(
    rules: impl Iterator<Item = &'a Rule<AtomId>> + Clone,
    i: &AtomSet,
    limits: &Limits,
) -> Result<bool> {
    let truth = |a: &AtomId| i.contains(*a);
    if !rules.clone().all(|r| r.satisfied_by(&truth)) {
        return Ok(false);
    }
    let red: Vec<PositiveRule> = rules
        .filter(|r| r.body.neg.iter().all(|n| n.eval(&truth)))
        .map(|r| PositiveRule {
            head: r.head.clone(),
            body: r.body.pos.clone(),
        })
        .collect();
    is_minimal_model(i, &red, limits)
}

/// Signature of a stability checker, so properties can be run against alternatives.
pub type StableCheck = fn(&[Rule<AtomId>], &AtomSet, &Limits) -> Result<bool>;

/// The unweighted rules `Π̄`.
pub fn unweighted(rules: &[WeightedRule<AtomId>]) -> Vec<Rule<AtomId>> {
    rules.iter().map(|r| r.rule.clone()).collect()
}

/// Interpretations satisfying every rule of an all-hard program and stable for it. Small
/// universes are enumerated exhaustively, larger ones by search.
pub fn hard_stable_models(n: usize, rules: &[WeightedRule<AtomId>], limits: &Limits) -> Result<Vec<AtomSet>> {
    let hard = rules.iter().filter(|r| r.weight.is_hard()).count() as u64;
    if n <= limits.max_atoms.min(14) {
        Ok(exhaustive::enumerate_all(n, rules, Semantics::Stable, limits)?
            .into_iter()
            .filter(|(_, w)| w.hard() == Some(hard))
            .map(|(i, _)| i)
            .collect())
    } else {
        Ok(search(n, rules, Semantics::Stable, TierPolicy::AllHard, limits)?
            .into_iter()
            .map(|s| s.atoms)
            .collect())
    }
}

/// All stable models of the unweighted program, in ascending bitmask order.
pub fn enumerate_stable_models(g: &GroundProgram, limits: &Limits) -> Result<Vec<AtomSet>> {
    let hard: Vec<WeightedRule<AtomId>> = g.rules.iter().map(|r| WeightedRule::hard(r.rule.clone())).collect();
    let sols = search(g.atom_count(), &hard, Semantics::Stable, TierPolicy::AllHard, limits)?;
    Ok(sols.into_iter().map(|s| s.atoms).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{Body, Formula};

    fn set(ids: &[AtomId]) -> AtomSet {
        AtomSet::from_ids(8, ids.iter().copied())
    }

    fn fact(a: AtomId) -> PositiveRule {
        PositiveRule {
            head: vec![a],
            body: vec![],
        }
    }

    #[test]
    fn reduct_examples() {
        // p ← not q with p=0, q=1
        let r = vec![Rule::new(vec![0], vec![], vec![Formula::not(Formula::Atom(1))])];
        assert_eq!(reduct(&r, &set(&[0])), vec![fact(0)]);
        assert!(reduct(&r, &set(&[1])).is_empty());
        let ch = vec![Rule::choice(0, Body::default())];
        assert_eq!(reduct(&ch, &set(&[0])), vec![fact(0)]);
        assert!(reduct(&ch, &set(&[])).is_empty());
    }

    #[test]
    fn minimality_examples() {
        let l = Limits::default();
        assert!(is_minimal_model(&set(&[0]), &[fact(0)], &l).unwrap());
        assert!(!is_minimal_model(&set(&[0, 1]), &[fact(0)], &l).unwrap());
        let disj = vec![PositiveRule {
            head: vec![0, 1],
            body: vec![],
        }];
        assert!(is_minimal_model(&set(&[0]), &disj, &l).unwrap());
        assert!(!is_minimal_model(&set(&[0, 1]), &disj, &l).unwrap());
    }

    #[test]
    fn stable_examples() {
        let l = Limits::default();
        let nn = vec![Rule::new(vec![0], vec![], vec![Formula::not(Formula::not(Formula::Atom(0)))])];
        assert!(is_stable_model(&nn, &set(&[0]), &l).unwrap());
        assert!(is_stable_model(&nn, &set(&[]), &l).unwrap());
        let constraint = vec![Rule::new(vec![], vec![0], vec![])];
        assert!(is_stable_model(&constraint, &set(&[]), &l).unwrap());
        let self_loop = vec![Rule::new(vec![0], vec![0], vec![])];
        assert!(!is_stable_model(&self_loop, &set(&[0]), &l).unwrap());
    }

    #[test]
    fn enumerate_disjunction_and_empty() {
        let g = GroundProgram::from_rules(
            Default::default(),
            vec![WeightedRule::hard(Rule::new(
                vec![crate::logic::GroundAtom::prop("a"), crate::logic::GroundAtom::prop("b")],
                vec![],
                vec![],
            ))],
        )
        .unwrap();
        let models = enumerate_stable_models(&g, &Limits::default()).unwrap();
        assert_eq!(models, vec![set(&[0]), set(&[1])]);
        let empty = GroundProgram::empty();
        assert_eq!(enumerate_stable_models(&empty, &Limits::default()).unwrap(), vec![AtomSet::new(0)]);
    }
}
