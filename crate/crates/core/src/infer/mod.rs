//! Probabilistic semantics: `Π_I`, `SM[Π]`, `W_Π`, `P_Π` and queries.

pub mod mln;

use std::collections::BTreeMap;

pub use mln::{ground_mln, mln_distribution, GroundMln, MlnProgram};

use crate::error::{Error, Result};
use crate::ground::GroundProgram;
use crate::limits::Limits;
use crate::logic::{AtomId, AtomSet, Formula, GroundAtom, Interpretation, SymbolicWeight, Universe};
use crate::stable::exhaustive::{enumerate_all, evaluate};
use crate::stable::{search, Semantics, Solution, TierPolicy};

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub atoms: AtomSet,
    pub weight: SymbolicWeight,
    pub prob: f64,
}

/// Probabilities of interpretations. Entries are in ascending bitmask order; entries of
/// probability zero appear only in full weight tables.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    pub universe: Universe,
    pub entries: Vec<Entry>,
    /// Highest hard count among interpretations of nonzero weight.
    pub max_tier: Option<u64>,
    /// `ln Σ exp(soft)` over the maximal tier.
    pub log_mass: f64,
}

fn log_sum_exp(xs: impl Iterator<Item = f64> + Clone) -> f64 {
    let m = xs.clone().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.map(|x| (x - m).exp()).sum::<f64>().ln()
}

impl Distribution {
    /// Normalizes weights by the limit `α → ∞`: only the highest hard tier keeps mass.
    pub fn from_weights(universe: Universe, weights: Vec<(AtomSet, SymbolicWeight)>) -> Self {
        let max_tier = weights.iter().filter_map(|(_, w)| w.hard()).max();
        let tier_soft = weights
            .iter()
            .filter(|(_, w)| w.hard().is_some() && w.hard() == max_tier)
            .filter_map(|(_, w)| w.soft());
        let log_mass = log_sum_exp(tier_soft);
        let entries = weights
            .into_iter()
            .map(|(atoms, weight)| {
                let prob = match weight {
                    SymbolicWeight::Exp { hard, soft } if Some(hard) == max_tier => (soft - log_mass).exp(),
                    _ => 0.0,
                };
                Entry { atoms, weight, prob }
            })
            .collect();
        Distribution {
            universe,
            entries,
            max_tier,
            log_mass,
        }
    }

    fn from_solutions(universe: Universe, sols: Vec<Solution>) -> Self {
        let weights = sols
            .into_iter()
            .map(|s| (s.atoms, SymbolicWeight::new(s.hard, s.soft)))
            .collect();
        Distribution::from_weights(universe, weights)
    }

    /// Resolves query atoms against the universe; `c=t` falls back to `c`.
    pub fn resolve(&self, f: &Formula<GroundAtom>) -> Result<Formula<AtomId>> {
        resolve_query(&self.universe, f)
    }

    pub fn prob_of_set(&self, atoms: &AtomSet) -> f64 {
        self.entries.iter().filter(|e| e.atoms == *atoms).map(|e| e.prob).sum()
    }

    pub fn prob(&self, interp: &Interpretation) -> Result<f64> {
        Ok(self.prob_of_set(&self.universe.to_atom_set(interp)?))
    }

    /// `P(A) = Σ_{I ⊨ A} P(I)`.
    pub fn query(&self, f: &Formula<GroundAtom>) -> Result<f64> {
        let f = self.resolve(f)?;
        Ok(self
            .entries
            .iter()
            .filter(|e| e.prob > 0.0 && f.eval(&|a: &AtomId| e.atoms.contains(*a)))
            .map(|e| e.prob)
            .sum())
    }

    /// `P(A | B) = P(A ∧ B) / P(B)`.
    pub fn cond_query(&self, a: &Formula<GroundAtom>, b: &Formula<GroundAtom>) -> Result<f64> {
        let pb = self.query(b)?;
        if pb <= 0.0 {
            return Err(Error::ConditionHasZeroProbability);
        }
        Ok(self.query(&Formula::conj(vec![a.clone(), b.clone()]))? / pb)
    }

    /// Interpretations with nonzero probability.
    pub fn support(&self) -> Vec<&Entry> {
        self.entries.iter().filter(|e| e.prob > 0.0).collect()
    }

    /// Nonzero probabilities keyed by interpretation.
    pub fn to_map(&self) -> BTreeMap<Interpretation, f64> {
        self.support()
            .into_iter()
            .map(|e| (self.universe.to_interpretation(&e.atoms), e.prob))
            .collect()
    }

    /// Marginal distribution over the given atoms (others summed out).
    pub fn project(&self, atoms: &[GroundAtom]) -> BTreeMap<Interpretation, f64> {
        let mut out: BTreeMap<Interpretation, f64> = BTreeMap::new();
        for e in self.support() {
            let key: Interpretation = atoms
                .iter()
                .filter(|a| self.universe.id(a).is_some_and(|id| e.atoms.contains(id)))
                .cloned()
                .collect();
            *out.entry(key).or_insert(0.0) += e.prob;
        }
        out
    }

    pub fn total(&self) -> f64 {
        self.entries.iter().map(|e| e.prob).sum()
    }
}

pub fn resolve_query(universe: &Universe, f: &Formula<GroundAtom>) -> Result<Formula<AtomId>> {
    f.try_map(&mut |a: &GroundAtom| {
        if let Some(id) = universe.id(a) {
            return Ok(id);
        }
        if a.value.as_ref().is_some_and(|v| v.is_true_value()) {
            let plain = GroundAtom::new(a.symbol.clone(), a.args.clone());
            if let Some(id) = universe.id(&plain) {
                return Ok(id);
            }
        }
        Err(Error::UnknownAtom(a.to_string()))
    })
}

/// Maximal absolute difference between two distributions keyed by interpretation.
pub fn max_difference(a: &BTreeMap<Interpretation, f64>, b: &BTreeMap<Interpretation, f64>) -> f64 {
    let mut d: f64 = 0.0;
    for (k, v) in a {
        d = d.max((v - b.get(k).copied().unwrap_or(0.0)).abs());
    }
    for (k, v) in b {
        if !a.contains_key(k) {
            d = d.max(v.abs());
        }
    }
    d
}

/// `Π_I`: indices of the rules classically satisfied by `I`.
pub fn satisfied_rules(g: &GroundProgram, i: &AtomSet) -> Vec<usize> {
    let truth = |a: &AtomId| i.contains(*a);
    g.rules
        .iter()
        .enumerate()
        .filter(|(_, r)| r.rule.satisfied_by(&truth))
        .map(|(k, _)| k)
        .collect()
}

/// `SM[Π]`: interpretations that are stable models of the rules they satisfy.
pub fn soft_stable_set(g: &GroundProgram, limits: &Limits) -> Result<Vec<AtomSet>> {
    Ok(search(g.atom_count(), &g.rules, Semantics::Stable, TierPolicy::All, limits)?
        .into_iter()
        .map(|s| s.atoms)
        .collect())
}

/// `W_Π(I)` with the `α` coefficient kept symbolic.
pub fn unnormalized_weight(g: &GroundProgram, i: &AtomSet, limits: &Limits) -> Result<SymbolicWeight> {
    evaluate(&g.rules, i, Semantics::Stable, limits)
}

/// `P_Π`, restricted to interpretations of positive probability.
pub fn distribution(g: &GroundProgram, limits: &Limits) -> Result<Distribution> {
    let sols = search(g.atom_count(), &g.rules, Semantics::Stable, TierPolicy::MaxTier, limits)?;
    Ok(Distribution::from_solutions(g.universe.clone(), sols))
}

/// Weight and probability of every interpretation, in ascending bitmask order.
pub fn weight_table(g: &GroundProgram, limits: &Limits) -> Result<Distribution> {
    let weights = enumerate_all(g.atom_count(), &g.rules, Semantics::Stable, limits)?;
    Ok(Distribution::from_weights(g.universe.clone(), weights))
}

/// `P′_Π`: soft weights only, normalized over `SM′[Π]` (members of `SM[Π]` satisfying every hard rule).
pub fn soft_only_distribution(g: &GroundProgram, limits: &Limits) -> Result<Distribution> {
    let sols = search(g.atom_count(), &g.rules, Semantics::Stable, TierPolicy::AllHard, limits)?;
    if sols.is_empty() {
        return Err(Error::NoHardConsistentModel);
    }
    let weights = sols
        .into_iter()
        .map(|s| (s.atoms, SymbolicWeight::new(0, s.soft)))
        .collect();
    Ok(Distribution::from_weights(g.universe.clone(), weights))
}

pub fn prob_query(dist: &Distribution, a: &Formula<GroundAtom>) -> Result<f64> {
    dist.query(a)
}

pub fn cond_prob(dist: &Distribution, a: &Formula<GroundAtom>, b: &Formula<GroundAtom>) -> Result<f64> {
    dist.cond_query(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{Rule, Weight, WeightedRule};

    fn prop(s: &str) -> GroundAtom {
        GroundAtom::prop(s)
    }

    fn program(rules: Vec<WeightedRule<GroundAtom>>) -> GroundProgram {
        GroundProgram::from_rules(Default::default(), rules).unwrap()
    }

    #[test]
    fn single_soft_fact() {
        let g = program(vec![WeightedRule::soft(1.0, Rule::fact(prop("p")))]);
        let sm = soft_stable_set(&g, &Limits::default()).unwrap();
        assert_eq!(sm.len(), 2);
        let d = distribution(&g, &Limits::default()).unwrap();
        let e = std::f64::consts::E;
        assert!((d.query(&Formula::Atom(prop("p"))).unwrap() - e / (1.0 + e)).abs() < 1e-12);
    }

    #[test]
    fn soft_only_matches_when_hard_consistent() {
        let g = program(vec![
            WeightedRule::hard(Rule::fact(prop("p"))),
            WeightedRule::soft(1.0, Rule::fact(prop("q"))),
        ]);
        let l = Limits::default();
        let d = distribution(&g, &l).unwrap();
        let d2 = soft_only_distribution(&g, &l).unwrap();
        assert!(max_difference(&d.to_map(), &d2.to_map()) < 1e-12);
        let e = std::f64::consts::E;
        let pq = [prop("p"), prop("q")].into();
        assert!((d.prob(&pq).unwrap() - e / (1.0 + e)).abs() < 1e-12);
    }

    #[test]
    fn empty_program_has_empty_model() {
        let g = GroundProgram::empty();
        let d = distribution(&g, &Limits::default()).unwrap();
        assert_eq!(d.entries.len(), 1);
        assert_eq!(d.entries[0].prob, 1.0);
        assert!(satisfied_rules(&g, &AtomSet::new(0)).is_empty());
    }

    #[test]
    fn unknown_query_atom_is_an_error() {
        let g = program(vec![WeightedRule::new(Weight::Hard, Rule::fact(prop("p")))]);
        let d = distribution(&g, &Limits::default()).unwrap();
        assert!(matches!(d.query(&Formula::Atom(prop("zz"))), Err(Error::UnknownAtom(_))));
        assert!(matches!(
            d.cond_query(&Formula::Atom(prop("p")), &Formula::not(Formula::Atom(prop("p")))),
            Err(Error::ConditionHasZeroProbability)
        ));
    }
}
