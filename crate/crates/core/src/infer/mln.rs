//! Markov logic networks: weighted formulas evaluated over all interpretations.

use std::fmt;

use super::Distribution;
use crate::error::Result;
use crate::ground::{ground_formula, herbrand_constants, DEFAULT_MAX_GROUND};
use crate::limits::Limits;
use crate::logic::{
    AtomId, AtomPattern, Formula, GroundAtom, Rule, Signature, Universe, Weight, WeightedRule,
};
use crate::stable::exhaustive::enumerate_all;
use crate::stable::{search, Semantics, TierPolicy};

/// A finite set of weighted formulas `w : F`, possibly with variables.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct MlnProgram {
    pub signature: Signature,
    pub formulas: Vec<(Weight, Formula<AtomPattern>)>,
}

/// A ground MLN over an interned universe.
#[derive(Clone, Debug, PartialEq)]
pub struct GroundMln {
    pub signature: Signature,
    pub universe: Universe,
    pub formulas: Vec<(Weight, Formula<AtomId>)>,
}

impl GroundMln {
    /// Interns formulas; the universe is the declared atoms followed by atoms in order of appearance.
    pub fn from_formulas(signature: Signature, formulas: Vec<(Weight, Formula<GroundAtom>)>) -> Result<Self> {
        let universe = Universe::from_atoms(signature.declared_atoms()?);
        let mut g = GroundMln {
            signature,
            universe,
            formulas: Vec::new(),
        };
        for (w, f) in formulas {
            g.push(w, &f);
        }
        Ok(g)
    }

    pub fn push(&mut self, w: Weight, f: &Formula<GroundAtom>) {
        let sig = &self.signature;
        let universe = &mut self.universe;
        let f = f.map(&mut |a: &GroundAtom| universe.intern(sig.normalize(a.clone())));
        self.formulas.push((w, f));
    }

    pub fn formula(&self, i: usize) -> (Weight, Formula<GroundAtom>) {
        let (w, f) = &self.formulas[i];
        (*w, f.map(&mut |&a| self.universe.atom(a).clone()))
    }

    /// Each `w : F` as the constraint `w : ⊥ ← ¬F`, which holds exactly when `F` does.
    pub fn as_rules(&self) -> Vec<WeightedRule<AtomId>> {
        self.formulas
            .iter()
            .map(|(w, f)| WeightedRule::new(*w, Rule::new(vec![], vec![], vec![Formula::not(f.clone())])))
            .collect()
    }
}

impl fmt::Display for GroundMln {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.formulas.len() {
            let (w, form) = self.formula(i);
            writeln!(f, "{w} : {form}.")?;
        }
        Ok(())
    }
}

/// Grounds every formula over its variables' domains.
pub fn ground_mln(l: &MlnProgram) -> Result<GroundMln> {
    l.signature.validate()?;
    let mut atoms = Vec::new();
    for (_, f) in &l.formulas {
        f.for_each_atom(&mut |a| atoms.push(a));
    }
    let herbrand = herbrand_constants(atoms);
    let mut out = Vec::new();
    for (w, f) in &l.formulas {
        out.extend(ground_formula(&l.signature, &herbrand, *w, f, DEFAULT_MAX_GROUND)?);
    }
    GroundMln::from_formulas(l.signature.clone(), out)
}

/// `P_L`: the `α → ∞` limit over all interpretations of the universe.
pub fn mln_distribution(l: &GroundMln, limits: &Limits) -> Result<Distribution> {
    let rules = l.as_rules();
    let sols = search(l.universe.len(), &rules, Semantics::Classical, TierPolicy::MaxTier, limits)?;
    let weights = sols
        .into_iter()
        .map(|s| (s.atoms, crate::logic::SymbolicWeight::new(s.hard, s.soft)))
        .collect();
    Ok(Distribution::from_weights(l.universe.clone(), weights))
}

/// Weight and probability of every interpretation.
pub fn mln_weight_table(l: &GroundMln, limits: &Limits) -> Result<Distribution> {
    let weights = enumerate_all(l.universe.len(), &l.as_rules(), Semantics::Classical, limits)?;
    Ok(Distribution::from_weights(l.universe.clone(), weights))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_formula_examples() {
        let p = GroundAtom::prop("p");
        let soft = GroundMln::from_formulas(Signature::default(), vec![(Weight::Soft(1.0), Formula::Atom(p.clone()))])
            .unwrap();
        let d = mln_distribution(&soft, &Limits::default()).unwrap();
        let e = std::f64::consts::E;
        assert!((d.query(&Formula::Atom(p.clone())).unwrap() - e / (1.0 + e)).abs() < 1e-12);
        let hard = GroundMln::from_formulas(Signature::default(), vec![(Weight::Hard, Formula::Atom(p.clone()))])
            .unwrap();
        let d = mln_distribution(&hard, &Limits::default()).unwrap();
        assert_eq!(d.query(&Formula::Atom(p)).unwrap(), 1.0);
        assert_eq!(d.support().len(), 1);
    }
}
