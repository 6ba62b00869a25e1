//! ASP programs with weak constraints `:~ Body [w]`.

use std::collections::BTreeSet;

use crate::error::{Error, Result, ValidationError};
use crate::ground::ground_program;
use crate::infer::distribution;
use crate::limits::Limits;
use crate::logic::{AtomPattern, Body, Formula, Interpretation, Program, Rule, Signature, Weight, WeightedRule};
use crate::stable::is_stable_model;

#[derive(Clone, Debug, PartialEq)]
pub struct WeakConstraint {
    pub body: Body<AtomPattern>,
    pub weight: u64,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct WeakProgram {
    pub signature: Signature,
    pub rules: Vec<Rule<AtomPattern>>,
    pub weak: Vec<WeakConstraint>,
}

impl WeakProgram {
    pub fn validate(&self) -> std::result::Result<(), ValidationError> {
        self.signature.validate()?;
        for (i, w) in self.weak.iter().enumerate() {
            if w.weight == 0 {
                return Err(ValidationError::new(format!("weak constraint {} has weight 0; weights must be positive", i + 1)));
            }
        }
        Ok(())
    }
}

/// Every rule becomes hard.
pub fn asp_to_lpmln(signature: &Signature, rules: &[Rule<AtomPattern>]) -> Program {
    Program::new(signature.clone(), rules.iter().cloned().map(WeightedRule::hard).collect())
}

/// `⊥ ← not (Body)`, keeping builtins as grounding filters.
fn negated_body_constraint(body: &Body<AtomPattern>) -> Rule<AtomPattern> {
    let inner = Body::new(body.pos.clone(), body.neg.clone()).formula();
    Rule::constraint(Body {
        pos: Vec::new(),
        neg: vec![Formula::not(inner)],
        builtins: body.builtins.clone(),
    })
}

/// Hard rules plus `-w : ⊥ ← not Body` for each weak constraint.
pub fn weak_to_lpmln(w: &WeakProgram) -> Program {
    let mut p = asp_to_lpmln(&w.signature, &w.rules);
    for c in &w.weak {
        p.rules
            .push(WeightedRule::new(Weight::Soft(-(c.weight as f64)), negated_body_constraint(&c.body)));
    }
    p
}

/// Stable models of highest probability under [`weak_to_lpmln`], in ascending bitmask order.
pub fn optimal_stable_models(w: &WeakProgram, limits: &Limits) -> Result<Vec<Interpretation>> {
    w.validate()?;
    let g = ground_program(&weak_to_lpmln(w))?;
    let d = distribution(&g, limits)?;
    if d.max_tier != Some(g.hard_count() as u64) {
        return Err(Error::NoStableModel);
    }
    let best = d.support().iter().map(|e| e.prob).fold(0.0, f64::max);
    Ok(d
        .support()
        .into_iter()
        .filter(|e| e.prob >= best * (1.0 - 1e-12))
        .map(|e| d.universe.to_interpretation(&e.atoms))
        .collect())
}

/// Penalty minimization by brute force: enumerate every interpretation, keep the stable
/// models of the ASP part, and sum the weights of violated weak constraint instances.
pub fn optimal_by_penalty(w: &WeakProgram, limits: &Limits) -> Result<Vec<Interpretation>> {
    w.validate()?;
    let mut p = asp_to_lpmln(&w.signature, &w.rules);
    let n_rules = p.rules.len();
    for c in &w.weak {
        p.rules
            .push(WeightedRule::new(Weight::Soft(c.weight as f64), Rule::constraint(c.body.clone())));
    }
    let g = ground_program(&p)?;
    let n = g.atom_count();
    if n > limits.max_atoms.min(30) {
        return Err(Error::UniverseExplosion {
            atoms: n,
            cap: limits.max_atoms.min(30),
        });
    }
    let (asp, weak): (Vec<_>, Vec<_>) = g.rules.iter().zip(&g.provenance).partition(|(_, &src)| src < n_rules);
    let asp: Vec<Rule<u32>> = asp.into_iter().map(|(r, _)| r.rule.clone()).collect();
    let mut best: Option<u64> = None;
    let mut winners = Vec::new();
    for mask in 0..(1u64 << n) {
        let i = crate::logic::AtomSet::from_mask(n, mask);
        if !is_stable_model(&asp, &i, limits)? {
            continue;
        }
        let truth = |a: &u32| i.contains(*a);
        let penalty: u64 = weak
            .iter()
            .filter(|(r, _)| r.rule.body.is_true(&truth))
            .map(|(r, _)| r.weight.soft_value() as u64)
            .sum();
        match best {
            Some(b) if penalty > b => {}
            Some(b) if penalty == b => winners.push(i),
            _ => {
                best = Some(penalty);
                winners = vec![i];
            }
        }
    }
    if best.is_none() {
        return Err(Error::NoStableModel);
    }
    winners.sort();
    Ok(winners.iter().map(|i| g.universe.to_interpretation(i)).collect())
}

/// Interpretations as a set, for order-insensitive comparison.
pub fn as_set(models: &[Interpretation]) -> BTreeSet<Interpretation> {
    models.iter().cloned().collect()
}
