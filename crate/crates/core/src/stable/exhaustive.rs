//! Brute-force evaluation of every interpretation of a small universe.

use rayon::prelude::*;

use super::search::Semantics;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::logic::{AtomId, AtomSet, SymbolicWeight, WeightedRule};

/// `W(I)` as a symbolic weight: zero when `Stable` and `I` is not a stable model of `Π̄_I`.
pub fn evaluate(
    rules: &[WeightedRule<AtomId>],
    i: &AtomSet,
    semantics: Semantics,
    limits: &Limits,
) -> Result<SymbolicWeight> {
    let truth = |a: &AtomId| i.contains(*a);
    let sat: Vec<bool> = rules.iter().map(|r| r.rule.satisfied_by(&truth)).collect();
    if semantics == Semantics::Stable {
        let satisfied = rules.iter().zip(&sat).filter(|(_, s)| **s).map(|(r, _)| &r.rule);
        if !super::stable_among(satisfied, i, limits)? {
            return Ok(SymbolicWeight::Zero);
        }
    }
    let mut hard = 0;
    let mut soft = 0.0;
    for (r, s) in rules.iter().zip(&sat) {
        if *s {
            if r.weight.is_hard() {
                hard += 1;
            } else {
                soft += r.weight.soft_value();
            }
        }
    }
    Ok(SymbolicWeight::new(hard, soft))
}

/// Every interpretation over `n` atoms with its weight, in ascending bitmask order.
pub fn enumerate_all(
    n: usize,
    rules: &[WeightedRule<AtomId>],
    semantics: Semantics,
    limits: &Limits,
) -> Result<Vec<(AtomSet, SymbolicWeight)>> {
    if n > limits.max_atoms.min(40) {
        return Err(Error::UniverseExplosion {
            atoms: n,
            cap: limits.max_atoms,
        });
    }
    (0..1u64 << n)
        .into_par_iter()
        .map(|mask| {
            let i = AtomSet::from_mask(n, mask);
            let w = evaluate(rules, &i, semantics, limits)?;
            Ok((i, w))
        })
        .collect()
}
