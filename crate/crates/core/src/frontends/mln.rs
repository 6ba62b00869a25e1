//! Translations between LP^MLN and Markov logic networks.

use crate::error::{Error, Result};
use crate::ground::GroundProgram;
use crate::infer::GroundMln;
use crate::limits::Limits;
use crate::logic::{AtomId, Body, Formula, Rule, Weight, WeightedRule};
use crate::stable::{completion_formulas, is_tight, loop_formula, loops, search, unweighted, LoopMode, Semantics, TierPolicy};

/// `w : ⊥ ← not F` for each `w : F`, plus `w_choice : {A}` for every atom of the universe.
pub fn mln_to_lpmln_with_choice_weight(l: &GroundMln, choice: Weight) -> GroundProgram {
    let mut rules: Vec<WeightedRule<AtomId>> = l.as_rules();
    for a in 0..l.universe.len() as AtomId {
        rules.push(WeightedRule::new(choice, Rule::choice(a, Body::default())));
    }
    GroundProgram {
        signature: l.signature.clone(),
        universe: l.universe.clone(),
        provenance: (0..rules.len()).collect(),
        rules,
    }
}

/// The embedding with choice rules of weight 0.
pub fn mln_to_lpmln(l: &GroundMln) -> GroundProgram {
    mln_to_lpmln_with_choice_weight(l, Weight::Soft(0.0))
}

fn rules_as_formulas(g: &GroundProgram) -> GroundMln {
    GroundMln {
        signature: g.signature.clone(),
        universe: g.universe.clone(),
        formulas: g.rules.iter().map(|r| (r.weight, r.rule.formula())).collect(),
    }
}

/// Whether some interpretation is a stable model of the rules it satisfies and satisfies
/// every hard rule (`SM′[Π]` nonempty).
pub fn has_hard_consistent_model(g: &GroundProgram, limits: &Limits) -> Result<bool> {
    let sols = search(g.atom_count(), &g.rules, Semantics::Stable, TierPolicy::AllHard, limits)?;
    Ok(!sols.is_empty())
}

/// Output of [`completion`]: the MLN plus warnings about unmet preconditions.
#[derive(Clone, Debug)]
pub struct Completion {
    pub mln: GroundMln,
    pub warnings: Vec<String>,
}

/// The rules of `Π` as weighted formulas plus one hard completion formula per atom.
/// Non-tight programs are refused unless `force` is set.
pub fn completion(g: &GroundProgram, force: bool, limits: &Limits) -> Result<Completion> {
    let mut warnings = Vec::new();
    let rules = unweighted(&g.rules);
    if !is_tight(g.atom_count(), &rules) {
        if !force {
            return Err(Error::NotTight);
        }
        warnings.push("program is not tight; the completion may admit unsupported models".to_string());
    }
    if !has_hard_consistent_model(g, limits)? {
        warnings.push("no stable model satisfies every hard rule; the completion need not agree".to_string());
    }
    let mut mln = rules_as_formulas(g);
    for f in completion_formulas(g.atom_count(), &rules) {
        mln.formulas.push((Weight::Hard, f));
    }
    Ok(Completion { mln, warnings })
}

/// `Π` as formulas plus a hard loop formula for every loop of `Π̄`.
pub fn loop_augmented_mln(g: &GroundProgram, limits: &Limits) -> Result<GroundMln> {
    let rules = unweighted(&g.rules);
    let mut mln = rules_as_formulas(g);
    for l in loops(g.atom_count(), &rules, LoopMode::Loops, limits.max_loops)? {
        mln.formulas.push((Weight::Hard, loop_formula(&rules, &l)));
    }
    Ok(mln)
}

/// Formula view used by printers: `F` for the MLN formula of a rule.
pub fn rule_formula(r: &Rule<AtomId>) -> Formula<AtomId> {
    r.formula()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::infer::{distribution, max_difference, mln_distribution};
    use crate::logic::{GroundAtom, Signature};

    fn p() -> GroundAtom {
        GroundAtom::prop("p")
    }

    #[test]
    fn single_soft_formula_embeds() {
        let l = GroundMln::from_formulas(Signature::default(), vec![(Weight::Soft(1.0), Formula::Atom(p()))]).unwrap();
        let g = mln_to_lpmln(&l);
        let lim = Limits::default();
        let a = mln_distribution(&l, &lim).unwrap();
        let b = distribution(&g, &lim).unwrap();
        assert!(max_difference(&a.to_map(), &b.to_map()) < 1e-12);
    }

    #[test]
    fn self_loop_discriminates_completion_and_loop_formulas() {
        let g = GroundProgram::from_rules(
            Signature::default(),
            vec![WeightedRule::hard(Rule::new(vec![p()], vec![p()], vec![]))],
        )
        .unwrap();
        let lim = Limits::default();
        assert!(matches!(completion(&g, false, &lim), Err(Error::NotTight)));
        let forced = completion(&g, true, &lim).unwrap();
        let d = mln_distribution(&forced.mln, &lim).unwrap();
        assert_eq!(d.support().len(), 2);
        let lf = loop_augmented_mln(&g, &lim).unwrap();
        let d = mln_distribution(&lf, &lim).unwrap();
        assert_eq!(d.support().len(), 1);
        assert!(d.support()[0].atoms.is_empty());
    }
}
