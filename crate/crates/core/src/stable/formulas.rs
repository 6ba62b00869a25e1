//! External support, loop formulas and completion.

use crate::logic::{AtomId, AtomSet, Formula, Rule};

fn support_disjunct(r: &Rule<AtomId>, excluded: impl Fn(AtomId) -> bool) -> Formula<AtomId> {
    let mut items: Vec<Formula<AtomId>> = r.body.pos.iter().map(|&a| Formula::Atom(a)).collect();
    items.extend(r.body.neg.iter().cloned());
    for &b in &r.head {
        if !excluded(b) {
            items.push(Formula::not(Formula::Atom(b)));
        }
    }
    Formula::conj(items)
}

/// `ES(L)`: disjunction of `B ∧ N ∧ ⋀_{b ∈ A∖L} ¬b` over rules with `A ∩ L ≠ ∅` and `B ∩ L = ∅`.
pub fn external_support(rules: &[Rule<AtomId>], l: &AtomSet) -> Formula<AtomId> {
    Formula::disj(
        rules
            .iter()
            .filter(|r| r.head.iter().any(|&a| l.contains(a)) && !r.body.pos.iter().any(|&a| l.contains(a)))
            .map(|r| support_disjunct(r, |b| l.contains(b)))
            .collect(),
    )
}

/// `⋀L → ES(L)`.
pub fn loop_formula(rules: &[Rule<AtomId>], l: &AtomSet) -> Formula<AtomId> {
    Formula::implies(
        Formula::conj(l.iter().map(Formula::Atom).collect()),
        external_support(rules, l),
    )
}

/// One formula `A → ⋁ (B ∧ N ∧ ⋀_{A′ ∈ head∖{A}} ¬A′)` per atom id `0..n`.
pub fn completion_formulas(n: usize, rules: &[Rule<AtomId>]) -> Vec<Formula<AtomId>> {
    (0..n as AtomId)
        .map(|a| {
            let supports = rules
                .iter()
                .filter(|r| r.head.contains(&a))
                .map(|r| support_disjunct(r, |b| b == a))
                .collect();
            Formula::implies(Formula::Atom(a), Formula::disj(supports))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Body;

    fn r(head: &[AtomId], body: &[AtomId]) -> Rule<AtomId> {
        Rule::new(head.to_vec(), body.to_vec(), vec![])
    }

    #[test]
    fn external_support_examples() {
        let p = AtomSet::from_ids(3, [0]);
        assert_eq!(external_support(&[r(&[0], &[])], &p), Formula::True);
        assert_eq!(external_support(&[r(&[0], &[0])], &p), Formula::False);
        let pq = AtomSet::from_ids(3, [0, 1]);
        let rules = [r(&[0], &[1]), r(&[1], &[0]), r(&[0], &[2])];
        assert_eq!(external_support(&rules, &pq), Formula::Atom(2));
    }

    #[test]
    fn completion_examples() {
        let c = completion_formulas(2, &[r(&[0], &[1])]);
        assert_eq!(c[0], Formula::implies(Formula::Atom(0), Formula::Atom(1)));
        assert_eq!(c[1], Formula::implies(Formula::Atom(1), Formula::False));
        // p ; r ← q with p=0, r=1, q=2
        let c = completion_formulas(3, &[r(&[0, 1], &[2])]);
        assert_eq!(
            c[0],
            Formula::implies(
                Formula::Atom(0),
                Formula::conj(vec![Formula::Atom(2), Formula::not(Formula::Atom(1))])
            )
        );
        let ch = completion_formulas(1, &[Rule::choice(0, Body::default())]);
        assert_eq!(
            ch[0],
            Formula::implies(Formula::Atom(0), Formula::not(Formula::not(Formula::Atom(0))))
        );
    }
}
