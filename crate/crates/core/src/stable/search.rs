//! Depth-first branch-and-bound enumeration of weighted (probabilistic) stable models.
//!
//! Under [`Semantics::Stable`] the search visits interpretations `I` that are stable
//! models of `Π̄_I`, the rules satisfied by `I`. Atoms that no rule can derive (ignoring
//! negation) are fixed false, decisions follow the positive dependency order, and a
//! partial assignment is cut as soon as it cannot reach the required hard tier or some
//! true atom has lost every possible support.

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::logic::{AtomId, AtomSet, WeightedRule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semantics {
    /// Interpretations that are stable models of the rules they satisfy.
    Stable,
    /// Every interpretation (Markov logic reading of rules as formulas).
    Classical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TierPolicy {
    /// Only interpretations satisfying every hard rule.
    AllHard,
    /// Interpretations of the highest reachable hard tier.
    MaxTier,
    /// Every interpretation, whatever its tier.
    All,
}

/// An accepted interpretation with its hard count and soft exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub atoms: AtomSet,
    pub hard: u64,
    pub soft: f64,
}

/// Enumerates accepted interpretations in ascending bitmask order.
pub fn search(
    n_atoms: usize,
    rules: &[WeightedRule<AtomId>],
    semantics: Semantics,
    policy: TierPolicy,
    limits: &Limits,
) -> Result<Vec<Solution>> {
    let hard_total = rules.iter().filter(|r| r.weight.is_hard()).count() as u64;
    let mut out = match policy {
        TierPolicy::AllHard => Engine::new(n_atoms, rules, semantics, hard_total, false, limits).run()?,
        TierPolicy::All => Engine::new(n_atoms, rules, semantics, 0, false, limits).run()?,
        TierPolicy::MaxTier => {
            let strict = Engine::new(n_atoms, rules, semantics, hard_total, false, limits).run()?;
            if strict.is_empty() {
                Engine::new(n_atoms, rules, semantics, 0, true, limits).run()?
            } else {
                strict
            }
        }
    };
    out.sort_by(|a, b| a.atoms.cmp(&b.atoms));
    Ok(out)
}

struct Engine<'a> {
    n: usize,
    rules: &'a [WeightedRule<AtomId>],
    semantics: Semantics,
    limits: &'a Limits,
    occurs: Vec<Vec<usize>>,
    heads_of: Vec<Vec<usize>>,
    order: Vec<AtomId>,
    value: Vec<Option<bool>>,
    rule_status: Vec<Option<bool>>,
    body_status: Vec<Option<bool>>,
    hard_total: u64,
    violated_hard: u64,
    threshold: u64,
    raise: bool,
    nodes: u64,
    out: Vec<Solution>,
}

impl<'a> Engine<'a> {
    fn new(
        n: usize,
        rules: &'a [WeightedRule<AtomId>],
        semantics: Semantics,
        threshold: u64,
        raise: bool,
        limits: &'a Limits,
    ) -> Self {
        let mut occurs = vec![Vec::new(); n];
        let mut heads_of = vec![Vec::new(); n];
        for (ri, r) in rules.iter().enumerate() {
            r.rule.for_each_atom(&mut |&a| {
                let list = &mut occurs[a as usize];
                if list.last() != Some(&ri) {
                    list.push(ri);
                }
            });
            for &h in &r.rule.head {
                if heads_of[h as usize].last() != Some(&ri) {
                    heads_of[h as usize].push(ri);
                }
            }
        }
        let mut value = vec![None; n];
        let order = match semantics {
            Semantics::Classical => (0..n as AtomId).collect(),
            Semantics::Stable => {
                let derivable = derivable_atoms(n, rules);
                for (a, v) in value.iter_mut().enumerate() {
                    if !derivable[a] {
                        *v = Some(false);
                    }
                }
                dependency_order(n, rules, &derivable)
            }
        };
        let hard_total = rules.iter().filter(|r| r.weight.is_hard()).count() as u64;
        let mut e = Engine {
            n,
            rules,
            semantics,
            limits,
            occurs,
            heads_of,
            order,
            value,
            rule_status: vec![None; rules.len()],
            body_status: vec![None; rules.len()],
            hard_total,
            violated_hard: 0,
            threshold,
            raise,
            nodes: 0,
            out: Vec::new(),
        };
        for ri in 0..rules.len() {
            e.refresh(ri);
        }
        e
    }

    fn refresh(&mut self, ri: usize) {
        let value = &self.value;
        let truth = |a: &AtomId| value[*a as usize];
        let rule = &self.rules[ri];
        let new = rule.rule.eval3(&truth);
        self.body_status[ri] = rule.rule.body.eval3(&truth);
        let old = std::mem::replace(&mut self.rule_status[ri], new);
        if rule.weight.is_hard() {
            if old == Some(false) {
                self.violated_hard -= 1;
            }
            if new == Some(false) {
                self.violated_hard += 1;
            }
        }
    }

    fn set(&mut self, a: AtomId, v: Option<bool>) {
        self.value[a as usize] = v;
        for k in 0..self.occurs[a as usize].len() {
            let ri = self.occurs[a as usize][k];
            self.refresh(ri);
        }
    }

    /// Some rule could still support `a`: body not false and no other head atom true.
    fn supported(&self, a: AtomId) -> bool {
        self.heads_of[a as usize].iter().any(|&ri| {
            self.body_status[ri] != Some(false)
                && self.rules[ri]
                    .rule
                    .head
                    .iter()
                    .all(|&h| h == a || self.value[h as usize] != Some(true))
        })
    }

    fn support_ok(&self, a: AtomId) -> bool {
        if self.semantics == Semantics::Classical {
            return true;
        }
        if self.value[a as usize] == Some(true) && !self.supported(a) {
            return false;
        }
        for &ri in &self.occurs[a as usize] {
            for &h in &self.rules[ri].rule.head {
                if self.value[h as usize] == Some(true) && !self.supported(h) {
                    return false;
                }
            }
        }
        true
    }

    fn run(mut self) -> Result<Vec<Solution>> {
        self.dfs(0)?;
        Ok(self.out)
    }

    fn dfs(&mut self, depth: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limits.max_search_nodes {
            return Err(Error::SearchBudget {
                cap: self.limits.max_search_nodes,
            });
        }
        if self.hard_total - self.violated_hard < self.threshold {
            return Ok(());
        }
        if depth == self.order.len() {
            return self.leaf();
        }
        let a = self.order[depth];
        for v in [false, true] {
            self.set(a, Some(v));
            if self.support_ok(a) {
                self.dfs(depth + 1)?;
            }
        }
        self.set(a, None);
        Ok(())
    }

    fn leaf(&mut self) -> Result<()> {
        let atoms = AtomSet::from_ids(
            self.n,
            (0..self.n as AtomId).filter(|&a| self.value[a as usize] == Some(true)),
        );
        let hard = self.hard_total - self.violated_hard;
        let soft: f64 = self
            .rules
            .iter()
            .zip(&self.rule_status)
            .filter(|(r, s)| !r.weight.is_hard() && **s == Some(true))
            .map(|(r, _)| r.weight.soft_value())
            .sum();
        if self.semantics == Semantics::Stable {
            let satisfied = self
                .rules
                .iter()
                .zip(&self.rule_status)
                .filter(|(_, s)| **s == Some(true))
                .map(|(r, _)| &r.rule);
            if !super::stable_among(satisfied, &atoms, self.limits)? {
                return Ok(());
            }
        }
        if self.raise && hard > self.threshold {
            self.threshold = hard;
            self.out.retain(|s| s.hard >= hard);
        }
        self.out.push(Solution { atoms, hard, soft });
        Ok(())
    }
}

/// Atoms reachable as heads of rules whose positive bodies are reachable.
pub fn derivable_atoms(n: usize, rules: &[WeightedRule<AtomId>]) -> Vec<bool> {
    let mut d = vec![false; n];
    loop {
        let mut changed = false;
        for r in rules {
            if r.rule.body.pos.iter().all(|&a| d[a as usize]) {
                for &h in &r.rule.head {
                    if !d[h as usize] {
                        d[h as usize] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return d;
        }
    }
}

/// Candidate atoms ordered so that positive-body atoms precede the heads they support.
fn dependency_order(n: usize, rules: &[WeightedRule<AtomId>], candidate: &[bool]) -> Vec<AtomId> {
    let mut g = DiGraph::<AtomId, ()>::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n as AtomId).map(|a| g.add_node(a)).collect();
    for r in rules {
        for &h in &r.rule.head {
            for &b in &r.rule.body.pos {
                if candidate[h as usize] && candidate[b as usize] {
                    g.update_edge(nodes[h as usize], nodes[b as usize], ());
                }
            }
        }
    }
    // Tarjan yields components in reverse topological order: bodies before heads.
    let mut order = Vec::new();
    for mut scc in tarjan_scc(&g) {
        scc.sort();
        order.extend(scc.into_iter().map(|ix| g[ix]).filter(|&a| candidate[a as usize]));
    }
    order
}
