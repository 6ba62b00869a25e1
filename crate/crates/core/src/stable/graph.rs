//! Positive dependency graph, tightness and loops.

use petgraph::algo::{is_cyclic_directed, tarjan_scc};
use petgraph::graph::{DiGraph, NodeIndex};

use crate::error::{Error, Result};
use crate::logic::{AtomId, AtomSet, Rule};

/// Edges `a → b` for every rule with `a` in the head and `b` in the positive body.
#[derive(Clone, Debug)]
pub struct PosDepGraph {
    pub graph: DiGraph<AtomId, ()>,
}

impl PosDepGraph {
    pub fn node(&self, a: AtomId) -> NodeIndex {
        NodeIndex::new(a as usize)
    }

    pub fn has_edge(&self, a: AtomId, b: AtomId) -> bool {
        self.graph.contains_edge(self.node(a), self.node(b))
    }

    pub fn edges(&self) -> Vec<(AtomId, AtomId)> {
        let mut out: Vec<_> = self
            .graph
            .edge_indices()
            .filter_map(|e| self.graph.edge_endpoints(e))
            .map(|(a, b)| (self.graph[a], self.graph[b]))
            .collect();
        out.sort();
        out
    }

    fn successors(&self, a: AtomId) -> impl Iterator<Item = AtomId> + '_ {
        self.graph.neighbors(self.node(a)).map(|n| self.graph[n])
    }
}

pub fn positive_dependency_graph(n: usize, rules: &[Rule<AtomId>]) -> PosDepGraph {
    let mut graph = DiGraph::with_capacity(n, 0);
    for a in 0..n as AtomId {
        graph.add_node(a);
    }
    for r in rules {
        for &h in &r.head {
            for &b in &r.body.pos {
                graph.update_edge(NodeIndex::new(h as usize), NodeIndex::new(b as usize), ());
            }
        }
    }
    PosDepGraph { graph }
}

/// The positive dependency graph is acyclic (self-loops count as cycles).
pub fn is_tight(n: usize, rules: &[Rule<AtomId>]) -> bool {
    !is_cyclic_directed(&positive_dependency_graph(n, rules).graph)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoopMode {
    /// Nonempty sets inducing a strongly connected subgraph, found inside each SCC.
    Loops,
    /// Every nonempty set of atoms (a superset of the loops, for cross-checks).
    AllSubsets,
}

const MAX_SCC_FOR_LOOPS: usize = 20;
const MAX_ATOMS_FOR_ALL_SUBSETS: usize = 16;

/// Loops of the program in ascending bitmask order; singletons are always loops.
pub fn loops(n: usize, rules: &[Rule<AtomId>], mode: LoopMode, cap: usize) -> Result<Vec<AtomSet>> {
    let mut out = Vec::new();
    match mode {
        LoopMode::AllSubsets => {
            if n > MAX_ATOMS_FOR_ALL_SUBSETS || (1usize << n) - 1 > cap {
                return Err(Error::LoopExplosion { cap });
            }
            for mask in 1..(1u64 << n) {
                out.push(AtomSet::from_mask(n, mask));
            }
        }
        LoopMode::Loops => {
            let g = positive_dependency_graph(n, rules);
            for scc in tarjan_scc(&g.graph) {
                let members: Vec<AtomId> = scc.iter().map(|&ix| g.graph[ix]).collect();
                if members.len() > MAX_SCC_FOR_LOOPS {
                    return Err(Error::LoopExplosion { cap });
                }
                for mask in 1..(1u64 << members.len()) {
                    let set = AtomSet::from_ids(
                        n,
                        members
                            .iter()
                            .enumerate()
                            .filter(|(k, _)| mask & (1 << k) != 0)
                            .map(|(_, &a)| a),
                    );
                    if strongly_connected(&g, &set) {
                        out.push(set);
                        if out.len() > cap {
                            return Err(Error::LoopExplosion { cap });
                        }
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn reach(g: &PosDepGraph, set: &AtomSet, start: AtomId, forward: bool) -> AtomSet {
    let mut seen = AtomSet::from_ids(set.len(), [start]);
    let mut stack = vec![start];
    while let Some(a) = stack.pop() {
        let next: Vec<AtomId> = if forward {
            g.successors(a).collect()
        } else {
            g.graph
                .neighbors_directed(g.node(a), petgraph::Direction::Incoming)
                .map(|ix| g.graph[ix])
                .collect()
        };
        for b in next {
            if set.contains(b) && !seen.contains(b) {
                seen.insert(b);
                stack.push(b);
            }
        }
    }
    seen
}

fn strongly_connected(g: &PosDepGraph, set: &AtomSet) -> bool {
    let Some(first) = set.iter().next() else {
        return false;
    };
    if set.len() == 1 {
        return true;
    }
    reach(g, set, first, true) == *set && reach(g, set, first, false) == *set
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(head: AtomId, body: &[AtomId]) -> Rule<AtomId> {
        Rule::new(vec![head], body.to_vec(), vec![])
    }

    #[test]
    fn tightness() {
        assert!(is_tight(2, &[r(0, &[1])]));
        assert!(!is_tight(1, &[r(0, &[0])]));
        assert!(is_tight(2, &[r(0, &[]), r(1, &[])]));
    }

    #[test]
    fn loops_of_two_cycle() {
        let rules = vec![r(0, &[1]), r(1, &[0])];
        let ls = loops(2, &rules, LoopMode::Loops, 1000).unwrap();
        let expect: Vec<AtomSet> = vec![
            AtomSet::from_ids(2, [0]),
            AtomSet::from_ids(2, [1]),
            AtomSet::from_ids(2, [0, 1]),
        ];
        assert_eq!(ls, expect);
        let acyclic = loops(2, &[r(0, &[1])], LoopMode::Loops, 1000).unwrap();
        assert_eq!(acyclic.len(), 2);
    }

    #[test]
    fn path_of_three_is_not_a_loop() {
        // 0 → 1 → 2 → 1: {0,1} and {0,1,2} are not loops
        let rules = vec![r(0, &[1]), r(1, &[2]), r(2, &[1])];
        let ls = loops(3, &rules, LoopMode::Loops, 1000).unwrap();
        assert_eq!(ls.len(), 4);
        assert!(ls.contains(&AtomSet::from_ids(3, [1, 2])));
    }
}
