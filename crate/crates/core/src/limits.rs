/// Resource caps shared by the solver entry points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Universe size allowed for exhaustive (bitmask) enumeration.
    pub max_atoms: usize,
    /// Free atoms allowed in a disjunctive minimality check.
    pub max_subset_atoms: usize,
    /// Ground rule instances allowed per program.
    pub max_ground: usize,
    pub max_loops: usize,
    /// Decision nodes allowed in one branch-and-bound search.
    pub max_search_nodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_atoms: 24,
            max_subset_atoms: 24,
            max_ground: crate::ground::DEFAULT_MAX_GROUND,
            max_loops: 100_000,
            max_search_nodes: 50_000_000,
        }
    }
}
