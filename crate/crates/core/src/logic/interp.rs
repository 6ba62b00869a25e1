use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexSet;

use super::formula::Formula;
use super::value::GroundAtom;
use crate::error::{Error, Result};

pub type AtomId = u32;

/// A Herbrand interpretation given by the atoms taken true.
pub type Interpretation = BTreeSet<GroundAtom>;

/// Ordered, duplicate-free universe of ground atoms. Atom ids are positions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Universe {
    atoms: IndexSet<GroundAtom>,
}

impl Universe {
    pub fn new() -> Self {
        Universe::default()
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = GroundAtom>) -> Self {
        Universe {
            atoms: atoms.into_iter().collect(),
        }
    }

    pub fn intern(&mut self, atom: GroundAtom) -> AtomId {
        self.atoms.insert_full(atom).0 as AtomId
    }

    pub fn id(&self, atom: &GroundAtom) -> Option<AtomId> {
        self.atoms.get_index_of(atom).map(|i| i as AtomId)
    }

    pub fn atom(&self, id: AtomId) -> &GroundAtom {
        &self.atoms[id as usize]
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroundAtom> {
        self.atoms.iter()
    }

    pub fn contains(&self, atom: &GroundAtom) -> bool {
        self.atoms.contains(atom)
    }

    /// Resolves a formula over ground atoms to atom ids.
    pub fn resolve(&self, f: &Formula<GroundAtom>) -> Result<Formula<AtomId>> {
        f.try_map(&mut |a: &GroundAtom| self.id(a).ok_or_else(|| Error::UnknownAtom(a.to_string())))
    }

    pub fn to_interpretation(&self, set: &AtomSet) -> Interpretation {
        set.iter().map(|i| self.atom(i).clone()).collect()
    }

    pub fn to_atom_set(&self, interp: &Interpretation) -> Result<AtomSet> {
        let mut set = AtomSet::new(self.len());
        for a in interp {
            let id = self.id(a).ok_or_else(|| Error::UnknownAtom(a.to_string()))?;
            set.insert(id);
        }
        Ok(set)
    }

    /// `{a, b, c}` in universe order.
    pub fn show(&self, set: &AtomSet) -> String {
        let items: Vec<String> = set.iter().map(|i| self.atom(i).to_string()).collect();
        format!("{{{}}}", items.join(", "))
    }
}

/// Fixed-capacity bitset over atom ids, ordered as the integer `Σ 2^id`.
#[derive(Clone, Default)]
pub struct AtomSet {
    words: Vec<u64>,
}

impl AtomSet {
    pub fn new(capacity: usize) -> Self {
        AtomSet {
            words: vec![0; capacity.div_ceil(64).max(1)],
        }
    }

    pub fn from_mask(capacity: usize, mask: u64) -> Self {
        let mut s = AtomSet::new(capacity);
        s.words[0] = mask;
        s
    }

    pub fn from_ids(capacity: usize, ids: impl IntoIterator<Item = AtomId>) -> Self {
        let mut s = AtomSet::new(capacity);
        for i in ids {
            s.insert(i);
        }
        s
    }

    fn ensure(&mut self, id: AtomId) {
        let w = id as usize / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
    }

    pub fn insert(&mut self, id: AtomId) {
        self.ensure(id);
        self.words[id as usize / 64] |= 1 << (id % 64);
    }

    pub fn remove(&mut self, id: AtomId) {
        if let Some(w) = self.words.get_mut(id as usize / 64) {
            *w &= !(1 << (id % 64));
        }
    }

    pub fn contains(&self, id: AtomId) -> bool {
        self.words
            .get(id as usize / 64)
            .is_some_and(|w| w & (1 << (id % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = AtomId> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                Some((wi * 64) as AtomId + b)
            })
        })
    }

    pub fn is_subset(&self, other: &AtomSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn as_mask(&self) -> u64 {
        debug_assert!(self.words.iter().skip(1).all(|w| *w == 0));
        self.words.first().copied().unwrap_or(0)
    }
}

impl Ord for AtomSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.words.len().max(other.words.len());
        for i in (0..n).rev() {
            let a = self.words.get(i).copied().unwrap_or(0);
            let b = other.words.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialEq for AtomSet {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AtomSet {}

impl std::hash::Hash for AtomSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let end = self.words.iter().rposition(|w| *w != 0).map_or(0, |i| i + 1);
        self.words[..end].hash(state);
    }
}

impl PartialOrd for AtomSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Classical truth of `f` in `interp`; every atom must belong to `universe`.
pub fn satisfies(universe: &Universe, interp: &Interpretation, f: &Formula<GroundAtom>) -> Result<bool> {
    let mut unknown = None;
    f.for_each_atom(&mut |a| {
        if unknown.is_none() && !universe.contains(a) {
            unknown = Some(a.to_string());
        }
    });
    if let Some(a) = unknown {
        return Err(Error::UnknownAtom(a));
    }
    for a in interp {
        if !universe.contains(a) {
            return Err(Error::UnknownAtom(a.to_string()));
        }
    }
    Ok(f.eval(&|a: &GroundAtom| interp.contains(a)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> GroundAtom {
        GroundAtom::prop(s)
    }

    #[test]
    fn order_is_bitmask_ascending() {
        let a = AtomSet::from_ids(70, [0]);
        let b = AtomSet::from_ids(70, [1]);
        let c = AtomSet::from_ids(70, [0, 1]);
        let d = AtomSet::from_ids(70, [65]);
        let mut v = vec![d.clone(), c.clone(), b.clone(), a.clone(), AtomSet::new(70)];
        v.sort();
        assert_eq!(v, vec![AtomSet::new(70), a, b, c, d]);
    }

    #[test]
    fn iter_and_subset() {
        let s = AtomSet::from_ids(130, [3, 64, 129]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 64, 129]);
        assert_eq!(s.len(), 3);
        assert!(AtomSet::from_ids(130, [64]).is_subset(&s));
        assert!(!AtomSet::from_ids(130, [65]).is_subset(&s));
    }

    #[test]
    fn satisfies_examples() {
        let u = Universe::from_atoms([p("p"), p("bird"), p("resident")]);
        let taut = Formula::disj(vec![Formula::Atom(p("p")), Formula::not(Formula::Atom(p("p")))]);
        assert!(satisfies(&u, &[p("p")].into(), &taut).unwrap());
        let nn = Formula::not(Formula::not(Formula::Atom(p("p"))));
        assert!(!satisfies(&u, &Interpretation::new(), &nn).unwrap());
        let imp = Formula::implies(Formula::Atom(p("resident")), Formula::Atom(p("bird")));
        assert!(satisfies(&u, &[p("bird")].into(), &imp).unwrap());
        assert!(matches!(
            satisfies(&u, &Interpretation::new(), &Formula::Atom(p("zzz"))),
            Err(Error::UnknownAtom(_))
        ));
    }
}
