//! Brute-force references for the order layer and for conjugacy.
//!
//! These use only multiplication and canonical length, never the lattice
//! algorithms they are compared against.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use raag_core::{Element, Raag};

fn dist(g: &Raag, x: &Element, y: &Element) -> usize {
    g.ldiv(x, y).len()
}

/// `x ⊂ y` from the length definition.
pub fn is_prefix(g: &Raag, x: &Element, y: &Element) -> bool {
    x.len() + dist(g, x, y) == y.len()
}

/// The geodesic interval `[x, y]`: every point reached from `x` by letter
/// steps that bring it one closer to `y`.
pub fn interval(g: &Raag, x: &Element, y: &Element) -> BTreeSet<Element> {
    let mut seen = BTreeSet::new();
    seen.insert(x.clone());
    let mut frontier = vec![x.clone()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for z in &frontier {
            let d = dist(g, z, y);
            for s in g.graph().letters() {
                let step = g.mul_letter(z, s);
                if dist(g, &step, y) + 1 == d && seen.insert(step.clone()) {
                    next.push(step);
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Intervals between all pairs of a fixed element list.
pub struct IntervalTable {
    pub elements: Vec<Element>,
    index: BTreeMap<Element, usize>,
    cells: Vec<Vec<BTreeSet<Element>>>,
}

impl IntervalTable {
    pub fn new(g: &Raag, elements: Vec<Element>) -> Self {
        use rayon::prelude::*;
        let cells = elements.par_iter().map(|x| elements.iter().map(|y| interval(g, x, y)).collect()).collect();
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        IntervalTable { elements, index, cells }
    }

    pub fn cell(&self, i: usize, j: usize) -> &BTreeSet<Element> {
        &self.cells[i][j]
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// The unique common point of the three pairwise cells.
    pub fn median(&self, i: usize, j: usize, k: usize) -> Option<Element> {
        let (a, b, c) = (self.cell(i, j), self.cell(j, k), self.cell(i, k));
        let mut common = a.iter().filter(|z| b.contains(*z) && c.contains(*z));
        let m = common.next()?.clone();
        if common.next().is_some() {
            return None;
        }
        Some(m)
    }
}

/// Greatest common prefix: the longest element of `[1, x] ∩ [1, y]`.
pub fn meet(g: &Raag, x: &Element, y: &Element) -> Element {
    let one = g.identity();
    let px = interval(g, &one, x);
    let py = interval(g, &one, y);
    let common: Vec<&Element> = px.intersection(&py).collect();
    let top = common.iter().max_by_key(|e| e.len()).expect("identity is common");
    assert!(common.iter().all(|c| is_prefix(g, c, top)), "common prefixes have no maximum");
    (*top).clone()
}

/// Least upper bounds among a finite universe, by bitsets of upper sets.
pub struct UpperSets {
    universe: Vec<Element>,
    uppers: BTreeMap<Element, Vec<u64>>,
}

impl UpperSets {
    /// `universe` must be sorted by length so the first common upper bound
    /// found is a shortest one.
    pub fn new(g: &Raag, universe: Vec<Element>, bases: &[Element]) -> Self {
        use rayon::prelude::*;
        let words = universe.len().div_ceil(64);
        let uppers = bases
            .par_iter()
            .map(|x| {
                let mut bits = vec![0u64; words];
                for (k, u) in universe.iter().enumerate() {
                    if is_prefix(g, x, u) {
                        bits[k / 64] |= 1 << (k % 64);
                    }
                }
                (x.clone(), bits)
            })
            .collect();
        UpperSets { universe, uppers }
    }

    pub fn join(&self, g: &Raag, x: &Element, y: &Element) -> Option<Element> {
        let (a, b) = (&self.uppers[x], &self.uppers[y]);
        let common: Vec<usize> = a
            .iter()
            .zip(b)
            .enumerate()
            .flat_map(|(w, (p, q))| {
                let bits = p & q;
                (0..64).filter(move |k| bits >> k & 1 == 1).map(move |k| w * 64 + k)
            })
            .collect();
        let least = &self.universe[*common.first()?];
        assert!(common.iter().all(|&k| is_prefix(g, least, &self.universe[k])), "common upper bounds have no minimum");
        Some(least.clone())
    }
}

/// `{x·w·x⁻¹ : x ∈ conjugators}`.
pub fn conjugates(g: &Raag, w: &Element, conjugators: &[Element]) -> HashSet<Element> {
    conjugators.iter().map(|x| g.conjugate(x, w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::Fixture;

    #[test]
    fn interval_examples() {
        let g = Fixture::F2xZ.raag();
        let one = g.identity();
        let ac = g.parse("a c").unwrap();
        assert_eq!(interval(&g, &one, &ac).len(), 4);
        let ab = g.parse("a b").unwrap();
        assert_eq!(interval(&g, &one, &ab).len(), 3);
    }

    #[test]
    fn meet_example() {
        let g = Fixture::F2xZ.raag();
        let m = meet(&g, &g.parse("a b").unwrap(), &g.parse("a c").unwrap());
        assert_eq!(g.render(&m), "a");
    }

    #[test]
    fn conjugacy_example() {
        let g = Fixture::Free2.raag();
        let ball = g.ball(4).unwrap();
        let set = conjugates(&g, &g.parse("a b").unwrap(), &ball);
        assert!(set.contains(&g.parse("b a").unwrap()));
        assert!(!set.contains(&g.parse("a b^-1").unwrap()));
    }
}
