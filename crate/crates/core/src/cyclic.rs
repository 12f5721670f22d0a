//! Cyclic reduction, conjugacy and roots.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::presentation::Letter;
use crate::trace::{Element, Raag};

/// `w = u·v·u⁻¹` with `v` cyclically reduced and both products reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicReduction {
    pub conjugator: Element,
    pub core: Element,
}

/// Certificate that two elements are conjugate: `conjugator⁻¹ · from ·
/// conjugator = to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyWitness {
    pub conjugator: Element,
    /// Letters `s` of the cyclic moves `v ↦ s⁻¹·v·s` between the two cores.
    pub moves: Vec<Letter>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Raag {
    /// `w ∩ w⁻¹ = 1`.
    pub fn is_cyclically_reduced(&self, w: &Element) -> bool {
        self.meet(w, &self.inv(w)).is_identity()
    }

    /// Splits `w` as `u·v·u⁻¹` with `u = w ∩ w⁻¹`.
    pub fn cyclic_reduce(&self, w: &Element) -> CyclicReduction {
        let u = self.meet(w, &self.inv(w));
        let core = self.product([&self.inv(&u), w, &u]);
        CyclicReduction { conjugator: u, core }
    }

    /// Length-preserving cyclic moves out of `v`: `s⁻¹·v·s` for each first
    /// letter `s`.
    fn cyclic_moves(&self, v: &Element) -> Vec<(Letter, Element)> {
        self.first_letters(v)
            .into_iter()
            .map(|s| (s, self.mul_letter(&self.strip_first(v, s), s)))
            .filter(|(_, next)| next.len() == v.len())
            .collect()
    }

    /// Breadth-first closure of `v` under cyclic moves, recording for each
    /// reached element the element and letter it was reached from.
    fn conjugate_closure(
        &self,
        v: &Element,
        stop_at: Option<&Element>,
    ) -> Result<BTreeMap<Element, Option<(Element, Letter)>>, Error> {
        let cap = self.limits().conjugate_cap;
        let mut seen = BTreeMap::new();
        seen.insert(v.clone(), None);
        let mut frontier = alloc::vec![v.clone()];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for x in frontier {
                for (s, y) in self.cyclic_moves(&x) {
                    if seen.contains_key(&y) {
                        continue;
                    }
                    seen.insert(y.clone(), Some((x.clone(), s)));
                    if seen.len() > cap {
                        return Err(Error::CapExceeded { what: "conjugate closure", cap });
                    }
                    if stop_at == Some(&y) {
                        return Ok(seen);
                    }
                    next.push(y);
                }
            }
            frontier = next;
        }
        Ok(seen)
    }

    /// All cyclically reduced conjugates of a cyclically reduced `v`.
    pub fn cyclically_reduced_conjugates(&self, v: &Element) -> Result<Vec<Element>, Error> {
        if !self.is_cyclically_reduced(v) {
            return Err(Error::Precondition("element is not cyclically reduced"));
        }
        Ok(self.conjugate_closure(v, None)?.into_keys().collect())
    }

    /// Decides conjugacy and returns a certificate when `w1` and `w2` are
    /// conjugate.
    pub fn conjugacy_witness(&self, w1: &Element, w2: &Element) -> Result<Option<ConjugacyWitness>, Error> {
        let r1 = self.cyclic_reduce(w1);
        let r2 = self.cyclic_reduce(w2);
        if r1.core.len() != r2.core.len() {
            return Ok(None);
        }
        let closure = self.conjugate_closure(&r1.core, Some(&r2.core))?;
        if !closure.contains_key(&r2.core) {
            return Ok(None);
        }
        let mut moves = Vec::new();
        let mut at = &r2.core;
        while let Some(Some((prev, s))) = closure.get(at) {
            moves.push(*s);
            at = prev;
        }
        moves.reverse();
        // core2 = t⁻¹ core1 t with t the product of the move letters, so
        // w2 = c⁻¹ w1 c for c = u1 · t · u2⁻¹.
        let t = self.identity();
        let t = moves.iter().fold(t, |acc, &s| self.mul_letter(&acc, s));
        let conjugator = self.product([&r1.conjugator, &t, &self.inv(&r2.conjugator)]);
        Ok(Some(ConjugacyWitness { conjugator, moves }))
    }

    pub fn are_conjugate(&self, w1: &Element, w2: &Element) -> Result<bool, Error> {
        Ok(self.conjugacy_witness(w1, w2)?.is_some())
    }

    /// Checks a conjugacy certificate: `c⁻¹·w1·c = w2`.
    pub fn verify_conjugator(&self, w1: &Element, w2: &Element, c: &Element) -> bool {
        self.product([&self.inv(c), w1, c]) == *w2
    }

    /// The unique `x` with `xᵐ = w`, if any.
    pub fn mth_root(&self, w: &Element, m: usize) -> Option<Element> {
        assert!(m >= 1, "root degree must be positive");
        if m == 1 || w.is_identity() {
            return Some(w.clone());
        }
        let r = self.cyclic_reduce(w);
        let root = self.core_root(&r.core, m)?;
        Some(self.product([&r.conjugator, &root, &self.inv(&r.conjugator)]))
    }

    /// Root of a cyclically reduced element. A root `p` is itself cyclically
    /// reduced, so `pᵐ` is a reduced product and `p` is a prefix of the core
    /// whose letter counts are those of the core divided by `m`.
    fn core_root(&self, v: &Element, m: usize) -> Option<Element> {
        if !v.len().is_multiple_of(m) {
            return None;
        }
        let counts = self.letter_counts(v);
        if counts.iter().any(|c| c % m != 0) {
            return None;
        }
        let target: Vec<usize> = counts.iter().map(|c| c / m).collect();
        let mut used = alloc::vec![0usize; target.len()];
        let mut found = None;
        self.root_search(v, m, &target, &mut used, Element::identity(), v.clone(), &mut found);
        found
    }

    #[allow(clippy::too_many_arguments)]
    fn root_search(
        &self,
        v: &Element,
        m: usize,
        target: &[usize],
        used: &mut Vec<usize>,
        prefix: Element,
        rest: Element,
        found: &mut Option<Element>,
    ) {
        if found.is_some() {
            return;
        }
        if used.as_slice() == target {
            if self.pow(&prefix, m as i64) == *v {
                *found = Some(prefix);
            }
            return;
        }
        for s in self.first_letters(&rest) {
            if used[s.index()] == target[s.index()] {
                continue;
            }
            used[s.index()] += 1;
            let next = self.mul_letter(&prefix, s);
            let next_rest = self.strip_first(&rest, s);
            self.root_search(v, m, target, used, next, next_rest, found);
            used[s.index()] -= 1;
            if found.is_some() {
                return;
            }
        }
    }

    /// `(p, m)` with `pᵐ = w` and `m` maximal.
    pub fn max_root(&self, w: &Element) -> Result<(Element, usize), Error> {
        if w.is_identity() {
            return Err(Error::Precondition("the identity has no maximal root"));
        }
        let core = self.cyclic_reduce(w).core;
        let g = self.letter_counts(&core).into_iter().fold(0, gcd);
        for d in (1..=g).rev().filter(|d| g.is_multiple_of(*d)) {
            if let Some(p) = self.mth_root(w, d) {
                return Ok((p, d));
            }
        }
        unreachable!("every element is its own first root")
    }
}
