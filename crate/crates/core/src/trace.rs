//! Canonical forms and the group law.
//!
//! Every [`Element`] stores the shortlex-least reduced word of its group
//! element. Reduction scans backwards from the end of the partial word: an
//! incoming letter `s` cancels against the last letter it cannot commute
//! past, if that letter is `s⁻¹`. The reduced word is then linearised
//! greedily, always emitting the least letter that commutes with everything
//! before it, which yields the lexicographically least word of the trace.

use alloc::collections::BinaryHeap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};
use core::fmt;

use crate::error::Error;
use crate::presentation::{CommutationGraph, GenMask, Letter, Word};

/// Removes the first occurrence of the generator of `s`, which must be a
/// first letter of the reduced word `letters`.
pub(crate) fn remove_first(letters: &mut Vec<Letter>, s: Letter) {
    let pos = letters.iter().position(|l| l.gen() == s.gen()).expect("letter not present");
    debug_assert_eq!(letters[pos], s);
    letters.remove(pos);
}

/// A group element in canonical (shortlex-least reduced) form.
///
/// Elements are only produced by a [`Raag`]; mixing elements of different
/// groups is a logic error that is not detected.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Element {
    letters: Vec<Letter>,
}

impl Element {
    pub fn identity() -> Self {
        Element { letters: Vec::new() }
    }

    pub(crate) fn from_canonical(letters: Vec<Letter>) -> Self {
        Element { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Word length `l(x)` with respect to the generators.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same as [`Element::is_identity`].
    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn to_word(&self) -> Word {
        Word(self.letters.clone())
    }
}

/// Shortlex order: shorter first, then lexicographic in letter order.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters.len().cmp(&other.letters.len()).then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.letters.iter()).finish()
    }
}

/// Size limits for the enumerating operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of elements of an enumerated cell `[x, y]`.
    pub interval_cap: usize,
    /// Maximum number of cyclically reduced conjugates explored.
    pub conjugate_cap: usize,
    /// Maximum number of elements of an enumerated ball.
    pub ball_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { interval_cap: 20_000, conjugate_cap: 100_000, ball_cap: 2_000_000 }
    }
}

/// A right-angled Artin group together with its enumeration limits.
#[derive(Clone, Debug)]
pub struct Raag {
    graph: CommutationGraph,
    /// Generators that do not commute with `g`, including `g` itself.
    depends: Vec<GenMask>,
    limits: Limits,
}

impl Raag {
    pub fn new(graph: CommutationGraph) -> Self {
        let all = if graph.rank() == 128 { u128::MAX } else { (1u128 << graph.rank()) - 1 };
        let depends = (0..graph.rank()).map(|g| GenMask(all & !graph.commuting_set(g).0)).collect();
        Raag { graph, depends, limits: Limits::default() }
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn graph(&self) -> &CommutationGraph {
        &self.graph
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn rank(&self) -> usize {
        self.graph.rank()
    }

    /// All generators, as a mask.
    pub fn all_generators(&self) -> GenMask {
        let mut m = GenMask::EMPTY;
        for g in 0..self.rank() {
            m.insert(g);
        }
        m
    }

    /// Whether letters over generators `a` and `b` may be swapped.
    pub fn letters_commute(&self, a: Letter, b: Letter) -> bool {
        !self.depends[a.gen()].contains(b.gen())
    }

    pub(crate) fn depends(&self, gen: usize) -> GenMask {
        self.depends[gen]
    }

    pub fn identity(&self) -> Element {
        Element::identity()
    }

    pub fn letter(&self, l: Letter) -> Element {
        Element::from_canonical(alloc::vec![l])
    }

    pub fn generator(&self, gen: usize) -> Element {
        self.letter(Letter::positive(gen))
    }

    /// Parses a word and normalises it.
    pub fn parse(&self, text: &str) -> Result<Element, Error> {
        Ok(self.normalize(&self.graph.parse_word(text)?))
    }

    pub fn render(&self, x: &Element) -> String {
        self.graph.render_letters(&x.letters)
    }

    fn push_reduced(&self, out: &mut Vec<Letter>, s: Letter) {
        let dep = self.depends[s.gen()];
        for j in (0..out.len()).rev() {
            let t = out[j];
            if dep.contains(t.gen()) {
                if t == s.inverse() {
                    out.remove(j);
                    return;
                }
                break;
            }
        }
        out.push(s);
    }

    /// Lexicographically least linearisation of a reduced word.
    ///
    /// Each letter waits on the last earlier occurrence of every generator it
    /// does not commute with; the least ready letter is emitted first.
    pub(crate) fn canonicalize(&self, rest: Vec<Letter>) -> Vec<Letter> {
        let n = rest.len();
        if n < 2 {
            return rest;
        }
        let mut last: Vec<Option<usize>> = alloc::vec![None; self.graph.rank()];
        let mut waiting = alloc::vec![0usize; n];
        let mut after: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
        let mut ready = BinaryHeap::new();
        for (k, l) in rest.iter().enumerate() {
            for h in self.depends[l.gen()].iter() {
                if let Some(j) = last[h] {
                    after[j].push(k);
                    waiting[k] += 1;
                }
            }
            last[l.gen()] = Some(k);
            if waiting[k] == 0 {
                ready.push(Reverse((*l, k)));
            }
        }
        let mut out = Vec::with_capacity(n);
        while let Some(Reverse((l, k))) = ready.pop() {
            out.push(l);
            for &j in &after[k] {
                waiting[j] -= 1;
                if waiting[j] == 0 {
                    ready.push(Reverse((rest[j], j)));
                }
            }
        }
        out
    }

    fn reduce_from(&self, start: Vec<Letter>, letters: &[Letter]) -> Element {
        let mut out = start;
        for &s in letters {
            self.push_reduced(&mut out, s);
        }
        Element::from_canonical(self.canonicalize(out))
    }

    /// Canonical form of the element represented by `w`.
    pub fn normalize(&self, w: &Word) -> Element {
        self.reduce_from(Vec::with_capacity(w.len()), w.letters())
    }

    pub fn normalize_letters(&self, letters: &[Letter]) -> Element {
        self.reduce_from(Vec::with_capacity(letters.len()), letters)
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        if x.is_identity() {
            return y.clone();
        }
        if y.is_identity() {
            return x.clone();
        }
        self.reduce_from(x.letters.clone(), &y.letters)
    }

    /// `x · s` for a single letter.
    pub fn mul_letter(&self, x: &Element, s: Letter) -> Element {
        self.reduce_from(x.letters.clone(), &[s])
    }

    /// `s · x` for a single letter.
    pub fn letter_mul(&self, s: Letter, x: &Element) -> Element {
        self.reduce_from(alloc::vec![s], &x.letters)
    }

    /// Product of a sequence of elements.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Element>) -> Element {
        let mut out = Vec::new();
        for f in factors {
            for &s in &f.letters {
                self.push_reduced(&mut out, s);
            }
        }
        Element::from_canonical(self.canonicalize(out))
    }

    pub fn inv(&self, x: &Element) -> Element {
        let rev: Vec<Letter> = x.letters.iter().rev().map(|l| l.inverse()).collect();
        Element::from_canonical(self.canonicalize(rev))
    }

    /// `x · y⁻¹`.
    pub fn div(&self, x: &Element, y: &Element) -> Element {
        self.mul(x, &self.inv(y))
    }

    /// `x⁻¹ · y`, the displacement from `x` to `y`.
    pub fn ldiv(&self, x: &Element, y: &Element) -> Element {
        self.mul(&self.inv(x), y)
    }

    /// `x · w · x⁻¹`.
    pub fn conjugate(&self, x: &Element, w: &Element) -> Element {
        self.product([x, w, &self.inv(x)])
    }

    pub fn pow(&self, x: &Element, n: i64) -> Element {
        let base = if n < 0 { self.inv(x) } else { x.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Element::identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// Letters `s` with `l(s⁻¹x) = l(x) − 1`, in letter order.
    ///
    /// A letter of the canonical word is first iff it commutes with every
    /// earlier letter.
    pub fn first_letters(&self, x: &Element) -> Vec<Letter> {
        self.first_letters_of(&x.letters)
    }

    /// Letters `s` with `l(xs⁻¹) = l(x) − 1`, in letter order.
    pub fn last_letters(&self, x: &Element) -> Vec<Letter> {
        let mut seen = GenMask::EMPTY;
        let mut out = Vec::new();
        for &l in x.letters.iter().rev() {
            if !seen.intersects(self.depends[l.gen()]) {
                out.push(l);
            }
            seen.insert(l.gen());
        }
        out.sort_unstable();
        out
    }

    /// `s⁻¹ · x` for a first letter `s` of `x`.
    pub(crate) fn strip_first(&self, x: &Element, s: Letter) -> Element {
        let mut rest = x.letters.clone();
        remove_first(&mut rest, s);
        Element::from_canonical(self.canonicalize(rest))
    }

    /// First letters of any reduced word for an element, in letter order.
    pub(crate) fn first_letters_of(&self, letters: &[Letter]) -> Vec<Letter> {
        let mut seen = GenMask::EMPTY;
        let mut out = Vec::new();
        for &l in letters {
            if !seen.intersects(self.depends[l.gen()]) {
                out.push(l);
            }
            seen.insert(l.gen());
        }
        out.sort_unstable();
        out
    }

    /// Generators occurring in the canonical word.
    pub fn support(&self, x: &Element) -> GenMask {
        let mut m = GenMask::EMPTY;
        for l in &x.letters {
            m.insert(l.gen());
        }
        m
    }

    /// Word problem: equality of canonical forms.
    pub fn equal(&self, x: &Element, y: &Element) -> bool {
        x == y
    }

    /// Number of occurrences of each signed letter, indexed by
    /// [`Letter::index`].
    pub fn letter_counts(&self, x: &Element) -> Vec<usize> {
        let mut counts = alloc::vec![0; 2 * self.rank()];
        for l in &x.letters {
            counts[l.index()] += 1;
        }
        counts
    }

    /// Whether `x` and `y` commute in the group.
    pub fn commute(&self, x: &Element, y: &Element) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_graph;
    use alloc::vec;

    fn f2xz() -> Raag {
        Raag::new(parse_graph("gens: a b c\nedge: a c\nedge: b c").unwrap())
    }

    fn free2() -> Raag {
        Raag::new(parse_graph("gens: a b").unwrap())
    }

    fn z2() -> Raag {
        Raag::new(parse_graph("gens: a b\nedge: a b").unwrap())
    }

    fn e(g: &Raag, s: &str) -> Element {
        g.parse(s).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let g = f2xz();
        assert!(e(&g, "a a^-1").is_identity());
        assert_eq!(g.render(&e(&g, "a c a^-1")), "c");
        let f = free2();
        let x = e(&f, "a b a^-1");
        assert_eq!(f.render(&x), "a b a^-1");
        assert_eq!(x.len(), 3);
    }

    #[test]
    fn canonical_form_is_shortlex_least() {
        let g = f2xz();
        assert_eq!(g.render(&e(&g, "c a")), "a c");
        assert_eq!(g.render(&e(&g, "c^-1 b c^2 a^-1")), "b a^-1 c");
        assert_eq!(g.render(&e(&g, "b c a")), "b a c");
        assert_eq!(e(&g, "c b"), e(&g, "b c"));
    }

    #[test]
    fn cancellation_through_commuting_letters() {
        let g = f2xz();
        assert!(e(&g, "a c b c^-1 b^-1 a^-1").is_identity());
        assert_eq!(g.render(&e(&g, "a c a^-1 c^-1")), "1");
        let f = free2();
        assert_eq!(f.render(&e(&f, "a b b^-1 a^-1 b")), "b");
    }

    #[test]
    fn multiply_examples() {
        let g = z2();
        let x = g.mul(&e(&g, "a"), &e(&g, "b"));
        assert_eq!(g.render(&x), "a b");
        let f = free2();
        let y = e(&f, "a b^-1 a");
        assert_eq!(f.mul(&y, &f.identity()), y);
        assert!(f.mul(&y, &f.inv(&y)).is_identity());
    }

    #[test]
    fn invert_examples() {
        let f = free2();
        assert!(f.inv(&f.identity()).is_identity());
        assert_eq!(f.render(&f.inv(&e(&f, "a b"))), "b^-1 a^-1");
        let g = f2xz();
        let x = e(&g, "a c");
        assert_eq!(g.inv(&g.inv(&x)), x);
        assert_eq!(g.render(&g.inv(&x)), "a^-1 c^-1");
    }

    #[test]
    fn power_examples() {
        let f = free2();
        let x = e(&f, "a b a^-1");
        assert!(f.pow(&x, 0).is_identity());
        assert_eq!(f.render(&f.pow(&e(&f, "a"), 3)), "a^3");
        assert_eq!(f.render(&f.pow(&x, 2)), "a b^2 a^-1");
        assert_eq!(f.pow(&x, -2), f.inv(&f.pow(&x, 2)));
        assert_eq!(f.render(&f.pow(&e(&f, "a b"), 3)), "a b a b a b");
    }

    #[test]
    fn first_letters_examples() {
        let g = f2xz();
        assert!(g.first_letters(&g.identity()).is_empty());
        assert_eq!(g.first_letters(&e(&g, "a c")), vec![Letter::positive(0), Letter::positive(2)]);
        let f = free2();
        assert_eq!(f.first_letters(&e(&f, "a b")), vec![Letter::positive(0)]);
        assert_eq!(f.last_letters(&e(&f, "a b")), vec![Letter::positive(1)]);
        assert_eq!(f.first_letters(&e(&f, "a a")), vec![Letter::positive(0)]);
    }

    #[test]
    fn first_letters_match_length_definition() {
        let g = f2xz();
        for w in ["a c", "b c^-1 a", "c^2 a b^-1 a", "a b a^-1 c"] {
            let x = e(&g, w);
            let brute: Vec<Letter> =
                g.graph().letters().filter(|&s| g.letter_mul(s.inverse(), &x).len() + 1 == x.len()).collect();
            assert_eq!(g.first_letters(&x), brute, "{w}");
        }
    }

    #[test]
    fn support_examples() {
        let g = f2xz();
        assert!(g.support(&g.identity()).is_empty());
        let s = g.support(&e(&g, "a b^-1 a"));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(g.support(&e(&g, "c^3")).iter().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn equality_examples() {
        let g = f2xz();
        assert!(g.equal(&e(&g, "a c"), &e(&g, "c a")));
        let f = free2();
        assert!(!f.equal(&e(&f, "a b"), &e(&f, "b a")));
    }

    #[test]
    fn shortlex_order() {
        let f = free2();
        let mut v = [e(&f, "b"), e(&f, "a b"), e(&f, "1"), e(&f, "a^-1"), e(&f, "a")];
        v.sort();
        let r: Vec<String> = v.iter().map(|x| f.render(x)).collect();
        assert_eq!(r, ["1", "a", "a^-1", "b", "a b"]);
    }
}
