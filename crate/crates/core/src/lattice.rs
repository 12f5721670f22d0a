//! The prefix order and the median structure it induces.
//!
//! `x ⊂ y` holds when `l(x) + l(x⁻¹y) = l(y)`, i.e. some geodesic from `1` to
//! `y` passes through `x`. Under this order the group is a meet-semilattice
//! and the median of three points is `Y(x, y, z) = z·((z⁻¹x) ∩ (z⁻¹y))`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::Error;
use crate::trace::{remove_first, Element, Raag};

/// A cell `[x, y]`: every point on some geodesic from `x` to `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub from: Element,
    pub to: Element,
    /// Sorted in shortlex order.
    pub elements: Vec<Element>,
}

impl Interval {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, z: &Element) -> bool {
        self.elements.binary_search(z).is_ok()
    }
}

impl Raag {
    /// Distance in the Cayley graph, `l(x⁻¹y)`.
    pub fn distance(&self, x: &Element, y: &Element) -> usize {
        self.ldiv(x, y).len()
    }

    /// `x ⊂ y`.
    pub fn is_prefix(&self, x: &Element, y: &Element) -> bool {
        x.len() <= y.len() && x.len() + self.distance(x, y) == y.len()
    }

    /// Greatest common lower bound under `⊂`.
    ///
    /// Any common first letter lies below the meet, and stripping it from both
    /// sides commutes with taking the meet, so the meet is built one common
    /// first letter at a time.
    pub fn meet(&self, x: &Element, y: &Element) -> Element {
        let mut x = x.letters().to_vec();
        let mut y = y.letters().to_vec();
        let mut prefix = Vec::new();
        loop {
            let fy = self.first_letters_of(&y);
            let common = self.first_letters_of(&x).into_iter().find(|s| fy.contains(s));
            let Some(s) = common else { break };
            prefix.push(s);
            remove_first(&mut x, s);
            remove_first(&mut y, s);
        }
        Element::from_canonical(self.canonicalize(prefix))
    }

    /// The median `Y(x, y, z)`, computed from the shortest argument.
    pub fn median(&self, x: &Element, y: &Element, z: &Element) -> Element {
        let (b, p, q) = if x.len() <= y.len() && x.len() <= z.len() {
            (x, y, z)
        } else if y.len() <= z.len() {
            (y, x, z)
        } else {
            (z, x, y)
        };
        let bi = self.inv(b);
        let m = self.meet(&self.mul(&bi, p), &self.mul(&bi, q));
        self.mul(b, &m)
    }

    /// `Y(x, a, y)`: the join of `x` and `y` in the semilattice whose top
    /// element is `a`.
    pub fn internal_join(&self, a: &Element, x: &Element, y: &Element) -> Element {
        self.median(x, a, y)
    }

    /// Least common upper bound under `⊂`, or `None` when `x` and `y` have no
    /// common upper bound.
    pub fn join(&self, x: &Element, y: &Element) -> Option<Element> {
        let m = self.meet(x, y);
        let z = self.product([x, &self.inv(&m), y]);
        (self.is_prefix(x, &z) && self.is_prefix(y, &z)).then_some(z)
    }

    /// `x ⊥ y`: trivial meet and a common upper bound exist.
    ///
    /// Decided from supports: they must be disjoint and every generator of one
    /// must commute with every generator of the other.
    pub fn is_orthogonal(&self, x: &Element, y: &Element) -> bool {
        let sx = self.support(x);
        let sy = self.support(y);
        sx.iter().all(|g| !self.depends(g).intersects(sy))
    }

    /// `x ⊥ y` decided from the definition (meet and join).
    pub fn is_orthogonal_by_definition(&self, x: &Element, y: &Element) -> bool {
        self.meet(x, y).is_identity() && self.join(x, y).is_some()
    }

    /// Whether `z ∈ [x, y]`, by the distance identity.
    pub fn in_interval(&self, x: &Element, z: &Element, y: &Element) -> bool {
        self.distance(x, z) + self.distance(z, y) == self.distance(x, y)
    }

    /// All prefixes of `v`, i.e. the cell `[1, v]`, enumerated breadth first:
    /// the successors of a prefix `p` are `p·s` for `s` a first letter of
    /// `p⁻¹v`.
    fn prefixes(&self, v: &Element) -> Result<Vec<Element>, Error> {
        let cap = self.limits().interval_cap;
        let mut seen: BTreeMap<Element, Element> = BTreeMap::new();
        seen.insert(Element::identity(), v.clone());
        let mut frontier = alloc::vec![(Element::identity(), v.clone())];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for (p, rest) in frontier {
                for s in self.first_letters(&rest) {
                    let q = self.mul_letter(&p, s);
                    if seen.contains_key(&q) {
                        continue;
                    }
                    let r = self.strip_first(&rest, s);
                    seen.insert(q.clone(), r.clone());
                    if seen.len() > cap {
                        return Err(Error::CapExceeded { what: "interval", cap });
                    }
                    next.push((q, r));
                }
            }
            frontier = next;
        }
        Ok(seen.into_keys().collect())
    }

    /// The cell `[x, y]`.
    pub fn interval(&self, x: &Element, y: &Element) -> Result<Interval, Error> {
        let v = self.ldiv(x, y);
        let mut elements: Vec<Element> = self.prefixes(&v)?.iter().map(|p| self.mul(x, p)).collect();
        elements.sort();
        Ok(Interval { from: x.clone(), to: y.clone(), elements })
    }

    /// Ends of the cell: the points `a` with `[x, y] = [a, ¬a]`.
    ///
    /// For `[1, v]` these are the prefixes `a` with `a ⊥ a⁻¹v`; other cells are
    /// handled by translating to the identity.
    pub fn boundary(&self, cell: &Interval) -> Vec<Element> {
        let v = self.ldiv(&cell.from, &cell.to);
        let mut out: Vec<Element> = cell
            .elements
            .iter()
            .filter(|z| {
                let a = self.ldiv(&cell.from, z);
                self.is_orthogonal(&a, &self.ldiv(&a, &v))
            })
            .cloned()
            .collect();
        out.sort();
        out
    }

    /// Every element of length at most `r`, in shortlex order.
    pub fn ball(&self, r: usize) -> Result<Vec<Element>, Error> {
        let cap = self.limits().ball_cap;
        let mut all = BTreeSet::new();
        all.insert(Element::identity());
        let mut frontier = alloc::vec![Element::identity()];
        for _ in 0..r {
            let mut next = Vec::new();
            for x in &frontier {
                for s in self.graph().letters() {
                    let y = self.mul_letter(x, s);
                    if y.len() == x.len() + 1 && all.insert(y.clone()) {
                        if all.len() > cap {
                            return Err(Error::CapExceeded { what: "ball", cap });
                        }
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        Ok(all.into_iter().collect())
    }

    /// Reference quasidirection of a compatible preorder: `a ∙ b` is the join
    /// toward `a` of `U = {x ∈ [a, b] : a ⪯ x ∧ b ⪯ x}`.
    pub fn oracle_qdir<P>(&self, a: &Element, b: &Element, preceq: P) -> Result<Element, Error>
    where
        P: Fn(&Element, &Element) -> bool,
    {
        let cell = self.interval(a, b)?;
        let mut upper = cell.elements.iter().filter(|x| preceq(a, x) && preceq(b, x));
        let first = upper.next().ok_or_else(|| {
            Error::InvariantViolation(alloc::format!(
                "no common upper bound of {} and {} inside their cell",
                self.render(a),
                self.render(b)
            ))
        })?;
        Ok(upper.fold(first.clone(), |acc, u| self.internal_join(a, &acc, u)))
    }

    /// Elements of the cell `[a, b]` that lie above both ends in `preceq`.
    pub fn upper_set<P>(&self, a: &Element, b: &Element, preceq: P) -> Result<Vec<Element>, Error>
    where
        P: Fn(&Element, &Element) -> bool,
    {
        Ok(self.interval(a, b)?.elements.into_iter().filter(|x| preceq(a, x) && preceq(b, x)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_graph;
    use crate::trace::Limits;
    use alloc::string::String;

    fn f2xz() -> Raag {
        Raag::new(parse_graph("gens: a b c\nedge: a c\nedge: b c").unwrap())
    }
    fn free2() -> Raag {
        Raag::new(parse_graph("gens: a b").unwrap())
    }
    fn z2() -> Raag {
        Raag::new(parse_graph("gens: a b\nedge: a b").unwrap())
    }
    fn free1() -> Raag {
        Raag::new(parse_graph("gens: a").unwrap())
    }

    fn e(g: &Raag, s: &str) -> Element {
        g.parse(s).unwrap()
    }

    fn names(g: &Raag, xs: &[Element]) -> Vec<String> {
        xs.iter().map(|x| g.render(x)).collect()
    }

    #[test]
    fn prefix_examples() {
        let g = f2xz();
        let x = e(&g, "a b^-1 c");
        assert!(g.is_prefix(&g.identity(), &x));
        assert!(g.is_prefix(&e(&g, "c"), &e(&g, "a c")));
        let f = free2();
        assert!(!f.is_prefix(&e(&f, "b"), &e(&f, "a b")));
        assert!(f.is_prefix(&e(&f, "a"), &e(&f, "a b")));
    }

    #[test]
    fn meet_examples() {
        let g = f2xz();
        let x = e(&g, "a b c");
        assert!(g.meet(&x, &g.identity()).is_identity());
        assert_eq!(g.meet(&x, &x), x);
        assert_eq!(g.render(&g.meet(&e(&g, "a b"), &e(&g, "a c"))), "a");
        assert_eq!(g.render(&g.meet(&e(&g, "c a b"), &e(&g, "a c^2"))), "a c");
    }

    #[test]
    fn median_examples() {
        let g = f2xz();
        let (x, y) = (e(&g, "a b^-1"), e(&g, "c b"));
        assert_eq!(g.median(&x, &y, &x), x);
        assert_eq!(g.median(&g.identity(), &x, &y), g.meet(&x, &y));
        let h = z2();
        assert_eq!(h.render(&h.median(&e(&h, "a"), &e(&h, "b"), &e(&h, "a b"))), "a b");
    }

    #[test]
    fn join_examples() {
        let g = f2xz();
        let x = e(&g, "a b");
        assert_eq!(g.join(&x, &g.identity()), Some(x));
        assert_eq!(g.render(&g.join(&e(&g, "a"), &e(&g, "c")).unwrap()), "a c");
        let f = free2();
        assert_eq!(f.join(&e(&f, "a"), &e(&f, "b")), None);
    }

    #[test]
    fn orthogonality_examples() {
        let g = f2xz();
        let x = e(&g, "a b");
        assert!(g.is_orthogonal(&g.identity(), &x));
        assert!(!g.is_orthogonal(&e(&g, "a"), &e(&g, "a^-1")));
        assert!(g.is_orthogonal(&e(&g, "a"), &e(&g, "c")));
        assert!(!g.is_orthogonal(&e(&g, "a"), &e(&g, "b")));
        for (p, q) in [("a", "a^-1"), ("a", "c"), ("a", "b"), ("a b", "c^2"), ("1", "a")] {
            let (p, q) = (e(&g, p), e(&g, q));
            assert_eq!(g.is_orthogonal(&p, &q), g.is_orthogonal_by_definition(&p, &q));
        }
    }

    #[test]
    fn interval_examples() {
        let g = f2xz();
        let x = e(&g, "a c^-1");
        assert_eq!(g.interval(&x, &x).unwrap().elements, alloc::vec![x]);
        let h = z2();
        let cell = h.interval(&h.identity(), &e(&h, "a b")).unwrap();
        assert_eq!(names(&h, &cell.elements), ["1", "a", "b", "a b"]);
        let f = free2();
        let cell = f.interval(&f.identity(), &e(&f, "a b")).unwrap();
        assert_eq!(names(&f, &cell.elements), ["1", "a", "a b"]);
    }

    #[test]
    fn translated_interval() {
        let g = f2xz();
        let (x, y) = (e(&g, "b"), e(&g, "b a c"));
        let cell = g.interval(&x, &y).unwrap();
        assert_eq!(names(&g, &cell.elements), ["b", "b a", "b c", "b a c"]);
        assert!(cell.elements.iter().all(|z| g.in_interval(&x, z, &y)));
    }

    #[test]
    fn interval_cap_is_an_error() {
        let h = z2().with_limits(Limits { interval_cap: 5, ..Limits::default() });
        let err = h.interval(&h.identity(), &e(&h, "a^2 b^2")).unwrap_err();
        assert_eq!(err, Error::CapExceeded { what: "interval", cap: 5 });
    }

    #[test]
    fn boundary_examples() {
        let g = f2xz();
        let cell = g.interval(&g.identity(), &e(&g, "a")).unwrap();
        assert_eq!(names(&g, &g.boundary(&cell)), ["1", "a"]);
        let cell = g.interval(&g.identity(), &e(&g, "a c")).unwrap();
        assert_eq!(names(&g, &g.boundary(&cell)), ["1", "a", "c", "a c"]);
        let f = free2();
        let cell = f.interval(&f.identity(), &e(&f, "a b")).unwrap();
        assert_eq!(names(&f, &f.boundary(&cell)), ["1", "a b"]);
    }

    #[test]
    fn ball_examples() {
        let g = f2xz();
        assert_eq!(g.ball(0).unwrap(), alloc::vec![g.identity()]);
        let h = free1();
        assert_eq!(names(&h, &h.ball(2).unwrap()), ["1", "a", "a^-1", "a^2", "a^-2"]);
        assert_eq!(free2().ball(1).unwrap().len(), 5);
        assert_eq!(free2().ball(3).unwrap().len(), 53);
        assert_eq!(z2().ball(3).unwrap().len(), 25);
        assert_eq!(g.ball(3).unwrap().len(), 99);
        let capped = g.with_limits(Limits { ball_cap: 10, ..Limits::default() });
        assert!(matches!(capped.ball(2), Err(Error::CapExceeded { what: "ball", .. })));
    }

    #[test]
    fn oracle_qdir_examples() {
        let f = free2();
        let x = e(&f, "a b^-1");
        assert_eq!(f.oracle_qdir(&x, &x, |_, _| true).unwrap(), x);
        // Under the total preorder every point is an upper bound, and the
        // join toward `a` of the whole cell is `a` itself.
        let (p, q) = (e(&f, "a"), e(&f, "b a"));
        assert_eq!(f.oracle_qdir(&p, &q, |_, _| true).unwrap(), p);
        assert!(matches!(f.oracle_qdir(&p, &q, |_, _| false), Err(Error::InvariantViolation(_))));
    }
}
