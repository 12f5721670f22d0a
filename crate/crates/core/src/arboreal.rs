//! Folding, axis, preorder and quasidirection attached to an element `w`.

use alloc::vec::Vec;

use crate::cyclic::CyclicReduction;
use crate::error::Error;
use crate::trace::{Element, Raag};

/// The dynamics of a fixed element `w`.
#[derive(Clone, Debug)]
pub struct AxisContext<'g> {
    raag: &'g Raag,
    w: Element,
    w_inv: Element,
    reduction: CyclicReduction,
}

impl Raag {
    pub fn axis(&self, w: &Element) -> AxisContext<'_> {
        AxisContext { raag: self, w: w.clone(), w_inv: self.inv(w), reduction: self.cyclic_reduce(w) }
    }
}

impl<'g> AxisContext<'g> {
    pub fn raag(&self) -> &'g Raag {
        self.raag
    }

    pub fn w(&self) -> &Element {
        &self.w
    }

    pub fn reduction(&self) -> &CyclicReduction {
        &self.reduction
    }

    /// The context of `w⁻¹`.
    pub fn inverse(&self) -> AxisContext<'g> {
        self.raag.axis(&self.w_inv)
    }

    /// `wⁿ·x`.
    pub fn shift(&self, n: i64, x: &Element) -> Element {
        self.raag.mul(&self.raag.pow(&self.w, n), x)
    }

    /// `φ_w(x) = Y(wx, x, w⁻¹x)`.
    pub fn fold_phi(&self, x: &Element) -> Element {
        let g = self.raag;
        g.median(&g.mul(&self.w, x), x, &g.mul(&self.w_inv, x))
    }

    /// `x ∈ X_w`, the fixed points of `φ_w`.
    pub fn in_axis(&self, x: &Element) -> bool {
        self.fold_phi(x) == *x
    }

    /// `x ⪯_w y ⟺ y ∈ [x, wy]`.
    pub fn preceq(&self, x: &Element, y: &Element) -> bool {
        let g = self.raag;
        let x_inv = g.inv(x);
        g.is_prefix(&g.mul(&x_inv, y), &g.product([&x_inv, &self.w, y]))
    }

    /// `x ∼_w y ⟺ y⁻¹x ⊥ y⁻¹wy`.
    pub fn sim(&self, x: &Element, y: &Element) -> bool {
        let g = self.raag;
        let y_inv = g.inv(y);
        g.is_orthogonal(&g.mul(&y_inv, x), &g.product([&y_inv, &self.w, y]))
    }

    /// `x ≡_w y`: no two distinct elements of `[x, y]` are `∼_w`-related.
    pub fn equiv(&self, x: &Element, y: &Element) -> Result<bool, Error> {
        let cell = self.raag.interval(x, y)?;
        let e = &cell.elements;
        Ok((0..e.len()).all(|i| (i + 1..e.len()).all(|j| !self.sim(&e[i], &e[j]))))
    }

    /// `x ≪_w y`.
    pub fn ll(&self, x: &Element, y: &Element) -> Result<bool, Error> {
        Ok(self.preceq(x, y) && self.equiv(x, y)?)
    }

    /// Returns the value of `f(n)` once it no longer depends on `n`. Every
    /// wall of the cell is crossed by the sequence before step `start`; the
    /// window re-checks the value over the following steps.
    fn stable_limit<F>(&self, start: usize, window: usize, mut f: F) -> Element
    where
        F: FnMut(&Element) -> Element,
    {
        let g = self.raag;
        let mut power = g.pow(&self.w, start as i64);
        let mut value = f(&power);
        let mut run = 0;
        while run < window {
            power = g.mul(&self.w, &power);
            let next = f(&power);
            if next == value {
                run += 1;
            } else {
                value = next;
                run = 0;
            }
        }
        value
    }

    /// `x ∙_w y = lim Y(x, y, wⁿ·φ_w(x))`.
    pub fn qdir(&self, x: &Element, y: &Element) -> Element {
        let g = self.raag;
        let fx = self.fold_phi(x);
        let span = g.distance(x, y);
        let start = g.distance(x, &fx) + span + 2;
        self.stable_limit(start, span + 2, |wn| g.median(x, y, &g.mul(wn, &fx)))
    }

    /// `x ∨_{w;a} y = lim Y(x, y, Y(wⁿφ_w(x), a, wⁿφ_w(y)))`.
    pub fn dir_join(&self, a: &Element, x: &Element, y: &Element) -> Element {
        let g = self.raag;
        let (fx, fy) = (self.fold_phi(x), self.fold_phi(y));
        let span = g.distance(x, y);
        let start = g.distance(x, &fx) + g.distance(y, &fy) + g.distance(a, x) + span + 2;
        self.stable_limit(start, span + 2, |wn| {
            let inner = g.median(&g.mul(wn, &fx), a, &g.mul(wn, &fy));
            g.median(x, y, &inner)
        })
    }

    fn require_axis(&self, a: &Element) -> Result<(), Error> {
        if self.in_axis(a) {
            Ok(())
        } else {
            Err(Error::Precondition("base point is not on the axis"))
        }
    }

    /// `x ∈ X_{w,a} = ⋃ₙ [w⁻ⁿa, wⁿa]`.
    pub fn in_axis_slice(&self, a: &Element, x: &Element) -> Result<bool, Error> {
        self.require_axis(a)?;
        let n = (self.raag.distance(a, x) + 1) as i64;
        Ok(self.raag.in_interval(&self.shift(-n, a), x, &self.shift(n, a)))
    }

    /// `Ψ_{w,a}(x) = Y(w⁻ⁿa, x, wⁿa)` for all large `n`.
    pub fn psi_fold(&self, a: &Element, x: &Element) -> Result<Element, Error> {
        self.require_axis(a)?;
        let g = self.raag;
        let at = |n: i64| g.median(&self.shift(-n, a), x, &self.shift(n, a));
        let mut n = (g.distance(a, x) + 1) as i64;
        let mut value = at(n);
        loop {
            let next = at(n + 1);
            if next == value {
                return Ok(value);
            }
            value = next;
            n += 1;
        }
    }

    /// Splits `x ∈ X_w` as `(y, z)` with `y ∼_w a`, `z ∈ X_{w,a}` and
    /// `x = y·a⁻¹·z = z·a⁻¹·y`.
    pub fn decompose_axis(&self, a: &Element, x: &Element) -> Result<(Element, Element), Error> {
        self.require_axis(a)?;
        if !self.in_axis(x) {
            return Err(Error::Precondition("element is not on the axis"));
        }
        let g = self.raag;
        let z = self.psi_fold(a, x)?;
        let y = g.product([x, &g.inv(&z), a]);
        Ok((y, z))
    }

    /// For `x ∈ X_w`, elements `u, v` commuting with `w` with
    /// `x ∈ [u·a, v·a]`.
    pub fn centralizer_bracket(&self, a: &Element, x: &Element) -> Result<(Element, Element), Error> {
        let g = self.raag;
        let (y, z) = self.decompose_axis(a, x)?;
        let n = (g.distance(a, &z) + 1) as i64;
        let t = g.div(&y, a);
        let u = g.mul(&t, &g.pow(&self.w, -n));
        let v = g.mul(&t, &g.pow(&self.w, n));
        Ok((u, v))
    }

    /// The points `w⁻ⁿa, …, wⁿa`.
    pub fn orbit(&self, a: &Element, n: usize) -> Vec<Element> {
        (-(n as i64)..=n as i64).map(|k| self.shift(k, a)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_graph;

    fn f2xz() -> Raag {
        Raag::new(parse_graph("gens: a b c\nedge: a c\nedge: b c").unwrap())
    }
    fn free2() -> Raag {
        Raag::new(parse_graph("gens: a b").unwrap())
    }
    fn e(g: &Raag, s: &str) -> Element {
        g.parse(s).unwrap()
    }

    #[test]
    fn fold_phi_examples() {
        let f = free2();
        let b = f.axis(&e(&f, "b"));
        assert!(b.fold_phi(&e(&f, "a")).is_identity());
        assert!(!b.in_axis(&e(&f, "a")));
        let g = f2xz();
        let c = g.axis(&e(&g, "c"));
        for x in g.ball(3).unwrap() {
            assert_eq!(c.fold_phi(&x), x);
        }
    }

    #[test]
    fn axis_of_powers() {
        let f = free2();
        let w = e(&f, "a b^-1");
        let ctx = f.axis(&w);
        let cube = f.axis(&f.pow(&w, 3));
        for x in f.ball(3).unwrap() {
            assert!(ctx.in_axis(&ctx.fold_phi(&x)));
            assert_eq!(ctx.in_axis(&x), cube.in_axis(&x));
        }
    }

    #[test]
    fn preceq_examples() {
        let f = free2();
        let w = e(&f, "a b");
        let ctx = f.axis(&w);
        assert!(ctx.preceq(&w, &w));
        assert!(ctx.preceq(&f.identity(), &w));
        let b = f.axis(&e(&f, "b"));
        assert!(b.preceq(&e(&f, "a"), &f.identity()));
    }

    #[test]
    fn sim_and_equiv_examples() {
        let g = f2xz();
        let c = g.axis(&e(&g, "c"));
        let one = g.identity();
        assert!(c.sim(&e(&g, "a"), &one));
        assert!(!c.equiv(&one, &e(&g, "a")).unwrap());
        assert!(c.equiv(&one, &e(&g, "c")).unwrap());
        let f = free2();
        let b = f.axis(&e(&f, "b"));
        assert!(!b.sim(&e(&f, "a"), &f.identity()));
        assert!(b.ll(&e(&f, "a"), &f.identity()).unwrap());
    }

    #[test]
    fn qdir_examples() {
        let f = free2();
        let b = f.axis(&e(&f, "b"));
        let one = f.identity();
        assert!(b.qdir(&one, &e(&f, "a")).is_identity());
        assert!(b.qdir(&one, &e(&f, "b^-1")).is_identity());
        let x = e(&f, "a b a");
        assert_eq!(b.qdir(&x, &x), x);
    }

    #[test]
    fn slice_examples() {
        let g = f2xz();
        let c = g.axis(&e(&g, "c"));
        let one = g.identity();
        assert!(c.in_axis_slice(&one, &one).unwrap());
        assert!(c.in_axis_slice(&one, &e(&g, "c^2")).unwrap());
        assert!(!c.in_axis_slice(&one, &e(&g, "a")).unwrap());
        assert!(c.psi_fold(&one, &e(&g, "a")).unwrap().is_identity());
        assert_eq!(c.psi_fold(&one, &e(&g, "c^2 a")).unwrap(), e(&g, "c^2"));
        let f = free2();
        let b = f.axis(&e(&f, "b"));
        assert!(b.in_axis_slice(&e(&f, "a"), &f.identity()).is_err());
    }

    #[test]
    fn decompose_axis_examples() {
        let g = f2xz();
        let c = g.axis(&e(&g, "c"));
        let one = g.identity();
        let x = e(&g, "a c^2");
        assert_eq!(c.decompose_axis(&one, &x).unwrap(), (e(&g, "a"), e(&g, "c^2")));
        assert_eq!(c.decompose_axis(&one, &one).unwrap(), (one.clone(), one.clone()));
        let shifted = c.shift(2, &one);
        assert_eq!(c.decompose_axis(&one, &shifted).unwrap(), (one.clone(), shifted));
    }

    #[test]
    fn dir_join_examples() {
        let f = free2();
        let b = f.axis(&e(&f, "b"));
        let one = f.identity();
        assert!(b.dir_join(&one, &e(&f, "a"), &e(&f, "a^-1")).is_identity());
        let x = e(&f, "a b");
        assert_eq!(b.dir_join(&one, &x, &x), x);
        let w = e(&f, "a b^-1");
        let ctx = f.axis(&w);
        assert_eq!(ctx.dir_join(&one, &one, &w), w);
    }

    #[test]
    fn centralizer_bracket_contains_axis_points() {
        let f = free2();
        let w = e(&f, "a b^-1");
        let ctx = f.axis(&w);
        let a = e(&f, "b");
        let a = ctx.fold_phi(&a);
        for x in f.ball(3).unwrap() {
            let x = ctx.fold_phi(&x);
            let (u, v) = ctx.centralizer_bracket(&a, &x).unwrap();
            assert!(f.commute(&u, &w) && f.commute(&v, &w));
            assert!(f.in_interval(&f.mul(&u, &a), &x, &f.mul(&v, &a)));
        }
    }
}
