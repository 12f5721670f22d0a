//! Primitive decomposition, centralizers and the center.

use alloc::vec::Vec;

use crate::error::Error;
use crate::presentation::GenMask;
use crate::trace::{Element, Raag};

/// `w = a·(∏ pᵢ'^{mᵢ})·a⁻¹` with `pᵢ = a·pᵢ'·a⁻¹` primitive and the `pᵢ'`
/// pairwise orthogonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveDecomposition {
    pub conjugator: Element,
    /// `(pᵢ, mᵢ)`, ordered by the letters of `pᵢ`.
    pub pairs: Vec<(Element, usize)>,
}

impl PrimitiveDecomposition {
    pub fn primitives(&self) -> impl Iterator<Item = &Element> {
        self.pairs.iter().map(|(p, _)| p)
    }
}

/// Generators of `Z_G(w)`: a right-angled Artin group on
/// `raag_generators` times the free abelian group on `abelian_generators`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerPresentation {
    pub raag_generators: Vec<Element>,
    pub abelian_generators: Vec<Element>,
}

impl CentralizerPresentation {
    pub fn generators(&self) -> impl Iterator<Item = &Element> {
        self.raag_generators.iter().chain(&self.abelian_generators)
    }
}

impl Raag {
    /// Generators `s` with `s ⊥ u`.
    pub fn s_perp_set(&self, u: &Element) -> GenMask {
        let supp = self.support(u);
        let mut out = GenMask::EMPTY;
        for s in self.all_generators().iter() {
            if !self.depends(s).intersects(supp) {
                out.insert(s);
            }
        }
        out
    }

    /// Connected components of the non-commutation graph induced on `mask`,
    /// each listed once, ordered by least generator.
    pub fn dependence_components(&self, mask: GenMask) -> Vec<GenMask> {
        let mut left = mask;
        let mut out = Vec::new();
        while let Some(start) = left.iter().next() {
            let mut comp = GenMask::single(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = GenMask::EMPTY;
                for g in frontier.iter() {
                    next = next | (self.depends(g) & mask);
                }
                frontier = GenMask(next.0 & !comp.0);
                comp = comp | next;
            }
            left = GenMask(left.0 & !comp.0);
            out.push(comp);
        }
        out
    }

    /// `w ≠ 1`, not a proper power, and the cell of its cyclic core is
    /// quasilinear (connected dependence graph on the core's support).
    pub fn is_primitive(&self, w: &Element) -> bool {
        if w.is_identity() {
            return false;
        }
        let core = self.cyclic_reduce(w).core;
        self.dependence_components(self.support(&core)).len() == 1 && matches!(self.max_root(&core), Ok((_, 1)))
    }

    /// [`Raag::is_primitive`] decided by counting the ends of `[1, core]`.
    pub fn is_primitive_by_boundary(&self, w: &Element) -> Result<bool, Error> {
        if w.is_identity() {
            return Ok(false);
        }
        let core = self.cyclic_reduce(w).core;
        let cell = self.interval(&self.identity(), &core)?;
        Ok(self.boundary(&cell).len() <= 2 && self.max_root(&core)?.1 == 1)
    }

    /// Keeps the letters of `x` whose generator lies in `mask`.
    pub fn project(&self, x: &Element, mask: GenMask) -> Element {
        let kept: Vec<_> = x.letters().iter().copied().filter(|l| mask.contains(l.gen())).collect();
        self.normalize_letters(&kept)
    }

    /// The unique factorisation `w = ∏ pᵢ^{mᵢ}` into commuting primitives.
    pub fn prim_decompose(&self, w: &Element) -> Result<PrimitiveDecomposition, Error> {
        if w.is_identity() {
            return Err(Error::Precondition("the identity has no primitive decomposition"));
        }
        let r = self.cyclic_reduce(w);
        let a_inv = self.inv(&r.conjugator);
        let mut pairs = Vec::new();
        for comp in self.dependence_components(self.support(&r.core)) {
            let (p, m) = self.max_root(&self.project(&r.core, comp))?;
            pairs.push((self.product([&r.conjugator, &p, &a_inv]), m));
        }
        pairs.sort_by(|(p, _), (q, _)| p.letters().cmp(q.letters()));
        Ok(PrimitiveDecomposition { conjugator: r.conjugator, pairs })
    }

    /// Multiplies out a decomposition.
    pub fn recompose(&self, d: &PrimitiveDecomposition) -> Element {
        d.pairs.iter().fold(self.identity(), |acc, (p, m)| self.mul(&acc, &self.pow(p, *m as i64)))
    }

    pub fn centralizer(&self, w: &Element) -> Result<CentralizerPresentation, Error> {
        if w.is_identity() {
            return Ok(CentralizerPresentation {
                raag_generators: self.all_generators().iter().map(|s| self.generator(s)).collect(),
                abelian_generators: Vec::new(),
            });
        }
        let d = self.prim_decompose(w)?;
        let a = &d.conjugator;
        let a_inv = self.inv(a);
        let mut common = self.all_generators();
        for p in d.primitives() {
            let core = self.product([&a_inv, p, a]);
            common = common & self.s_perp_set(&core);
        }
        let raag_generators = common.iter().map(|s| self.product([a, &self.generator(s), &a_inv])).collect();
        let abelian_generators = d.pairs.into_iter().map(|(p, _)| p).collect();
        let out = CentralizerPresentation { raag_generators, abelian_generators };
        if let Some(g) = out.generators().find(|g| !self.commute(g, w)) {
            return Err(Error::InvariantViolation(alloc::format!(
                "centralizer generator {} does not commute with {}",
                self.render(g),
                self.render(w)
            )));
        }
        Ok(out)
    }

    /// `xw = wx`.
    pub fn in_centralizer(&self, w: &Element, x: &Element) -> bool {
        self.commute(w, x)
    }

    /// Generators commuting with every generator.
    pub fn center(&self) -> GenMask {
        let mut out = GenMask::EMPTY;
        for s in self.all_generators().iter() {
            if self.depends(s) == GenMask::single(s) {
                out.insert(s);
            }
        }
        out
    }

    /// Free basis of `H_w` for cyclically reduced `w ≠ 1`: the primitives of
    /// its decomposition.
    pub fn h_basis(&self, w: &Element) -> Result<Vec<Element>, Error> {
        if w.is_identity() || !self.is_cyclically_reduced(w) {
            return Err(Error::Precondition("element must be cyclically reduced and nontrivial"));
        }
        Ok(self.prim_decompose(w)?.pairs.into_iter().map(|(p, _)| p).collect())
    }
}
