//! Seeded sampling of group elements.
//!
//! Streams are ChaCha8 generators: the seed is mixed with a stable hash of
//! the check name and each shard reads its own stream, so a sample depends
//! only on `(seed, check, shard, position)`.

use raag_core::{Element, GenMask, Letter, Raag};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// FNV-1a, used to derive per-check stream seeds.
pub fn stable_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

pub fn stream(seed: u64, check: &str, shard: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ stable_hash(check));
    rng.set_stream(shard);
    rng
}

pub struct Sampler<'g> {
    pub raag: &'g Raag,
    pub rng: ChaCha8Rng,
    pub max_len: usize,
    letters: Vec<Letter>,
}

impl<'g> Sampler<'g> {
    pub fn new(raag: &'g Raag, rng: ChaCha8Rng, max_len: usize) -> Self {
        let letters = raag.graph().letters().collect();
        Sampler { raag, rng, max_len, letters }
    }

    pub fn letter(&mut self) -> Letter {
        *self.letters.choose(&mut self.rng).expect("graph has generators")
    }

    /// Uniform over reduced words of length `len`: letters are drawn
    /// uniformly and the word restarts whenever it stops being reduced.
    pub fn element_of_len(&mut self, len: usize) -> Element {
        self.element_over(len, &self.letters.clone())
    }

    fn element_over(&mut self, len: usize, letters: &[Letter]) -> Element {
        if letters.is_empty() {
            return self.raag.identity();
        }
        'restart: loop {
            let mut x = self.raag.identity();
            for i in 0..len {
                let s = *letters.choose(&mut self.rng).unwrap();
                x = self.raag.mul_letter(&x, s);
                if x.len() != i + 1 {
                    continue 'restart;
                }
            }
            return x;
        }
    }

    /// Length uniform in `0..=max_len`, then a uniform reduced word.
    pub fn element(&mut self) -> Element {
        self.element_up_to(self.max_len)
    }

    pub fn element_up_to(&mut self, max_len: usize) -> Element {
        let len = self.rng.random_range(0..=max_len);
        self.element_of_len(len)
    }

    pub fn nontrivial(&mut self) -> Element {
        let len = self.rng.random_range(1..=self.max_len.max(1));
        self.element_of_len(len)
    }

    /// A random reduced word over the generators in `mask`.
    pub fn element_in(&mut self, mask: GenMask, max_len: usize) -> Element {
        let letters: Vec<Letter> = self.letters.iter().copied().filter(|l| mask.contains(l.gen())).collect();
        let len = self.rng.random_range(0..=max_len);
        self.element_over(len, &letters)
    }

    /// A random prefix of `x`, built by peeling random first letters.
    pub fn prefix_of(&mut self, x: &Element) -> Element {
        let k = self.rng.random_range(0..=x.len());
        let mut prefix = self.raag.identity();
        let mut rest = x.clone();
        for _ in 0..k {
            let s = *self.raag.first_letters(&rest).choose(&mut self.rng).unwrap();
            prefix = self.raag.mul_letter(&prefix, s);
            rest = self.raag.letter_mul(s.inverse(), &rest);
        }
        prefix
    }

    /// A random element of the cell `[x, y]`.
    pub fn in_interval(&mut self, x: &Element, y: &Element) -> Element {
        let p = self.prefix_of(&self.raag.ldiv(x, y));
        self.raag.mul(x, &p)
    }

    pub fn int(&mut self, range: std::ops::RangeInclusive<i64>) -> i64 {
        self.rng.random_range(range)
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty choice")
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::Fixture;

    #[test]
    fn streams_are_reproducible() {
        let g = Fixture::F2xZ.raag();
        let draw = |shard| {
            let mut s = Sampler::new(&g, stream(7, "median.symmetry", shard), 8);
            (0..20).map(|_| g.render(&s.element())).collect::<Vec<_>>()
        };
        assert_eq!(draw(0), draw(0));
        assert_ne!(draw(0), draw(1));
    }

    #[test]
    fn sampled_words_have_requested_length() {
        let g = Fixture::Z2.raag();
        let mut s = Sampler::new(&g, stream(1, "len", 0), 8);
        for len in 0..=8 {
            assert_eq!(s.element_of_len(len).len(), len);
        }
    }

    #[test]
    fn prefixes_are_prefixes() {
        let g = Fixture::F2xZ.raag();
        let mut s = Sampler::new(&g, stream(3, "prefix", 0), 8);
        for _ in 0..200 {
            let x = s.element();
            let p = s.prefix_of(&x);
            assert!(g.is_prefix(&p, &x));
        }
    }

    #[test]
    fn stable_hash_is_fnv1a() {
        assert_eq!(stable_hash(""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(stable_hash("a"), 0xaf63_dc4c_8601_ec8c);
    }
}
