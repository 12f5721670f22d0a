//! Arithmetic and median geometry of right-angled Artin groups.
//!
//! A group is presented by a finite [`CommutationGraph`]: generators plus the
//! unordered pairs that commute. [`Raag`] wraps a graph and provides every
//! operation on canonical [`Element`]s:
//!
//! - word problem and group law ([`trace`]): shortlex normal forms, length,
//!   first letters, supports;
//! - the prefix order `x ⊂ y ⟺ l(x) + l(x⁻¹y) = l(y)` and its median
//!   structure ([`lattice`]): meets, medians, joins, orthogonality, cells,
//!   cell boundaries, balls;
//! - cyclic reduction, conjugacy and roots ([`cyclic`]);
//! - the preorder, folding, axis and quasidirection attached to an element
//!   ([`arboreal`]);
//! - primitive decomposition and centralizers ([`structure`]).
//!
//! The crate is `no_std` and needs only `alloc`. File formats, sampling, the
//! property suites and the command line live in the companion `raag` crate.
//!
//! ```
//! use raag_core::{parse_graph, Raag};
//!
//! let g = Raag::new(parse_graph("gens: a b c\nedge: a c\nedge: b c").unwrap());
//! let x = g.parse("a c a^-1").unwrap();
//! assert_eq!(g.render(&x), "c");
//! let m = g.meet(&g.parse("a b").unwrap(), &g.parse("a c").unwrap());
//! assert_eq!(g.render(&m), "a");
//! ```

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arboreal;
pub mod cyclic;
mod error;
pub mod lattice;
pub mod presentation;
pub mod structure;
pub mod trace;

pub use arboreal::AxisContext;
pub use cyclic::{ConjugacyWitness, CyclicReduction};
pub use error::Error;
pub use lattice::Interval;
pub use presentation::{parse_graph, CommutationGraph, GenMask, Letter, ParseError, Word, MAX_GENERATORS};
pub use structure::{CentralizerPresentation, PrimitiveDecomposition};
pub use trace::{Element, Limits, Raag};
