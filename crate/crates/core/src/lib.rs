//! Multidimensional permutations and their pattern-avoidance machinery.
//!
//! A `d`-permutation of size `n` is a tuple of `d-1` permutations of `[n]`,
//! identified with its diagram: a point set in the grid `[n]^d` with exactly
//! one point on every hyperplane `x_i = j`. This crate provides
//!
//! * the basic algebra ([`Permutation`], [`DPermutation`], diagrams,
//!   standardization, projections, directional sums),
//! * hypercube symmetries and trivial Wilf equivalence ([`symmetry`]),
//! * classical and vincular pattern containment ([`pattern`]),
//! * separable and Baxter `d`-permutations together with the anti- and
//!   complete-Baxter constructions ([`separable`], [`baxter`]),
//! * weak-Bruhat interval counting ([`bruhat`]),
//! * an exhaustive counting engine with prefix pruning ([`engine`]),
//! * closed-form sequences and a table of known sequence prefixes ([`seq`]).
//!
//! The crate is `no_std`-compatible (it requires `alloc`). Everything that
//! needs an operating system (clocks, threads, files, network) lives in the
//! companion CLI crate.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod baxter;
pub mod bruhat;
pub mod dperm;
pub mod engine;
pub mod pattern;
pub mod perm;
pub mod separable;
pub mod seq;
pub mod symmetry;

pub use dperm::{standardize, DPermError, DPermutation, Direction, Point, Sign};
pub use engine::{Constraint, CountJob, CountRow, CountTable, EngineConfig, EngineError, Mode, NamedPredicate};
pub use pattern::{PatternError, PatternLiteral, PatternSet};
pub use perm::{PermError, Permutation};
pub use symmetry::SignedAxisMap;
