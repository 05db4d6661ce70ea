//! Greedy progression-free sequences, their counting functions, and
//! machine verification of the exact bounds relating the two.
//!
//! Start with a finite set `A` of nonnegative integers containing no
//! three-term arithmetic progression. Repeatedly append the smallest
//! integer, larger than everything so far, that keeps the set free of
//! three-term progressions. The result is the *Stanley sequence* generated
//! by `A`. From `A = {0, 1}`:
//!
//! ```
//! use stanley::{Engine, SeedSet, SequenceState};
//!
//! let seed = SeedSet::new(&[0, 1], 3)?;
//! let mut state = SequenceState::new(seed, Engine::Sieve);
//! state.extend_to_bound(30)?;
//! assert_eq!(state.terms(), &[0, 1, 3, 4, 9, 10, 12, 13, 27, 28, 30]);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! Those are the integers whose base-3 digits avoid the digit 2 — one of
//! the few seeds with a known closed form, available here as
//! [`oracle::digit_terms`]. Most seeds produce sequences with no such
//! description, which is why everything in this crate is built to be
//! cross-checked: a bitset sieve engine and a from-scratch direct engine
//! generate independently ([`sequence`]), a deliberately naive generator
//! re-derives their output with different machinery ([`oracle`]), and the
//! [`analysis`] module verifies, integer by integer, the exact
//! inequalities that the counting function `S(A, x)` (number of terms
//! `<= x`) must satisfy — including the floor
//!
//! ```text
//! S(A, x)  >=  least s with s(s+1)/2 + max A >= x,
//! ```
//!
//! which grows like `sqrt(2x)`:
//!
//! ```
//! use stanley::analysis::{self, GeometricGrid, CountingProfile};
//! use stanley::{Engine, SeedSet, SequenceState};
//!
//! let seed = SeedSet::new(&[0, 4], 3)?;
//! let mut state = SequenceState::new(seed, Engine::Sieve);
//! state.extend_to_bound(10_000)?;
//!
//! let report = analysis::verify_quadratic_bound(&state.view(), 10_000)?;
//! assert!(report.passed());
//!
//! let profile =
//!     CountingProfile::sample(&state.view(), &GeometricGrid::default(), 10_000)?;
//! let check = analysis::theorem_check(&profile, 0.2)?;
//! assert_eq!(check.x0_observed(), Some(8));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! Sequences can be checkpointed to a line-per-term text format and
//! resumed exactly ([`io`]), and the `stanley` binary ([`cli`]) exposes
//! generation, verification, analysis, and export as subcommands. The
//! mdbook under `book/` in the repository walks through the concepts
//! chapter by chapter; its code snippets are this crate's doc-tests and
//! examples, so they stay honest.

pub mod analysis;
pub mod cli;
pub mod io;
pub mod oracle;
pub mod seed;
pub mod sequence;

pub use seed::{SeedError, SeedSet};
pub use sequence::{
    Engine, OutOfRange, Overflow, SequenceState, SequenceView, Snapshot, SnapshotError,
};
