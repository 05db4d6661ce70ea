//! Greedy generation of progression-free sequences.
//!
//! Starting from a `k`-free [`SeedSet`] `A`, the sequence extends itself by
//! repeatedly appending the smallest integer above the current last term
//! whose inclusion keeps the whole prefix `k`-free. Two engines implement
//! the same recursion:
//!
//! * **Sieve** — at every insertion of a term `a`, every value that `a`
//!   newly forbids is marked in a dense bit array: for `k = 3` that is
//!   `2a - s` for each earlier term `s`; in general it is `a + d` for every
//!   `(k-1)`-term progression with difference `d` ending at `a`. A candidate
//!   is then admissible iff its bit is clear, an O(1) test.
//! * **Direct** — no forbidden state is kept; each candidate `n` is tested
//!   from scratch by scanning differences `d` and probing membership of
//!   `n - d, n - 2d, ...`.
//!
//! Both engines maintain a dense membership bitset over `[0, last term]`.
//! The sieve keeps its forbidden bitset sized past `2 * last term`; since
//! every mark is at most twice the term being inserted, no mark can land
//! beyond the array before it is grown.
//!
//! ```
//! use stanley::{Engine, SeedSet, SequenceState};
//!
//! let seed = SeedSet::new(&[0, 1], 3).unwrap();
//! let mut state = SequenceState::new(seed, Engine::Sieve);
//! state.extend_to_bound(10).unwrap();
//! assert_eq!(state.terms(), &[0, 1, 3, 4, 9, 10]);
//! ```

use bitvec::vec::BitVec;
use thiserror::Error;

use crate::seed::SeedSet;

/// Term arithmetic left the 64-bit range. Generation halts with the prefix
/// exactly as it was before the failing step; nothing is ever wrapped.
///
/// For the sieve engine this triggers as soon as a forbidden mark
/// (`2a - s` or `a + d`) would exceed `u64::MAX`, so the sieve may refuse
/// slightly before the direct engine would. At any scale where the sieve's
/// bit arrays are allocatable the two never diverge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("term arithmetic overflowed the 64-bit range; prefix left intact")]
pub struct Overflow;

/// Admissibility was queried at or below the last term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("candidate {candidate} is not above the last term {last}")]
pub struct OutOfRange {
    /// The queried value.
    pub candidate: u64,
    /// The current last term.
    pub last: u64,
}

/// Generation strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    /// Incremental forbidden-value marking; O(1) candidate test.
    Sieve,
    /// Re-test every candidate from scratch; no incremental state.
    Direct,
}

impl Engine {
    /// Stable lowercase name, as used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Engine::Sieve => "sieve",
            Engine::Direct => "direct",
        }
    }
}

/// A materialized prefix of the sequence generated by a seed, plus the
/// engine-specific structures needed to extend it.
#[derive(Debug, Clone)]
pub struct SequenceState {
    seed: SeedSet,
    terms: Vec<u64>,
    membership: BitVec,
    forbidden: BitVec,
    engine: Engine,
    complete_to: u64,
    /// Set when a seed mark already overflowed; blocks further growth.
    pending_overflow: bool,
}

impl SequenceState {
    /// Creates a state holding exactly the seed. For the sieve engine the
    /// forbidden set is populated from all seed pairs immediately.
    ///
    /// Never fails: a seed so large that its marks leave the 64-bit range
    /// still produces a state (with `terms` equal to the seed), but one
    /// whose generation methods report [`Overflow`] and whose queries fall
    /// back to binary search instead of the dense indexes.
    pub fn new(seed: SeedSet, engine: Engine) -> Self {
        let complete_to = seed.max();
        let mut state = Self {
            seed,
            terms: Vec::new(),
            membership: BitVec::new(),
            forbidden: BitVec::new(),
            engine,
            complete_to,
            pending_overflow: false,
        };
        let elements = state.seed.elements().to_vec();
        for &elem in &elements {
            if state.pending_overflow || state.insert_term(elem).is_err() {
                state.terms.push(elem);
                state.pending_overflow = true;
            }
        }
        state
    }

    /// Rebuilds a generation-ready state from a checkpointed snapshot by
    /// replaying every term through the engine's insertion path.
    pub fn from_snapshot(snapshot: &Snapshot, engine: Engine) -> Result<Self, Overflow> {
        let mut state = Self::new(snapshot.seed.clone(), engine);
        if state.pending_overflow {
            return Err(Overflow);
        }
        for &t in &snapshot.terms[snapshot.seed.len()..] {
            state.insert_term(t)?;
        }
        state.complete_to = state.complete_to.max(snapshot.complete_to);
        Ok(state)
    }

    pub fn seed(&self) -> &SeedSet {
        &self.seed
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    pub fn k(&self) -> u32 {
        self.seed.k()
    }

    /// The materialized prefix, strictly increasing, starting with the seed.
    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn last_term(&self) -> u64 {
        *self.terms.last().expect("terms start from a nonempty seed")
    }

    /// Largest `x` for which the prefix is provably complete: every member
    /// of the full sequence that is `<= complete_to` is present in
    /// [`terms`](Self::terms).
    pub fn complete_to(&self) -> u64 {
        self.complete_to
    }

    /// True iff `n` is one of the materialized terms.
    pub fn contains(&self, n: u64) -> bool {
        if self.pending_overflow {
            return self.terms.binary_search(&n).is_ok();
        }
        bit(&self.membership, n)
    }

    /// True iff the sieve has marked `n` as forbidden. Always false for the
    /// direct engine, which keeps no forbidden state.
    pub fn forbidden_contains(&self, n: u64) -> bool {
        bit(&self.forbidden, n)
    }

    /// Allocated size of the forbidden bit array, in bits.
    pub fn forbidden_capacity_bits(&self) -> usize {
        self.forbidden.len()
    }

    /// Would appending `n` keep the prefix `k`-free? Pure query.
    ///
    /// Errors with [`OutOfRange`] unless `n` is above the last term; below
    /// it the question is not about appending.
    pub fn is_admissible(&self, n: u64) -> Result<bool, OutOfRange> {
        let last = self.last_term();
        if n <= last {
            return Err(OutOfRange { candidate: n, last });
        }
        if self.pending_overflow {
            // Dense indexes stop covering a state whose seed marks
            // overflowed; answer from the term list instead.
            return Ok(!crate::oracle::completes_progression(&self.terms, n, self.k()));
        }
        Ok(match self.engine {
            Engine::Sieve => !bit(&self.forbidden, n),
            Engine::Direct => !self.completes_progression(n),
        })
    }

    /// Appends and returns the smallest admissible integer above the last
    /// term.
    pub fn next_term(&mut self) -> Result<u64, Overflow> {
        if self.pending_overflow {
            return Err(Overflow);
        }
        let mut n = self.last_term().checked_add(1).ok_or(Overflow)?;
        loop {
            if self.admissible_unchecked(n) {
                self.insert_term(n)?;
                self.complete_to = self.complete_to.max(n);
                return Ok(n);
            }
            n = n.checked_add(1).ok_or(Overflow)?;
        }
    }

    /// Materializes every member of the sequence that is `<= x`. A no-op if
    /// `x` does not exceed the last term.
    ///
    /// ```
    /// use stanley::{Engine, SeedSet, SequenceState};
    ///
    /// let mut state = SequenceState::new(SeedSet::new(&[0], 4)?, Engine::Sieve);
    /// state.extend_to_bound(18)?;
    /// // 0,1,2 is fine under k = 4; only four-term progressions are excluded.
    /// assert_eq!(state.terms(), &[0, 1, 2, 4, 5, 7, 8, 9, 14, 15, 16, 18]);
    /// # Ok::<(), Box<dyn std::error::Error>>(())
    /// ```
    pub fn extend_to_bound(&mut self, x: u64) -> Result<(), Overflow> {
        if x <= self.last_term() {
            return Ok(());
        }
        if self.pending_overflow {
            return Err(Overflow);
        }
        let mut n = self.last_term() + 1;
        loop {
            if self.admissible_unchecked(n) {
                if let Err(e) = self.insert_term(n) {
                    // n itself is a member we could not record; the prefix
                    // is only complete strictly below it.
                    self.complete_to = self.complete_to.max(n - 1);
                    return Err(e);
                }
            }
            if n == x {
                break;
            }
            n += 1;
        }
        self.complete_to = self.complete_to.max(x);
        Ok(())
    }

    /// Generates until at least `len` terms are materialized.
    pub fn extend_to_len(&mut self, len: usize) -> Result<(), Overflow> {
        while self.terms.len() < len {
            self.next_term()?;
        }
        Ok(())
    }

    /// A cheap read-only view for analysis; see [`SequenceView`].
    pub fn view(&self) -> SequenceView<'_> {
        SequenceView {
            seed: &self.seed,
            terms: &self.terms,
            membership: &self.membership,
            complete_to: self.complete_to,
        }
    }

    /// An owned copy of the analysable parts of this state.
    pub fn snapshot(&self) -> Snapshot {
        Snapshot {
            seed: self.seed.clone(),
            terms: self.terms.clone(),
            membership: self.membership.clone(),
            complete_to: self.complete_to,
        }
    }

    /// Admissibility without the range check; `n` must be above the last
    /// term.
    fn admissible_unchecked(&self, n: u64) -> bool {
        match self.engine {
            Engine::Sieve => !bit(&self.forbidden, n),
            Engine::Direct => !self.completes_progression(n),
        }
    }

    /// Direct-engine test: does some difference `d` have all of
    /// `n - d, ..., n - (k-1)d` among the terms?
    fn completes_progression(&self, n: u64) -> bool {
        let steps = (self.k() - 1) as u64;
        for d in 1..=n / steps {
            if bit(&self.membership, n - d) {
                let all = (2..=steps).all(|i| bit(&self.membership, n - i * d));
                if all {
                    return true;
                }
            }
        }
        false
    }

    /// Records `a` as a term: appends it, sets membership, and (sieve only)
    /// marks every value `a` newly forbids. On overflow nothing is mutated.
    fn insert_term(&mut self, a: u64) -> Result<(), Overflow> {
        if self.engine == Engine::Sieve && !self.terms.is_empty() {
            // Largest possible difference feeding a mark: a - min for
            // k = 3 (exact), a / (k-2) in general (upper bound). If
            // a + that fits in u64, every mark fits.
            let max_diff = if self.k() == 3 {
                a - self.seed.min()
            } else {
                a / (self.k() as u64 - 2)
            };
            a.checked_add(max_diff).ok_or(Overflow)?;
        }
        self.terms.push(a);
        grow_to(&mut self.membership, a);
        self.membership.set(a as usize, true);
        if self.engine == Engine::Sieve {
            self.mark_forbidden_by(a);
        }
        Ok(())
    }

    /// Sieve marking at insertion of `a`. The largest possible mark is
    /// `a + (a - min)` for k = 3 and `a + a/(k-2)` in general (both bounded
    /// by 2a), so growing the array to that up front suffices; the
    /// insert-time probe already guaranteed it fits.
    fn mark_forbidden_by(&mut self, a: u64) {
        if self.terms.len() <= 1 {
            return;
        }
        let max_mark = if self.k() == 3 {
            a + (a - self.seed.min())
        } else {
            a + a / (self.k() as u64 - 2)
        };
        grow_to(&mut self.forbidden, max_mark);
        if self.k() == 3 {
            // One mark per earlier term s: 2a - s.
            let (last, earlier) = self.terms.split_last().expect("nonempty");
            debug_assert_eq!(*last, a);
            for &s in earlier {
                self.forbidden.set((a + (a - s)) as usize, true);
            }
        } else {
            // For each d with a full (k-1)-progression ending at a,
            // mark a + d.
            let steps = (self.k() - 2) as u64;
            for d in 1..=a / steps {
                if bit(&self.membership, a - d) {
                    let all = (2..=steps).all(|i| bit(&self.membership, a - i * d));
                    if all {
                        self.forbidden.set((a + d) as usize, true);
                    }
                }
            }
        }
    }
}

/// Borrowed read-only view of a sequence prefix, the input to every
/// analysis operation. Cheap to copy and safe to share across threads.
#[derive(Clone, Copy)]
pub struct SequenceView<'a> {
    seed: &'a SeedSet,
    terms: &'a [u64],
    membership: &'a BitVec,
    complete_to: u64,
}

impl<'a> SequenceView<'a> {
    pub fn seed(&self) -> &'a SeedSet {
        self.seed
    }

    pub fn k(&self) -> u32 {
        self.seed.k()
    }

    pub fn terms(&self) -> &'a [u64] {
        self.terms
    }

    pub fn last_term(&self) -> u64 {
        *self.terms.last().expect("terms are never empty")
    }

    /// See [`SequenceState::complete_to`].
    pub fn complete_to(&self) -> u64 {
        self.complete_to
    }

    /// Membership test against the materialized prefix.
    pub fn contains(&self, n: u64) -> bool {
        bit(self.membership, n)
    }

    /// Number of terms `<= x` in the materialized prefix (no completeness
    /// check; see [`analysis::counting_function`](crate::analysis::counting_function)).
    pub fn count_at(&self, x: u64) -> u64 {
        self.terms.partition_point(|&t| t <= x) as u64
    }
}

/// An owned, engine-free copy of a sequence prefix: the unit of
/// checkpointing and the carrier for analysis of loaded data.
///
/// Snapshots compare equal when their seed, terms, and completeness bound
/// agree; the membership index is derived data and carries no extra
/// information.
#[derive(Debug, Clone)]
pub struct Snapshot {
    seed: SeedSet,
    terms: Vec<u64>,
    membership: BitVec,
    complete_to: u64,
}

/// Structural problems detected when assembling a [`Snapshot`] from parts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SnapshotError {
    #[error("terms must start with the seed elements")]
    SeedMismatch,
    #[error("terms are not strictly increasing at index {0}")]
    NotAscending(usize),
    #[error("completeness bound {bound} is below the last term {last}")]
    BoundBelowLast { bound: u64, last: u64 },
}

impl Snapshot {
    /// Assembles a snapshot from a term list, checking that the list is
    /// strictly increasing, starts with the seed, and is covered by the
    /// claimed completeness bound. Progression-freeness of the terms is
    /// *not* checked here; loaders spot-check it separately, and the
    /// verifier negative controls rely on being able to hold corrupted
    /// term lists.
    pub fn from_parts(
        seed: SeedSet,
        terms: Vec<u64>,
        complete_to: u64,
    ) -> Result<Self, SnapshotError> {
        if terms.len() < seed.len() || terms[..seed.len()] != *seed.elements() {
            return Err(SnapshotError::SeedMismatch);
        }
        if let Some(i) = (1..terms.len()).find(|&i| terms[i] <= terms[i - 1]) {
            return Err(SnapshotError::NotAscending(i));
        }
        let last = *terms.last().expect("seed is nonempty");
        if complete_to < last {
            return Err(SnapshotError::BoundBelowLast {
                bound: complete_to,
                last,
            });
        }
        let mut membership = BitVec::new();
        grow_to(&mut membership, last);
        for &t in &terms {
            membership.set(t as usize, true);
        }
        Ok(Self {
            seed,
            terms,
            membership,
            complete_to,
        })
    }

    pub fn seed(&self) -> &SeedSet {
        &self.seed
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn complete_to(&self) -> u64 {
        self.complete_to
    }

    pub fn view(&self) -> SequenceView<'_> {
        SequenceView {
            seed: &self.seed,
            terms: &self.terms,
            membership: &self.membership,
            complete_to: self.complete_to,
        }
    }

    /// Fault-injection hook: marks `v` as a member in the membership index
    /// without adding it to the term list, deliberately desynchronizing the
    /// two. Exists so the verifiers can be proven able to fail; never called
    /// on honest data.
    pub fn inject_phantom_member(&mut self, v: u64) {
        grow_to(&mut self.membership, v);
        self.membership.set(v as usize, true);
    }
}

impl PartialEq for Snapshot {
    fn eq(&self, other: &Self) -> bool {
        self.seed == other.seed
            && self.terms == other.terms
            && self.complete_to == other.complete_to
    }
}

impl Eq for Snapshot {}

/// Reads bit `n`, treating out-of-range as unset.
fn bit(bits: &BitVec, n: u64) -> bool {
    usize::try_from(n)
        .ok()
        .and_then(|i| bits.get(i).map(|b| *b))
        .unwrap_or(false)
}

/// Grows `bits` (with doubling) so index `n` is addressable.
///
/// Panics once indexes leave the addressable range; dense bit arrays are a
/// deliberate design choice, and values that large would have failed
/// allocation anyway.
fn grow_to(bits: &mut BitVec, n: u64) {
    let needed = usize::try_from(n)
        .ok()
        .and_then(|i| i.checked_add(1))
        .expect("bit index out of addressable range");
    if bits.len() < needed {
        let target = needed
            .checked_next_power_of_two()
            .unwrap_or(needed)
            .max(64);
        bits.resize(target, false);
    }
}
