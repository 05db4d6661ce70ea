//! Slow, independent reference generators used to validate the fast
//! engines.
//!
//! The naive generator re-derives the greedy recursion with deliberately
//! different machinery: a plain sorted `Vec` probed by binary search, no
//! bitsets, no incremental forbidden state. A data-structure bug in the
//! engines therefore cannot hide by also being present here.
//!
//! The digit oracle is the well-known closed form for the sequence grown
//! from the seed `{0}`: exactly the nonnegative integers whose base-3
//! representation uses only the digits 0 and 1. That description is
//! folklore rather than something this crate can take on faith, so the
//! test suite establishes `digit_terms == naive_extend({0}, x)` for all
//! `x <= 3^7` before anything else is allowed to lean on it.

use crate::seed::SeedSet;
use crate::sequence::Overflow;

/// How a reference sequence was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Greedy recursion, re-tested from scratch per candidate.
    NaiveGreedy,
    /// Base-3 digit characterization of the `{0}` sequence.
    DigitForm,
}

/// A reference sequence with its origin tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSequence {
    terms: Vec<u64>,
    provenance: Provenance,
}

impl OracleSequence {
    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Number of terms `<= x`.
    pub fn count_at(&self, x: u64) -> u64 {
        self.terms.partition_point(|&t| t <= x) as u64
    }
}

/// Greedy extension of `seed` to bound `x`, sharing no code or data
/// structures with the engines in [`crate::sequence`].
pub fn naive_extend(seed: &SeedSet, x: u64) -> Result<OracleSequence, Overflow> {
    let mut terms: Vec<u64> = seed.elements().to_vec();
    let k = seed.k();
    let mut n = match terms.last().unwrap().checked_add(1) {
        Some(n) => n,
        // Seed already at u64::MAX: nothing below x can be added either way.
        None => {
            return Ok(OracleSequence {
                terms,
                provenance: Provenance::NaiveGreedy,
            })
        }
    };
    while n <= x {
        if !completes_progression(&terms, n, k) {
            terms.push(n);
        }
        n += 1;
    }
    Ok(OracleSequence {
        terms,
        provenance: Provenance::NaiveGreedy,
    })
}

/// Does appending `n` (which must exceed every element of `sorted`) create
/// a `k`-term arithmetic progression? Binary-search probes only.
pub(crate) fn completes_progression(sorted: &[u64], n: u64, k: u32) -> bool {
    if k == 3 {
        // Pairs (s1, s2) with 2*s2 - s1 = n: iterate s2 over the upper
        // half-open window [ceil(n/2), n) and probe s1.
        let lo = sorted.partition_point(|&t| t < n.div_ceil(2));
        let hi = sorted.partition_point(|&t| t < n);
        for &s2 in &sorted[lo..hi] {
            let s1 = s2 - (n - s2);
            if sorted.binary_search(&s1).is_ok() {
                return true;
            }
        }
        false
    } else {
        let steps = (k - 1) as u64;
        for d in 1..=n / steps {
            if (1..=steps).all(|i| sorted.binary_search(&(n - i * d)).is_ok()) {
                return true;
            }
        }
        false
    }
}

/// All integers `<= x` whose base-3 digits are all 0 or 1, ascending.
///
/// The m-th such value is obtained by reading the binary digits of m as
/// base-3 digits, so the list is enumerated directly rather than by
/// filtering.
pub fn digit_terms(x: u64) -> OracleSequence {
    let mut terms = Vec::new();
    let mut m: u64 = 0;
    loop {
        match binary_as_base3(m) {
            Some(v) if v <= x => terms.push(v),
            _ => break,
        }
        m += 1;
    }
    OracleSequence {
        terms,
        provenance: Provenance::DigitForm,
    }
}

/// Reads the binary digits of `m` as base-3 digits; `None` once the value
/// leaves u64.
fn binary_as_base3(m: u64) -> Option<u64> {
    let mut v: u64 = 0;
    let mut place: u64 = 1;
    let mut rest = m;
    while rest > 0 {
        if rest & 1 == 1 {
            v = v.checked_add(place)?;
        }
        rest >>= 1;
        if rest > 0 {
            place = place.checked_mul(3)?;
        }
    }
    Some(v)
}
