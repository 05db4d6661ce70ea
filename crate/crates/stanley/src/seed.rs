//! Seed sets: the finite progression-free starting blocks of a sequence.
//!
//! A [`SeedSet`] is a nonempty, strictly increasing set of nonnegative
//! integers that contains no `k`-term arithmetic progression. Validation
//! sorts and deduplicates its input, so callers may hand in seeds in any
//! order and with repeats. Rejections carry the witness progression that
//! is smallest by (difference, first element):
//!
//! ```
//! use stanley::{SeedSet, SeedError};
//!
//! assert!(SeedSet::new(&[0, 4], 3).is_ok());
//! assert!(SeedSet::new(&[4, 0, 4], 3).is_ok()); // same set
//! let err = SeedSet::new(&[0, 1, 2], 3).unwrap_err();
//! assert_eq!(
//!     err.to_string(),
//!     "seed contains the arithmetic progression 0, 1, 2"
//! );
//! assert!(matches!(SeedSet::new(&[0, -3], 3), Err(SeedError::NegativeElement(-3))));
//! assert!(matches!(SeedSet::new(&[0], 2), Err(SeedError::BadK(2))));
//! ```

use std::fmt;

use thiserror::Error;

/// Smallest progression length that makes "progression-free" meaningful.
pub const MIN_K: u32 = 3;

/// Why a candidate seed was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeedError {
    /// The input contained no elements.
    #[error("seed must contain at least one element")]
    Empty,
    /// Seed elements must be nonnegative.
    #[error("seed element {0} is negative")]
    NegativeElement(i64),
    /// `k` below [`MIN_K`].
    #[error("progression length k must be at least {MIN_K}, got {0}")]
    BadK(u32),
    /// The seed already contains a `k`-term arithmetic progression.
    /// The witness is the lexicographically smallest by (difference,
    /// first element).
    #[error("seed contains the arithmetic progression {}", witness(*start, *diff, *len))]
    NotProgressionFree {
        /// First element of the offending progression.
        start: u64,
        /// Common difference.
        diff: u64,
        /// Number of terms (always the seed's `k`).
        len: u32,
    },
}

fn witness(start: u64, diff: u64, len: u32) -> String {
    let terms: Vec<String> = (0..len as u64)
        .map(|i| (start + i * diff).to_string())
        .collect();
    terms.join(", ")
}

/// A validated, `k`-free seed set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedSet {
    elements: Vec<u64>,
    k: u32,
}

impl SeedSet {
    /// Validates `raw` as a `k`-free seed. The input is sorted and
    /// deduplicated first; duplicates are not an error.
    pub fn new(raw: &[i64], k: u32) -> Result<Self, SeedError> {
        if let Some(&neg) = raw.iter().find(|&&v| v < 0) {
            return Err(SeedError::NegativeElement(neg));
        }
        let unsigned: Vec<u64> = raw.iter().map(|&v| v as u64).collect();
        Self::from_unsigned(&unsigned, k)
    }

    /// As [`SeedSet::new`], for inputs already known to be nonnegative.
    pub fn from_unsigned(raw: &[u64], k: u32) -> Result<Self, SeedError> {
        if k < MIN_K {
            return Err(SeedError::BadK(k));
        }
        let mut elements = raw.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() {
            return Err(SeedError::Empty);
        }
        if let Some((start, diff)) = find_progression(&elements, k) {
            return Err(SeedError::NotProgressionFree {
                start,
                diff,
                len: k,
            });
        }
        Ok(Self { elements, k })
    }

    /// The elements, strictly increasing.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// The progression length parameter.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Largest element.
    pub fn max(&self) -> u64 {
        *self.elements.last().expect("seed is nonempty")
    }

    /// Smallest element.
    pub fn min(&self) -> u64 {
        self.elements[0]
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// A seed is never empty; provided for clippy symmetry.
    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for SeedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Finds the `k`-term arithmetic progression contained in `sorted` that is
/// smallest by (difference, first element), if any.
///
/// `sorted` must be strictly increasing.
fn find_progression(sorted: &[u64], k: u32) -> Option<(u64, u64)> {
    let len = sorted.len() as u64;
    if len < k as u64 {
        return None;
    }
    let last = sorted[sorted.len() - 1];
    let span = last - sorted[0];
    let max_diff = span / (k as u64 - 1);
    for diff in 1..=max_diff {
        for &start in sorted {
            if (k as u64 - 1) * diff > last - start {
                break;
            }
            let all_in = (1..k as u64)
                .all(|i| sorted.binary_search(&(start + i * diff)).is_ok());
            if all_in {
                return Some((start, diff));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_corpus_seeds() {
        for raw in [
            vec![0i64],
            vec![0, 1],
            vec![0, 4],
            vec![0, 5],
            vec![0, 7],
            vec![0, 1, 4],
            vec![0, 1, 5],
        ] {
            let seed = SeedSet::new(&raw, 3).unwrap();
            assert_eq!(seed.k(), 3);
            assert_eq!(
                seed.elements(),
                raw.iter().map(|&v| v as u64).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn singleton_is_always_progression_free() {
        let seed = SeedSet::new(&[5], 3).unwrap();
        assert_eq!(seed.elements(), &[5]);
    }

    #[test]
    fn rejects_three_term_progression_with_witness() {
        let err = SeedSet::new(&[0, 1, 2], 3).unwrap_err();
        assert_eq!(
            err,
            SeedError::NotProgressionFree {
                start: 0,
                diff: 1,
                len: 3
            }
        );
        assert_eq!(
            err.to_string(),
            "seed contains the arithmetic progression 0, 1, 2"
        );
    }

    #[test]
    fn witness_is_smallest_by_difference_then_start() {
        // {0, 2, 4} (diff 2) and {1, 5, 9} (diff 4) are both present;
        // diff 2 wins.
        let err = SeedSet::new(&[0, 1, 2, 4, 5, 9], 3).unwrap_err();
        assert!(matches!(
            err,
            SeedError::NotProgressionFree { diff: 1, .. }
        ));
        // Remove the diff-1 witnesses, keep 0,2,4.
        let err = SeedSet::new(&[0, 2, 4, 5, 9], 3).unwrap_err();
        assert_eq!(
            err,
            SeedError::NotProgressionFree {
                start: 0,
                diff: 2,
                len: 3
            }
        );
    }

    #[test]
    fn sorts_and_dedups() {
        let seed = SeedSet::new(&[4, 0, 4, 0], 3).unwrap();
        assert_eq!(seed.elements(), &[0, 4]);
    }

    #[test]
    fn rejects_empty_negative_and_bad_k() {
        assert_eq!(SeedSet::new(&[], 3).unwrap_err(), SeedError::Empty);
        assert_eq!(
            SeedSet::new(&[0, -3], 3).unwrap_err(),
            SeedError::NegativeElement(-3)
        );
        assert_eq!(SeedSet::new(&[0], 2).unwrap_err(), SeedError::BadK(2));
    }

    #[test]
    fn four_term_progressions_allowed_only_for_k_above_3() {
        // {0,1,2,4}: contains 0,1,2 (a 3-AP) but no 4-AP.
        assert!(SeedSet::new(&[0, 1, 2, 4], 3).is_err());
        let seed = SeedSet::new(&[0, 1, 2, 4], 4).unwrap();
        assert_eq!(seed.elements(), &[0, 1, 2, 4]);
        // {0,1,2,3} is a 4-AP.
        let err = SeedSet::new(&[0, 1, 2, 3], 4).unwrap_err();
        assert_eq!(
            err,
            SeedError::NotProgressionFree {
                start: 0,
                diff: 1,
                len: 4
            }
        );
    }
}
