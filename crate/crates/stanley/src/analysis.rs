//! Counting functions, progression counts, and machine verification of the
//! exact inequalities they satisfy.
//!
//! For a set `S` and an integer `n`, `H(S, n)` counts the pairs
//! `s1 < s2` in `S` with `n = 2*s2 - s1`, i.e. the three-term progressions
//! that appending `n` would complete. Over a greedily generated 3-free
//! sequence the following all hold exactly, and [`verify_membership_criterion`],
//! [`verify_pair_bound`], [`verify_nonmember_bound`] and
//! [`verify_quadratic_bound`] check them point by point over a requested
//! range:
//!
//! * for `n > max A`: `H(S, n) = 0` if and only if `n` is in the sequence;
//! * `sum_{0 <= n <= x} H(S, n) <= c(x) * (c(x) - 1) / 2`, where `c(x)`
//!   counts the terms `<= x`;
//! * `#{n <= x, n not in S} - max A <= sum_{0 <= n <= x} H(S, n)`;
//! * `x <= c(x) * (c(x) + 1) / 2 + max A`.
//!
//! The last inequality rearranges to an exact lower bound on the counting
//! function, [`theorem_floor`]: the least `s >= 0` with
//! `s(s+1)/2 + max A >= x`. That floor grows like `sqrt(2x)`, which is what
//! [`theorem_check`] probes empirically against an
//! `(sqrt(2) - epsilon) * sqrt(x)` threshold.
//!
//! `H` is a statement about three-term progressions only, so every
//! `H`-dependent operation refuses sequences generated with `k != 3` with
//! [`AnalysisError::UnsupportedK`].

use thiserror::Error;

use crate::sequence::SequenceView;

/// Errors shared by the analysis operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    /// The prefix is not materialized far enough to answer exactly.
    #[error("prefix complete only through {complete_to}, but {needed} was requested")]
    IncompletePrefix { complete_to: u64, needed: u64 },
    /// An interval with `lo > hi`.
    #[error("empty range: {lo}..={hi}")]
    EmptyRange { lo: u64, hi: u64 },
    /// `H` is defined for three-term progressions only.
    #[error("H is defined only for 3-term progressions; this sequence was generated with k = {0}")]
    UnsupportedK(u32),
    /// Gap statistics need at least two terms.
    #[error("need at least 2 terms, found {0}")]
    TooShort(usize),
    /// `epsilon` outside `(0, sqrt(2))`.
    #[error("epsilon must lie strictly between 0 and sqrt(2), got {0}")]
    BadEpsilon(f64),
    /// [`theorem_floor`] requires `x >= max A`.
    #[error("x = {x} is below the largest seed element {max_seed}")]
    BadInput { x: u64, max_seed: u64 },
    /// The exponent fit needs at least three usable samples.
    #[error("need at least {needed} samples with x >= 2 and count >= 1, found {found}")]
    TooFewSamples { needed: usize, found: usize },
    /// No spread in the sample abscissae.
    #[error("samples are degenerate: no spread in x")]
    DegenerateSamples,
}

fn require_complete(view: &SequenceView, needed: u64) -> Result<(), AnalysisError> {
    if needed > view.complete_to() {
        return Err(AnalysisError::IncompletePrefix {
            complete_to: view.complete_to(),
            needed,
        });
    }
    Ok(())
}

fn require_k3(view: &SequenceView) -> Result<(), AnalysisError> {
    if view.k() != 3 {
        return Err(AnalysisError::UnsupportedK(view.k()));
    }
    Ok(())
}

/// `H(S, n)`: the number of pairs `s1 < s2` of materialized terms with
/// `n = 2*s2 - s1`.
///
/// Exact provided the prefix is complete below `n`, which is enforced
/// against the view's completeness bound.
///
/// ```
/// use stanley::analysis::h_count;
/// use stanley::{Engine, SeedSet, SequenceState};
///
/// let mut state = SequenceState::new(SeedSet::new(&[0, 1], 3)?, Engine::Sieve);
/// state.extend_to_bound(10)?;
/// // terms: 0, 1, 3, 4, 9, 10
/// assert_eq!(h_count(&state.view(), 2)?, 1); // (0, 1)
/// assert_eq!(h_count(&state.view(), 5)?, 2); // (1, 3) and (3, 4)
/// assert_eq!(h_count(&state.view(), 9)?, 0); // 9 is a member
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn h_count(view: &SequenceView, n: u64) -> Result<u64, AnalysisError> {
    require_k3(view)?;
    require_complete(view, n)?;
    Ok(h_count_unchecked(view, n))
}

/// Pair enumeration behind [`h_count`]: iterate `s2` over terms in
/// `[ceil(n/2), n)` and probe membership of `s1 = 2*s2 - n`.
fn h_count_unchecked(view: &SequenceView, n: u64) -> u64 {
    let terms = view.terms();
    let lo = terms.partition_point(|&t| t < n.div_ceil(2));
    let hi = terms.partition_point(|&t| t < n);
    terms[lo..hi]
        .iter()
        .filter(|&&s2| view.contains(s2 - (n - s2)))
        .count() as u64
}

/// Per-`n` values of `H` over an inclusive range, with a running sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HProfile {
    n_lo: u64,
    n_hi: u64,
    values: Vec<u64>,
    cumulative: Vec<u64>,
}

impl HProfile {
    /// Inclusive range covered.
    pub fn range(&self) -> (u64, u64) {
        (self.n_lo, self.n_hi)
    }

    /// `values()[i]` is `H(S, n_lo + i)`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `cumulative()[i]` is the sum of `values()[..=i]`.
    pub fn cumulative(&self) -> &[u64] {
        &self.cumulative
    }

    /// The final running sum; equals `sum_{n_lo <= n <= n_hi} H(S, n)`.
    pub fn total(&self) -> u64 {
        *self.cumulative.last().expect("profile is never empty")
    }
}

/// Computes `H` for every `n` in `[n_lo, n_hi]`.
///
/// ```
/// use stanley::analysis::h_profile;
/// use stanley::{Engine, SeedSet, SequenceState};
///
/// let mut state = SequenceState::new(SeedSet::new(&[0, 1], 3)?, Engine::Sieve);
/// state.extend_to_bound(10)?;
/// let profile = h_profile(&state.view(), 0, 10)?;
/// assert_eq!(&profile.values()[..6], &[0, 0, 1, 0, 0, 2]);
/// assert_eq!(profile.total(), 6); // well under C(6,2) = 15
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn h_profile(view: &SequenceView, n_lo: u64, n_hi: u64) -> Result<HProfile, AnalysisError> {
    require_k3(view)?;
    if n_lo > n_hi {
        return Err(AnalysisError::EmptyRange { lo: n_lo, hi: n_hi });
    }
    require_complete(view, n_hi)?;
    let mut values = Vec::with_capacity((n_hi - n_lo + 1) as usize);
    let mut cumulative = Vec::with_capacity(values.capacity());
    let mut sum: u64 = 0;
    for n in n_lo..=n_hi {
        let h = h_count_unchecked(view, n);
        sum += h;
        values.push(h);
        cumulative.push(sum);
    }
    Ok(HProfile {
        n_lo,
        n_hi,
        values,
        cumulative,
    })
}

/// The counting function: number of terms `<= x`.
///
/// ```
/// use stanley::analysis::counting_function;
/// use stanley::{Engine, SeedSet, SequenceState};
///
/// let mut state = SequenceState::new(SeedSet::new(&[0], 3)?, Engine::Sieve);
/// state.extend_to_bound(27)?;
/// assert_eq!(state.terms(), &[0, 1, 3, 4, 9, 10, 12, 13, 27]);
/// assert_eq!(counting_function(&state.view(), 27)?, 9);
/// assert_eq!(counting_function(&state.view(), 2)?, 2);
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn counting_function(view: &SequenceView, x: u64) -> Result<u64, AnalysisError> {
    require_complete(view, x)?;
    Ok(view.count_at(x))
}

/// Which exact statement a [`VerificationReport`] is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inequality {
    /// `H(S,n) = 0  <=>  n in S`, for `n > max A`.
    MembershipCriterion,
    /// `sum H <= c(x)(c(x)-1)/2`.
    PairBound,
    /// `#nonmembers <= x  minus  max A <= sum H`.
    NonmemberBound,
    /// `x <= c(x)(c(x)+1)/2 + max A`.
    QuadraticBound,
    /// `c(x) >= theorem_floor(x, max A)`.
    TheoremFloor,
    /// `c(x) >= (sqrt(2)-eps) sqrt(x)` from some sampled `x` on.
    TheoremEpsilon,
}

impl Inequality {
    /// Stable identifier used in report files.
    pub fn id(self) -> &'static str {
        match self {
            Inequality::MembershipCriterion => "membership-criterion",
            Inequality::PairBound => "pair-bound",
            Inequality::NonmemberBound => "nonmember-bound",
            Inequality::QuadraticBound => "quadratic-bound",
            Inequality::TheoremFloor => "theorem-floor",
            Inequality::TheoremEpsilon => "theorem-epsilon",
        }
    }
}

/// Pass or fail; nothing in between for exact inequalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// The smallest failing location, with both sides of the violated
/// comparison. `lhs`/`rhs` are signed because the nonmember bound's left
/// side can dip below zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Counterexample {
    pub location: u64,
    pub lhs: i128,
    pub rhs: i128,
}

/// Outcome of checking one inequality over a range. A failing verdict
/// always carries the smallest counterexample; scanning stops there, since
/// any single violation of a proven statement signals an implementation
/// bug rather than interesting data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    inequality: Inequality,
    range: (u64, u64),
    verdict: Verdict,
    counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub(crate) fn pass(inequality: Inequality, range: (u64, u64)) -> Self {
        Self {
            inequality,
            range,
            verdict: Verdict::Pass,
            counterexample: None,
        }
    }

    pub(crate) fn fail(inequality: Inequality, range: (u64, u64), cx: Counterexample) -> Self {
        Self {
            inequality,
            range,
            verdict: Verdict::Fail,
            counterexample: Some(cx),
        }
    }

    pub fn inequality(&self) -> Inequality {
        self.inequality
    }

    /// The inclusive interval checked (may be empty, `lo > hi`, for
    /// vacuous checks).
    pub fn range_checked(&self) -> (u64, u64) {
        self.range
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        self.counterexample.as_ref()
    }
}

/// Checks `H(S, n) = 0 <=> n in S` for every `n` with `max A < n <= n_hi`.
/// Vacuously passes when the range is empty.
pub fn verify_membership_criterion(
    view: &SequenceView,
    n_hi: u64,
) -> Result<VerificationReport, AnalysisError> {
    require_k3(view)?;
    require_complete(view, n_hi)?;
    let Some(lo) = view.seed().max().checked_add(1) else {
        // No integer above the seed maximum exists; vacuous pass.
        return Ok(VerificationReport::pass(
            Inequality::MembershipCriterion,
            (u64::MAX, n_hi),
        ));
    };
    // An empty range (lo > n_hi) iterates zero times: vacuous pass.
    for n in lo..=n_hi {
        let h = h_count_unchecked(view, n);
        let member = view.contains(n);
        if (h == 0) != member {
            return Ok(VerificationReport::fail(
                Inequality::MembershipCriterion,
                (lo, n_hi),
                Counterexample {
                    location: n,
                    lhs: h as i128,
                    rhs: member as i128,
                },
            ));
        }
    }
    Ok(VerificationReport::pass(
        Inequality::MembershipCriterion,
        (lo, n_hi),
    ))
}

/// Checks `sum_{0 <= n <= x'} H <= c(x')(c(x')-1)/2` at every integer
/// `x' <= x`.
pub fn verify_pair_bound(
    view: &SequenceView,
    x: u64,
) -> Result<VerificationReport, AnalysisError> {
    require_k3(view)?;
    require_complete(view, x)?;
    let mut cum_h: u128 = 0;
    let mut count: u128 = 0;
    let terms = view.terms();
    let mut next_term = 0usize;
    for point in 0..=x {
        cum_h += h_count_unchecked(view, point) as u128;
        while next_term < terms.len() && terms[next_term] <= point {
            next_term += 1;
            count += 1;
        }
        let rhs = count * count.saturating_sub(1) / 2;
        if cum_h > rhs {
            return Ok(VerificationReport::fail(
                Inequality::PairBound,
                (0, x),
                Counterexample {
                    location: point,
                    lhs: cum_h as i128,
                    rhs: rhs as i128,
                },
            ));
        }
    }
    Ok(VerificationReport::pass(Inequality::PairBound, (0, x)))
}

/// Checks `#{0 <= n <= x', n not in S} - max A <= sum_{0 <= n <= x'} H`
/// at every integer `x' <= x`.
pub fn verify_nonmember_bound(
    view: &SequenceView,
    x: u64,
) -> Result<VerificationReport, AnalysisError> {
    require_k3(view)?;
    require_complete(view, x)?;
    let max_seed = view.seed().max() as i128;
    let mut cum_h: i128 = 0;
    let mut count: i128 = 0;
    let terms = view.terms();
    let mut next_term = 0usize;
    for point in 0..=x {
        cum_h += h_count_unchecked(view, point) as i128;
        while next_term < terms.len() && terms[next_term] <= point {
            next_term += 1;
            count += 1;
        }
        let nonmembers = (point as i128 + 1) - count;
        let lhs = nonmembers - max_seed;
        if lhs > cum_h {
            return Ok(VerificationReport::fail(
                Inequality::NonmemberBound,
                (0, x),
                Counterexample {
                    location: point,
                    lhs,
                    rhs: cum_h,
                },
            ));
        }
    }
    Ok(VerificationReport::pass(Inequality::NonmemberBound, (0, x)))
}

/// Checks `x' <= c(x')(c(x')+1)/2 + max A` at every integer `x' <= x`.
pub fn verify_quadratic_bound(
    view: &SequenceView,
    x: u64,
) -> Result<VerificationReport, AnalysisError> {
    require_k3(view)?;
    require_complete(view, x)?;
    let max_seed = view.seed().max() as u128;
    let mut count: u128 = 0;
    let terms = view.terms();
    let mut next_term = 0usize;
    for point in 0..=x {
        while next_term < terms.len() && terms[next_term] <= point {
            next_term += 1;
            count += 1;
        }
        let rhs = count * (count + 1) / 2 + max_seed;
        if (point as u128) > rhs {
            return Ok(VerificationReport::fail(
                Inequality::QuadraticBound,
                (0, x),
                Counterexample {
                    location: point,
                    lhs: point as i128,
                    rhs: rhs as i128,
                },
            ));
        }
    }
    Ok(VerificationReport::pass(Inequality::QuadraticBound, (0, x)))
}

/// Checks `c(x') >= theorem_floor(x', max A)` at every integer
/// `max A <= x' <= x`.
pub fn verify_theorem_floor(
    view: &SequenceView,
    x: u64,
) -> Result<VerificationReport, AnalysisError> {
    require_k3(view)?;
    require_complete(view, x)?;
    let max_seed = view.seed().max();
    let mut count: u64 = 0;
    let terms = view.terms();
    let mut next_term = 0usize;
    for point in 0..=x {
        while next_term < terms.len() && terms[next_term] <= point {
            next_term += 1;
            count += 1;
        }
        if point < max_seed {
            continue;
        }
        let floor = theorem_floor(point, max_seed).expect("point >= max_seed");
        if count < floor {
            return Ok(VerificationReport::fail(
                Inequality::TheoremFloor,
                (max_seed, x),
                Counterexample {
                    location: point,
                    lhs: count as i128,
                    rhs: floor as i128,
                },
            ));
        }
    }
    Ok(VerificationReport::pass(
        Inequality::TheoremFloor,
        (max_seed, x),
    ))
}

/// The least `s >= 0` with `s(s+1)/2 + max_seed >= x`: the exact lower
/// bound every counting-function value must meet.
///
/// Pure integer arithmetic. An integer square root lands within a step or
/// two of the answer and a local scan finishes the job; floating-point
/// square roots near perfect squares could be off by one, so none are used.
///
/// ```
/// use stanley::analysis::theorem_floor;
///
/// assert_eq!(theorem_floor(11, 1)?, 4);           // 4*5/2 + 1 = 11
/// assert_eq!(theorem_floor(7, 7)?, 0);            // already satisfied at s = 0
/// assert_eq!(theorem_floor(1_000_000, 4)?, 1414); // least s with s(s+1) >= 2*(10^6 - 4)
/// # Ok::<(), stanley::analysis::AnalysisError>(())
/// ```
pub fn theorem_floor(x: u64, max_seed: u64) -> Result<u64, AnalysisError> {
    if x < max_seed {
        return Err(AnalysisError::BadInput { x, max_seed });
    }
    let target = 2 * (x - max_seed) as u128; // need s(s+1) >= target
    if target == 0 {
        return Ok(0);
    }
    let mut s = target.isqrt();
    // s = isqrt(target) satisfies s(s+1) >= target unless rounding says
    // otherwise; walk down to the least satisfying value, then up if we
    // overshot below it.
    while s > 0 && (s - 1) * s >= target {
        s -= 1;
    }
    while s * (s + 1) < target {
        s += 1;
    }
    Ok(s as u64)
}

/// Sampled values of the counting function at strictly increasing `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountingProfile {
    samples: Vec<(u64, u64)>,
    max_seed: u64,
}

/// Problems constructing a [`CountingProfile`] by hand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("profile must contain at least one sample")]
    Empty,
    #[error("sample x values must be strictly increasing (index {0})")]
    NotAscending(usize),
    #[error("sample counts must be nondecreasing (index {0})")]
    Decreasing(usize),
}

impl CountingProfile {
    /// Wraps explicit samples, checking the structural invariants.
    pub fn new(samples: Vec<(u64, u64)>, max_seed: u64) -> Result<Self, ProfileError> {
        if samples.is_empty() {
            return Err(ProfileError::Empty);
        }
        for i in 1..samples.len() {
            if samples[i].0 <= samples[i - 1].0 {
                return Err(ProfileError::NotAscending(i));
            }
            if samples[i].1 < samples[i - 1].1 {
                return Err(ProfileError::Decreasing(i));
            }
        }
        Ok(Self { samples, max_seed })
    }

    /// Samples a materialized prefix on a geometric grid, up to `up_to`.
    pub fn sample(
        view: &SequenceView,
        grid: &GeometricGrid,
        up_to: u64,
    ) -> Result<Self, AnalysisError> {
        require_complete(view, up_to)?;
        let samples = grid
            .values(up_to)
            .into_iter()
            .map(|x| (x, view.count_at(x)))
            .collect();
        Ok(Self {
            samples,
            max_seed: view.seed().max(),
        })
    }

    /// Samples an arbitrary ascending term list (oracle output) the same
    /// way.
    pub fn from_sorted_terms(
        terms: &[u64],
        max_seed: u64,
        grid: &GeometricGrid,
        up_to: u64,
    ) -> Self {
        let samples = grid
            .values(up_to)
            .into_iter()
            .map(|x| (x, terms.partition_point(|&t| t <= x) as u64))
            .collect();
        Self { samples, max_seed }
    }

    /// `(x, count)` pairs, `x` strictly increasing.
    pub fn samples(&self) -> &[(u64, u64)] {
        &self.samples
    }

    /// Largest seed element of the sequence the profile was taken from.
    pub fn max_seed(&self) -> u64 {
        self.max_seed
    }
}

/// The sampling grid `x_j = floor(base * ratio^j)`, `j = 0, 1, 2, ...`,
/// deduplicated and clipped to a maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricGrid {
    pub base: f64,
    pub ratio: f64,
}

impl Default for GeometricGrid {
    fn default() -> Self {
        Self {
            base: 1.0,
            ratio: 2.0,
        }
    }
}

impl GeometricGrid {
    pub fn new(base: f64, ratio: f64) -> Self {
        Self { base, ratio }
    }

    /// Grid values `<= max`, ascending, without duplicates.
    pub fn values(&self, max: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut j = 0u32;
        loop {
            let v = self.base * self.ratio.powi(j as i32);
            if !v.is_finite() || v > max as f64 {
                break;
            }
            let x = v.floor() as u64;
            if x > max {
                break;
            }
            if out.last() != Some(&x) {
                out.push(x);
            }
            j += 1;
            if j > 4096 {
                break; // ratio <= 1 would otherwise never terminate
            }
        }
        out
    }
}

/// Empirical probe of the square-root growth bound at a given `epsilon`.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCheck {
    epsilon: f64,
    x0_observed: Option<u64>,
    floor_violation: Option<Counterexample>,
}

impl TheoremCheck {
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Smallest sampled `x` from which `count >= (sqrt(2)-eps) sqrt(x')`
    /// holds at every sampled `x' >= x`; `None` if even the last sample
    /// fails. Empirical: says nothing beyond the sampled range.
    pub fn x0_observed(&self) -> Option<u64> {
        self.x0_observed
    }

    /// First sample violating the exact floor, if any.
    pub fn floor_violation(&self) -> Option<&Counterexample> {
        self.floor_violation.as_ref()
    }

    /// Both the empirical threshold and the exact floor held.
    pub fn passed(&self) -> bool {
        self.x0_observed.is_some() && self.floor_violation.is_none()
    }
}

/// Evaluates the `(sqrt(2) - epsilon) * sqrt(x)` threshold over a sampled
/// profile and asserts the exact [`theorem_floor`] at every sample.
///
/// ```
/// use stanley::analysis::{theorem_check, CountingProfile, GeometricGrid};
/// use stanley::{Engine, SeedSet, SequenceState};
///
/// let mut state = SequenceState::new(SeedSet::new(&[0, 4], 3)?, Engine::Sieve);
/// state.extend_to_bound(10_000)?;
/// let profile =
///     CountingProfile::sample(&state.view(), &GeometricGrid::default(), 10_000)?;
/// let check = theorem_check(&profile, 0.2)?;
/// assert_eq!(check.x0_observed(), Some(8)); // x = 1, 2, 4 sit below the threshold
/// assert!(check.floor_violation().is_none());
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn theorem_check(
    profile: &CountingProfile,
    epsilon: f64,
) -> Result<TheoremCheck, AnalysisError> {
    if !(epsilon > 0.0 && epsilon < std::f64::consts::SQRT_2) {
        return Err(AnalysisError::BadEpsilon(epsilon));
    }
    let factor = std::f64::consts::SQRT_2 - epsilon;
    let mut x0: Option<u64> = None;
    for &(x, count) in profile.samples() {
        if (count as f64) >= factor * (x as f64).sqrt() {
            x0.get_or_insert(x);
        } else {
            x0 = None;
        }
    }
    let mut floor_violation = None;
    for &(x, count) in profile.samples() {
        if x < profile.max_seed() {
            continue;
        }
        let floor = theorem_floor(x, profile.max_seed())?;
        if count < floor {
            floor_violation = Some(Counterexample {
                location: x,
                lhs: count as i128,
                rhs: floor as i128,
            });
            break;
        }
    }
    Ok(TheoremCheck {
        epsilon,
        x0_observed: x0,
        floor_violation,
    })
}

/// One inter-term gap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gap {
    /// 1-based index: the gap between term `k` and term `k+1`.
    pub index: usize,
    /// The term the gap starts from.
    pub term: u64,
    /// The gap itself.
    pub gap: u64,
}

/// Gap list plus running maximum and record gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapStats {
    gaps: Vec<Gap>,
    max_gap: Gap,
    record_gaps: Vec<Gap>,
}

impl GapStats {
    pub fn gaps(&self) -> &[Gap] {
        &self.gaps
    }

    /// The largest gap (first occurrence on ties).
    pub fn max_gap(&self) -> Gap {
        self.max_gap
    }

    /// Gaps strictly exceeding every earlier gap, in order.
    pub fn record_gaps(&self) -> &[Gap] {
        &self.record_gaps
    }
}

/// Gap statistics of the materialized prefix. Exploratory output: whether
/// the gaps diverge is an open question this tool only measures.
///
/// ```
/// use stanley::analysis::gap_stats;
/// use stanley::{Engine, SeedSet, SequenceState};
///
/// let mut state = SequenceState::new(SeedSet::new(&[0, 1], 3)?, Engine::Sieve);
/// state.extend_to_bound(9)?;
/// // terms: 0, 1, 3, 4, 9
/// let stats = gap_stats(&state.view())?;
/// let gaps: Vec<u64> = stats.gaps().iter().map(|g| g.gap).collect();
/// assert_eq!(gaps, [1, 2, 1, 5]);
/// assert_eq!(stats.max_gap().gap, 5);
/// assert_eq!(stats.record_gaps().len(), 3); // 1, 2, 5
/// # Ok::<(), Box<dyn std::error::Error>>(())
/// ```
pub fn gap_stats(view: &SequenceView) -> Result<GapStats, AnalysisError> {
    let terms = view.terms();
    if terms.len() < 2 {
        return Err(AnalysisError::TooShort(terms.len()));
    }
    let mut gaps = Vec::with_capacity(terms.len() - 1);
    let mut record_gaps: Vec<Gap> = Vec::new();
    let mut max_gap: Option<Gap> = None;
    for (i, pair) in terms.windows(2).enumerate() {
        let gap = Gap {
            index: i + 1,
            term: pair[0],
            gap: pair[1] - pair[0],
        };
        if max_gap.is_none_or(|m| gap.gap > m.gap) {
            max_gap = Some(gap);
            record_gaps.push(gap);
        }
        gaps.push(gap);
    }
    Ok(GapStats {
        gaps,
        max_gap: max_gap.expect("at least one gap"),
        record_gaps,
    })
}

/// Least-squares fit of `log count` against `log x`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentFit {
    sample_points: Vec<(f64, f64)>,
    slope: f64,
    intercept: f64,
    residual: f64,
}

impl ExponentFit {
    /// The `(ln x, ln count)` points that entered the fit.
    pub fn sample_points(&self) -> &[(f64, f64)] {
        &self.sample_points
    }

    pub fn slope(&self) -> f64 {
        self.slope
    }

    pub fn intercept(&self) -> f64 {
        self.intercept
    }

    /// Root-mean-square residual of the fit, in log space.
    pub fn residual(&self) -> f64 {
        self.residual
    }
}

/// Unweighted least squares on `(ln x, ln count)` over the samples with
/// `x >= 2` and `count >= 1`.
pub fn exponent_fit(profile: &CountingProfile) -> Result<ExponentFit, AnalysisError> {
    let pts: Vec<(f64, f64)> = profile
        .samples()
        .iter()
        .filter(|&&(x, c)| x >= 2 && c >= 1)
        .map(|&(x, c)| ((x as f64).ln(), (c as f64).ln()))
        .collect();
    if pts.len() < 3 {
        return Err(AnalysisError::TooFewSamples {
            needed: 3,
            found: pts.len(),
        });
    }
    let n = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(AnalysisError::DegenerateSamples);
    }
    let sxy: f64 = pts
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual = (pts
        .iter()
        .map(|p| (p.1 - (slope * p.0 + intercept)).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(ExponentFit {
        sample_points: pts,
        slope,
        intercept,
        residual,
    })
}
