//! Machine-verify every exact inequality for a seed, at every integer up
//! to a bound, and print the report CSV.

use stanley::analysis::{
    theorem_check, verify_membership_criterion, verify_nonmember_bound, verify_pair_bound,
    verify_quadratic_bound, verify_theorem_floor, CountingProfile, GeometricGrid,
};
use stanley::io::write_verification_csv;
use stanley::{Engine, SeedSet, SequenceState};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // ANCHOR: verify
    let bound = 10_000;
    let seed = SeedSet::new(&[0, 1, 4], 3)?;
    let mut state = SequenceState::new(seed, Engine::Sieve);
    state.extend_to_bound(bound)?;
    let view = state.view();

    let reports = vec![
        verify_membership_criterion(&view, bound)?,
        verify_pair_bound(&view, bound)?,
        verify_nonmember_bound(&view, bound)?,
        verify_quadratic_bound(&view, bound)?,
        verify_theorem_floor(&view, bound)?,
    ];
    write_verification_csv(&reports, std::io::stdout())?;
    // ANCHOR_END: verify

    // ANCHOR: epsilon
    let profile = CountingProfile::sample(&view, &GeometricGrid::default(), bound)?;
    let check = theorem_check(&profile, 0.2)?;
    println!(
        "counting function clears (sqrt(2) - 0.2) * sqrt(x) from x = {:?} on",
        check.x0_observed()
    );
    // ANCHOR_END: epsilon
    Ok(())
}
