//! Generate a sequence, checkpoint it, and resume: the continuation is
//! identical to a run that never stopped.

use stanley::io::{read_sequence, write_sequence};
use stanley::{Engine, SeedSet, SequenceState};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = SeedSet::new(&[0, 4], 3)?;

    // ANCHOR: generate
    let mut state = SequenceState::new(seed.clone(), Engine::Sieve);
    state.extend_to_bound(1_000)?;
    println!(
        "S({{0,4}}) has {} terms up to 1000; the first ten: {:?}",
        state.terms().len(),
        &state.terms()[..10]
    );
    // ANCHOR_END: generate

    // ANCHOR: checkpoint
    let mut checkpoint = Vec::new();
    write_sequence(&state.view(), &mut checkpoint)?;

    let snapshot = read_sequence(&checkpoint[..])?;
    let mut resumed = SequenceState::from_snapshot(&snapshot, Engine::Sieve)?;
    resumed.extend_to_bound(10_000)?;

    let mut uninterrupted = SequenceState::new(seed, Engine::Sieve);
    uninterrupted.extend_to_bound(10_000)?;
    assert_eq!(resumed.terms(), uninterrupted.terms());
    println!(
        "resumed and uninterrupted runs agree on {} terms",
        resumed.terms().len()
    );
    // ANCHOR_END: checkpoint
    Ok(())
}
