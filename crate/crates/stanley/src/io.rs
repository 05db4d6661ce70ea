//! Bit-exact text formats: sequence checkpoints and profile CSVs.
//!
//! A sequence file is a three-line header followed by one decimal term per
//! line, ascending — the same shape as an OEIS b-file, and just as
//! diff-able:
//!
//! ```text
//! # seed: 0,1
//! # k: 3
//! # complete-to: 3
//! 0
//! 1
//! 3
//! ```
//!
//! The header order is fixed, the line ending is `\n`, and serialization is
//! deterministic: identical state produces identical bytes, on every
//! platform. A checkpoint stores only the terms and this metadata; sieve
//! structures are rebuilt on load.

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::Path;

use thiserror::Error;

use crate::analysis::{
    CountingProfile, ExponentFit, GapStats, GeometricGrid, HProfile, Verdict,
    VerificationReport,
};
use crate::oracle;
use crate::seed::SeedSet;
use crate::sequence::{SequenceView, Snapshot};

/// Number of trailing terms re-checked for progression-freeness on load.
const SPOT_CHECK_TERMS: usize = 100;

/// Everything that can go wrong reading or writing sequence files.
#[derive(Debug, Error)]
pub enum FileError {
    #[error("i/o failure: {0}")]
    Io(#[from] io::Error),
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("inconsistent sequence file: {0}")]
    Consistency(String),
}

/// Serializes a sequence prefix. Deterministic bytes for identical state.
pub fn write_sequence<W: Write>(view: &SequenceView, mut w: W) -> io::Result<()> {
    write!(w, "# seed: ")?;
    for (i, e) in view.seed().elements().iter().enumerate() {
        if i > 0 {
            write!(w, ",")?;
        }
        write!(w, "{e}")?;
    }
    writeln!(w)?;
    writeln!(w, "# k: {}", view.k())?;
    writeln!(w, "# complete-to: {}", view.complete_to())?;
    for t in view.terms() {
        writeln!(w, "{t}")?;
    }
    Ok(())
}

/// Parses a sequence file back into an analysable [`Snapshot`].
///
/// Structural checks on load: header fields well-formed, seed valid, terms
/// ascending and starting with the seed, completeness bound covering the
/// last term, and a progression-freeness spot check of the last 100 terms
/// against their full prefixes.
pub fn read_sequence<R: BufRead>(reader: R) -> Result<Snapshot, FileError> {
    let mut lines = reader.lines().enumerate();

    let seed_elems = {
        let (idx, line) = next_line(&mut lines)?;
        let rest = expect_prefix(idx, &line, "# seed: ")?;
        let mut elems = Vec::new();
        for piece in rest.split(',') {
            elems.push(parse_decimal(piece).map_err(|reason| FileError::Parse {
                line: idx + 1,
                reason,
            })?);
        }
        elems
    };
    let k = {
        let (idx, line) = next_line(&mut lines)?;
        let rest = expect_prefix(idx, &line, "# k: ")?;
        parse_decimal(rest)
            .ok()
            .and_then(|v| u32::try_from(v).ok())
            .ok_or_else(|| FileError::Parse {
                line: idx + 1,
                reason: format!("invalid k value {rest:?}"),
            })?
    };
    let complete_to = {
        let (idx, line) = next_line(&mut lines)?;
        let rest = expect_prefix(idx, &line, "# complete-to: ")?;
        parse_decimal(rest).map_err(|reason| FileError::Parse {
            line: idx + 1,
            reason,
        })?
    };

    let seed = SeedSet::from_unsigned(&seed_elems, k)
        .map_err(|e| FileError::Consistency(format!("invalid seed in header: {e}")))?;
    if seed.elements() != seed_elems {
        return Err(FileError::Consistency(
            "seed elements in header are not sorted and distinct".into(),
        ));
    }

    let mut terms = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        let value = parse_decimal(&line).map_err(|reason| FileError::Parse {
            line: idx + 1,
            reason,
        })?;
        if let Some(&prev) = terms.last() {
            if value <= prev {
                return Err(FileError::Consistency(format!(
                    "terms not strictly increasing at line {}: {} after {}",
                    idx + 1,
                    value,
                    prev
                )));
            }
        }
        terms.push(value);
    }

    let snapshot = Snapshot::from_parts(seed, terms, complete_to)
        .map_err(|e| FileError::Consistency(e.to_string()))?;

    // Spot check: none of the last 100 terms may complete a k-term
    // progression over its predecessors.
    let terms = snapshot.terms();
    let start = terms.len().saturating_sub(SPOT_CHECK_TERMS).max(1);
    for i in start..terms.len() {
        if oracle::completes_progression(&terms[..i], terms[i], snapshot.seed().k()) {
            return Err(FileError::Consistency(format!(
                "term {} completes a {}-term arithmetic progression",
                terms[i],
                snapshot.seed().k()
            )));
        }
    }
    Ok(snapshot)
}

fn next_line(
    lines: &mut impl Iterator<Item = (usize, io::Result<String>)>,
) -> Result<(usize, String), FileError> {
    match lines.next() {
        Some((idx, line)) => Ok((idx, line?)),
        None => Err(FileError::Parse {
            line: 0,
            reason: "unexpected end of file in header".into(),
        }),
    }
}

fn expect_prefix<'a>(idx: usize, line: &'a str, prefix: &str) -> Result<&'a str, FileError> {
    line.strip_prefix(prefix).ok_or_else(|| FileError::Parse {
        line: idx + 1,
        reason: format!("expected a line starting with {prefix:?}"),
    })
}

/// The body grammar: `[0-9]+`, no leading zeros except the literal "0".
fn parse_decimal(s: &str) -> Result<u64, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{s:?} is not a decimal integer"));
    }
    if s.len() > 1 && s.starts_with('0') {
        return Err(format!("{s:?} has a leading zero"));
    }
    s.parse::<u64>()
        .map_err(|_| format!("{s:?} does not fit in 64 bits"))
}

/// Writes `content` to `path` atomically: a temporary file in the same
/// directory is renamed over the destination only after a complete write,
/// so failures never leave partial output behind.
pub fn write_atomically(path: &Path, content: &[u8]) -> Result<(), FileError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if path.file_name().is_none() {
        return Err(FileError::Io(io::Error::new(
            io::ErrorKind::InvalidInput,
            format!("{} is not a writable file path", path.display()),
        )));
    }
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(content)?;
    tmp.flush()?;
    tmp.persist(path)
        .map_err(|e| FileError::Io(e.error))?;
    Ok(())
}

/// Serializes a sequence prefix to a file, atomically.
pub fn write_sequence_to_path(view: &SequenceView, path: &Path) -> Result<(), FileError> {
    let mut buf = Vec::new();
    write_sequence(view, &mut buf)?;
    write_atomically(path, &buf)
}

/// Loads a sequence file from disk.
pub fn read_sequence_from_path(path: &Path) -> Result<Snapshot, FileError> {
    let file = fs::File::open(path)?;
    read_sequence(io::BufReader::new(file))
}

/// Counting profile CSV: `x,count`.
pub fn write_counting_csv<W: Write>(profile: &CountingProfile, mut w: W) -> io::Result<()> {
    writeln!(w, "x,count")?;
    for &(x, count) in profile.samples() {
        writeln!(w, "{x},{count}")?;
    }
    Ok(())
}

/// H profile CSV: `n,h,cumulative`.
pub fn write_h_csv<W: Write>(profile: &HProfile, mut w: W) -> io::Result<()> {
    writeln!(w, "n,h,cumulative")?;
    let (lo, _) = profile.range();
    for (i, (&h, &cum)) in profile
        .values()
        .iter()
        .zip(profile.cumulative())
        .enumerate()
    {
        writeln!(w, "{},{h},{cum}", lo + i as u64)?;
    }
    Ok(())
}

/// Gap CSV: `k,a_k,gap`.
pub fn write_gaps_csv<W: Write>(stats: &GapStats, mut w: W) -> io::Result<()> {
    writeln!(w, "k,a_k,gap")?;
    for g in stats.gaps() {
        writeln!(w, "{},{},{}", g.index, g.term, g.gap)?;
    }
    Ok(())
}

/// Verification CSV: one row per inequality, then a single
/// machine-readable summary line — `PASS`, or `FAIL <inequality>
/// <location>` for the first failure — so scripts can gate on the last
/// line alone.
pub fn write_verification_csv<W: Write>(
    reports: &[VerificationReport],
    mut w: W,
) -> io::Result<()> {
    writeln!(w, "inequality,x_lo,x_hi,verdict,location,lhs,rhs")?;
    for r in reports {
        let (lo, hi) = r.range_checked();
        match (r.verdict(), r.counterexample()) {
            (Verdict::Pass, _) => {
                writeln!(w, "{},{lo},{hi},pass,,,", r.inequality().id())?;
            }
            (Verdict::Fail, Some(cx)) => {
                writeln!(
                    w,
                    "{},{lo},{hi},fail,{},{},{}",
                    r.inequality().id(),
                    cx.location,
                    cx.lhs,
                    cx.rhs
                )?;
            }
            (Verdict::Fail, None) => unreachable!("failing report always carries a witness"),
        }
    }
    match reports
        .iter()
        .find(|r| r.verdict() == Verdict::Fail)
    {
        None => writeln!(w, "PASS")?,
        Some(r) => {
            let cx = r.counterexample().expect("failing report has witness");
            writeln!(w, "FAIL {} {}", r.inequality().id(), cx.location)?;
        }
    }
    Ok(())
}

/// Exponent-fit summary, plain `key: value` lines.
pub fn write_exponent_summary<W: Write>(
    fit: &ExponentFit,
    grid: &GeometricGrid,
    mut w: W,
) -> io::Result<()> {
    writeln!(w, "slope: {:.6}", fit.slope())?;
    writeln!(w, "intercept: {:.6}", fit.intercept())?;
    writeln!(w, "residual: {:.6}", fit.residual())?;
    writeln!(w, "samples: {}", fit.sample_points().len())?;
    writeln!(w, "grid: base={} ratio={}", grid.base, grid.ratio)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{Engine, SequenceState};

    fn state(raw: &[i64], bound: u64) -> SequenceState {
        let mut s = SequenceState::new(SeedSet::new(raw, 3).unwrap(), Engine::Sieve);
        s.extend_to_bound(bound).unwrap();
        s
    }

    #[test]
    fn golden_bytes() {
        let mut s = SequenceState::new(SeedSet::new(&[0, 1], 3).unwrap(), Engine::Sieve);
        s.next_term().unwrap();
        let mut buf = Vec::new();
        write_sequence(&s.view(), &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "# seed: 0,1\n# k: 3\n# complete-to: 3\n0\n1\n3\n"
        );
    }

    #[test]
    fn roundtrip_preserves_everything() {
        let s = state(&[0, 4], 500);
        let mut buf = Vec::new();
        write_sequence(&s.view(), &mut buf).unwrap();
        let snap = read_sequence(&buf[..]).unwrap();
        assert_eq!(snap.terms(), s.terms());
        assert_eq!(snap.seed(), s.seed());
        assert_eq!(snap.complete_to(), s.complete_to());
    }

    #[test]
    fn descending_terms_rejected() {
        let text = "# seed: 0,1\n# k: 3\n# complete-to: 9\n0\n1\n4\n3\n";
        match read_sequence(text.as_bytes()) {
            Err(FileError::Consistency(msg)) => {
                assert!(msg.contains("strictly increasing"), "{msg}")
            }
            other => panic!("expected consistency error, got {other:?}"),
        }
    }

    #[test]
    fn progression_in_body_rejected() {
        // 0,1,2 is a 3-term progression.
        let text = "# seed: 0,1\n# k: 3\n# complete-to: 2\n0\n1\n2\n";
        match read_sequence(text.as_bytes()) {
            Err(FileError::Consistency(msg)) => {
                assert!(msg.contains("arithmetic progression"), "{msg}")
            }
            other => panic!("expected consistency error, got {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "# seed: 0,1\n# k: 3\n# complete-to: 4\n0\n1\n03\n";
        match read_sequence(text.as_bytes()) {
            Err(FileError::Parse { line: 6, reason }) => {
                assert!(reason.contains("leading zero"), "{reason}")
            }
            other => panic!("expected parse error at line 6, got {other:?}"),
        }
        let text = "# seed 0,1\n";
        assert!(matches!(
            read_sequence(text.as_bytes()),
            Err(FileError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn bad_header_values_rejected() {
        // Completeness bound below the last term.
        let text = "# seed: 0,1\n# k: 3\n# complete-to: 2\n0\n1\n3\n";
        match read_sequence(text.as_bytes()) {
            Err(FileError::Consistency(msg)) => assert!(msg.contains("below"), "{msg}"),
            other => panic!("expected consistency error, got {other:?}"),
        }
        // Terms must start with the seed.
        let text = "# seed: 0,2\n# k: 3\n# complete-to: 4\n0\n1\n4\n";
        assert!(matches!(
            read_sequence(text.as_bytes()),
            Err(FileError::Consistency(_))
        ));
        // Seed in header must itself be progression-free.
        let text = "# seed: 0,1,2\n# k: 3\n# complete-to: 2\n0\n1\n2\n";
        match read_sequence(text.as_bytes()) {
            Err(FileError::Consistency(msg)) => assert!(msg.contains("seed"), "{msg}"),
            other => panic!("expected consistency error, got {other:?}"),
        }
        // Malformed k.
        let text = "# seed: 0,1\n# k: three\n# complete-to: 2\n";
        assert!(matches!(
            read_sequence(text.as_bytes()),
            Err(FileError::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn empty_destination_path_is_io_failure() {
        let s = state(&[0, 1], 4);
        let err = write_sequence_to_path(&s.view(), Path::new("")).unwrap_err();
        assert!(matches!(err, FileError::Io(_)));
    }

    #[test]
    fn verification_csv_pass_and_fail_lines() {
        use crate::analysis::{verify_nonmember_bound, verify_quadratic_bound};
        let honest = state(&[0, 1], 100);
        let ok = verify_quadratic_bound(&honest.view(), 100).unwrap();
        let mut buf = Vec::new();
        write_verification_csv(std::slice::from_ref(&ok), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "inequality,x_lo,x_hi,verdict,location,lhs,rhs\nquadratic-bound,0,100,pass,,,\nPASS\n"
        );

        let broken = Snapshot::from_parts(
            SeedSet::new(&[0, 1], 3).unwrap(),
            vec![0, 1],
            50,
        )
        .unwrap();
        let bad = verify_nonmember_bound(&broken.view(), 50).unwrap();
        let mut buf = Vec::new();
        write_verification_csv(&[ok, bad], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.ends_with("FAIL nonmember-bound 4\n"), "{text}");
    }
}
