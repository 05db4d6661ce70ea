//! Command-line front end: `generate`, `verify`, `analyze`, `export`.
//!
//! Exit codes form the scripting contract:
//!
//! | code | meaning                                   |
//! |------|-------------------------------------------|
//! | 0    | success (all verifications passed)        |
//! | 1    | seed or configuration rejected            |
//! | 2    | 64-bit overflow during generation         |
//! | 3    | i/o failure                               |
//! | 4    | a verified inequality failed, or the two  |
//! |      | engines disagreed under `--cross-check`   |
//!
//! Progress and timing go to standard error; standard output carries only
//! data. File outputs are written to a temporary file and renamed into
//! place, so a failing run never leaves partial output behind.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    self, CountingProfile, GeometricGrid, Inequality, VerificationReport,
};
use crate::io as fileio;
use crate::seed::SeedSet;
use crate::sequence::{Engine, SequenceState, Snapshot};

/// Success and the four failure classes; see the module docs.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_OVERFLOW: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;

#[derive(Parser)]
#[command(
    name = "stanley",
    version,
    about = "Generate greedy progression-free sequences and machine-verify their counting bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a sequence and write it as a sequence file
    Generate(GenerateArgs),
    /// Generate, then verify every exact inequality over [0, max-value]
    Verify(VerifyArgs),
    /// Generate, then emit counting/H/gap CSVs and an exponent-fit summary
    Analyze(AnalyzeArgs),
    /// Generate and export the terms as txt (sequence file) or csv
    Export(ExportArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Seed elements, comma separated; order and duplicates do not matter
    #[arg(long, value_name = "LIST")]
    seed: String,

    /// Progression length parameter (3 = no three-term progressions)
    #[arg(long, default_value_t = 3)]
    k: u32,

    /// Generate exactly this many terms
    #[arg(long, value_name = "N", conflicts_with = "max_value")]
    terms: Option<usize>,

    /// Generate every term up to and including this value
    #[arg(long, value_name = "X")]
    max_value: Option<u64>,

    /// Generation engine
    #[arg(long, value_enum, default_value_t = EngineArg::Sieve)]
    engine: EngineArg,

    /// Run both engines and fail if their outputs differ
    #[arg(long)]
    cross_check: bool,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Output file (standard output if omitted)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Also probe the (sqrt(2)-epsilon)*sqrt(x) threshold empirically
    #[arg(long, value_name = "EPS")]
    epsilon: Option<f64>,
    /// Sampling grid for the epsilon probe: RATIO or BASE,RATIO
    #[arg(long, value_name = "GRID")]
    grid: Option<String>,
    /// Output CSV (standard output if omitted)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Deliberately corrupt the generated state before verifying;
    /// proves the verifiers can fail
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultKind>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Sampling grid for the counting profile: RATIO or BASE,RATIO
    #[arg(long, value_name = "GRID")]
    grid: Option<String>,
    /// Output prefix; writes PREFIX.counting.csv, PREFIX.h.csv,
    /// PREFIX.gaps.csv (everything to standard output if omitted)
    #[arg(long, value_name = "PREFIX")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Export format
    #[arg(long, value_enum, default_value_t = FormatArg::Txt)]
    format: FormatArg,
    /// Output file (standard output if omitted)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Sieve,
    Direct,
}

impl From<EngineArg> for Engine {
    fn from(arg: EngineArg) -> Self {
        match arg {
            EngineArg::Sieve => Engine::Sieve,
            EngineArg::Direct => Engine::Direct,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Txt,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FaultKind {
    /// Remove the first non-seed term
    DropTerm,
    /// Insert the smallest value the greedy rule excluded
    AddTerm,
    /// Set membership bits for values that are not terms
    PhantomMember,
    /// Keep only the seed but claim completeness to the full bound
    Truncate,
}

/// Runs the CLI against explicit arguments and returns the process exit
/// code. `main` is a one-line wrapper so tests can call this directly.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_CONFIG,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Export(args) => cmd_export(args),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

/// Either a term-count or a value bound; exactly one per run.
enum Limit {
    Terms(usize),
    MaxValue(u64),
}

fn parse_seed(text: &str, k: u32) -> Result<SeedSet, Failure> {
    let mut elems = Vec::new();
    for piece in text.split(',') {
        let piece = piece.trim();
        let value: i64 = piece
            .parse()
            .map_err(|_| Failure::new(EXIT_CONFIG, format!("invalid seed element {piece:?}")))?;
        elems.push(value);
    }
    SeedSet::new(&elems, k).map_err(|e| Failure::new(EXIT_CONFIG, e.to_string()))
}

fn parse_limit(common: &CommonArgs) -> Result<Limit, Failure> {
    match (common.terms, common.max_value) {
        (Some(n), None) => Ok(Limit::Terms(n)),
        (None, Some(x)) => Ok(Limit::MaxValue(x)),
        (None, None) => Err(Failure::new(
            EXIT_CONFIG,
            "exactly one of --terms or --max-value is required",
        )),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    }
}

fn parse_grid(text: Option<&str>, seed: &SeedSet) -> Result<GeometricGrid, Failure> {
    match text {
        None => Ok(default_grid(seed)),
        Some(s) => {
            let parts: Vec<&str> = s.split(',').collect();
            let parsed: Option<GeometricGrid> = match parts.as_slice() {
                [ratio] => ratio.trim().parse().ok().map(|r| GeometricGrid::new(1.0, r)),
                [base, ratio] => base
                    .trim()
                    .parse()
                    .ok()
                    .zip(ratio.trim().parse().ok())
                    .map(|(b, r)| GeometricGrid::new(b, r)),
                _ => None,
            };
            match parsed {
                Some(g) if g.base >= 1.0 && g.ratio > 1.0 => Ok(g),
                _ => Err(Failure::new(
                    EXIT_CONFIG,
                    format!("invalid --grid {s:?}: expected RATIO or BASE,RATIO with ratio > 1"),
                )),
            }
        }
    }
}

/// Ratio 3 samples the {0, 3^v} family on its natural scale; everything
/// else defaults to doubling.
fn default_grid(seed: &SeedSet) -> GeometricGrid {
    let elems = seed.elements();
    let is_power_of_three = |mut v: u64| {
        if v == 0 {
            return false;
        }
        while v.is_multiple_of(3) {
            v /= 3;
        }
        v == 1
    };
    if elems.len() == 2 && elems[0] == 0 && is_power_of_three(elems[1]) {
        GeometricGrid::new(1.0, 3.0)
    } else {
        GeometricGrid::default()
    }
}

/// Builds the state and runs generation; also handles `--cross-check`.
fn generate_state(common: &CommonArgs, limit: &Limit) -> Result<SequenceState, Failure> {
    let seed = parse_seed(&common.seed, common.k)?;
    let started = Instant::now();
    let state = run_engine(seed.clone(), common.engine.into(), limit)?;
    if common.cross_check {
        let other = match Engine::from(common.engine) {
            Engine::Sieve => Engine::Direct,
            Engine::Direct => Engine::Sieve,
        };
        let shadow = run_engine(seed, other, limit)?;
        if shadow.terms() != state.terms() {
            let i = state
                .terms()
                .iter()
                .zip(shadow.terms())
                .position(|(a, b)| a != b)
                .unwrap_or_else(|| state.terms().len().min(shadow.terms().len()));
            return Err(Failure::new(
                EXIT_VERIFICATION,
                format!(
                    "cross-check failed: engines disagree at term index {i} \
                     ({} vs {})",
                    state.terms().get(i).map_or("missing".into(), u64::to_string),
                    shadow.terms().get(i).map_or("missing".into(), u64::to_string),
                ),
            ));
        }
        eprintln!("cross-check: engines agree on {} terms", state.terms().len());
    }
    eprintln!(
        "terms: {} last: {} elapsed: {:.3}s",
        state.terms().len(),
        state.last_term(),
        started.elapsed().as_secs_f64()
    );
    Ok(state)
}

fn run_engine(seed: SeedSet, engine: Engine, limit: &Limit) -> Result<SequenceState, Failure> {
    let mut state = SequenceState::new(seed, engine);
    let result = match limit {
        Limit::Terms(n) => state.extend_to_len(*n),
        Limit::MaxValue(x) => state.extend_to_bound(*x),
    };
    result.map_err(|e| Failure::new(EXIT_OVERFLOW, e.to_string()))?;
    Ok(state)
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => fileio::write_atomically(path, bytes)
            .map_err(|e| Failure::new(EXIT_IO, e.to_string())),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::new(EXIT_IO, e.to_string())),
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<(), Failure> {
    let limit = parse_limit(&args.common)?;
    let state = generate_state(&args.common, &limit)?;
    let mut buf = Vec::new();
    fileio::write_sequence(&state.view(), &mut buf)
        .map_err(|e| Failure::new(EXIT_IO, e.to_string()))?;
    emit(args.out.as_deref(), &buf)
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    if args.common.k != 3 {
        return Err(Failure::new(
            EXIT_CONFIG,
            format!(
                "verification rests on H, which is defined only for 3-term \
                 progressions; got k = {}",
                args.common.k
            ),
        ));
    }
    let limit = parse_limit(&args.common)?;
    let bound = match limit {
        Limit::MaxValue(x) => x,
        Limit::Terms(_) => {
            return Err(Failure::new(
                EXIT_CONFIG,
                "verify requires a value bound; use --max-value",
            ))
        }
    };
    let state = generate_state(&args.common, &limit)?;
    let mut snapshot = state.snapshot();
    if let Some(kind) = args.inject_fault {
        snapshot = apply_fault(kind, snapshot, bound)?;
        eprintln!("fault injected: state deliberately corrupted before verification");
    }
    let view = snapshot.view();

    let analysis_failure =
        |e: analysis::AnalysisError| Failure::new(EXIT_CONFIG, e.to_string());
    let mut reports = vec![
        analysis::verify_membership_criterion(&view, bound).map_err(analysis_failure)?,
        analysis::verify_pair_bound(&view, bound).map_err(analysis_failure)?,
        analysis::verify_nonmember_bound(&view, bound).map_err(analysis_failure)?,
        analysis::verify_quadratic_bound(&view, bound).map_err(analysis_failure)?,
        analysis::verify_theorem_floor(&view, bound).map_err(analysis_failure)?,
    ];
    if let Some(eps) = args.epsilon {
        let grid = parse_grid(args.grid.as_deref(), snapshot.seed())?;
        let profile = CountingProfile::sample(&view, &grid, bound).map_err(analysis_failure)?;
        if profile.samples().is_empty() {
            eprintln!("theorem-epsilon: no sample points at or below {bound}; skipped");
        } else {
            let check = analysis::theorem_check(&profile, eps).map_err(analysis_failure)?;
            match check.x0_observed() {
                Some(x0) => eprintln!("theorem-epsilon: x0_observed = {x0} (eps = {eps})"),
                None => {
                    eprintln!("theorem-epsilon: no x0 within the sampled range (eps = {eps})")
                }
            }
            reports.push(epsilon_report(&profile, &check, eps));
        }
    }

    let mut buf = Vec::new();
    fileio::write_verification_csv(&reports, &mut buf)
        .map_err(|e| Failure::new(EXIT_IO, e.to_string()))?;
    emit(args.out.as_deref(), &buf)?;

    if reports.iter().all(VerificationReport::passed) {
        Ok(())
    } else {
        Err(Failure::new(
            EXIT_VERIFICATION,
            "verification failed; see the report for the counterexample",
        ))
    }
}

/// Maps a [`analysis::TheoremCheck`] onto a report row.
fn epsilon_report(
    profile: &CountingProfile,
    check: &analysis::TheoremCheck,
    eps: f64,
) -> VerificationReport {
    let samples = profile.samples();
    let range = (samples[0].0, samples[samples.len() - 1].0);
    if let Some(cx) = check.floor_violation() {
        return VerificationReport::fail(Inequality::TheoremEpsilon, range, *cx);
    }
    if check.x0_observed().is_some() {
        return VerificationReport::pass(Inequality::TheoremEpsilon, range);
    }
    // No suffix of the samples satisfies the epsilon bound: report the last
    // failing sample with the threshold it missed.
    let factor = std::f64::consts::SQRT_2 - eps;
    let &(x, count) = samples
        .iter()
        .rev()
        .find(|&&(x, c)| (c as f64) < factor * (x as f64).sqrt())
        .expect("x0 missing implies some sample fails");
    VerificationReport::fail(
        Inequality::TheoremEpsilon,
        range,
        analysis::Counterexample {
            location: x,
            lhs: count as i128,
            rhs: (factor * (x as f64).sqrt()).ceil() as i128,
        },
    )
}

fn apply_fault(kind: FaultKind, snapshot: Snapshot, bound: u64) -> Result<Snapshot, Failure> {
    let seed = snapshot.seed().clone();
    let rebuild = |terms: Vec<u64>, complete_to: u64| {
        Snapshot::from_parts(seed.clone(), terms, complete_to)
            .map_err(|e| Failure::new(EXIT_CONFIG, format!("fault injection failed: {e}")))
    };
    match kind {
        FaultKind::DropTerm => {
            let mut terms = snapshot.terms().to_vec();
            if terms.len() > seed.len() {
                terms.remove(seed.len());
            }
            rebuild(terms, snapshot.complete_to())
        }
        FaultKind::AddTerm => {
            let mut terms = snapshot.terms().to_vec();
            let mut g = seed.max() + 1;
            while terms.binary_search(&g).is_ok() {
                g += 1;
            }
            let pos = terms.partition_point(|&t| t < g);
            terms.insert(pos, g);
            rebuild(terms, snapshot.complete_to().max(g))
        }
        FaultKind::PhantomMember => {
            let mut snapshot = snapshot;
            for v in 0..=bound.min(snapshot.complete_to()) {
                snapshot.inject_phantom_member(v);
            }
            Ok(snapshot)
        }
        FaultKind::Truncate => rebuild(
            seed.elements().to_vec(),
            snapshot.complete_to().max(bound),
        ),
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    if args.common.k != 3 {
        return Err(Failure::new(
            EXIT_CONFIG,
            format!(
                "analyze emits an H profile, and H is defined only for 3-term \
                 progressions; got k = {}",
                args.common.k
            ),
        ));
    }
    let limit = parse_limit(&args.common)?;
    let state = generate_state(&args.common, &limit)?;
    let bound = match limit {
        Limit::MaxValue(x) => x,
        Limit::Terms(_) => state.last_term(),
    };
    let view = state.view();
    let analysis_failure =
        |e: analysis::AnalysisError| Failure::new(EXIT_CONFIG, e.to_string());

    let grid = parse_grid(args.grid.as_deref(), state.seed())?;
    let profile = CountingProfile::sample(&view, &grid, bound).map_err(analysis_failure)?;
    let h = analysis::h_profile(&view, 0, bound).map_err(analysis_failure)?;
    let gaps = analysis::gap_stats(&view).map_err(analysis_failure)?;
    let fit = analysis::exponent_fit(&profile).map_err(analysis_failure)?;

    let io_failure = |e: std::io::Error| Failure::new(EXIT_IO, e.to_string());
    let mut counting_buf = Vec::new();
    fileio::write_counting_csv(&profile, &mut counting_buf).map_err(io_failure)?;
    let mut h_buf = Vec::new();
    fileio::write_h_csv(&h, &mut h_buf).map_err(io_failure)?;
    let mut gaps_buf = Vec::new();
    fileio::write_gaps_csv(&gaps, &mut gaps_buf).map_err(io_failure)?;
    let mut summary_buf = Vec::new();
    fileio::write_exponent_summary(&fit, &grid, &mut summary_buf).map_err(io_failure)?;

    match args.out {
        Some(prefix) => {
            let named = |suffix: &str| {
                let mut name = prefix.as_os_str().to_os_string();
                name.push(suffix);
                PathBuf::from(name)
            };
            emit(Some(&named(".counting.csv")), &counting_buf)?;
            emit(Some(&named(".h.csv")), &h_buf)?;
            emit(Some(&named(".gaps.csv")), &gaps_buf)?;
            emit(None, &summary_buf)
        }
        None => {
            let mut all = counting_buf;
            all.extend_from_slice(&h_buf);
            all.extend_from_slice(&gaps_buf);
            all.extend_from_slice(&summary_buf);
            emit(None, &all)
        }
    }
}

fn cmd_export(args: ExportArgs) -> Result<(), Failure> {
    let limit = parse_limit(&args.common)?;
    let state = generate_state(&args.common, &limit)?;
    let bytes = match args.format {
        FormatArg::Txt => {
            let mut buf = Vec::new();
            fileio::write_sequence(&state.view(), &mut buf)
                .map_err(|e| Failure::new(EXIT_IO, e.to_string()))?;
            buf
        }
        FormatArg::Csv => {
            let mut buf = Vec::new();
            let _ = writeln!(buf, "k,a_k");
            for (i, t) in state.terms().iter().enumerate() {
                let _ = writeln!(buf, "{},{t}", i + 1);
            }
            buf
        }
    };
    emit(args.out.as_deref(), &bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_defaults_follow_seed_family() {
        let zero_three = SeedSet::new(&[0, 3], 3).unwrap();
        assert_eq!(default_grid(&zero_three).ratio, 3.0);
        let zero_nine = SeedSet::new(&[0, 9], 3).unwrap();
        assert_eq!(default_grid(&zero_nine).ratio, 3.0);
        let zero_four = SeedSet::new(&[0, 4], 3).unwrap();
        assert_eq!(default_grid(&zero_four).ratio, 2.0);
        let singleton = SeedSet::new(&[0], 3).unwrap();
        assert_eq!(default_grid(&singleton).ratio, 2.0);
    }

    #[test]
    fn seed_parsing_is_order_insensitive() {
        let seed = parse_seed("4, 0,4", 3).unwrap();
        assert_eq!(seed.elements(), &[0, 4]);
        assert!(parse_seed("0,x", 3).is_err());
        let failure = parse_seed("0,1,2", 3).unwrap_err();
        assert_eq!(failure.code, EXIT_CONFIG);
        assert!(failure.message.contains("0, 1, 2"));
    }

    #[test]
    fn grid_accepts_ratio_or_base_ratio() {
        let seed = SeedSet::new(&[0], 3).unwrap();
        assert_eq!(parse_grid(Some("3"), &seed).unwrap().ratio, 3.0);
        let g = parse_grid(Some("2,5"), &seed).unwrap();
        assert_eq!((g.base, g.ratio), (2.0, 5.0));
        assert!(parse_grid(Some("0.5"), &seed).is_err());
        assert!(parse_grid(Some("1,1"), &seed).is_err());
        assert!(parse_grid(Some("a,b,c"), &seed).is_err());
    }
}
