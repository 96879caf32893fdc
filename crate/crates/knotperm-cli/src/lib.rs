//! Command-line surface for the knotperm library: classification of
//! permutation diagrams, tree/cycle conversion, exhaustive counts,
//! rendering, self-checks, and the displacement-slack experiment.
//!
//! `run` is the whole program behind injectable writers so the binary and
//! the tests share one code path. Exit codes: 0 for a computed answer
//! (whatever the verdict), 1 where a command promises a positive result it
//! cannot deliver (`tree from-cycle` on a knotted cycle, `--check` or
//! `verify` failures, internal inconsistencies), 2 for usage errors,
//! unparsable input, and exceeded enumeration caps.

pub mod render;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use knotperm::count::{
    count_unknotted_cycles, count_unlinked, dg_experiment, schroder, tables, unknot_probability,
    Caps, CountError, CountRow, CountTable,
};
use knotperm::decide::{decide_unknot, is_unlinked, CycleVerdict};
use knotperm::series::{series_f, series_g};
use knotperm::verify::verify_all;
use knotperm::{BivariateSeries, Permutation, SignedTree};
use num_bigint::BigUint;

use render::{RenderFormat, RenderSpec};

#[derive(Parser)]
#[command(
    name = "knotperm",
    version,
    about = "Permutations as link diagrams: decide unknots and unlinks, \
             convert signed trees, count, and draw"
)]
struct Cli {
    /// Worker threads for parallel counting (default: all cores)
    #[arg(long, global = true, env = "KNOTPERM_THREADS")]
    threads: Option<usize>,

    /// Override every enumeration cap with this bound
    #[arg(long, global = true, env = "KNOTPERM_MAX_N")]
    max_n: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide what the diagram of a permutation is
    Classify(ClassifyArgs),
    /// Convert between signed trees and unknotted cycles
    Tree {
        #[command(subcommand)]
        direction: TreeCommand,
    },
    /// Count diagram classes over a range of sizes
    Count(CountArgs),
    /// Draw the diagram of a permutation
    Render(RenderArgs),
    /// Run the self-check suites sized for cycles up to N
    Verify(VerifyArgs),
    /// Compare zero displacement slack against unlinkedness
    DgExperiment(DgArgs),
    /// Probability that a uniformly random n-cycle is unknotted
    ProbUnknot(ProbArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Permutation: one-line images, digits (864275193) or commas (8,6,4,...)
    perm: String,
    /// Emit one line of JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum TreeCommand {
    /// Map a signed tree, e.g. "(+(. .) .)", to its cycle
    ToCycle {
        tree: String,
        /// Print every intermediate cycle, one per line
        #[arg(long)]
        trace: bool,
    },
    /// Recover the canonical tree of an unknotted cycle
    FromCycle { perm: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountTarget {
    /// Cycles whose diagram is an unknot
    UnknottedCycles,
    /// Derangements whose diagram is an unlink
    Unlinked,
    /// All permutations, fixed points counting as components
    UnlinkedWithFixed,
}

#[derive(Args)]
struct CountArgs {
    target: CountTarget,
    /// Single size `7` or inclusive range `2..9`
    range: String,
    /// One column per component count
    #[arg(long)]
    by_components: bool,
    /// Cross-check the counts against the series and frozen tables
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("form").args(["ascii", "svg"])))]
struct RenderArgs {
    perm: String,
    /// Character-grid output (the default)
    #[arg(long)]
    ascii: bool,
    /// SVG document output
    #[arg(long)]
    svg: bool,
    /// Overlay the smoothed circles
    #[arg(long)]
    seifert: bool,
    /// Write to a file instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<std::path::PathBuf>,
    /// Pixels per lattice unit (SVG only, at least 4)
    #[arg(long, default_value_t = 24)]
    cell_size: u32,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest cycle size the suites should cover
    #[arg(id = "suite_max_n", value_name = "MAX_N")]
    max_n: usize,
}

#[derive(Args)]
struct DgArgs {
    /// Single size or inclusive range, e.g. `1..6`
    range: String,
}

#[derive(Args)]
struct ProbArgs {
    n: usize,
}

struct Failure {
    code: i32,
    message: String,
}

type CliResult = Result<i32, Failure>;

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn internal(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: 1,
        message: format!("internal inconsistency: {message}"),
    }
}

fn cap(e: CountError) -> Failure {
    usage(e.to_string())
}

/// Parses `"7"` or `"2..9"` (inclusive).
fn parse_range(text: &str) -> Result<(usize, usize), Failure> {
    let bad = || usage(format!("invalid range `{text}`: use N or A..B (inclusive)"));
    if let Some((a, b)) = text.split_once("..") {
        let lo: usize = a.trim().parse().map_err(|_| bad())?;
        let hi: usize = b.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(usage(format!("empty range `{text}`")));
        }
        Ok((lo, hi))
    } else {
        let n: usize = text.trim().parse().map_err(|_| bad())?;
        Ok((n, n))
    }
}

fn parse_perm(text: &str) -> Result<Permutation, Failure> {
    text.trim()
        .parse()
        .map_err(|e| usage(format!("invalid permutation `{}`: {e}", text.trim())))
}

/// Runs the whole program. `args` includes the program name, as on a real
/// command line.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };

    if let Some(k) = cli.threads {
        // The global pool can only be configured once per process; a
        // repeat (as in tests) keeps the first configuration.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global();
    }
    let caps = match cli.max_n {
        Some(n) => Caps::with_all(n),
        None => Caps::default(),
    };

    let result = match &cli.command {
        Command::Classify(args) => cmd_classify(args, out),
        Command::Tree { direction } => cmd_tree(direction, out),
        Command::Count(args) => cmd_count(args, &caps, out),
        Command::Render(args) => cmd_render(args, out),
        Command::Verify(args) => cmd_verify(args, &caps, out),
        Command::DgExperiment(args) => cmd_dg(args, &caps, out),
        Command::ProbUnknot(args) => cmd_prob(args, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn cmd_classify(args: &ClassifyArgs, out: &mut dyn Write) -> CliResult {
    let p = parse_perm(&args.perm)?;
    let input = args.perm.trim();
    let report = if p.n() >= 2 && p.is_single_cycle() {
        let verdict = decide_unknot(&p).map_err(internal)?;
        report::cycle_report(input, &p, &verdict)
    } else {
        let verdict = is_unlinked(&p, true).map_err(internal)?;
        report::link_report(input, &p, &verdict)
    };
    if args.json {
        let line = serde_json::to_string(&report).map_err(internal)?;
        let _ = writeln!(out, "{line}");
    } else {
        let _ = write!(out, "{}", report::render_text(&report));
    }
    Ok(0)
}

fn cmd_tree(direction: &TreeCommand, out: &mut dyn Write) -> CliResult {
    match direction {
        TreeCommand::ToCycle { tree, trace } => {
            let t: SignedTree = tree
                .trim()
                .parse()
                .map_err(|e| usage(format!("invalid tree `{}`: {e}", tree.trim())))?;
            if *trace {
                for state in t.to_cycle_trace() {
                    let _ = writeln!(out, "{}", state.compact());
                }
            } else {
                let _ = writeln!(out, "{}", t.to_cycle());
            }
            Ok(0)
        }
        TreeCommand::FromCycle { perm } => {
            let p = parse_perm(perm)?;
            if p.n() < 2 || !p.is_single_cycle() {
                return Err(usage(format!(
                    "`{}` is not a single cycle of length at least 2",
                    perm.trim()
                )));
            }
            match decide_unknot(&p).map_err(internal)? {
                CycleVerdict::Unknot { tree } => {
                    let _ = writeln!(out, "{tree}");
                    Ok(0)
                }
                CycleVerdict::Knotted => {
                    let _ = writeln!(out, "knotted");
                    Ok(1)
                }
            }
        }
    }
}

fn expected_unknotted(n: usize) -> BigUint {
    if n < 2 {
        BigUint::zero()
    } else {
        schroder(n - 1)
    }
}

fn check_against_series(
    rows: &[CountRow],
    series: &BivariateSeries,
    label: &str,
) -> Result<(), Failure> {
    for row in rows {
        for k in 0..=row.n + 1 {
            let got = row
                .by_components
                .get(k)
                .cloned()
                .unwrap_or_else(BigUint::zero);
            if series.coefficient(k, row.n) != got.into() {
                return Err(Failure {
                    code: 1,
                    message: format!(
                        "check: {label} series disagrees with enumeration at n={}, k={k}",
                        row.n
                    ),
                });
            }
        }
    }
    Ok(())
}

fn cmd_count(args: &CountArgs, caps: &Caps, out: &mut dyn Write) -> CliResult {
    let (lo, hi) = parse_range(&args.range)?;
    match args.target {
        CountTarget::UnknottedCycles => {
            let _ = writeln!(out, "n\tcount");
            let mut counts = Vec::new();
            for n in lo..=hi {
                let c = count_unknotted_cycles(n, caps).map_err(cap)?;
                let _ = writeln!(out, "{n}\t{c}");
                counts.push((n, c));
            }
            if args.check {
                for (n, c) in &counts {
                    let want = expected_unknotted(*n);
                    let vendored_ok = *n < 2
                        || *n > tables::SCHRODER.len() + 1
                        || *c == BigUint::from(tables::SCHRODER[*n - 2]);
                    if *c != want || !vendored_ok {
                        return Err(Failure {
                            code: 1,
                            message: format!("check: unknotted-cycles mismatch at n={n}"),
                        });
                    }
                }
                let _ = writeln!(out, "check: ok");
            }
        }
        CountTarget::Unlinked | CountTarget::UnlinkedWithFixed => {
            let include_fixed = args.target == CountTarget::UnlinkedWithFixed;
            let rows: Vec<CountRow> = (lo..=hi)
                .map(|n| count_unlinked(n, include_fixed, caps))
                .collect::<Result<_, _>>()
                .map_err(cap)?;
            if args.by_components {
                let table = CountTable { rows: rows.clone() };
                let _ = write!(out, "{table}");
            } else {
                let _ = writeln!(out, "n\ttotal");
                for row in &rows {
                    let _ = writeln!(out, "{}\t{}", row.n, row.total);
                }
            }
            if args.check {
                check_count_tables(&rows, include_fixed)?;
                let series = if include_fixed {
                    series_g(hi).map_err(internal)?
                } else {
                    series_f(hi).map_err(internal)?
                };
                let label = if include_fixed { "unlinked-with-fixed" } else { "unlinked" };
                check_against_series(&rows, &series, label)?;
                let _ = writeln!(out, "check: ok");
            }
        }
    }
    Ok(0)
}

fn check_count_tables(rows: &[CountRow], include_fixed: bool) -> Result<(), Failure> {
    let mismatch = |n: usize| Failure {
        code: 1,
        message: format!("check: totals disagree with the frozen table at n={n}"),
    };
    for row in rows {
        let n = row.n;
        if include_fixed {
            if (1..=tables::UNLINKED_WITH_FIXED.len()).contains(&n)
                && row.total != BigUint::from(tables::UNLINKED_WITH_FIXED[n - 1])
            {
                return Err(mismatch(n));
            }
        } else {
            if (1..=tables::UNLINKED_TOTALS.len()).contains(&n) {
                if row.total != BigUint::from(tables::UNLINKED_TOTALS[n - 1]) {
                    return Err(mismatch(n));
                }
                for (k, want) in tables::UNLINKED_BY_COMPONENTS.iter().enumerate() {
                    let got = row
                        .by_components
                        .get(k + 1)
                        .cloned()
                        .unwrap_or_else(BigUint::zero);
                    if got != BigUint::from(want[n - 1]) {
                        return Err(mismatch(n));
                    }
                }
            }
        }
    }
    Ok(())
}

fn cmd_render(args: &RenderArgs, out: &mut dyn Write) -> CliResult {
    let p = parse_perm(&args.perm)?;
    let format = if args.svg {
        RenderFormat::Svg
    } else {
        RenderFormat::Ascii
    };
    if format == RenderFormat::Svg && args.cell_size < 4 {
        return Err(usage(format!(
            "cell size {} is too small for svg (minimum 4)",
            args.cell_size
        )));
    }
    let spec = RenderSpec {
        cell_size: args.cell_size,
        show_seifert: args.seifert,
        format,
        ..RenderSpec::default()
    };
    let text = match format {
        RenderFormat::Ascii => render::ascii(&p, &spec),
        RenderFormat::Svg => render::svg(&p, &spec).map_err(internal)?,
    };
    match &args.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let _ = write!(out, "{text}");
        }
    }
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs, caps: &Caps, out: &mut dyn Write) -> CliResult {
    if args.max_n > caps.max_cycle_n {
        return Err(cap(CountError::CapExceeded {
            requested: args.max_n,
            cap: caps.max_cycle_n,
        }));
    }
    let reports = verify_all(args.max_n, caps);
    for report in &reports {
        let _ = write!(out, "{report}");
    }
    let ok = reports.iter().all(|r| r.passed());
    if ok {
        let _ = writeln!(out, "verify: all checks passed");
        Ok(0)
    } else {
        let _ = writeln!(out, "verify: FAILED");
        Ok(1)
    }
}

fn cmd_dg(args: &DgArgs, caps: &Caps, out: &mut dyn Write) -> CliResult {
    let (lo, hi) = parse_range(&args.range)?;
    for n in lo..=hi {
        let report = dg_experiment(n, caps).map_err(cap)?;
        let _ = writeln!(out, "{report}");
    }
    Ok(0)
}

fn cmd_prob(args: &ProbArgs, out: &mut dyn Write) -> CliResult {
    match unknot_probability(args.n) {
        Some(r) => {
            let _ = writeln!(out, "{}/{}", r.numer(), r.denom());
            Ok(0)
        }
        None => Err(usage("the probability needs a cycle length of at least 2")),
    }
}
