//! Command-line front end: inline flags or JSON jobs, JSON reports on stdout.

pub mod corpus;
pub mod job;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

pub use corpus::{run_corpus, CorpusSummary, Outcome};
pub use job::{run_job, run_job_text, Command, CoverSpec, Job, JobError, OptionsSpec, Report, RingSpec};

use crate::polyring::RationalExponent;

#[derive(Debug, Parser)]
#[command(name = "cartierlab", version, about = "Test ideals, Cartier maps and Kummer covers in characteristic p")]
pub struct Cli {
    /// Run a JSON job file instead of a subcommand.
    #[arg(long, value_name = "FILE")]
    job: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Debug, Args)]
struct RingArgs {
    /// Characteristic.
    #[arg(short = 'p', long = "p")]
    p: u64,
    /// Comma-separated variable names, largest first.
    #[arg(long, value_delimiter = ',', required = true)]
    vars: Vec<String>,
    /// Hypersurface relation w; the ambient ring becomes k[vars]/(w).
    #[arg(long)]
    relation: Option<String>,
}

impl RingArgs {
    fn spec(self) -> RingSpec {
        RingSpec {
            p: self.p,
            vars: self.vars,
            relation: self.relation,
        }
    }
}

#[derive(Debug, Args)]
struct SolverArgs {
    #[arg(long)]
    e_max: Option<u32>,
    /// Consecutive equal partial sums required before stopping.
    #[arg(long)]
    window: Option<u32>,
    /// S-pair budget per Gröbner computation.
    #[arg(long)]
    spair_cap: Option<usize>,
    /// classical or premultiplied.
    #[arg(long)]
    scheme: Option<String>,
    /// Test element c.
    #[arg(long)]
    c: Option<String>,
    /// Power N of the test element.
    #[arg(long)]
    n_power: Option<u64>,
}

impl SolverArgs {
    fn spec(self) -> Option<OptionsSpec> {
        let o = OptionsSpec {
            e_max: self.e_max,
            window: self.window,
            spair_cap: self.spair_cap,
            scheme: self.scheme,
            c: self.c,
            n_power: self.n_power,
        };
        (o != OptionsSpec::default()).then_some(o)
    }
}

#[derive(Debug, Args)]
struct PairArgs {
    #[arg(long)]
    g: String,
    #[arg(long)]
    t: RationalExponent,
}

#[derive(Debug, Args)]
struct CoverArgs {
    #[arg(long)]
    cover_n: u32,
    #[arg(long)]
    cover_f: String,
    /// Skip the irreducibility check on the branch data.
    #[arg(long)]
    cover_asserted: bool,
}

impl CoverArgs {
    fn spec(self) -> CoverSpec {
        CoverSpec {
            n: self.cover_n,
            f: self.cover_f,
            asserted: self.cover_asserted,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Test ideal τ(g^t).
    Tau {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Bracket the F-pure threshold of g.
    Fpt {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        g: String,
        /// Frobenius depth for the ν bracket.
        #[arg(long)]
        e: Option<u32>,
        #[arg(long)]
        denominator_bound: Option<u64>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Apply Φ^e(F^e_* h ·) to f.
    Cartier {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        f: String,
    },
    /// ν_g(p^e).
    Nu {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        g: String,
        #[arg(long)]
        e: u32,
    },
    /// Check the trace transformation rule for τ on a Kummer cover.
    VerifyTransform {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        cover: CoverArgs,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Check the trace transformation rule for monomial multiplier ideals.
    VerifyMultiplierTransform {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        cover: CoverArgs,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Trace image Tr(S) and the containment τ(ω_R) ⊆ Tr(S).
    TraceImage {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        cover: CoverArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Multiplier ideal J(g^t) of a monomial.
    Multiplier {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Compare τ(g^t) with J(g^t) for a monomial g.
    Compare {
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Run a JSON job file.
    Run {
        #[arg(long, value_name = "FILE")]
        job: PathBuf,
    },
    /// Run every *.job.json in a directory against its golden.
    Corpus {
        dir: PathBuf,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Rewrite the goldens instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

fn pair_job(command: Command, ring: RingArgs, pair: PairArgs) -> Job {
    let mut job = Job::new(command);
    job.ring = Some(ring.spec());
    job.g = Some(pair.g);
    job.t = Some(pair.t);
    job
}

fn inline_job(cmd: Cmd) -> Job {
    match cmd {
        Cmd::Tau { ring, pair, solver } => Job {
            options: solver.spec(),
            ..pair_job(Command::Tau, ring, pair)
        },
        Cmd::Compare { ring, pair, solver } => Job {
            options: solver.spec(),
            ..pair_job(Command::Compare, ring, pair)
        },
        Cmd::Multiplier { ring, pair } => pair_job(Command::Multiplier, ring, pair),
        Cmd::VerifyTransform {
            ring,
            cover,
            pair,
            solver,
        } => Job {
            cover: Some(cover.spec()),
            options: solver.spec(),
            ..pair_job(Command::VerifyTransform, ring, pair)
        },
        Cmd::VerifyMultiplierTransform {
            ring,
            cover,
            pair,
            solver,
        } => Job {
            cover: Some(cover.spec()),
            options: solver.spec(),
            ..pair_job(Command::VerifyMultiplierTransform, ring, pair)
        },
        Cmd::Fpt {
            ring,
            g,
            e,
            denominator_bound,
            solver,
        } => Job {
            ring: Some(ring.spec()),
            g: Some(g),
            e,
            denominator_bound,
            options: solver.spec(),
            ..Job::new(Command::Fpt)
        },
        Cmd::Cartier { ring, e, h, f } => Job {
            ring: Some(ring.spec()),
            e: Some(e),
            h,
            f: Some(f),
            ..Job::new(Command::Cartier)
        },
        Cmd::Nu { ring, g, e } => Job {
            ring: Some(ring.spec()),
            g: Some(g),
            e: Some(e),
            ..Job::new(Command::Nu)
        },
        Cmd::TraceImage { ring, cover, solver } => Job {
            ring: Some(ring.spec()),
            cover: Some(cover.spec()),
            options: solver.spec(),
            ..Job::new(Command::TraceImage)
        },
        Cmd::Run { .. } | Cmd::Corpus { .. } => unreachable!("not an inline job"),
    }
}

fn job_file(path: &Path) -> Report {
    match std::fs::read_to_string(path) {
        Ok(text) => run_job_text(&text, path.parent()),
        Err(e) => job::error_report(None, None, &JobError::Io(format!("{}: {e}", path.display())), 0),
    }
}

fn corpus(dir: &Path, threads: usize, bless: bool, out: &mut impl Write) -> std::io::Result<i32> {
    let summary = match run_corpus(dir, threads, bless) {
        Ok(s) => s,
        Err(e) => {
            writeln!(out, "corpus error: {e}")?;
            return Ok(1);
        }
    };
    for case in &summary.cases {
        match &case.outcome {
            Outcome::Pass => writeln!(out, "ok       {}", case.name)?,
            Outcome::Blessed => writeln!(out, "blessed  {}", case.name)?,
            Outcome::MissingGolden => writeln!(out, "MISSING  {}", case.name)?,
            Outcome::Io(msg) => writeln!(out, "IO       {}: {msg}", case.name)?,
            Outcome::Mismatch(diff) => {
                writeln!(out, "MISMATCH {}", case.name)?;
                write!(out, "{diff}")?;
            }
        }
    }
    writeln!(
        out,
        "{} jobs, {} passed, {} failed",
        summary.cases.len(),
        summary.passed(),
        summary.failures()
    )?;
    Ok(if summary.failures() > 0 { 1 } else { 0 })
}

/// Parses arguments, runs, writes to stdout and returns the exit code.
pub fn main_entry<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let report = match (cli.job, cli.command) {
        (Some(path), None) | (None, Some(Cmd::Run { job: path })) => job_file(&path),
        (None, Some(Cmd::Corpus { dir, jobs, bless })) => {
            return corpus(&dir, jobs, bless, &mut out).unwrap_or(1);
        }
        (None, Some(cmd)) => run_job(&inline_job(cmd), None),
        (Some(_), Some(_)) => {
            eprintln!("error: --job cannot be combined with a subcommand");
            return 2;
        }
        (None, None) => {
            eprintln!("error: give a subcommand or --job FILE (see --help)");
            return 2;
        }
    };
    if out.write_all(report.to_pretty().as_bytes()).is_err() {
        return 1;
    }
    report.exit_code
}
