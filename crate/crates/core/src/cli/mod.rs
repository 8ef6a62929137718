//! Command-line front end behind the `gf2perfect` binary.
//!
//! Exit codes: 0 success, 1 domain or I/O error, 2 a verification check
//! failed, 3 only discrepancies were found, 64 usage error.

pub mod cache;
pub mod jsonl;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::divisors::{classify, is_indecomposable, is_special_perfect, sigma_of, sigma_star_of, Mode};
use crate::factor::DEFAULT_SEED;
use crate::mersenne::{enumerate_mersenne, MersennePair};
use crate::poly::Poly;
use crate::search::{
    scan_pair, scan_primes, search_special_perfect_with, Factorizer, PerfectSearch, SearchOptions,
    Seeded,
};
use crate::verify::{run_paper_suite, suite_status, Status, SuiteStatus};

use cache::FactorCache;
use jsonl::{HitRow, JsonlSink, MersenneRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VERIFY_FAIL: i32 = 2;
pub const EXIT_DISCREPANCY: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

/// Partitions handled between two checkpoint writes.
const CHUNK: usize = 8;

#[derive(Debug, Parser)]
#[command(name = "gf2perfect", version, about = "Divisor sums and perfect polynomials over GF(2)")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for the randomized factoring step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Append-only factorization cache file.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Write JSONL rows to PATH ("-" for stdout).
    #[arg(long, global = true, value_name = "PATH")]
    jsonl: Option<PathBuf>,
    /// More log output; repeat for more.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Factor a polynomial into irreducibles.
    Factor { poly: String },
    /// Sum of divisors.
    Sigma(SumArgs),
    /// Sum of unitary divisors.
    SigmaStar(SumArgs),
    /// Test a polynomial for (unitary) perfection and classify it.
    PerfectCheck {
        poly: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Perfect)]
        mode: ModeArg,
    },
    /// Perfect polynomials with Mersenne-only odd part.
    SearchPerfect(SearchArgs),
    /// Unitary perfect polynomials with Mersenne-only odd part.
    SearchUnitary(SearchArgs),
    /// Special perfect polynomials P1^2...Pm^2 with Mersenne primes Pi.
    SearchSpecial {
        #[arg(long, default_value_t = 40)]
        max_degree: usize,
    },
    /// Mersenne primes 1 + x^a (x+1)^b up to a degree.
    MersenneList {
        #[arg(long, default_value_t = 16)]
        max_degree: usize,
    },
    /// Factor sigma(M^2h) over Mersenne primes M and report the structure.
    ConjectureScan {
        /// Bound on the degree of M.
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
        #[arg(long, default_value_t = 20)]
        max_h: u32,
        #[arg(long, value_name = "PATH")]
        resume: Option<PathBuf>,
    },
    /// Replay the fixed verification suite.
    VerifyPaper,
    /// Multiplicative order of 2 modulo odd primes.
    Ord2 {
        #[arg(required = true)]
        primes: Vec<u64>,
    },
}

#[derive(Debug, Args)]
struct SumArgs {
    /// Base polynomial; raised to --power.
    #[arg(required_unless_present = "mersenne", conflicts_with = "mersenne")]
    poly: Option<String>,
    /// Use the Mersenne polynomial 1 + x^a (x+1)^b as the base.
    #[arg(long, value_name = "A,B", value_parser = parse_pair)]
    mersenne: Option<MersennePair>,
    #[arg(long, default_value_t = 1)]
    power: u32,
    /// Print the factorization of the result.
    #[arg(long)]
    factor: bool,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Degree bound (default 20 for perfect, 26 for unitary).
    #[arg(long)]
    max_degree: Option<usize>,
    /// Checkpoint file; resumes from it when present.
    #[arg(long, value_name = "PATH")]
    resume: Option<PathBuf>,
    /// Test every signature instead of pruning by divisor sums.
    #[arg(long)]
    no_prune: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Perfect,
    Unitary,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Perfect => Mode::Perfect,
            ModeArg::Unitary => Mode::Unitary,
        }
    }
}

fn parse_pair(s: &str) -> Result<MersennePair, String> {
    let (a, b) = s.split_once(',').ok_or("expected A,B")?;
    let a = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{e}"))?;
    MersennePair::new(a, b).map_err(|e| e.to_string())
}

fn parse_poly(text: &str) -> anyhow::Result<Poly> {
    text.parse().with_context(|| format!("bad polynomial {text:?}"))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).try_init();

    let outcome = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(e.into()),
        },
        None => execute(&cli),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn execute(cli: &Cli) -> anyhow::Result<i32> {
    let factorizer: Box<dyn Factorizer> = match &cli.cache {
        Some(path) => Box::new(
            FactorCache::open(path, Seeded(cli.seed))
                .with_context(|| format!("opening cache {}", path.display()))?,
        ),
        None => Box::new(Seeded(cli.seed)),
    };
    let f = factorizer.as_ref();
    let sink = |append: bool| -> anyhow::Result<Option<JsonlSink>> {
        cli.jsonl
            .as_deref()
            .map(|p| JsonlSink::open(p, append).with_context(|| format!("opening {}", p.display())))
            .transpose()
    };
    let quiet = cli.jsonl.as_deref() == Some(Path::new("-"));

    match &cli.command {
        Command::Factor { poly } => {
            let p = parse_poly(poly)?;
            println!("{}", f.factorize(&p)?);
        }
        Command::Sigma(args) => divisor_sum(args, Mode::Perfect, f)?,
        Command::SigmaStar(args) => divisor_sum(args, Mode::Unitary, f)?,
        Command::PerfectCheck { poly, mode } => {
            let p = parse_poly(poly)?;
            let mode = Mode::from(*mode);
            let class = classify(&p, mode)?;
            println!("polynomial: {p}");
            println!("factorization: {}", class.witness);
            println!("{mode}: {}", class.kind);
            if class.kind != crate::divisors::PerfectKind::NotPerfect {
                println!("indecomposable: {}", is_indecomposable(&p, mode)?);
                if mode == Mode::Perfect {
                    println!("special: {}", is_special_perfect(&p));
                }
            }
        }
        Command::SearchPerfect(args) => search(args, Mode::Perfect, f, &sink, quiet)?,
        Command::SearchUnitary(args) => search(args, Mode::Unitary, f, &sink, quiet)?,
        Command::SearchSpecial { max_degree } => {
            let hits = search_special_perfect_with(*max_degree, f)?;
            let mut out = sink(false)?;
            for hit in &hits {
                if !quiet {
                    println!("{}", hit.polynomial);
                }
                if let Some(s) = out.as_mut() {
                    s.emit(&HitRow::from(hit))?;
                }
            }
            if let Some(s) = out.as_mut() {
                s.flush()?;
            }
            if !quiet {
                println!("special perfect polynomials of degree <= {max_degree}: {}", hits.len());
            }
        }
        Command::MersenneList { max_degree } => {
            let mut out = sink(false)?;
            for m in enumerate_mersenne(*max_degree)? {
                if !quiet {
                    println!("{m}\tdeg {}\t{}", m.degree(), m.poly());
                }
                if let Some(s) = out.as_mut() {
                    s.emit(&MersenneRow::from(m))?;
                }
            }
            if let Some(s) = out.as_mut() {
                s.flush()?;
            }
        }
        Command::ConjectureScan { max_degree, max_h, resume } => {
            conjecture(*max_degree, *max_h, resume.as_deref(), f, &sink, quiet)?
        }
        Command::VerifyPaper => {
            let results = run_paper_suite();
            let mut out = sink(false)?;
            for r in &results {
                if !quiet {
                    println!("{:<12} {:<16} {}", r.status.to_string(), r.check_id, r.actual);
                    if r.status != Status::Pass {
                        println!("{:<12} {:<16} expected: {}", "", "", r.expected);
                    }
                }
                if let Some(s) = out.as_mut() {
                    s.emit(r)?;
                }
            }
            if let Some(s) = out.as_mut() {
                s.flush()?;
            }
            return Ok(match suite_status(&results) {
                SuiteStatus::AllPass => EXIT_OK,
                SuiteStatus::DiscrepancyOnly => EXIT_DISCREPANCY,
                SuiteStatus::Failed => EXIT_VERIFY_FAIL,
            });
        }
        Command::Ord2 { primes } => {
            let mut out = sink(false)?;
            for &p in primes {
                let profile = arith::classify_prime(p)?;
                if !quiet {
                    println!(
                        "{p}\tord2 {}\tmersenne-number {}\tfermat {}",
                        profile.ord2, profile.is_mersenne_number, profile.is_fermat_prime
                    );
                }
                if let Some(s) = out.as_mut() {
                    s.emit(&profile)?;
                }
            }
            if let Some(s) = out.as_mut() {
                s.flush()?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn divisor_sum(args: &SumArgs, mode: Mode, f: &dyn Factorizer) -> anyhow::Result<()> {
    let base = match (&args.poly, args.mersenne) {
        (Some(text), _) => parse_poly(text)?,
        (None, Some(m)) => MersennePair::prime(m.a, m.b)?.poly(),
        (None, None) => bail!("a polynomial or --mersenne is required"),
    };
    let a = base.pow(args.power as u64);
    if a.is_zero() {
        bail!(crate::Error::ZeroPolynomial("sigma"));
    }
    let fa = f.factorize(&a)?;
    let s = match mode {
        Mode::Perfect => sigma_of(&fa),
        Mode::Unitary => sigma_star_of(&fa),
    };
    if args.factor {
        println!("{}", f.factorize(&s)?);
    } else {
        println!("{s}");
    }
    Ok(())
}

/// Progress record for resumable commands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Checkpoint {
    command: String,
    max_degree: usize,
    max_h: u32,
    prune: bool,
    next_partition: usize,
}

impl Checkpoint {
    /// The stored checkpoint if it matches, otherwise a fresh one.
    fn load(path: Option<&Path>, fresh: Checkpoint) -> anyhow::Result<Checkpoint> {
        let Some(path) = path.filter(|p| p.exists()) else { return Ok(fresh) };
        let text = fs::read_to_string(path)?;
        let stored: Checkpoint = serde_json::from_str(&text)
            .with_context(|| format!("reading checkpoint {}", path.display()))?;
        let same = Checkpoint { next_partition: 0, ..stored.clone() } == fresh;
        if !same {
            bail!("checkpoint {} was written for different parameters", path.display());
        }
        Ok(stored)
    }

    fn save(&self, path: Option<&Path>) -> anyhow::Result<()> {
        if let Some(path) = path {
            let tmp = path.with_extension("tmp");
            fs::write(&tmp, serde_json::to_string(self)?)?;
            fs::rename(&tmp, path)?;
        }
        Ok(())
    }
}

type SinkFn<'a> = dyn Fn(bool) -> anyhow::Result<Option<JsonlSink>> + 'a;

fn search(
    args: &SearchArgs,
    mode: Mode,
    f: &dyn Factorizer,
    sink: &SinkFn,
    quiet: bool,
) -> anyhow::Result<()> {
    let max_degree = args.max_degree.unwrap_or(match mode {
        Mode::Perfect => 20,
        Mode::Unitary => 26,
    });
    let options = SearchOptions { prune: !args.no_prune, ..Default::default() };
    let engine = PerfectSearch::new(max_degree, mode, options, f)?;
    let fresh = Checkpoint {
        command: format!("search-{mode}"),
        max_degree,
        max_h: 0,
        prune: options.prune,
        next_partition: 0,
    };
    let resume = args.resume.as_deref();
    let mut state = Checkpoint::load(resume, fresh)?;
    let mut out = sink(state.next_partition > 0)?;
    let total = engine.partitions().len();
    let mut count = 0;
    while state.next_partition < total {
        let end = (state.next_partition + CHUNK).min(total);
        for hit in engine.run_range(state.next_partition..end)? {
            count += 1;
            if !quiet {
                println!(
                    "{:<12} deg {:>2}  {}",
                    hit.classification.to_string(),
                    hit.signature.degree(),
                    crate::poly::format(&hit.polynomial, crate::poly::Style::Product)
                );
            }
            if let Some(s) = out.as_mut() {
                s.emit(&HitRow::from(&hit))?;
            }
        }
        if let Some(s) = out.as_mut() {
            s.flush()?;
        }
        state.next_partition = end;
        state.save(resume)?;
    }
    if !quiet {
        println!("{count} {mode} polynomials of degree <= {max_degree}");
    }
    Ok(())
}

fn conjecture(
    max_degree: usize,
    max_h: u32,
    resume: Option<&Path>,
    f: &dyn Factorizer,
    sink: &SinkFn,
    quiet: bool,
) -> anyhow::Result<()> {
    use rayon::prelude::*;

    let primes = scan_primes(max_degree, max_h)?;
    let fresh = Checkpoint {
        command: "conjecture-scan".into(),
        max_degree,
        max_h,
        prune: false,
        next_partition: 0,
    };
    let mut state = Checkpoint::load(resume, fresh)?;
    let mut out = sink(state.next_partition > 0)?;
    let (mut rows, mut all_mersenne, mut violations) = (0, 0, 0);
    while state.next_partition < primes.len() {
        let end = (state.next_partition + CHUNK).min(primes.len());
        let jobs: Vec<(MersennePair, u32)> = primes[state.next_partition..end]
            .iter()
            .flat_map(|&m| (1..=max_h).map(move |h| (m, h)))
            .collect();
        let reports: Vec<_> = jobs.par_iter().map(|&(m, h)| scan_pair(m, h, f)).collect();
        for r in &reports {
            rows += 1;
            all_mersenne += r.all_mersenne as usize;
            violations += r.is_violation() as usize;
            if !quiet && (r.all_mersenne || r.error.is_some()) {
                let tags: Vec<String> = r.hypothesis_tags.iter().map(|t| t.to_string()).collect();
                println!(
                    "{} h={} all-Mersenne squarefree={} splits={} square={} tags=[{}]{}",
                    r.pair,
                    r.h,
                    r.squarefree,
                    r.u_splits,
                    r.u_square,
                    tags.join(","),
                    if r.known_exception { " known" } else { "" }
                );
            }
            if let Some(s) = out.as_mut() {
                s.emit(r)?;
            }
        }
        if let Some(s) = out.as_mut() {
            s.flush()?;
        }
        state.next_partition = end;
        state.save(resume)?;
    }
    if !quiet {
        println!("{rows} rows, {all_mersenne} all-Mersenne, {violations} inside a covered case");
    }
    if violations > 0 {
        log::warn!("{violations} covered cases are all-Mersenne");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors() {
        assert_eq!(run(["gf2perfect", "--bogus"]), EXIT_USAGE);
        assert_eq!(run(["gf2perfect", "sigma", "--mersenne", "0,2"]), EXIT_USAGE);
        assert_eq!(run(["gf2perfect", "factor", "x^^2"]), EXIT_ERROR);
        assert_eq!(run(["gf2perfect", "ord2", "15"]), EXIT_ERROR);
    }

    #[test]
    fn pair_parser() {
        assert_eq!(parse_pair("1,2"), Ok(MersennePair { a: 1, b: 2 }));
        assert!(parse_pair("1").is_err());
    }
}
