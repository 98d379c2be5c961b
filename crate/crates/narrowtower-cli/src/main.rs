//! `narrowtower`: classify fields, survey ranges, run the reproduction
//! suites.
//!
//! Exit codes: 0 success, 1 failed verification or internal
//! inconsistency, 2 bad input, 3 resource bound exceeded.

mod record;
mod survey;
mod verify;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use narrowtower::fpgroups::DEFAULT_COSET_BUDGET;
use narrowtower::intarith::{factor_prime_discriminants, FactoredDiscriminant};
use narrowtower::kochid::{IdentifyOptions, DEFAULT_SEED};
use narrowtower::towerclassify::TowerType;
use narrowtower::Error;

use record::{Format, RecordWriter, ReportRecord};
use survey::{Filters, SurveyStop, SURVEY_LIMIT};
use verify::{Suite, SuiteOptions};

#[derive(Parser, Debug)]
#[command(
    name = "narrowtower",
    version,
    about = "Narrow 2-class field towers of real quadratic fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug, Clone, Copy)]
struct Global {
    /// Output format for records.
    #[arg(long, value_enum, default_value_t = Format::Jsonl, global = true)]
    format: Format,
    /// Seed for the isomorphism search.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    /// Maximum number of cosets defined during enumeration.
    #[arg(long, default_value_t = DEFAULT_COSET_BUDGET, global = true)]
    coset_budget: usize,
    /// Leave `elapsed_us` empty so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
}

impl Global {
    fn identify(&self) -> IdentifyOptions {
        IdentifyOptions {
            seed: self.seed,
            coset_budget: self.coset_budget,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report on one or more discriminants.
    Classify(ClassifyArgs),
    /// Report on every field of the family with discriminant up to --max.
    Survey(SurveyArgs),
    /// Run a reproduction suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Discriminant, e.g. 59185. Repeatable.
    #[arg(long, allow_hyphen_values = true)]
    disc: Vec<i64>,
    /// Prime discriminants, e.g. 5,89,-19,-7. Unsigned lists get their
    /// signs inferred.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    factors: Option<Vec<i64>>,
    /// With --factors: every part is negative (types III and IV).
    #[arg(long, requires = "factors")]
    all_negative: bool,
}

#[derive(Args, Debug)]
struct SurveyArgs {
    /// Largest discriminant surveyed (at most 1e9).
    #[arg(long)]
    max: u64,
    /// Keep only fields of this type (I, II, III or IV).
    #[arg(long = "type", value_parser = parse_type)]
    type_: Option<TowerType>,
    /// Keep only fields of this case, e.g. a5.
    #[arg(long)]
    case: Option<String>,
    /// Keep only fields whose G+/G3+ has this label, e.g. 32.033.
    #[arg(long)]
    label: Option<String>,
    /// Keep only fields with this 4-rank of Cl2(k).
    #[arg(long)]
    four_rank: Option<u32>,
    /// Print per-case counts instead of records.
    #[arg(long)]
    stats: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Range bound for the appendix2 and oracles suites.
    #[arg(long)]
    max: Option<u64>,
}

fn parse_type(s: &str) -> Result<TowerType, String> {
    TowerType::ALL
        .into_iter()
        .find(|t| t.to_string().eq_ignore_ascii_case(s))
        .ok_or_else(|| format!("unknown type {s:?}; expected I, II, III or IV"))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource(_) => 3,
        Error::Inconsistency(_) => 1,
        Error::Domain(_) | Error::NotFundamental { .. } | Error::OutOfFamily(_) | Error::Parse { .. } => 2,
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(e))
}

fn io_fail(e: io::Error) -> ExitCode {
    if e.kind() == io::ErrorKind::BrokenPipe {
        return ExitCode::SUCCESS;
    }
    eprintln!("error: {e}");
    ExitCode::from(1)
}

fn factored_input(factors: &[i64], all_negative: bool) -> narrowtower::Result<FactoredDiscriminant> {
    if all_negative || factors.iter().all(|&v| v > 0) {
        let mags: Vec<u64> = factors.iter().map(|v| v.unsigned_abs()).collect();
        FactoredDiscriminant::from_magnitudes(&mags, all_negative)
    } else {
        FactoredDiscriminant::from_values(factors)
    }
}

fn classify(args: &ClassifyArgs, g: Global) -> ExitCode {
    let mut inputs: Vec<narrowtower::Result<FactoredDiscriminant>> =
        args.disc.iter().map(|&d| factor_prime_discriminants(d)).collect();
    if let Some(f) = &args.factors {
        inputs.push(factored_input(f, args.all_negative));
    }
    if inputs.is_empty() {
        eprintln!("error: give --disc or --factors");
        return ExitCode::from(2);
    }
    let mut out = RecordWriter::new(g.format, BufWriter::new(io::stdout().lock()));
    let mut worst = 0u8;
    for input in inputs {
        let rec = input.and_then(|fd| {
            fd.check_family()?;
            survey::report_record(&fd, g.identify(), !g.no_timing)
        });
        match rec {
            Ok(r) => {
                if let Err(e) = out.write(&r) {
                    return io_fail(e);
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                worst = worst.max(exit_code(&e));
            }
        }
    }
    if let Err(e) = out.flush() {
        return io_fail(e);
    }
    ExitCode::from(worst)
}

fn run_survey(args: &SurveyArgs, g: Global) -> ExitCode {
    if args.max > SURVEY_LIMIT {
        return fail(&Error::Resource(format!(
            "--max {} exceeds the limit {SURVEY_LIMIT}",
            args.max
        )));
    }
    let filters = Filters {
        type_: args.type_,
        case: args.case.clone(),
        label: args.label.clone(),
        four_rank: args.four_rank,
    };
    let mut out = RecordWriter::new(g.format, BufWriter::new(io::stdout().lock()));
    let mut kept: Vec<ReportRecord> = Vec::new();
    let result = survey::survey(args.max, &filters, g.identify(), !g.no_timing, |r| {
        if args.stats {
            kept.push(r);
            Ok(())
        } else {
            out.write(&r)
        }
    });
    let code = match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(SurveyStop::Output(e)) => return io_fail(e),
        Err(SurveyStop::Failed { discriminant, error }) => {
            eprintln!("warning: survey stopped at d = {discriminant}; output is partial");
            fail(&error)
        }
    };
    if args.stats {
        for c in survey::tally(&kept) {
            if let Err(e) = out.write(&c) {
                return io_fail(e);
            }
        }
    }
    if let Err(e) = out.flush() {
        return io_fail(e);
    }
    code
}

fn run_verify(args: &VerifyArgs, g: Global) -> ExitCode {
    let opts = SuiteOptions {
        max: args.max,
        identify: g.identify(),
    };
    let checks = match verify::run(args.suite, opts) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    let mut stdout = io::stdout().lock();
    for c in &checks {
        if let Err(e) = writeln!(stdout, "{c}") {
            return io_fail(e);
        }
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(stdout, "{passed}/{} checks passed", checks.len());
    match checks.iter().find(|c| !c.passed) {
        None => ExitCode::SUCCESS,
        Some(c) => {
            eprintln!("first counterexample: {}: {}", c.name, c.detail);
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Classify(a) => classify(a, cli.global),
        Command::Survey(a) => run_survey(a, cli.global),
        Command::Verify(a) => run_verify(a, cli.global),
    }
}
