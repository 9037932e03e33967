use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use revforge::postulates::{
    self, check, check_equivalence_pair, verify_rc_identity, CheckOptions, CheckReport,
    Expectation, InstanceSpace, Operators, PostulateId,
};
use revforge::scenario::{self, Format};
use revforge::{ParallelRevisionOperator, SerialContraction, SerialRevision, Strategy};

#[derive(Parser)]
#[command(name = "revforge", version, about = "Iterated parallel belief revision and postulate checking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and print its trace.
    Run {
        file: PathBuf,
        /// text, json or dot.
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a postulate over a space of instances.
    Check(CheckArgs),
    /// Run the bundled adder scenario and verify its outcome.
    SelfTest,
    /// List every total preorder over `atoms` atoms.
    Enumerate {
        #[arg(long, default_value_t = 2)]
        atoms: usize,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Postulate name, e.g. PC3, P-star, K*4, C⊛2.
    #[arg(long, required_unless_present = "rc_identity")]
    id: Option<String>,
    /// Compare `--id` (semantic form) with this syntactic form instead.
    #[arg(long, requires = "id")]
    equivalent: Option<String>,
    /// In equivalence checks, let the first posterior range over all TPOs.
    #[arg(long, requires = "equivalent")]
    arbitrary_posterior: bool,
    /// Check the rational-closure identity for STQ.
    #[arg(long, conflicts_with = "id")]
    rc_identity: bool,
    #[arg(long, default_value_t = 2)]
    atoms: usize,
    /// Serial revision operator for serial postulates.
    #[arg(long, default_value = "natural")]
    op: SerialRevision,
    #[arg(long, default_value = "natural")]
    base: SerialRevision,
    #[arg(long, default_value = "natural")]
    finisher: SerialRevision,
    #[arg(long, default_value = "stq")]
    agg: Strategy,
    /// Serial contraction operator, or `none`.
    #[arg(long, default_value = "natural-contract")]
    contraction: String,
    /// Sample this many checked instances instead of enumerating.
    #[arg(long)]
    samples: Option<u64>,
    /// Sampling seed; defaults to $REVFORGE_SEED, then a fixed value.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 2)]
    max_set_size: usize,
    #[arg(long, default_value_t = 1)]
    max_second_set_size: usize,
    /// Build instances only from these formulas (atoms A, B, C, ...).
    #[arg(long = "pool", value_name = "FORMULA")]
    pool: Vec<String>,
    /// Most witnesses kept in the report.
    #[arg(long, default_value_t = 10)]
    cap: usize,
    /// Stop at the first violation.
    #[arg(long)]
    first: bool,
    /// none, violation or any; defaults to the catalog expectation.
    #[arg(long)]
    expect: Option<Expectation>,
    /// text or json.
    #[arg(long, default_value = "text")]
    format: String,
    /// Also write the JSON report here.
    #[arg(long)]
    output: Option<PathBuf>,
}

const DEFAULT_SAMPLES: u64 = 10_000;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Run {
            file,
            format,
            output,
        } => {
            let format: Format = format.parse()?;
            let trace = scenario::run_scenario(&file)
                .with_context(|| format!("running {}", file.display()))?;
            emit(&trace.render(format), output.as_ref())?;
            Ok(true)
        }
        Command::Check(args) => run_check(args),
        Command::SelfTest => {
            let result = scenario::self_test()?;
            print!("{}", result.trace.to_text());
            for (fact, ok) in &result.facts {
                println!("{} {fact}", if *ok { "ok  " } else { "FAIL" });
            }
            Ok(result.passed())
        }
        Command::Enumerate { atoms, count } => {
            let tpos = postulates::enumerate_tpos(atoms)?;
            if count {
                println!("{}", tpos.count());
            } else {
                for t in tpos {
                    println!("{t}");
                }
            }
            Ok(true)
        }
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> anyhow::Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_check(args: CheckArgs) -> anyhow::Result<bool> {
    let contraction = match args.contraction.as_str() {
        "none" => None,
        name => Some(name.parse::<SerialContraction>()?),
    };
    let operators = Operators {
        serial: args.op,
        contraction,
        parallel: ParallelRevisionOperator::new(args.base, args.finisher, args.agg),
    };
    let mut space = match args.samples {
        None if args.atoms <= 2 => InstanceSpace::exhaustive(args.atoms, operators),
        samples => {
            let seed = args.seed.unwrap_or_else(|| postulates::seed_from_env(postulates::DEFAULT_SEED));
            InstanceSpace::sampled(args.atoms, samples.unwrap_or(DEFAULT_SAMPLES), seed, operators)
        }
    };
    space.max_set_size = args.max_set_size;
    space.max_second_set_size = args.max_second_set_size;
    if !args.pool.is_empty() {
        space.pool = Some(args.pool.clone());
    }
    let options = CheckOptions {
        cap: args.cap,
        first: args.first,
        expect: args.expect,
    };
    let report: CheckReport = if args.rc_identity {
        verify_rc_identity(&space, options)?
    } else {
        let id = PostulateId::parse(args.id.as_deref().unwrap_or_default())?;
        match &args.equivalent {
            Some(syn) => check_equivalence_pair(
                id,
                PostulateId::parse(syn)?,
                &space,
                args.arbitrary_posterior,
                options,
            )?,
            None => check(id, &space, options)?,
        }
    };
    match args.format.as_str() {
        "json" => println!("{}", report.to_json()),
        "text" => print_report(&report),
        other => bail!("unknown format `{other}` (expected text or json)"),
    }
    if let Some(path) = &args.output {
        std::fs::write(path, report.to_json() + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report.passed())
}

fn print_report(report: &CheckReport) {
    println!("{}", report.summary());
    for (i, w) in report.violations.iter().enumerate() {
        println!("witness {}: {}", i + 1, w.instance);
        println!("  operators: {}", w.operators.parallel);
        println!("  condition: {}", w.condition);
        println!("  observed:  {}", w.observed);
    }
}
