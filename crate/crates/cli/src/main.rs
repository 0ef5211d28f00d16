mod commands;
mod cyl;
mod formats;
mod report;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use report::{Entry, Format, Report, RunConfig};

/// Batch checks on finite simplicial sets, lifting problems and cylinders.
#[derive(Parser, Debug)]
#[command(name = "cylkit", version)]
struct Cli {
    /// Highest dimension searched by bounded checks
    #[arg(long, global = true, env = "CYLKIT_MAX_DIM", default_value_t = 4)]
    max_dim: usize,
    /// Stages of the small object argument
    #[arg(long, global = true, default_value_t = 3)]
    stage_budget: usize,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Truncation level for the free isomorphism J
    #[arg(long = "truncation-j", global = true, default_value_t = 3)]
    truncation_j: usize,
    /// Where to write a produced object (set, map, cylinder, ...)
    #[arg(short = 'o', long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a standard object: simplex N, boundary N, horn N K, spine N,
    /// point, empty, discrete K, j [D], nerve FILE [T], join FILE FILE,
    /// opposite FILE, product FILE FILE, horn-inclusion N K,
    /// boundary-inclusion N, spine-inclusion N, vertex-inclusion N V,
    /// to-point FILE, identity FILE, category ordinal N|iso|parallel|random,
    /// profunctor random, terminal FILE FILE, initial FILE FILE, soa FILE FILE
    Gen {
        kind: String,
        params: Vec<String>,
    },
    /// Read and validate any input file
    Validate { file: PathBuf },
    /// Validate a map and report its properties
    MapCheck { file: PathBuf },
    /// Decide a fibration property of a map
    Classify {
        #[arg(long)]
        map: PathBuf,
        /// inner, left, right, kan or trivial
        #[arg(long)]
        kind: String,
    },
    /// Certify or refute that a mono is inner anodyne
    CertifyAnodyne {
        map: PathBuf,
        /// decide absolute weak categorical equivalence instead
        #[arg(long)]
        wce: bool,
    },
    /// Small object argument factorization
    Factor {
        map: PathBuf,
        /// inner, left, right, horns or boundaries
        #[arg(long, default_value = "inner")]
        family: String,
        #[arg(long)]
        dim_budget: Option<usize>,
        /// attach one cell at a time instead of whole stages
        #[arg(long)]
        greedy: bool,
    },
    /// Cylinder operations
    Cyl {
        #[command(subcommand)]
        op: cyl::CylCommand,
    },
    /// Run the acceptance battery
    Suite {
        /// run only criteria whose number or tag matches
        #[arg(long)]
        only: Option<String>,
    },
}

/// What a command produced.
#[derive(Default)]
pub struct Output {
    pub entries: Vec<Entry>,
    pub object: Option<Value>,
}

impl Output {
    pub fn entries(entries: Vec<Entry>) -> Output {
        Output { entries, object: None }
    }

    pub fn with_object(mut self, object: Value) -> Output {
        self.object = Some(object);
        self
    }
}

pub enum Failure {
    /// bad arguments or malformed input
    Usage(String),
    /// a size limit was hit before a verdict
    Budget(String),
}

impl From<formats::InputError> for Failure {
    fn from(e: formats::InputError) -> Failure {
        Failure::Usage(e.0)
    }
}

impl From<cylkit::Error> for Failure {
    fn from(e: cylkit::Error) -> Failure {
        match e {
            cylkit::Error::SizeLimit(what) => Failure::Budget(what),
            e => Failure::Usage(e.to_string()),
        }
    }
}

pub type Outcome = Result<Output, Failure>;

fn command_line() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = RunConfig {
        max_dim: cli.max_dim,
        stage_budget: cli.stage_budget,
        seed: cli.seed,
        format: cli.format,
        truncation_j: cli.truncation_j,
    };
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(64);
    }
    let is_gen = matches!(cli.command, Command::Gen { .. });
    let outcome = match &cli.command {
        Command::Gen { kind, params } => commands::gen(kind, params, &config),
        Command::Validate { file } => commands::validate(file),
        Command::MapCheck { file } => commands::map_check(file),
        Command::Classify { map, kind } => commands::classify(map, kind, &config),
        Command::CertifyAnodyne { map, wce } => commands::certify(map, *wce),
        Command::Factor { map, family, dim_budget, greedy } => commands::factor(map, family, *dim_budget, *greedy, &config),
        Command::Cyl { op } => cyl::run(op, &config),
        Command::Suite { only } => suite::run(only.as_deref(), &config),
    };
    let output = match outcome {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(64);
        }
        Err(Failure::Budget(what)) => Output::entries(vec![Entry::plain("size limit", cylkit::lifting::Status::Exhausted).with_note(what)]),
    };
    if let (Some(obj), Some(path)) = (&output.object, &cli.output) {
        let text = serde_json::to_string_pretty(obj).expect("object serializes") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(64);
        }
    }
    // `gen` without `-o` prints the object itself
    if is_gen && cli.output.is_none() {
        if let Some(obj) = &output.object {
            println!("{}", serde_json::to_string_pretty(obj).expect("object serializes"));
            return ExitCode::from(0);
        }
    }
    let mut report = Report::new(command_line(), config, output.entries);
    if cli.output.is_none() {
        report.object = output.object;
    }
    print!("{}", report.render());
    ExitCode::from(report.exit_status as u8)
}
