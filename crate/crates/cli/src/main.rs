mod commands;
mod error;
mod input;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use motifalg::Caps;
use serde_json::Value;

use commands::{InstantiateArgs, KindArgs, LinearizeInput};
use error::CliError;

#[derive(Parser)]
#[command(name = "motifalg", version, about = "Exact computations with graph motif parameters")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized verbs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Raises or lowers every size cap (overrides MOTIFALG_CAP_N).
    #[arg(long, global = true)]
    cap_n: Option<usize>,
    /// Upper bound on oracle queries per computation path.
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(clap::Args)]
struct KindOpts {
    /// unordered, ordered, colored or relational; guessed from the input if absent.
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    palette: Option<u8>,
}

impl KindOpts {
    fn args(&self) -> KindArgs<'_> {
        KindArgs {
            kind: self.kind.as_deref(),
            palette: self.palette,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Induced copies of a pattern in a target.
    Count {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        target: String,
        #[command(flatten)]
        kind: KindOpts,
    },
    /// Value of a parameter on a target.
    Eval {
        #[arg(long)]
        param: String,
        #[arg(long)]
        target: String,
    },
    /// Rewrites a product, binomial or polynomial of counts as a parameter.
    Linearize {
        #[arg(long, num_args = 1.., conflicts_with_all = ["binomial", "poly"])]
        product: Vec<String>,
        #[arg(long, requires = "k", conflicts_with = "poly")]
        binomial: Option<String>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        poly: Option<String>,
        /// Cross-check against interpolation.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        kind: KindOpts,
    },
    Classify {
        #[arg(long)]
        param: String,
    },
    /// Rewrites an unordered parameter over ordered graphs.
    Symmetrize {
        #[arg(long)]
        param: String,
    },
    /// Checks nonnegativity on every class up to a size.
    ScanNonneg {
        #[arg(long)]
        param: String,
        #[arg(long)]
        n_max: usize,
    },
    /// A pure graph on which a bad parameter and a good one differ.
    Witness {
        #[arg(long)]
        param: String,
        #[arg(long)]
        against: String,
    },
    /// Induced-count matrix over a pattern list.
    Matrix {
        #[arg(long, num_args = 1.., conflicts_with = "upto")]
        patterns: Vec<String>,
        #[arg(long)]
        upto: Option<usize>,
        #[command(flatten)]
        kind: KindOpts,
    },
    /// Converts a structure with multiset and list relations into set relations.
    Conv {
        #[arg(long)]
        input: String,
        #[arg(long, requires = "source_type")]
        inverse: bool,
        #[arg(long)]
        source_type: Option<String>,
    },
    Universe {
        #[command(subcommand)]
        command: UniverseCommand,
    },
    /// Builds a set-instantiator for a fixed query strategy.
    Instantiate {
        #[arg(long)]
        root: String,
        /// naive:<graph>, naive-ordered:<graph> or probe:<u>,<v>.
        #[arg(long)]
        strategy: String,
        #[arg(long)]
        param: Option<String>,
        #[arg(long, default_value_t = 2)]
        n_start: usize,
        #[arg(long, default_value_t = 8)]
        max_attempts: usize,
        /// Include one line per accepting path.
        #[arg(long)]
        trace: bool,
    },
}

#[derive(Subcommand)]
enum UniverseCommand {
    /// Number of k-dimensional subspaces of F_p^n.
    Gaussian {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u32,
    },
    /// Enumerates the k-dimensional subspaces of F_p^d.
    Subspaces {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        list: bool,
    },
    Stirling {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
    },
    /// Counts the m-parameter subsets of a parameterized point set.
    ParamSubsets {
        #[arg(long)]
        set: String,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "formula")]
        mode: String,
        #[arg(long)]
        list: bool,
    },
    /// Value of a dimension-indexed parameter on a space or point set.
    Eval {
        #[arg(long)]
        param: String,
        #[arg(long)]
        target: String,
    },
}

fn caps(cli: &Cli) -> Result<Caps, CliError> {
    if let Some(n) = cli.cap_n {
        return Ok(Caps::uniform(n));
    }
    match std::env::var("MOTIFALG_CAP_N") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Caps::uniform)
            .map_err(|_| CliError::input(format!("MOTIFALG_CAP_N={v:?} is not a number"))),
        Err(_) => Ok(Caps::default()),
    }
}

fn run(cli: &Cli) -> Result<Value, CliError> {
    let caps = caps(cli)?;
    match &cli.command {
        Command::Count { pattern, target, kind } => commands::count(pattern, target, &kind.args()),
        Command::Eval { param, target } => commands::eval(param, target, &caps),
        Command::Linearize {
            product,
            binomial,
            k,
            poly,
            check,
            kind,
        } => {
            let what = match (binomial, poly) {
                (Some(b), _) => LinearizeInput::Binomial(b, k.expect("required by clap")),
                (None, Some(p)) => LinearizeInput::Poly(p),
                (None, None) => LinearizeInput::Product(product),
            };
            commands::linearize(what, *check, &kind.args(), &caps)
        }
        Command::Classify { param } => commands::classify(param, &caps),
        Command::Symmetrize { param } => commands::symmetrize_verb(param, &caps),
        Command::ScanNonneg { param, n_max } => commands::scan_nonneg(param, *n_max, &caps),
        Command::Witness { param, against } => commands::witness(param, against, &caps),
        Command::Matrix { patterns, upto, kind } => commands::matrix(patterns, *upto, &kind.args(), &caps),
        Command::Conv {
            input,
            inverse,
            source_type,
        } => commands::conv(input, *inverse, source_type.as_deref()),
        Command::Universe { command } => match command {
            UniverseCommand::Gaussian { n, k, p } => commands::gaussian(*n, *k, *p),
            UniverseCommand::Subspaces { d, k, p, list } => commands::subspaces(*d, *k, *p, *list),
            UniverseCommand::Stirling { n, m, r } => commands::stirling(*n, *m, *r),
            UniverseCommand::ParamSubsets { set, m, mode, list } => commands::param_subsets(set, *m, mode, *list),
            UniverseCommand::Eval { param, target } => commands::universe_eval(param, target),
        },
        Command::Instantiate {
            root,
            strategy,
            param,
            n_start,
            max_attempts,
            trace,
        } => commands::instantiate(
            &InstantiateArgs {
                root,
                strategy,
                param: param.as_deref(),
                seed: cli.seed.unwrap_or(0),
                n_start: *n_start,
                max_attempts: *max_attempts,
                budget: cli.budget,
                trace: *trace,
            },
            &caps,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => {
            let text = match cli.format {
                Format::Json => format!("{v}\n"),
                Format::Table => output::render_table(&v),
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(error::EXIT_INTERNAL);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
