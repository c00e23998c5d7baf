mod commands;
mod doc;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilgrowth::scalar::parse_rat;
use nilgrowth::Rat;

#[derive(Parser, Debug)]
#[command(
    name = "nilgrowth",
    version,
    about = "Exact computations in free nilpotent groups"
)]
pub struct Cli {
    /// Largest set any enumeration may produce.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub max_set_size: usize,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

fn rational(text: &str) -> Result<Rat, String> {
    parse_rat(text).ok_or_else(|| format!("not a rational: {text:?}"))
}

#[derive(Args, Debug, Clone)]
pub struct Step {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub s: usize,
}

#[derive(Args, Debug, Clone)]
pub struct SetArgs {
    #[command(flatten)]
    pub step: Step,
    /// Side lengths, comma separated.
    #[arg(long = "L", value_delimiter = ',', required = true)]
    pub lengths: Vec<u64>,
    #[arg(long, default_value_t = 1)]
    pub q: u64,
    #[arg(long, default_value = "1", value_parser = rational)]
    pub rho: Rat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoordKind {
    Alg,
    Gp,
    Type2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Greedy,
    Exhaustive,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hall basis of basic commutators.
    Hall {
        #[command(flatten)]
        step: Step,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Number of basic commutators of order r.
    Witt {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        r: u32,
    },
    /// Group product of two elements.
    Mul {
        #[command(flatten)]
        step: Step,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Coordinates used for input and output.
        #[arg(long, value_enum, default_value_t = CoordKind::Alg)]
        coords: CoordKind,
    },
    /// Real power x^eta.
    Pow {
        #[command(flatten)]
        step: Step,
        #[arg(long)]
        x: String,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        eta: Rat,
        #[arg(long, value_enum, default_value_t = CoordKind::Alg)]
        coords: CoordKind,
    },
    /// Converts between coordinate systems.
    Coords {
        #[command(flatten)]
        step: Step,
        #[arg(long)]
        x: String,
        #[arg(long, value_enum, default_value_t = CoordKind::Alg)]
        from: CoordKind,
        #[arg(long, value_enum)]
        to: CoordKind,
    },
    /// Nilpotent progressions P(u; L).
    Prog {
        #[command(subcommand)]
        action: EnumAction,
    },
    /// Nilboxes in the Lie algebra.
    Nilbox {
        #[command(subcommand)]
        action: EnumAction,
    },
    /// Nilcompletion of an algebra set document.
    Nilcompletion {
        #[arg(long = "in", default_value = "-")]
        input: String,
    },
    /// Growth table of the symmetrised progression.
    Growth {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Covering witnesses.
    Cover {
        #[command(subcommand)]
        action: CoverAction,
    },
    /// Verification suites.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Canonicalises a set document.
    Export {
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Reads and validates a set document, printing it canonically.
    Import {
        #[arg(long = "in", default_value = "-")]
        input: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum EnumAction {
    Enum {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        count_only: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum CoverAction {
    /// Approximate-group witness for P ∪ P⁻¹.
    Approx {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, value_enum, default_value_t = Mode::Greedy)]
        mode: Mode,
    },
    /// Control of P(L; q, rho) by P(L2; q2, rho2).
    Control {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long = "L2", value_delimiter = ',', required = true)]
        lengths2: Vec<u64>,
        #[arg(long, default_value_t = 1)]
        q2: u64,
        #[arg(long, default_value = "1", value_parser = rational)]
        rho2: Rat,
    },
}

#[derive(Subcommand, Debug)]
pub enum Suite {
    Growth {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
    },
    Inclusion {
        #[command(flatten)]
        step: Step,
        #[arg(long = "L", value_delimiter = ',', required = true)]
        lengths: Vec<u64>,
        #[arg(long, default_value = "1", value_parser = rational)]
        rho: Rat,
        #[arg(long, default_value = "1", value_parser = rational)]
        rho_prime: Rat,
    },
    Mutual {
        #[command(flatten)]
        step: Step,
        #[arg(long = "L", value_delimiter = ',', required = true)]
        lengths: Vec<u64>,
        #[arg(long, default_value = "1/2", value_parser = rational)]
        lambda: Rat,
        #[arg(long, default_value_t = 1)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        q_prime: u64,
        /// Run the dilated-nilbox instance with this factor instead.
        #[arg(long)]
        dilate: Option<u64>,
    },
    Freiman {
        #[command(flatten)]
        step: Step,
        #[arg(long = "L", value_delimiter = ',', required = true)]
        lengths: Vec<u64>,
        /// `identity` or `dilate:M`.
        #[arg(long, default_value = "identity")]
        map: String,
    },
    Closure {
        #[command(flatten)]
        step: Step,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check the completed progression on the generators instead.
        #[arg(long = "L", value_delimiter = ',')]
        lengths: Option<Vec<u64>>,
    },
    Decompose {
        #[arg(long = "L", value_delimiter = ',', required = true)]
        lengths: Vec<u64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error[usage]: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(outcome) => {
            if let Err(e) = commands::emit(&outcome) {
                eprintln!("error[{}]: {}", e.code(), e);
                return ExitCode::from(2);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error[{}]: {}", e.code(), e);
            ExitCode::from(2)
        }
    }
}
