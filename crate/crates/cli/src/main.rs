//! `braidforge`: load a braided model and run constructions and checks on it.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use braidforge::suites::Suite;

#[derive(Parser)]
#[command(name = "braidforge", version, about = "Exact braided FRT constructions and axiom checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Truncation degree; defaults to the model's own setting, else 3.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    T,
    V,
    Vbullet,
    A,
    Ar,
    Ac,
    Arc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BraidingArg {
    Psi,
    R,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Hopf,
    Frt,
    Qbg,
    Boson,
    Calculus,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Hopf => vec![Suite::Hopf],
            SuiteArg::Frt => vec![Suite::Frt],
            SuiteArg::Qbg => vec![Suite::Qbg],
            SuiteArg::Boson => vec![Suite::Boson],
            SuiteArg::Calculus => vec![Suite::Calculus],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Braid equations and naturality of R and C.
    Validate { model: String },
    /// Graded or filtered dimensions through the truncation degree.
    Dims {
        model: String,
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        /// Braiding defining T, V and V• (ignored for the FRT algebras).
        #[arg(long, value_enum, default_value_t = BraidingArg::R)]
        braiding: BraidingArg,
    },
    /// Echelon basis of the defining ideal in one degree.
    Relations {
        model: String,
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = BraidingArg::R)]
        braiding: BraidingArg,
    },
    /// Run verification suites.
    Verify {
        model: String,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// The invariant element ω and the derivative of each degree-one generator.
    Calc { model: String },
    /// The braided binomial as a sum of braids, optionally evaluated on a model.
    Binomial {
        n: usize,
        k: usize,
        /// Evaluate on X^n of this model.
        #[arg(long)]
        model: Option<String>,
        #[arg(long, value_enum, default_value_t = BraidingArg::Psi)]
        braiding: BraidingArg,
    },
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("BRAIDFORGE_THREADS") else { return Ok(()) };
    let n: usize = v.parse().map_err(|_| format!("BRAIDFORGE_THREADS must be a positive integer, got '{v}'"))?;
    if n == 0 {
        return Err("BRAIDFORGE_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let ctx = commands::Ctx { format: cli.format, max_degree: cli.max_degree };
    let res = match cli.command {
        Command::Validate { model } => commands::validate(&ctx, &model),
        Command::Dims { model, algebra, braiding } => commands::dims(&ctx, &model, algebra, braiding),
        Command::Relations { model, algebra, degree, braiding } => commands::relations(&ctx, &model, algebra, degree, braiding),
        Command::Verify { model, suite } => commands::verify(&ctx, &model, &suite.suites()),
        Command::Calc { model } => commands::calc(&ctx, &model),
        Command::Binomial { n, k, model, braiding } => commands::binomial(&ctx, n, k, model.as_deref(), braiding),
    };
    match res {
        Ok(commands::Status::Pass) => ExitCode::SUCCESS,
        Ok(commands::Status::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
