//! Batch entry point: case selection, verification suites, report emission.

mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fockform::cases::{CaseError, DualPairCase};

#[derive(Parser)]
#[command(
    name = "fockform",
    version,
    about = "Exact cocycle verification and fiber asymptotics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CaseArgs {
    /// Case family: A, B or C
    #[arg(long, value_parser = ["A", "B", "C"])]
    case: String,
    #[arg(long)]
    p: Option<u8>,
    #[arg(long)]
    q: Option<u8>,
    #[arg(long)]
    n: Option<u8>,
    #[arg(long)]
    r: Option<u8>,
    #[arg(long)]
    s: Option<u8>,
    /// Override the desk-scale parameter ceiling (slow for large parameters)
    #[arg(long, default_value_t = false)]
    force: bool,
}

impl CaseArgs {
    fn parse_case(&self) -> Result<DualPairCase, String> {
        let case = match self.case.as_str() {
            "A" => {
                let p = self.p.ok_or("case A needs --p")?;
                let q = self.q.ok_or("case A needs --q")?;
                let r = self.r.ok_or("case A needs --r")?;
                let s = self.s.unwrap_or(0);
                DualPairCase::a(p, q, r, s)
            }
            "B" => {
                let n = self.n.ok_or("case B needs --n")?;
                let r = self.r.ok_or("case B needs --r")?;
                DualPairCase::b(n, r)
            }
            "C" => {
                let n = self.n.ok_or("case C needs --n")?;
                let r = self.r.ok_or("case C needs --r")?;
                DualPairCase::c(n, r)
            }
            other => return Err(format!("unknown case {other}")),
        };
        case.validate().map_err(|e| e.to_string())?;
        if !self.force {
            if let Err(CaseError::Ceiling(msg)) = case.check_ceiling() {
                return Err(format!(
                    "parameters exceed the desk-scale ceiling ({msg}); pass --force to proceed"
                ));
            }
        }
        Ok(case)
    }
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Report directory (defaults to $FOCKFORM_REPORT_DIR, else stdout only)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock timings in reports (breaks byte-identical output)
    #[arg(long, default_value_t = false)]
    timings: bool,
    /// Random seed for the sampled checks
    #[arg(long, default_value_t = 20240814)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification checks on one case
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        /// Comma-separated checks (default: the full battery)
        #[arg(long, value_delimiter = ',')]
        check: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
        /// Also run the slow numeric fiber integral where applicable
        #[arg(long, default_value_t = false)]
        numeric: bool,
        /// Monte-Carlo sample count for --numeric
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
    },
    /// Cocycle construction and verification
    Cocycle {
        #[command(subcommand)]
        cmd: CocycleCmd,
    },
    /// Fock model queries
    Fock {
        #[command(subcommand)]
        cmd: FockCmd,
    },
    /// Schrödinger model checks
    Schrodinger {
        #[command(subcommand)]
        cmd: SchrodingerCmd,
    },
    /// Symmetric-space numerics
    Geometry {
        #[command(subcommand)]
        cmd: GeometryCmd,
    },
    /// Laplace asymptotics
    Laplace {
        #[command(subcommand)]
        cmd: LaplaceCmd,
    },
}

#[derive(Subcommand)]
enum CocycleCmd {
    /// Build φ⁺, φ⁻ or φ and print it as JSON
    Build {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value = "full", value_parser = ["plus", "minus", "full"])]
        kind: String,
    },
    /// Verify structural properties of the cocycles
    Verify {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, value_delimiter = ',', default_values_t = ["closed".to_string(), "invariance".to_string(), "annihilation".to_string(), "restriction".to_string()])]
        check: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum FockCmd {
    /// Weight tables of e_D, f_D and the compact-dual torus
    Weights {
        #[command(flatten)]
        case: CaseArgs,
    },
    /// Enumerate basis elements and their actions on sample vectors
    Action {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value = "minus", value_parser = ["minus", "plus", "full"])]
        model: String,
    },
}

#[derive(Subcommand)]
enum SchrodingerCmd {
    /// Check the intertwining identities on all monomials up to a degree
    Intertwine {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum GeometryCmd {
    /// Sample the majorant decay and certify the exponential bound
    Majorant {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 5.0)]
        tmax: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Analytic Hessian of the majorant with finite-difference cross-check
    Hessian {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum LaplaceCmd {
    /// Compare the closed-form and re-derived fiber leading terms
    Fiber {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long, default_value_t = 3.0)]
        t: f64,
        /// Also evaluate the fiber integral by Monte Carlo (slow)
        #[arg(long, default_value_t = false)]
        numeric: bool,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Validate the Laplace leading term on analytic toy problems
    Toy {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        dim: u8,
        #[arg(long, default_value_t = 50.0)]
        t: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Verify {
            case,
            check,
            output,
            numeric,
            samples,
        } => {
            let case = case.parse_case()?;
            let checks = if check.is_empty() {
                suite::default_checks()
            } else {
                check
            };
            suite::run_suite(case, &checks, &output.into(), numeric, samples)
        }
        Command::Cocycle { cmd } => match cmd {
            CocycleCmd::Build { case, kind } => {
                let case = case.parse_case()?;
                suite::print_cocycle(case, &kind)?;
                Ok(true)
            }
            CocycleCmd::Verify {
                case,
                check,
                output,
            } => {
                let case = case.parse_case()?;
                suite::run_suite(case, &check, &output.into(), false, 0)
            }
        },
        Command::Fock { cmd } => match cmd {
            FockCmd::Weights { case } => {
                let case = case.parse_case()?;
                suite::print_weights(case);
                Ok(true)
            }
            FockCmd::Action { case, model } => {
                let case = case.parse_case()?;
                suite::print_actions(case, &model);
                Ok(true)
            }
        },
        Command::Schrodinger { cmd } => match cmd {
            SchrodingerCmd::Intertwine {
                case,
                max_degree,
                output,
            } => {
                let case = case.parse_case()?;
                let rep = suite::check_intertwine(case, max_degree);
                suite::emit(&[rep], &output.into())
            }
        },
        Command::Geometry { cmd } => match cmd {
            GeometryCmd::Majorant {
                case,
                samples,
                tmax,
                output,
            } => {
                let case = case.parse_case()?;
                let out: suite::Output = output.into();
                suite::majorant_csv(case, samples, tmax, &out)
            }
            GeometryCmd::Hessian { case, output } => {
                let case = case.parse_case()?;
                let rep = suite::check_hessian(case);
                suite::emit(&[rep], &output.into())
            }
        },
        Command::Laplace { cmd } => match cmd {
            LaplaceCmd::Fiber {
                case,
                t,
                numeric,
                samples,
                output,
            } => {
                let case = case.parse_case()?;
                let rep = suite::check_fiber(case, t, numeric, samples);
                suite::emit(&[rep], &output.into())
            }
            LaplaceCmd::Toy { dim, t } => {
                suite::laplace_toy(dim as usize, t);
                Ok(true)
            }
        },
    }
}

impl From<OutputArgs> for suite::Output {
    fn from(o: OutputArgs) -> suite::Output {
        let dir = o
            .out
            .or_else(|| std::env::var("FOCKFORM_REPORT_DIR").ok().map(PathBuf::from));
        suite::Output {
            dir,
            timings: o.timings,
            seed: o.seed,
        }
    }
}
