use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use arakelov_cli::commands::{self, Settings, Suite};
use arakelov_cli::report::Report;
use clap::{Args, Parser, Subcommand, ValueEnum};

const DEFAULT_PRECISION_BITS: u32 = 128;
const DEFAULT_MAX_DEPTH: u32 = 40;

#[derive(Parser)]
#[command(
    name = "arakelov",
    version,
    about = "Certified bounds on Arakelov invariants of curves with small Belyi degree"
)]
struct Cli {
    /// Emit the report as JSON instead of a table
    #[arg(long, global = true)]
    json: bool,

    /// Working precision in bits (>= 53); overrides ARAKELOV_PRECISION_BITS
    #[arg(long, global = true)]
    precision: Option<u32>,

    /// Branch-and-bound subdivision depth; overrides ARAKELOV_MAX_DEPTH
    #[arg(long, global = true)]
    depth: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Composed invariant bounds for one cover, from (genus, degree) or a
    /// permutation triple file
    Bound(BoundArgs),
    /// Run a certification suite and report the worst status
    Verify(VerifyArgs),
    /// Discriminant bounds for modular curve families
    Modular(ModularArgs),
    /// Log-space invariant bounds for a cover with fixed branch locus
    Cover(CoverArgs),
    /// Branch-locus constant for a list of rational branch points
    Khadjavi(KhadjaviArgs),
}

#[derive(Args)]
struct BoundArgs {
    /// Genus of the covering curve
    #[arg(long)]
    genus: Option<u64>,
    /// Degree of the Belyi map
    #[arg(long)]
    belyi_degree: Option<u64>,
    /// Permutation triple file (d=.., s0=.., s1=.., sinf=.. or JSON)
    #[arg(long)]
    triple: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite to run
    #[arg(value_enum)]
    suite: SuiteArg,
    /// Largest Belyi degree in sweeps
    #[arg(long, default_value_t = 64)]
    dmax: u64,
    /// Cap on genus per degree in sweeps (default: the degree itself)
    #[arg(long)]
    gmax: Option<u64>,
}

#[derive(Args)]
struct ModularArgs {
    /// Level n of the curve X_1(n)
    #[arg(long)]
    x1: Option<u64>,
    /// Index of a congruence subgroup
    #[arg(long)]
    congruence_index: Option<u64>,
}

#[derive(Args)]
struct CoverArgs {
    /// Comma-separated branch points (rationals or "inf")
    #[arg(long)]
    branch: String,
    /// Degree of the map to the line
    #[arg(long)]
    deg_f: u64,
    /// Degree of the auxiliary cover
    #[arg(long)]
    deg_pi: u64,
    /// Genus of the covering curve
    #[arg(long)]
    genus: u64,
}

#[derive(Args)]
struct KhadjaviArgs {
    /// Comma-separated branch points (rationals or "inf")
    #[arg(long)]
    branch: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Merkl,
    Appendix,
    Lambda,
    Theta,
    Pipeline,
    Applications,
}

impl From<SuiteArg> for Suite {
    fn from(arg: SuiteArg) -> Suite {
        match arg {
            SuiteArg::All => Suite::All,
            SuiteArg::Merkl => Suite::Merkl,
            SuiteArg::Appendix => Suite::Appendix,
            SuiteArg::Lambda => Suite::Lambda,
            SuiteArg::Theta => Suite::Theta,
            SuiteArg::Pipeline => Suite::Pipeline,
            SuiteArg::Applications => Suite::Applications,
        }
    }
}

fn env_u32(name: &str) -> Result<Option<u32>, String> {
    match std::env::var(name) {
        Ok(raw) => raw
            .trim()
            .parse::<u32>()
            .map(Some)
            .map_err(|e| format!("bad {name}={raw:?}: {e}")),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(format!("bad {name}: {e}")),
    }
}

fn resolve_settings(cli: &Cli) -> Result<Settings, String> {
    let precision_bits = match cli.precision {
        Some(bits) => bits,
        None => env_u32("ARAKELOV_PRECISION_BITS")?.unwrap_or(DEFAULT_PRECISION_BITS),
    };
    if precision_bits < 53 {
        return Err(format!("precision must be at least 53 bits, got {precision_bits}"));
    }
    let max_depth = match cli.depth {
        Some(depth) => depth,
        None => env_u32("ARAKELOV_MAX_DEPTH")?.unwrap_or(DEFAULT_MAX_DEPTH),
    };
    Ok(Settings {
        precision_bits,
        max_depth,
    })
}

fn run(cli: &Cli) -> Result<Report, String> {
    let settings = resolve_settings(cli)?;
    match &cli.command {
        Command::Bound(args) => commands::cmd_bound(
            args.genus,
            args.belyi_degree,
            args.triple.as_deref(),
            settings,
        ),
        Command::Verify(args) => {
            commands::cmd_verify(args.suite.into(), args.dmax, args.gmax, settings)
        }
        Command::Modular(args) => commands::cmd_modular(args.x1, args.congruence_index, settings),
        Command::Cover(args) => commands::cmd_cover(
            &args.branch,
            args.deg_f,
            args.deg_pi,
            args.genus,
            settings,
        ),
        Command::Khadjavi(args) => commands::cmd_khadjavi(&args.branch, settings),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Command::Verify(args) = &cli.command {
        if args.dmax > 64 && matches!(args.suite, SuiteArg::All | SuiteArg::Pipeline) {
            eprintln!(
                "note: sweeping up to degree {} grows like dmax^2 cells and can take a while",
                args.dmax
            );
        }
    }
    let started = Instant::now();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_table());
            }
            eprintln!("wall time: {} ms", started.elapsed().as_millis());
            ExitCode::from(report.exit_code())
        }
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}
