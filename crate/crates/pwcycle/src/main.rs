use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pwcycle::cli::{self, portrait, sweep, CliError, CommonOpts};

#[derive(Parser)]
#[command(name = "pwcycle", version, about = "Crossing limit cycles of piecewise Hamiltonian systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Shared {
    /// System description (TOML).
    file: PathBuf,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Width to which eliminant roots are refined.
    #[arg(long)]
    tol: Option<f64>,
    /// Grid size of the shooting oracle; the oracle runs only when set.
    #[arg(long)]
    grid: Option<usize>,
    /// Ordinate range LO:HI scanned by the oracle or plotted by portrait.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Skip numerical verification of the algebraic candidates.
    #[arg(long, overrides_with = "verify")]
    no_verify: bool,
    /// Verify candidates by integrating the flow (default).
    #[arg(long)]
    verify: bool,
}

impl Shared {
    fn common(&self) -> Result<CommonOpts, CliError> {
        Ok(CommonOpts {
            tol: self.tol,
            grid: self.grid,
            window: self.window.as_deref().map(cli::parse_window).transpose()?,
            verify: !self.no_verify,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Continuity, equilibria, separatrices and the theorem bound.
    Analyze {
        #[command(flatten)]
        shared: Shared,
    },
    /// Run the elimination pipeline and list the crossing limit cycles.
    Solve {
        #[command(flatten)]
        shared: Shared,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Solve at evenly spaced values of one parameter and print CSV.
    Sweep {
        #[command(flatten)]
        shared: Shared,
        /// ZONE.NAME (zones counted from 0) or a name from [parameters].
        #[arg(long)]
        param: String,
        /// LO:HI, exact rationals allowed.
        #[arg(long, allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value_t = 21)]
        samples: usize,
    },
    /// Sample level curves, separatrices and cycles as CSV polylines.
    Portrait {
        #[command(flatten)]
        shared: Shared,
        /// Level arcs per zone.
        #[arg(long, default_value_t = 12)]
        samples: usize,
        /// Also write an SVG rendering here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Analyze { shared } => {
            let (_, ps) = cli::load(&shared.file)?;
            cli::emit(shared.out.as_deref(), &cli::cmd_analyze(&ps)?)
        }
        Command::Solve { shared, json } => {
            let (spec, ps) = cli::load(&shared.file)?;
            let opts = shared.common()?.solve_options(&spec)?;
            let report = cli::run_solve(&ps, &opts)?;
            let text = if json { cli::report_json(&report) } else { cli::report_table(&ps, &report) };
            cli::emit(shared.out.as_deref(), &text)?;
            cli::check_bound(&report)
        }
        Command::Sweep { shared, param, range, samples } => {
            let (spec, _) = cli::load(&shared.file)?;
            let opts = shared.common()?.solve_options(&spec)?;
            let (lo, hi) = cli::parse_range(&range)?;
            let sw = sweep::SweepSpec::new(&param, &lo, &hi, samples)?;
            let rows = sweep::run(&spec, &sw, &opts)?;
            cli::emit(shared.out.as_deref(), &sweep::to_csv(&rows))
        }
        Command::Portrait { shared, samples, svg } => {
            let (spec, ps) = cli::load(&shared.file)?;
            let common = shared.common()?;
            let window = common.window.or(spec.options.window.map(|w| (w[0], w[1])));
            let opts = portrait::PortraitOptions {
                levels: samples,
                window: window.unwrap_or(portrait::PortraitOptions::default().window),
                cycles: common.verify,
            };
            let curves = portrait::sample(&ps, &opts);
            cli::emit(shared.out.as_deref(), &portrait::to_csv(&curves))?;
            if let Some(p) = svg {
                std::fs::write(&p, portrait::to_svg(&ps, &curves, opts.window))
                    .map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    match run(args.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pwcycle: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
