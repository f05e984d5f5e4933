use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use sinc_deriv::experiments::report::{fmt_real, write_compare_csv};
use sinc_deriv::experiments::{
    fit_rate, run_sweep, tabulate, theoretical_slope, verify_inequality, write_csv,
    write_tabulate_csv, Formula, FunctionId, InequalityId, TestFunction, DEFAULT_GRID_SIZE,
    DEFAULT_WINDOW, ORACLE_MAX_ORDER, PASS_TOLERANCE,
};
use sinc_deriv::Error;

/// Sinc-based derivative approximation experiments.
#[derive(Parser, Debug)]
#[command(name = "sincderiv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Error sweep of one formula over a range of n; writes one CSV.
    Converge {
        #[arg(long)]
        function: FunctionArg,
        #[arg(long)]
        formula: FormulaArg,
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Both formulas on the same sweep; writes a merged CSV and prints slopes.
    Compare {
        #[arg(long)]
        function: FunctionArg,
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Approximation of f^(l) at chosen points next to the exact value.
    Tabulate {
        #[arg(long)]
        function: FunctionArg,
        #[arg(long)]
        formula: FormulaArg,
        #[arg(long, default_value_t = 2, value_parser = order_parser())]
        m: usize,
        #[arg(long, value_parser = order_parser())]
        l: usize,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Comma separated evaluation points.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        points: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Checks the real-axis inequalities used by the convergence theory.
    VerifyBounds {
        #[arg(long, default_value_t = DEFAULT_GRID_SIZE as u32,
              value_parser = clap::value_parser!(u32).range(10..))]
        grid_size: u32,
    },
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value_t = 2, value_parser = order_parser())]
    m: usize,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    n_min: u32,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u32).range(1..))]
    n_max: u32,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
    n_step: u32,
}

impl SweepArgs {
    fn n_list(&self) -> Vec<usize> {
        (self.n_min..=self.n_max)
            .step_by(self.n_step as usize)
            .map(|n| n as usize)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FunctionArg {
    Example1,
    Example2,
}

impl From<FunctionArg> for FunctionId {
    fn from(f: FunctionArg) -> Self {
        match f {
            FunctionArg::Example1 => FunctionId::Example1,
            FunctionArg::Example2 => FunctionId::Example2,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormulaArg {
    Stenger,
    Improved,
}

impl From<FormulaArg> for Formula {
    fn from(f: FormulaArg) -> Self {
        match f {
            FormulaArg::Stenger => Formula::Stenger,
            FormulaArg::Improved => Formula::Improved,
        }
    }
}

fn order_parser() -> impl clap::builder::TypedValueParser<Value = usize> {
    clap::builder::RangedU64ValueParser::<usize>::new().range(0..=ORACLE_MAX_ORDER as u64)
}

fn usage_error(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(ErrorKind::ValueValidation, msg).exit()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", single_line(&e));
            ExitCode::from(1)
        }
    }
}

fn single_line(e: &Error) -> String {
    e.to_string().replace('\n', " ")
}

fn check_range(sweep: &SweepArgs) {
    if sweep.n_min > sweep.n_max {
        usage_error(format!(
            "--n-min ({}) must not exceed --n-max ({})",
            sweep.n_min, sweep.n_max
        ));
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Converge {
            function,
            formula,
            sweep,
            out,
        } => {
            check_range(&sweep);
            let func = TestFunction::get(function.into());
            let report = run_sweep(&func, formula.into(), sweep.m, &sweep.n_list())?;
            write_csv(&report, &out)?;
            println!("wrote {} rows to {}", report.rows.len(), out.display());
        }
        Command::Compare {
            function,
            sweep,
            out,
        } => {
            check_range(&sweep);
            let func = TestFunction::get(function.into());
            let n_list = sweep.n_list();
            let se = run_sweep(&func, Formula::Stenger, sweep.m, &n_list)?;
            let imp = run_sweep(&func, Formula::Improved, sweep.m, &n_list)?;
            write_compare_csv(&se, &imp, &out)?;
            println!("wrote {} rows to {}", se.rows.len(), out.display());
            println!(
                "window n in [{}, {}], errors above the roundoff floor",
                DEFAULT_WINDOW.0, DEFAULT_WINDOW.1
            );
            println!("{:>3} {:>12} {:>12}", "l", "slope_se", "slope_imp");
            for l in 0..=sweep.m {
                let fmt = |r| match fit_rate(r, l, DEFAULT_WINDOW) {
                    Ok(s) => format!("{s:.6}"),
                    Err(Error::TooFewPoints { .. }) => "n/a".to_string(),
                    Err(e) => format!("error: {e}"),
                };
                println!("{l:>3} {:>12} {:>12}", fmt(&se), fmt(&imp));
            }
            println!(
                "theoretical -sqrt(pi d mu): se {:.6}, imp {:.6}",
                theoretical_slope(&se.profile),
                theoretical_slope(&imp.profile)
            );
        }
        Command::Tabulate {
            function,
            formula,
            m,
            l,
            n,
            points,
            out,
        } => {
            if l > m {
                usage_error(format!("--l ({l}) must not exceed --m ({m})"));
            }
            let func = TestFunction::get(function.into());
            let formula: Formula = formula.into();
            let rows = tabulate(&func, formula, m, l, n as usize, &points)?;
            let meta = [
                ("function", func.id.to_string()),
                ("formula", formula.to_string()),
                ("m", m.to_string()),
                ("l", l.to_string()),
                ("n", n.to_string()),
            ];
            write_tabulate_csv(&meta, &rows, &out)?;
            println!("wrote {} rows to {}", rows.len(), out.display());
        }
        Command::VerifyBounds { grid_size } => {
            let mut failing = Vec::new();
            for id in InequalityId::ALL {
                let v = verify_inequality(id, &id.default_grid(grid_size as usize))?;
                let pass = v <= PASS_TOLERANCE;
                println!(
                    "{} {id} max_violation={}",
                    if pass { "PASS" } else { "FAIL" },
                    fmt_real(v)
                );
                if !pass {
                    failing.push(id.as_str());
                }
            }
            if !failing.is_empty() {
                eprintln!("error: inequalities violated: {}", failing.join(","));
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
