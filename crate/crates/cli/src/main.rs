use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use cubical_cli::merge::{load, merge};
use cubical_cli::{default_output, execute, write_text, Command, LatticeMode, RunConfig, OUT_DIR_VAR};

#[derive(Parser)]
#[command(name = "cubical", version, about = "Exact checks of brackets and cumulants on cubical lattices")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Run the coalgebra, lattice, bracket and multiscale suites.
    Verify(RunArgs),
    /// Refine the lattice and fit decay rates of bracket and derivative errors.
    Converge(RunArgs),
    /// Merge reports into one file and print a table.
    Report {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = OUT_DIR_VAR, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Lattice dimension.
    #[arg(long)]
    n: Option<usize>,
    /// Periodic lattices have side 4N steps.
    #[arg(long = "N")]
    period: Option<u32>,
    #[arg(long, value_enum)]
    mode: Option<LatticeMode>,
    /// Window half-width in steps (for converge: in steps of the coarsest level).
    #[arg(long)]
    radius: Option<i64>,
    #[arg(long)]
    kmax: Option<usize>,
    /// Degree bound of sampled polynomials.
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Scale indices, h = 2^-i.
    #[arg(long, value_delimiter = ',')]
    levels: Option<Vec<u32>>,
    /// Highest order of the intertwining relations.
    #[arg(long)]
    order: Option<usize>,
    /// Corrupt one product constant of the test algebras; the axiom check must then fail.
    #[arg(long)]
    corrupt_products: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = OUT_DIR_VAR, default_value = ".")]
    out_dir: PathBuf,
}

impl RunArgs {
    fn config(self, command: Command) -> RunConfig {
        let base = match command {
            Command::Verify => RunConfig::default(),
            Command::Converge => RunConfig::converge(),
        };
        let out = self.out.unwrap_or_else(|| default_output(&self.out_dir, command));
        RunConfig {
            command,
            n: self.n.unwrap_or(base.n),
            period: self.period.unwrap_or(base.period),
            mode: self.mode.unwrap_or(base.mode),
            radius: self.radius.unwrap_or(base.radius),
            k_max: self.kmax.unwrap_or(base.k_max),
            degree: self.degree.unwrap_or(base.degree),
            samples: self.samples.unwrap_or(base.samples),
            seed: self.seed.unwrap_or(base.seed),
            levels: self.levels.unwrap_or(base.levels),
            order_max: self.order.unwrap_or(base.order_max),
            corrupt_products: self.corrupt_products,
            out: Some(out),
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Sub::Verify(args) => run_config(args.config(Command::Verify)),
        Sub::Converge(args) => run_config(args.config(Command::Converge)),
        Sub::Report { inputs, out, out_dir } => {
            let reports = inputs
                .iter()
                .map(|p| Ok((p.display().to_string(), load(p)?)))
                .collect::<Result<Vec<_>>>()?;
            let merged = merge(&reports)?;
            let path = out.unwrap_or_else(|| out_dir.join("merged.json"));
            write_text(&path, &merged.to_json())?;
            print!("{}", merged.table());
            println!("merged report written to {}", path.display());
            Ok(merged.passed())
        }
    }
}

fn run_config(config: RunConfig) -> Result<bool> {
    let report = execute(&config)?;
    let path = config.out.clone().expect("output path is always set");
    write_text(&path, &report.to_json())?;
    print!("{}", report.table());
    println!("report written to {}", path.display());
    Ok(report.passed())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
