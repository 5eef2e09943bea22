use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use herm_theta::polyalg::DEFAULT_ENUM_BOUND;
use herm_theta_cli::commands::{self, run_modularity, ModularityRun};
use herm_theta_cli::instance::load;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "herm-theta", version, about = "Exact checks of r = 0 Hermitian theta series on P^1")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone, Copy)]
struct Format {
    /// JSON output (the default for fourier-selftest and modularity)
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// CSV output (the default for gauss-table)
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized Gauss sums of standard quadratic spaces
    GaussTable {
        #[arg(long, value_delimiter = ',', default_value = "3,5,7")]
        q: Vec<u32>,
        #[arg(long, default_value_t = 4)]
        dim_max: usize,
        #[arg(long, default_value_t = DEFAULT_ENUM_BOUND)]
        bound: u128,
        #[arg(long, default_value_t = 1)]
        psi_scale: i64,
        #[command(flatten)]
        format: Format,
    },
    /// Finite and arithmetic Fourier identities on random functions
    FourierSelftest {
        #[arg(long, default_value_t = 3)]
        q: u32,
        #[arg(long, default_value_t = 2)]
        r_max: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        psi_scale: i64,
        #[command(flatten)]
        format: Format,
    },
    /// Z(E1) = Z(E2) on instance files or a random sweep
    Modularity {
        /// Instance files; without them a random sweep runs
        instances: Vec<PathBuf>,
        #[arg(long, default_value_t = 3)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 1 << 22)]
        bound: u128,
        #[arg(long, default_value_t = 1)]
        psi_scale: i64,
        /// Record wall-clock time per instance (breaks byte-identical reruns)
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        format: Format,
    },
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn print_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<()> {
    let mut w = csv::Writer::from_writer(std::io::stdout().lock());
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct ModularityCsvRow<'a> {
    index: usize,
    seed: Option<u64>,
    instance_hash: &'a str,
    q: u32,
    m: usize,
    n: usize,
    length_q: usize,
    z1: &'a str,
    z2: &'a str,
    equal: bool,
    chain_holds: bool,
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Command::GaussTable { q, dim_max, bound, psi_scale, format } => {
            let rows = commands::gauss_table(&q, dim_max, bound, psi_scale)?;
            if format.json {
                print_json(&rows)?;
            } else {
                print_csv(rows)?;
            }
            Ok(true)
        }
        Command::FourierSelftest { q, r_max, trials, seed, psi_scale, format } => {
            let report = commands::fourier_selftest(q, r_max, trials, seed, psi_scale)?;
            if format.csv {
                print_csv(report.identities.iter())?;
            } else {
                print_json(&report)?;
            }
            Ok(report.all_pass)
        }
        Command::Modularity { instances, q, m, n, seed, count, bound, psi_scale, timings, format } => {
            let run = if instances.is_empty() {
                commands::modularity_sweep(q, m, n, seed, count, psi_scale, bound, timings)?
            } else {
                // validate every file before computing anything
                let loaded = instances.iter().map(|p| load(p)).collect::<Result<Vec<_>>>()?;
                let q = loaded[0].1.field().q();
                let results = loaded
                    .iter()
                    .enumerate()
                    .map(|(i, (file, inst))| run_modularity(i, None, inst, psi_scale, file.bound.unwrap_or(bound), timings))
                    .collect::<Result<Vec<_>>>()?;
                ModularityRun::new(q, None, psi_scale, bound, results)
            };
            if format.csv {
                print_csv(run.results.iter().map(|r| ModularityCsvRow {
                    index: r.index,
                    seed: r.seed,
                    instance_hash: &r.instance_hash,
                    q: r.q,
                    m: r.m,
                    n: r.n,
                    length_q: r.length_q,
                    z1: &r.z1,
                    z2: &r.z2,
                    equal: r.equal,
                    chain_holds: r.chain_holds,
                }))?;
            } else {
                print_json(&run)?;
            }
            Ok(run.all_equal())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
