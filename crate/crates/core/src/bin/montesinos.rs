use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use montesinos::degopt::{brute_max_phi, closed_form_raw, fast_max_phi, stabilization_threshold};
use montesinos::edgepath::edgepath_report;
use montesinos::jones::exact_dplus;
use montesinos::pipeline::{
    grid_run, jones_cached, to_canonical_json, write_outputs, Cache, GridSpec, RunConfig, DEFAULT_N_MAX, N_MAX_CEILING,
};
use montesinos::{KnotParams, Result};

/// Colored Jones degrees and boundary slopes of the Montesinos knots
/// M(1/r, 1/(s-1/u), 1/t).
#[derive(Parser)]
#[command(name = "montesinos", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(short, allow_hyphen_values = true)]
    r: i64,
    #[arg(short, allow_hyphen_values = true)]
    s: i64,
    #[arg(short, allow_hyphen_values = true)]
    t: i64,
    #[arg(short, allow_hyphen_values = true)]
    u: i64,
}

impl ParamArgs {
    fn params(self) -> Result<KnotParams> {
        KnotParams::new(self.r, self.s, self.t, self.u)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Exact,
    Brute,
    Fast,
    Closed,
}

#[derive(Subcommand)]
enum Command {
    /// Colored Jones polynomial J_K(N)
    Jones {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(short = 'N')]
        n: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Maximal degree of J_K(N) for N = 1..=n-max
    Degree {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: i64,
        #[arg(long, value_enum, default_value = "fast")]
        method: Method,
    },
    /// Edgepath systems, twists, boundary slope and Euler ratios
    Slope {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Check the slope identities on a parameter grid
    Verify {
        /// e.g. "r=-9..-3;s=2..6;t=3..7;u=-5..-1"
        #[arg(long)]
        grid: String,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: i64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Largest accepted n-max
        #[arg(long, default_value_t = N_MAX_CEILING)]
        ceiling: i64,
    },
}

/// Exact computations are capped by the same ceiling as `verify`.
fn check_exact_n(n: i64) -> Result<()> {
    if !(1..=N_MAX_CEILING).contains(&n) {
        return Err(montesinos::Error::InvalidParams(format!("N = {n} outside [1, {N_MAX_CEILING}]")));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Jones { params, n, format, cache } => {
            let p = params.params()?;
            check_exact_n(n)?;
            let cache = cache.map(Cache::new);
            let rec = jones_cached(&p, n, cache.as_ref())?;
            match format {
                Format::Text => println!("{}", rec.polynomial),
                Format::Json => print!("{}", to_canonical_json(&rec)?),
            }
        }
        Command::Degree { params, n_max, method } => {
            let p = params.params()?;
            if n_max < 1 {
                return Err(montesinos::Error::InvalidParams(format!("n-max = {n_max} must be positive")));
            }
            let mut rows = Vec::new();
            for n in 1..=n_max {
                let d = match method {
                    Method::Exact => {
                        check_exact_n(n)?;
                        exact_dplus(&p, n)?.0
                    }
                    Method::Brute => brute_max_phi(&p, n - 1).0,
                    Method::Fast => fast_max_phi(&p, n - 1),
                    Method::Closed => closed_form_raw(&p, n),
                };
                rows.push(json!({ "N": n, "dplus": d }));
            }
            let mut out = json!({ "params": p, "degrees": rows });
            if let Method::Closed = method {
                out["N0"] = json!(stabilization_threshold(&p, n_max.max(4 * p.generic_period() + 12)));
            }
            print!("{}", to_canonical_json(&out)?);
        }
        Command::Slope { params } => {
            let p = params.params()?;
            print!("{}", to_canonical_json(&edgepath_report(&p)?)?);
        }
        Command::Verify { grid, n_max, out, csv, jobs, cache, ceiling } => {
            let spec: GridSpec = grid.parse()?;
            let config = RunConfig { cache: cache.map(Cache::new), ceiling: Some(ceiling) };
            let run = grid_run(&spec, n_max, jobs, &config)?;
            write_outputs(&run, &out, csv.as_deref())?;
            let s = run.summary;
            eprintln!(
                "{} tuples ({} skipped): {} verified, {} mismatched, {} faulted",
                s.tuples, s.skipped, s.verified, s.mismatched, s.faulted
            );
            if s.faulted > 0 {
                return Ok(1);
            }
            if s.mismatched > 0 {
                return Ok(2);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
