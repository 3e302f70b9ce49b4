//! `fracprop`: batch runner for the Mittag-Leffler, envelope-bound and decay
//! experiments. Every subcommand writes one CSV file and exits nonzero when an
//! embedded check fails, leaving a `<file>.witness` next to it.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fracprop::harness::{
    fmt_float, log_ladder, run_bound, run_decay, run_figure1, run_table4, run_theorem31_suite,
    CsvTable, DecayConfig, ExperimentConfig, DECAY_KEYS,
};
use fracprop::lorentz::NormIndices;
use fracprop::mittag_leffler::{ml, MLParams};
use fracprop::Error;
use num_complex::Complex64;

/// Environment variable that overrides the output directory.
const OUT_DIR_ENV: &str = "FRACPROP_OUT_DIR";
const DEFAULT_OUT_DIR: &str = "results";

/// Exit status when an embedded check fails.
const EXIT_CHECK_FAILED: u8 = 1;
/// Exit status for bad input or a computation that could not run.
const EXIT_ERROR: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "fracprop",
    version,
    about = "Fractional evolution experiments with Mittag-Leffler propagators"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Flat `key = value` file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (default: $FRACPROP_OUT_DIR, then `results`).
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Exact output file, overriding the directory and default name.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Extra `key=value` settings, applied after the config file.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate E_{alpha,delta}(z) at one point or at every row of an input CSV.
    Ml {
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long = "re", allow_negative_numbers = true)]
        re: Option<f64>,
        #[arg(long = "im", allow_negative_numbers = true)]
        im: Option<f64>,
        /// CSV with columns alpha,delta,re_z,im_z (extra columns ignored).
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Envelope bound trajectory against its closed form.
    Bound {
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        t_min: Option<f64>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long)]
        times: Option<usize>,
    },
    /// Randomized weak-norm inequality suite.
    Suite {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Solution norms on a time ladder against the envelope bound.
    Decay {
        /// heat, wave or schrodinger
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        dim: Option<usize>,
        /// Grid points per dimension (power of two).
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
        #[arg(long)]
        t_min: Option<f64>,
        #[arg(long)]
        t_max: Option<f64>,
        #[arg(long)]
        times: Option<usize>,
        /// torus or box
        #[arg(long)]
        domain: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Decay exponents of the operator catalog.
    Table4 {
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        q: Option<f64>,
    },
    /// E_{alpha,1}(-x), E_{alpha,2}(-x) and the envelope C/(1+x).
    Figure1 {
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        x_max: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Ml { .. } => "ml",
            Command::Bound { .. } => "bound",
            Command::Suite { .. } => "suite",
            Command::Decay { .. } => "decay",
            Command::Table4 { .. } => "table4",
            Command::Figure1 { .. } => "figure1",
        }
    }

    fn default_file(&self) -> &'static str {
        match self {
            Command::Ml { .. } => "ml.csv",
            Command::Bound { .. } => "bound.csv",
            Command::Suite { .. } => "theorem31.csv",
            Command::Decay { .. } => "decay.csv",
            Command::Table4 { .. } => "table4.csv",
            Command::Figure1 { .. } => "figure1.csv",
        }
    }

    /// Subcommand flags as config entries, so they override the file.
    fn overrides(&self) -> Vec<(&'static str, String)> {
        fn put<T: ToString>(out: &mut Vec<(&'static str, String)>, k: &'static str, v: &Option<T>) {
            if let Some(v) = v {
                out.push((k, v.to_string()));
            }
        }
        let mut o = Vec::new();
        match self {
            Command::Ml {
                alpha,
                delta,
                re,
                im,
                input,
            } => {
                put(&mut o, "alpha", alpha);
                put(&mut o, "delta", delta);
                put(&mut o, "re", re);
                put(&mut o, "im", im);
                put(
                    &mut o,
                    "input",
                    &input.as_ref().map(|p| p.display().to_string()),
                );
            }
            Command::Bound {
                beta,
                lambda,
                p,
                q,
                t_min,
                t_max,
                times,
            } => {
                put(&mut o, "beta", beta);
                put(&mut o, "lambda", lambda);
                put(&mut o, "p", p);
                put(&mut o, "q", q);
                put(&mut o, "t_min", t_min);
                put(&mut o, "t_max", t_max);
                put(&mut o, "times", times);
            }
            Command::Suite { seed, count } => {
                put(&mut o, "seed", seed);
                put(&mut o, "count", count);
            }
            Command::Decay {
                kind,
                beta,
                dim,
                points,
                p,
                q,
                t_min,
                t_max,
                times,
                domain,
                seed,
            } => {
                put(&mut o, "kind", kind);
                put(&mut o, "beta", beta);
                put(&mut o, "dim", dim);
                put(&mut o, "points", points);
                put(&mut o, "p", p);
                put(&mut o, "q", q);
                put(&mut o, "t_min", t_min);
                put(&mut o, "t_max", t_max);
                put(&mut o, "times", times);
                put(&mut o, "domain", domain);
                put(&mut o, "seed", seed);
            }
            Command::Table4 { alpha, p, q } => {
                put(&mut o, "alpha", alpha);
                put(&mut o, "p", p);
                put(&mut o, "q", q);
            }
            Command::Figure1 {
                alpha,
                x_max,
                points,
            } => {
                put(&mut o, "alpha", alpha);
                put(&mut o, "x_max", x_max);
                put(&mut o, "points", points);
            }
        }
        o
    }
}

/// What a subcommand produced: a table, a summary for stdout, and the result
/// of its embedded checks.
struct Outcome {
    table: CsvTable,
    summary: String,
    check: fracprop::Result<()>,
}

fn build_config(cli: &Cli) -> Result<ExperimentConfig> {
    let name = cli.command.name();
    let mut cfg = match &cli.common.config {
        Some(path) => ExperimentConfig::load(path)
            .with_context(|| format!("reading config {}", path.display()))?,
        None => ExperimentConfig::new(name),
    };
    if cfg.experiment.is_empty() {
        cfg.experiment = name.to_string();
    } else if cfg.experiment != name {
        bail!(
            "config is for experiment '{}', not '{name}'",
            cfg.experiment
        );
    }
    for pair in &cli.common.set {
        let (k, v) = pair
            .split_once('=')
            .with_context(|| format!("--set expects KEY=VALUE, got '{pair}'"))?;
        cfg.set(k.trim(), v.trim());
    }
    for (k, v) in cli.command.overrides() {
        cfg.set(k, v);
    }
    if let Some(out) = &cli.common.output {
        cfg.output_path = Some(out.clone());
    }
    Ok(cfg)
}

fn output_path(cli: &Cli, cfg: &ExperimentConfig) -> PathBuf {
    if let Some(p) = &cfg.output_path {
        return p.clone();
    }
    let dir = cli
        .common
        .out_dir
        .clone()
        .or_else(|| env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
    dir.join(cli.command.default_file())
}

fn run_ml(cfg: &ExperimentConfig) -> Result<Outcome> {
    cfg.expect_keys(&["alpha", "delta", "re", "im", "input"])?;
    let mut points = Vec::new();
    if let Some(input) = cfg.raw("input") {
        let mut rdr = csv::Reader::from_path(input).with_context(|| format!("opening {input}"))?;
        let headers = rdr.headers()?.clone();
        let col = |name: &str| -> Result<usize> {
            headers
                .iter()
                .position(|h| h.trim() == name)
                .with_context(|| format!("{input} has no column '{name}'"))
        };
        let idx = [col("alpha")?, col("delta")?, col("re_z")?, col("im_z")?];
        for rec in rdr.records() {
            let rec = rec?;
            let mut v = [0.0; 4];
            for (slot, &i) in v.iter_mut().zip(&idx) {
                *slot = rec[i]
                    .trim()
                    .parse()
                    .with_context(|| format!("bad number '{}'", &rec[i]))?;
            }
            points.push(v);
        }
    } else {
        points.push([
            cfg.get("alpha", 1.0)?,
            cfg.get("delta", 1.0)?,
            cfg.get("re", 0.0)?,
            cfg.get("im", 0.0)?,
        ]);
    }
    let mut table = CsvTable::new(&["alpha", "delta", "re_z", "im_z", "re_E", "im_E"]);
    let mut summary = String::new();
    for [alpha, delta, re, im] in points {
        let e = ml(MLParams::new(alpha, delta)?, Complex64::new(re, im))?;
        table.push(
            [alpha, delta, re, im, e.re, e.im]
                .iter()
                .map(|&x| fmt_float(x))
                .collect(),
        );
        summary = format!("E_{{{alpha},{delta}}}({re}{im:+}i) = {}{:+}i", e.re, e.im);
    }
    if table.rows().len() > 1 {
        summary = format!("{} points evaluated", table.rows().len());
    }
    Ok(Outcome {
        table,
        summary,
        check: Ok(()),
    })
}

fn run_bound_cmd(cfg: &ExperimentConfig) -> Result<Outcome> {
    cfg.expect_keys(&["beta", "lambda", "p", "q", "t_min", "t_max", "times"])?;
    let beta = cfg.get("beta", 0.9)?;
    let lambda = cfg.get("lambda", 1.0)?;
    let idx = NormIndices::new(cfg.get("p", 2.0)?, cfg.get("q", 6.0)?)?;
    let times = log_ladder(
        cfg.get("t_min", 1.0)?,
        cfg.get("t_max", 50.0)?,
        cfg.get("times", 16)?,
    )?;
    fracprop::lorentz::decay_exponent(beta, lambda, idx.p(), idx.q())?;
    let traj = run_bound(beta, lambda, idx.r(), &times)?;
    Ok(Outcome {
        summary: format!(
            "r = {:.6}, fitted slope {:.9}, exponent {:.9}",
            idx.r(),
            traj.slope,
            traj.exponent()
        ),
        check: traj.check(),
        table: traj.table(),
    })
}

fn run_suite_cmd(cfg: &ExperimentConfig) -> Result<Outcome> {
    cfg.expect_keys(&["seed", "count"])?;
    let report = run_theorem31_suite(cfg.get("seed", 42)?, cfg.get("count", 200)?)?;
    let fails = report.failures().count();
    let worst = report
        .rows
        .iter()
        .map(|r| r.outcome.margin())
        .fold(f64::INFINITY, f64::min);
    Ok(Outcome {
        summary: format!(
            "{} models, {fails} violations, smallest margin {worst:e}",
            report.rows.len()
        ),
        check: report.check(),
        table: report.table(),
    })
}

fn run_decay_cmd(cfg: &ExperimentConfig) -> Result<Outcome> {
    cfg.expect_keys(DECAY_KEYS)?;
    let report = run_decay(&DecayConfig::from_config(cfg)?)?;
    Ok(Outcome {
        summary: format!(
            "exponent {:.6}, envelope slope {:.6}, ratio slope {:.6}, solution slope {:.4} +- {:.4} (diagnostic)",
            report.exponent,
            report.envelope_slope,
            report.ratio_slope,
            report.solution_slope.0,
            report.solution_slope.1
        ),
        check: report.check(),
        table: report.table(),
    })
}

fn run_table4_cmd(cfg: &ExperimentConfig) -> Result<Outcome> {
    cfg.expect_keys(&["alpha", "p", "q"])?;
    let t = run_table4(
        cfg.get("alpha", 0.5)?,
        cfg.get("p", 2.0)?,
        cfg.get("q", 4.0)?,
    )?;
    Ok(Outcome {
        summary: format!("{} rows", t.rows.len()),
        check: t.check(),
        table: t.table(),
    })
}

fn run_figure1_cmd(cfg: &ExperimentConfig) -> Result<Outcome> {
    cfg.expect_keys(&["alpha", "x_max", "points"])?;
    let f = run_figure1(
        cfg.get("alpha", 1.95)?,
        cfg.get("x_max", 100.0)?,
        cfg.get("points", 401)?,
    )?;
    Ok(Outcome {
        summary: format!("C = {}, {} rows", f.constant, f.rows.len()),
        check: f.check(),
        table: f.table(),
    })
}

fn witness_path(out: &Path) -> PathBuf {
    let mut name = out
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    name.push(".witness");
    out.with_file_name(name)
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = build_config(cli)?;
    let outcome = match &cli.command {
        Command::Ml { .. } => run_ml(&cfg)?,
        Command::Bound { .. } => run_bound_cmd(&cfg)?,
        Command::Suite { .. } => run_suite_cmd(&cfg)?,
        Command::Decay { .. } => run_decay_cmd(&cfg)?,
        Command::Table4 { .. } => run_table4_cmd(&cfg)?,
        Command::Figure1 { .. } => run_figure1_cmd(&cfg)?,
    };
    let out = output_path(cli, &cfg);
    outcome
        .table
        .write(&out)
        .with_context(|| format!("writing {}", out.display()))?;
    println!("{}: {}", cli.command.name(), outcome.summary);
    println!("wrote {}", out.display());
    let witness = witness_path(&out);
    match outcome.check {
        Ok(()) => {
            // a stale witness from an earlier failing run would mislead
            if witness.exists() {
                fs::remove_file(&witness)?;
            }
            Ok(true)
        }
        Err(Error::InvariantFailure {
            message,
            witness: w,
        }) => {
            let text = format!(
                "experiment={}\nmessage={message}\nwitness={w}\n",
                cli.command.name()
            );
            fs::write(&witness, &text)?;
            eprintln!("check failed: {message}");
            eprintln!("witness: {w} (also in {})", witness.display());
            Ok(false)
        }
        Err(e) => Err(e.into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
