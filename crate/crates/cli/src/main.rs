//! `swclock` command-line front end.
//!
//! Exit codes: 0 success, 1 certification mismatch, 2 invalid config or
//! arguments, 3 I/O failure.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use swclock::export::{self, ConfigFile};
use swclock::kinematics::{simulate, Body};
use swclock::oracle::{pairing_table, sweep_pairing};
use swclock::recorder::{candidate_differences, read_stream, ReadoutMode};
use swclock::units::{self, Rational};
use swclock::{build_config, mass_bound_si, run_mc, ClockConfig, ClockError, McOptions};

const OUT_ENV: &str = "SWCLOCK_OUT";

#[derive(Parser)]
#[command(
    name = "swclock",
    version,
    about = "Salecker-Wigner quantum clock time-reading simulator"
)]
struct Cli {
    /// Output directory; the SWCLOCK_OUT environment variable overrides it.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one run and write the arrival stream and the readings.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Read without serial numbers and report every candidate pairing.
        #[arg(long)]
        no_serial: bool,
    },
    /// Closed-form partner offsets next to the brute-force oracle.
    PairingTable {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, default_value = "1/2")]
        phi: String,
    },
    /// Readings with unknown serial numbers and their ambiguity set.
    Ambiguity {
        #[arg(long)]
        config: PathBuf,
    },
    /// Minimal clock mass for a running time, accuracy and dial length (SI).
    MassBound {
        #[arg(long = "T")]
        running_time: f64,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        two_ell: f64,
    },
    /// Monte-Carlo reading error from the hand's positional indeterminacy.
    MonteCarlo {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Defaults to the config's seed, then 0.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        mc: McArgs,
    },
    /// Certify the partner-offset law against the oracle over a grid.
    Sweep {
        #[arg(long, default_value_t = 100)]
        max_n: u64,
        #[arg(long, default_value_t = 8)]
        max_m: u64,
        /// Comma-separated phases.
        #[arg(long, default_value = "1/4,1/2,3/4,1")]
        phis: String,
    },
}

#[derive(Args)]
struct McArgs {
    /// Widen the hand packet by its spreading factor at each reading (needs M_kg).
    #[arg(long)]
    spread_inflation: bool,
    /// Perturb the dial bodies with the same width.
    #[arg(long)]
    perturb_dial: bool,
    /// Multiplier on the hand width; 0 turns the noise off.
    #[arg(long, default_value_t = 1.0)]
    sigma_scale: f64,
    /// Do not deduce serial numbers (rejected for m >= 2).
    #[arg(long)]
    no_serial: bool,
}

#[derive(Debug)]
enum CliError {
    Config(String),
    Io(String),
    Mismatch(String),
}

impl From<ClockError> for CliError {
    fn from(e: ClockError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => f.write_str(m),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Mismatch(m) => write!(f, "certification failed: {m}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Serialize)]
struct RunManifest<'a> {
    tool: &'static str,
    version: &'static str,
    subcommand: &'a str,
    config: serde_json::Value,
    outputs: Vec<String>,
    timestamp: String,
}

struct Output {
    dir: PathBuf,
}

impl Output {
    fn new(flag: PathBuf) -> Self {
        let dir = std::env::var_os(OUT_ENV).map(PathBuf::from).unwrap_or(flag);
        Self { dir }
    }

    /// Writes `name` atomically: temp file in the output directory, then rename.
    fn write(
        &self,
        name: &str,
        body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
    ) -> CliResult<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        {
            let mut w = std::io::BufWriter::new(tmp.as_file_mut());
            body(&mut w)?;
            w.flush()?;
        }
        let path = self.dir.join(name);
        tmp.persist(&path).map_err(|e| CliError::Io(e.to_string()))?;
        Ok(path)
    }

    fn manifest(
        &self,
        subcommand: &str,
        config: serde_json::Value,
        outputs: &[PathBuf],
    ) -> CliResult<PathBuf> {
        let manifest = RunManifest {
            tool: "swclock",
            version: env!("CARGO_PKG_VERSION"),
            subcommand,
            config,
            outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
            timestamp: chrono::Utc::now().to_rfc3339(),
        };
        self.write(&format!("{subcommand}.manifest.json"), |w| {
            serde_json::to_writer_pretty(&mut *w, &manifest).map_err(std::io::Error::other)?;
            writeln!(w)
        })
    }
}

fn load_config(path: &Path) -> CliResult<(ConfigFile, ClockConfig)> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    let file = ConfigFile::from_json(&text)?;
    let cfg = file.to_config()?;
    for w in cfg.warnings() {
        eprintln!("warning: {w}");
    }
    Ok((file, cfg))
}

fn echo(file: &ConfigFile) -> serde_json::Value {
    serde_json::to_value(file).unwrap_or(serde_json::Value::Null)
}

fn simulate_cmd(out: &Output, path: &Path, no_serial: bool, name: &str) -> CliResult<()> {
    let (file, cfg) = load_config(path)?;
    let (events, stream) = simulate(&cfg);
    let mode = match (cfg.m(), no_serial) {
        (1, _) => ReadoutMode::Simple,
        (_, false) => ReadoutMode::Serial,
        (_, true) => ReadoutMode::Unresolved,
    };
    let truth = |k: u64| {
        events
            .iter()
            .find(|e| e.body == Body::Hand && e.serial == k)
            .map(|e| e.time.clone())
            .expect("every serial has a hand event")
    };
    let readings: Vec<_> = read_stream(&stream, &cfg, mode)?
        .into_iter()
        .map(|r| {
            if r.is_resolved() {
                let t = truth(r.pairing.q2_arrival.truth_serial);
                r.with_truth(t)
            } else {
                r
            }
        })
        .collect();

    let mut outputs = Vec::new();
    if name == "simulate" {
        outputs.push(out.write("arrivals.csv", |w| export::write_arrivals_csv(w, &stream))?);
    }
    let readings_name = if name == "simulate" {
        "readings.csv"
    } else {
        "ambiguity.csv"
    };
    outputs.push(out.write(readings_name, |w| export::write_readings_csv(w, &cfg, &readings))?);
    let manifest = out.manifest(name, echo(&file), &outputs)?;

    let max_err = readings
        .iter()
        .filter_map(|r| r.error())
        .map(|e| num_traits::Signed::abs(&e))
        .max();
    let max_err = match max_err {
        Some(e) => units::format_compact(&(e / cfg.running_time())) + " T",
        None => "n/a (unresolved)".to_string(),
    };
    println!(
        "n={} m={} beta={} readings={} max_abs_error={} manifest={}",
        cfg.n(),
        cfg.m(),
        units::format(cfg.beta()),
        readings.len(),
        max_err,
        manifest.display()
    );
    if name == "ambiguity" {
        let diffs: BTreeSet<Rational> = readings.iter().flat_map(candidate_differences).collect();
        let shown: Vec<String> = diffs
            .iter()
            .map(|d| units::format(&(d / cfg.running_time())) + " T")
            .collect();
        println!("candidate differences: {}", shown.join(", "));
    }
    Ok(())
}

fn pairing_cmd(out: &Output, n: u64, m: u64, phi: &str) -> CliResult<()> {
    let phi = units::parse(phi)?;
    let cfg = build_config(n, m, n as f64, None, Some(phi.clone()), None)?;
    let rows = pairing_table(&cfg);
    let path = out.write("pairing.csv", |w| export::write_pairing_csv(w, &rows))?;
    let args = serde_json::json!({"n": n, "m": m, "phi": units::format(&phi)});
    out.manifest("pairing-table", args, std::slice::from_ref(&path))?;
    let bad = rows.iter().filter(|r| !r.matches()).count();
    println!(
        "n={n} m={m} phi={} triads={} mismatches={bad} table={}",
        units::format(&phi),
        rows.len(),
        path.display()
    );
    if bad > 0 {
        return Err(CliError::Mismatch(format!(
            "{bad} offsets differ from the oracle"
        )));
    }
    Ok(())
}

fn mass_bound_cmd(running_time: f64, tau: f64, two_ell: f64) -> CliResult<()> {
    let mb = mass_bound_si(running_time, tau, two_ell)?;
    let line = serde_json::json!({
        "T_seconds": running_time,
        "tau_seconds": tau,
        "two_ell_m": two_ell,
        "mass_bound_kg": mb,
    });
    println!("{line}");
    Ok(())
}

fn monte_carlo_cmd(out: &Output, path: &Path, samples: u64, seed: Option<u64>, mc: &McArgs) -> CliResult<()> {
    let (file, cfg) = load_config(path)?;
    let seed = seed.or(file.seed).unwrap_or(0);
    let opts = McOptions {
        sigma_scale: mc.sigma_scale,
        spread_inflation: mc.spread_inflation,
        perturb_dial: mc.perturb_dial,
        serial_resolution: !mc.no_serial,
    };
    if !(opts.sigma_scale.is_finite() && opts.sigma_scale >= 0.0) {
        return Err(CliError::Config(format!(
            "sigma scale must be >= 0, got {}",
            opts.sigma_scale
        )));
    }
    let run = run_mc(&cfg, samples, seed, &opts)?;
    let json = run.summary.to_json();
    let path = out.write("mc_summary.json", |w| writeln!(w, "{json}"))?;
    let mut args = echo(&file);
    args["samples"] = samples.into();
    args["seed"] = seed.into();
    args["sigma_scale"] = mc.sigma_scale.into();
    args["spread_inflation"] = mc.spread_inflation.into();
    args["perturb_dial"] = mc.perturb_dial.into();
    out.manifest("monte-carlo", args, &[path])?;
    println!("{json}");
    Ok(())
}

fn sweep_cmd(out: &Output, max_n: u64, max_m: u64, phis: &str) -> CliResult<()> {
    let phis: Vec<Rational> = phis.split(',').map(units::parse).collect::<Result<_, _>>()?;
    for phi in &phis {
        if *phi <= units::int(0) || *phi > units::int(1) {
            return Err(ClockError::PhaseOutOfRange(units::format(phi)).into());
        }
    }
    if max_n < 2 {
        return Err(ClockError::TooFewDivisions(max_n).into());
    }
    let report = sweep_pairing(max_n, max_m, &phis);
    let path = out.write("sweep_mismatches.csv", |w| {
        export::write_pairing_csv(w, &report.mismatches)
    })?;
    let summary = serde_json::json!({
        "max_n": max_n,
        "max_m": max_m,
        "phis": phis.iter().map(units::format).collect::<Vec<_>>(),
        "configs": report.configs,
        "triads": report.triads,
        "skipped": report.skipped,
        "mismatches": report.mismatches.len(),
    });
    let summary_text = summary.to_string();
    let summary_path = out.write("sweep_summary.json", |w| writeln!(w, "{summary_text}"))?;
    out.manifest("sweep", summary.clone(), &[path, summary_path])?;
    println!("{summary_text}");
    if !report.mismatches.is_empty() {
        return Err(CliError::Mismatch(format!(
            "{} offsets differ",
            report.mismatches.len()
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    let out = Output::new(cli.out);
    match cli.command {
        Command::Simulate { config, no_serial } => simulate_cmd(&out, &config, no_serial, "simulate"),
        Command::Ambiguity { config } => simulate_cmd(&out, &config, true, "ambiguity"),
        Command::PairingTable { n, m, phi } => pairing_cmd(&out, n, m, &phi),
        Command::MassBound {
            running_time,
            tau,
            two_ell,
        } => mass_bound_cmd(running_time, tau, two_ell),
        Command::MonteCarlo {
            config,
            samples,
            seed,
            mc,
        } => monte_carlo_cmd(&out, &config, samples, seed, &mc),
        Command::Sweep { max_n, max_m, phis } => sweep_cmd(&out, max_n, max_m, &phis),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
