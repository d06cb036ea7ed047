//! Command-line surface: data ingestion, configuration and result files.
//!
//! Every subcommand writes its artifact to the given path (or stdout) and
//! returns exit code 0; on failure a single JSON error record
//! `{"error": {"kind": …, "message": …, "command": …}}` is written to stderr
//! and the exit code is nonzero.

mod hourly;
mod io;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

pub use hourly::{hourly_aggregate, parse_timestamp, read_timed_csv, write_hourly_csv, HourlyRow, TimedRecord};
pub use io::{load_csv, read_columns, write_responsibilities, AngleUnit, ColumnSpec, LoadedData, ModelFile, Table};

use crate::bootstrap::{parametric_bootstrap, BootstrapOptions};
use crate::error::{Error, Result};
use crate::eval::{circ_circ_correlation, circ_linear_correlation, pearson_correlation};
use crate::mixture::{
    bic_scan, fit_single, multi_start_fit, EmOptions, MixtureFit, DEFAULT_RESTARTS_DATA, DEFAULT_RESTARTS_SIMULATION,
};
use crate::simulate::{builtin_scenario, generate, monte_carlo, ScenarioSpec, DEFAULT_REPLICATIONS};

/// Environment variable consulted for the master seed when neither a flag nor
/// the config file sets one.
pub const SEED_ENV: &str = "MIXCIRC_SEED";

#[derive(Debug, Parser)]
#[command(name = "mixcirc", version, about = "Mixtures of circular regressions")]
pub struct Cli {
    /// TOML file supplying defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Print the resolved configuration as TOML and exit.
    #[arg(long, global = true)]
    pub print_config: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ColumnArgs {
    /// Shorthand `response:circular,...:linear,...`.
    #[arg(long)]
    pub columns: Option<String>,
    #[arg(long)]
    pub response: Option<String>,
    #[arg(long, value_delimiter = ',')]
    pub circular: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub linear: Vec<String>,
    /// Angles in the file are in degrees.
    #[arg(long)]
    pub degrees: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct TuningArgs {
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub max_inner: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit a K-component model and write it as JSON.
    Fit {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        columns: ColumnArgs,
        #[command(flatten)]
        tuning: TuningArgs,
        /// Model JSON (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Responsibilities CSV.
        #[arg(long)]
        responsibilities: Option<PathBuf>,
    },
    /// Fit K = kmin..=kmax and select K by BIC.
    SelectK {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value_t = 1)]
        kmin: usize,
        #[arg(long)]
        kmax: usize,
        #[command(flatten)]
        columns: ColumnArgs,
        #[command(flatten)]
        tuning: TuningArgs,
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        out_json: Option<PathBuf>,
        /// Model JSON of the selected K.
        #[arg(long)]
        model_out: Option<PathBuf>,
    },
    /// Per-row MAP labels and posteriors under a saved model.
    Cluster {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[command(flatten)]
        columns: ColumnArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo study of a built-in or file-defined scenario.
    Simulate {
        #[arg(long, conflicts_with = "scenario_file", required_unless_present = "scenario_file")]
        scenario: Option<u8>,
        #[arg(long)]
        scenario_file: Option<PathBuf>,
        /// Sample sizes (comma separated).
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long)]
        reps: Option<usize>,
        /// Use 1000 replications.
        #[arg(long, conflicts_with = "reps")]
        full: bool,
        #[command(flatten)]
        tuning: TuningArgs,
        #[arg(long)]
        out_json: Option<PathBuf>,
        #[arg(long)]
        out_csv: Option<PathBuf>,
        /// Also write one generated dataset (first sample size) as CSV.
        #[arg(long)]
        sample_out: Option<PathBuf>,
    },
    /// Parametric bootstrap standard errors and percentile intervals.
    Bootstrap {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        alpha: Option<f64>,
        #[command(flatten)]
        columns: ColumnArgs,
        #[command(flatten)]
        tuning: TuningArgs,
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        out_json: Option<PathBuf>,
        #[arg(long)]
        replicates_csv: Option<PathBuf>,
    },
    /// Pairwise correlation matrix of circular and linear columns.
    Correlations {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_delimiter = ',')]
        circular: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        linear: Vec<String>,
        #[arg(long)]
        degrees: bool,
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        out_json: Option<PathBuf>,
    },
    /// Average sub-hourly readings to one row per calendar hour.
    AggregateHourly {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value = "timestamp")]
        timestamp: String,
        #[arg(long, default_value = "direction")]
        direction: String,
        #[arg(long, value_delimiter = ',')]
        linear: Vec<String>,
        #[arg(long)]
        degrees: bool,
        /// chrono format string for the timestamp column.
        #[arg(long)]
        time_format: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Fit { .. } => "fit",
            Command::SelectK { .. } => "select-k",
            Command::Cluster { .. } => "cluster",
            Command::Simulate { .. } => "simulate",
            Command::Bootstrap { .. } => "bootstrap",
            Command::Correlations { .. } => "correlations",
            Command::AggregateHourly { .. } => "aggregate-hourly",
        }
    }
}

// ---------------------------------------------------------------------------
// configuration

/// Values a config file may provide; flags take precedence.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    /// Written by `--print-config`; ignored on input.
    pub command: Option<String>,
    pub seed: Option<u64>,
    pub restarts: Option<usize>,
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub max_inner: Option<usize>,
    pub score_tol: Option<f64>,
    pub replications: Option<usize>,
    pub bootstrap_replicates: Option<usize>,
    pub alpha: Option<f64>,
    pub columns: Option<ColumnSpec>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

/// Fully resolved settings for one invocation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResolvedConfig {
    pub command: String,
    pub seed: u64,
    pub restarts: usize,
    #[serde(flatten)]
    pub em: EmOptions,
    pub replications: usize,
    pub bootstrap_replicates: usize,
    pub alpha: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub columns: Option<ColumnSpec>,
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Config(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

fn resolve_columns(args: &ColumnArgs, file: &FileConfig) -> Result<Option<ColumnSpec>> {
    let unit = |fallback: AngleUnit| if args.degrees { AngleUnit::Degrees } else { fallback };
    if let Some(text) = &args.columns {
        return ColumnSpec::parse_compact(text, unit(AngleUnit::Radians)).map(Some);
    }
    if let Some(response) = &args.response {
        let spec = ColumnSpec {
            response: response.clone(),
            circular: args.circular.clone(),
            linear: args.linear.clone(),
            angle_unit: unit(AngleUnit::Radians),
        };
        spec.validate()?;
        return Ok(Some(spec));
    }
    Ok(file.columns.clone().map(|mut c| {
        c.angle_unit = unit(c.angle_unit);
        c
    }))
}

/// Applies flags over the config file over `MIXCIRC_SEED` over defaults.
pub fn resolve(cli: &Cli) -> Result<ResolvedConfig> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let empty_tuning = TuningArgs::default();
    let empty_columns = ColumnArgs::default();
    let (tuning, columns, default_restarts) = match &cli.command {
        Command::Fit { tuning, columns, .. } | Command::SelectK { tuning, columns, .. } => {
            (tuning, columns, DEFAULT_RESTARTS_DATA)
        }
        Command::Bootstrap { tuning, columns, .. } => (tuning, columns, DEFAULT_RESTARTS_SIMULATION),
        Command::Cluster { columns, .. } => (&empty_tuning, columns, DEFAULT_RESTARTS_DATA),
        Command::Simulate { tuning, .. } => (tuning, &empty_columns, DEFAULT_RESTARTS_SIMULATION),
        _ => (&empty_tuning, &empty_columns, DEFAULT_RESTARTS_DATA),
    };
    let defaults = EmOptions::default();
    let em = EmOptions {
        tol: tuning.tol.or(file.tol).unwrap_or(defaults.tol),
        max_iter: tuning.max_iter.or(file.max_iter).unwrap_or(defaults.max_iter),
        max_inner: tuning.max_inner.or(file.max_inner).unwrap_or(defaults.max_inner),
        score_tol: file.score_tol.unwrap_or(defaults.score_tol),
    };
    let seed = match tuning.seed.or(file.seed) {
        Some(s) => s,
        None => env_seed()?.unwrap_or(0),
    };
    let replications = match &cli.command {
        Command::Simulate { reps, full, .. } => {
            if *full {
                1000
            } else {
                reps.or(file.replications).unwrap_or(DEFAULT_REPLICATIONS)
            }
        }
        _ => file.replications.unwrap_or(DEFAULT_REPLICATIONS),
    };
    let (bootstrap_replicates, alpha) = match &cli.command {
        Command::Bootstrap { b, alpha, .. } => (
            b.or(file.bootstrap_replicates).unwrap_or(1000),
            alpha.or(file.alpha).unwrap_or(0.05),
        ),
        _ => (file.bootstrap_replicates.unwrap_or(1000), file.alpha.unwrap_or(0.05)),
    };
    Ok(ResolvedConfig {
        command: cli.command.name().to_string(),
        seed,
        restarts: tuning.restarts.or(file.restarts).unwrap_or(default_restarts),
        em,
        replications,
        bootstrap_replicates,
        alpha,
        columns: resolve_columns(columns, &file)?,
    })
}

// ---------------------------------------------------------------------------
// correlations

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub names: Vec<String>,
    pub circular: Vec<bool>,
    /// Symmetric, unit diagonal.
    pub values: Vec<Vec<f64>>,
}

/// Circular–circular, circular–linear or Pearson correlation per pair,
/// according to the kinds of the two columns.
pub fn correlation_matrix(names: &[String], circular: &[bool], columns: &[Vec<f64>]) -> Result<CorrelationMatrix> {
    let m = names.len();
    let mut values = vec![vec![1.0; m]; m];
    for i in 0..m {
        for j in 0..i {
            let r = match (circular[i], circular[j]) {
                (true, true) => circ_circ_correlation(&columns[i], &columns[j])?,
                (true, false) => circ_linear_correlation(&columns[i], &columns[j])?,
                (false, true) => circ_linear_correlation(&columns[j], &columns[i])?,
                (false, false) => pearson_correlation(&columns[i], &columns[j])?,
            };
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    Ok(CorrelationMatrix {
        names: names.to_vec(),
        circular: circular.to_vec(),
        values,
    })
}

impl CorrelationMatrix {
    /// Lower-triangular table with the variable names as header.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["variable".to_string()];
        header.extend(self.names.iter().cloned());
        w.write_record(&header)?;
        for (i, name) in self.names.iter().enumerate() {
            let mut rec = vec![name.clone()];
            rec.extend((0..self.names.len()).map(|j| if j <= i { self.values[i][j].to_string() } else { String::new() }));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// execution

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::create(p)?),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn write_json_to<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn require_columns(cfg: &ResolvedConfig) -> Result<ColumnSpec> {
    cfg.columns
        .clone()
        .ok_or_else(|| Error::Config("no columns given (use --columns, --response/--circular/--linear or a config file)".into()))
}

fn load_noting(path: &Path, spec: &ColumnSpec) -> Result<LoadedData> {
    let loaded = load_csv(path, spec)?;
    if loaded.dropped > 0 {
        eprintln!("note: dropped {} rows with missing values", loaded.dropped);
    }
    Ok(loaded)
}

/// Fits `k` components: the plain circular regression for K = 1, multi-start
/// EM otherwise.
pub fn fit_k(data: &crate::Dataset, k: usize, restarts: usize, seed: u64, em: &EmOptions) -> Result<MixtureFit> {
    match k {
        0 => Err(Error::domain("K must be at least 1")),
        1 => fit_single(data, em),
        _ => multi_start_fit(data, k, restarts, seed, &[], em),
    }
}

fn model_and_data(model: &Path, data: &Path, cfg: &ResolvedConfig) -> Result<(ModelFile, LoadedData)> {
    let model = ModelFile::load(model)?;
    let columns = cfg.columns.clone().unwrap_or_else(|| model.columns.clone());
    let loaded = load_noting(data, &columns)?;
    if loaded.dataset.dim() != model.fit.params().dim() {
        return Err(Error::domain(format!(
            "model expects {} expanded covariates, data provides {}",
            model.fit.params().dim(),
            loaded.dataset.dim()
        )));
    }
    Ok((model, loaded))
}

fn write_sample(path: &Path, spec: &ScenarioSpec, seed: u64) -> Result<()> {
    let sample = generate(spec, &mut crate::rng::stream(seed, 0))?;
    let mut w = csv::Writer::from_writer(io::create(path)?);
    let q = spec.covariates.circular.len();
    let p = spec.covariates.linear.len();
    let mut header = vec!["theta".to_string()];
    header.extend((1..=q).map(|j| format!("x{j}")));
    header.extend((1..=p).map(|j| format!("z{j}")));
    header.push("component".into());
    w.write_record(&header)?;
    for i in 0..sample.data.len() {
        let mut rec = vec![sample.data.response()[i].to_string()];
        rec.extend(sample.covariates[i].circular.iter().map(|v| v.to_string()));
        rec.extend(sample.covariates[i].linear.iter().map(|v| v.to_string()));
        rec.push((sample.labels[i] + 1).to_string());
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SelectionReport<'a> {
    selected_k: usize,
    rows: &'a [crate::mixture::BicRow],
}

/// Runs a parsed command with its resolved configuration.
pub fn execute(cli: &Cli, cfg: &ResolvedConfig) -> Result<()> {
    match &cli.command {
        Command::Fit {
            data,
            k,
            out,
            responsibilities,
            ..
        } => {
            let columns = require_columns(cfg)?;
            let loaded = load_noting(data, &columns)?;
            let fit = fit_k(&loaded.dataset, *k, cfg.restarts, cfg.seed, &cfg.em)?;
            if let Some(path) = responsibilities {
                write_responsibilities(io::create(path)?, &fit.responsibilities, &loaded.rows)?;
            }
            write_json_to(out.as_deref(), &ModelFile { columns, fit })
        }
        Command::SelectK {
            data,
            kmin,
            kmax,
            out_csv,
            out_json,
            model_out,
            ..
        } => {
            if kmin > kmax || *kmin == 0 {
                return Err(Error::Config(format!("invalid K range {kmin}..={kmax}")));
            }
            let columns = require_columns(cfg)?;
            let loaded = load_noting(data, &columns)?;
            let ks: Vec<usize> = (*kmin..=*kmax).collect();
            let scan = bic_scan(&loaded.dataset, &ks, cfg.restarts, cfg.seed, &cfg.em)?;
            let mut w = csv::Writer::from_writer(sink(out_csv.as_deref())?);
            w.write_record(["k", "loglik", "df", "bic", "converged", "selected", "error"])?;
            let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            for r in &scan.rows {
                w.write_record([
                    r.k.to_string(),
                    opt(r.loglik),
                    r.df.to_string(),
                    opt(r.bic),
                    r.converged.to_string(),
                    (r.k == scan.selected_k).to_string(),
                    r.error.clone().unwrap_or_default(),
                ])?;
            }
            w.flush()?;
            drop(w);
            if let Some(path) = out_json {
                io::write_json(path, &SelectionReport { selected_k: scan.selected_k, rows: &scan.rows })?;
            }
            if let Some(path) = model_out {
                let fit = scan.selected_fit().cloned().ok_or_else(|| Error::domain("selected fit unavailable"))?;
                ModelFile { columns, fit }.save(path)?;
            }
            eprintln!("selected K = {}", scan.selected_k);
            Ok(())
        }
        Command::Cluster { model, data, out, .. } => {
            let (model, loaded) = model_and_data(model, data, cfg)?;
            let fit = MixtureFit::from_params(&loaded.dataset, &model.fit.params(), model.fit.diagnostics.clone())?;
            write_responsibilities(sink(out.as_deref())?, &fit.responsibilities, &loaded.rows)
        }
        Command::Simulate {
            scenario,
            scenario_file,
            n,
            out_json,
            out_csv,
            sample_out,
            ..
        } => {
            let spec = match (scenario, scenario_file) {
                (_, Some(path)) => ScenarioSpec::from_file(path)?,
                (Some(id), None) => builtin_scenario(*id)?,
                (None, None) => return Err(Error::Config("give --scenario or --scenario-file".into())),
            };
            let n_values = if n.is_empty() { vec![spec.n] } else { n.clone() };
            if let Some(path) = sample_out {
                write_sample(path, &spec.clone().with_n(n_values[0]), cfg.seed)?;
            }
            let report = monte_carlo(&spec, &n_values, cfg.replications, cfg.restarts, cfg.seed, &cfg.em)?;
            if let Some(path) = out_json {
                report.write_json(path)?;
            }
            report.write_csv(sink(out_csv.as_deref())?)
        }
        Command::Bootstrap {
            model,
            data,
            out_csv,
            out_json,
            replicates_csv,
            ..
        } => {
            let (model, loaded) = model_and_data(model, data, cfg)?;
            let options = BootstrapOptions {
                replicates: cfg.bootstrap_replicates,
                restarts: cfg.restarts,
                seed: cfg.seed,
                alpha: cfg.alpha,
                em: cfg.em,
            };
            let result = parametric_bootstrap(&model.fit, &loaded.dataset, &options)?;
            if result.kappa_capped_fraction > 0.0 {
                eprintln!("note: {:.1}% of replicate κ values hit the cap", 100.0 * result.kappa_capped_fraction);
            }
            if let Some(path) = out_json {
                io::write_json(path, &result)?;
            }
            if let Some(path) = replicates_csv {
                result.write_replicates_csv(io::create(path)?)?;
            }
            result.write_csv(sink(out_csv.as_deref())?)
        }
        Command::Correlations {
            data,
            circular,
            linear,
            degrees,
            out_csv,
            out_json,
        } => {
            let names: Vec<String> = circular.iter().chain(linear).cloned().collect();
            if names.len() < 2 {
                return Err(Error::Config("need at least two columns".into()));
            }
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let table = read_columns(data, &refs)?;
            let unit = if *degrees { AngleUnit::Degrees } else { AngleUnit::Radians };
            let kinds: Vec<bool> = (0..names.len()).map(|i| i < circular.len()).collect();
            let cols: Vec<Vec<f64>> = table
                .columns
                .into_iter()
                .zip(&kinds)
                .map(|(c, &circ)| if circ { c.into_iter().map(|v| unit.to_radians(v)).collect() } else { c })
                .collect();
            let matrix = correlation_matrix(&names, &kinds, &cols)?;
            if let Some(path) = out_json {
                io::write_json(path, &matrix)?;
            }
            matrix.write_csv(sink(out_csv.as_deref())?)
        }
        Command::AggregateHourly {
            data,
            timestamp,
            direction,
            linear,
            degrees,
            time_format,
            out,
        } => {
            let unit = if *degrees { AngleUnit::Degrees } else { AngleUnit::Radians };
            let (records, dropped) = read_timed_csv(data, timestamp, direction, linear, unit, time_format.as_deref())?;
            if dropped > 0 {
                eprintln!("note: dropped {dropped} rows with missing values");
            }
            let rows = hourly_aggregate(&records);
            let flagged = rows.iter().filter(|r| r.flagged()).count();
            if flagged > 0 {
                eprintln!("note: {flagged} hours have an undefined mean direction");
            }
            write_hourly_csv(sink(out.as_deref())?, &rows, direction, linear)
        }
    }
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    kind: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    command: Option<&'a str>,
}

fn report_error(kind: &str, message: String, command: Option<&str>) {
    let record = serde_json::json!({ "error": ErrorRecord { kind, message, command } });
    eprintln!("{record}");
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            report_error("usage", e.to_string().trim().to_string(), None);
            return 2;
        }
    };
    let name = cli.command.name();
    let outcome = resolve(&cli).and_then(|cfg| {
        if cli.print_config {
            let text = toml::to_string(&cfg).map_err(|e| Error::Config(e.to_string()))?;
            print!("{text}");
            Ok(())
        } else {
            execute(&cli, &cfg)
        }
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            report_error(e.kind(), e.to_string(), Some(name));
            1
        }
    }
}
