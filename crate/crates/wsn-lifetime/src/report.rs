//! Config files, run manifests, and CSV emission.
//!
//! The config format is flat `key=value` text, one pair per line, with `#`
//! starting a comment. Unknown and duplicate keys are rejected; missing
//! keys fall back to the defaults of [`NetworkConfig::default`]. Every
//! output directory receives a `manifest.cfg` that parses back into the
//! exact configuration, so results are reproducible from the files alone.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use thiserror::Error;

use crate::model::{InvalidConfig, NetworkConfig, SeedMode, SelectionMode};
use crate::sim::{BatchReport, LifetimeStats, SimReport};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] InvalidConfig),
}

fn parse_value<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::Parse {
        line,
        message: format!("invalid value {value:?} for key {key}"),
    })
}

/// Parses a config from flat key=value text.
pub fn parse_config_str(text: &str) -> Result<NetworkConfig, ConfigError> {
    let mut cfg = NetworkConfig::default();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Parse {
            line,
            message: format!("expected key=value, got {content:?}"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if !seen.insert(key.to_string()) {
            return Err(ConfigError::Parse {
                line,
                message: format!("duplicate key {key}"),
            });
        }
        match key {
            "area_side" => cfg.area_side = parse_value(line, key, value)?,
            "n_sensors" => cfg.n_sensors = parse_value(line, key, value)?,
            "n_supernodes" => cfg.n_supernodes = parse_value(line, key, value)?,
            "n_targets" => cfg.n_targets = parse_value(line, key, value)?,
            "r_comm" => cfg.r_comm = parse_value(line, key, value)?,
            "r_sense" => cfg.r_sense = parse_value(line, key, value)?,
            "e_init_sensor" => cfg.e_init_sensor = parse_value(line, key, value)?,
            "e_init_super" => cfg.e_init_super = parse_value(line, key, value)?,
            "e_elec" => cfg.e_elec = parse_value(line, key, value)?,
            "eps_fs" => cfg.eps_fs = parse_value(line, key, value)?,
            "eps_mp" => cfg.eps_mp = parse_value(line, key, value)?,
            "packet_bits" => cfg.packet_bits = parse_value(line, key, value)?,
            "sensing_cost" => cfg.sensing_cost = parse_value(line, key, value)?,
            "sa_t_init" => cfg.sa.t_init = parse_value(line, key, value)?,
            "sa_cooling" => cfg.sa.cooling = parse_value(line, key, value)?,
            "sa_t_min" => cfg.sa.t_min = parse_value(line, key, value)?,
            "sa_inner_iters" => cfg.sa.inner_iters = parse_value(line, key, value)?,
            "sa_max_stall" => cfg.sa.max_stall = parse_value(line, key, value)?,
            "w_count" => cfg.weights.w_count = parse_value(line, key, value)?,
            "w_energy" => cfg.weights.w_energy = parse_value(line, key, value)?,
            "w_reserve" => cfg.weights.w_reserve = parse_value(line, key, value)?,
            "penalty_infeasible" => {
                cfg.weights.penalty_infeasible = parse_value(line, key, value)?
            }
            "selection_mode" => {
                cfg.selection_mode = match value {
                    "sa" => SelectionMode::Sa,
                    "contest" => SelectionMode::Contest,
                    _ => {
                        return Err(ConfigError::Parse {
                            line,
                            message: format!("selection_mode must be sa or contest, got {value:?}"),
                        })
                    }
                }
            }
            "seed_mode" => {
                cfg.seed_mode = match value {
                    "greedy" => SeedMode::Greedy,
                    "random" => SeedMode::Random,
                    _ => {
                        return Err(ConfigError::Parse {
                            line,
                            message: format!("seed_mode must be greedy or random, got {value:?}"),
                        })
                    }
                }
            }
            "contest_w" => cfg.contest_w = parse_value(line, key, value)?,
            "rng_seed" => cfg.rng_seed = parse_value(line, key, value)?,
            _ => {
                return Err(ConfigError::Parse {
                    line,
                    message: format!("unknown key {key}"),
                })
            }
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Reads and parses a config file.
pub fn parse_config(path: &Path) -> Result<NetworkConfig, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config_str(&text)
}

pub fn mode_label(mode: SelectionMode) -> &'static str {
    match mode {
        SelectionMode::Sa => "sa",
        SelectionMode::Contest => "contest",
    }
}

pub fn seed_mode_label(mode: SeedMode) -> &'static str {
    match mode {
        SeedMode::Greedy => "greedy",
        SeedMode::Random => "random",
    }
}

/// The config as key=value lines that parse back into an equal config.
/// Floats use Rust's shortest round-trip formatting.
pub fn config_lines(cfg: &NetworkConfig) -> String {
    let mut s = String::new();
    let mut kv = |k: &str, v: String| {
        s.push_str(k);
        s.push('=');
        s.push_str(&v);
        s.push('\n');
    };
    kv("area_side", format!("{}", cfg.area_side));
    kv("n_sensors", format!("{}", cfg.n_sensors));
    kv("n_supernodes", format!("{}", cfg.n_supernodes));
    kv("n_targets", format!("{}", cfg.n_targets));
    kv("r_comm", format!("{}", cfg.r_comm));
    kv("r_sense", format!("{}", cfg.r_sense));
    kv("e_init_sensor", format!("{}", cfg.e_init_sensor));
    kv("e_init_super", format!("{}", cfg.e_init_super));
    kv("e_elec", format!("{}", cfg.e_elec));
    kv("eps_fs", format!("{}", cfg.eps_fs));
    kv("eps_mp", format!("{}", cfg.eps_mp));
    kv("packet_bits", format!("{}", cfg.packet_bits));
    kv("sensing_cost", format!("{}", cfg.sensing_cost));
    kv("sa_t_init", format!("{}", cfg.sa.t_init));
    kv("sa_cooling", format!("{}", cfg.sa.cooling));
    kv("sa_t_min", format!("{}", cfg.sa.t_min));
    kv("sa_inner_iters", format!("{}", cfg.sa.inner_iters));
    kv("sa_max_stall", format!("{}", cfg.sa.max_stall));
    kv("w_count", format!("{}", cfg.weights.w_count));
    kv("w_energy", format!("{}", cfg.weights.w_energy));
    kv("w_reserve", format!("{}", cfg.weights.w_reserve));
    kv("penalty_infeasible", format!("{}", cfg.weights.penalty_infeasible));
    kv("selection_mode", mode_label(cfg.selection_mode).to_string());
    kv("seed_mode", seed_mode_label(cfg.seed_mode).to_string());
    kv("contest_w", format!("{}", cfg.contest_w));
    kv("rng_seed", format!("{}", cfg.rng_seed));
    s
}

/// Identifies one experiment invocation: the resolved config, the seeds it
/// used, and the artifact version.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub config: NetworkConfig,
    pub seeds: Vec<u64>,
    pub command: String,
    pub version: String,
    pub timestamp_unix: u64,
}

impl RunManifest {
    pub fn new(config: NetworkConfig, seeds: Vec<u64>, command: &str) -> Self {
        Self {
            config,
            seeds,
            command: command.to_string(),
            version: ARTIFACT_VERSION.to_string(),
            timestamp_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}

/// Writes `manifest.cfg`: invocation metadata as comments, then the full
/// resolved config. The file is itself a valid config.
pub fn write_manifest(dir: &Path, manifest: &RunManifest) -> std::io::Result<PathBuf> {
    let path = dir.join("manifest.cfg");
    let seeds = manifest
        .seeds
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let mut text = String::new();
    text.push_str("# wsn-lifetime run manifest\n");
    text.push_str(&format!("# version={}\n", manifest.version));
    text.push_str(&format!("# command={}\n", manifest.command));
    text.push_str(&format!("# seeds={seeds}\n"));
    text.push_str(&format!("# generated_unix={}\n", manifest.timestamp_unix));
    text.push_str(&config_lines(&manifest.config));
    fs::write(&path, text)?;
    Ok(path)
}

/// Floats in CSV files carry 9 significant digits.
pub fn format_sig9(x: f64) -> String {
    format!("{x:.8e}")
}

/// `rounds.csv`: one row per round, including the final infeasible one.
pub fn write_rounds_csv(report: &SimReport, path: &Path) -> std::io::Result<()> {
    let mut out = fs::File::create(path)?;
    writeln!(
        out,
        "round,monitors,relays,active_total,round_energy_J,total_remaining_J"
    )?;
    for r in &report.rounds {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.round,
            r.monitors,
            r.relays,
            r.active_total,
            format_sig9(r.round_energy_j),
            format_sig9(r.total_remaining_j)
        )?;
    }
    Ok(())
}

fn summary_config_columns() -> &'static str {
    "mode,seed_mode,area_side,n_sensors,n_supernodes,n_targets,r_comm,r_sense,\
     e_init_sensor,e_init_super,e_elec,eps_fs,eps_mp,d0,packet_bits,sensing_cost,\
     sa_t_init,sa_cooling,sa_t_min,sa_inner_iters,sa_max_stall,\
     w_count,w_energy,w_reserve,penalty_infeasible,contest_w,version"
}

fn summary_config_values(cfg: &NetworkConfig) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        mode_label(cfg.selection_mode),
        seed_mode_label(cfg.seed_mode),
        format_sig9(cfg.area_side),
        cfg.n_sensors,
        cfg.n_supernodes,
        cfg.n_targets,
        format_sig9(cfg.r_comm),
        format_sig9(cfg.r_sense),
        format_sig9(cfg.e_init_sensor),
        format_sig9(cfg.e_init_super),
        format_sig9(cfg.e_elec),
        format_sig9(cfg.eps_fs),
        format_sig9(cfg.eps_mp),
        format_sig9(cfg.d0()),
        format_sig9(cfg.packet_bits),
        format_sig9(cfg.sensing_cost),
        format_sig9(cfg.sa.t_init),
        format_sig9(cfg.sa.cooling),
        format_sig9(cfg.sa.t_min),
        cfg.sa.inner_iters,
        cfg.sa.max_stall,
        format_sig9(cfg.weights.w_count),
        format_sig9(cfg.weights.w_energy),
        format_sig9(cfg.weights.w_reserve),
        format_sig9(cfg.weights.penalty_infeasible),
        format_sig9(cfg.contest_w),
        ARTIFACT_VERSION,
    )
}

/// `summary.csv`: lifetime, termination reason and seed, then the resolved
/// configuration (decided radio constants included).
pub fn write_summary_csv(report: &SimReport, path: &Path) -> std::io::Result<()> {
    let mut out = fs::File::create(path)?;
    writeln!(out, "lifetime,termination_reason,seed,{}", summary_config_columns())?;
    writeln!(
        out,
        "{},{},{},{}",
        report.lifetime,
        report.termination.label(),
        report.seed,
        summary_config_values(&report.config)
    )?;
    Ok(())
}

/// Batch outputs: per-run lifetimes (`batch.csv`), the aggregate
/// (`batch_summary.csv`) and per-round-index averages truncated to the
/// shortest run (`round_means.csv`).
pub fn write_batch_csvs(batch: &BatchReport, dir: &Path) -> std::io::Result<()> {
    let mut runs = fs::File::create(dir.join("batch.csv"))?;
    writeln!(runs, "run,seed,lifetime,termination_reason")?;
    for (i, r) in batch.runs.iter().enumerate() {
        writeln!(
            runs,
            "{},{},{},{}",
            i + 1,
            r.seed,
            r.lifetime,
            r.termination.label()
        )?;
    }

    let mut summary = fs::File::create(dir.join("batch_summary.csv"))?;
    writeln!(summary, "runs,mean_lifetime,sd,min,max")?;
    writeln!(
        summary,
        "{},{},{},{},{}",
        batch.runs.len(),
        format_sig9(batch.stats.mean),
        format_sig9(batch.stats.sd),
        batch.stats.min,
        batch.stats.max
    )?;

    let mut means = fs::File::create(dir.join("round_means.csv"))?;
    writeln!(
        means,
        "round,mean_monitors,mean_relays,mean_active_total,mean_round_energy_J,mean_total_remaining_J"
    )?;
    for m in &batch.per_round_mean {
        writeln!(
            means,
            "{},{},{},{},{},{}",
            m.round,
            format_sig9(m.monitors),
            format_sig9(m.relays),
            format_sig9(m.active_total),
            format_sig9(m.round_energy_j),
            format_sig9(m.total_remaining_j)
        )?;
    }
    Ok(())
}

/// One sweep point's aggregate.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub var: &'static str,
    pub value: u64,
    pub stats: LifetimeStats,
    pub runs: usize,
}

/// `sweep.csv`: one aggregate row per sweep point.
pub fn write_sweep_csv(rows: &[SweepRow], path: &Path) -> std::io::Result<()> {
    let mut out = fs::File::create(path)?;
    writeln!(out, "var,value,mean_lifetime,sd,min,max,runs")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.var,
            r.value,
            format_sig9(r.stats.mean),
            format_sig9(r.stats.sd),
            r.stats.min,
            r.stats.max,
            r.runs
        )?;
    }
    Ok(())
}
