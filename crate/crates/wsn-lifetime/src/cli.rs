//! The `wsn-lifetime` command line: single runs, batches, parameter sweeps
//! and a hidden desk-scale oracle check.
//!
//! Exit codes: 0 success, 1 usage error, 2 config or I/O error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::coverage::{build_comm_graph, build_coverage, relay_route};
use crate::energy::{eligibility, EnergyModel};
use crate::model::{place_uniform, NetworkConfig, SelectionMode};
use crate::oracle::{hop_oracle, min_cover_bruteforce, OracleOutcome};
use crate::report::{
    mode_label, parse_config, write_batch_csvs, write_manifest, write_rounds_csv,
    write_summary_csv, write_sweep_csv, ConfigError, RunManifest, SweepRow,
};
use crate::rng::{substream, Stream};
use crate::sa::{anneal, greedy_seed, EvalContext};
use crate::sim::{run_batch, run_simulation};

#[derive(Debug, Parser)]
#[command(
    name = "wsn-lifetime",
    version,
    about = "Round-based sensor network lifetime simulator with annealing-based monitor selection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Sa,
    Contest,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Scenario config file (key=value lines); defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed, overriding the config's rng_seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Selection algorithm, overriding the config's selection_mode.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Output directory for CSV files and the manifest.
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepVar {
    Nodes,
    Targets,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// One simulation: writes rounds.csv, summary.csv and manifest.cfg.
    Run {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Several runs with consecutive seeds: writes batch.csv,
    /// batch_summary.csv, round_means.csv and manifest.cfg.
    Batch {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of runs to average.
        #[arg(long, default_value_t = 10)]
        runs: usize,
    },
    /// Batches across a parameter range: writes sweep.csv and manifest.cfg.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Which parameter to sweep.
        #[arg(long, value_enum)]
        var: SweepVar,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long)]
        step: u64,
        /// Runs per sweep point.
        #[arg(long, default_value_t = 10)]
        runs: usize,
    },
    /// Desk-scale verification: brute-force optimum vs annealer, router vs
    /// breadth-first search. Needs at most 20 sensors.
    #[command(hide = true)]
    Oracle {
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn resolve_config(common: &CommonArgs, fallback: NetworkConfig) -> Result<NetworkConfig, ConfigError> {
    let mut cfg = match &common.config {
        Some(path) => parse_config(path)?,
        None => fallback,
    };
    if let Some(seed) = common.seed {
        cfg.rng_seed = seed;
    }
    if let Some(mode) = common.mode {
        cfg.selection_mode = match mode {
            ModeArg::Sa => SelectionMode::Sa,
            ModeArg::Contest => SelectionMode::Contest,
        };
    }
    cfg.validate()?;
    Ok(cfg)
}

fn ensure_out_dir(dir: &Path) -> std::io::Result<()> {
    fs::create_dir_all(dir)
}

fn cmd_run(common: &CommonArgs) -> Result<(), String> {
    let cfg =
        resolve_config(common, NetworkConfig::default()).map_err(|e| e.to_string())?;
    let report = run_simulation(&cfg);
    ensure_out_dir(&common.out).map_err(|e| format!("{}: {e}", common.out.display()))?;
    let manifest = RunManifest::new(cfg.clone(), vec![cfg.rng_seed], "run");
    write_manifest(&common.out, &manifest).map_err(|e| e.to_string())?;
    let rounds = common.out.join("rounds.csv");
    let summary = common.out.join("summary.csv");
    write_rounds_csv(&report, &rounds).map_err(|e| format!("{}: {e}", rounds.display()))?;
    write_summary_csv(&report, &summary).map_err(|e| format!("{}: {e}", summary.display()))?;
    println!(
        "lifetime={} termination={} seed={} mode={} -> {}",
        report.lifetime,
        report.termination.label(),
        report.seed,
        mode_label(cfg.selection_mode),
        common.out.display()
    );
    Ok(())
}

fn cmd_batch(common: &CommonArgs, runs: usize) -> Result<(), String> {
    if runs == 0 {
        return Err("--runs must be at least 1".into());
    }
    let cfg =
        resolve_config(common, NetworkConfig::default()).map_err(|e| e.to_string())?;
    let batch = run_batch(&cfg, runs, cfg.rng_seed);
    ensure_out_dir(&common.out).map_err(|e| format!("{}: {e}", common.out.display()))?;
    let manifest = RunManifest::new(cfg.clone(), batch.seeds.clone(), "batch");
    write_manifest(&common.out, &manifest).map_err(|e| e.to_string())?;
    write_batch_csvs(&batch, &common.out).map_err(|e| e.to_string())?;
    println!(
        "runs={} mean_lifetime={:.2} sd={:.2} min={} max={} -> {}",
        runs,
        batch.stats.mean,
        batch.stats.sd,
        batch.stats.min,
        batch.stats.max,
        common.out.display()
    );
    Ok(())
}

fn cmd_sweep(
    common: &CommonArgs,
    var: SweepVar,
    from: u64,
    to: u64,
    step: u64,
    runs: usize,
) -> Result<(), String> {
    if step == 0 || from > to {
        return Err("sweep needs step >= 1 and from <= to".into());
    }
    if runs == 0 {
        return Err("--runs must be at least 1".into());
    }
    let base = resolve_config(common, NetworkConfig::default()).map_err(|e| e.to_string())?;
    let mut rows = Vec::new();
    let mut value = from;
    let mut index = 0u64;
    while value <= to {
        let mut cfg = base.clone();
        let label = match var {
            SweepVar::Nodes => {
                cfg.n_sensors = value as usize;
                "nodes"
            }
            SweepVar::Targets => {
                cfg.n_targets = value as usize;
                "targets"
            }
        };
        cfg.validate().map_err(|e| format!("sweep point {value}: {e}"))?;
        // Each point draws fresh networks from its own seed family.
        let point_seed = base.rng_seed ^ index;
        let batch = run_batch(&cfg, runs, point_seed);
        println!(
            "{label}={value}: mean_lifetime={:.2} sd={:.2} [{}..{}]",
            batch.stats.mean, batch.stats.sd, batch.stats.min, batch.stats.max
        );
        rows.push(SweepRow {
            var: label,
            value,
            stats: batch.stats,
            runs,
        });
        value += step;
        index += 1;
    }
    ensure_out_dir(&common.out).map_err(|e| format!("{}: {e}", common.out.display()))?;
    let manifest = RunManifest::new(base, vec![], "sweep");
    write_manifest(&common.out, &manifest).map_err(|e| e.to_string())?;
    let path = common.out.join("sweep.csv");
    write_sweep_csv(&rows, &path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(())
}

/// Built-in desk-scale scenario for the hidden oracle command.
fn oracle_default_config() -> NetworkConfig {
    NetworkConfig {
        area_side: 200.0,
        n_sensors: 12,
        n_supernodes: 2,
        n_targets: 3,
        r_comm: 80.0,
        r_sense: 55.0,
        ..NetworkConfig::default()
    }
}

fn cmd_oracle(common: &CommonArgs) -> Result<(), String> {
    let cfg = resolve_config(common, oracle_default_config()).map_err(|e| e.to_string())?;
    if cfg.n_sensors > crate::oracle::BRUTEFORCE_MAX_SENSORS {
        return Err(format!(
            "oracle needs n_sensors <= {}, got {}",
            crate::oracle::BRUTEFORCE_MAX_SENSORS,
            cfg.n_sensors
        ));
    }
    let network = place_uniform(&cfg, &mut substream(cfg.rng_seed, Stream::Placement));
    let coverage = build_coverage(&network, &cfg);
    let graph = build_comm_graph(&network, &cfg);
    let model = EnergyModel::from_config(&cfg);
    let eligible = eligibility(&network, model.eligibility_threshold(cfg.r_comm));

    let mut hop_mismatches = 0;
    for s in 0..cfg.n_sensors {
        if !eligible[s] {
            continue;
        }
        let bfs = hop_oracle(&graph, s, &eligible);
        let routed = relay_route(&graph, s, &eligible).map(|r| r.hop_count() as u32);
        if bfs != routed {
            hop_mismatches += 1;
        }
    }

    let outcome = min_cover_bruteforce(&network, &coverage, &graph, &eligible)
        .map_err(|e| e.to_string())?;
    match outcome {
        OracleOutcome::Infeasible => {
            println!("seed={} infeasible hop_mismatches={hop_mismatches}", cfg.rng_seed);
        }
        OracleOutcome::Optimal { active_count, .. } => {
            let ctx = EvalContext::new(
                &network,
                &coverage,
                &graph,
                &eligible,
                &cfg.weights,
                &model,
            );
            let seed_chromosome = greedy_seed(&network, &coverage, &eligible)
                .map_err(|e| e.to_string())?;
            let mut rng = substream(cfg.rng_seed, Stream::Annealing);
            let best = anneal(seed_chromosome, &cfg.sa, &ctx, &mut rng);
            let plan = ctx.plan_for(&best).ok_or("annealer returned unroutable set")?;
            println!(
                "seed={} optimum_active={active_count} anneal_active={} hop_mismatches={hop_mismatches}",
                cfg.rng_seed,
                plan.active_sensors().len(),
            );
        }
    }
    if hop_mismatches > 0 {
        return Err(format!("{hop_mismatches} hop-count mismatches"));
    }
    Ok(())
}

/// Parses and executes a command line; returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Run { common } => cmd_run(common),
        Command::Batch { common, runs } => cmd_batch(common, *runs),
        Command::Sweep {
            common,
            var,
            from,
            to,
            step,
            runs,
        } => cmd_sweep(common, *var, *from, *to, *step, *runs),
        Command::Oracle { common } => cmd_oracle(common),
    };
    match result {
        Ok(()) => 0,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}
