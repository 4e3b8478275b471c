//! Command-line front end for the firmcycle solver: loads a TOML/JSON run
//! configuration, dispatches to the library, and writes deterministic
//! CSV/JSON artifacts.

mod config;
mod emit;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use firmcycle::cycle_analysis::{self, Mode};
use firmcycle::distributions::{ModelParams, ParetoEntrantDist};
use firmcycle::equilibrium::{solve_ge_steady, EquilibriumState, Regime};
use firmcycle::error::ModelError;
use firmcycle::firm_distribution::FirmDistribution;
use firmcycle::identification::{synthetic_panel, ShockLaw};
use firmcycle::planner_static::planner_allocation;
use firmcycle::quant_transition::{
    calibrate_epsilon, headline_experiment, impact_exit_share, quant_steady_state,
    simulate_transition, PeriodRecord, ShockPath, TransitionSeries,
};

use config::{Frequency, OutputFormat, RunConfig};
use emit::{Cell, Table};

/// Environment variable naming the default artifact directory.
const OUT_DIR_ENV: &str = "FIRMCYCLE_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "firmcycle",
    about = "Deterministic equilibrium solver and business-cycle laboratory \
             for a heterogeneous-firm entry/exit economy",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Run configuration file (TOML or JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for artifacts (default: $FIRMCYCLE_OUT_DIR, then ./out).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Artifact format.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Random seed for panel synthesis.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Period length for calibration presets.
    #[arg(long, global = true, value_enum)]
    frequency: Option<Frequency>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the long-run equilibrium and report its aggregates.
    SteadyState,
    /// Run the three-phase fixed-cost cycle and report log-changes.
    Cycle,
    /// Sweep the crisis depth over a grid of phase-2 fixed costs.
    Sweep,
    /// Simulate the perfect-foresight transition after a fixed-cost shock.
    Transition,
    /// Calibrate the shock magnitude to a target impact exit share.
    Calibrate,
    /// Solve the planner optimum and its decentralizing subsidy.
    Planner,
    /// Generate a synthetic industry panel and fit the demand-shock slope.
    Identify,
    /// Reproduce the headline quantitative experiment.
    ReproduceTable5 {
        /// Love-of-variety override for the calibrated economy.
        #[arg(long)]
        q: Option<f64>,
        /// Target impact exit share under a passive cycle policy.
        #[arg(long, default_value_t = 0.2044)]
        target_exit_share: f64,
        /// Transition horizon in periods.
        #[arg(long)]
        horizon: Option<usize>,
    },
}

/// Errors mapped to process exit codes: config errors exit 2, solver errors
/// exit 1.
enum CliError {
    Config(String),
    Solver(ModelError),
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Solver(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(CliError::Solver(e)) => {
            eprintln!("solver error: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let (cfg, format, out_dir) = load_context(cli)?;
    std::fs::create_dir_all(&out_dir)
        .map_err(|e| CliError::Config(format!("cannot create {}: {e}", out_dir.display())))?;
    // Re-emit the configuration actually used, for provenance and round-trip.
    if let Some(cfg) = &cfg {
        let text = serde_json::to_string_pretty(cfg)
            .map_err(|e| CliError::Config(format!("config serialization failed: {e}")))?;
        write_artifact(&out_dir, "config_used.json", &format!("{text}\n"))?;
    }

    match &cli.command {
        Command::SteadyState => cmd_steady_state(cli, &cfg, format, &out_dir),
        Command::Cycle => cmd_cycle(cli, &cfg, format, &out_dir),
        Command::Sweep => cmd_sweep(cli, &cfg, format, &out_dir),
        Command::Transition => cmd_transition(cli, &cfg, format, &out_dir),
        Command::Calibrate => cmd_calibrate(cli, &cfg, format, &out_dir),
        Command::Planner => cmd_planner(cli, &cfg, format, &out_dir),
        Command::Identify => cmd_identify(cli, &cfg, format, &out_dir),
        Command::ReproduceTable5 { q, target_exit_share, horizon } => {
            cmd_table5(cli, format, &out_dir, *q, *target_exit_share, *horizon)
        }
    }
}

/// Load the config (when given) and resolve format and output directory with
/// flag > config > environment > default precedence.
fn load_context(
    cli: &Cli,
) -> Result<(Option<RunConfig>, OutputFormat, PathBuf), CliError> {
    let cfg = match &cli.config {
        Some(path) => Some(RunConfig::load(path).map_err(CliError::Config)?),
        None => None,
    };
    let format = cli
        .format
        .or(cfg.as_ref().and_then(|c| c.format))
        .unwrap_or(OutputFormat::Csv);
    let out_dir = cli
        .out
        .clone()
        .or_else(|| cfg.as_ref().and_then(|c| c.out_dir.clone()))
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));
    Ok((cfg, format, out_dir))
}

fn require_config<'a>(cfg: &'a Option<RunConfig>) -> Result<&'a RunConfig, CliError> {
    cfg.as_ref()
        .ok_or_else(|| CliError::Config("this command requires --config PATH".into()))
}

fn resolve_economy(
    cli: &Cli,
    cfg: &Option<RunConfig>,
) -> Result<(ModelParams, ParetoEntrantDist), CliError> {
    require_config(cfg)?.resolve(cli.frequency).map_err(CliError::Config)
}

fn write_artifact(dir: &Path, name: &str, body: &str) -> Result<(), CliError> {
    std::fs::write(dir.join(name), body)
        .map_err(|e| CliError::Config(format!("cannot write {name}: {e}")))
}

fn write_table(table: &Table, dir: &Path, format: OutputFormat) -> Result<PathBuf, CliError> {
    table
        .write(dir, format)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", table.name)))
}

fn state_row<D>(state: &EquilibriumState<D>) -> Vec<Cell> {
    vec![
        state.cutoff.into(),
        state.entry_mass.into(),
        state.mass.into(),
        state.intensity.into(),
        state.labor_production.into(),
        state.revenue.into(),
        state.output.into(),
        state.price_index.into(),
        match state.regime {
            Regime::Entry => "Entry".into(),
            Regime::NoEntry => "NoEntry".into(),
        },
    ]
}

const STATE_COLUMNS: [&str; 9] =
    ["cutoff", "E", "M", "Z", "Lp", "R", "Y", "P", "regime"];

fn cmd_steady_state(
    cli: &Cli,
    cfg: &Option<RunConfig>,
    format: OutputFormat,
    out_dir: &Path,
) -> Result<String, CliError> {
    let (params, dist) = resolve_economy(cli, cfg)?;
    let theta_ss = require_config(cfg)?.policy_levers().theta_ss;
    // With churn the steady state must replace depreciating firms each
    // period; without churn the static long-run solver applies.
    let state = if params.delta > 0.0 {
        quant_steady_state(&params, &dist, theta_ss)?
    } else {
        solve_ge_steady(&params, &FirmDistribution::empty(dist))?
    };
    let mut table = Table::new("steady_state", STATE_COLUMNS.to_vec());
    table.push(state_row(&state));
    let path = write_table(&table, out_dir, format)?;
    Ok(format!(
        "steady-state: M={:.6} Y={:.6} cutoff={:.6} -> {}",
        state.mass,
        state.output,
        state.cutoff,
        path.display()
    ))
}

fn cycle_mode(cfg: &RunConfig) -> Result<Mode, CliError> {
    match cfg.cycle.as_ref().map(|c| c.mode.as_str()).unwrap_or("ge") {
        "pe" => Ok(Mode::Pe),
        "ge" => Ok(Mode::Ge),
        other => Err(CliError::Config(format!("cycle mode must be 'pe' or 'ge', got '{other}'"))),
    }
}

fn cmd_cycle(
    cli: &Cli,
    cfg: &Option<RunConfig>,
    format: OutputFormat,
    out_dir: &Path,
) -> Result<String, CliError> {
    let (params, dist) = resolve_economy(cli, cfg)?;
    let cfg = require_config(cfg)?;
    let section = cfg
        .cycle
        .as_ref()
        .ok_or_else(|| CliError::Config("cycle requires a [cycle] section".into()))?;
    let f_low = section.f_low.unwrap_or(params.f_c);
    let f_high = section
        .f_high
        .ok_or_else(|| CliError::Config("cycle requires cycle.f_high".into()))?;
    let report =
        cycle_analysis::run_three_phase_cycle(&params, &dist, f_low, f_high, cycle_mode(cfg)?)?;
    let mut table = Table::new(
        "cycle",
        vec!["dlog_M", "dlog_Lp", "dlog_Z", "dlog_zbar", "dlog_Y", "q_star"],
    );
    table.push(vec![
        report.dlog_mass.into(),
        report.dlog_labor.into(),
        report.dlog_intensity.into(),
        report.dlog_avg_productivity.into(),
        report.dlog_output.into(),
        report.q_star.into(),
    ]);
    let path = write_table(&table, out_dir, format)?;
    Ok(format!(
        "cycle: dlog_Y={:+.6} dlog_M={:+.6} -> {}",
        report.dlog_output,
        report.dlog_mass,
        path.display()
    ))
}

fn cmd_sweep(
    cli: &Cli,
    cfg: &Option<RunConfig>,
    format: OutputFormat,
    out_dir: &Path,
) -> Result<String, CliError> {
    let (params, dist) = resolve_economy(cli, cfg)?;
    let cfg = require_config(cfg)?;
    let mode = cycle_mode(cfg)?;
    let grid = match cfg.cycle.as_ref().and_then(|c| c.f_high_grid.clone()) {
        Some(grid) if !grid.is_empty() => grid,
        _ => {
            // Default grid: 12 geometric points between a shallow crisis and
            // the cost that wipes out all but 0.1% of the incumbent stock.
            let lo = params.f_c * 1.05;
            let hi = cycle_analysis::max_crisis_cost(&params, &dist, mode, 1e-3)?;
            let n = 12;
            (0..n)
                .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
                .collect()
        }
    };
    let records =
        cycle_analysis::depth_sweep(&params, &dist, &grid, &[params.q], mode)?;
    let mut table = Table::new(
        "sweep",
        vec!["f_high", "mass_phase3", "dlog_M", "dlog_Lp", "dlog_Z", "q_star", "dlog_Y"],
    );
    for r in &records {
        table.push(vec![
            r.f_high.into(),
            r.mass_phase3.into(),
            r.dlog_mass.into(),
            r.dlog_labor.into(),
            r.dlog_intensity.into(),
            r.q_star.into(),
            r.dlog_output_at_q[0].into(),
        ]);
    }
    let path = write_table(&table, out_dir, format)?;
    Ok(format!("sweep: {} crisis depths -> {}", records.len(), path.display()))
}

const TRANSITION_COLUMNS: [&str; 9] =
    ["t", "f_t", "f_bar_t", "cutoff", "E_t", "M_t", "Z_t", "Lp_t", "Y_t"];

fn transition_row(r: &PeriodRecord) -> Vec<Cell> {
    vec![
        r.t.into(),
        r.f_t.into(),
        r.f_bar.into(),
        r.cutoff.into(),
        r.entry.into(),
        r.mass.into(),
        r.intensity.into(),
        r.labor_production.into(),
        r.output.into(),
    ]
}

fn emit_transition(
    series: &TransitionSeries,
    out_dir: &Path,
    format: OutputFormat,
) -> Result<PathBuf, CliError> {
    let mut table = Table::new("transition", TRANSITION_COLUMNS.to_vec());
    for r in &series.records {
        table.push(transition_row(r));
    }
    let path = write_table(&table, out_dir, format)?;
    let mut steady = Table::new("transition_steady", TRANSITION_COLUMNS.to_vec());
    steady.push(transition_row(&series.steady));
    write_table(&steady, out_dir, format)?;
    Ok(path)
}

fn cmd_transition(
    cli: &Cli,
    cfg: &Option<RunConfig>,
    format: OutputFormat,
    out_dir: &Path,
) -> Result<String, CliError> {
    let (params, dist) = resolve_economy(cli, cfg)?;
    let cfg = require_config(cfg)?;
    let shock = cfg.shock_path().map_err(CliError::Config)?;
    let levers = cfg.policy_levers();
    let series = simulate_transition(&params, &dist, &levers, &shock)?;
    let path = emit_transition(&series, out_dir, format)?;
    Ok(format!(
        "transition: {} periods, impact exit share {:.4} -> {}",
        series.records.len(),
        impact_exit_share(&series),
        path.display()
    ))
}

fn cmd_calibrate(
    cli: &Cli,
    cfg: &Option<RunConfig>,
    format: OutputFormat,
    out_dir: &Path,
) -> Result<String, CliError> {
    let (params, dist) = resolve_economy(cli, cfg)?;
    let cfg = require_config(cfg)?;
    let target = cfg.target_exit_share.ok_or_else(|| {
        CliError::Config("calibrate requires target_exit_share".into())
    })?;
    let template = cfg.shock_path().map_err(CliError::Config)?;
    let theta_ss = cfg.policy_levers().theta_ss;
    let epsilon = calibrate_epsilon(&params, &dist, theta_ss, &template, target)?;
    let shock = ShockPath { epsilon, ..template };
    let levers = firmcycle::quant_transition::PolicyLevers { theta_ss, theta_cyc: 0.0 };
    let series = simulate_transition(&params, &dist, &levers, &shock)?;
    let achieved = impact_exit_share(&series);
    let mut table = Table::new(
        "calibrate",
        vec!["epsilon", "target_exit_share", "impact_exit_share", "theta_ss"],
    );
    table.push(vec![epsilon.into(), target.into(), achieved.into(), theta_ss.into()]);
    let path = write_table(&table, out_dir, format)?;
    Ok(format!(
        "calibrate: epsilon={epsilon:.6} hits exit share {achieved:.4} -> {}",
        path.display()
    ))
}

fn cmd_planner(
    cli: &Cli,
    cfg: &Option<RunConfig>,
    format: OutputFormat,
    out_dir: &Path,
) -> Result<String, CliError> {
    let (params, dist) = resolve_economy(cli, cfg)?;
    let allocation = planner_allocation(&params, &FirmDistribution::empty(dist))?;
    let mut table = Table::new(
        "planner",
        vec!["entry_mass_sp", "cutoff_sp", "subsidy_theta", "objective_Y", "entry_clamped"],
    );
    table.push(vec![
        allocation.entry_mass_sp.into(),
        allocation.cutoff_sp.into(),
        allocation.subsidy_theta.into(),
        allocation.objective_y.into(),
        if allocation.entry_clamped { "true" } else { "false" }.into(),
    ]);
    let path = write_table(&table, out_dir, format)?;
    Ok(format!(
        "planner: entry={:.6} cutoff={:.6} theta={:.6} -> {}",
        allocation.entry_mass_sp,
        allocation.cutoff_sp,
        allocation.subsidy_theta,
        path.display()
    ))
}

fn cmd_identify(
    cli: &Cli,
    cfg: &Option<RunConfig>,
    format: OutputFormat,
    out_dir: &Path,
) -> Result<String, CliError> {
    let (params, dist) = resolve_economy(cli, cfg)?;
    let cfg = require_config(cfg)?;
    let panel_cfg = cfg.panel.unwrap_or_default();
    let seed = cli.seed.or(cfg.seed).unwrap_or(0);
    let law = ShockLaw::Uniform { lo: panel_cfg.shock_lo, hi: panel_cfg.shock_hi };
    let panel = synthetic_panel(&params, &dist, panel_cfg.n_industries, law, seed)?;
    let mut table = Table::new(
        "panel",
        vec!["industry", "dlog_Y", "dlog_I", "dlog_Lp", "shock"],
    );
    for o in &panel.observations {
        table.push(vec![
            o.industry.into(),
            o.dlog_y.into(),
            o.dlog_i.into(),
            o.dlog_lp.into(),
            o.shock.into(),
        ]);
    }
    let path = write_table(&table, out_dir, format)?;
    let s = &panel.summary;
    let mut summary = Table::new(
        "panel_summary",
        vec![
            "beta_hat",
            "intercept",
            "r_squared",
            "implied_q",
            "n_industries",
            "seed",
            "rng_algorithm",
        ],
    );
    summary.push(vec![
        s.beta_hat.into(),
        s.intercept.into(),
        s.r_squared.into(),
        s.implied_q.into(),
        s.n_industries.into(),
        Cell::Int(s.seed as i64),
        s.rng_algorithm.as_str().into(),
    ]);
    write_table(&summary, out_dir, format)?;
    Ok(format!(
        "identify: beta_hat={:.10} implied_q={:.10} over {} industries -> {}",
        s.beta_hat,
        s.implied_q,
        s.n_industries,
        path.display()
    ))
}

fn cmd_table5(
    cli: &Cli,
    format: OutputFormat,
    out_dir: &Path,
    q: Option<f64>,
    target_exit_share: f64,
    horizon: Option<usize>,
) -> Result<String, CliError> {
    let frequency = cli.frequency.unwrap_or(Frequency::Quarterly);
    let (base, default_horizon) = match frequency {
        Frequency::Quarterly => (ModelParams::calibrated_quarterly(), 600),
        Frequency::Annual => (ModelParams::calibrated_annual(), 150),
    };
    let params = ModelParams { q: q.unwrap_or(base.q), ..base };
    let dist = ModelParams::calibrated_dist();
    let template = ShockPath {
        f0: params.f_c,
        epsilon: 0.0,
        alpha: 0.841,
        horizon: horizon.unwrap_or(default_horizon),
        f_e_path: None,
    };
    let report = headline_experiment(&params, &dist, &template, target_exit_share)?;
    let mut table = Table::new(
        "table5",
        vec![
            "q",
            "epsilon",
            "impact_exit_share",
            "theta_ss",
            "theta_cyc",
            "cev_steady_gain",
            "recession_laissez_faire_cev_total",
            "recession_laissez_faire_cev_variety",
            "recession_laissez_faire_cev_labor",
            "recession_laissez_faire_cev_tfp",
            "recession_ss_policy_cev_total",
            "recession_ss_policy_cev_variety",
            "recession_ss_policy_cev_labor",
            "recession_ss_policy_cev_tfp",
            "recession_full_policy_cev_total",
            "recession_full_policy_cev_variety",
            "recession_full_policy_cev_labor",
            "recession_full_policy_cev_tfp",
        ],
    );
    table.push(vec![
        params.q.into(),
        report.epsilon.into(),
        report.impact_exit_share.into(),
        report.theta_ss.into(),
        report.theta_cyc.into(),
        report.cev_steady_gain.into(),
        report.recession_laissez_faire.cev_total.into(),
        report.recession_laissez_faire.cev_variety.into(),
        report.recession_laissez_faire.cev_labor.into(),
        report.recession_laissez_faire.cev_tfp.into(),
        report.recession_ss_policy.cev_total.into(),
        report.recession_ss_policy.cev_variety.into(),
        report.recession_ss_policy.cev_labor.into(),
        report.recession_ss_policy.cev_tfp.into(),
        report.recession_full_policy.cev_total.into(),
        report.recession_full_policy.cev_variety.into(),
        report.recession_full_policy.cev_labor.into(),
        report.recession_full_policy.cev_tfp.into(),
    ]);
    let path = write_table(&table, out_dir, format)?;
    Ok(format!(
        "reproduce-table5: theta_ss={:.4} theta_cyc={:.4} steady gain {:+.2}% \
         recessions {:+.2}%/{:+.2}%/{:+.2}% -> {}",
        report.theta_ss,
        report.theta_cyc,
        100.0 * report.cev_steady_gain,
        100.0 * report.recession_laissez_faire.cev_total,
        100.0 * report.recession_ss_policy.cev_total,
        100.0 * report.recession_full_policy.cev_total,
        path.display()
    ))
}
