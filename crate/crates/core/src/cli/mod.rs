//! Command-line front end: presets, the four subcommands, and emission of
//! results as CSV or JSON.
//!
//! Every command turns a [`ScenarioConfig`] into a [`RunReport`]. The first
//! table of a report goes to stdout unless `--out DIR` is given, in which
//! case every table is written to `DIR/<name>.<ext>` together with a
//! `report.txt` summary.

pub mod config;
pub mod table;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hilbert::{Factor, StateVector};
use crate::spacetime::CentralBody;
use crate::switch_model::{self, AmplitudeModel, SwitchOutcome};
use crate::timing::{self, ProtocolSchedule};
use crate::trigger::{self, Mode, Thresholds, TriggerParams};

pub use config::{parse_config, Engine, Format, RawConfig, ScenarioConfig};
pub use table::{Cell, Table};

/// Largest number of points a sweep may evaluate.
pub const MAX_SWEEP_POINTS: usize = 1_000_000;

/// Environment variable naming a constants file that replaces the configured one.
pub const CONSTANTS_ENV: &str = "QSWITCH_CONSTANTS";

pub const PRESETS: &[(&str, &str)] = &[
    (
        "earth",
        "[body]\npreset = earth\n[protocol]\nh = 1\nd = 0.3e-6\ndtau_1 = 1e-17\nepsilon = 1e-19\n",
    ),
    (
        "small-mass",
        "[body]\npreset = small-mass\n[protocol]\nh = 1e-7\nd = 1e-15\ndtau_1 = 3e-26\nepsilon = 3e-28\n",
    ),
    ("switch-e1", "[switch]\nrun_id = e1\ninput = e1\n"),
    ("switch-e4", "[switch]\nrun_id = e4\ninput = e4\n"),
    (
        "switch-generic",
        "[switch]\nrun_id = generic\n\
         alpha = 0.5, 0.5i, 0.5, 0.4-0.2i, 0.2+0.1i\n\
         c1a = 0.9\nc4a = 0.7i\nc1b = 0.8+0.1i\nc2b = 0.6\n\
         delta_1a = 0.3\ndelta_4a = -1.1\ndelta_1b = 0.5\ndelta_2b = 2.0\n\
         f_ba = 0.85\nf_ab = 0.5+0.5i\ngamma_ba = 0.7\ngamma_ab = -0.4\n",
    ),
    ("trigger", "[trigger]\ndelta_over_sigma = 20\namp_over_delta = 20\n"),
    ("trigger-free", "[trigger]\nv0 = 0\n"),
    ("sweep-h", "[sweep]\nengine = timing\naxis = h log 0.1 100 20\n"),
    ("sweep-d", "[sweep]\nengine = timing\naxis = d linear 1e-7 1e-6 10\n"),
    ("sweep-c1a", "[sweep]\nengine = switch\naxis = c1a linear 0 1 11\n"),
];

pub fn preset(name: &str) -> Result<RawConfig> {
    let text = PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| {
            let names: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
            Error::Usage(format!("unknown preset {name:?}; available: {}", names.join(", ")))
        })?;
    parse_config(text)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunReport {
    pub command: String,
    pub summary: Vec<(String, Cell)>,
    pub tables: Vec<Table>,
    pub warnings: Vec<String>,
}

impl RunReport {
    fn new(command: &str) -> Self {
        RunReport { command: command.into(), ..Default::default() }
    }

    fn note(&mut self, key: &str, v: impl Into<Cell>) {
        self.summary.push((key.into(), v.into()));
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn value(&self, key: &str) -> Option<&Cell> {
        self.summary.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn summary_text(&self) -> String {
        let mut s = format!("command = {}\n", self.command);
        for (k, v) in &self.summary {
            let shown = match v {
                Cell::Float(x) => format!("{x:e}"),
                Cell::Int(x) => x.to_string(),
                Cell::Bool(b) => b.to_string(),
                Cell::Text(t) => t.clone(),
                Cell::Empty => String::new(),
            };
            s.push_str(&format!("{k} = {shown}\n"));
        }
        for w in &self.warnings {
            s.push_str(&format!("warning: {w}\n"));
        }
        s
    }
}

fn body_of(cfg: &ScenarioConfig) -> Result<CentralBody> {
    CentralBody::with_constants(cfg.mass, cfg.radius, cfg.constants)
}

/// The schedule described by the protocol section.
pub fn schedule_of(cfg: &ScenarioConfig) -> Result<ProtocolSchedule> {
    let body = body_of(cfg)?;
    let p = &cfg.protocol;
    let sol = timing::solve_matching(&body, p.h, p.d)?;
    let dt_v = match p.dt_v {
        Some(v) => v,
        None => {
            if !(0.0..=1.0).contains(&p.ascent_fraction) {
                return Err(Error::Domain(format!("ascent fraction {} outside [0, 1]", p.ascent_fraction)));
            }
            p.ascent_fraction * sol.dt_r
        }
    };
    match p.dt_s {
        Some(dt_s) => ProtocolSchedule::new(body, p.h, p.d, dt_v, dt_s, sol.dt_c),
        None => ProtocolSchedule::solved(body, p.h, p.d, dt_v),
    }
}

pub const TIMING_COLUMNS: &[&str] = &[
    "mass",
    "radius",
    "h",
    "d",
    "schwarzschild_radius",
    "regime",
    "ratio_exact",
    "ratio_weak_field",
    "ratio_curvature_form",
    "dt_c",
    "dt_r",
    "dt_v",
    "dt_s",
    "t1",
    "t2",
    "t3",
    "t4",
    "dtau_v",
    "dtau_c",
    "tau_star",
    "dt_exp",
    "dt_r_h_over_d",
    "near_surface_estimate",
    "small_mass_estimate",
    "static_baseline",
    "matching_residual",
    "decay_margin",
    "window_margin",
    "transit_margin",
    "feasible",
];

/// One row of timing outputs plus the warnings it raises.
pub fn timing_row(cfg: &ScenarioConfig) -> Result<(Vec<Cell>, Vec<String>)> {
    let s = schedule_of(cfg)?;
    let body = s.body;
    let p = &cfg.protocol;
    let sol = timing::solve_matching(&body, p.h, p.d)?;
    let feas = timing::validate_windows_with_threshold(&s, p.dtau_1, p.epsilon, p.feasibility_factor)?;
    let baseline = timing::static_agent_tau(p.baseline_radius.unwrap_or(body.radius()), &body)?;
    let residual = s.matching_residual();
    let mut warnings = feas.failures();
    if p.dt_s.is_some() && residual.abs() > 1e-6 * s.dtau_c {
        warnings.push(format!(
            "schedule does not satisfy the matching condition (residual {residual:e} s against dtau_c = {:e} s)",
            s.dtau_c
        ));
    }
    let row = vec![
        body.mass().into(),
        body.radius().into(),
        s.h.into(),
        s.d.into(),
        body.schwarzschild_radius().into(),
        sol.regime.as_str().into(),
        sol.ratio_exact.into(),
        sol.ratio_weak_field.into(),
        sol.ratio_curvature_form.into(),
        s.dt_c.into(),
        s.dt_r.into(),
        s.dt_v.into(),
        s.dt_s.into(),
        s.times[1].into(),
        s.times[2].into(),
        s.times[3].into(),
        s.times[4].into(),
        s.dtau_v.into(),
        s.dtau_c.into(),
        s.tau_star.into(),
        s.dt_exp.into(),
        (s.dt_r * s.h / s.d).into(),
        timing::near_surface_duration(&body, s.h, s.d).into(),
        timing::small_mass_duration(&body, s.d).into(),
        baseline.into(),
        residual.into(),
        feas.decay_margin.into(),
        feas.window_margin.into(),
        feas.transit_margin.into(),
        feas.passes().into(),
    ];
    Ok((row, warnings))
}

pub fn cmd_timing(cfg: &ScenarioConfig) -> Result<RunReport> {
    let (row, warnings) = timing_row(cfg)?;
    let mut table = Table::new("timing", TIMING_COLUMNS);
    table.push(row);
    let mut r = RunReport::new("timing");
    for key in ["regime", "ratio_exact", "dt_r", "dt_exp", "tau_star", "dt_r_h_over_d", "static_baseline", "feasible"] {
        let k = table.column(key).expect("known column");
        r.note(key, table.rows[0][k].clone());
    }
    r.tables.push(table);
    r.warnings = warnings;
    Ok(r)
}

fn switch_inputs(cfg: &ScenarioConfig) -> Result<(StateVector, AmplitudeModel)> {
    let s = &cfg.switch;
    let (alpha, model) = match s.seed {
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let model = switch_model::random_model(&mut rng);
            (switch_model::random_alpha(&mut rng), model)
        }
        None => (s.alpha, AmplitudeModel::new(s.model)?),
    };
    Ok((switch_model::build_input(&alpha)?, model))
}

const TARGET_COLUMNS: [&str; 10] =
    ["e1_re", "e1_im", "e2_re", "e2_im", "e3_re", "e3_im", "e4_re", "e4_im", "e5_re", "e5_im"];

fn target_cells(s: Option<&StateVector>) -> Vec<Cell> {
    match s {
        Some(t) => t.amplitudes().iter().flat_map(|a| [Cell::Float(a.re), Cell::Float(a.im)]).collect(),
        None => vec![Cell::Empty; 10],
    }
}

/// Switch results: per postselection the `F+/-` outcomes with residual
/// target states; the full state; and the path-only diagonal residuals.
pub fn cmd_switch(cfg: &ScenarioConfig) -> Result<RunReport> {
    let (input, model) = switch_inputs(cfg)?;
    let out = switch_model::run_switch(&input, &model)?;
    let run_id = cfg.switch.run_id.as_str();

    let mut cols = vec!["run_id", "zeta", "probability", "outcome", "outcome_probability", "remainder"];
    cols.extend(TARGET_COLUMNS);
    let mut results = Table::new("switch", &cols);
    let mut path_table = Table::new(
        "switch_path_diagonal",
        &["run_id", "zeta", "outcome", "probability", "A", "B", "target", "re", "im"],
    );
    let mut r = RunReport::new("switch");
    r.note("run_id", run_id);
    for ps in &out.postselections {
        r.note(&format!("p_zeta{}", ps.zeta), ps.probability);
        let Some(state) = &ps.state else {
            let mut row = vec![run_id.into(), ps.zeta.into(), ps.probability.into(), Cell::Empty, Cell::Empty, Cell::Empty];
            row.extend(target_cells(None));
            results.push(row);
            continue;
        };
        let d = switch_model::diagonal_measure(state)?;
        for b in [&d.plus, &d.minus] {
            let mut row = vec![
                run_id.into(),
                ps.zeta.into(),
                ps.probability.into(),
                b.sign.as_str().into(),
                b.probability.into(),
                d.remainder.into(),
            ];
            row.extend(target_cells(b.residual.as_ref()));
            results.push(row);
        }
        r.note(&format!("target_entropy_zeta{}", ps.zeta), state.entanglement_entropy(Factor::Target)?);

        let pd = switch_model::path_diagonal_measure(state)?;
        for b in [&pd.plus, &pd.minus] {
            let Some(res) = &b.residual else { continue };
            res.for_each_label(|l, a| {
                if a.norm() > crate::hilbert::DUMP_THRESHOLD {
                    let lv = |f: Factor| f.level_name(l.level(f).expect("agents and target"));
                    path_table.push(vec![
                        run_id.into(),
                        ps.zeta.into(),
                        b.sign.as_str().into(),
                        b.probability.into(),
                        lv(Factor::AgentA).into(),
                        lv(Factor::AgentB).into(),
                        lv(Factor::Target).into(),
                        a.re.into(),
                        a.im.into(),
                    ]);
                }
            });
        }
    }
    let ab = switch_model::branch_state(&out.state, crate::hilbert::level::A_BEFORE_B)?;
    let ba = switch_model::branch_state(&out.state, crate::hilbert::level::B_BEFORE_A)?;
    r.note("branch_distance", ab.max_distance(&ba)?);
    r.note("total_probability", out.total_probability());

    r.tables.push(results);
    r.tables.push(state_table(&out));
    r.tables.push(path_table);
    Ok(r)
}

fn state_table(out: &SwitchOutcome) -> Table {
    let names: Vec<String> = Factor::ALL.iter().map(|f| f.name().to_string()).chain(["re".into(), "im".into()]).collect();
    let mut t = Table::with_columns("switch_state", names);
    out.state.for_each_label(|l, a| {
        if a.norm() > crate::hilbert::DUMP_THRESHOLD {
            let mut row: Vec<Cell> =
                Factor::ALL.iter().map(|&f| f.level_name(l.level(f).expect("full space")).into()).collect();
            row.push(a.re.into());
            row.push(a.im.into());
            t.push(row);
        }
    });
    t
}

/// Trigger parameters for the configured scenario; the alarm time defaults
/// to the protocol's crossing proper time.
pub fn trigger_params(cfg: &ScenarioConfig) -> Result<TriggerParams> {
    let t = &cfg.trigger;
    let tau_star = match t.tau_star {
        Some(v) => v,
        None => schedule_of(cfg)?.tau_star,
    };
    let p = TriggerParams::for_alarm(tau_star, t.mass, cfg.constants.hbar, t.delta_over_sigma, t.amp_over_delta)?;
    match t.v0_scale {
        Some(v) => p.with_v0(v * p.hbar * p.omega),
        None => Ok(p),
    }
}

pub fn cmd_trigger(cfg: &ScenarioConfig) -> Result<RunReport> {
    use config::TriggerMode;
    let t = &cfg.trigger;
    let p = trigger_params(cfg)?;
    let times = trigger::uniform_samples(p.tau_star(), t.samples);
    let want_numeric = t.mode != TriggerMode::Analytic;
    let want_analytic = t.mode != TriggerMode::Numeric;
    let numeric = if want_numeric { Some(trigger::numeric_evolve(&p, &t.grid, &times)?) } else { None };

    let mut traj = Table::new(
        "trigger_trajectory",
        &[
            "tau", "re_alpha", "im_alpha", "x_classical", "p_a0_analytic", "p_a1_analytic", "mean_x", "mean_p", "p_a0",
            "p_a1", "norm",
        ],
    );
    let mut orbit_error: f64 = 0.0;
    for (i, &tau) in times.iter().enumerate() {
        let a = trigger::analytic_evolve(&p, tau.min(p.tau_star()))?;
        let x_classical = p.amplitude * (p.omega * tau).cos();
        let mut row: Vec<Cell> = vec![tau.into(), a.alpha.re.into(), a.alpha.im.into(), x_classical.into()];
        if want_analytic {
            row.extend([a.p_a0().into(), a.p_a1().into()]);
        } else {
            row.extend([Cell::Empty, Cell::Empty]);
        }
        match &numeric {
            Some(tr) => {
                let s = &tr.samples[i];
                orbit_error = orbit_error.max((s.mean_x - x_classical).abs() / p.amplitude);
                row.extend([s.mean_x.into(), s.mean_p.into(), s.p_a0.into(), s.p_a1.into(), s.norm.into()]);
            }
            None => row.extend(vec![Cell::Empty; 5]),
        }
        traj.push(row);
    }

    let mut summary = Table::new(
        "trigger",
        &[
            "mode", "tau_star", "omega", "sigma", "delta", "amplitude", "v0", "alpha0", "epsilon", "epsilon_exact",
            "rotation_angle", "rotation_angle_exact", "p_a0_before", "p_a1_at_star", "reflection", "reflection_valid",
            "max_norm_drift", "orbit_error", "passed",
        ],
    );
    let mut r = RunReport::new("trigger");
    let mut modes = Vec::new();
    if want_analytic {
        modes.push(Mode::Analytic);
    }
    if want_numeric {
        modes.push(Mode::Numeric);
    }
    for mode in modes {
        let mut th = Thresholds::for_mode(mode);
        th.validity_factor = t.validity_factor;
        if mode == Mode::Numeric {
            th.hold = t.hold;
            th.fire = t.fire;
        }
        let rep = trigger::check_trigger_condition(&p, mode, th, &t.grid)?;
        let orbit: Cell = if mode == Mode::Numeric { orbit_error.into() } else { Cell::Empty };
        summary.push(vec![
            mode.as_str().into(),
            p.tau_star().into(),
            p.omega.into(),
            p.sigma().into(),
            p.delta.into(),
            p.amplitude.into(),
            p.v0.into(),
            p.alpha0().into(),
            rep.epsilon.into(),
            rep.epsilon_exact.into(),
            rep.rotation_angle.into(),
            trigger::rotation_angle_exact(&p).into(),
            rep.p_a0_before.into(),
            rep.p_a1_at_star.into(),
            rep.reflection.probability.into(),
            rep.reflection.valid.into(),
            rep.max_norm_drift.into(),
            orbit,
            rep.passed.into(),
        ]);
        r.note(&format!("{}_passed", mode.as_str()), rep.passed);
        r.note(&format!("{}_p_a1_at_star", mode.as_str()), rep.p_a1_at_star);
        for d in rep.diagnostics {
            let w = format!("{}: {d}", mode.as_str());
            if !r.warnings.contains(&w) {
                r.warnings.push(w);
            }
        }
    }
    r.note("rotation_angle", trigger::rotation_angle(&p));
    r.note("epsilon", p.epsilon());
    r.tables.push(traj);
    r.tables.push(summary);
    Ok(r)
}

const SWITCH_SWEEP_COLUMNS: &[&str] =
    &["run_id", "p_zeta0", "p_zeta1", "p_zeta2", "p_zeta3", "p_plus_zeta3", "p_minus_zeta3", "branch_distance"];

fn switch_sweep_row(cfg: &ScenarioConfig) -> Result<Vec<Cell>> {
    let (input, model) = switch_inputs(cfg)?;
    let out = switch_model::run_switch(&input, &model)?;
    let mut row: Vec<Cell> = vec![cfg.switch.run_id.as_str().into()];
    row.extend(out.postselections.iter().map(|p| Cell::from(p.probability)));
    match &out.postselections[3].state {
        Some(s) => {
            let d = switch_model::diagonal_measure(s)?;
            row.extend([d.plus.probability.into(), d.minus.probability.into()]);
        }
        None => row.extend([Cell::Empty, Cell::Empty]),
    }
    let ab = switch_model::branch_state(&out.state, crate::hilbert::level::A_BEFORE_B)?;
    let ba = switch_model::branch_state(&out.state, crate::hilbert::level::B_BEFORE_A)?;
    row.push(ab.max_distance(&ba)?.into());
    Ok(row)
}

/// Grid evaluation over one or two axes; rows are ordered with the first
/// axis outermost. Timing sweeps emit exactly the timing columns, so a
/// single-point sweep reproduces `timing`.
pub fn cmd_sweep(cfg: &ScenarioConfig) -> Result<RunReport> {
    let spec = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| Error::Usage("sweep needs a [sweep] section with an engine and an axis".into()))?;
    let values: Vec<Vec<f64>> = spec.axes.iter().map(|a| a.values()).collect();
    let total = values.iter().try_fold(1usize, |acc, v| acc.checked_mul(v.len())).unwrap_or(usize::MAX);
    if total > MAX_SWEEP_POINTS {
        return Err(Error::Usage(format!("sweep of {total} points exceeds the limit of {MAX_SWEEP_POINTS}")));
    }
    let point = |i: usize| -> Vec<f64> {
        let mut rem = i;
        let mut out = vec![0.0; values.len()];
        for k in (0..values.len()).rev() {
            out[k] = values[k][rem % values[k].len()];
            rem /= values[k].len();
        }
        out
    };
    let evaluate = |i: usize| -> Result<(Vec<Cell>, Vec<String>)> {
        let mut c = cfg.clone();
        let pt = point(i);
        for (a, &v) in spec.axes.iter().zip(&pt) {
            c.set_param(&a.param, v)?;
        }
        let label = || spec.axes.iter().zip(&pt).map(|(a, v)| format!("{} = {v:e}", a.param)).collect::<Vec<_>>().join(", ");
        let res = match spec.engine {
            Engine::Timing => timing_row(&c),
            Engine::Switch => switch_sweep_row(&c).map(|mut row| {
                let mut full: Vec<Cell> = pt.iter().map(|&v| Cell::Float(v)).collect();
                full.append(&mut row);
                (full, Vec::new())
            }),
        };
        res.map(|(row, w)| (row, w.into_iter().map(|m| format!("{}: {m}", label())).collect()))
            .map_err(|e| Error::Usage(format!("sweep point {}: {e}", label())))
    };
    let rows: Vec<Result<(Vec<Cell>, Vec<String>)>> = (0..total).into_par_iter().map(evaluate).collect();

    let mut table = match spec.engine {
        Engine::Timing => Table::new("sweep", TIMING_COLUMNS),
        Engine::Switch => {
            let mut cols: Vec<String> = spec.axes.iter().map(|a| a.param.clone()).collect();
            cols.extend(SWITCH_SWEEP_COLUMNS.iter().map(|s| s.to_string()));
            Table::with_columns("sweep", cols)
        }
    };
    let mut r = RunReport::new("sweep");
    for res in rows {
        let (row, w) = res?;
        table.push(row);
        r.warnings.extend(w);
    }
    r.note("points", total);
    r.tables.push(table);
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Scenario configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Built-in scenario applied before the configuration file.
    #[arg(long, global = true, value_name = "NAME")]
    pub preset: Option<String>,
    /// Write every result table and a summary into this directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Treat warnings as failures (exit code 2).
    #[arg(long, global = true)]
    pub strict: bool,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Solve the proper-time matching schedule.
    Timing,
    /// Run the switch, postselections and diagonal measurements.
    Switch,
    /// Check the oscillator trigger analytically and numerically.
    Trigger,
    /// Evaluate timing or switch outputs over a parameter grid.
    Sweep,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "qswitch", version, about = "Gravitational quantum switch simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

/// Preset, then configuration file, then command-line overrides, then
/// constants.
pub fn load_scenario(opts: &Options, env_constants: Option<&Path>) -> Result<ScenarioConfig> {
    let mut raw = RawConfig::default();
    if let Some(name) = &opts.preset {
        raw.extend(preset(name)?);
    }
    if let Some(path) = &opts.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
        raw.extend(parse_config(&text)?);
    }
    let mut cfg = ScenarioConfig::from_raw(&raw)?;
    if let Some(dir) = &opts.out {
        cfg.out_dir = Some(dir.clone());
    }
    if let Some(f) = opts.format {
        cfg.format = match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        };
    }
    cfg.resolve_constants(env_constants)?;
    Ok(cfg)
}

pub fn run_command(cmd: Command, cfg: &ScenarioConfig) -> Result<RunReport> {
    match cmd {
        Command::Timing => cmd_timing(cfg),
        Command::Switch => cmd_switch(cfg),
        Command::Trigger => cmd_trigger(cfg),
        Command::Sweep => cmd_sweep(cfg),
    }
}

fn render(t: &Table, f: Format) -> String {
    match f {
        Format::Csv => t.to_csv(),
        Format::Json => t.to_json(),
    }
}

/// Write a report to `cfg.out_dir` or to `stdout`/`stderr`.
pub fn emit(report: &RunReport, cfg: &ScenarioConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match &cfg.out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            for t in &report.tables {
                let path = dir.join(format!("{}.{}", t.name, cfg.format.extension()));
                std::fs::write(&path, render(t, cfg.format))?;
            }
            std::fs::write(dir.join("report.txt"), report.summary_text())?;
            stdout.write_all(report.summary_text().as_bytes())?;
        }
        None => {
            if let Some(t) = report.tables.first() {
                stdout.write_all(render(t, cfg.format).as_bytes())?;
            }
            for w in &report.warnings {
                writeln!(stderr, "warning: {w}")?;
            }
        }
    }
    Ok(())
}

/// Run a parsed command line. Exit codes: 0 success, 1 error, 2 warnings
/// under `--strict`.
pub fn run(cli: &Cli, env_constants: Option<&Path>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = load_scenario(&cli.options, env_constants).and_then(|cfg| {
        let report = run_command(cli.command, &cfg)?;
        emit(&report, &cfg, stdout, stderr)?;
        Ok(report)
    });
    match result {
        Ok(report) if cli.options.strict && !report.warnings.is_empty() => 2,
        Ok(_) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
    }
}

/// Entry point for the binary.
pub fn main_from_env() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let env = std::env::var_os(CONSTANTS_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
    let code = run(&cli, env.as_deref(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    let _ = std::io::stdout().flush();
    code
}
