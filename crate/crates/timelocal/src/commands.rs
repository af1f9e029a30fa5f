//! One function per subcommand. Each computes everything first and then
//! writes its files in a fixed order under `cfg.out`.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};
use timelocal_core::analysis::diabaticity_window;
use timelocal_core::scenarios::{
    figure_data, nonuniqueness_report, scenario_resonant, scenario_switched, FigureId,
};
use timelocal_core::{
    diabaticity_xi, make_grid, Complex64, Coupling, CouplingProfile, DecayRateSeries, ModelConfig,
    QubitDensityMatrix, ScenarioResult, Spectrum, StateVector, Trajectory,
};

use crate::config::{window_name, OutputFormat, RunConfig, ScenarioKind};
use crate::error::{Error, Result};
use crate::format::{fmt_g, number, write_json, write_text, Style, Table};

/// What a command produced.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    /// `key = value` lines for stdout.
    pub summary: Vec<(String, String)>,
    /// False when a self-test tolerance was violated.
    pub passed: bool,
}

enum Output {
    Table(String, Table),
    Report(String, Value),
}

fn finish(
    cfg: &RunConfig,
    outputs: Vec<Output>,
    summary: Vec<(String, String)>,
) -> Result<Outcome> {
    fs::create_dir_all(&cfg.out).map_err(|e| Error::io(&cfg.out, e))?;
    let mut files = Vec::new();
    for output in outputs {
        let path = match output {
            Output::Table(stem, table) => match cfg.format {
                OutputFormat::Csv => {
                    let path = cfg.out.join(format!("{stem}.csv"));
                    write_text(&path, &table.to_csv())?;
                    path
                }
                OutputFormat::Json => {
                    let path = cfg.out.join(format!("{stem}.json"));
                    write_json(&path, &table.to_json())?;
                    path
                }
            },
            Output::Report(stem, value) => {
                let path = cfg.out.join(format!("{stem}.json"));
                write_json(&path, &value)?;
                path
            }
        };
        files.push(path);
    }
    Ok(Outcome {
        files,
        summary,
        passed: true,
    })
}

fn report(entries: &[(&str, f64)]) -> Value {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert((*k).to_string(), number(*v));
    }
    Value::Object(map)
}

fn summarize(entries: &[(&str, f64)]) -> Vec<(String, String)> {
    entries
        .iter()
        .map(|(k, v)| ((*k).to_string(), fmt_g(*v)))
        .collect()
}

/// The scenario selected by `cfg.scenario`.
pub fn run_scenario(cfg: &RunConfig) -> Result<ScenarioResult> {
    let settings = cfg.settings();
    let result = match cfg.scenario {
        ScenarioKind::Resonant => scenario_resonant(cfg.omega_r, cfg.t_end, &settings)?,
        ScenarioKind::Switched => scenario_switched(
            cfg.omega_max,
            cfg.omega_min,
            cfg.k,
            cfg.n_switch,
            cfg.t_end,
            &settings,
        )?,
        ScenarioKind::Instantaneous => scenario_switched(
            cfg.omega_max,
            cfg.omega_min,
            f64::INFINITY,
            cfg.n_switch,
            cfg.t_end,
            &settings,
        )?,
    };
    Ok(result)
}

fn times(result: &ScenarioResult) -> Vec<f64> {
    result.grid.times().collect()
}

/// `t,rho_ee,rho_gg,re_rho_eg,im_rho_eg,omega,delta`
pub fn trajectory_table(result: &ScenarioResult) -> Table {
    let rho = result.density["psi"].samples();
    let mut table = Table::new();
    table
        .push("t", Style::Fixed, times(result))
        .push(
            "rho_ee",
            Style::General,
            rho.iter().map(|r| r.rho_ee()).collect(),
        )
        .push(
            "rho_gg",
            Style::General,
            rho.iter().map(|r| r.rho_gg()).collect(),
        )
        .push(
            "re_rho_eg",
            Style::General,
            rho.iter().map(|r| r.rho_eg().re).collect(),
        )
        .push(
            "im_rho_eg",
            Style::General,
            rho.iter().map(|r| r.rho_eg().im).collect(),
        )
        .push(
            "omega",
            Style::General,
            result.series["coupling"].samples().to_vec(),
        )
        .push(
            "delta",
            Style::General,
            result.series["detuning"].samples().to_vec(),
        );
    table
}

fn push_gamma(table: &mut Table, suffix: &str, gamma: &DecayRateSeries) {
    table
        .push(
            format!("gamma{suffix}"),
            Style::General,
            gamma.gamma().to_vec(),
        )
        .push(
            format!("singular{suffix}"),
            Style::General,
            gamma
                .singular()
                .iter()
                .map(|&s| f64::from(u8::from(s)))
                .collect(),
        );
}

/// `t,gamma,singular`
pub fn gamma_table(result: &ScenarioResult) -> Table {
    let mut table = Table::new();
    table.push("t", Style::Fixed, times(result));
    push_gamma(&mut table, "", &result.decay_rates["gamma"]);
    table
}

/// Reads a table written by [`trajectory_table`] back into a density-matrix
/// trajectory on the equivalent uniform grid.
pub fn load_trajectory(path: &Path) -> Result<Trajectory<QubitDensityMatrix>> {
    let table = Table::read_csv(path)?;
    let parse_err = |message: &str| Error::Parse {
        path: path.to_path_buf(),
        message: message.to_string(),
    };
    let column = |name: &str| {
        table
            .column(name)
            .ok_or_else(|| parse_err(&format!("missing column '{name}'")))
    };
    let t = column("t")?;
    if t.len() < 2 {
        return Err(parse_err("need at least two rows"));
    }
    let (t0, t1) = (t[0], t[t.len() - 1]);
    let grid = make_grid(t0, t1, (t1 - t0) / (t.len() - 1) as f64)?;
    let (ee, gg) = (column("rho_ee")?, column("rho_gg")?);
    let (re, im) = (column("re_rho_eg")?, column("im_rho_eg")?);
    let samples = (0..t.len())
        .map(|i| QubitDensityMatrix::new(ee[i], gg[i], Complex64::new(re[i], im[i])))
        .collect::<timelocal_core::Result<Vec<_>>>()?;
    Ok(Trajectory::new(grid, samples)?)
}

/// `omega,power`
pub fn spectrum_table(spectrum: &Spectrum) -> Table {
    let mut table = Table::new();
    table
        .push("omega", Style::General, spectrum.frequencies.clone())
        .push("power", Style::General, spectrum.power.clone());
    table
}

pub fn cmd_evolve(cfg: &RunConfig) -> Result<Outcome> {
    let result = run_scenario(cfg)?;
    let table = trajectory_table(&result);
    let summary = vec![
        ("scenario".into(), cfg.scenario.to_string()),
        ("rows".into(), table.rows().to_string()),
    ];
    finish(
        cfg,
        vec![Output::Table("trajectory".into(), table)],
        summary,
    )
}

pub fn cmd_decay_rate(cfg: &RunConfig) -> Result<Outcome> {
    let result = run_scenario(cfg)?;
    let gamma = &result.decay_rates["gamma"];
    let singular = gamma.singular().iter().filter(|&&s| s).count();
    let entries = [
        (
            "max_residual",
            result.scalar("max_residual").unwrap_or(f64::NAN),
        ),
        (
            "max_rel_gamma_error",
            result.scalar("max_rel_gamma_error").unwrap_or(f64::NAN),
        ),
        (
            "noninvertible_count",
            result.scalar("noninvertible_count").unwrap_or(0.0),
        ),
        ("singular_points", singular as f64),
    ];
    finish(
        cfg,
        vec![Output::Table("gamma".into(), gamma_table(&result))],
        summarize(&entries),
    )
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Outcome> {
    let result = run_scenario(cfg)?;
    let spectrum = &result.spectra["c_e"];
    let (peak_frequency, peak_power) = spectrum.peak();
    let entries = [
        ("peak_frequency", peak_frequency),
        ("peak_power", peak_power),
        ("frequency_resolution", spectrum.resolution),
        ("total_power", spectrum.total_power()),
        ("samples", result.grid.len() as f64),
    ];
    let mut value = report(&entries);
    value["window"] = Value::from(window_name(cfg.window));
    value["scenario"] = Value::from(cfg.scenario.to_string());
    finish(
        cfg,
        vec![
            Output::Table("spectrum".into(), spectrum_table(spectrum)),
            Output::Report("spectrum_report".into(), value),
        ],
        summarize(&entries[..3]),
    )
}

pub fn cmd_xi(cfg: &RunConfig) -> Result<Outcome> {
    if cfg.scenario != ScenarioKind::Switched {
        return Err(Error::Config(
            "xi needs the switched scenario with a finite k".into(),
        ));
    }
    let t_i = timelocal_core::switch_time(cfg.omega_max, cfg.n_switch);
    let profile = CouplingProfile::new(cfg.omega_max, cfg.omega_min, cfg.k, t_i)?;
    let model = ModelConfig::new(cfg.omega_max, Coupling::Profile(profile))?;
    let (t0, t1) = diabaticity_window(cfg.k, t_i);
    let xi = diabaticity_xi(&model, &StateVector::ground(), t0, t1)?;
    let mean_coupling = 0.5 * (cfg.omega_max + cfg.omega_min);
    let entries = [
        ("xi", xi.xi),
        ("k", cfg.k),
        ("window", xi.window),
        ("window_start", t0),
        ("window_end", t1),
        ("mean_energy", xi.mean_energy),
        ("mean_sq_energy", xi.mean_sq_energy),
        ("mean_delta", xi.mean_hamiltonian.delta),
        ("mean_omega", xi.mean_hamiltonian.omega),
        ("mean_coupling", mean_coupling),
        ("k_over_mean_coupling", cfg.k / mean_coupling),
    ];
    finish(
        cfg,
        vec![Output::Report("xi_report".into(), report(&entries))],
        summarize(&[entries[0], entries[1], entries[2], entries[10]]),
    )
}

pub fn cmd_nonuniqueness(cfg: &RunConfig) -> Result<Outcome> {
    let result = nonuniqueness_report(cfg.omega_r, cfg.omega_min, cfg.t_end, &cfg.settings())?;
    let ee = |name: &str| -> Vec<f64> {
        result.density[name]
            .samples()
            .iter()
            .map(|r| r.rho_ee())
            .collect()
    };
    let mut table = Table::new();
    table
        .push("t", Style::Fixed, times(&result))
        .push("rho_ee_resonant", Style::General, ee("resonant"))
        .push("rho_ee_switched", Style::General, ee("switched"))
        .push(
            "rho_ee_master_equation",
            Style::General,
            ee("master_equation"),
        );
    push_gamma(&mut table, "", &result.decay_rates["gamma"]);
    for name in ["residual_resonant", "residual_switched", "trace_distance"] {
        table.push(name, Style::General, result.series[name].samples().to_vec());
    }

    let scalar = |name: &str| result.scalar(name).unwrap_or(f64::NAN);
    let entries = [
        ("max_residual_resonant", scalar("max_residual_resonant")),
        ("max_residual_switched", scalar("max_residual_switched")),
        ("max_trace_distance", scalar("max_trace_distance")),
        ("residual_tolerance", scalar("residual_tolerance")),
        ("t_switch", scalar("t_switch")),
        ("me_clamped_points", scalar("me_clamped_points")),
        (
            "noninvertible_count",
            result.events["noninvertible"].len() as f64,
        ),
    ];
    let passed = result.scalar("passed") == Some(1.0);
    let mut value = report(&entries);
    value["passed"] = Value::from(passed);
    let mut summary = summarize(&entries[..4]);
    summary.push(("status".into(), if passed { "pass" } else { "fail" }.into()));
    let mut outcome = finish(
        cfg,
        vec![
            Output::Table("nonuniqueness".into(), table),
            Output::Report("nonuniqueness_report".into(), value),
        ],
        summary,
    )?;
    outcome.passed = passed;
    Ok(outcome)
}

/// Columns `t`, every stored series, then `gamma_<name>`/`singular_<name>`
/// for every decay-rate series.
pub fn figure_table(result: &ScenarioResult) -> Table {
    let mut table = Table::new();
    table.push("t", Style::Fixed, times(result));
    for (name, series) in &result.series {
        table.push(name.as_str(), Style::General, series.samples().to_vec());
    }
    for (name, gamma) in &result.decay_rates {
        let suffix = if name == "gamma" {
            String::new()
        } else {
            format!("_{name}")
        };
        push_gamma(&mut table, &suffix, gamma);
    }
    table
}

/// `figure = None` writes all six.
pub fn cmd_figures(cfg: &RunConfig, figure: Option<FigureId>) -> Result<Outcome> {
    let ids: Vec<FigureId> = figure.map_or_else(|| FigureId::ALL.to_vec(), |f| vec![f]);
    let settings = cfg.settings();
    let mut outputs = Vec::new();
    let mut summary = Vec::new();
    for id in ids {
        let result = figure_data(id, &settings)?;
        let name = id.name();
        outputs.push(Output::Table(name.into(), figure_table(&result)));
        for spectrum in result.spectra.values() {
            outputs.push(Output::Table(
                format!("{name}_spectrum"),
                spectrum_table(spectrum),
            ));
        }
        if !result.scalars.is_empty() {
            let mut map = Map::new();
            for (k, v) in &result.scalars {
                map.insert(k.clone(), number(*v));
                summary.push((format!("{name}.{k}"), fmt_g(*v)));
            }
            outputs.push(Output::Report(format!("{name}_report"), Value::Object(map)));
        }
    }
    finish(cfg, outputs, summary)
}
