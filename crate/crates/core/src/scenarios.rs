//! Canned experiments: the resonant evolution, the switched evolution, the
//! side-by-side non-uniqueness check, sweeps over the switching rate and the
//! data behind each figure.
//!
//! Every grid that involves a switch is built with
//! [`make_grid_through`] so the switch instant `t_i` is a grid node; the
//! instantaneous switch is then glued exactly at a sample.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use num_complex::Complex64;

use crate::analysis::{
    decay_rate_from_f, diabaticity_window, diabaticity_xi, extract_f, find_noninvertible_times,
    max_finite, me_residual, power_spectrum, switch_time, Spectrum, Window, DEFAULT_F_FLOOR,
    DEFAULT_NONINVERTIBLE_TOL, DEFAULT_RHO_FLOOR,
};
use crate::model::{
    analytic_switched_populations, coupling_at, Coupling, CouplingProfile, Hamiltonian2x2,
    ModelConfig,
};
use crate::propagation::{
    evolve_master_equation, evolve_schrodinger, make_grid, make_grid_through, DecayRateSeries,
    TimeGrid, Trajectory, DEFAULT_STEP,
};
use crate::quantum::{density_from_state, trace_distance, QubitDensityMatrix, StateVector};
use crate::{Error, Result};

/// Residual bound used by [`nonuniqueness_report`] for its pass/fail scalar.
pub const RESIDUAL_TOL: f64 = 1e-5;

/// Numerical knobs shared by all scenarios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub step: f64,
    pub f_floor: f64,
    pub rho_floor: f64,
    pub noninvertible_tol: f64,
    pub window: Window,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            step: DEFAULT_STEP,
            f_floor: DEFAULT_F_FLOOR,
            rho_floor: DEFAULT_RHO_FLOOR,
            noninvertible_tol: DEFAULT_NONINVERTIBLE_TOL,
            window: Window::Rectangular,
        }
    }
}

/// Named outputs of one experiment. All trajectories and rate series share
/// `grid`; spectra live on their own frequency axis.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioResult {
    pub label: String,
    pub grid: TimeGrid,
    pub states: BTreeMap<String, Trajectory<StateVector>>,
    pub density: BTreeMap<String, Trajectory<QubitDensityMatrix>>,
    pub series: BTreeMap<String, Trajectory<f64>>,
    pub decay_rates: BTreeMap<String, DecayRateSeries>,
    pub spectra: BTreeMap<String, Spectrum>,
    pub scalars: BTreeMap<String, f64>,
    pub events: BTreeMap<String, Vec<f64>>,
}

impl ScenarioResult {
    fn new(label: impl Into<String>, grid: TimeGrid) -> Self {
        Self {
            label: label.into(),
            grid,
            states: BTreeMap::new(),
            density: BTreeMap::new(),
            series: BTreeMap::new(),
            decay_rates: BTreeMap::new(),
            spectra: BTreeMap::new(),
            scalars: BTreeMap::new(),
            events: BTreeMap::new(),
        }
    }

    pub fn scalar(&self, name: &str) -> Option<f64> {
        self.scalars.get(name).copied()
    }

    /// Checks every stored state and density matrix against `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        for traj in self.states.values() {
            if traj.grid() != &self.grid {
                return Err(Error::GridMismatch);
            }
            for psi in traj.samples() {
                if !psi.is_normalized(tol) {
                    return Err(Error::NotNormalized {
                        norm_sqr: psi.norm_sqr(),
                    });
                }
            }
        }
        for traj in self.density.values() {
            if traj.grid() != &self.grid {
                return Err(Error::GridMismatch);
            }
            for rho in traj.samples() {
                rho.validate(tol)?;
            }
        }
        let other_grids = self
            .series
            .values()
            .map(|s| s.grid())
            .chain(self.decay_rates.values().map(|d| d.grid()));
        for grid in other_grids {
            if grid != &self.grid {
                return Err(Error::GridMismatch);
            }
        }
        Ok(())
    }

    fn insert_states(&mut self, name: &str, states: Trajectory<StateVector>) -> Result<()> {
        let rho = states.try_map(density_from_state)?;
        self.density.insert(name.to_string(), rho);
        self.states.insert(name.to_string(), states);
        Ok(())
    }
}

impl<S> Trajectory<S> {
    fn try_map<T>(&self, f: impl FnMut(&S) -> Result<T>) -> Result<Trajectory<T>> {
        let samples = self.samples().iter().map(f).collect::<Result<Vec<_>>>()?;
        Trajectory::new(*self.grid(), samples)
    }
}

fn grid_for_switch(t_switch: f64, t_end: f64, step: f64) -> Result<TimeGrid> {
    if t_end > t_switch {
        make_grid_through(0.0, t_switch, t_end, step)
    } else {
        make_grid(0.0, t_end, step)
    }
}

/// Resonant evolution from `|e,0⟩` up to the first zero at `t_i`, followed by
/// an instantaneous switch to `Ω' = omega_after` (with `Δ' = √(ω_R² − Ω'²)`).
pub fn instantaneous_switch_states(
    rabi: f64,
    omega_after: f64,
    n_switch: u32,
    grid: &TimeGrid,
) -> Result<Trajectory<StateVector>> {
    if !(rabi > 0.0) {
        return Err(Error::Config("Rabi frequency must be positive"));
    }
    if !(0.0..=rabi).contains(&omega_after) {
        return Err(Error::CouplingExceedsRabi {
            coupling: omega_after,
            rabi,
        });
    }
    let t_i = switch_time(rabi, n_switch);
    let resonant = |t: f64| {
        StateVector::new(
            Complex64::new(libm::cos(rabi * t), 0.0),
            Complex64::new(libm::sin(rabi * t), 0.0),
        )
    };
    let at_switch = resonant(t_i);
    let after = Hamiltonian2x2::new(
        libm::sqrt((rabi - omega_after) * (rabi + omega_after)),
        omega_after,
    );
    Ok(Trajectory::from_fn(*grid, |t| {
        if t <= t_i {
            resonant(t)
        } else {
            after.propagate(&at_switch, t - t_i)
        }
    }))
}

fn c_e_series(states: &Trajectory<StateVector>) -> Trajectory<Complex64> {
    states.map(|psi| psi.c_e)
}

fn add_time_local_analysis(
    out: &mut ScenarioResult,
    name: &str,
    settings: &Settings,
) -> Result<DecayRateSeries> {
    let states = &out.states[name];
    let rho = &out.density[name];
    let f = extract_f(rho, Some(states))?;
    let gamma = decay_rate_from_f(&f, settings.f_floor);
    let residual = me_residual(rho, &gamma)?;
    out.scalars.insert(
        "max_residual".into(),
        max_finite(residual.samples()).unwrap_or(f64::NAN),
    );
    let zeros = find_noninvertible_times(rho, settings.noninvertible_tol);
    out.scalars
        .insert("noninvertible_count".into(), zeros.len() as f64);
    out.events.insert("noninvertible".into(), zeros);
    out.series.insert("f".into(), f);
    out.series.insert("residual".into(), residual);
    out.decay_rates.insert("gamma".into(), gamma.clone());
    Ok(gamma)
}

/// Largest relative deviation of `γ` from `2ω_R tan(ω_R t)` over points with
/// `|cos(ω_R t)| > 0.2`. Near zeros of the tangent the error is measured
/// against `2ω_R · 1e-3` instead of the vanishing exact value.
pub fn max_relative_tangent_error(gamma: &DecayRateSeries, rabi: f64) -> f64 {
    let grid = gamma.grid();
    (0..grid.len())
        .filter_map(|i| {
            let t = grid.time(i);
            if libm::fabs(libm::cos(rabi * t)) <= 0.2 {
                return None;
            }
            let exact = 2.0 * rabi * libm::tan(rabi * t);
            let value = gamma.value(i).unwrap_or(f64::INFINITY);
            Some(libm::fabs(value - exact) / libm::fabs(exact).max(2e-3 * rabi))
        })
        .filter(|e| !e.is_nan())
        .fold(0.0, f64::max)
}

/// Resonant evolution `Δ = 0`, `Ω = ω_R` from `|e,0⟩`.
pub fn scenario_resonant(omega_r: f64, t_end: f64, settings: &Settings) -> Result<ScenarioResult> {
    let cfg = ModelConfig::resonant(omega_r)?;
    let grid = grid_for_switch(switch_time(omega_r, 0), t_end, settings.step)?;
    let mut out = ScenarioResult::new("resonant", grid);
    let states = evolve_schrodinger(&cfg, &StateVector::excited(), &grid)?;
    out.insert_states("psi", states)?;
    out.series
        .insert("coupling".into(), Trajectory::from_fn(grid, |_| omega_r));
    out.series
        .insert("detuning".into(), Trajectory::from_fn(grid, |_| 0.0));
    let gamma = add_time_local_analysis(&mut out, "psi", settings)?;
    out.scalars.insert(
        "max_rel_gamma_error".into(),
        max_relative_tangent_error(&gamma, omega_r),
    );
    let spectrum = power_spectrum(&c_e_series(&out.states["psi"]), settings.window)?;
    out.scalars
        .insert("peak_frequency".into(), spectrum.peak().0);
    out.spectra.insert("c_e".into(), spectrum);
    out.scalars.insert("omega_r".into(), omega_r);
    Ok(out)
}

/// Evolution through a tanh switch of the coupling from `omega_max` (= `ω_R`,
/// resonant) to `omega_min` centred on the `n_switch`-th ground-state
/// passage. `k = ∞` gives the instantaneous switch.
pub fn scenario_switched(
    omega_max: f64,
    omega_min: f64,
    k: f64,
    n_switch: u32,
    t_end: f64,
    settings: &Settings,
) -> Result<ScenarioResult> {
    if !(k > 0.0) {
        return Err(Error::Config("k must be positive"));
    }
    let rabi = omega_max;
    let t_i = switch_time(rabi, n_switch);
    let grid = grid_for_switch(t_i, t_end, settings.step)?;
    let mut out = ScenarioResult::new(format!("switched k={k}"), grid);

    let ideal = instantaneous_switch_states(rabi, omega_min, n_switch, &grid)?;
    let (states, coupling) = if k.is_finite() {
        let profile = CouplingProfile::new(omega_max, omega_min, k, t_i)?;
        let cfg = ModelConfig::new(rabi, Coupling::Profile(profile))?;
        let states = evolve_schrodinger(&cfg, &StateVector::excited(), &grid)?;
        let xi_window = diabaticity_window(k, t_i);
        let report = diabaticity_xi(&cfg, &StateVector::ground(), xi_window.0, xi_window.1)?;
        out.scalars.insert("xi".into(), report.xi);
        out.scalars.insert("xi_window".into(), report.window);
        (
            states,
            Trajectory::from_fn(grid, |t| coupling_at(&profile, t)),
        )
    } else {
        let coupling = Trajectory::from_fn(grid, |t| if t <= t_i { omega_max } else { omega_min });
        (ideal.clone(), coupling)
    };
    let detuning = coupling.map(|&w| libm::sqrt((rabi - w) * (rabi + w)));
    out.insert_states("psi", states)?;
    out.insert_states("ideal", ideal)?;
    out.series.insert("coupling".into(), coupling);
    out.series.insert("detuning".into(), detuning);

    let gamma = add_time_local_analysis(&mut out, "psi", settings)?;
    out.scalars.insert(
        "max_rel_gamma_error".into(),
        max_relative_tangent_error(&gamma, rabi),
    );

    // Comparison with the closed-form post-switch populations.
    let rho = &out.density["psi"];
    let settle = if k.is_finite() {
        t_i + crate::analysis::XI_HALF_WIDTH / k
    } else {
        t_i
    };
    let mut max_dev = 0.0f64;
    let mut peak = 0.0f64;
    for (t, r) in rho.iter() {
        if t >= t_i {
            let (ideal_ee, _) = analytic_switched_populations(rabi, omega_min, t)?;
            max_dev = max_dev.max(libm::fabs(r.rho_ee() - ideal_ee));
        }
        if t >= settle {
            peak = peak.max(r.rho_ee());
        }
    }
    let amp = omega_min / rabi;
    out.scalars
        .insert("max_deviation_from_ideal".into(), max_dev);
    out.scalars.insert("post_switch_peak_rho_ee".into(), peak);
    out.scalars.insert("ideal_peak_rho_ee".into(), amp * amp);
    out.scalars.insert("t_switch".into(), t_i);
    out.scalars.insert("k".into(), k);

    let spectrum = power_spectrum(&c_e_series(&out.states["psi"]), settings.window)?;
    out.scalars
        .insert("peak_frequency".into(), spectrum.peak().0);
    out.scalars
        .insert("frequency_resolution".into(), spectrum.resolution);
    out.spectra.insert("c_e".into(), spectrum);
    Ok(out)
}

/// Two evolutions (resonant throughout, and switched instantaneously at the
/// first ground-state passage to amplitude `omega_min/omega_r`) checked
/// against the single decay-rate series extracted from the first.
pub fn nonuniqueness_report(
    omega_r: f64,
    omega_min: f64,
    t_end: f64,
    settings: &Settings,
) -> Result<ScenarioResult> {
    if !(omega_min <= omega_r) {
        return Err(Error::CouplingExceedsRabi {
            coupling: omega_min,
            rabi: omega_r,
        });
    }
    let t_i = switch_time(omega_r, 0);
    let grid = grid_for_switch(t_i, t_end, settings.step)?;
    let mut out = ScenarioResult::new("nonuniqueness", grid);

    let resonant = evolve_schrodinger(
        &ModelConfig::resonant(omega_r)?,
        &StateVector::excited(),
        &grid,
    )?;
    out.insert_states("resonant", resonant)?;
    out.insert_states(
        "switched",
        instantaneous_switch_states(omega_r, omega_min, 0, &grid)?,
    )?;

    let rho_a = out.density["resonant"].clone();
    let rho_b = out.density["switched"].clone();
    let f = extract_f(&rho_a, Some(&out.states["resonant"]))?;
    let gamma = decay_rate_from_f(&f, settings.f_floor);
    let res_a = me_residual(&rho_a, &gamma)?;
    let res_b = me_residual(&rho_b, &gamma)?;
    let max_a = max_finite(res_a.samples()).unwrap_or(f64::NAN);
    let max_b = max_finite(res_b.samples()).unwrap_or(f64::NAN);

    let distance = Trajectory::new(
        grid,
        rho_a
            .samples()
            .iter()
            .zip(rho_b.samples())
            .map(|(a, b)| trace_distance(a, b))
            .collect(),
    )?;
    let max_distance = distance
        .iter()
        .filter(|(t, _)| *t >= t_i)
        .map(|(_, d)| *d)
        .fold(0.0, f64::max);

    // The master equation alone, started from |e⟩⟨e|: it follows both
    // evolutions up to t_i and then cannot tell which branch to take.
    let me = evolve_master_equation(&gamma, &QubitDensityMatrix::excited())?;
    out.scalars.insert(
        "me_clamped_points".into(),
        me.clamped.iter().filter(|&&c| c).count() as f64,
    );
    out.density.insert("master_equation".into(), me.trajectory);

    out.scalars.insert("max_residual_resonant".into(), max_a);
    out.scalars.insert("max_residual_switched".into(), max_b);
    out.scalars
        .insert("max_trace_distance".into(), max_distance);
    out.scalars
        .insert("residual_tolerance".into(), RESIDUAL_TOL);
    out.scalars.insert(
        "passed".into(),
        if max_a < RESIDUAL_TOL && max_b < RESIDUAL_TOL {
            1.0
        } else {
            0.0
        },
    );
    out.scalars.insert("t_switch".into(), t_i);
    out.series.insert("f".into(), f);
    out.series.insert("residual_resonant".into(), res_a);
    out.series.insert("residual_switched".into(), res_b);
    out.series.insert("trace_distance".into(), distance);
    out.decay_rates.insert("gamma".into(), gamma);
    out.events.insert(
        "noninvertible".into(),
        find_noninvertible_times(&rho_a, settings.noninvertible_tol),
    );
    Ok(out)
}

/// Parameters shared by the members of a [`k_sweep`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepBase {
    pub omega_max: f64,
    pub omega_min: f64,
    pub n_switch: u32,
    pub t_end: f64,
}

impl Default for SweepBase {
    fn default() -> Self {
        Self {
            omega_max: 0.3,
            omega_min: 0.2,
            n_switch: 0,
            t_end: 40.0,
        }
    }
}

/// One [`scenario_switched`] per `k` in input order, followed by the
/// instantaneous (`k = ∞`) reference.
pub fn k_sweep(ks: &[f64], base: &SweepBase, settings: &Settings) -> Result<Vec<ScenarioResult>> {
    if ks.iter().any(|&k| !(k > 0.0)) {
        return Err(Error::Config("all k must be positive"));
    }
    ks.iter()
        .copied()
        .chain(core::iter::once(f64::INFINITY))
        .map(|k| {
            scenario_switched(
                base.omega_max,
                base.omega_min,
                k,
                base.n_switch,
                base.t_end,
                settings,
            )
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FigureId {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
}

impl FigureId {
    pub const ALL: [FigureId; 6] = [
        FigureId::Fig1,
        FigureId::Fig2,
        FigureId::Fig3,
        FigureId::Fig4,
        FigureId::Fig5,
        FigureId::Fig6,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3 => "fig3",
            FigureId::Fig4 => "fig4",
            FigureId::Fig5 => "fig5",
            FigureId::Fig6 => "fig6",
        }
    }
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureId::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or(Error::UnknownFigure)
    }
}

const FIG_OMEGA_MAX: f64 = 0.3;
const FIG_OMEGA_MIN: f64 = 0.2;
const FIG_K: f64 = 1.6;
const FIG_T_END: f64 = 40.0;
const FIG1_KS: [f64; 3] = [0.1, 0.5, 1.0];
const FIG3_KS: [f64; 3] = [0.5, 1.0, 1.6];
const FIG1_RANGE: (f64, f64, f64) = (-20.0, 20.0, 0.01);

fn k_label(k: f64) -> String {
    if k.is_finite() {
        format!("k{k}")
    } else {
        "kinf".into()
    }
}

/// The series needed to redraw one figure.
pub fn figure_data(figure: FigureId, settings: &Settings) -> Result<ScenarioResult> {
    let label = figure.name();
    match figure {
        FigureId::Fig1 => {
            let (start, end, step) = FIG1_RANGE;
            let grid = make_grid(start, end, step)?;
            let mut out = ScenarioResult::new(label, grid);
            for k in FIG1_KS {
                let p = CouplingProfile::new(FIG_OMEGA_MAX, FIG_OMEGA_MIN, k, 0.0)?;
                out.series.insert(
                    format!("omega_{}", k_label(k)),
                    Trajectory::from_fn(grid, |t| coupling_at(&p, t)),
                );
            }
            Ok(out)
        }
        FigureId::Fig2 | FigureId::Fig4 | FigureId::Fig5 => {
            let run =
                scenario_switched(FIG_OMEGA_MAX, FIG_OMEGA_MIN, FIG_K, 0, FIG_T_END, settings)?;
            let mut out = ScenarioResult::new(label, run.grid);
            let rho = &run.density["psi"];
            match figure {
                FigureId::Fig4 => {
                    let psi = &run.states["psi"];
                    out.series.insert("re_c_e".into(), psi.map(|p| p.c_e.re));
                    out.series.insert("im_c_e".into(), psi.map(|p| p.c_e.im));
                    out.spectra.insert("c_e".into(), run.spectra["c_e"].clone());
                    out.scalars
                        .insert("peak_frequency".into(), run.scalars["peak_frequency"]);
                    out.scalars.insert(
                        "frequency_resolution".into(),
                        run.scalars["frequency_resolution"],
                    );
                }
                _ => {
                    out.series.insert("rho_ee".into(), rho.map(|r| r.rho_ee()));
                    out.series.insert("rho_gg".into(), rho.map(|r| r.rho_gg()));
                    out.series
                        .insert("omega".into(), run.series["coupling"].clone());
                    if figure == FigureId::Fig5 {
                        out.decay_rates
                            .insert("gamma".into(), run.decay_rates["gamma"].clone());
                    }
                }
            }
            Ok(out)
        }
        FigureId::Fig3 | FigureId::Fig6 => {
            let base = SweepBase {
                omega_max: FIG_OMEGA_MAX,
                omega_min: FIG_OMEGA_MIN,
                n_switch: 0,
                t_end: FIG_T_END,
            };
            let runs = k_sweep(&FIG3_KS, &base, settings)?;
            let mut out = ScenarioResult::new(label, runs[0].grid);
            for run in &runs {
                let name = k_label(run.scalars["k"]);
                if figure == FigureId::Fig3 {
                    out.series.insert(
                        format!("rho_ee_{name}"),
                        run.density["psi"].map(|r| r.rho_ee()),
                    );
                    out.scalars.insert(
                        format!("max_deviation_{name}"),
                        run.scalars["max_deviation_from_ideal"],
                    );
                } else {
                    out.decay_rates
                        .insert(name, run.decay_rates["gamma"].clone());
                }
            }
            Ok(out)
        }
    }
}
