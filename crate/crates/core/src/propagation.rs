//! Time grids, trajectories and the three propagators: Schrödinger (RK4),
//! Kraus map (pointwise) and time-local master equation (RK4 on the
//! decay-rate series).

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::model::{hamiltonian_at, Hamiltonian2x2, ModelConfig};
use crate::quantum::{KrausPair, QubitDensityMatrix, StateVector, NORM_TOL};
use crate::{Error, Result};

/// Default integration step in scaled time.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Magnitude substituted for the decay rate at singular grid points.
pub const GAMMA_CAP: f64 = 1e6;

/// Slack on `|f| ≤ 1` and `f(t_start) = 1` accepted by [`evolve_kraus`].
pub const KRAUS_TOL: f64 = 1e-9;

/// Beyond this `|γ|·h` a classic RK4 step on `ρ̇ = −γρ` is unstable; such
/// steps are taken with the exponential of the trapezoidal rate integral.
const RK4_STABLE_GAMMA_STEP: f64 = 2.5;

/// Relative mismatch of `(t_end − t_start)/step` tolerated before snapping.
const SNAP_TOL: f64 = 1e-9;

/// Uniform grid `t_start, t_start + step, …, t_end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    step: f64,
    intervals: usize,
}

/// Builds a uniform grid.
///
/// A range that is not an integer number of steps is snapped to the nearest
/// integer step count (the step is kept, `t_end` moves) and a warning is
/// logged.
pub fn make_grid(t_start: f64, t_end: f64, step: f64) -> Result<TimeGrid> {
    if !(t_start.is_finite() && t_end.is_finite() && step.is_finite()) {
        return Err(Error::InvalidGrid("grid bounds and step must be finite"));
    }
    if step <= 0.0 {
        return Err(Error::InvalidGrid("step must be positive"));
    }
    if t_end <= t_start {
        return Err(Error::InvalidGrid("t_end must exceed t_start"));
    }
    let ratio = (t_end - t_start) / step;
    let intervals = libm::round(ratio);
    if intervals < 1.0 {
        return Err(Error::InvalidGrid("range is shorter than half a step"));
    }
    if intervals > (u32::MAX as f64) {
        return Err(Error::InvalidGrid("too many grid points"));
    }
    if libm::fabs(ratio - intervals) > SNAP_TOL * intervals.max(1.0) {
        log::warn!(
            "time range [{t_start}, {t_end}] is not a multiple of step {step}; \
             snapping to {intervals} steps"
        );
    }
    let intervals = intervals as usize;
    Ok(TimeGrid {
        t_start,
        t_end: t_start + intervals as f64 * step,
        step,
        intervals,
    })
}

/// Grid starting at `t_start` that contains `anchor` as a node.
///
/// The step is shrunk or stretched (by less than half a step over the span
/// `anchor − t_start`) so that `anchor` falls on the grid; `t_end` is then
/// snapped as in [`make_grid`].
pub fn make_grid_through(t_start: f64, anchor: f64, t_end: f64, step: f64) -> Result<TimeGrid> {
    if !(anchor > t_start && anchor.is_finite()) {
        return Err(Error::InvalidGrid("anchor must lie after t_start"));
    }
    if !(step > 0.0) {
        return Err(Error::InvalidGrid("step must be positive"));
    }
    let m = libm::round((anchor - t_start) / step).max(1.0);
    let adjusted = (anchor - t_start) / m;
    let ratio = (t_end - t_start) / adjusted;
    let snapped_end = t_start + libm::round(ratio) * adjusted;
    make_grid(t_start, snapped_end, adjusted)
}

impl TimeGrid {
    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// Number of grid points (intervals + 1).
    pub fn len(&self) -> usize {
        self.intervals + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t_start + i as f64 * self.step
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.time(i))
    }

    /// Index of the grid point closest to `t`, clamped to the grid.
    pub fn nearest_index(&self, t: f64) -> usize {
        let x = libm::round((t - self.t_start) / self.step);
        if x <= 0.0 {
            0
        } else {
            (x as usize).min(self.intervals)
        }
    }
}

/// One sample per grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<S> {
    grid: TimeGrid,
    samples: Vec<S>,
}

impl<S> Trajectory<S> {
    pub fn new(grid: TimeGrid, samples: Vec<S>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        Ok(Self { grid, samples })
    }

    pub fn from_fn(grid: TimeGrid, mut f: impl FnMut(f64) -> S) -> Self {
        let samples = grid.times().map(&mut f).collect();
        Self { grid, samples }
    }

    pub fn try_from_fn(grid: TimeGrid, mut f: impl FnMut(f64) -> Result<S>) -> Result<Self> {
        let samples = grid.times().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(Self { grid, samples })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[S] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &S)> + '_ {
        self.grid.times().zip(self.samples.iter())
    }

    pub fn map<T>(&self, f: impl FnMut(&S) -> T) -> Trajectory<T> {
        Trajectory {
            grid: self.grid,
            samples: self.samples.iter().map(f).collect(),
        }
    }

    pub fn into_samples(self) -> Vec<S> {
        self.samples
    }
}

/// Sampled decay rate `γ(t)` with singular points marked.
///
/// At flagged points the stored value is the raw quotient, which may be huge,
/// infinite or NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayRateSeries {
    grid: TimeGrid,
    gamma: Vec<f64>,
    singular: Vec<bool>,
}

impl DecayRateSeries {
    pub fn new(grid: TimeGrid, gamma: Vec<f64>, singular: Vec<bool>) -> Result<Self> {
        if gamma.len() != grid.len() || singular.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        Ok(Self {
            grid,
            gamma,
            singular,
        })
    }

    /// Series with no singular points.
    pub fn regular(grid: TimeGrid, mut gamma: impl FnMut(f64) -> f64) -> Self {
        let gamma: Vec<f64> = grid.times().map(&mut gamma).collect();
        let singular = alloc::vec![false; gamma.len()];
        Self {
            grid,
            gamma,
            singular,
        }
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    pub fn singular(&self) -> &[bool] {
        &self.singular
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }

    /// `γ` at point `i`, or `None` where flagged.
    pub fn value(&self, i: usize) -> Option<f64> {
        (!self.singular[i]).then(|| self.gamma[i])
    }
}

fn rhs(h: &Hamiltonian2x2, psi: &StateVector) -> StateVector {
    // dc/dt = −i H c
    let hc = h.apply(psi);
    let minus_i = Complex64::new(0.0, -1.0);
    StateVector::new(minus_i * hc.c_e, minus_i * hc.c_g)
}

fn axpy(psi: &StateVector, a: f64, k: &StateVector) -> StateVector {
    StateVector::new(psi.c_e + k.c_e * a, psi.c_g + k.c_g * a)
}

/// Fixed-step classic RK4 for `i dc/dt = H(t) c`, with `H` evaluated at
/// `t`, `t + h/2` and `t + h` of every step.
pub fn evolve_schrodinger(
    cfg: &ModelConfig,
    psi0: &StateVector,
    grid: &TimeGrid,
) -> Result<Trajectory<StateVector>> {
    cfg.validate()?;
    if !psi0.is_normalized(NORM_TOL) {
        return Err(Error::NotNormalized {
            norm_sqr: psi0.norm_sqr(),
        });
    }
    let h = grid.step();
    let mut samples = Vec::with_capacity(grid.len());
    let mut psi = *psi0;
    samples.push(psi);
    let mut h_start = hamiltonian_at(cfg, grid.time(0))?;
    for i in 0..grid.len() - 1 {
        let t = grid.time(i);
        let h_mid = hamiltonian_at(cfg, t + 0.5 * h)?;
        let h_end = hamiltonian_at(cfg, grid.time(i + 1))?;

        let k1 = rhs(&h_start, &psi);
        let k2 = rhs(&h_mid, &axpy(&psi, 0.5 * h, &k1));
        let k3 = rhs(&h_mid, &axpy(&psi, 0.5 * h, &k2));
        let k4 = rhs(&h_end, &axpy(&psi, h, &k3));
        psi = StateVector::new(
            psi.c_e + (k1.c_e + (k2.c_e + k3.c_e) * 2.0 + k4.c_e) * (h / 6.0),
            psi.c_g + (k1.c_g + (k2.c_g + k3.c_g) * 2.0 + k4.c_g) * (h / 6.0),
        );
        samples.push(psi);
        h_start = h_end;
    }
    Trajectory::new(*grid, samples)
}

/// Applies the Kraus pair built from each `f(t)` to `ρ(0)`.
pub fn evolve_kraus(
    f_series: &Trajectory<f64>,
    rho0: &QubitDensityMatrix,
) -> Result<Trajectory<QubitDensityMatrix>> {
    rho0.validate(crate::quantum::DENSITY_TOL)?;
    let f0 = f_series.samples()[0];
    if !(libm::fabs(f0 - 1.0) <= KRAUS_TOL) {
        return Err(Error::MapNotIdentityAtStart { f0 });
    }
    let samples = f_series
        .samples()
        .iter()
        .map(|&f| {
            if !(libm::fabs(f) <= 1.0 + KRAUS_TOL) {
                return Err(Error::NotTracePreserving { f });
            }
            Ok(KrausPair::new(f.clamp(-1.0, 1.0))?.apply(rho0))
        })
        .collect::<Result<Vec<_>>>()?;
    Trajectory::new(*f_series.grid(), samples)
}

/// Output of [`evolve_master_equation`].
#[derive(Debug, Clone, PartialEq)]
pub struct MasterEquationRun {
    pub trajectory: Trajectory<QubitDensityMatrix>,
    /// Grid points where the rate was replaced by [`GAMMA_CAP`].
    pub clamped: Vec<bool>,
}

impl MasterEquationRun {
    pub fn any_clamped(&self) -> bool {
        self.clamped.iter().any(|&c| c)
    }
}

/// Integrates the single lowering-channel master equation
///
/// ```text
/// dρ_ee/dt = −γ ρ_ee,   dρ_gg/dt = γ ρ_ee,   dρ_eg/dt = −(γ/2) ρ_eg
/// ```
///
/// with RK4; `γ` at half steps comes from cubic interpolation of the series.
///
/// Singular points of the series carry no usable sign (the quotient `ḟ/f` is
/// dominated by rounding there), so they are replaced by `+GAMMA_CAP`, and so
/// is any step across which `γ` jumps between large rates of opposite sign (a
/// zero of `f` between two grid points). Both collapse `ρ_ee` onto the ground
/// state; the affected points are reported in [`MasterEquationRun::clamped`].
pub fn evolve_master_equation(
    gamma: &DecayRateSeries,
    rho0: &QubitDensityMatrix,
) -> Result<MasterEquationRun> {
    rho0.validate(crate::quantum::DENSITY_TOL)?;
    let grid = *gamma.grid();
    let h = grid.step();
    let n = grid.len();

    let mut clamped: Vec<bool> = gamma
        .singular()
        .iter()
        .zip(gamma.gamma())
        .map(|(&s, g)| s || !g.is_finite())
        .collect();
    let mut rate: Vec<f64> = gamma
        .gamma()
        .iter()
        .zip(&clamped)
        .map(|(&g, &c)| if c { GAMMA_CAP } else { g })
        .collect();

    for i in 0..n - 1 {
        let (a, b) = (rate[i], rate[i + 1]);
        let stiff =
            libm::fabs(a) * h > RK4_STABLE_GAMMA_STEP && libm::fabs(b) * h > RK4_STABLE_GAMMA_STEP;
        if stiff && a > 0.0 && b < 0.0 && !clamped[i] && !clamped[i + 1] {
            // decay pole between the two nodes
            clamped[i + 1] = true;
            rate[i + 1] = GAMMA_CAP;
        }
    }

    let midpoint = |i: usize| -> f64 {
        let cubic_ok = i >= 1 && i + 2 < n && !(clamped[i - 1..=i + 2].iter().any(|&c| c));
        if cubic_ok {
            (-rate[i - 1] + 9.0 * rate[i] + 9.0 * rate[i + 1] - rate[i + 2]) / 16.0
        } else if i == 0 && n >= 4 && !clamped[..4].iter().any(|&c| c) {
            (5.0 * rate[0] + 15.0 * rate[1] - 5.0 * rate[2] + rate[3]) / 16.0
        } else if i + 2 == n && n >= 4 && !clamped[n - 4..].iter().any(|&c| c) {
            (rate[n - 4] - 5.0 * rate[n - 3] + 15.0 * rate[n - 2] + 5.0 * rate[n - 1]) / 16.0
        } else {
            0.5 * (rate[i] + rate[i + 1])
        }
    };

    let mut ee = rho0.rho_ee();
    let mut eg = rho0.rho_eg();
    let gg0 = rho0.rho_gg();
    let ee0 = ee;
    let mut samples = Vec::with_capacity(n);
    samples.push(*rho0);
    for i in 0..n - 1 {
        let (g0, g1) = (rate[i], rate[i + 1]);
        let gm = midpoint(i);
        let stiff = clamped[i]
            || clamped[i + 1]
            || [g0, gm, g1]
                .iter()
                .any(|g| libm::fabs(*g) * h > RK4_STABLE_GAMMA_STEP);
        if stiff {
            let integral = if clamped[i] || clamped[i + 1] {
                0.5 * h * (g0 + g1)
            } else {
                h / 6.0 * (g0 + 4.0 * gm + g1)
            };
            ee *= libm::exp(-integral);
            eg *= libm::exp(-0.5 * integral);
        } else {
            let k1 = (-g0 * ee, eg * (-0.5 * g0));
            let y2 = (ee + 0.5 * h * k1.0, eg + k1.1 * (0.5 * h));
            let k2 = (-gm * y2.0, y2.1 * (-0.5 * gm));
            let y3 = (ee + 0.5 * h * k2.0, eg + k2.1 * (0.5 * h));
            let k3 = (-gm * y3.0, y3.1 * (-0.5 * gm));
            let y4 = (ee + h * k3.0, eg + k3.1 * h);
            let k4 = (-g1 * y4.0, y4.1 * (-0.5 * g1));
            ee += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            eg += (k1.1 + (k2.1 + k3.1) * 2.0 + k4.1) * (h / 6.0);
        }
        samples.push(QubitDensityMatrix::from_parts(ee, gg0 + (ee0 - ee), eg));
    }
    Ok(MasterEquationRun {
        trajectory: Trajectory::new(grid, samples)?,
        clamped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Coupling;
    use crate::quantum::density_from_state;
    use std::f64::consts::PI;

    #[test]
    fn grid_examples() {
        let g = make_grid(0.0, 1.0, 0.5).unwrap();
        assert_eq!(g.times().collect::<std::vec::Vec<_>>(), [0.0, 0.5, 1.0]);
        assert_eq!(make_grid(0.0, 40.0, 1e-3).unwrap().len(), 40001);
        let snapped = make_grid(0.0, 1.0, 0.3).unwrap();
        assert_eq!(snapped.len(), 4);
        assert!((snapped.t_end() - 0.9).abs() < 1e-15);
        assert!((snapped.t_end() - 1.0).abs() <= 0.5 * 0.3);
    }

    #[test]
    fn grid_rejects_degenerate_ranges() {
        assert!(make_grid(0.0, 0.0, 0.1).is_err());
        assert!(make_grid(1.0, 0.0, 0.1).is_err());
        assert!(make_grid(0.0, 1.0, 0.0).is_err());
        assert!(make_grid(0.0, 1.0, -0.1).is_err());
        assert!(make_grid(0.0, 0.1, 1.0).is_err());
        assert!(make_grid(0.0, f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn grid_through_anchor() {
        let anchor = PI / 0.6;
        let g = make_grid_through(0.0, anchor, 40.0, 1e-3).unwrap();
        let i = g.nearest_index(anchor);
        assert!((g.time(i) - anchor).abs() < 1e-12);
        assert!((g.step() - 1e-3).abs() < 1e-6);
        assert!((g.t_end() - 40.0).abs() <= 0.5 * g.step());
    }

    #[test]
    fn trajectory_length_must_match_grid() {
        let g = make_grid(0.0, 1.0, 0.5).unwrap();
        assert!(Trajectory::new(g, std::vec![1.0, 2.0]).is_err());
        assert!(Trajectory::new(g, std::vec![1.0, 2.0, 3.0]).is_ok());
    }

    #[test]
    fn schrodinger_resonant_excited_start() {
        let cfg = ModelConfig::resonant(0.3).unwrap();
        let grid = make_grid(0.0, 40.0, 1e-3).unwrap();
        let traj = evolve_schrodinger(&cfg, &StateVector::excited(), &grid).unwrap();
        for (t, psi) in traj.iter() {
            let rho = density_from_state(psi).unwrap();
            assert!((rho.rho_ee() - (0.3 * t).cos().powi(2)).abs() < 1e-8);
        }
    }

    #[test]
    fn schrodinger_decoupled_levels_keep_populations() {
        let cfg = ModelConfig::new(0.4, Coupling::Constant(0.0)).unwrap();
        let grid = make_grid(0.0, 10.0, 1e-2).unwrap();
        let psi0 = StateVector::new(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8));
        let traj = evolve_schrodinger(&cfg, &psi0, &grid).unwrap();
        for psi in traj.samples() {
            assert!((psi.c_e.norm_sqr() - 0.36).abs() < 1e-12);
            assert!((psi.c_g.norm_sqr() - 0.64).abs() < 1e-12);
        }
    }

    #[test]
    fn schrodinger_rejects_unnormalized_start() {
        let cfg = ModelConfig::resonant(0.3).unwrap();
        let grid = make_grid(0.0, 1.0, 1e-2).unwrap();
        let psi0 = StateVector::new(Complex64::new(1.0, 0.0), Complex64::new(0.1, 0.0));
        assert!(evolve_schrodinger(&cfg, &psi0, &grid).is_err());
    }

    #[test]
    fn kraus_examples() {
        let grid = make_grid(0.0, 30.0, 1e-2).unwrap();
        let cos = Trajectory::from_fn(grid, |t| (0.3 * t).cos());
        let traj = evolve_kraus(&cos, &QubitDensityMatrix::excited()).unwrap();
        for (t, rho) in traj.iter() {
            let c2 = (0.3 * t).cos().powi(2);
            assert!((rho.rho_ee() - c2).abs() < 1e-15);
            assert!((rho.rho_gg() - (1.0 - c2)).abs() < 1e-15);
        }

        let rho0 = QubitDensityMatrix::new(0.4, 0.6, Complex64::new(0.1, 0.2)).unwrap();
        let ones = Trajectory::from_fn(grid, |_| 1.0);
        let traj = evolve_kraus(&ones, &rho0).unwrap();
        assert!(traj.samples().iter().all(|r| *r == rho0));
    }

    #[test]
    fn kraus_reduced_amplitude() {
        // f = (2/3) cos does not start at the identity; start from f = 1 and
        // rescale after the first zero instead.
        let grid = make_grid(0.0, 30.0, 1e-2).unwrap();
        let t_zero = PI / 0.6;
        let f = Trajectory::from_fn(grid, |t| {
            let c = (0.3 * t).cos();
            if t < t_zero {
                c
            } else {
                2.0 / 3.0 * c
            }
        });
        let traj = evolve_kraus(&f, &QubitDensityMatrix::excited()).unwrap();
        for (t, rho) in traj.iter().filter(|(t, _)| *t > t_zero) {
            assert!((rho.rho_ee() - 4.0 / 9.0 * (0.3 * t).cos().powi(2)).abs() < 1e-15);
        }
    }

    #[test]
    fn kraus_errors() {
        let grid = make_grid(0.0, 1.0, 0.1).unwrap();
        let too_big = Trajectory::from_fn(grid, |t| 1.0 + t);
        assert!(matches!(
            evolve_kraus(&too_big, &QubitDensityMatrix::excited()),
            Err(Error::NotTracePreserving { .. })
        ));
        let bad_start = Trajectory::from_fn(grid, |_| 0.5);
        assert!(matches!(
            evolve_kraus(&bad_start, &QubitDensityMatrix::excited()),
            Err(Error::MapNotIdentityAtStart { .. })
        ));
        let ok = Trajectory::from_fn(grid, |t| if t == 0.0 { 1.0 + 5e-10 } else { 0.5 });
        assert!(evolve_kraus(&ok, &QubitDensityMatrix::excited()).is_ok());
    }

    #[test]
    fn master_equation_without_decay() {
        let grid = make_grid(0.0, 5.0, 1e-2).unwrap();
        let rho0 = QubitDensityMatrix::new(0.7, 0.3, Complex64::new(0.2, 0.1)).unwrap();
        let run = evolve_master_equation(&DecayRateSeries::regular(grid, |_| 0.0), &rho0).unwrap();
        assert!(!run.any_clamped());
        assert!(run.trajectory.samples().iter().all(|r| *r == rho0));
    }

    #[test]
    fn master_equation_tangent_rate() {
        let w = 0.3;
        let grid = make_grid(0.0, 0.8 * (PI / 2.0) / w, 1e-3).unwrap();
        let gamma = DecayRateSeries::regular(grid, |t| 2.0 * w * (w * t).tan());
        let run = evolve_master_equation(&gamma, &QubitDensityMatrix::excited()).unwrap();
        let max_err = run
            .trajectory
            .iter()
            .map(|(t, r)| (r.rho_ee() - (w * t).cos().powi(2)).abs())
            .fold(0.0, f64::max);
        assert!(max_err < 1e-6, "max error {max_err}");
    }

    #[test]
    fn master_equation_constant_rate() {
        let grid = make_grid(0.0, 5.0, 1e-3).unwrap();
        let gamma = DecayRateSeries::regular(grid, |_| 2.0);
        let rho0 = QubitDensityMatrix::new(0.5, 0.5, Complex64::new(0.5, 0.0)).unwrap();
        let run = evolve_master_equation(&gamma, &rho0).unwrap();
        for (t, r) in run.trajectory.iter() {
            assert!((r.rho_ee() - 0.5 * (-2.0 * t).exp()).abs() < 1e-10);
            assert!((r.rho_eg().re - 0.5 * (-t).exp()).abs() < 1e-10);
            assert!((r.trace() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn master_equation_flags_and_collapses_on_singular_points() {
        let grid = make_grid(0.0, 2.0, 0.1).unwrap();
        let mut singular = std::vec![false; grid.len()];
        singular[10] = true;
        let mut gamma = std::vec![0.5; grid.len()];
        gamma[10] = f64::NAN;
        let series = DecayRateSeries::new(grid, gamma, singular).unwrap();
        let run = evolve_master_equation(&series, &QubitDensityMatrix::excited()).unwrap();
        assert!(run.clamped[10]);
        assert_eq!(run.clamped.iter().filter(|&&c| c).count(), 1);
        let after = &run.trajectory.samples()[11..];
        assert!(after.iter().all(|r| r.rho_ee() == 0.0 && r.rho_gg() == 1.0));
    }

    #[test]
    fn ground_state_is_a_solution_for_any_rate() {
        let grid = make_grid(0.0, 20.0, 1e-3).unwrap();
        let gamma = DecayRateSeries::regular(grid, |t| 0.6 * (0.3 * t).tan());
        let run = evolve_master_equation(&gamma, &QubitDensityMatrix::ground()).unwrap();
        assert!(run
            .trajectory
            .samples()
            .iter()
            .all(|r| *r == QubitDensityMatrix::ground()));
    }
}
