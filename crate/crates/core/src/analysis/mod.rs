//! Recovering the time-local description from sampled trajectories.
//!
//! Derivatives are three-point central differences on the uniform grid with
//! second-order one-sided stencils at both ends.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::propagation::{DecayRateSeries, TimeGrid, Trajectory};
use crate::quantum::{QubitDensityMatrix, StateVector};
use crate::{Error, Result};

mod diabaticity;
mod fft;
mod spectrum;

pub use diabaticity::{diabaticity_window, diabaticity_xi, DiabaticityReport, XI_HALF_WIDTH};
pub use spectrum::{power_spectrum, Spectrum, Window, MIN_SPECTRUM_SAMPLES};

/// Singularity floor on `|f|`.
pub const DEFAULT_F_FLOOR: f64 = 1e-6;

/// Singularity floor on `ρ_ee`.
pub const DEFAULT_RHO_FLOOR: f64 = 1e-12;

/// Largest refined minimum of `ρ_ee` still counted as a visit to the ground
/// state.
pub const DEFAULT_NONINVERTIBLE_TOL: f64 = 1e-6;

pub(crate) fn derivative(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    match n {
        0 => Vec::new(),
        1 => alloc::vec![0.0],
        2 => {
            let d = (values[1] - values[0]) / h;
            alloc::vec![d, d]
        }
        _ => {
            let mut out = Vec::with_capacity(n);
            out.push((-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h));
            out.extend(values.windows(3).map(|w| (w[2] - w[0]) / (2.0 * h)));
            out.push((3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h));
            out
        }
    }
}

fn derivative_complex(values: &[Complex64], h: f64) -> Vec<Complex64> {
    let re: Vec<f64> = values.iter().map(|z| z.re).collect();
    let im: Vec<f64> = values.iter().map(|z| z.im).collect();
    derivative(&re, h)
        .into_iter()
        .zip(derivative(&im, h))
        .map(|(a, b)| Complex64::new(a, b))
        .collect()
}

/// Local minima of `values` whose parabolic refinement lies at or below
/// `tol`, as refined times.
fn refined_minima(values: &[f64], grid: &TimeGrid, tol: f64) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    let mut last_index: Option<usize> = None;
    for i in 1..values.len().saturating_sub(1) {
        let (y0, y1, y2) = (values[i - 1], values[i], values[i + 1]);
        let is_min = y1 <= y0 && y1 <= y2 && (y1 < y0 || y1 < y2);
        if !is_min {
            continue;
        }
        if last_index.is_some_and(|j| i - j <= 2) {
            continue;
        }
        let curvature = y0 - 2.0 * y1 + y2;
        let (offset, minimum) = if curvature > 0.0 {
            let d = ((y0 - y2) / (2.0 * curvature)).clamp(-1.0, 1.0);
            (d, y1 - (y0 - y2) * (y0 - y2) / (8.0 * curvature))
        } else {
            (0.0, y1)
        };
        if minimum <= tol {
            out.push(grid.time(i) + offset * grid.step());
            last_index = Some(i);
        }
    }
    out
}

/// Reconstructs the Kraus parameter `f(t)` from the excited population.
///
/// `|f| = √(ρ_ee(t)/ρ_ee(0))`. With amplitudes the sign follows `c_e`
/// relative to `c_e(0)`, tracked from sample to sample: it flips only where
/// consecutive amplitudes point in opposite directions, i.e. where `c_e`
/// passes through zero. A complex `c_e` that rotates without vanishing keeps
/// `f` on one branch. Without amplitudes the sign flips after every visit of
/// `ρ_ee` to zero.
pub fn extract_f(
    traj: &Trajectory<QubitDensityMatrix>,
    states: Option<&Trajectory<StateVector>>,
) -> Result<Trajectory<f64>> {
    let rho_ee0 = traj.samples()[0].rho_ee();
    if !(rho_ee0 > 1e-15) {
        return Err(Error::UndefinedF);
    }
    let ratio: Vec<f64> = traj
        .samples()
        .iter()
        .map(|r| (r.rho_ee() / rho_ee0).max(0.0))
        .collect();
    let magnitude = ratio.iter().map(|&x| libm::sqrt(x));

    let samples: Vec<f64> = match states {
        Some(states) => {
            if states.grid() != traj.grid() {
                return Err(Error::GridMismatch);
            }
            let mut anchor = states.samples()[0].c_e;
            let mut sign = 1.0;
            magnitude
                .zip(states.samples())
                .map(|(m, psi)| {
                    // exact zeros carry no direction; compare across them
                    if psi.c_e.norm_sqr() > 0.0 {
                        if (psi.c_e * anchor.conj()).re < 0.0 {
                            sign = -sign;
                        }
                        anchor = psi.c_e;
                    }
                    sign * m
                })
                .collect()
        }
        None => {
            let zeros = refined_minima(&ratio, traj.grid(), DEFAULT_NONINVERTIBLE_TOL);
            let mut next_zero = 0;
            let mut sign = 1.0;
            magnitude
                .zip(traj.grid().times())
                .map(|(m, t)| {
                    while next_zero < zeros.len() && t > zeros[next_zero] {
                        sign = -sign;
                        next_zero += 1;
                    }
                    sign * m
                })
                .collect()
        }
    };
    Trajectory::new(*traj.grid(), samples)
}

/// `γ = −2ḟ/f`; points with `|f| < floor` are flagged.
pub fn decay_rate_from_f(f: &Trajectory<f64>, floor: f64) -> DecayRateSeries {
    let df = derivative(f.samples(), f.grid().step());
    let gamma = f
        .samples()
        .iter()
        .zip(&df)
        .map(|(&v, &d)| -2.0 * d / v)
        .collect();
    let singular = f
        .samples()
        .iter()
        .map(|v| !(libm::fabs(*v) >= floor))
        .collect();
    DecayRateSeries::new(*f.grid(), gamma, singular).expect("lengths follow the input grid")
}

/// `γ = −ρ̇_ee/ρ_ee`; points with `ρ_ee < floor` are flagged.
pub fn decay_rate_from_population(
    traj: &Trajectory<QubitDensityMatrix>,
    floor: f64,
) -> DecayRateSeries {
    let ee: Vec<f64> = traj.samples().iter().map(|r| r.rho_ee()).collect();
    let dee = derivative(&ee, traj.grid().step());
    let gamma = ee.iter().zip(&dee).map(|(&v, &d)| -d / v).collect();
    let singular = ee.iter().map(|v| !(*v >= floor)).collect();
    DecayRateSeries::new(*traj.grid(), gamma, singular).expect("lengths follow the input grid")
}

/// Pointwise max-abs distance between the numerical `ρ̇` and the lowering
/// channel generator at rate `γ(t)`. Flagged points are NaN.
pub fn me_residual(
    traj: &Trajectory<QubitDensityMatrix>,
    gamma: &DecayRateSeries,
) -> Result<Trajectory<f64>> {
    if traj.grid() != gamma.grid() {
        return Err(Error::GridMismatch);
    }
    let h = traj.grid().step();
    let ee: Vec<f64> = traj.samples().iter().map(|r| r.rho_ee()).collect();
    let gg: Vec<f64> = traj.samples().iter().map(|r| r.rho_gg()).collect();
    let eg: Vec<Complex64> = traj.samples().iter().map(|r| r.rho_eg()).collect();
    let (dee, dgg, deg) = (
        derivative(&ee, h),
        derivative(&gg, h),
        derivative_complex(&eg, h),
    );
    let samples = (0..traj.len())
        .map(|i| match gamma.value(i) {
            None => f64::NAN,
            Some(g) => {
                let r_ee = libm::fabs(dee[i] + g * ee[i]);
                let r_gg = libm::fabs(dgg[i] - g * ee[i]);
                let r_eg = (deg[i] + eg[i] * (0.5 * g)).norm();
                r_ee.max(r_gg).max(r_eg)
            }
        })
        .collect();
    Trajectory::new(*traj.grid(), samples)
}

/// Times at which `ρ_ee` touches zero (refined minima at or below `tol`),
/// i.e. where the dynamical map stops being invertible.
pub fn find_noninvertible_times(traj: &Trajectory<QubitDensityMatrix>, tol: f64) -> Vec<f64> {
    let ee: Vec<f64> = traj.samples().iter().map(|r| r.rho_ee()).collect();
    refined_minima(&ee, traj.grid(), tol)
}

/// `t_i = (n + ½)π/ω_R`, the `n`-th ground-state passage of a resonant
/// evolution starting in `|e,0⟩`.
pub fn switch_time(rabi: f64, n: u32) -> f64 {
    (n as f64 + 0.5) * core::f64::consts::PI / rabi
}

/// Largest finite value, ignoring NaN entries.
pub fn max_finite(values: &[f64]) -> Option<f64> {
    values
        .iter()
        .copied()
        .filter(|v| v.is_finite())
        .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
}
