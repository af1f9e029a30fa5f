use crate::model::{hamiltonian_at, Hamiltonian2x2, ModelConfig};
use crate::quantum::{StateVector, NORM_TOL};
use crate::{Error, Result};

/// Half-width of the ξ window in units of `1/k`: `tanh(4)` is within
/// about 6.7e-4 of its asymptote.
pub const XI_HALF_WIDTH: f64 = 4.0;

/// Composite Simpson intervals over the window.
const SIMPSON_INTERVALS: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiabaticityReport {
    /// `ξ = T² (⟨H̄²⟩ − ⟨H̄⟩²)`, the leading-order probability of leaving `ψ₀`.
    pub xi: f64,
    /// Window length `T = t₁ − t₀`.
    pub window: f64,
    pub mean_energy: f64,
    pub mean_sq_energy: f64,
    /// Time-averaged Hamiltonian over the window.
    pub mean_hamiltonian: Hamiltonian2x2,
}

/// `[t_i − 4/k, t_i + 4/k]`
pub fn diabaticity_window(k: f64, t_switch: f64) -> (f64, f64) {
    (t_switch - XI_HALF_WIDTH / k, t_switch + XI_HALF_WIDTH / k)
}

pub fn diabaticity_xi(
    cfg: &ModelConfig,
    psi0: &StateVector,
    t0: f64,
    t1: f64,
) -> Result<DiabaticityReport> {
    if !(t1 > t0) || !(t0.is_finite() && t1.is_finite()) {
        return Err(Error::Config("diabaticity window must satisfy t1 > t0"));
    }
    if !psi0.is_normalized(NORM_TOL) {
        return Err(Error::NotNormalized {
            norm_sqr: psi0.norm_sqr(),
        });
    }
    let window = t1 - t0;
    let h = window / SIMPSON_INTERVALS as f64;
    let (mut delta_sum, mut omega_sum) = (0.0, 0.0);
    for j in 0..=SIMPSON_INTERVALS {
        let weight = if j == 0 || j == SIMPSON_INTERVALS {
            1.0
        } else if j % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let ham = hamiltonian_at(cfg, t0 + j as f64 * h)?;
        delta_sum += weight * ham.delta;
        omega_sum += weight * ham.omega;
    }
    // (1/T)·(h/3)·Σ w_j H(t_j)
    let mean = Hamiltonian2x2::new(
        delta_sum * h / (3.0 * window),
        omega_sum * h / (3.0 * window),
    );
    let mean_energy = mean.expectation(psi0);
    let mean_sq_energy = mean.apply(psi0).norm_sqr();
    let xi = (window * window * (mean_sq_energy - mean_energy * mean_energy)).max(0.0);
    Ok(DiabaticityReport {
        xi,
        window,
        mean_energy,
        mean_sq_energy,
        mean_hamiltonian: mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::switch_time;
    use crate::model::{Coupling, CouplingProfile};
    use num_complex::Complex64;

    fn tanh_config(k: f64) -> ModelConfig {
        let t_i = switch_time(0.3, 0);
        ModelConfig::new(
            0.3,
            Coupling::Profile(CouplingProfile::new(0.3, 0.2, k, t_i).unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn vanishing_window_gives_zero() {
        let cfg = tanh_config(1.6);
        let t_i = switch_time(0.3, 0);
        let r = diabaticity_xi(&cfg, &StateVector::ground(), t_i, t_i + 1e-6).unwrap();
        assert!(r.xi < 1e-12);
    }

    #[test]
    fn eigenstate_of_constant_hamiltonian_has_zero_xi() {
        let cfg = ModelConfig::new(0.5, Coupling::Constant(0.3)).unwrap();
        // H = [[0.4, −0.3i], [0.3i, −0.4]] has eigenvector (3i, −1) for +0.5
        let v = StateVector::new(Complex64::new(0.0, 3.0), Complex64::new(-1.0, 0.0));
        let n = v.norm_sqr().sqrt();
        let v = StateVector::new(v.c_e / n, v.c_g / n);
        let h = Hamiltonian2x2::new(0.4, 0.3).apply(&v);
        assert!((h.c_e - v.c_e * 0.5).norm() < 1e-14);
        let r = diabaticity_xi(&cfg, &v, 0.0, 10.0).unwrap();
        assert!(r.xi < 1e-12, "{}", r.xi);
    }

    #[test]
    fn tanh_profile_ground_state_closed_form() {
        // The window is symmetric about t_i and tanh is odd, so the mean
        // coupling is exactly (Ω_max + Ω_min)/2 and ξ = (8/k)²·0.25² = 4/k².
        let mut previous = f64::INFINITY;
        for k in [0.5, 1.0, 1.6] {
            let (t0, t1) = diabaticity_window(k, switch_time(0.3, 0));
            let r = diabaticity_xi(&tanh_config(k), &StateVector::ground(), t0, t1).unwrap();
            assert!((r.window - 8.0 / k).abs() < 1e-12);
            assert!((r.mean_hamiltonian.omega - 0.25).abs() < 1e-12);
            assert!((r.xi - 4.0 / (k * k)).abs() < 1e-9, "k = {k}: {}", r.xi);
            assert!(r.xi < previous);
            previous = r.xi;
        }
    }

    #[test]
    fn degenerate_window_is_rejected() {
        let cfg = tanh_config(1.0);
        assert!(diabaticity_xi(&cfg, &StateVector::ground(), 1.0, 1.0).is_err());
        assert!(diabaticity_xi(&cfg, &StateVector::ground(), 2.0, 1.0).is_err());
    }
}
