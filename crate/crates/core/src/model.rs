//! Interaction-picture Jaynes-Cummings model in the one-excitation subspace.
//!
//! In the basis `(|e,0⟩, |g,1⟩)` the Hamiltonian is
//!
//! ```text
//! H(t) = [[ Δ(t), −iΩ(t) ],
//!         [ iΩ(t), −Δ(t) ]]
//! ```
//!
//! and `Δ(t)` is slaved to `Ω(t)` so that the Rabi frequency
//! `ω_R = √(Δ² + Ω²)` never changes.

use num_complex::Complex64;

use crate::quantum::{Mat2, StateVector};
use crate::{Error, Result};

/// Ratio below which a "≪" condition of the rotating-wave approximation is
/// considered satisfied.
pub const RWA_THRESHOLD: f64 = 0.1;

/// Smooth step `Ω(t) = (Ω_max − Ω_min)/2 · (1 − tanh k(t − t_i)) + Ω_min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingProfile {
    pub omega_max: f64,
    pub omega_min: f64,
    pub k: f64,
    pub t_switch: f64,
}

impl CouplingProfile {
    pub fn new(omega_max: f64, omega_min: f64, k: f64, t_switch: f64) -> Result<Self> {
        let p = Self {
            omega_max,
            omega_min,
            k,
            t_switch,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_max.is_finite()
            && self.omega_min.is_finite()
            && self.k.is_finite()
            && self.t_switch.is_finite())
        {
            return Err(Error::Config("coupling profile parameters must be finite"));
        }
        if self.omega_max <= 0.0 {
            return Err(Error::Config("omega_max must be positive"));
        }
        if self.omega_min < 0.0 {
            return Err(Error::Config("omega_min must be non-negative"));
        }
        if self.omega_min > self.omega_max {
            return Err(Error::Config("omega_min must not exceed omega_max"));
        }
        if self.k <= 0.0 {
            return Err(Error::Config("k must be positive"));
        }
        Ok(())
    }
}

pub fn coupling_at(p: &CouplingProfile, t: f64) -> f64 {
    let half_span = 0.5 * (p.omega_max - p.omega_min);
    let value = half_span * (1.0 - libm::tanh(p.k * (t - p.t_switch))) + p.omega_min;
    value.clamp(p.omega_min, p.omega_max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    Constant(f64),
    Profile(CouplingProfile),
}

impl Coupling {
    pub fn at(&self, t: f64) -> f64 {
        match self {
            Coupling::Constant(omega) => *omega,
            Coupling::Profile(p) => coupling_at(p, t),
        }
    }

    /// Supremum of the coupling over all times.
    pub fn max(&self) -> f64 {
        match self {
            Coupling::Constant(omega) => *omega,
            Coupling::Profile(p) => p.omega_max,
        }
    }

    /// Infimum of the coupling over all times.
    pub fn min(&self) -> f64 {
        match self {
            Coupling::Constant(omega) => *omega,
            Coupling::Profile(p) => p.omega_min,
        }
    }
}

/// Lab-frame frequencies, only used to judge the rotating-wave approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalContext {
    /// Atomic transition frequency `ω₀`.
    pub omega0: f64,
    /// Cavity field frequency `ω`.
    pub omega_field: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConfig {
    pub rabi: f64,
    pub coupling: Coupling,
    pub physical_context: Option<PhysicalContext>,
}

impl ModelConfig {
    pub fn new(rabi: f64, coupling: Coupling) -> Result<Self> {
        let cfg = Self {
            rabi,
            coupling,
            physical_context: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Resonant evolution: `Ω = ω_R`, `Δ = 0`.
    pub fn resonant(rabi: f64) -> Result<Self> {
        Self::new(rabi, Coupling::Constant(rabi))
    }

    pub fn with_physical_context(mut self, ctx: PhysicalContext) -> Self {
        self.physical_context = Some(ctx);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rabi.is_finite() && self.rabi > 0.0) {
            return Err(Error::Config("Rabi frequency must be positive"));
        }
        match &self.coupling {
            Coupling::Constant(omega) => {
                if !(omega.is_finite() && *omega >= 0.0) {
                    return Err(Error::Config("constant coupling must be non-negative"));
                }
            }
            Coupling::Profile(p) => p.validate()?,
        }
        if self.coupling.max() > self.rabi {
            return Err(Error::CouplingExceedsRabi {
                coupling: self.coupling.max(),
                rabi: self.rabi,
            });
        }
        Ok(())
    }

    pub fn is_time_dependent(&self) -> bool {
        match self.coupling {
            Coupling::Constant(_) => false,
            Coupling::Profile(p) => p.omega_max != p.omega_min,
        }
    }
}

/// `Δ(t) = √(ω_R² − Ω(t)²)`.
pub fn detuning_at(cfg: &ModelConfig, t: f64) -> Result<f64> {
    let omega = cfg.coupling.at(t);
    if omega > cfg.rabi {
        return Err(Error::CouplingExceedsRabi {
            coupling: omega,
            rabi: cfg.rabi,
        });
    }
    Ok(libm::sqrt((cfg.rabi - omega) * (cfg.rabi + omega)))
}

/// The 2×2 interaction-picture Hamiltonian `[[Δ, −iΩ], [iΩ, −Δ]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hamiltonian2x2 {
    pub delta: f64,
    pub omega: f64,
}

impl Hamiltonian2x2 {
    pub const fn new(delta: f64, omega: f64) -> Self {
        Self { delta, omega }
    }

    pub fn matrix(&self) -> Mat2 {
        [
            [
                Complex64::new(self.delta, 0.0),
                Complex64::new(0.0, -self.omega),
            ],
            [
                Complex64::new(0.0, self.omega),
                Complex64::new(-self.delta, 0.0),
            ],
        ]
    }

    /// `H ψ`
    pub fn apply(&self, psi: &StateVector) -> StateVector {
        let i_omega = Complex64::new(0.0, self.omega);
        StateVector::new(
            psi.c_e * self.delta - i_omega * psi.c_g,
            i_omega * psi.c_e - psi.c_g * self.delta,
        )
    }

    /// `√(Δ² + Ω²)`; `H² = ω_R² · 1`.
    pub fn rabi(&self) -> f64 {
        libm::hypot(self.delta, self.omega)
    }

    pub fn expectation(&self, psi: &StateVector) -> f64 {
        let h = self.apply(psi);
        (psi.c_e.conj() * h.c_e + psi.c_g.conj() * h.c_g).re
    }

    /// Exact propagator `exp(−iHτ) = cos(ω_R τ) − i sin(ω_R τ) H/ω_R`.
    pub fn propagate(&self, psi: &StateVector, tau: f64) -> StateVector {
        let w = self.rabi();
        if w == 0.0 {
            return *psi;
        }
        let (s, c) = (libm::sin(w * tau), libm::cos(w * tau));
        let h = self.apply(psi);
        let k = Complex64::new(0.0, -s / w);
        StateVector::new(psi.c_e * c + k * h.c_e, psi.c_g * c + k * h.c_g)
    }
}

pub fn hamiltonian_at(cfg: &ModelConfig, t: f64) -> Result<Hamiltonian2x2> {
    Ok(Hamiltonian2x2::new(
        detuning_at(cfg, t)?,
        cfg.coupling.at(t),
    ))
}

/// Largest values of `2Δ/(ω₀+ω)` and `Ω/ω₀` over all times.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RwaReport {
    pub ok: bool,
    pub detuning_ratio: f64,
    pub coupling_ratio: f64,
}

/// `None` when the configuration carries no lab-frame frequencies.
pub fn rwa_validity(cfg: &ModelConfig) -> Option<RwaReport> {
    let ctx = cfg.physical_context?;
    // Δ is largest where Ω is smallest; Ω is monotone between its bounds.
    let omega_low = cfg.coupling.min().min(cfg.rabi);
    let delta_max = libm::sqrt((cfg.rabi - omega_low) * (cfg.rabi + omega_low));
    let detuning_ratio = libm::fabs(2.0 * delta_max / (ctx.omega0 + ctx.omega_field));
    let coupling_ratio = libm::fabs(cfg.coupling.max() / ctx.omega0);
    Some(RwaReport {
        ok: detuning_ratio < RWA_THRESHOLD && coupling_ratio < RWA_THRESHOLD,
        detuning_ratio,
        coupling_ratio,
    })
}

/// Closed-form state for `c_e(0) = 0`, `c_g(0) = 1` under a constant Hamiltonian.
pub fn analytic_solution_ground_start(cfg: &ModelConfig, t: f64) -> Result<StateVector> {
    if cfg.is_time_dependent() {
        return Err(Error::Unsupported(
            "closed-form solution requires a constant Hamiltonian",
        ));
    }
    cfg.validate()?;
    let omega = cfg.coupling.at(t);
    let delta = detuning_at(cfg, t)?;
    let w = cfg.rabi;
    let (s, c) = (libm::sin(w * t), libm::cos(w * t));
    Ok(StateVector::new(
        Complex64::new(-(omega / w) * s, 0.0),
        Complex64::new(c, (delta / w) * s),
    ))
}

/// Populations `(ρ_ee, ρ_gg)` after an instantaneous switch at a ground-state
/// passage of a resonant evolution that started in `|e,0⟩`.
pub fn analytic_switched_populations(rabi: f64, omega_after: f64, t: f64) -> Result<(f64, f64)> {
    if !(rabi > 0.0) {
        return Err(Error::Config("Rabi frequency must be positive"));
    }
    if !(omega_after >= 0.0) {
        return Err(Error::Config(
            "coupling after the switch must be non-negative",
        ));
    }
    if omega_after > rabi {
        return Err(Error::CouplingExceedsRabi {
            coupling: omega_after,
            rabi,
        });
    }
    let amp = omega_after / rabi;
    let c = libm::cos(rabi * t);
    let rho_ee = amp * amp * c * c;
    Ok((rho_ee, 1.0 - rho_ee))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn fig2_profile(t_switch: f64) -> CouplingProfile {
        CouplingProfile::new(0.3, 0.2, 1.6, t_switch).unwrap()
    }

    #[test]
    fn coupling_midpoint_and_limits() {
        let p = fig2_profile(2.0);
        assert!((coupling_at(&p, 2.0) - 0.25).abs() < 1e-15);
        assert!((coupling_at(&p, -1e3) - 0.3).abs() < 1e-15);
        assert!((coupling_at(&p, 1e3) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn profile_validation() {
        assert!(CouplingProfile::new(0.2, 0.3, 1.0, 0.0).is_err());
        assert!(CouplingProfile::new(0.3, 0.2, 0.0, 0.0).is_err());
        assert!(CouplingProfile::new(0.3, -0.1, 1.0, 0.0).is_err());
        assert!(ModelConfig::new(0.25, Coupling::Profile(fig2_profile(0.0))).is_err());
    }

    #[test]
    fn detuning_examples() {
        let on_res = ModelConfig::resonant(0.3).unwrap();
        assert_eq!(detuning_at(&on_res, 7.0).unwrap(), 0.0);
        let cfg = ModelConfig::new(0.3, Coupling::Constant(0.2)).unwrap();
        assert!((detuning_at(&cfg, 0.0).unwrap() - 0.223_606_797_749_979).abs() < 1e-12);
        let cfg = ModelConfig::new(0.3, Coupling::Constant(0.25)).unwrap();
        assert!((detuning_at(&cfg, 0.0).unwrap() - 0.165_831_239_517_770).abs() < 1e-12);
    }

    #[test]
    fn detuning_rejects_excess_coupling() {
        let cfg = ModelConfig {
            rabi: 0.3,
            coupling: Coupling::Constant(0.31),
            physical_context: None,
        };
        assert!(matches!(
            detuning_at(&cfg, 0.0),
            Err(Error::CouplingExceedsRabi { .. })
        ));
    }

    #[test]
    fn hamiltonian_examples() {
        let h = hamiltonian_at(&ModelConfig::resonant(0.3).unwrap(), 1.0).unwrap();
        assert_eq!(h, Hamiltonian2x2::new(0.0, 0.3));

        let cfg = ModelConfig::new(0.3, Coupling::Profile(fig2_profile(5.0))).unwrap();
        let late = hamiltonian_at(&cfg, 200.0).unwrap();
        assert!((late.delta - 0.223_606_797_749_979).abs() < 1e-12);
        assert!((late.omega - 0.2).abs() < 1e-15);
        let mid = hamiltonian_at(&cfg, 5.0).unwrap();
        assert!((mid.delta - 0.165_831_239_517_770).abs() < 1e-12);
        assert!((mid.omega - 0.25).abs() < 1e-15);
    }

    #[test]
    fn hamiltonian_matrix_is_hermitian() {
        let m = Hamiltonian2x2::new(0.4, 0.7).matrix();
        assert_eq!(m[0][1], m[1][0].conj());
        assert_eq!(m[0][0].im, 0.0);
        assert_eq!(m[1][1].im, 0.0);
    }

    #[test]
    fn rwa_examples() {
        let cfg = ModelConfig::resonant(0.3)
            .unwrap()
            .with_physical_context(PhysicalContext {
                omega0: 30.0,
                omega_field: 30.0,
            });
        let r = rwa_validity(&cfg).unwrap();
        assert_eq!(r.detuning_ratio, 0.0);
        assert!((r.coupling_ratio - 0.01).abs() < 1e-15);
        assert!(r.ok);

        let cfg = ModelConfig::resonant(0.3)
            .unwrap()
            .with_physical_context(PhysicalContext {
                omega0: 0.3,
                omega_field: 0.3,
            });
        let r = rwa_validity(&cfg).unwrap();
        assert!((r.coupling_ratio - 1.0).abs() < 1e-15);
        assert!(!r.ok);

        let cfg = ModelConfig::new(0.3, Coupling::Constant(0.2))
            .unwrap()
            .with_physical_context(PhysicalContext {
                omega0: 10.0,
                omega_field: 10.0,
            });
        let r = rwa_validity(&cfg).unwrap();
        assert!((r.detuning_ratio - 0.022_360_679_774_998).abs() < 1e-12);
        assert!(r.ok);

        assert!(rwa_validity(&ModelConfig::resonant(0.3).unwrap()).is_none());
    }

    #[test]
    fn ground_start_solution() {
        let cfg = ModelConfig::resonant(0.3).unwrap();
        let psi = analytic_solution_ground_start(&cfg, 0.0).unwrap();
        assert_eq!(psi, StateVector::ground());
        for &t in &[0.5, 3.0, 11.0] {
            let psi = analytic_solution_ground_start(&cfg, t).unwrap();
            assert!((psi.c_e.re + (0.3 * t).sin()).abs() < 1e-15);
            assert!((psi.c_g.re - (0.3 * t).cos()).abs() < 1e-15);
            assert_eq!(psi.c_g.im, 0.0);
        }
        let quarter = analytic_solution_ground_start(&cfg, PI / (2.0 * 0.3)).unwrap();
        assert!((quarter.c_e.re + 1.0).abs() < 1e-15);
        assert!(quarter.c_g.norm() < 1e-15);
    }

    #[test]
    fn ground_start_requires_constant_hamiltonian() {
        let cfg = ModelConfig::new(0.3, Coupling::Profile(fig2_profile(0.0))).unwrap();
        assert!(matches!(
            analytic_solution_ground_start(&cfg, 1.0),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn exact_propagator_matches_closed_form() {
        let cfg = ModelConfig::new(0.3, Coupling::Constant(0.2)).unwrap();
        let h = hamiltonian_at(&cfg, 0.0).unwrap();
        for &t in &[0.0, 1.3, 9.0, 27.5] {
            let a = h.propagate(&StateVector::ground(), t);
            let b = analytic_solution_ground_start(&cfg, t).unwrap();
            assert!((a.c_e - b.c_e).norm() < 1e-14);
            assert!((a.c_g - b.c_g).norm() < 1e-14);
        }
    }

    #[test]
    fn switched_populations() {
        let (peak, _) = analytic_switched_populations(0.3, 0.2, 0.0).unwrap();
        assert!((peak - 4.0 / 9.0).abs() < 1e-15);
        for &t in &[0.0, 2.0, 7.7] {
            let (ee, _) = analytic_switched_populations(0.3, 0.3, t).unwrap();
            assert!((ee - (0.3 * t).cos().powi(2)).abs() < 1e-15);
            let (ee, gg) = analytic_switched_populations(0.3, 0.0, t).unwrap();
            assert_eq!((ee, gg), (0.0, 1.0));
        }
        assert!(analytic_switched_populations(0.3, 0.4, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn coupling_monotone_and_bounded(t in -50.0..50.0f64, dt in 0.0..10.0f64, k in 0.05..20.0f64) {
            let p = CouplingProfile::new(0.3, 0.2, k, 3.0).unwrap();
            let a = coupling_at(&p, t);
            let b = coupling_at(&p, t + dt);
            prop_assert!(b <= a);
            prop_assert!((0.2..=0.3).contains(&a));
        }

        #[test]
        fn rabi_frequency_is_invariant(t in -50.0..50.0f64, k in 0.05..20.0f64) {
            let cfg = ModelConfig::new(0.3, Coupling::Profile(CouplingProfile::new(0.3, 0.2, k, 3.0).unwrap())).unwrap();
            let h = hamiltonian_at(&cfg, t).unwrap();
            prop_assert!((h.delta * h.delta + h.omega * h.omega - 0.09).abs() < 1e-16);
        }

        #[test]
        fn ground_start_stays_normalized(t in 0.0..1000.0f64, omega in 0.0..=1.0f64) {
            let cfg = ModelConfig::new(1.0, Coupling::Constant(omega)).unwrap();
            let psi = analytic_solution_ground_start(&cfg, t).unwrap();
            prop_assert!((psi.norm_sqr() - 1.0).abs() < 1e-14);
        }

        #[test]
        fn switched_populations_sum_to_one(t in 0.0..100.0f64, omega in 0.0..=0.3f64) {
            let (ee, gg) = analytic_switched_populations(0.3, omega, t).unwrap();
            prop_assert!((ee + gg - 1.0).abs() < 1e-15);
        }
    }
}
