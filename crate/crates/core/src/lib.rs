//! Two-level open-system dynamics for the one-excitation Jaynes-Cummings model.
//!
//! The crate builds two evolutions of an atom coupled to a single cavity mode
//! whose reduced dynamics obey the same time-local master equation
//!
//! ```text
//! dρ/dt = γ(t) (σ₋ ρ σ₊ − ½{σ₊σ₋, ρ}),   γ(t) = −2 ḟ(t) / f(t)
//! ```
//!
//! and provides the machinery to check that claim numerically:
//!
//! - [`quantum`]: state vectors, qubit density matrices, the amplitude-damping
//!   style Kraus pair parameterised by a real `f`, trace distance.
//! - [`model`]: interaction-picture Hamiltonian, tanh coupling profile with a
//!   constant Rabi frequency, closed-form reference solutions.
//! - [`propagation`]: fixed-step RK4 Schrödinger integration, Kraus-map and
//!   master-equation propagators on a uniform [`TimeGrid`].
//! - [`analysis`]: extraction of `f(t)` and `γ(t)`, generator residuals,
//!   non-invertible instants, power spectra and the diabaticity estimate.
//! - [`scenarios`]: canned experiments returning [`ScenarioResult`] bundles.
//!
//! All quantities are dimensionless (time in units of a reference `τ`,
//! frequencies multiplied by `τ`, `ħ = 1`).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
// `!(x > 0.0)` style checks are used on purpose so NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod analysis;
mod error;
pub mod model;
pub mod propagation;
pub mod quantum;
pub mod scenarios;

pub use error::{Error, Result};
pub use num_complex::Complex64;

pub use analysis::{
    decay_rate_from_f, decay_rate_from_population, diabaticity_xi, extract_f,
    find_noninvertible_times, me_residual, power_spectrum, switch_time, DiabaticityReport,
    Spectrum, Window,
};
pub use model::{
    analytic_solution_ground_start, analytic_switched_populations, coupling_at, detuning_at,
    hamiltonian_at, rwa_validity, Coupling, CouplingProfile, Hamiltonian2x2, ModelConfig,
    PhysicalContext, RwaReport,
};
pub use propagation::{
    evolve_kraus, evolve_master_equation, evolve_schrodinger, make_grid, DecayRateSeries,
    MasterEquationRun, TimeGrid, Trajectory, GAMMA_CAP,
};
pub use quantum::{
    apply_kraus_map, density_from_state, trace_distance, KrausPair, QubitDensityMatrix, StateVector,
};
pub use scenarios::{ScenarioResult, Settings};
