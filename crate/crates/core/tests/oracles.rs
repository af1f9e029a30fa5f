use std::f64::consts::PI;

use timelocal_core::propagation::make_grid_through;
use timelocal_core::{
    coupling_at, density_from_state, evolve_kraus, evolve_master_equation, evolve_schrodinger,
    hamiltonian_at, make_grid, power_spectrum, trace_distance, Complex64, Coupling,
    CouplingProfile, DecayRateSeries, ModelConfig, QubitDensityMatrix, StateVector, Trajectory,
    Window,
};

/// Product of exact 2×2 propagators with `H` frozen at interval midpoints,
/// Richardson-extrapolated from steps `h` and `h/2`.
fn midpoint_exponential(cfg: &ModelConfig, psi0: StateVector, t_end: f64, n: usize) -> StateVector {
    let run = |steps: usize| {
        let h = t_end / steps as f64;
        let mut psi = psi0;
        for j in 0..steps {
            let ham = hamiltonian_at(cfg, (j as f64 + 0.5) * h).unwrap();
            psi = ham.propagate(&psi, h);
        }
        psi
    };
    let (coarse, fine) = (run(n), run(2 * n));
    StateVector::new(
        (fine.c_e * 4.0 - coarse.c_e) / 3.0,
        (fine.c_g * 4.0 - coarse.c_g) / 3.0,
    )
}

#[test]
fn rk4_matches_exponential_integrator_through_the_switch() {
    let t_i = PI / 0.6;
    for k in [0.5, 1.6, 5.0] {
        let profile = CouplingProfile::new(0.3, 0.2, k, t_i).unwrap();
        let cfg = ModelConfig::new(0.3, Coupling::Profile(profile)).unwrap();
        let grid = make_grid(0.0, 20.0, 1e-3).unwrap();
        let psi = evolve_schrodinger(&cfg, &StateVector::excited(), &grid).unwrap();
        let last = psi.samples()[psi.len() - 1];
        let oracle = midpoint_exponential(&cfg, StateVector::excited(), 20.0, 20_000);
        let err = (last.c_e - oracle.c_e)
            .norm()
            .max((last.c_g - oracle.c_g).norm());
        assert!(err < 1e-9, "k = {k}: {err:e}");
    }
}

#[test]
fn coupling_profile_limits() {
    let p = CouplingProfile::new(0.3, 0.2, 1.6, 5.0).unwrap();
    assert!((coupling_at(&p, 5.0) - 0.25).abs() < 1e-15);
    assert!((coupling_at(&p, -100.0) - 0.3).abs() < 1e-15);
    assert!((coupling_at(&p, 100.0) - 0.2).abs() < 1e-15);
}

#[test]
fn three_propagators_agree_before_the_first_singularity() {
    let w = 0.3;
    let t_stop = 0.95 * PI / (2.0 * w);
    let grid = make_grid(0.0, t_stop, 1e-3).unwrap();
    let psi = evolve_schrodinger(
        &ModelConfig::resonant(w).unwrap(),
        &StateVector::excited(),
        &grid,
    )
    .unwrap();
    let kraus = evolve_kraus(
        &Trajectory::from_fn(grid, |t| (w * t).cos()),
        &QubitDensityMatrix::excited(),
    )
    .unwrap();
    let gamma = DecayRateSeries::regular(grid, |t| 2.0 * w * (w * t).tan());
    let me = evolve_master_equation(&gamma, &QubitDensityMatrix::excited()).unwrap();
    assert!(!me.any_clamped());
    for i in 0..grid.len() {
        let rho_s = density_from_state(&psi.samples()[i]).unwrap();
        assert!(trace_distance(&rho_s, &kraus.samples()[i]) < 1e-9);
        assert!(
            trace_distance(&rho_s, &me.trajectory.samples()[i]) < 1e-6,
            "t = {}",
            grid.time(i)
        );
    }
}

#[test]
fn master_equation_keeps_mixed_coherence_decay() {
    // ρ_eg decays with half the population rate: ρ_eg(t) = f ρ_eg(0)
    let w = 0.3;
    let grid = make_grid(0.0, 4.0, 1e-3).unwrap();
    let gamma = DecayRateSeries::regular(grid, |t| 2.0 * w * (w * t).tan());
    let rho0 = QubitDensityMatrix::new(0.5, 0.5, Complex64::new(0.3, 0.2)).unwrap();
    let me = evolve_master_equation(&gamma, &rho0).unwrap();
    for (t, rho) in me.trajectory.iter() {
        let f = (w * t).cos();
        assert!((rho.rho_ee() - 0.5 * f * f).abs() < 1e-7);
        assert!((rho.rho_eg() - Complex64::new(0.3, 0.2) * f).norm() < 1e-7);
    }
}

/// `|Σ_j e^{iδ h j}|² = sin²(Nhδ/2) / sin²(hδ/2)`
fn dirichlet_sq(n: usize, h: f64, delta: f64) -> f64 {
    let den = (0.5 * h * delta).sin();
    if den.abs() < 1e-15 {
        (n * n) as f64
    } else {
        let num = (0.5 * n as f64 * h * delta).sin();
        num * num / (den * den)
    }
}

#[test]
fn truncated_tone_has_dirichlet_pedestal() {
    let w0 = 0.3;
    let grid = make_grid(0.0, 40.0, 0.05).unwrap();
    let n = grid.len();
    let h = grid.step();
    let tone = Trajectory::from_fn(grid, |t| {
        Complex64::from_polar(1.0, w0 * (t - grid.t_start()))
    });
    let spectrum = power_spectrum(&tone, Window::Rectangular).unwrap();
    for m in 1..60 {
        let wm = spectrum.frequencies[m];
        let expected = (dirichlet_sq(n, h, w0 - wm) + dirichlet_sq(n, h, w0 + wm)) / n as f64;
        let got = spectrum.power[m];
        assert!(
            (got - expected).abs() <= 1e-9 * expected.max(1e-6),
            "bin {m}: {got} vs {expected}"
        );
    }
}

#[test]
fn grid_through_anchor_keeps_switch_on_a_node() {
    let t_i = PI / 0.6;
    let grid = make_grid_through(0.0, t_i, 40.0, 1e-3).unwrap();
    let i = grid.nearest_index(t_i);
    assert!((grid.time(i) - t_i).abs() < 1e-12);
    assert!((grid.step() / 1e-3 - 1.0).abs() < 1e-3);
}
