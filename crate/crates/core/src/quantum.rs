//! States, reduced density matrices and the single-channel Kraus map.
//!
//! Basis ordering everywhere is `(e, g)`: index 0 is the excited level, index
//! 1 the ground level. For the joint atom-field state the same indices label
//! `|e,0⟩` and `|g,1⟩`.

use num_complex::Complex64;

use crate::{Error, Result};

/// Tolerance used for the trace, range and positivity invariants.
pub const DENSITY_TOL: f64 = 1e-10;

/// Tolerance on `| |c_e|² + |c_g|² − 1 |` accepted when forming a density matrix.
pub const NORM_TOL: f64 = 1e-8;

/// Dense 2×2 complex matrix in the `(e, g)` basis.
pub type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat2_dagger(a: &Mat2) -> Mat2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

pub fn mat2_add(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        [a[0][0] + b[0][0], a[0][1] + b[0][1]],
        [a[1][0] + b[1][0], a[1][1] + b[1][1]],
    ]
}

/// Amplitudes of `c_e |e,0⟩ + c_g |g,1⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    pub c_e: Complex64,
    pub c_g: Complex64,
}

impl StateVector {
    pub const fn new(c_e: Complex64, c_g: Complex64) -> Self {
        Self { c_e, c_g }
    }

    /// `|e,0⟩`
    pub const fn excited() -> Self {
        Self::new(ONE, ZERO)
    }

    /// `|g,1⟩`
    pub const fn ground() -> Self {
        Self::new(ZERO, ONE)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c_e.norm_sqr() + self.c_g.norm_sqr()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        libm::fabs(self.norm_sqr() - 1.0) <= tol
    }
}

/// Reduced atomic state, stored as `(ρ_ee, ρ_gg, ρ_eg)` with `ρ_ge = ρ_eg*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitDensityMatrix {
    rho_ee: f64,
    rho_gg: f64,
    rho_eg: Complex64,
}

impl QubitDensityMatrix {
    /// Builds a density matrix, checking trace, diagonal range and positivity
    /// against [`DENSITY_TOL`].
    pub fn new(rho_ee: f64, rho_gg: f64, rho_eg: Complex64) -> Result<Self> {
        let rho = Self::from_parts(rho_ee, rho_gg, rho_eg);
        rho.validate(DENSITY_TOL)?;
        Ok(rho)
    }

    pub(crate) const fn from_parts(rho_ee: f64, rho_gg: f64, rho_eg: Complex64) -> Self {
        Self {
            rho_ee,
            rho_gg,
            rho_eg,
        }
    }

    pub const fn excited() -> Self {
        Self::from_parts(1.0, 0.0, ZERO)
    }

    pub const fn ground() -> Self {
        Self::from_parts(0.0, 1.0, ZERO)
    }

    /// Diagonal state with excited population `p`.
    pub fn diagonal(p: f64) -> Result<Self> {
        Self::new(p, 1.0 - p, ZERO)
    }

    pub fn rho_ee(&self) -> f64 {
        self.rho_ee
    }

    pub fn rho_gg(&self) -> f64 {
        self.rho_gg
    }

    pub fn rho_eg(&self) -> Complex64 {
        self.rho_eg
    }

    pub fn rho_ge(&self) -> Complex64 {
        self.rho_eg.conj()
    }

    pub fn trace(&self) -> f64 {
        self.rho_ee + self.rho_gg
    }

    /// Smallest eigenvalue-product test for a 2×2 Hermitian matrix.
    pub fn determinant(&self) -> f64 {
        self.rho_ee * self.rho_gg - self.rho_eg.norm_sqr()
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        if !(self.rho_ee.is_finite() && self.rho_gg.is_finite())
            || !(self.rho_eg.re.is_finite() && self.rho_eg.im.is_finite())
        {
            return Err(Error::InvalidDensity("non-finite entry"));
        }
        if libm::fabs(self.trace() - 1.0) > tol {
            return Err(Error::InvalidDensity("trace differs from one"));
        }
        let in_range = |p: f64| p >= -tol && p <= 1.0 + tol;
        if !in_range(self.rho_ee) || !in_range(self.rho_gg) {
            return Err(Error::InvalidDensity("population outside [0, 1]"));
        }
        if self.determinant() < -tol {
            return Err(Error::InvalidDensity("matrix is not positive semidefinite"));
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> Mat2 {
        [
            [Complex64::new(self.rho_ee, 0.0), self.rho_eg],
            [self.rho_eg.conj(), Complex64::new(self.rho_gg, 0.0)],
        ]
    }

    /// Reads the Hermitian part of `m`; the lower off-diagonal entry is ignored.
    pub fn from_matrix(m: &Mat2) -> Result<Self> {
        Self::new(m[0][0].re, m[1][1].re, m[0][1])
    }
}

/// Projects a one-excitation state onto the atom.
///
/// `|e,0⟩` and `|g,1⟩` differ in the photon number, so tracing out the field
/// removes every coherence between them.
pub fn density_from_state(psi: &StateVector) -> Result<QubitDensityMatrix> {
    if !psi.is_normalized(NORM_TOL) {
        return Err(Error::NotNormalized {
            norm_sqr: psi.norm_sqr(),
        });
    }
    Ok(QubitDensityMatrix::from_parts(
        psi.c_e.norm_sqr(),
        psi.c_g.norm_sqr(),
        ZERO,
    ))
}

/// The pair `A₁ = |g⟩⟨g| + f|e⟩⟨e|`, `A₂ = √(1−f²)|g⟩⟨e|` for real `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KrausPair {
    f: f64,
}

impl KrausPair {
    pub fn new(f: f64) -> Result<Self> {
        if !f.is_finite() || libm::fabs(f) > 1.0 {
            return Err(Error::NotTracePreserving { f });
        }
        Ok(Self { f })
    }

    pub fn f(&self) -> f64 {
        self.f
    }

    pub fn operators(&self) -> (Mat2, Mat2) {
        let s = libm::sqrt((1.0 - self.f * self.f).max(0.0));
        let a1 = [[Complex64::new(self.f, 0.0), ZERO], [ZERO, ONE]];
        let a2 = [[ZERO, ZERO], [Complex64::new(s, 0.0), ZERO]];
        (a1, a2)
    }

    /// `A₁†A₁ + A₂†A₂`, the identity up to rounding.
    pub fn completeness(&self) -> Mat2 {
        let (a1, a2) = self.operators();
        mat2_add(
            &mat2_mul(&mat2_dagger(&a1), &a1),
            &mat2_mul(&mat2_dagger(&a2), &a2),
        )
    }

    pub fn apply(&self, rho: &QubitDensityMatrix) -> QubitDensityMatrix {
        let f2 = self.f * self.f;
        QubitDensityMatrix::from_parts(
            f2 * rho.rho_ee,
            rho.rho_gg + (1.0 - f2) * rho.rho_ee,
            rho.rho_eg * self.f,
        )
    }
}

/// `ρ ↦ A₁ρA₁† + A₂ρA₂†` with the pair built from `f`.
pub fn apply_kraus_map(rho0: &QubitDensityMatrix, f: f64) -> Result<QubitDensityMatrix> {
    Ok(KrausPair::new(f)?.apply(rho0))
}

/// Half the trace norm of `ρ₁ − ρ₂`.
pub fn trace_distance(rho1: &QubitDensityMatrix, rho2: &QubitDensityMatrix) -> f64 {
    let p = rho1.rho_ee - rho2.rho_ee;
    let r = rho1.rho_gg - rho2.rho_gg;
    let q = rho1.rho_eg - rho2.rho_eg;
    // eigenvalues are mean ± radius
    let mean = 0.5 * (p + r);
    let half_diff = 0.5 * (p - r);
    let radius = libm::sqrt(half_diff * half_diff + q.norm_sqr());
    libm::fabs(mean).max(radius)
}
