//! Spin-0 DKP particle in a time-like vector Yukawa potential.
//!
//! With a pure vector potential the upper radial component `F` obeys the
//! Klein–Gordon radial equation
//!
//! ```text
//! F'' - J(J+1)/r^2 F + (E - U(r))^2 F - m^2 F = 0,   U(r) = -g e^{-a r} / r
//! ```
//!
//! Replacing `1/r` by `a / sinh(a r)` (and `1/r^2` by its square) turns this
//! into a Hulthén-type problem that maps, under `s = e^{-2 a r}`, onto the NU
//! template with `c1 = c2 = c3 = 1`.
//!
//! All formulas work in natural units (`hbar = c = 1`, energies in MeV,
//! lengths in MeV^-1). [`PhysicalParams`] carries the user-facing MeV / fm
//! inputs; [`natural_units`] converts them.

mod potential;
mod spectrum;
mod wavefunction;

pub use potential::{potential_approx, potential_yukawa, screening_ratio};
pub use spectrum::{
    energy, energy_equation_sides, energy_paper, energy_physical, level_count, s_wave_energy, s_wave_energy_equation,
    EnergyLevel, Spectrum,
};
pub use wavefunction::{
    normalize, radial_f, radial_f_with_shape, spinors, RadialFunction, RadialProfile, RadialShape, SpinorSample,
    SpinorSet,
};

use crate::error::{Error, Result};
use crate::nu_engine::NuProblem;

/// `hbar c` in MeV fm.
pub const HBAR_C_MEV_FM: f64 = 197.3269804;

/// Inputs in laboratory units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    /// Particle mass, MeV.
    pub mass: f64,
    /// Potential strength `U0`, MeV fm.
    pub coupling: f64,
    /// Screening parameter `a`, fm^-1.
    pub screening: f64,
    /// Conversion constant, MeV fm.
    pub hbar_c: f64,
}

impl PhysicalParams {
    pub fn new(mass: f64, coupling: f64, screening: f64, hbar_c: f64) -> Result<Self> {
        let p = Self { mass, coupling, screening, hbar_c };
        p.validate()?;
        Ok(p)
    }

    /// `m = 938 MeV`, `U0 = 67.54 MeV fm` at the given screening.
    pub fn reference(screening: f64) -> Self {
        Self { mass: 938.0, coupling: 67.54, screening, hbar_c: HBAR_C_MEV_FM }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v.is_finite();
        if !(ok(self.mass) && self.mass > 0.0) {
            return Err(Error::InvalidParameters(format!("mass must be > 0, got {}", self.mass)));
        }
        if !(ok(self.screening) && self.screening > 0.0) {
            return Err(Error::InvalidParameters(format!("screening must be > 0, got {}", self.screening)));
        }
        if !(ok(self.hbar_c) && self.hbar_c > 0.0) {
            return Err(Error::InvalidParameters(format!("hbar_c must be > 0, got {}", self.hbar_c)));
        }
        if !(ok(self.coupling) && self.coupling >= 0.0) {
            return Err(Error::InvalidParameters(format!("coupling must be >= 0, got {}", self.coupling)));
        }
        Ok(())
    }
}

/// Natural-unit triple consumed by every formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaturalParams {
    /// Mass, MeV.
    pub m: f64,
    /// Screening `a hbar c`, MeV.
    pub a: f64,
    /// Dimensionless coupling `U0 / hbar c`.
    pub g: f64,
}

impl NaturalParams {
    pub fn new(m: f64, a: f64, g: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0 && a.is_finite() && a > 0.0 && g.is_finite() && g >= 0.0) {
            return Err(Error::InvalidParameters(format!("need m > 0, a > 0, g >= 0 (m={m}, a={a}, g={g})")));
        }
        Ok(Self { m, a, g })
    }

    pub fn to_physical(&self, hbar_c: f64) -> PhysicalParams {
        PhysicalParams { mass: self.m, coupling: self.g * hbar_c, screening: self.a / hbar_c, hbar_c }
    }

    /// `r` in fm to natural length (MeV^-1).
    pub fn fm_to_natural(r_fm: f64, hbar_c: f64) -> f64 {
        r_fm / hbar_c
    }
}

pub fn natural_units(p: &PhysicalParams) -> NaturalParams {
    NaturalParams { m: p.mass, a: p.screening * p.hbar_c, g: p.coupling / p.hbar_c }
}

/// Radial quantum number `n` and total angular momentum `J`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuantumNumbers {
    pub n: usize,
    pub j: usize,
}

impl QuantumNumbers {
    pub fn new(n: usize, j: usize) -> Self {
        Self { n, j }
    }
}

/// `delta = sqrt((J + 1/2)^2 - g^2)`.
pub fn delta(np: &NaturalParams, j: usize) -> Result<f64> {
    let limit = j as f64 + 0.5;
    if np.g > limit {
        return Err(Error::SupercriticalCoupling { g: np.g, limit });
    }
    Ok(((limit - np.g) * (limit + np.g)).sqrt())
}

/// Coefficients of the s-variable equation mapped onto the NU template.
pub fn nu_problem(np: &NaturalParams, j: usize, e: f64) -> NuProblem {
    let NaturalParams { m, a, g } = *np;
    let eps2_4a2 = (m - e) * (m + e) / (4.0 * a * a);
    let eg_a = e * g / a;
    let jj = (j * (j + 1)) as f64;
    NuProblem { c1: 1.0, c2: 1.0, c3: 1.0, p2: -g * g + eg_a + eps2_4a2, p1: -jj + eg_a + 2.0 * eps2_4a2, p0: eps2_4a2 }
}
