//! Closed-form energy levels.
//!
//! Writing `nu = n + 1/2 + delta`, `A = a (nu + g^2/nu)` and `B = g/nu`, the
//! two NU branches for this problem reduce to linear relations between `E`
//! and `eps = sqrt(m^2 - E^2)`:
//!
//! ```text
//! paper    (branch two):  eps = A - B E
//! physical (branch one):  eps = B E - A
//! ```
//!
//! Squaring either gives `(1 + B^2) E^2 - 2 A B E + A^2 - m^2 = 0`. The paper
//! spectrum is the lower root and the physical spectrum the upper one; each
//! is kept only if its own `eps` comes out positive with `|E| < m`.

use crate::error::{Error, Result};
use crate::nu_engine::{derive_constants, Branch};

use super::{delta, nu_problem, NaturalParams, QuantumNumbers};

/// Which closed-form spectrum to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spectrum {
    /// Negative-energy levels tabulated in the literature (NU branch two).
    Paper,
    /// Normalizable positive-energy levels (NU branch one).
    Physical,
}

impl Spectrum {
    pub fn branch(self) -> Branch {
        match self {
            Spectrum::Paper => Branch::Two,
            Spectrum::Physical => Branch::One,
        }
    }

    pub fn from_branch(branch: Branch) -> Self {
        match branch {
            Branch::Two => Spectrum::Paper,
            Branch::One => Spectrum::Physical,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Spectrum::Paper => "paper",
            Spectrum::Physical => "physical",
        }
    }
}

/// One bound state. Energies in MeV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub qn: QuantumNumbers,
    pub branch: Branch,
    pub energy: f64,
    /// `sqrt(m^2 - E^2)`
    pub epsilon: f64,
    pub nu: f64,
    pub delta: f64,
    /// Quantization residual of the branch, in MeV.
    pub residual: f64,
}

impl EnergyLevel {
    pub fn spectrum(&self) -> Spectrum {
        Spectrum::from_branch(self.branch)
    }

    pub fn binding(&self, m: f64) -> f64 {
        m - self.energy
    }
}

pub fn energy_paper(np: &NaturalParams, qn: QuantumNumbers) -> Result<EnergyLevel> {
    energy(np, qn, Spectrum::Paper)
}

pub fn energy_physical(np: &NaturalParams, qn: QuantumNumbers) -> Result<EnergyLevel> {
    energy(np, qn, Spectrum::Physical)
}

pub fn energy(np: &NaturalParams, qn: QuantumNumbers, spectrum: Spectrum) -> Result<EnergyLevel> {
    let NaturalParams { m, a, g } = *np;
    let dl = delta(np, qn.j)?;
    let none = Error::NoBoundState { n: qn.n, j: qn.j };
    if g == 0.0 {
        return Err(none);
    }
    let nu = qn.n as f64 + 0.5 + dl;
    let big_a = a * (nu + g * g / nu);
    let big_b = g / nu;
    let q = 1.0 + big_b * big_b;
    let disc = m * m * q - big_a * big_a;
    if !(disc >= 0.0) {
        return Err(none);
    }
    let root = disc.sqrt();
    let (e, eps_linear) = match spectrum {
        Spectrum::Paper => {
            let e = (big_a * big_b - root) / q;
            (e, big_a - big_b * e)
        }
        Spectrum::Physical => {
            let e = (big_a * big_b + root) / q;
            (e, big_b * e - big_a)
        }
    };
    if !(eps_linear > 0.0 && e.abs() < m) {
        return Err(none);
    }
    let epsilon = ((m - e) * (m + e)).sqrt();
    let branch = spectrum.branch();
    let residual =
        derive_constants(&nu_problem(np, qn.j, e), branch).quantization_residual(qn.n).map_err(|_| none.clone())? * a
            / nu;
    if !(residual.abs() <= 1e-10 * m) {
        return Err(none);
    }
    Ok(EnergyLevel { qn, branch, energy: e, epsilon, nu, delta: dl, residual })
}

/// Both sides of the energy equation at trial energy `e`:
/// `(nu -+ eps/2a)^2` and `m^2/4a^2 - (E/2a - g)^2`, with the minus sign for
/// the paper spectrum and the plus sign for the physical one.
pub fn energy_equation_sides(np: &NaturalParams, qn: QuantumNumbers, e: f64, spectrum: Spectrum) -> Result<(f64, f64)> {
    let NaturalParams { m, a, g } = *np;
    if !(e.abs() <= m) {
        return Err(Error::DomainError(format!("|E| = {} exceeds m = {m}", e.abs())));
    }
    let nu = qn.n as f64 + 0.5 + delta(np, qn.j)?;
    let half = ((m - e) * (m + e)).sqrt() / (2.0 * a);
    let bracket = match spectrum {
        Spectrum::Paper => nu - half,
        Spectrum::Physical => nu + half,
    };
    let t = e / (2.0 * a) - g;
    Ok((bracket * bracket, m * m / (4.0 * a * a) - t * t))
}

/// The `J = 0` energy equation written out term by term, as
/// `[n + 1/2 + (sqrt(1/4 - g^2) - sqrt(m^2 - E^2)/2a)]^2 - m^2/4a^2 + (E/2a - g)^2`.
pub fn s_wave_energy_equation(np: &NaturalParams, n: usize, e: f64) -> f64 {
    let NaturalParams { m, a, g } = *np;
    let lhs = n as f64 + 0.5 + ((0.25 - g * g).sqrt() - (m * m - e * e).sqrt() / (2.0 * a));
    let t = e / (2.0 * a) - g;
    lhs * lhs - (m * m / (4.0 * a * a) - t * t)
}

/// Lowest root of [`s_wave_energy_equation`] in `(-m, m)`, refined by
/// bisection until the bracket stops shrinking.
pub fn s_wave_energy(np: &NaturalParams, n: usize) -> Result<f64> {
    const GRID: usize = 4096;
    let m = np.m;
    if np.g > 0.5 {
        return Err(Error::SupercriticalCoupling { g: np.g, limit: 0.5 });
    }
    let f = |e: f64| s_wave_energy_equation(np, n, e);
    let step = 2.0 * m / GRID as f64;
    let mut lo = -m;
    let mut f_lo = f(lo);
    for i in 1..=GRID {
        let hi = if i == GRID { m } else { -m + i as f64 * step };
        let f_hi = f(hi);
        if f_lo == 0.0 {
            return Ok(lo);
        }
        if f_lo.signum() != f_hi.signum() {
            let (mut lo, mut hi, mut f_lo) = (lo, hi, f_lo);
            loop {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    return Ok(mid);
                }
                let f_mid = f(mid);
                if f_mid == 0.0 {
                    return Ok(mid);
                }
                if f_mid.signum() == f_lo.signum() {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
        }
        lo = hi;
        f_lo = f_hi;
    }
    Err(Error::NoBoundState { n, j: 0 })
}

/// Number of consecutive levels `n = 0, 1, ...` the spectrum supports at
/// angular momentum `j`.
pub fn level_count(np: &NaturalParams, j: usize, spectrum: Spectrum) -> usize {
    const CAP: usize = 1 << 20;
    (0..CAP).find(|&n| energy(np, QuantumNumbers::new(n, j), spectrum).is_err()).unwrap_or(CAP)
}
