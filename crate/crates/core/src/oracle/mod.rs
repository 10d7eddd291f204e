//! Shooting-method eigenvalue solver for the radial equation `F'' = W(r) F`.
//!
//! The solution is tracked through its modified Prüfer phase
//! `theta = atan2(k F, F')`, which obeys
//!
//! ```text
//! theta' = k cos^2(theta) - (W / k) sin^2(theta)
//! ```
//!
//! for any fixed `k > 0`. The phase never overflows, is independent of the
//! solution's amplitude, and passes through a multiple of `pi` exactly at each
//! node. At an eigenvalue with `n` nodes the outward and inward phases at the
//! match point differ by exactly `n pi`.

mod integrator;

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::dkp_yukawa::{potential_approx, potential_yukawa, NaturalParams, QuantumNumbers, RadialFunction, SpinorSet};
use crate::error::{Error, Result};

pub use integrator::{integrate, Tolerance};

/// Which radial equation to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Centrifugal and Coulomb-like terms replaced by their `a / sinh(a r)` forms.
    Approx,
    /// The Yukawa radial equation as it stands.
    Exact,
}

impl Variant {
    pub fn label(self) -> &'static str {
        match self {
            Variant::Approx => "approx",
            Variant::Exact => "exact",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub r_min: f64,
    /// Outer boundary. Raised per trial energy to at least `30 / eps(E)`,
    /// capped at `max_extension` times this value.
    pub r_max: f64,
    pub max_extension: f64,
    pub match_point: f64,
    /// Phase scale `k`.
    pub wavenumber: f64,
    pub rtol: f64,
    /// Integrator tolerance during the coarse energy scan.
    pub scan_rtol: f64,
    pub energy_tol: f64,
    pub max_bisections: usize,
    pub scan_points: usize,
}

impl OracleConfig {
    /// Defaults scaled to the level's unscreened Coulomb-like binding,
    /// `eps ~ m g / sqrt(nu^2 + g^2)`.
    pub fn for_level(np: &NaturalParams, qn: QuantumNumbers) -> Self {
        let eps = epsilon_estimate(np, qn);
        Self {
            r_min: 1e-6 / np.a,
            r_max: 30.0 / eps,
            max_extension: 100.0,
            match_point: 1.0 / eps,
            wavenumber: eps,
            rtol: 1e-12,
            scan_rtol: 1e-6,
            energy_tol: 1e-10 * np.m,
            max_bisections: 200,
            scan_points: 4000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = 0.0 < self.r_min
            && self.r_min < self.match_point
            && self.match_point < self.r_max
            && self.r_max.is_finite()
            && self.max_extension >= 1.0
            && self.wavenumber > 0.0
            && self.rtol > 0.0
            && self.scan_rtol > 0.0
            && self.energy_tol > 0.0
            && self.scan_points >= 2;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameters(format!("inconsistent oracle configuration: {self:?}")))
        }
    }
}

fn epsilon_estimate(np: &NaturalParams, qn: QuantumNumbers) -> f64 {
    let j = qn.j as f64 + 0.5;
    let delta = (j * j - np.g * np.g).max(0.0).sqrt();
    let nu = qn.n as f64 + 0.5 + delta;
    let eps = np.m * np.g / (nu * nu + np.g * np.g).sqrt();
    eps.max(1e-2 * np.m)
}

/// `W(r)` in `F'' = W F`.
pub fn rhs(variant: Variant, np: &NaturalParams, j: usize, e: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::DomainError(format!("radius must be positive, got {r}")));
    }
    Ok(w(variant, np, j as f64 * (j as f64 + 1.0), e, r))
}

fn w(variant: Variant, np: &NaturalParams, jj: f64, e: f64, r: f64) -> f64 {
    let NaturalParams { m, a, g } = *np;
    match variant {
        Variant::Approx => {
            let two_ar = 2.0 * a * r;
            let s = (-two_ar).exp();
            let q = s / -(-two_ar).exp_m1();
            let q1 = q / -(-two_ar).exp_m1();
            4.0 * a * a * jj * q1 - 4.0 * a * a * g * g * q * q - 4.0 * a * e * g * q + (m - e) * (m + e)
        }
        Variant::Exact => {
            let y = (-a * r).exp() / r;
            jj / (r * r) - g * g * y * y - 2.0 * e * g * y + (m - e) * (m + e)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootResult {
    /// `F'/F` (outward) minus `F'/F` (inward) at the match point.
    pub mismatch: f64,
    /// Outward phase minus inward phase at the match point; equals
    /// `node_count * pi` at an eigenvalue.
    pub phase_difference: f64,
    pub node_count: usize,
    pub converged: bool,
}

/// Initial `(F, F')` for both ends, up to arbitrary positive scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StartValues {
    pub outward: (f64, f64),
    pub inward: (f64, f64),
}

impl StartValues {
    /// Regular small-`r` behaviour `r^lambda (1 + c r)` with
    /// `lambda = 1/2 + delta`, and `e^{-eps r}` at the outer boundary.
    pub fn standard(np: &NaturalParams, j: usize, e: f64, r_min: f64) -> Self {
        let jf = j as f64 + 0.5;
        let lambda = 0.5 + (jf * jf - np.g * np.g).max(0.0).sqrt();
        let c = np.g * (np.a * np.g - e) / lambda;
        let (f, fp) = (1.0 + c * r_min, (lambda + c * (lambda + 1.0) * r_min) / r_min);
        let eps = ((np.m - e) * (np.m + e)).max(0.0).sqrt();
        Self { outward: (f, fp), inward: (1.0, -eps) }
    }

    pub fn scaled(self, factor: f64) -> Self {
        let s = |(f, fp): (f64, f64)| (factor * f, factor * fp);
        Self { outward: s(self.outward), inward: s(self.inward) }
    }
}

fn effective_r_max(np: &NaturalParams, e: f64, cfg: &OracleConfig) -> f64 {
    let eps = ((np.m - e) * (np.m + e)).max(0.0).sqrt();
    let wanted = if eps > 0.0 { 30.0 / eps } else { f64::INFINITY };
    wanted.clamp(cfg.r_max, cfg.r_max * cfg.max_extension)
}

pub fn shoot(variant: Variant, np: &NaturalParams, j: usize, e: f64, cfg: &OracleConfig) -> Result<ShootResult> {
    let start = StartValues::standard(np, j, e, cfg.r_min);
    shoot_with(variant, np, j, e, cfg, start, cfg.rtol)
}

/// [`shoot`] with explicit initial values and integrator tolerance.
pub fn shoot_with(
    variant: Variant,
    np: &NaturalParams,
    j: usize,
    e: f64,
    cfg: &OracleConfig,
    start: StartValues,
    rtol: f64,
) -> Result<ShootResult> {
    cfg.validate()?;
    let (theta_out, theta_in) = phases(variant, np, j, e, cfg, start, rtol)?;
    let k = cfg.wavenumber;
    let nodes = (theta_out / PI).floor() - (theta_in / PI).floor();
    let mismatch = k / theta_out.tan() - k / theta_in.tan();
    Ok(ShootResult {
        mismatch,
        phase_difference: theta_out - theta_in,
        node_count: nodes.max(0.0) as usize,
        converged: mismatch.is_finite(),
    })
}

fn phases(
    variant: Variant,
    np: &NaturalParams,
    j: usize,
    e: f64,
    cfg: &OracleConfig,
    start: StartValues,
    rtol: f64,
) -> Result<(f64, f64)> {
    let k = cfg.wavenumber;
    let jj = j as f64 * (j as f64 + 1.0);
    let r_max = effective_r_max(np, e, cfg);
    let rhs = |r: f64, theta: f64| {
        let (s, c) = theta.sin_cos();
        k * c * c - w(variant, np, jj, e, r) / k * s * s
    };
    let tol = Tolerance::new(rtol);
    let (f0, fp0) = start.outward;
    let out = integrate(rhs, cfg.r_min, (k * f0).atan2(fp0), cfg.match_point, cfg.r_min, tol)?;
    let (f1, fp1) = start.inward;
    let h_in = 1e-3 * (r_max - cfg.match_point);
    let inw = integrate(rhs, r_max, (k * f1).atan2(fp1), cfg.match_point, h_in, tol)?;
    Ok((out, inw))
}

/// Energy of the level with `qn.n` nodes, searched over `(-m, m)`.
pub fn find_level(variant: Variant, np: &NaturalParams, qn: QuantumNumbers, cfg: &OracleConfig) -> Result<f64> {
    cfg.validate()?;
    let none = Error::NoBoundState { n: qn.n, j: qn.j };
    let target = qn.n as f64 * PI;
    let m = np.m;
    let points = cfg.scan_points;
    // Cosine spacing resolves the level pile-up just below threshold.
    let energy_at = |i: usize| -m * (PI * (i + 1) as f64 / (points + 1) as f64).cos();

    let phase = |e: f64, rtol: f64| -> Option<f64> {
        let start = StartValues::standard(np, qn.j, e, cfg.r_min);
        phases(variant, np, qn.j, e, cfg, start, rtol).ok().map(|(o, i)| o - i - target)
    };
    let samples: Vec<Option<f64>> = (0..points).into_par_iter().map(|i| phase(energy_at(i), cfg.scan_rtol)).collect();

    let sign_change = |d0: f64, d1: f64| (d0 < 0.0) != (d1 < 0.0);
    let cells: Vec<usize> = (0..points.saturating_sub(1))
        .filter(|&i| matches!((samples[i], samples[i + 1]), (Some(d0), Some(d1)) if sign_change(d0, d1)))
        .collect();

    let mut found = Vec::new();
    for i in cells {
        // The coarse phase can misplace a crossing sitting right on a grid
        // point, so neighbouring cells are tried as well.
        let candidates = [(i, i + 1), (i.saturating_sub(1), i), (i + 1, (i + 2).min(points - 1))];
        let bracket = candidates.iter().filter(|(l, h)| l < h).find_map(|&(l, h)| {
            let (lo, hi) = (energy_at(l), energy_at(h));
            let (d_lo, d_hi) = (phase(lo, cfg.rtol)?, phase(hi, cfg.rtol)?);
            sign_change(d_lo, d_hi).then_some(((lo, d_lo), (hi, d_hi)))
        });
        let Some((lo, hi)) = bracket else { continue };
        let e = refine(|e| phase(e, cfg.rtol), lo, hi, cfg.energy_tol, cfg.max_bisections);
        let shot = shoot(variant, np, qn.j, e, cfg)?;
        if shot.node_count == qn.n && (shot.phase_difference - target).abs() < 0.5 * PI {
            found.push(e);
        }
    }
    found.dedup_by(|a, b| (*a - *b).abs() <= 10.0 * cfg.energy_tol);
    found.into_iter().reduce(f64::max).ok_or(none)
}

/// Illinois false position on a sign-changing bracket.
fn refine<F>(f: F, mut lo: (f64, f64), mut hi: (f64, f64), tol: f64, max_iter: usize) -> f64
where
    F: Fn(f64) -> Option<f64>,
{
    let mut side = 0i8;
    let mut prev = f64::NAN;
    for _ in 0..max_iter {
        let mut c = (lo.0 * hi.1 - hi.0 * lo.1) / (hi.1 - lo.1);
        if !(c > lo.0 && c < hi.0) {
            c = 0.5 * (lo.0 + hi.0);
        }
        if hi.0 - lo.0 <= tol || (c - prev).abs() <= 0.1 * tol {
            return c;
        }
        prev = c;
        let Some(fc) = f(c) else { return c };
        if fc == 0.0 {
            return c;
        }
        if (fc < 0.0) == (hi.1 < 0.0) {
            hi = (c, fc);
            if side == -1 {
                lo.1 *= 0.5;
            }
            side = -1;
        } else {
            lo = (c, fc);
            if side == 1 {
                hi.1 *= 0.5;
            }
            side = 1;
        }
    }
    0.5 * (lo.0 + hi.0)
}

/// Uniform grid on `[0.01/eps, 10/eps]`.
pub fn default_grid(epsilon: f64, points: usize) -> Vec<f64> {
    let (lo, hi) = (0.01 / epsilon, 10.0 / epsilon);
    (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect()
}

/// `max |F'' - W F| / max |F''|` over the grid; 0 when `F''` vanishes.
pub fn ode_residual(variant: Variant, f: &RadialFunction, np: &NaturalParams, j: usize, e: f64, grid: &[f64]) -> f64 {
    let jj = j as f64 * (j as f64 + 1.0);
    let (mut defect, mut scale) = (0.0f64, 0.0f64);
    for &r in grid {
        let [v, _, v2] = f.all(r);
        defect = defect.max((v2 - w(variant, np, jj, e, r) * v).abs());
        scale = scale.max(v2.abs());
    }
    if scale == 0.0 {
        0.0
    } else {
        defect / scale
    }
}

/// Defect of the fourth first-order DKP equation,
/// `-alpha_J (d/dr + (J+1)/r) H+ - sigma_J (d/dr - J/r) H- - m F + (E - U) G`,
/// evaluated with the bare Yukawa `U` and scaled by `max |F''| / m`.
pub fn system_residual(sp: &SpinorSet, grid: &[f64]) -> Result<f64> {
    let NaturalParams { m, .. } = sp.np;
    let j = sp.j as f64;
    let e = sp.energy;
    let (mut defect, mut scale) = (0.0f64, 0.0f64);
    for &r in grid {
        let [f, f1, f2] = sp.f.all(r);
        let u = potential_yukawa(&sp.np, r)?;
        let g = (e - potential_approx(&sp.np, r)?) * f / m;
        let hp = -(sp.alpha_j / m) * (f1 - (j + 1.0) * f / r);
        let hp1 = -(sp.alpha_j / m) * (f2 - (j + 1.0) * f1 / r + (j + 1.0) * f / (r * r));
        let hm = -(sp.sigma_j / m) * (f1 + j * f / r);
        let hm1 = -(sp.sigma_j / m) * (f2 + j * f1 / r - j * f / (r * r));
        let d = -sp.alpha_j * (hp1 + (j + 1.0) * hp / r) - sp.sigma_j * (hm1 - j * hm / r) - m * f + (e - u) * g;
        defect = defect.max(d.abs());
        scale = scale.max(f2.abs() / m);
    }
    Ok(if scale == 0.0 { 0.0 } else { defect / scale })
}
