//! Radial wavefunction and spinor components.
//!
//! Every radial form handled here has the shape
//!
//! ```text
//! F(r) = N e^{-kappa r} (1 - s)^d P_n^(alpha, beta)(1 - 2s),   s = e^{-2ar}
//! ```
//!
//! with `d = 1/2 + delta` and `beta = 2 delta`. Derivatives are analytic:
//! with `L = -kappa + 2ad s/(1-s)` the logarithmic derivative of the
//! prefactor and `y = P(1 - 2s)`,
//!
//! ```text
//! F'  = N phi (L y + y')
//! F'' = N phi ((L^2 + L') y + 2 L y' + y'')
//! ```

use crate::error::{Error, Result};
use crate::nu_engine::EigenMode;
use crate::specfun::jacobi_with_derivatives_one_minus_2u;

use super::{potential_approx, EnergyLevel, NaturalParams, Spectrum};

/// Exponential prefactor and Jacobi parameter of a radial form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialShape {
    /// `e^{-eps r}` with `P^(eps/a, 2 delta)`, the normalizable solution.
    Physical,
    /// `e^{-eps r}` with `P^(-eps/a, 2 delta)`, as the paper spectrum's
    /// wavefunction is usually written.
    PaperPrinted,
    /// `s^{-eps/2a} = e^{+eps r}` with `P^(-eps/a, 2 delta)`, the form implied
    /// by the paper spectrum's own NU constants. Grows without bound.
    PaperExponent,
}

/// Anything that can be squared and integrated over `(0, inf)`.
pub trait RadialProfile {
    fn value(&self, r: f64) -> f64;
    /// Characteristic decay rate; the integral is truncated at `27.7 / rate`.
    fn decay_rate(&self) -> f64;
}

/// Evaluator for `F` in natural units (`r` in MeV^-1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialFunction {
    pub n: usize,
    pub kappa: f64,
    pub a: f64,
    pub d: f64,
    pub alpha: f64,
    pub beta: f64,
    pub norm: f64,
    /// Positive decay rate used to size integration ranges.
    pub epsilon: f64,
}

impl RadialFunction {
    fn parts(&self, r: f64) -> (f64, f64, f64, f64) {
        let two_ar = 2.0 * self.a * r;
        let s = (-two_ar).exp();
        let oms = -(-two_ar).exp_m1();
        let phi = self.norm * (-self.kappa * r + self.d * oms.ln()).exp();
        (s, oms, phi, two_ar)
    }

    pub fn value(&self, r: f64) -> f64 {
        self.all(r)[0]
    }

    pub fn derivative(&self, r: f64) -> f64 {
        self.all(r)[1]
    }

    pub fn second_derivative(&self, r: f64) -> f64 {
        self.all(r)[2]
    }

    /// `[F, F', F'']` at `r`.
    pub fn all(&self, r: f64) -> [f64; 3] {
        let (s, oms, phi, _) = self.parts(r);
        if phi == 0.0 {
            return [0.0; 3];
        }
        // Parameters were validated at construction, so no pole is reachable.
        let [p, dp, d2p] =
            jacobi_with_derivatives_one_minus_2u(self.n, self.alpha, self.beta, s).unwrap_or([f64::NAN; 3]);
        let a = self.a;
        let xp = 4.0 * a * s;
        let xpp = -8.0 * a * a * s;
        let y = p;
        let y1 = dp * xp;
        let y2 = d2p * xp * xp + dp * xpp;
        let q = s / oms;
        let l = -self.kappa + 2.0 * a * self.d * q;
        let lp = -4.0 * a * a * self.d * q / oms;
        [phi * y, phi * (l * y + y1), phi * ((l * l + lp) * y + 2.0 * l * y1 + y2)]
    }

    pub fn with_norm(mut self, norm: f64) -> Self {
        self.norm = norm;
        self
    }
}

impl RadialProfile for RadialFunction {
    fn value(&self, r: f64) -> f64 {
        RadialFunction::value(self, r)
    }

    fn decay_rate(&self) -> f64 {
        self.epsilon
    }
}

/// Unnormalized (`norm = 1`) radial function of the requested shape.
///
/// In strict mode the paper shapes are rejected whenever their Jacobi
/// parameter `-eps/a` is not above -1.
pub fn radial_f_with_shape(
    level: &EnergyLevel,
    np: &NaturalParams,
    shape: RadialShape,
    mode: EigenMode,
) -> Result<RadialFunction> {
    let ratio = level.epsilon / np.a;
    let (kappa, alpha) = match shape {
        RadialShape::Physical => (level.epsilon, ratio),
        RadialShape::PaperPrinted => (level.epsilon, -ratio),
        RadialShape::PaperExponent => (-level.epsilon, -ratio),
    };
    if mode == EigenMode::Strict && alpha <= -1.0 {
        return Err(Error::ConstraintViolation(format!("Jacobi parameter {alpha} is not above -1")));
    }
    let f = RadialFunction {
        n: level.qn.n,
        kappa,
        a: np.a,
        d: 0.5 + level.delta,
        alpha,
        beta: 2.0 * level.delta,
        norm: 1.0,
        epsilon: level.epsilon,
    };
    jacobi_with_derivatives_one_minus_2u(f.n, f.alpha, f.beta, 0.5)?;
    Ok(f)
}

/// Normalized radial function for the level's own spectrum: the physical
/// shape for physical levels, the printed shape for paper levels.
pub fn radial_f(level: &EnergyLevel, np: &NaturalParams, mode: EigenMode) -> Result<RadialFunction> {
    let shape = match level.spectrum() {
        Spectrum::Physical => RadialShape::Physical,
        Spectrum::Paper => RadialShape::PaperPrinted,
    };
    let f = radial_f_with_shape(level, np, shape, mode)?;
    let norm = normalize(&f)?;
    Ok(f.with_norm(norm))
}

const TRUNCATION: f64 = 27.7;
const PANELS: usize = 64;
const PEAK_SAMPLES: usize = 4000;
const MAX_EXTENSIONS: usize = 6;

/// Constant `N` with `int_0^inf (N F)^2 dr = 1`.
///
/// The integral starts out truncated at `27.7 / decay_rate`; the range is
/// extended while the tail is still above `1e-8` of the peak but decaying.
/// Profiles whose tail does not decay are rejected.
pub fn normalize<P: RadialProfile + ?Sized>(profile: &P) -> Result<f64> {
    let rate = profile.decay_rate();
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(Error::DivergentNorm(format!("decay rate {rate} is not positive")));
    }
    let mut r_max = TRUNCATION / rate;
    let mut peak = 0.0f64;
    for extension in 0..=MAX_EXTENSIONS {
        peak = 0.0;
        let mut tail = 0.0f64;
        for i in 1..=PEAK_SAMPLES {
            let r = r_max * i as f64 / PEAK_SAMPLES as f64;
            let v = profile.value(r).abs();
            if !v.is_finite() {
                return Err(Error::DivergentNorm(format!("non-finite value at r = {r}")));
            }
            peak = peak.max(v);
            if r >= 0.95 * r_max {
                tail = tail.max(v);
            }
        }
        if peak == 0.0 {
            return Err(Error::DivergentNorm("profile vanishes identically".into()));
        }
        if tail <= 1e-8 * peak {
            break;
        }
        let (near, far) = (profile.value(0.9 * r_max).abs(), profile.value(r_max).abs());
        if !(far < 0.5 * near) || extension == MAX_EXTENSIONS {
            return Err(Error::DivergentNorm(format!("tail {tail:e} does not decay against peak {peak:e}")));
        }
        r_max *= 1.5;
    }
    let integrand = |r: f64| {
        let v = profile.value(r) / peak;
        v * v
    };
    let width = r_max / PANELS as f64;
    let panel_sum = |target: f64| -> f64 {
        (0..PANELS)
            .map(|k| {
                let lo = k as f64 * width;
                quadrature::integrate(integrand, lo, lo + width, target / PANELS as f64).integral
            })
            .sum()
    };
    let rough = panel_sum(1e-8 * r_max);
    let total = panel_sum(1e-14 * rough);
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::DivergentNorm(format!("norm integral is {total}")));
    }
    Ok(1.0 / (peak * total.sqrt()))
}

/// Spinor components derived from a normalized `F` through the first-order
/// DKP equations. Natural units throughout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorSet {
    pub f: RadialFunction,
    pub energy: f64,
    pub np: NaturalParams,
    pub j: usize,
    pub alpha_j: f64,
    pub sigma_j: f64,
    pub norm_constant: f64,
}

/// All four components at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorSample {
    pub r: f64,
    pub f: f64,
    pub g: f64,
    pub h_plus: f64,
    pub h_minus: f64,
}

pub fn spinors(level: &EnergyLevel, np: &NaturalParams, mode: EigenMode) -> Result<SpinorSet> {
    let f = radial_f(level, np, mode)?;
    let j = level.qn.j as f64;
    Ok(SpinorSet {
        f,
        energy: level.energy,
        np: *np,
        j: level.qn.j,
        alpha_j: ((j + 1.0) / (2.0 * j + 1.0)).sqrt(),
        sigma_j: (j / (2.0 * j + 1.0)).sqrt(),
        norm_constant: f.norm,
    })
}

impl SpinorSet {
    pub fn f(&self, r: f64) -> f64 {
        self.f.value(r)
    }

    /// `(E - U(r)) F / m` with the approximated potential.
    pub fn g(&self, r: f64) -> Result<f64> {
        let u = potential_approx(&self.np, r)?;
        Ok((self.energy - u) * self.f.value(r) / self.np.m)
    }

    /// `-(alpha_J / m)(F' - (J+1) F / r)`
    pub fn h_plus(&self, r: f64) -> Result<f64> {
        let [f, fp, _] = self.checked(r)?;
        Ok(-(self.alpha_j / self.np.m) * (fp - (self.j as f64 + 1.0) * f / r))
    }

    /// `-(sigma_J / m)(F' + J F / r)`
    pub fn h_minus(&self, r: f64) -> Result<f64> {
        let [f, fp, _] = self.checked(r)?;
        Ok(-(self.sigma_j / self.np.m) * (fp + self.j as f64 * f / r))
    }

    pub fn sample(&self, r: f64) -> Result<SpinorSample> {
        Ok(SpinorSample { r, f: self.f(r), g: self.g(r)?, h_plus: self.h_plus(r)?, h_minus: self.h_minus(r)? })
    }

    /// Components at `r_fm` femtometres.
    pub fn sample_fm(&self, r_fm: f64, hbar_c: f64) -> Result<SpinorSample> {
        let s = self.sample(r_fm / hbar_c)?;
        Ok(SpinorSample { r: r_fm, ..s })
    }

    fn checked(&self, r: f64) -> Result<[f64; 3]> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::DomainError(format!("radius must be positive and finite, got {r}")));
        }
        Ok(self.f.all(r))
    }
}
