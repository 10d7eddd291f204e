//! Parametric Nikiforov–Uvarov solver.
//!
//! Works on second-order equations of the template
//!
//! ```text
//! psi'' + (c1 - c2 s) / (s (1 - c3 s)) psi'
//!       + (-p2 s^2 + p1 s - p0) / (s^2 (1 - c3 s)^2) psi = 0
//! ```
//!
//! The derived constants `c4..c9` are shared by both k-roots; `c10..c13`
//! depend on the branch. Neither branch is preferred here: validity
//! violations are reported as flags and callers choose what to do with them.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::specfun;

/// Coefficients of the generalized hypergeometric-type equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuProblem {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub p0: f64,
    pub p1: f64,
    pub p2: f64,
}

impl NuProblem {
    pub fn new(c1: f64, c2: f64, c3: f64, p0: f64, p1: f64, p2: f64) -> Self {
        Self { c1, c2, c3, p0, p1, p2 }
    }

    /// Coefficient of `psi'` at `s`.
    pub fn first_order_coefficient(&self, s: f64) -> f64 {
        (self.c1 - self.c2 * s) / (s * (1.0 - self.c3 * s))
    }

    /// Coefficient of `psi` at `s`.
    pub fn zeroth_order_coefficient(&self, s: f64) -> f64 {
        let w = 1.0 - self.c3 * s;
        (-self.p2 * s * s + self.p1 * s - self.p0) / (s * s * w * w)
    }
}

/// The two roots of the NU `k` quadratic.
///
/// `One`: `k = -(c7 + 2 c3 c8) - 2 sqrt(c8 c9)`, exponent `c12 = c4 + sqrt(c8)`.
/// `Two`: `k = -(c7 + 2 c3 c8) + 2 sqrt(c8 c9)`, exponent `c12 = c4 - sqrt(c8)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    One,
    Two,
}

impl Branch {
    /// Sign multiplying `sqrt(c8)` throughout the branch's formulas.
    fn sign(self) -> f64 {
        match self {
            Branch::One => 1.0,
            Branch::Two => -1.0,
        }
    }
}

/// Which constraints of the branch hold for a given problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Validity {
    pub c8_nonnegative: bool,
    pub c9_nonnegative: bool,
    pub c10_above_minus_one: bool,
    /// Always true when `c3 = 0` (the constant does not exist there).
    pub c11_above_minus_one: bool,
    pub c12_positive: bool,
    /// Always true when `c3 = 0`.
    pub c13_positive: bool,
}

impl Validity {
    pub fn roots_real(&self) -> bool {
        self.c8_nonnegative && self.c9_nonnegative
    }

    pub fn all(&self) -> bool {
        self.roots_real()
            && self.c10_above_minus_one
            && self.c11_above_minus_one
            && self.c12_positive
            && self.c13_positive
    }

    fn violations(&self) -> Vec<&'static str> {
        let checks = [
            (self.c8_nonnegative, "c8 >= 0"),
            (self.c9_nonnegative, "c9 >= 0"),
            (self.c10_above_minus_one, "c10 > -1"),
            (self.c11_above_minus_one, "c11 > -1"),
            (self.c12_positive, "c12 > 0"),
            (self.c13_positive, "c13 > 0"),
        ];
        checks.iter().filter(|(ok, _)| !ok).map(|(_, name)| *name).collect()
    }
}

/// Derived NU constants for one branch. `c11` and `c13` are `None` when
/// `c3 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NuConstants {
    pub problem: NuProblem,
    pub branch: Branch,
    pub c4: f64,
    pub c5: f64,
    pub c6: f64,
    pub c7: f64,
    pub c8: f64,
    pub c9: f64,
    pub c10: f64,
    pub c11: Option<f64>,
    pub c12: f64,
    pub c13: Option<f64>,
    pub validity: Validity,
}

pub fn derive_constants(problem: &NuProblem, branch: Branch) -> NuConstants {
    let NuProblem { c1, c2, c3, p0, p1, p2 } = *problem;
    let c4 = 0.5 * (1.0 - c1);
    let c5 = 0.5 * (c2 - 2.0 * c3);
    let c6 = c5 * c5 + p2;
    let c7 = 2.0 * c4 * c5 - p1;
    let c8 = c4 * c4 + p0;
    let c9 = c3 * (c7 + c3 * c8) + c6;

    let sign = branch.sign();
    let (r8, r9) = (c8.sqrt(), c9.sqrt());
    let c10 = sign * 2.0 * r8;
    let c12 = c4 + sign * r8;
    let (c11, c13) = if c3 != 0.0 { (Some(2.0 * r9 / c3), Some(-c4 + (r9 - c5) / c3)) } else { (None, None) };

    let validity = Validity {
        c8_nonnegative: c8 >= 0.0,
        c9_nonnegative: c9 >= 0.0,
        c10_above_minus_one: c10 > -1.0,
        c11_above_minus_one: c11.is_none_or(|v| v > -1.0),
        c12_positive: c12 > 0.0,
        c13_positive: c13.is_none_or(|v| v > 0.0),
    };

    NuConstants { problem: *problem, branch, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13, validity }
}

impl NuConstants {
    /// Left-hand side of the branch's energy equation; zero at an eigenvalue.
    pub fn quantization_residual(&self, n: usize) -> Result<f64> {
        if !self.validity.roots_real() {
            return Err(Error::InvalidConstants(format!(
                "square roots are imaginary (c8 = {}, c9 = {})",
                self.c8, self.c9
            )));
        }
        let NuProblem { c2, c3, .. } = self.problem;
        let sign = self.branch.sign();
        let nf = n as f64;
        let (r8, r9) = (self.c8.sqrt(), self.c9.sqrt());
        Ok(nf * c2 - (2.0 * nf + 1.0) * self.c5
            + (2.0 * nf + 1.0) * (r9 + sign * c3 * r8)
            + nf * (nf - 1.0) * c3
            + self.c7
            + 2.0 * c3 * self.c8
            + sign * 2.0 * (self.c8 * self.c9).sqrt())
    }
}

pub fn quantization_residual(consts: &NuConstants, n: usize) -> Result<f64> {
    consts.quantization_residual(n)
}

/// Sampling and bisection settings for [`solve_quantization`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootScan {
    pub samples: usize,
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for RootScan {
    fn default() -> Self {
        Self { samples: 2000, tol: 1e-10, max_iterations: 400 }
    }
}

/// All roots of the branch's quantization condition for an
/// energy-dependent family of problems, in ascending order.
///
/// The bracket is sampled uniformly; each sign change between two valid
/// samples is refined by bisection.
pub fn solve_quantization<F>(
    family: F,
    branch: Branch,
    n: usize,
    bracket: (f64, f64),
    scan: RootScan,
) -> Result<Vec<f64>>
where
    F: Fn(f64) -> NuProblem + Sync,
{
    let (lo, hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo < hi && scan.samples >= 2) {
        return Err(Error::InvalidParameters(format!("bad bracket [{lo}, {hi}]")));
    }
    let residual = |e: f64| -> Option<f64> {
        derive_constants(&family(e), branch).quantization_residual(n).ok().filter(|r| r.is_finite())
    };

    let step = (hi - lo) / (scan.samples - 1) as f64;
    let samples: Vec<(f64, Option<f64>)> = (0..scan.samples)
        .into_par_iter()
        .map(|i| {
            let e = if i + 1 == scan.samples { hi } else { lo + i as f64 * step };
            (e, residual(e))
        })
        .collect();

    let mut roots = Vec::new();
    for pair in samples.windows(2) {
        let ((e0, r0), (e1, r1)) = (pair[0], pair[1]);
        let (Some(r0), Some(r1)) = (r0, r1) else { continue };
        if r0 == 0.0 {
            roots.push(e0);
        } else if r0.signum() != r1.signum() && r1 != 0.0 {
            roots.push(bisect(&residual, (e0, r0), (e1, r1), scan));
        }
    }
    if let Some(&(e, Some(r))) = samples.last() {
        if r == 0.0 {
            roots.push(e);
        }
    }

    if roots.is_empty() {
        Err(Error::NoRoot { lo, hi })
    } else {
        Ok(roots)
    }
}

fn bisect<F>(residual: &F, mut lo: (f64, f64), mut hi: (f64, f64), scan: RootScan) -> f64
where
    F: Fn(f64) -> Option<f64>,
{
    for _ in 0..scan.max_iterations {
        let mid = 0.5 * (lo.0 + hi.0);
        if mid <= lo.0 || mid >= hi.0 {
            break;
        }
        let Some(r) = residual(mid) else { break };
        if r == 0.0 {
            return mid;
        }
        if r.signum() == lo.1.signum() {
            lo = (mid, r);
        } else {
            hi = (mid, r);
        }
        let best = if lo.1.abs() <= hi.1.abs() { lo } else { hi };
        if hi.0 - lo.0 <= scan.tol * best.0.abs().max(1.0) && best.1.abs() <= scan.tol {
            return best.0;
        }
    }
    if lo.1.abs() <= hi.1.abs() {
        lo.0
    } else {
        hi.0
    }
}

/// Whether [`build_eigenfunction`] refuses constants that violate the
/// branch's constraints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenMode {
    Strict,
    /// Evaluate whatever the formulas give; violations stay recorded in the
    /// constants' validity flags.
    AsPrinted,
}

/// Unnormalized NU eigenfunction in the template variable `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Eigenfunction {
    /// `s^c12 (1 - c3 s)^c13 P_n^(c10, c11)(1 - 2 c3 s)`
    Jacobi { n: usize, c3: f64, c10: f64, c11: f64, c12: f64, c13: f64 },
    /// `s^c12 exp(-(sqrt(c9) - c5) s) L_n^c10(2 sqrt(c9) s)`, the `c3 -> 0` limit.
    Laguerre { n: usize, c5: f64, sqrt_c9: f64, c10: f64, c12: f64 },
}

impl Eigenfunction {
    pub fn eval(&self, s: f64) -> f64 {
        match *self {
            Eigenfunction::Jacobi { n, c3, c10, c11, c12, c13 } => {
                let poly = specfun::jacobi_one_minus_2u(n, c10, c11, c3 * s)
                    .expect("pole excluded when the eigenfunction was built");
                s.powf(c12) * (1.0 - c3 * s).powf(c13) * poly
            }
            Eigenfunction::Laguerre { n, c5, sqrt_c9, c10, c12 } => {
                let poly = specfun::laguerre(n, c10, 2.0 * sqrt_c9 * s)
                    .expect("pole excluded when the eigenfunction was built");
                s.powf(c12) * (-(sqrt_c9 - c5) * s).exp() * poly
            }
        }
    }
}

pub fn build_eigenfunction(consts: &NuConstants, n: usize, mode: EigenMode) -> Result<Eigenfunction> {
    if mode == EigenMode::Strict && !consts.validity.all() {
        return Err(Error::ConstraintViolation(format!(
            "{:?} constants violate {}",
            consts.branch,
            consts.validity.violations().join(", ")
        )));
    }
    if !consts.validity.roots_real() {
        return Err(Error::InvalidConstants(format!(
            "square roots are imaginary (c8 = {}, c9 = {})",
            consts.c8, consts.c9
        )));
    }
    // (c10 + 1)_k must not vanish for k < n.
    if let Some(k) = (0..n).find(|&k| consts.c10 + 1.0 + k as f64 == 0.0) {
        return Err(Error::PoleInDenominator { param: consts.c10 + 1.0, k });
    }
    let c3 = consts.problem.c3;
    Ok(match (consts.c11, consts.c13) {
        (Some(c11), Some(c13)) => Eigenfunction::Jacobi { n, c3, c10: consts.c10, c11, c12: consts.c12, c13 },
        _ => Eigenfunction::Laguerre { n, c5: consts.c5, sqrt_c9: consts.c9.sqrt(), c10: consts.c10, c12: consts.c12 },
    })
}
