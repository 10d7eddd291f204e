//! Special-function kernel: rising factorials, terminating Gauss
//! hypergeometric sums, and Jacobi / associated Laguerre polynomials with
//! real parameters (including non-integer values below -1).
//!
//! Every series here terminates. Sums are accumulated in double-double
//! arithmetic: the bound-state model produces parameters like `alpha = eps/a`
//! of order hundreds, and for parameters near -1 the alternating terms of a
//! degree-12 Jacobi sum cancel by six orders of magnitude.
//!
//! Jacobi polynomials are evaluated through
//!
//! ```text
//! P_n^(a,b)(1 - 2u) = (a+1)_n / n! * 2F1(-n, a+b+1+n; a+1; u)
//! ```
//!
//! where `(y)_k = y (y+1) ... (y+k-1)` is the rising factorial.

use twofloat::TwoFloat;

use crate::error::{Error, Result};

/// Degree and parameters of a Jacobi or associated Laguerre polynomial.
///
/// `beta` is ignored by the Laguerre evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolyParams {
    pub degree: usize,
    pub alpha: f64,
    pub beta: f64,
}

impl PolyParams {
    pub fn new(degree: usize, alpha: f64, beta: f64) -> Self {
        Self { degree, alpha, beta }
    }

    pub fn jacobi(&self, x: f64) -> Result<f64> {
        jacobi(self.degree, self.alpha, self.beta, x)
    }

    pub fn jacobi_derivative(&self, x: f64) -> Result<f64> {
        jacobi_derivative(self.degree, self.alpha, self.beta, x)
    }

    pub fn laguerre(&self, x: f64) -> Result<f64> {
        laguerre(self.degree, self.alpha, x)
    }
}

/// Rising factorial `x (x+1) ... (x+k-1)`; 1 for `k = 0`.
pub fn pochhammer_rising(x: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (x + i as f64))
}

/// `2F1(-n, b; c; x)` as the finite sum over `k = 0..=n`.
pub fn hyp2f1_terminating(n: usize, b: f64, c: f64, x: f64) -> Result<f64> {
    hyp2f1_tf(n, TwoFloat::from(b), TwoFloat::from(c), TwoFloat::from(x)).map(f64::from)
}

/// Jacobi polynomial `P_n^(alpha,beta)(x)`.
pub fn jacobi(n: usize, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    let u = TwoFloat::new_sub(1.0, x) / 2.0;
    jacobi_tf(n, TwoFloat::from(alpha), TwoFloat::from(beta), u).map(f64::from)
}

/// `P_n^(alpha,beta)(1 - 2u)`, taking the hypergeometric argument `u`
/// directly so that small `u` keeps full relative precision.
pub fn jacobi_one_minus_2u(n: usize, alpha: f64, beta: f64, u: f64) -> Result<f64> {
    jacobi_tf(n, TwoFloat::from(alpha), TwoFloat::from(beta), TwoFloat::from(u)).map(f64::from)
}

/// `d/dx P_n^(alpha,beta)(x) = (n+alpha+beta+1)/2 * P_{n-1}^(alpha+1,beta+1)(x)`.
pub fn jacobi_derivative(n: usize, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    let u = TwoFloat::new_sub(1.0, x) / 2.0;
    jacobi_derivative_tf(1, n, TwoFloat::from(alpha), TwoFloat::from(beta), u).map(f64::from)
}

/// Second derivative in `x`, via the same parameter-shift identity applied twice.
pub fn jacobi_second_derivative(n: usize, alpha: f64, beta: f64, x: f64) -> Result<f64> {
    let u = TwoFloat::new_sub(1.0, x) / 2.0;
    jacobi_derivative_tf(2, n, TwoFloat::from(alpha), TwoFloat::from(beta), u).map(f64::from)
}

/// Value, first and second `x`-derivatives of `P_n^(alpha,beta)` at `x = 1 - 2u`.
pub fn jacobi_with_derivatives_one_minus_2u(n: usize, alpha: f64, beta: f64, u: f64) -> Result<[f64; 3]> {
    let (a, b, u) = (TwoFloat::from(alpha), TwoFloat::from(beta), TwoFloat::from(u));
    Ok([
        jacobi_tf(n, a, b, u)?.into(),
        jacobi_derivative_tf(1, n, a, b, u)?.into(),
        jacobi_derivative_tf(2, n, a, b, u)?.into(),
    ])
}

/// Associated Laguerre polynomial
/// `L_n^alpha(x) = (alpha+1)_n / n! * 1F1(-n; alpha+1; x)`.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> Result<f64> {
    let c = TwoFloat::from(alpha) + 1.0;
    check_poles(c, n)?;
    let x = TwoFloat::from(x);
    let mut term = TwoFloat::from(1.0);
    let mut sum = term;
    for k in 0..n {
        let kf = k as f64;
        term = div(term * x * (kf - n as f64), (c + kf) * (kf + 1.0));
        sum += term;
    }
    Ok((div(rising_tf(c, n), factorial_tf(n)) * sum).into())
}

/// `d/dx L_n^alpha(x) = -L_{n-1}^(alpha+1)(x)`.
pub fn laguerre_derivative(n: usize, alpha: f64, x: f64) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    laguerre(n - 1, alpha + 1.0, x).map(|v| -v)
}

fn rising_tf(x: TwoFloat, k: usize) -> TwoFloat {
    (0..k).fold(TwoFloat::from(1.0), |acc, i| acc * (x + i as f64))
}

fn factorial_tf(n: usize) -> TwoFloat {
    (1..=n).fold(TwoFloat::from(1.0), |acc, i| acc * i as f64)
}

/// Double-double quotient with two residual corrections; `TwoFloat`'s own
/// `Div` impl is only accurate to about one ulp of `f64`.
fn div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q1 = a.hi() / b.hi();
    let r1 = a - b * q1;
    let q2 = r1.hi() / b.hi();
    let r2 = r1 - b * q2;
    let q3 = r2.hi() / b.hi();
    TwoFloat::new_add(q1, q2) + q3
}

fn check_poles(c: TwoFloat, n: usize) -> Result<()> {
    match (0..n).find(|&k| (c + k as f64).hi() == 0.0) {
        Some(k) => Err(Error::PoleInDenominator { param: c.hi(), k }),
        None => Ok(()),
    }
}

fn hyp2f1_tf(n: usize, b: TwoFloat, c: TwoFloat, z: TwoFloat) -> Result<TwoFloat> {
    check_poles(c, n)?;
    let mut term = TwoFloat::from(1.0);
    let mut sum = term;
    for k in 0..n {
        let kf = k as f64;
        term = div(term * (b + kf) * z * (kf - n as f64), (c + kf) * (kf + 1.0));
        sum += term;
    }
    Ok(sum)
}

fn jacobi_tf(n: usize, alpha: TwoFloat, beta: TwoFloat, u: TwoFloat) -> Result<TwoFloat> {
    if n == 0 {
        return Ok(TwoFloat::from(1.0));
    }
    let c = alpha + 1.0;
    let b = alpha + beta + (n as f64 + 1.0);
    let series = hyp2f1_tf(n, b, c, u)?;
    Ok(div(rising_tf(c, n), factorial_tf(n)) * series)
}

fn jacobi_derivative_tf(order: usize, n: usize, alpha: TwoFloat, beta: TwoFloat, u: TwoFloat) -> Result<TwoFloat> {
    if order > n {
        return Ok(TwoFloat::from(0.0));
    }
    // d^k/dx^k P_n^(a,b) = (n+a+b+1)_k / 2^k * P_{n-k}^(a+k,b+k)
    let coeff = rising_tf(alpha + beta + (n as f64 + 1.0), order) / (1u64 << order) as f64;
    let shift = order as f64;
    Ok(coeff * jacobi_tf(n - order, alpha + shift, beta + shift, u)?)
}
