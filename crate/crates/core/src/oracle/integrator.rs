//! Adaptive Dormand–Prince 5(4) for a scalar ODE `y' = f(t, y)`.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus embedded fourth-order weights.
const E: [f64; 7] =
    [71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Tolerance {
    pub fn new(rtol: f64) -> Self {
        Self { rtol, atol: rtol, max_steps: 1_000_000 }
    }
}

/// Integrates from `t0` to `t1` (either direction) and returns `y(t1)`.
pub fn integrate<F>(f: F, t0: f64, y0: f64, t1: f64, h0: f64, tol: Tolerance) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    let span = t1 - t0;
    if span == 0.0 {
        return Ok(y0);
    }
    let dir = span.signum();
    let mut h = h0.abs().min(span.abs()).max(f64::MIN_POSITIVE) * dir;
    let (mut t, mut y) = (t0, y0);
    let mut k = [0.0; 7];
    k[0] = f(t, y);
    for _ in 0..tol.max_steps {
        if (t1 - t) * dir <= 0.0 {
            return Ok(y);
        }
        if (t + h - t1) * dir > 0.0 {
            h = t1 - t;
        }
        for i in 1..7 {
            let inc: f64 = (0..i).map(|j| A[i][j] * k[j]).sum();
            k[i] = f(t + C[i] * h, y + h * inc);
        }
        let y_new = y + h * (0..6).map(|j| A[6][j] * k[j]).sum::<f64>();
        let err = h * (0..7).map(|j| E[j] * k[j]).sum::<f64>();
        let scale = tol.atol + tol.rtol * y.abs().max(y_new.abs());
        let ratio = (err / scale).abs();
        if !ratio.is_finite() {
            h *= 0.1;
            if h.abs() < f64::EPSILON * t.abs().max(1e-300) {
                return Err(Error::DomainError(format!("integrator failed at t = {t}")));
            }
            continue;
        }
        if ratio <= 1.0 {
            t = if (t + h - t1) * dir >= 0.0 { t1 } else { t + h };
            y = y_new;
            k[0] = k[6];
        }
        let factor = if ratio == 0.0 { 5.0 } else { (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0) };
        h *= factor;
        if h.abs() < 4.0 * f64::EPSILON * t.abs() {
            return Err(Error::DomainError(format!("step size underflow at t = {t}")));
        }
    }
    Err(Error::DomainError(format!("step limit reached before t = {t1}")))
}
