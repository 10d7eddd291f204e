use crate::error::{Error, Result};

use super::NaturalParams;

fn check_radius(r: f64) -> Result<()> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainError(format!("radius must be positive and finite, got {r}")))
    }
}

/// `-g e^{-a r} / r`, natural units.
pub fn potential_yukawa(np: &NaturalParams, r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(-np.g * (-np.a * r).exp() / r)
}

/// `-2 a g e^{-2ar} / (1 - e^{-2ar})`, the Yukawa potential with `1/r`
/// replaced by `a / sinh(a r)`.
pub fn potential_approx(np: &NaturalParams, r: f64) -> Result<f64> {
    check_radius(r)?;
    let s = (-2.0 * np.a * r).exp();
    Ok(-2.0 * np.a * np.g * s / -(-2.0 * np.a * r).exp_m1())
}

/// `a r / sinh(a r)`, the ratio of the approximate to the exact potential.
pub fn screening_ratio(np: &NaturalParams, r: f64) -> Result<f64> {
    check_radius(r)?;
    let x = np.a * r;
    Ok(if x < 1e-4 { 1.0 - x * x / 6.0 } else { x / x.sinh() })
}
