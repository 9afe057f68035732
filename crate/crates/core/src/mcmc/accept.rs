use rand::Rng;

use crate::error::{check_temperature, Result};

/// Metropolis acceptance, `min(1, exp(-delta_e / t))`.
///
/// Downhill and neutral moves are accepted without consuming randomness.
pub fn mh_accept<R: Rng + ?Sized>(delta_e: f64, t: f64, rng: &mut R) -> Result<bool> {
    check_temperature(t)?;
    if delta_e <= 0.0 {
        return Ok(true);
    }
    Ok(rng.gen::<f64>() < (-delta_e / t).exp())
}

/// Replica-exchange acceptance, `min(1, exp((1/t_i - 1/t_j)(e_j - e_i)))`.
pub fn swap_accept<R: Rng + ?Sized>(
    e_i: f64,
    e_j: f64,
    t_i: f64,
    t_j: f64,
    rng: &mut R,
) -> Result<bool> {
    check_temperature(t_i)?;
    check_temperature(t_j)?;
    let exponent = (1.0 / t_i - 1.0 / t_j) * (e_j - e_i);
    if exponent >= 0.0 {
        return Ok(true);
    }
    Ok(rng.gen::<f64>() < exponent.exp())
}
