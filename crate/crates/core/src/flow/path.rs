use crate::error::{Error, Result};
use crate::matrix::LatentSeq;

/// Point at time `t` on the straight path from `x0` (noise) to `x1` (data).
pub fn interpolate(x0: &LatentSeq, x1: &LatentSeq, t: f64) -> Result<LatentSeq> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::OutOfRange(format!("t = {t} outside [0, 1]")));
    }
    x0.zip_map(x1, |a, b| t * b + (1.0 - t) * a)
}

/// Constant velocity of the straight path, `x1 - x0`.
pub fn velocity_target(x0: &LatentSeq, x1: &LatentSeq) -> Result<LatentSeq> {
    x0.zip_map(x1, |a, b| b - a)
}
