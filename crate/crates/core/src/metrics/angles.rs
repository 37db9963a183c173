use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};
use crate::foa::Direction;

/// Per-pair (or averaged) direction errors in radians.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AngleErrors {
    pub d_theta: f64,
    pub d_phi: f64,
    pub d_angular: f64,
}

impl AngleErrors {
    pub fn between(gt: Direction, est: Direction) -> Self {
        Self {
            d_theta: theta_error(gt.azimuth(), est.azimuth()),
            d_phi: (gt.elevation() - est.elevation()).abs(),
            d_angular: spatial_angle_error(gt, est),
        }
    }
}

/// Shorter arc between two azimuths, in `[0, pi]`.
pub fn theta_error(gt: f64, est: f64) -> f64 {
    let d = (gt - est).abs().rem_euclid(TAU);
    d.min(TAU - d)
}

pub fn phi_error(gt: f64, est: f64) -> Result<f64> {
    for v in [gt, est] {
        if !(-FRAC_PI_2..=FRAC_PI_2).contains(&v) {
            return Err(Error::OutOfRange(format!(
                "elevation {v} outside [-pi/2, pi/2]"
            )));
        }
    }
    Ok((gt - est).abs())
}

/// Great-circle angle between two directions (haversine form).
pub fn spatial_angle_error(gt: Direction, est: Direction) -> f64 {
    let d_theta = theta_error(gt.azimuth(), est.azimuth());
    let d_phi = gt.elevation() - est.elevation();
    let a = (d_phi / 2.0).sin().powi(2)
        + gt.elevation().cos() * est.elevation().cos() * (d_theta / 2.0).sin().powi(2);
    let a = a.clamp(0.0, 1.0);
    (2.0 * a.sqrt().atan2((1.0 - a).sqrt()).abs()).min(PI)
}
