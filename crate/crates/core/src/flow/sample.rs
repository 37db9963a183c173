use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matrix::{LatentSeq, Matrix};

use super::condition::Condition;
use super::model::VelocityField;

/// Guidance scale chosen for sampling by default.
pub const DEFAULT_CFG_SCALE: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CfgSpec {
    pub scale: f64,
}

impl Default for CfgSpec {
    fn default() -> Self {
        Self {
            scale: DEFAULT_CFG_SCALE,
        }
    }
}

impl CfgSpec {
    pub fn new(scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "guidance scale {scale} must be finite and >= 0"
            )));
        }
        Ok(Self { scale })
    }
}

/// `v_uncond + scale * (v_cond - v_uncond)`.
///
/// Scales 1 and 0 return the conditional and unconditional fields unchanged.
pub fn cfg_velocity(v_cond: &LatentSeq, v_uncond: &LatentSeq, spec: CfgSpec) -> Result<LatentSeq> {
    v_cond.ensure_same_shape(v_uncond)?;
    if spec.scale == 1.0 {
        return Ok(v_cond.clone());
    }
    if spec.scale == 0.0 {
        return Ok(v_uncond.clone());
    }
    v_cond.zip_map(v_uncond, |c, u| u + spec.scale * (c - u))
}

pub fn sample_noise<R: Rng + ?Sized>(frames: usize, dim: usize, rng: &mut R) -> LatentSeq {
    let data = (0..frames * dim)
        .map(|_| rng.sample::<f64, _>(StandardNormal))
        .collect();
    Matrix::new(frames, dim, data).expect("noise is finite")
}

/// Forward Euler integration from `x0` at `t = 0` to `t = 1`.
///
/// Away from scale 1 the unconditional branch is the null version of `cond`.
pub fn euler_sample<F: VelocityField + ?Sized>(
    field: &F,
    cond: &Condition,
    x0: LatentSeq,
    steps: usize,
    cfg: CfgSpec,
) -> Result<LatentSeq> {
    if steps == 0 {
        return Err(Error::InvalidArgument(
            "need at least one integration step".into(),
        ));
    }
    let null = (cfg.scale != 1.0).then(|| cond.null());
    let dt = 1.0 / steps as f64;
    let mut x = x0;
    for k in 0..steps {
        let t = k as f64 * dt;
        let v_cond = field.velocity(t, cond, &x)?;
        let v = match &null {
            Some(null) => {
                let v_uncond = field.velocity(t, null, &x)?;
                cfg_velocity(&v_cond, &v_uncond, cfg)?
            }
            None => v_cond,
        };
        x = x.zip_map(&v, |a, b| a + dt * b)?;
    }
    Ok(x)
}
