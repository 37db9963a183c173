use crate::error::{Error, Result};
use crate::matrix::LatentSeq;

use super::condition::Condition;
use super::model::{FrameCache, VelocityModel};
use super::path::{interpolate, velocity_target};

/// Frames that contribute to the loss.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LossRegion<'a> {
    All,
    /// Only frames marked `true`.
    Masked(&'a [bool]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LossOutput {
    pub loss: f64,
    /// Same layout as [`VelocityModel::params`].
    pub grads: Vec<f64>,
}

/// Flow-matching regression loss and its exact parameter gradient.
///
/// Mean over selected frames and latent dimensions of
/// `(v(t, cond, x_t) - (x1 - x0))^2`.
pub fn cfm_loss(
    model: &VelocityModel,
    x0: &LatentSeq,
    x1: &LatentSeq,
    t: f64,
    cond: &Condition,
    region: LossRegion<'_>,
) -> Result<LossOutput> {
    let mut grads = vec![0.0; model.param_count()];
    let loss = accumulate(model, x0, x1, t, cond, region, Some(&mut grads), 1.0)?;
    Ok(LossOutput { loss, grads })
}

/// Loss only, no backward pass.
pub fn cfm_loss_value(
    model: &VelocityModel,
    x0: &LatentSeq,
    x1: &LatentSeq,
    t: f64,
    cond: &Condition,
    region: LossRegion<'_>,
) -> Result<f64> {
    accumulate(model, x0, x1, t, cond, region, None, 1.0)
}

/// Adds `scale * d loss / d params` into `grads` and returns the unscaled loss.
#[allow(clippy::too_many_arguments)]
pub(crate) fn accumulate(
    model: &VelocityModel,
    x0: &LatentSeq,
    x1: &LatentSeq,
    t: f64,
    cond: &Condition,
    region: LossRegion<'_>,
    mut grads: Option<&mut [f64]>,
    scale: f64,
) -> Result<f64> {
    if x1.cols() != model.latent_dim() {
        return Err(Error::DimensionMismatch(model.latent_dim(), x1.cols()));
    }
    let target = velocity_target(x0, x1)?;
    let xt = interpolate(x0, x1, t)?;
    let frames: Vec<usize> = match region {
        LossRegion::All => (0..x1.rows()).collect(),
        LossRegion::Masked(mask) => {
            if mask.len() != x1.rows() {
                return Err(Error::shape(
                    format!("mask of length {}", x1.rows()),
                    format!("mask of length {}", mask.len()),
                ));
            }
            let frames: Vec<usize> = (0..mask.len()).filter(|&i| mask[i]).collect();
            if frames.is_empty() {
                return Err(Error::NoMaskedFrames);
            }
            frames
        }
    };
    let inputs = cond.frame_inputs(model.layout(), t, &xt)?;
    let count = (frames.len() * model.latent_dim()) as f64;
    let mut cache = FrameCache::default();
    let mut total = 0.0;
    for &r in &frames {
        let out = model.forward_frame(inputs.row(r), &mut cache);
        let diff: Vec<f64> = out.iter().zip(target.row(r)).map(|(o, u)| o - u).collect();
        total += diff.iter().map(|d| d * d).sum::<f64>();
        if let Some(g) = grads.as_deref_mut() {
            let grad_out: Vec<f64> = diff.iter().map(|d| scale * 2.0 * d / count).collect();
            model.backward_frame(&cache, &grad_out, g);
        }
    }
    Ok(total / count)
}
