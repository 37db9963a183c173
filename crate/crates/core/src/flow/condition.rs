use crate::conditioning::{fuse_local, GlobalCond};
use crate::error::{Error, Result};
use crate::matrix::{FeatureSeq, LatentSeq, Matrix};

use super::mask::MaskedLatent;

/// Which condition inputs a velocity model consumes, besides `x_t` and `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConditionLayout {
    /// Masked latent context, one latent-sized vector per frame.
    pub context: bool,
    /// Length of the pooled global condition vector (0 for none).
    pub global_dim: usize,
}

impl ConditionLayout {
    pub fn cond_dim(&self, latent_dim: usize) -> usize {
        if self.context {
            latent_dim + self.global_dim
        } else {
            self.global_dim
        }
    }
}

/// Everything a velocity model is conditioned on.
///
/// Local features are already aligned to the latent timeline and projected
/// to the latent width; they are added to `x_t` at the model input.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Condition {
    pub context: Option<MaskedLatent>,
    pub local: Option<FeatureSeq>,
    pub global: Option<GlobalCond>,
}

impl Condition {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn with_global(global: GlobalCond) -> Self {
        Self {
            global: Some(global),
            ..Self::default()
        }
    }

    /// Same layout with every input withheld: context fully masked, local
    /// features dropped, global vector zeroed.
    pub fn null(&self) -> Self {
        Self {
            context: self
                .context
                .as_ref()
                .map(|c| MaskedLatent::fully_masked(c.latent().clone())),
            local: None,
            global: self.global.as_ref().map(|g| GlobalCond(vec![0.0; g.dim()])),
        }
    }

    /// Per-frame model inputs `[x_t + local, context, global, t]`, one row per frame.
    pub fn frame_inputs(&self, layout: ConditionLayout, t: f64, x: &LatentSeq) -> Result<Matrix> {
        let frames = x.rows();
        let dim = x.cols();
        let fused;
        let x = match &self.local {
            Some(local) => {
                fused = fuse_local(local, x)?;
                &fused
            }
            None => x,
        };
        let context = match (&self.context, layout.context) {
            (Some(c), true) => {
                if c.latent().shape() != (frames, dim) {
                    return Err(Error::shape(
                        format!("context {frames}x{dim}"),
                        format!("context {}x{}", c.latent().rows(), c.latent().cols()),
                    ));
                }
                Some(c.context())
            }
            (None, true) => None,
            (Some(_), false) => {
                return Err(Error::InvalidArgument(
                    "model takes no latent context".into(),
                ))
            }
            (None, false) => None,
        };
        let global: &[f64] = match &self.global {
            Some(g) if g.dim() == layout.global_dim => g.as_slice(),
            Some(g) => return Err(Error::DimensionMismatch(layout.global_dim, g.dim())),
            None if layout.global_dim == 0 => &[],
            None => {
                return Err(Error::InvalidArgument(
                    "model expects a global condition".into(),
                ))
            }
        };

        let width = dim + layout.cond_dim(dim) + 1;
        let mut data = Vec::with_capacity(frames * width);
        for r in 0..frames {
            data.extend_from_slice(x.row(r));
            if layout.context {
                match &context {
                    Some(c) => data.extend_from_slice(c.row(r)),
                    None => data.extend(std::iter::repeat_n(0.0, dim)),
                }
            }
            data.extend_from_slice(global);
            data.push(t);
        }
        Matrix::new(frames, width, data)
    }
}
