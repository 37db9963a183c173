//! Conditional flow matching on small latent sequences.
//!
//! Straight-line paths from Gaussian noise to data, a per-frame MLP velocity
//! model trained with exact gradients, span-masked latent contexts and
//! Euler sampling with classifier-free guidance.

mod condition;
mod fixtures;
mod loss;
mod mask;
mod model;
mod path;
mod sample;
mod time;
mod train;

pub use condition::{Condition, ConditionLayout};
pub use fixtures::TwoClassMixture;
pub use loss::{cfm_loss, cfm_loss_value, LossOutput, LossRegion};
pub use mask::{make_mask, masked_runs, MaskDraw, MaskSpec, MaskedLatent, SpanCount};
pub use model::{FrameCache, VelocityField, VelocityModel, CHECKPOINT_MAGIC};
pub use path::{interpolate, velocity_target};
pub use sample::{cfg_velocity, euler_sample, sample_noise, CfgSpec, DEFAULT_CFG_SCALE};
pub use time::TimeSampler;
pub use train::{
    leading_trailing_means, train, write_loss_trace, LossScope, TrainConfig, TrainExample,
    TrainOutcome,
};
