//! Spatial, distributional and spectral evaluation metrics.

mod angles;
mod batch;
mod distribution;
mod stft;

pub use angles::{phi_error, spatial_angle_error, theta_error, AngleErrors};
pub use batch::{eval_doa_batch, DoaBatchReport};
pub use distribution::{frechet_distance, kl_divergence, FeatureSet, LabelDist};
pub use stft::{multires_stft_distance, StftConfig};
