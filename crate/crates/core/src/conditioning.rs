//! Dual-branch conditioning: local (perspective) features are stretched to
//! the latent timeline and added to the latent; global (panoramic) features
//! are max-pooled over time into one vector.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{FeatureSeq, LatentSeq, Matrix};

/// Mean offset between consecutive synthetic classes.
pub const CLASS_SPACING: f64 = 2.0;

/// Single pooled condition vector.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalCond(pub Vec<f64>);

impl GlobalCond {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UpsampleMode {
    /// Output frame `i` copies input frame `floor(i * F / T)`.
    #[default]
    Nearest,
    /// Corner-aligned linear interpolation.
    Linear,
}

pub fn upsample_features(f: &FeatureSeq, target_len: usize) -> Result<FeatureSeq> {
    upsample_features_with(f, target_len, UpsampleMode::Nearest)
}

pub fn upsample_features_with(
    f: &FeatureSeq,
    target_len: usize,
    mode: UpsampleMode,
) -> Result<FeatureSeq> {
    let frames = f.rows();
    if target_len < frames {
        return Err(Error::ShrinkNotSupported {
            from: frames,
            to: target_len,
        });
    }
    let cols = f.cols();
    let mut data = Vec::with_capacity(target_len * cols);
    for i in 0..target_len {
        match mode {
            UpsampleMode::Nearest => {
                data.extend_from_slice(f.row(nearest_source(i, frames, target_len)))
            }
            UpsampleMode::Linear => {
                if target_len == 1 || frames == 1 {
                    data.extend_from_slice(f.row(0));
                    continue;
                }
                let pos = i as f64 * (frames - 1) as f64 / (target_len - 1) as f64;
                let lo = (pos.floor() as usize).min(frames - 1);
                let hi = (lo + 1).min(frames - 1);
                let frac = pos - lo as f64;
                data.extend(
                    f.row(lo)
                        .iter()
                        .zip(f.row(hi))
                        .map(|(a, b)| a + frac * (b - a)),
                );
            }
        }
    }
    Matrix::new(target_len, cols, data)
}

pub(crate) fn nearest_source(i: usize, frames: usize, target_len: usize) -> usize {
    i * frames / target_len
}

/// Element-wise sum of aligned local features and the latent.
pub fn fuse_local(f_up: &FeatureSeq, latent: &LatentSeq) -> Result<LatentSeq> {
    latent.zip_map(f_up, |l, f| l + f)
}

/// Per-channel maximum over time.
pub fn pool_global(f: &FeatureSeq) -> GlobalCond {
    let mut out = f.row(0).to_vec();
    for row in f.iter_rows().skip(1) {
        for (m, v) in out.iter_mut().zip(row) {
            *m = m.max(*v);
        }
    }
    GlobalCond(out)
}

/// Deterministic stand-in for an image-encoder feature sequence.
///
/// Each channel is zero-mean noise in `[-0.25, 0.25]` (re-centred so the
/// empirical mean is exactly zero) plus `CLASS_SPACING * class_id + 0.1 * c`,
/// so channel means of different classes differ by at least `CLASS_SPACING`.
pub fn synth_features(
    seed: u64,
    frames: usize,
    channels: usize,
    class_id: u32,
) -> Result<FeatureSeq> {
    if frames == 0 || channels == 0 {
        return Err(Error::InvalidArgument(
            "frames and channels must be >= 1".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(class_id) << 32));
    let mut noise: Vec<f64> = (0..frames * channels)
        .map(|_| rng.random_range(-0.25..0.25))
        .collect();
    for c in 0..channels {
        let mean = (0..frames).map(|r| noise[r * channels + c]).sum::<f64>() / frames as f64;
        for r in 0..frames {
            noise[r * channels + c] -= mean;
        }
    }
    Matrix::from_fn(frames, channels, |r, c| {
        class_mean(class_id, c) + noise[r * channels + c]
    })
}

pub fn class_mean(class_id: u32, channel: usize) -> f64 {
    CLASS_SPACING * f64::from(class_id) + 0.1 * channel as f64
}
