//! Small synthetic problems for exercising the trainer end to end.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::conditioning::{pool_global, synth_features, GlobalCond};
use crate::error::Result;
use crate::matrix::{LatentSeq, Matrix};

use super::condition::{Condition, ConditionLayout};
use super::model::VelocityModel;
use super::sample::{euler_sample, sample_noise, CfgSpec};
use super::train::{TrainConfig, TrainExample};

/// Two isotropic 2-D Gaussians, one per class, each selected by a pooled
/// synthetic feature vector.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoClassMixture {
    pub means: [[f64; 2]; 2],
    pub std: f64,
    pub examples: usize,
    pub hidden: Vec<usize>,
    pub feature_frames: usize,
    pub feature_seed: u64,
}

impl Default for TwoClassMixture {
    fn default() -> Self {
        Self {
            means: [[4.0, 4.0], [-4.0, -2.0]],
            std: 0.1,
            examples: 512,
            hidden: vec![32, 32],
            feature_frames: 8,
            feature_seed: 7,
        }
    }
}

impl TwoClassMixture {
    pub fn layout(&self) -> ConditionLayout {
        ConditionLayout {
            context: false,
            global_dim: 2,
        }
    }

    pub fn condition(&self, class: usize) -> Result<Condition> {
        let feats = synth_features(self.feature_seed, self.feature_frames, 2, class as u32)?;
        Ok(Condition::with_global(pool_global(&feats)))
    }

    pub fn global(&self, class: usize) -> Result<GlobalCond> {
        Ok(self.condition(class)?.global.expect("global condition"))
    }

    /// Alternating-class training pairs, each a single latent frame.
    pub fn dataset(&self, seed: u64) -> Result<Vec<TrainExample>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let noise =
            Normal::new(0.0, self.std).map_err(|e| crate::Error::InvalidArgument(e.to_string()))?;
        let conds = [self.condition(0)?, self.condition(1)?];
        (0..self.examples)
            .map(|i| {
                let k = i % 2;
                let x1 = Matrix::new(
                    1,
                    2,
                    vec![
                        self.means[k][0] + noise.sample(&mut rng),
                        self.means[k][1] + noise.sample(&mut rng),
                    ],
                )?;
                Ok(TrainExample {
                    x1,
                    cond: conds[k].clone(),
                })
            })
            .collect()
    }

    pub fn init_model(&self, seed: u64) -> Result<VelocityModel> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        VelocityModel::new(2, self.layout(), &self.hidden, &mut rng)
    }

    /// Settings under which the conditional model fits this fixture.
    pub fn train_config(&self) -> TrainConfig {
        TrainConfig {
            learning_rate: 0.01,
            batch_size: 64,
            steps: 6_000,
            seed: 3,
            cond_dropout: 0.0,
            ..TrainConfig::default()
        }
    }

    /// `n` samples for `class`, one per row.
    pub fn sample(
        &self,
        model: &VelocityModel,
        class: usize,
        n: usize,
        steps: usize,
        cfg: CfgSpec,
        seed: u64,
    ) -> Result<Matrix> {
        let cond = self.condition(class)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut data = Vec::with_capacity(2 * n);
        for _ in 0..n {
            let x: LatentSeq =
                euler_sample(model, &cond, sample_noise(1, 2, &mut rng), steps, cfg)?;
            data.extend_from_slice(x.as_slice());
        }
        Matrix::new(n, 2, data)
    }

    /// Mean of `n` conditional samples at guidance scale 1.
    pub fn sample_mean(
        &self,
        model: &VelocityModel,
        class: usize,
        n: usize,
        steps: usize,
        seed: u64,
    ) -> Result<[f64; 2]> {
        let m = self.sample(model, class, n, steps, CfgSpec::new(1.0)?, seed)?;
        let mean = m.column_means();
        Ok([mean[0], mean[1]])
    }
}
