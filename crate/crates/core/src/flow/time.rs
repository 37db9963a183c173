use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};

/// Distribution of the flow time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeSampler {
    Uniform,
    /// `t = sigmoid(z)`, `z ~ Normal(mu, sigma^2)`.
    LogitNormal {
        mu: f64,
        sigma: f64,
    },
}

impl Default for TimeSampler {
    fn default() -> Self {
        TimeSampler::LogitNormal {
            mu: 0.0,
            sigma: 1.0,
        }
    }
}

impl TimeSampler {
    pub fn logit_normal(mu: f64, sigma: f64) -> Result<Self> {
        let s = TimeSampler::LogitNormal { mu, sigma };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            TimeSampler::Uniform => Ok(()),
            TimeSampler::LogitNormal { mu, sigma } => {
                if mu.is_finite() && sigma.is_finite() && sigma > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidArgument(format!(
                        "logit-normal needs finite mu and sigma > 0, got ({mu}, {sigma})"
                    )))
                }
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            TimeSampler::Uniform => rng.random::<f64>(),
            TimeSampler::LogitNormal { mu, sigma } => {
                let z = Normal::new(mu, sigma)
                    .expect("validated sampler")
                    .sample(rng);
                // keep t strictly inside (0, 1) even when exp saturates
                (1.0 / (1.0 + (-z).exp())).clamp(f64::EPSILON, 1.0 - f64::EPSILON)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn uniform_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = 100_000;
        let mean = (0..n)
            .map(|_| TimeSampler::Uniform.sample(&mut rng))
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5).abs() < 0.01, "{mean}");
    }

    #[test]
    fn logit_normal_median_and_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = TimeSampler::default();
        let mut draws: Vec<f64> = (0..100_000).map(|_| s.sample(&mut rng)).collect();
        assert!(draws.iter().all(|&t| t > 0.0 && t < 1.0));
        draws.sort_by(f64::total_cmp);
        let median = draws[draws.len() / 2];
        assert!((median - 0.5).abs() < 0.01, "{median}");
    }

    #[test]
    fn extreme_logit_normal_stays_open() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = TimeSampler::logit_normal(0.0, 500.0).unwrap();
        for _ in 0..1000 {
            let t = s.sample(&mut rng);
            assert!(t > 0.0 && t < 1.0);
        }
        assert!(TimeSampler::logit_normal(0.0, 0.0).is_err());
    }
}
