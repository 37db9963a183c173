use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::LatentSeq;

use super::condition::Condition;
use super::loss::{accumulate, LossRegion};
use super::mask::{make_mask, MaskSpec, MaskedLatent};
use super::model::VelocityModel;
use super::sample::sample_noise;
use super::time::TimeSampler;

/// Which frames the loss covers when a latent context is masked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LossScope {
    /// Only hidden frames (masked pre-training).
    #[default]
    MaskedOnly,
    AllFrames,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub batch_size: usize,
    pub steps: usize,
    pub seed: u64,
    pub time_sampler: TimeSampler,
    /// Masking of the latent context; required when the model takes one.
    pub mask: Option<MaskSpec>,
    pub loss_scope: LossScope,
    /// Probability of replacing an example's condition with its null version,
    /// which is what trains the unconditional branch used by guidance.
    pub cond_dropout: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.05,
            batch_size: 64,
            steps: 2_000,
            seed: 0,
            time_sampler: TimeSampler::default(),
            mask: None,
            loss_scope: LossScope::default(),
            cond_dropout: 0.1,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::InvalidArgument(
                "learning rate must be positive".into(),
            ));
        }
        if self.batch_size == 0 || self.steps == 0 {
            return Err(Error::InvalidArgument(
                "batch size and steps must be >= 1".into(),
            ));
        }
        if !(0.0..=1.0).contains(&self.cond_dropout) {
            return Err(Error::InvalidArgument(
                "condition dropout outside [0, 1]".into(),
            ));
        }
        self.time_sampler.validate()?;
        if let Some(m) = &self.mask {
            m.validate()?;
        }
        Ok(())
    }
}

/// One training pair. A context in `cond` is ignored: it is rebuilt from
/// `x1` with a fresh mask every step.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainExample {
    pub x1: LatentSeq,
    pub cond: Condition,
}

#[derive(Debug, Clone)]
pub struct TrainOutcome {
    pub model: VelocityModel,
    /// Mean batch loss per step.
    pub losses: Vec<f64>,
}

/// Mini-batch SGD on the flow-matching loss.
pub fn train(
    mut model: VelocityModel,
    data: &[TrainExample],
    cfg: &TrainConfig,
) -> Result<TrainOutcome> {
    cfg.validate()?;
    if data.is_empty() {
        return Err(Error::InvalidArgument("training set is empty".into()));
    }
    let needs_context = model.layout().context;
    if needs_context && cfg.mask.is_none() {
        return Err(Error::InvalidArgument(
            "model takes a latent context but no mask spec is set".into(),
        ));
    }
    if let Some(spec) = cfg.mask.filter(|_| needs_context) {
        for ex in data {
            spec.check_fits(ex.x1.rows())?;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut grads = vec![0.0; model.param_count()];
    let mut losses = Vec::with_capacity(cfg.steps);
    let scale = 1.0 / cfg.batch_size as f64;
    for step in 0..cfg.steps {
        grads.iter_mut().for_each(|g| *g = 0.0);
        let mut batch_loss = 0.0;
        for _ in 0..cfg.batch_size {
            let ex = &data[rng.random_range(0..data.len())];
            let x0 = sample_noise(ex.x1.rows(), ex.x1.cols(), &mut rng);
            let t = cfg.time_sampler.sample(&mut rng);
            let mut cond = if rng.random::<f64>() < cfg.cond_dropout {
                ex.cond.null()
            } else {
                ex.cond.clone()
            };
            let mut mask = None;
            if let (true, Some(spec)) = (needs_context, cfg.mask.as_ref()) {
                let draw = make_mask(ex.x1.rows(), spec, &mut rng)?;
                cond.context = Some(MaskedLatent::new(ex.x1.clone(), draw.mask.clone())?);
                mask = Some(draw.mask);
            } else {
                cond.context = None;
            }
            let region = match (&mask, cfg.loss_scope) {
                (Some(m), LossScope::MaskedOnly) => LossRegion::Masked(m),
                _ => LossRegion::All,
            };
            batch_loss += accumulate(
                &model,
                &x0,
                &ex.x1,
                t,
                &cond,
                region,
                Some(&mut grads),
                scale,
            )?;
        }
        let loss = batch_loss * scale;
        if !loss.is_finite() || grads.iter().any(|g| !g.is_finite()) {
            return Err(Error::DivergenceDetected(step));
        }
        for (p, g) in model.params_mut().iter_mut().zip(&grads) {
            *p -= cfg.learning_rate * g;
        }
        losses.push(loss);
    }
    Ok(TrainOutcome { model, losses })
}

/// Loss trace as `step,loss` lines.
pub fn write_loss_trace<W: Write>(losses: &[f64], mut w: W) -> std::io::Result<()> {
    writeln!(w, "step,loss")?;
    for (i, l) in losses.iter().enumerate() {
        writeln!(w, "{i},{l:e}")?;
    }
    Ok(())
}

/// Mean of the first and last `window` losses.
pub fn leading_trailing_means(losses: &[f64], window: usize) -> (f64, f64) {
    let w = window.min(losses.len()).max(1);
    let mean = |s: &[f64]| s.iter().sum::<f64>() / s.len().max(1) as f64;
    (
        mean(&losses[..w.min(losses.len())]),
        mean(&losses[losses.len().saturating_sub(w)..]),
    )
}
