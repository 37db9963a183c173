//! Span masks for masked-latent pre-training.
//!
//! With probability `p_cond` the model sees a partially masked context
//! (`n_mask` disjoint spans, each at least `l_mask` frames, separated by at
//! least one visible frame); otherwise the context is fully masked.

use std::ops::Range;

use rand::seq::index;
use rand::Rng;
use rand_distr::{Distribution, Geometric};

use crate::error::{Error, Result};
use crate::matrix::LatentSeq;

/// Success probability of the geometric extra length added to each span.
const SPAN_EXTRA_P: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanCount {
    Fixed(usize),
    /// Uniform over `min..=max`.
    Uniform {
        min: usize,
        max: usize,
    },
}

impl SpanCount {
    fn max(&self) -> usize {
        match *self {
            SpanCount::Fixed(n) => n,
            SpanCount::Uniform { max, .. } => max,
        }
    }

    fn min(&self) -> usize {
        match *self {
            SpanCount::Fixed(n) => n,
            SpanCount::Uniform { min, .. } => min,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaskSpec {
    pub p_cond: f64,
    pub n_mask: SpanCount,
    pub l_mask: usize,
}

impl Default for MaskSpec {
    fn default() -> Self {
        Self {
            p_cond: 0.1,
            n_mask: SpanCount::Uniform { min: 1, max: 3 },
            l_mask: 1,
        }
    }
}

impl MaskSpec {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p_cond) {
            return Err(Error::InvalidArgument(format!(
                "p_cond {} outside [0, 1]",
                self.p_cond
            )));
        }
        if self.l_mask == 0 || self.n_mask.min() == 0 || self.n_mask.min() > self.n_mask.max() {
            return Err(Error::InvalidArgument(
                "span count and minimum span length must be >= 1".into(),
            ));
        }
        Ok(())
    }

    /// Partial masks need `n * l_mask` masked frames plus a visible frame between spans.
    pub fn check_fits(&self, frames: usize) -> Result<()> {
        let n = self.n_mask.max();
        if n * self.l_mask + (n - 1) > frames {
            return Err(Error::InfeasibleSpec {
                n_mask: n,
                l_mask: self.l_mask,
                frames,
            });
        }
        Ok(())
    }
}

/// One drawn mask. `true` marks a hidden frame.
#[derive(Debug, Clone, PartialEq)]
pub struct MaskDraw {
    pub mask: Vec<bool>,
    pub full: bool,
    pub spans: Vec<Range<usize>>,
}

pub fn make_mask<R: Rng + ?Sized>(frames: usize, spec: &MaskSpec, rng: &mut R) -> Result<MaskDraw> {
    spec.validate()?;
    spec.check_fits(frames)?;
    if rng.random::<f64>() >= spec.p_cond {
        return Ok(MaskDraw {
            mask: vec![true; frames],
            full: true,
            spans: std::iter::once(0..frames).collect(),
        });
    }

    let n = match spec.n_mask {
        SpanCount::Fixed(n) => n,
        SpanCount::Uniform { min, max } => rng.random_range(min..=max),
    };
    let geometric = Geometric::new(SPAN_EXTRA_P).expect("valid probability");
    let budget = frames - (n - 1);
    let mut lengths: Vec<usize> = (0..n)
        .map(|_| {
            spec.l_mask
                .saturating_add(geometric.sample(rng).min(frames as u64) as usize)
        })
        .collect();
    let mut total: usize = lengths.iter().sum();
    while total > budget {
        let (i, _) = lengths
            .iter()
            .enumerate()
            .max_by_key(|(i, l)| (**l, usize::MAX - i))
            .expect("n >= 1");
        lengths[i] -= 1;
        total -= 1;
    }

    // Spread the slack over the n + 1 gaps: choosing n bars among slack + n
    // slots is uniform over all placements for these lengths.
    let slack = budget - total;
    let mut bars = index::sample(rng, slack + n, n).into_vec();
    bars.sort_unstable();
    let mut mask = vec![false; frames];
    let mut spans = Vec::with_capacity(n);
    let mut pos = 0;
    let mut prev_bar: Option<usize> = None;
    for (i, (&bar, &len)) in bars.iter().zip(&lengths).enumerate() {
        let gap = prev_bar.map_or(bar, |p| bar - p - 1);
        pos += gap + usize::from(i > 0);
        mask[pos..pos + len].iter_mut().for_each(|m| *m = true);
        spans.push(pos..pos + len);
        pos += len;
        prev_bar = Some(bar);
    }
    Ok(MaskDraw {
        mask,
        full: false,
        spans,
    })
}

/// Maximal runs of `true`.
pub fn masked_runs(mask: &[bool]) -> Vec<Range<usize>> {
    let mut runs = Vec::new();
    let mut start = None;
    for (i, &m) in mask.iter().enumerate() {
        match (m, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                runs.push(s..i);
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        runs.push(s..mask.len());
    }
    runs
}

/// Latent plus the frames hidden from the model.
#[derive(Debug, Clone, PartialEq)]
pub struct MaskedLatent {
    latent: LatentSeq,
    mask: Vec<bool>,
}

impl MaskedLatent {
    pub fn new(latent: LatentSeq, mask: Vec<bool>) -> Result<Self> {
        if mask.len() != latent.rows() {
            return Err(Error::shape(
                format!("mask of length {}", latent.rows()),
                format!("mask of length {}", mask.len()),
            ));
        }
        Ok(Self { latent, mask })
    }

    pub fn fully_masked(latent: LatentSeq) -> Self {
        let frames = latent.rows();
        Self {
            latent,
            mask: vec![true; frames],
        }
    }

    pub fn latent(&self) -> &LatentSeq {
        &self.latent
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn frames(&self) -> usize {
        self.latent.rows()
    }

    /// What the model sees: masked frames zeroed.
    pub fn context(&self) -> LatentSeq {
        let mut out = self.latent.clone();
        for (r, &hidden) in self.mask.iter().enumerate() {
            if hidden {
                out.row_mut(r).iter_mut().for_each(|v| *v = 0.0);
            }
        }
        out
    }
}
