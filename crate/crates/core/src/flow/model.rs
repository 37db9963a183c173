//! Per-frame tanh MLP velocity field with hand-written backpropagation.
//!
//! Checkpoint layout (little endian):
//!
//! ```text
//! magic      8 bytes  "FOAVFMLP"
//! latent_dim u32
//! context    u32      0 or 1
//! global_dim u32
//! n_widths   u32
//! widths     n_widths x u32
//! params     f64 per parameter; for each layer the row-major
//!            (out x in) weight matrix followed by its bias vector
//! ```

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::matrix::{LatentSeq, Matrix};

use super::condition::{Condition, ConditionLayout};

pub const CHECKPOINT_MAGIC: &[u8; 8] = b"FOAVFMLP";

/// Anything that maps `(t, condition, x_t)` to a velocity of the same shape as `x_t`.
pub trait VelocityField {
    fn velocity(&self, t: f64, cond: &Condition, x: &LatentSeq) -> Result<LatentSeq>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct VelocityModel {
    latent_dim: usize,
    layout: ConditionLayout,
    widths: Vec<usize>,
    params: Vec<f64>,
}

/// Activations of one forward pass through one frame.
#[derive(Debug, Default)]
pub struct FrameCache {
    activations: Vec<Vec<f64>>,
}

impl VelocityModel {
    /// Random initialization with `N(0, 1/fan_in)` weights and zero biases.
    pub fn new<R: Rng + ?Sized>(
        latent_dim: usize,
        layout: ConditionLayout,
        hidden: &[usize],
        rng: &mut R,
    ) -> Result<Self> {
        let widths = Self::layer_widths(latent_dim, layout, hidden)?;
        let mut params = Vec::with_capacity(param_count(&widths));
        for pair in widths.windows(2) {
            let (fan_in, fan_out) = (pair[0], pair[1]);
            let normal = Normal::new(0.0, (1.0 / fan_in as f64).sqrt()).expect("positive std");
            params.extend((0..fan_in * fan_out).map(|_| normal.sample(rng)));
            params.extend(std::iter::repeat_n(0.0, fan_out));
        }
        Ok(Self {
            latent_dim,
            layout,
            widths,
            params,
        })
    }

    pub fn zeros(latent_dim: usize, layout: ConditionLayout, hidden: &[usize]) -> Result<Self> {
        let widths = Self::layer_widths(latent_dim, layout, hidden)?;
        let params = vec![0.0; param_count(&widths)];
        Self::from_parts(latent_dim, layout, widths, params)
    }

    pub fn from_parts(
        latent_dim: usize,
        layout: ConditionLayout,
        widths: Vec<usize>,
        params: Vec<f64>,
    ) -> Result<Self> {
        let hidden = widths.get(1..widths.len().saturating_sub(1)).unwrap_or(&[]);
        let expected = Self::layer_widths(latent_dim, layout, hidden)?;
        if widths != expected {
            return Err(Error::shape(
                format!("layer widths {expected:?}"),
                format!("{widths:?}"),
            ));
        }
        if params.len() != param_count(&widths) {
            return Err(Error::shape(
                format!("{} parameters", param_count(&widths)),
                format!("{} parameters", params.len()),
            ));
        }
        Ok(Self {
            latent_dim,
            layout,
            widths,
            params,
        })
    }

    fn layer_widths(
        latent_dim: usize,
        layout: ConditionLayout,
        hidden: &[usize],
    ) -> Result<Vec<usize>> {
        if latent_dim == 0 {
            return Err(Error::InvalidArgument(
                "latent dimension must be >= 1".into(),
            ));
        }
        if hidden.is_empty() || hidden.contains(&0) {
            return Err(Error::InvalidArgument(
                "need at least one non-empty hidden layer".into(),
            ));
        }
        let mut widths = vec![latent_dim + layout.cond_dim(latent_dim) + 1];
        widths.extend_from_slice(hidden);
        widths.push(latent_dim);
        Ok(widths)
    }

    pub fn latent_dim(&self) -> usize {
        self.latent_dim
    }

    pub fn layout(&self) -> ConditionLayout {
        self.layout
    }

    pub fn widths(&self) -> &[usize] {
        &self.widths
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut [f64] {
        &mut self.params
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    fn layers(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let mut offset = 0;
        self.widths.windows(2).map(move |w| {
            let start = offset;
            offset += w[0] * w[1] + w[1];
            (start, w[0], w[1])
        })
    }

    /// Runs one frame, keeping activations for [`Self::backward_frame`].
    pub fn forward_frame(&self, input: &[f64], cache: &mut FrameCache) -> Vec<f64> {
        debug_assert_eq!(input.len(), self.widths[0]);
        let n_layers = self.widths.len() - 1;
        cache.activations.clear();
        cache.activations.push(input.to_vec());
        for (l, (offset, fan_in, fan_out)) in self.layers().enumerate() {
            let weights = &self.params[offset..offset + fan_in * fan_out];
            let bias = &self.params[offset + fan_in * fan_out..offset + fan_in * fan_out + fan_out];
            let prev = cache.activations.last().expect("input pushed");
            let mut z: Vec<f64> = weights
                .chunks_exact(fan_in)
                .zip(bias)
                .map(|(row, b)| row.iter().zip(prev).map(|(w, a)| w * a).sum::<f64>() + b)
                .collect();
            if l + 1 < n_layers {
                z.iter_mut().for_each(|v| *v = v.tanh());
            }
            cache.activations.push(z);
        }
        cache.activations.last().cloned().unwrap_or_default()
    }

    /// Accumulates `d loss / d params` into `grads` given `d loss / d output`.
    pub fn backward_frame(&self, cache: &FrameCache, grad_out: &[f64], grads: &mut [f64]) {
        debug_assert_eq!(grads.len(), self.params.len());
        let layers: Vec<_> = self.layers().collect();
        let mut delta = grad_out.to_vec();
        for (l, &(offset, fan_in, fan_out)) in layers.iter().enumerate().rev() {
            let input = &cache.activations[l];
            let (gw, gb) =
                grads[offset..offset + fan_in * fan_out + fan_out].split_at_mut(fan_in * fan_out);
            for (o, d) in delta.iter().enumerate() {
                gb[o] += d;
                for (g, a) in gw[o * fan_in..(o + 1) * fan_in].iter_mut().zip(input) {
                    *g += d * a;
                }
            }
            if l == 0 {
                break;
            }
            let weights = &self.params[offset..offset + fan_in * fan_out];
            let mut prev = vec![0.0; fan_in];
            for (o, d) in delta.iter().enumerate() {
                for (p, w) in prev.iter_mut().zip(&weights[o * fan_in..(o + 1) * fan_in]) {
                    *p += w * d;
                }
            }
            // input here is tanh output of the previous layer
            for (p, a) in prev.iter_mut().zip(input) {
                *p *= 1.0 - a * a;
            }
            delta = prev;
        }
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        w.write_all(CHECKPOINT_MAGIC)?;
        for v in [
            self.latent_dim,
            usize::from(self.layout.context),
            self.layout.global_dim,
            self.widths.len(),
        ]
        .into_iter()
        .chain(self.widths.iter().copied())
        {
            w.write_all(&(v as u32).to_le_bytes())?;
        }
        for p in &self.params {
            w.write_all(&p.to_le_bytes())?;
        }
        w.flush()
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let corrupt = |what: &str| Error::CorruptHeader(format!("checkpoint: {what}"));
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)
            .map_err(|_| corrupt("truncated magic"))?;
        if &magic != CHECKPOINT_MAGIC {
            return Err(corrupt("bad magic"));
        }
        let read_u32 = |r: &mut R| -> Result<usize> {
            let mut b = [0u8; 4];
            r.read_exact(&mut b)
                .map_err(|_| corrupt("truncated header"))?;
            Ok(u32::from_le_bytes(b) as usize)
        };
        let latent_dim = read_u32(&mut r)?;
        let context = match read_u32(&mut r)? {
            0 => false,
            1 => true,
            _ => return Err(corrupt("context flag")),
        };
        let global_dim = read_u32(&mut r)?;
        let n = read_u32(&mut r)?;
        if !(3..=64).contains(&n) {
            return Err(corrupt("layer count"));
        }
        let widths = (0..n)
            .map(|_| read_u32(&mut r))
            .collect::<Result<Vec<_>>>()?;
        let count = param_count(&widths);
        let mut bytes = vec![0u8; count * 8];
        r.read_exact(&mut bytes)
            .map_err(|_| corrupt("truncated parameters"))?;
        let params = bytes
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
            .collect();
        Self::from_parts(
            latent_dim,
            ConditionLayout {
                context,
                global_dim,
            },
            widths,
            params,
        )
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        self.write_to(BufWriter::new(file))
            .map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_from(BufReader::new(file))
    }
}

fn param_count(widths: &[usize]) -> usize {
    widths.windows(2).map(|w| w[0] * w[1] + w[1]).sum()
}

impl VelocityField for VelocityModel {
    fn velocity(&self, t: f64, cond: &Condition, x: &LatentSeq) -> Result<LatentSeq> {
        if x.cols() != self.latent_dim {
            return Err(Error::DimensionMismatch(self.latent_dim, x.cols()));
        }
        let inputs = cond.frame_inputs(self.layout, t, x)?;
        let mut cache = FrameCache::default();
        let mut data = Vec::with_capacity(x.rows() * self.latent_dim);
        for row in inputs.iter_rows() {
            data.extend(self.forward_frame(row, &mut cache));
        }
        Matrix::new(x.rows(), self.latent_dim, data)
    }
}

impl<F> VelocityField for F
where
    F: Fn(f64, &Condition, &LatentSeq) -> Result<LatentSeq>,
{
    fn velocity(&self, t: f64, cond: &Condition, x: &LatentSeq) -> Result<LatentSeq> {
        self(t, cond, x)
    }
}
