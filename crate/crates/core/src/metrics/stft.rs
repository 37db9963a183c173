use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::foa::FoaSignal;

/// Added to magnitudes before taking logs.
const LOG_EPS: f64 = 1e-7;
/// Floor for the spectral-convergence denominator.
const SC_EPS: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct StftConfig {
    pub window_sizes: Vec<usize>,
    pub hop_fraction: f64,
    /// W, X, Y, Z weights.
    pub channel_weights: [f64; 4],
}

impl Default for StftConfig {
    fn default() -> Self {
        Self {
            window_sizes: vec![512, 1024, 2048],
            hop_fraction: 0.25,
            channel_weights: [0.25; 4],
        }
    }
}

impl StftConfig {
    pub fn validate(&self) -> Result<()> {
        if self.window_sizes.is_empty() || self.window_sizes[0] == 0 {
            return Err(Error::InvalidArgument(
                "window sizes must be positive and non-empty".into(),
            ));
        }
        if self.window_sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "window sizes must be strictly increasing".into(),
            ));
        }
        if !(self.hop_fraction > 0.0 && self.hop_fraction <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "hop fraction {} outside (0, 1]",
                self.hop_fraction
            )));
        }
        Ok(())
    }
}

struct Resolution {
    size: usize,
    hop: usize,
    window: Vec<f64>,
    fft: Arc<dyn Fft<f64>>,
}

impl Resolution {
    fn new(size: usize, hop_fraction: f64, planner: &mut FftPlanner<f64>) -> Self {
        // periodic Hann
        let window = (0..size)
            .map(|i| 0.5 - 0.5 * (2.0 * PI * i as f64 / size as f64).cos())
            .collect();
        Self {
            size,
            hop: ((size as f64 * hop_fraction).round() as usize).max(1),
            window,
            fft: planner.plan_fft_forward(size),
        }
    }

    /// Magnitude spectrogram, frames concatenated. The signal is zero-padded
    /// so every sample falls in at least one frame.
    fn magnitudes(&self, signal: &[f64]) -> Vec<f64> {
        let frames = if signal.len() <= self.size {
            1
        } else {
            1 + (signal.len() - self.size).div_ceil(self.hop)
        };
        let bins = self.size / 2 + 1;
        let mut out = Vec::with_capacity(frames * bins);
        let mut buf = vec![Complex::new(0.0, 0.0); self.size];
        for f in 0..frames {
            let start = f * self.hop;
            for (i, slot) in buf.iter_mut().enumerate() {
                let v = signal.get(start + i).copied().unwrap_or(0.0);
                *slot = Complex::new(v * self.window[i], 0.0);
            }
            self.fft.process(&mut buf);
            out.extend(buf[..bins].iter().map(|c| c.norm()));
        }
        out
    }
}

fn spectral_distance(a: &[f64], b: &[f64]) -> f64 {
    let log_l1 = a
        .iter()
        .zip(b)
        .map(|(x, y)| ((x + LOG_EPS).ln() - (y + LOG_EPS).ln()).abs())
        .sum::<f64>()
        / a.len() as f64;
    let diff = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt();
    let convergence = if diff == 0.0 {
        0.0
    } else {
        let reference = b.iter().map(|y| y * y).sum::<f64>().sqrt();
        diff / reference.max(SC_EPS)
    };
    log_l1 + convergence
}

/// Multi-resolution STFT distance between two FOA signals, `b` being the reference.
///
/// Each resolution contributes log-magnitude L1 plus spectral convergence,
/// weighted per channel; resolutions are averaged.
pub fn multires_stft_distance(a: &FoaSignal, b: &FoaSignal, cfg: &StftConfig) -> Result<f64> {
    cfg.validate()?;
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.sample_rate() != b.sample_rate() {
        return Err(Error::SpecMismatch(format!(
            "sample rates differ: {} vs {}",
            a.sample_rate(),
            b.sample_rate()
        )));
    }
    let mut planner = FftPlanner::new();
    let mut total = 0.0;
    for &size in &cfg.window_sizes {
        let res = Resolution::new(size, cfg.hop_fraction, &mut planner);
        let mut per_res = 0.0;
        for ((ca, cb), w) in a
            .channels()
            .iter()
            .zip(b.channels())
            .zip(cfg.channel_weights)
        {
            if w == 0.0 || ca == &cb {
                continue;
            }
            per_res += w * spectral_distance(&res.magnitudes(ca), &res.magnitudes(cb));
        }
        total += per_res;
    }
    Ok(total / cfg.window_sizes.len() as f64)
}
