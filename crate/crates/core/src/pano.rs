//! Equirectangular (ERP) frame geometry: square padding, gnomonic perspective
//! cuts and frame-difference stationarity.
//!
//! Longitude `lambda` grows to the right of the panorama (`u = (lambda / 2pi + 0.5) W`)
//! and latitude `beta` grows upward (`v = (0.5 - beta / pi) H`). A positive
//! camera yaw turns the view to the right, a positive pitch tilts it up.
//! Note that this longitude runs opposite to the ambisonic azimuth, which
//! is positive to the left.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::foa::wrap_azimuth;

/// H x W x C image with values nominally in `[0, 1]`, row-major, channels interleaved.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    height: usize,
    width: usize,
    channels: usize,
    data: Vec<f32>,
}

impl Frame {
    pub fn new(height: usize, width: usize, channels: usize, data: Vec<f32>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(Error::InvalidArgument(
                "frame dimensions must be >= 1".into(),
            ));
        }
        if channels != 1 && channels != 3 {
            return Err(Error::InvalidArgument(format!(
                "frames have 1 or 3 channels, got {channels}"
            )));
        }
        if data.len() != height * width * channels {
            return Err(Error::shape(
                format!("{} samples", height * width * channels),
                format!("{} samples", data.len()),
            ));
        }
        Ok(Self {
            height,
            width,
            channels,
            data,
        })
    }

    pub fn filled(height: usize, width: usize, channels: usize, value: f32) -> Result<Self> {
        Self::new(
            height,
            width,
            channels,
            vec![value; height * width * channels],
        )
    }

    pub fn from_fn(
        height: usize,
        width: usize,
        channels: usize,
        mut f: impl FnMut(usize, usize, usize) -> f32,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(height * width * channels);
        for r in 0..height {
            for c in 0..width {
                for ch in 0..channels {
                    data.push(f(r, c, ch));
                }
            }
        }
        Self::new(height, width, channels, data)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    pub fn pixel(&self, row: usize, col: usize) -> &[f32] {
        let i = (row * self.width + col) * self.channels;
        &self.data[i..i + self.channels]
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.height, self.width, self.channels)
    }

    fn ensure_erp(&self) -> Result<()> {
        if self.width != 2 * self.height {
            return Err(Error::NotErpAspect {
                height: self.height,
                width: self.width,
            });
        }
        Ok(())
    }

    /// Left-right mirror.
    pub fn mirrored(&self) -> Frame {
        Frame::from_fn(self.height, self.width, self.channels, |r, c, ch| {
            self.pixel(r, self.width - 1 - c)[ch]
        })
        .expect("same shape")
    }
}

/// Pads a 2:1 panorama to a square; the odd leftover row goes to the bottom.
pub fn pad_to_square(erp: &Frame) -> Result<Frame> {
    erp.ensure_erp()?;
    let side = erp.width;
    let top = erp.height / 2;
    let row_len = erp.width * erp.channels;
    let mut data = vec![0.0f32; side * row_len];
    data[top * row_len..(top + erp.height) * row_len].copy_from_slice(&erp.data);
    Frame::new(side, side, erp.channels, data)
}

/// Pinhole camera looking into the panorama.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraSpec {
    pub yaw: f64,
    pub pitch: f64,
    /// Horizontal field of view, radians in `(0, pi)`.
    pub hfov: f64,
    pub out_w: usize,
    pub out_h: usize,
}

pub const DEFAULT_HFOV_DEG: f64 = 120.0;

impl CameraSpec {
    pub fn new(yaw: f64, pitch: f64, hfov: f64, out_w: usize, out_h: usize) -> Result<Self> {
        let cam = Self {
            yaw,
            pitch,
            hfov,
            out_w,
            out_h,
        };
        cam.validate()?;
        Ok(cam)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hfov > 0.0 && self.hfov < PI) {
            return Err(Error::OutOfRange(format!(
                "hfov {} outside (0, pi)",
                self.hfov
            )));
        }
        if self.out_w == 0 || self.out_h == 0 {
            return Err(Error::InvalidArgument(
                "output dimensions must be >= 1".into(),
            ));
        }
        if !self.yaw.is_finite() || !self.pitch.is_finite() {
            return Err(Error::OutOfRange("camera angles must be finite".into()));
        }
        Ok(())
    }

    fn focal(&self) -> f64 {
        0.5 * self.out_w as f64 / (0.5 * self.hfov).tan()
    }

    /// Viewing direction of output pixel `(row, col)` as `(lambda, beta)`.
    pub fn pixel_direction(&self, row: usize, col: usize) -> (f64, f64) {
        let f = self.focal();
        let right = (col as f64 + 0.5 - 0.5 * self.out_w as f64) / f;
        let up = (0.5 * self.out_h as f64 - (row as f64 + 0.5)) / f;
        let (sp, cp) = self.pitch.sin_cos();
        let fwd1 = cp - up * sp;
        let up1 = sp + up * cp;
        let (sy, cy) = wrap_azimuth(self.yaw).sin_cos();
        let fwd2 = fwd1 * cy - right * sy;
        let right2 = fwd1 * sy + right * cy;
        let mut lambda = right2.atan2(fwd2);
        if lambda >= PI {
            lambda -= TAU;
        }
        let beta = up1.atan2(fwd2.hypot(right2)).clamp(-FRAC_PI_2, FRAC_PI_2);
        (lambda, beta)
    }

    /// Continuous ERP coordinates `(u, v)` sampled by output pixel `(row, col)`.
    pub fn erp_coords(&self, row: usize, col: usize, erp_w: usize, erp_h: usize) -> (f64, f64) {
        let (lambda, beta) = self.pixel_direction(row, col);
        (
            (lambda / TAU + 0.5) * erp_w as f64,
            (0.5 - beta / PI) * erp_h as f64,
        )
    }
}

/// Bilinear sample at continuous pixel coordinates, wrapping columns and clamping rows.
fn sample_bilinear(erp: &Frame, u: f64, v: f64, out: &mut [f32]) {
    let x = u - 0.5;
    let y = v - 0.5;
    let x0 = x.floor();
    let y0 = y.floor();
    let fx = x - x0;
    let fy = y - y0;
    let w = erp.width as i64;
    let h = erp.height as i64;
    let c0 = (x0 as i64).rem_euclid(w) as usize;
    let c1 = (x0 as i64 + 1).rem_euclid(w) as usize;
    let r0 = (y0 as i64).clamp(0, h - 1) as usize;
    let r1 = (y0 as i64 + 1).clamp(0, h - 1) as usize;
    for (ch, o) in out.iter_mut().enumerate() {
        let p00 = f64::from(erp.pixel(r0, c0)[ch]);
        let p01 = f64::from(erp.pixel(r0, c1)[ch]);
        let p10 = f64::from(erp.pixel(r1, c0)[ch]);
        let p11 = f64::from(erp.pixel(r1, c1)[ch]);
        let top = p00 + fx * (p01 - p00);
        let bottom = p10 + fx * (p11 - p10);
        *o = (top + fy * (bottom - top)) as f32;
    }
}

/// Gnomonic (rectilinear) view of the panorama.
pub fn erp_to_perspective(erp: &Frame, cam: &CameraSpec) -> Result<Frame> {
    erp.ensure_erp()?;
    cam.validate()?;
    let mut data = vec![0.0f32; cam.out_h * cam.out_w * erp.channels];
    for (i, px) in data.chunks_exact_mut(erp.channels).enumerate() {
        let (row, col) = (i / cam.out_w, i % cam.out_w);
        let (u, v) = cam.erp_coords(row, col, erp.width, erp.height);
        sample_bilinear(erp, u, v, px);
    }
    Frame::new(cam.out_h, cam.out_w, erp.channels, data)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutPreset {
    Front,
    TwoCuts,
    FourCuts,
    SixCuts,
}

impl CutPreset {
    /// `(yaw, pitch)` of each view.
    pub fn views(&self) -> Vec<(f64, f64)> {
        let ring = [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2];
        match self {
            CutPreset::Front => vec![(0.0, 0.0)],
            CutPreset::TwoCuts => vec![(0.0, 0.0), (PI, 0.0)],
            CutPreset::FourCuts => ring.iter().map(|&y| (y, 0.0)).collect(),
            CutPreset::SixCuts => ring
                .iter()
                .map(|&y| (y, 0.0))
                .chain([(0.0, FRAC_PI_2), (0.0, -FRAC_PI_2)])
                .collect(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CutPreset::Front => "front",
            CutPreset::TwoCuts => "2cuts",
            CutPreset::FourCuts => "4cuts",
            CutPreset::SixCuts => "6cuts",
        }
    }
}

impl std::str::FromStr for CutPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "front" => Ok(CutPreset::Front),
            "2cuts" => Ok(CutPreset::TwoCuts),
            "4cuts" => Ok(CutPreset::FourCuts),
            "6cuts" => Ok(CutPreset::SixCuts),
            other => Err(Error::InvalidArgument(format!(
                "unknown preset {other:?} (front, 2cuts, 4cuts, 6cuts)"
            ))),
        }
    }
}

pub fn make_fov_cuts(
    erp: &Frame,
    preset: CutPreset,
    hfov: f64,
    out_w: usize,
    out_h: usize,
) -> Result<Vec<Frame>> {
    preset
        .views()
        .into_par_iter()
        .map(|(yaw, pitch)| {
            erp_to_perspective(erp, &CameraSpec::new(yaw, pitch, hfov, out_w, out_h)?)
        })
        .collect()
}

pub fn frame_mse(a: &Frame, b: &Frame) -> Result<f64> {
    if a.shape() != b.shape() {
        return Err(Error::shape(
            format!("{:?}", a.shape()),
            format!("{:?}", b.shape()),
        ));
    }
    let sum: f64 = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (f64::from(*x) - f64::from(*y)).powi(2))
        .sum();
    Ok(sum / a.data.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationarityParams {
    /// Frames between compared pairs.
    pub interval: usize,
    pub mse_threshold: f64,
    pub ratio_threshold: f64,
}

impl Default for StationarityParams {
    fn default() -> Self {
        Self {
            // one second at 8 fps
            interval: 8,
            mse_threshold: 1e-3,
            ratio_threshold: 0.85,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationarityVerdict {
    pub stationary: bool,
    pub ratio: f64,
    pub comparisons: usize,
}

/// Compares frames `i` and `i + k` for `i = 0, k, 2k, ...`.
pub fn stationarity_verdict(
    frames: &[Frame],
    params: &StationarityParams,
) -> Result<StationarityVerdict> {
    if params.interval == 0 {
        return Err(Error::InvalidArgument(
            "comparison interval must be >= 1".into(),
        ));
    }
    let k = params.interval;
    let pairs: Vec<(usize, usize)> = (0..frames.len())
        .step_by(k)
        .filter(|i| i + k < frames.len())
        .map(|i| (i, i + k))
        .collect();
    if pairs.len() < 2 {
        return Err(Error::TooFewFrames(pairs.len()));
    }
    let mut still = 0;
    for &(i, j) in &pairs {
        if frame_mse(&frames[i], &frames[j])? < params.mse_threshold {
            still += 1;
        }
    }
    let ratio = still as f64 / pairs.len() as f64;
    Ok(StationarityVerdict {
        stationary: ratio > params.ratio_threshold,
        ratio,
        comparisons: pairs.len(),
    })
}
