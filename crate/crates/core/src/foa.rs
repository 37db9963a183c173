//! First-order ambisonics signals, encoding and intensity-vector direction of arrival.
//!
//! Channel convention is W, X, Y, Z with `W = s / sqrt(2)`, X pointing to the
//! front, Y to the left and Z up. Angles are radians: azimuth `theta` in
//! `(-pi, pi]` measured counter-clockwise from the front (so `pi/2` is left),
//! elevation `phi` in `[-pi/2, pi/2]`.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};

/// Intensity magnitudes below this are treated as silence.
pub const ENERGY_FLOOR: f64 = 1e-12;

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_azimuth(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let mut a = (theta + PI).rem_euclid(TAU) - PI;
    if a <= -PI {
        a += TAU;
    }
    a
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    azimuth: f64,
    elevation: f64,
}

impl Direction {
    /// Azimuth is normalized into `(-pi, pi]`; elevation outside `[-pi/2, pi/2]` is rejected.
    pub fn new(azimuth: f64, elevation: f64) -> Result<Self> {
        if !azimuth.is_finite() || !elevation.is_finite() {
            return Err(Error::OutOfRange("direction angles must be finite".into()));
        }
        if !(-FRAC_PI_2..=FRAC_PI_2).contains(&elevation) {
            return Err(Error::OutOfRange(format!(
                "elevation {elevation} outside [-pi/2, pi/2]"
            )));
        }
        Ok(Self {
            azimuth: wrap_azimuth(azimuth),
            elevation,
        })
    }

    pub fn from_degrees(azimuth: f64, elevation: f64) -> Result<Self> {
        Self::new(azimuth.to_radians(), elevation.to_radians())
    }

    pub fn azimuth(&self) -> f64 {
        self.azimuth
    }

    pub fn elevation(&self) -> f64 {
        self.elevation
    }

    /// Unit vector (front, left, up).
    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.azimuth.sin_cos();
        let (sp, cp) = self.elevation.sin_cos();
        [ct * cp, st * cp, sp]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonoSignal {
    samples: Vec<f64>,
    sample_rate: u32,
}

impl MonoSignal {
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySignal);
        }
        check_rate(sample_rate)?;
        Ok(Self {
            samples,
            sample_rate,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StereoSignal {
    left: Vec<f64>,
    right: Vec<f64>,
    sample_rate: u32,
}

impl StereoSignal {
    pub fn new(left: Vec<f64>, right: Vec<f64>, sample_rate: u32) -> Result<Self> {
        if left.is_empty() {
            return Err(Error::EmptySignal);
        }
        if left.len() != right.len() {
            return Err(Error::LengthMismatch(left.len(), right.len()));
        }
        check_rate(sample_rate)?;
        Ok(Self {
            left,
            right,
            sample_rate,
        })
    }

    pub fn left(&self) -> &[f64] {
        &self.left
    }

    pub fn right(&self) -> &[f64] {
        &self.right
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }
}

/// Four-channel B-format signal.
#[derive(Debug, Clone, PartialEq)]
pub struct FoaSignal {
    w: Vec<f64>,
    x: Vec<f64>,
    y: Vec<f64>,
    z: Vec<f64>,
    sample_rate: u32,
}

impl FoaSignal {
    pub fn new(
        w: Vec<f64>,
        x: Vec<f64>,
        y: Vec<f64>,
        z: Vec<f64>,
        sample_rate: u32,
    ) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::EmptySignal);
        }
        for other in [&x, &y, &z] {
            if other.len() != w.len() {
                return Err(Error::LengthMismatch(w.len(), other.len()));
            }
        }
        check_rate(sample_rate)?;
        Ok(Self {
            w,
            x,
            y,
            z,
            sample_rate,
        })
    }

    pub fn silence(len: usize, sample_rate: u32) -> Result<Self> {
        Self::new(
            vec![0.0; len],
            vec![0.0; len],
            vec![0.0; len],
            vec![0.0; len],
            sample_rate,
        )
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    /// Channels in W, X, Y, Z order.
    pub fn channels(&self) -> [&[f64]; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }
}

fn check_rate(sample_rate: u32) -> Result<()> {
    if sample_rate == 0 {
        return Err(Error::InvalidArgument(
            "sample rate must be positive".into(),
        ));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntensityVector {
    pub ix: f64,
    pub iy: f64,
    pub iz: f64,
}

impl IntensityVector {
    pub fn magnitude(&self) -> f64 {
        (self.ix * self.ix + self.iy * self.iy + self.iz * self.iz).sqrt()
    }

    /// Direction the intensity points to.
    ///
    /// Azimuth uses `atan2` so rear sources are not folded onto the front.
    /// With no horizontal component the direction is a pole: `theta = 0`,
    /// `phi = sign(iz) * pi/2`.
    pub fn direction(&self) -> Result<Direction> {
        let mag = self.magnitude();
        if mag.is_nan() || mag < ENERGY_FLOOR {
            return Err(Error::ZeroEnergy(mag));
        }
        let horizontal = self.ix.hypot(self.iy);
        if horizontal == 0.0 {
            return Direction::new(0.0, FRAC_PI_2.copysign(self.iz));
        }
        let theta = self.iy.atan2(self.ix);
        let phi = (self.iz / horizontal).atan();
        Direction::new(theta, phi)
    }
}

/// Encodes a mono source at `dir`.
pub fn spatialize_mono(mono: &MonoSignal, dir: Direction) -> FoaSignal {
    let (st, ct) = dir.azimuth().sin_cos();
    let (sp, cp) = dir.elevation().sin_cos();
    let gx = ct * cp;
    let gy = st * cp;
    let s = mono.samples();
    FoaSignal {
        w: s.iter().map(|v| v * FRAC_1_SQRT_2).collect(),
        x: s.iter().map(|v| v * gx).collect(),
        y: s.iter().map(|v| v * gy).collect(),
        z: s.iter().map(|v| v * sp).collect(),
        sample_rate: mono.sample_rate(),
    }
}

/// Lifts a stereo pair into the FOA layout: `W = L + R`, `X = L - R`, `Y = Z = 0`.
pub fn stereo_to_foa(st: &StereoSignal) -> FoaSignal {
    let n = st.len();
    FoaSignal {
        w: st
            .left()
            .iter()
            .zip(st.right())
            .map(|(l, r)| l + r)
            .collect(),
        x: st
            .left()
            .iter()
            .zip(st.right())
            .map(|(l, r)| l - r)
            .collect(),
        y: vec![0.0; n],
        z: vec![0.0; n],
        sample_rate: st.sample_rate(),
    }
}

pub fn intensity_vector(foa: &FoaSignal) -> IntensityVector {
    let n = foa.len() as f64;
    let mean_product = |a: &[f64]| foa.w.iter().zip(a).map(|(w, v)| w * v).sum::<f64>() / n;
    IntensityVector {
        ix: mean_product(&foa.x),
        iy: mean_product(&foa.y),
        iz: mean_product(&foa.z),
    }
}

pub fn estimate_doa(foa: &FoaSignal) -> Result<Direction> {
    intensity_vector(foa).direction()
}
