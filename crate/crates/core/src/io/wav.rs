//! RIFF/WAVE reading and writing for mono, stereo and FOA signals.

use std::f64::consts::SQRT_2;
use std::path::Path;

use hound::{SampleFormat, WavReader, WavSpec as HoundSpec, WavWriter};

use crate::error::{Error, Result};
use crate::foa::{FoaSignal, MonoSignal, StereoSignal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    Pcm16,
    Float32,
}

impl std::str::FromStr for Encoding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pcm16" => Ok(Encoding::Pcm16),
            "float32" => Ok(Encoding::Float32),
            other => Err(Error::InvalidArgument(format!(
                "unknown encoding {other:?} (pcm16, float32)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WavSpec {
    pub channels: u16,
    pub sample_rate: u32,
    pub encoding: Encoding,
}

/// Four-channel order on disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FoaOrder {
    /// W, X, Y, Z with W = s / sqrt 2.
    #[default]
    Native,
    /// ACN order W, Y, Z, X with SN3D W = s.
    AmbiX,
}

#[derive(Debug, Clone, PartialEq)]
pub enum AudioSignal {
    Mono(MonoSignal),
    Stereo(StereoSignal),
    Foa(FoaSignal),
}

impl AudioSignal {
    pub fn channels(&self) -> Vec<&[f64]> {
        match self {
            AudioSignal::Mono(m) => vec![m.samples()],
            AudioSignal::Stereo(s) => vec![s.left(), s.right()],
            AudioSignal::Foa(f) => f.channels().to_vec(),
        }
    }

    pub fn channel_count(&self) -> u16 {
        match self {
            AudioSignal::Mono(_) => 1,
            AudioSignal::Stereo(_) => 2,
            AudioSignal::Foa(_) => 4,
        }
    }

    pub fn sample_rate(&self) -> u32 {
        match self {
            AudioSignal::Mono(m) => m.sample_rate(),
            AudioSignal::Stereo(s) => s.sample_rate(),
            AudioSignal::Foa(f) => f.sample_rate(),
        }
    }

    pub fn len(&self) -> usize {
        self.channels()[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl From<MonoSignal> for AudioSignal {
    fn from(s: MonoSignal) -> Self {
        AudioSignal::Mono(s)
    }
}

impl From<StereoSignal> for AudioSignal {
    fn from(s: StereoSignal) -> Self {
        AudioSignal::Stereo(s)
    }
}

impl From<FoaSignal> for AudioSignal {
    fn from(s: FoaSignal) -> Self {
        AudioSignal::Foa(s)
    }
}

fn map_hound(path: &Path, e: hound::Error) -> Error {
    match e {
        hound::Error::IoError(io) => Error::io(path, io),
        hound::Error::Unsupported => Error::UnsupportedFormat(format!("{}", path.display())),
        other => Error::CorruptHeader(format!("{}: {other}", path.display())),
    }
}

/// Rounds half away from zero and saturates to the 16-bit range.
pub fn quantize_pcm16(x: f64) -> i16 {
    (x * 32768.0).round().clamp(-32768.0, 32767.0) as i16
}

pub fn dequantize_pcm16(q: i16) -> f64 {
    f64::from(q) / 32768.0
}

pub fn read_wav(path: impl AsRef<Path>) -> Result<AudioSignal> {
    read_wav_with(path, FoaOrder::Native)
}

pub fn read_wav_with(path: impl AsRef<Path>, order: FoaOrder) -> Result<AudioSignal> {
    let path = path.as_ref();
    let reader = WavReader::open(path).map_err(|e| map_hound(path, e))?;
    let spec = reader.spec();
    let n_ch = spec.channels;
    if !matches!(n_ch, 1 | 2 | 4) {
        return Err(Error::ChannelCountUnsupported(n_ch));
    }
    let interleaved: Vec<f64> = match (spec.sample_format, spec.bits_per_sample) {
        (SampleFormat::Int, 16) => reader
            .into_samples::<i16>()
            .map(|s| s.map(dequantize_pcm16))
            .collect::<std::result::Result<_, _>>(),
        (SampleFormat::Float, 32) => reader
            .into_samples::<f32>()
            .map(|s| s.map(f64::from))
            .collect::<std::result::Result<_, _>>(),
        (fmt, bits) => {
            return Err(Error::UnsupportedFormat(format!(
                "{}: {bits}-bit {fmt:?} samples",
                path.display()
            )))
        }
    }
    .map_err(|e| map_hound(path, e))?;

    let n = n_ch as usize;
    if !interleaved.len().is_multiple_of(n) {
        return Err(Error::CorruptHeader(format!(
            "{}: truncated sample frame",
            path.display()
        )));
    }
    let mut chans = vec![Vec::with_capacity(interleaved.len() / n); n];
    for frame in interleaved.chunks_exact(n) {
        for (c, &v) in chans.iter_mut().zip(frame) {
            c.push(v);
        }
    }
    let sr = spec.sample_rate;
    let mut it = chans.into_iter();
    let mut next = || it.next().expect("channel count checked");
    Ok(match n_ch {
        1 => AudioSignal::Mono(MonoSignal::new(next(), sr)?),
        2 => {
            let l = next();
            AudioSignal::Stereo(StereoSignal::new(l, next(), sr)?)
        }
        _ => {
            let (a, b, c, d) = (next(), next(), next(), next());
            let foa = match order {
                FoaOrder::Native => FoaSignal::new(a, b, c, d, sr)?,
                FoaOrder::AmbiX => {
                    FoaSignal::new(a.iter().map(|v| v / SQRT_2).collect(), d, b, c, sr)?
                }
            };
            AudioSignal::Foa(foa)
        }
    })
}

pub fn write_wav(signal: &AudioSignal, path: impl AsRef<Path>, spec: WavSpec) -> Result<()> {
    write_wav_with(signal, path, spec, FoaOrder::Native)
}

pub fn write_wav_with(
    signal: &AudioSignal,
    path: impl AsRef<Path>,
    spec: WavSpec,
    order: FoaOrder,
) -> Result<()> {
    let path = path.as_ref();
    if spec.channels != signal.channel_count() {
        return Err(Error::SpecMismatch(format!(
            "spec declares {} channels, signal has {}",
            spec.channels,
            signal.channel_count()
        )));
    }
    if spec.sample_rate != signal.sample_rate() {
        return Err(Error::SpecMismatch(format!(
            "spec declares {} Hz, signal is {} Hz",
            spec.sample_rate,
            signal.sample_rate()
        )));
    }
    let mut chans = signal.channels();
    let scaled_w: Vec<f64>;
    if let (AudioSignal::Foa(f), FoaOrder::AmbiX) = (signal, order) {
        scaled_w = f.w().iter().map(|v| v * SQRT_2).collect();
        chans = vec![&scaled_w, f.y(), f.z(), f.x()];
    }
    let (bits, format) = match spec.encoding {
        Encoding::Pcm16 => (16, SampleFormat::Int),
        Encoding::Float32 => (32, SampleFormat::Float),
    };
    let hspec = HoundSpec {
        channels: spec.channels,
        sample_rate: spec.sample_rate,
        bits_per_sample: bits,
        sample_format: format,
    };
    let mut writer = WavWriter::create(path, hspec).map_err(|e| map_hound(path, e))?;
    for i in 0..signal.len() {
        for ch in &chans {
            let r = match spec.encoding {
                Encoding::Pcm16 => writer.write_sample(quantize_pcm16(ch[i])),
                Encoding::Float32 => writer.write_sample(ch[i] as f32),
            };
            r.map_err(|e| map_hound(path, e))?;
        }
    }
    writer.finalize().map_err(|e| map_hound(path, e))
}
