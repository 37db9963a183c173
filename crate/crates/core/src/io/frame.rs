//! Frame files: 8 or 16-bit PNG and a raw float container.
//!
//! Raw layout (little endian): magic `"FOAFRM01"`, then `u32` height, width
//! and channels, then `f32` pixels in row-major interleaved order.

use std::fs;
use std::path::{Path, PathBuf};

use image::{DynamicImage, ImageBuffer, Luma, Rgb};

use crate::error::{Error, Result};
use crate::pano::Frame;

pub const FRAME_MAGIC: &[u8; 8] = b"FOAFRM01";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BitDepth {
    #[default]
    Eight,
    Sixteen,
}

fn is_raw(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "raw" || e == "frm")
}

pub fn read_frame(path: impl AsRef<Path>) -> Result<Frame> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.starts_with(FRAME_MAGIC) {
        return decode_raw(&bytes);
    }
    let img = image::load_from_memory(&bytes)
        .map_err(|e| Error::UnsupportedFormat(format!("{}: {e}", path.display())))?;
    Ok(from_image(img))
}

fn from_image(img: DynamicImage) -> Frame {
    let (w, h) = (img.width() as usize, img.height() as usize);
    let gray = matches!(
        img.color(),
        image::ColorType::L8
            | image::ColorType::L16
            | image::ColorType::La8
            | image::ColorType::La16
    );
    let sixteen = matches!(
        img.color(),
        image::ColorType::L16
            | image::ColorType::La16
            | image::ColorType::Rgb16
            | image::ColorType::Rgba16
    );
    let data: Vec<f32> = match (gray, sixteen) {
        (true, false) => img
            .to_luma8()
            .into_raw()
            .into_iter()
            .map(|v| f32::from(v) / 255.0)
            .collect(),
        (true, true) => img
            .to_luma16()
            .into_raw()
            .into_iter()
            .map(|v| f32::from(v) / 65535.0)
            .collect(),
        (false, false) => img
            .to_rgb8()
            .into_raw()
            .into_iter()
            .map(|v| f32::from(v) / 255.0)
            .collect(),
        (false, true) => img
            .to_rgb16()
            .into_raw()
            .into_iter()
            .map(|v| f32::from(v) / 65535.0)
            .collect(),
    };
    Frame::new(h, w, if gray { 1 } else { 3 }, data).expect("decoded image shape")
}

/// Writes a PNG, or the raw container when the extension is `.raw` or `.frm`.
pub fn write_frame(frame: &Frame, path: impl AsRef<Path>, depth: BitDepth) -> Result<()> {
    let path = path.as_ref();
    if is_raw(path) {
        return fs::write(path, encode_raw(frame)).map_err(|e| Error::io(path, e));
    }
    let (w, h) = (frame.width() as u32, frame.height() as u32);
    let q8 = |v: &f32| (v.clamp(0.0, 1.0) * 255.0).round() as u8;
    let q16 = |v: &f32| (v.clamp(0.0, 1.0) * 65535.0).round() as u16;
    let img = match (frame.channels(), depth) {
        (1, BitDepth::Eight) => DynamicImage::ImageLuma8(
            ImageBuffer::<Luma<u8>, _>::from_raw(w, h, frame.data().iter().map(q8).collect())
                .expect("size"),
        ),
        (1, BitDepth::Sixteen) => DynamicImage::ImageLuma16(
            ImageBuffer::<Luma<u16>, _>::from_raw(w, h, frame.data().iter().map(q16).collect())
                .expect("size"),
        ),
        (_, BitDepth::Eight) => DynamicImage::ImageRgb8(
            ImageBuffer::<Rgb<u8>, _>::from_raw(w, h, frame.data().iter().map(q8).collect())
                .expect("size"),
        ),
        (_, BitDepth::Sixteen) => DynamicImage::ImageRgb16(
            ImageBuffer::<Rgb<u16>, _>::from_raw(w, h, frame.data().iter().map(q16).collect())
                .expect("size"),
        ),
    };
    img.save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| match e {
            image::ImageError::IoError(io) => Error::io(path, io),
            other => Error::UnsupportedFormat(other.to_string()),
        })
}

pub fn encode_raw(frame: &Frame) -> Vec<u8> {
    let mut out = Vec::with_capacity(20 + 4 * frame.data().len());
    out.extend_from_slice(FRAME_MAGIC);
    for d in [frame.height(), frame.width(), frame.channels()] {
        out.extend_from_slice(&(d as u32).to_le_bytes());
    }
    for v in frame.data() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_raw(bytes: &[u8]) -> Result<Frame> {
    if bytes.len() < 20 || &bytes[..8] != FRAME_MAGIC {
        return Err(Error::CorruptHeader("missing frame magic".into()));
    }
    let dim = |i: usize| u32::from_le_bytes(bytes[i..i + 4].try_into().expect("4 bytes")) as usize;
    let (h, w, c) = (dim(8), dim(12), dim(16));
    if bytes.len() - 20 != h * w * c * 4 {
        return Err(Error::CorruptHeader(format!(
            "{h}x{w}x{c} frame has wrong payload size"
        )));
    }
    let data = bytes[20..]
        .chunks_exact(4)
        .map(|b| f32::from_le_bytes(b.try_into().expect("4 bytes")))
        .collect();
    Frame::new(h, w, c, data)
}

/// Paths matching a glob pattern, in lexicographic order.
pub fn frame_paths(pattern: &str) -> Result<Vec<PathBuf>> {
    let paths = glob::glob(pattern).map_err(|e| Error::Parse {
        location: pattern.to_string(),
        message: e.to_string(),
    })?;
    let mut out = Vec::new();
    for p in paths {
        out.push(p.map_err(|e| {
            let path = e.path().to_path_buf();
            Error::io(path, e.into())
        })?);
    }
    out.sort();
    Ok(out)
}

pub fn read_frame_sequence(pattern: &str) -> Result<Vec<Frame>> {
    frame_paths(pattern)?.iter().map(read_frame).collect()
}
