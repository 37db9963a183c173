//! File formats: WAV audio, feature matrices, frames and clip manifests.

mod frame;
mod manifest;
mod matrix;
mod wav;

pub use frame::{
    decode_raw, encode_raw, frame_paths, read_frame, read_frame_sequence, write_frame, BitDepth,
    FRAME_MAGIC,
};
pub use manifest::{format_manifest, parse_manifest, read_manifest, write_manifest};
pub use matrix::{
    decode_matrix, encode_matrix, format_matrix_text, parse_matrix_text, read_matrix,
    read_matrix_bin, read_matrix_text, write_matrix_bin, write_matrix_text, MATRIX_MAGIC,
};
pub use wav::{
    dequantize_pcm16, quantize_pcm16, read_wav, read_wav_with, write_wav, write_wav_with,
    AudioSignal, Encoding, FoaOrder, WavSpec,
};
