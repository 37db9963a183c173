//! Closed-form machinery for 360-degree video to spatial audio work:
//! first-order ambisonics encoding and direction of arrival, evaluation
//! metrics, a small conditional flow-matching engine, equirectangular frame
//! geometry and dataset cleaning filters.

pub mod cleaning;
pub mod conditioning;
pub mod error;
pub mod flow;
pub mod foa;
pub mod io;
pub mod matrix;
pub mod metrics;
pub mod pano;

pub use error::{Error, Result};
pub use matrix::{FeatureSeq, LatentSeq, Matrix};
