//! Locates splicing edges in a single image.
//!
//! The detector maps RGB into two photometric spaces: saturation `S`, which is
//! blind to body-reflection gain (shading and shadow), and the intensity-free
//! opponent pair `o1 o2`, which is blind to an equal offset on all channels
//! (neutral highlights). Edges are found in each space with a Laplacian
//! composite gradient thresholded at three standard deviations, and a pixel is
//! reported as a splice when it is an `o1 o2` edge but not an `S` edge.
//!
//! [`simulate`] renders dichromatic scenes with exact ground truth and
//! [`eval`] scores detections against it.

pub mod classify;
pub mod colorspace;
pub mod edges;
mod error;
pub mod eval;
mod image;
pub mod morphology;
pub mod simulate;

pub use crate::classify::{detect, DetectParams, DetectionResult, EdgeLabel};
pub use crate::colorspace::{to_opponent, to_saturation};
pub use crate::edges::{detect_edges_in_space, GradientStats};
pub use crate::error::{Error, Result};
pub use crate::image::{ChannelPlane, EdgeMap, RgbImage};
