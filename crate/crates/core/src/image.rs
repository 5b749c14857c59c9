//! Plane, image and mask containers shared by every stage of the pipeline.

use crate::{Error, Result};

/// A single `width × height` plane of real samples stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelPlane {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl ChannelPlane {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
        check_dims(width, height)?;
        if data.len() != width * height {
            return Err(Error::SampleCount {
                expected: width * height,
                actual: data.len(),
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        check_dims(width, height)?;
        let mut data = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                data.push(f(x, y));
            }
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: f64) {
        self.data[y * self.width + x] = value;
    }

    pub fn samples(&self) -> &[f64] {
        &self.data
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.data
    }

    /// Applies `f` to every sample, keeping the dimensions.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// Three-channel image with samples normalized to `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RgbImage {
    r: ChannelPlane,
    g: ChannelPlane,
    b: ChannelPlane,
}

impl RgbImage {
    /// Builds an image from three planes. Fails if the planes disagree in size or
    /// any sample falls outside `[0, 1]` (NaN included).
    pub fn from_planes(r: ChannelPlane, g: ChannelPlane, b: ChannelPlane) -> Result<Self> {
        ensure_same_dims(r.dims(), g.dims())?;
        ensure_same_dims(r.dims(), b.dims())?;
        for plane in [&r, &g, &b] {
            if let Some(&v) = plane.samples().iter().find(|v| !(0.0..=1.0).contains(*v)) {
                return Err(Error::SampleOutOfRange(v));
            }
        }
        Ok(Self { r, g, b })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> [f64; 3],
    ) -> Result<Self> {
        check_dims(width, height)?;
        let n = width * height;
        let (mut r, mut g, mut b) = (
            Vec::with_capacity(n),
            Vec::with_capacity(n),
            Vec::with_capacity(n),
        );
        for y in 0..height {
            for x in 0..width {
                let [pr, pg, pb] = f(x, y);
                r.push(pr);
                g.push(pg);
                b.push(pb);
            }
        }
        Self::from_planes(
            ChannelPlane::new(width, height, r)?,
            ChannelPlane::new(width, height, g)?,
            ChannelPlane::new(width, height, b)?,
        )
    }

    pub fn filled(width: usize, height: usize, rgb: [f64; 3]) -> Result<Self> {
        Self::from_fn(width, height, |_, _| rgb)
    }

    /// Decodes interleaved 8-bit RGB samples by dividing by 255.
    pub fn from_rgb8(width: usize, height: usize, bytes: &[u8]) -> Result<Self> {
        check_dims(width, height)?;
        if bytes.len() != width * height * 3 {
            return Err(Error::SampleCount {
                expected: width * height * 3,
                actual: bytes.len(),
            });
        }
        Self::from_fn(width, height, |x, y| {
            let i = (y * width + x) * 3;
            [
                f64::from(bytes[i]) / 255.0,
                f64::from(bytes[i + 1]) / 255.0,
                f64::from(bytes[i + 2]) / 255.0,
            ]
        })
    }

    /// Interleaved 8-bit encoding, rounding half up.
    pub fn to_rgb8(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.width() * self.height() * 3);
        for i in 0..self.r.data.len() {
            for plane in [&self.r, &self.g, &self.b] {
                out.push(quantize_u8(plane.data[i]));
            }
        }
        out
    }

    /// Round-trips the image through 8-bit storage.
    pub fn quantized(&self) -> Self {
        let q = |p: &ChannelPlane| p.map(|v| f64::from(quantize_u8(v)) / 255.0);
        Self {
            r: q(&self.r),
            g: q(&self.g),
            b: q(&self.b),
        }
    }

    /// Applies the inverse sRGB transfer curve to every sample.
    pub fn linearized(&self) -> Self {
        let f = |p: &ChannelPlane| p.map(srgb_to_linear);
        Self {
            r: f(&self.r),
            g: f(&self.g),
            b: f(&self.b),
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.r.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.r.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        self.r.dims()
    }

    #[inline]
    pub fn pixel(&self, x: usize, y: usize) -> [f64; 3] {
        [self.r.get(x, y), self.g.get(x, y), self.b.get(x, y)]
    }

    pub fn red(&self) -> &ChannelPlane {
        &self.r
    }

    pub fn green(&self) -> &ChannelPlane {
        &self.g
    }

    pub fn blue(&self) -> &ChannelPlane {
        &self.b
    }
}

#[inline]
fn quantize_u8(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0 + 0.5).floor() as u8
}

fn srgb_to_linear(v: f64) -> f64 {
    if v <= 0.04045 {
        v / 12.92
    } else {
        ((v + 0.055) / 1.055).powf(2.4)
    }
}

/// Boolean per-pixel map: edge maps, masks and ground-truth boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeMap {
    width: usize,
    height: usize,
    flags: Vec<bool>,
}

impl EdgeMap {
    pub fn empty(width: usize, height: usize) -> Result<Self> {
        check_dims(width, height)?;
        Ok(Self {
            width,
            height,
            flags: vec![false; width * height],
        })
    }

    pub fn new(width: usize, height: usize, flags: Vec<bool>) -> Result<Self> {
        check_dims(width, height)?;
        if flags.len() != width * height {
            return Err(Error::SampleCount {
                expected: width * height,
                actual: flags.len(),
            });
        }
        Ok(Self {
            width,
            height,
            flags,
        })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        check_dims(width, height)?;
        let mut flags = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                flags.push(f(x, y));
            }
        }
        Ok(Self {
            width,
            height,
            flags,
        })
    }

    /// Pixels with an 8-bit value above 127 are set.
    pub fn from_gray8(width: usize, height: usize, bytes: &[u8]) -> Result<Self> {
        Self::new(width, height, bytes.iter().map(|&v| v > 127).collect())
    }

    /// `{0, 255}` single-channel encoding.
    pub fn to_gray8(&self) -> Vec<u8> {
        self.flags
            .iter()
            .map(|&f| if f { 255 } else { 0 })
            .collect()
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.flags[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.flags[y * self.width + x] = value;
    }

    pub fn flags(&self) -> &[bool] {
        &self.flags
    }

    pub fn count(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.flags.iter().any(|&f| f)
    }

    /// Coordinates of set pixels in row-major order.
    pub fn points(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.flags
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(move |(i, _)| (i % self.width, i / self.width))
    }

    pub fn and_not(&self, other: &EdgeMap) -> Result<EdgeMap> {
        ensure_same_dims(self.dims(), other.dims())?;
        Ok(EdgeMap {
            width: self.width,
            height: self.height,
            flags: self
                .flags
                .iter()
                .zip(&other.flags)
                .map(|(&a, &b)| a && !b)
                .collect(),
        })
    }

    pub fn union(&self, other: &EdgeMap) -> Result<EdgeMap> {
        ensure_same_dims(self.dims(), other.dims())?;
        Ok(EdgeMap {
            width: self.width,
            height: self.height,
            flags: self
                .flags
                .iter()
                .zip(&other.flags)
                .map(|(&a, &b)| a || b)
                .collect(),
        })
    }

    pub fn complement(&self) -> EdgeMap {
        EdgeMap {
            width: self.width,
            height: self.height,
            flags: self.flags.iter().map(|&f| !f).collect(),
        }
    }
}

fn check_dims(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        Err(Error::EmptyDimensions { width, height })
    } else {
        Ok(())
    }
}

pub(crate) fn ensure_same_dims(a: (usize, usize), b: (usize, usize)) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left: a, right: b })
    }
}
