use std::path::Path;

use anyhow::{bail, Context, Result};
use image::{DynamicImage, GrayImage, ImageFormat, RgbImage as Rgb8Image};
use spliceedge::{EdgeMap, RgbImage};

/// Decodes an 8-bit raster. Alpha is dropped; grey is replicated to RGB.
pub fn read_rgb(path: &Path) -> Result<RgbImage> {
    let img = decode(path)?;
    let rgb = match img {
        DynamicImage::ImageRgb8(_)
        | DynamicImage::ImageRgba8(_)
        | DynamicImage::ImageLuma8(_)
        | DynamicImage::ImageLumaA8(_) => img.to_rgb8(),
        other => bail!(
            "{}: only 8-bit images are supported, got {:?}",
            path.display(),
            other.color()
        ),
    };
    let (w, h) = rgb.dimensions();
    RgbImage::from_rgb8(w as usize, h as usize, rgb.as_raw())
        .with_context(|| format!("{}: invalid image", path.display()))
}

/// Reads a mask: any pixel whose luma is above 127 is set.
pub fn read_mask(path: &Path) -> Result<EdgeMap> {
    let gray = decode(path)?.to_luma8();
    let (w, h) = gray.dimensions();
    EdgeMap::from_gray8(w as usize, h as usize, gray.as_raw())
        .with_context(|| format!("{}: invalid mask", path.display()))
}

fn decode(path: &Path) -> Result<DynamicImage> {
    let reader = image::ImageReader::open(path)
        .with_context(|| format!("cannot open {}", path.display()))?
        .with_guessed_format()
        .with_context(|| format!("cannot read {}", path.display()))?;
    reader
        .decode()
        .with_context(|| format!("cannot decode {}", path.display()))
}

pub fn write_mask(path: &Path, mask: &EdgeMap) -> Result<()> {
    write_gray(path, mask.width(), mask.height(), mask.to_gray8())
}

pub fn write_gray(path: &Path, width: usize, height: usize, bytes: Vec<u8>) -> Result<()> {
    let img = GrayImage::from_raw(width as u32, height as u32, bytes)
        .context("gray buffer size mismatch")?;
    img.save_with_format(path, ImageFormat::Png)
        .with_context(|| format!("cannot write {}", path.display()))
}

pub fn write_rgb(path: &Path, img: &RgbImage) -> Result<()> {
    write_rgb8(path, img.width(), img.height(), img.to_rgb8())
}

fn write_rgb8(path: &Path, width: usize, height: usize, bytes: Vec<u8>) -> Result<()> {
    let img = Rgb8Image::from_raw(width as u32, height as u32, bytes)
        .context("rgb buffer size mismatch")?;
    img.save_with_format(path, ImageFormat::Png)
        .with_context(|| format!("cannot write {}", path.display()))
}

/// Input image with every flagged pixel painted pure red.
pub fn write_overlay(path: &Path, img: &RgbImage, mask: &EdgeMap) -> Result<()> {
    let mut bytes = img.to_rgb8();
    for (x, y) in mask.points() {
        let i = (y * img.width() + x) * 3;
        bytes[i..i + 3].copy_from_slice(&[255, 0, 0]);
    }
    write_rgb8(path, img.width(), img.height(), bytes)
}

pub const IMAGE_EXTENSIONS: &[&str] = &["png", "jpg", "jpeg", "tif", "tiff", "bmp"];

pub fn is_image(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| IMAGE_EXTENSIONS.contains(&e.to_ascii_lowercase().as_str()))
}
