//! Dataset discovery.
//!
//! The default layout is
//!
//! ```text
//! <root>/spliced/<name>.<ext>     tampered images
//! <root>/masks/<name>.<ext>       region mask per tampered image (white = pasted)
//! <root>/original/<name>.<ext>    untouched images
//! ```
//!
//! A layout file (TOML) overrides any of the directory names, the mask file
//! suffix and whether masks hold regions or ready-made boundaries.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use crate::io::is_image;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MaskKind {
    /// The mask marks the pasted region; its boundary is derived.
    Region,
    /// The mask already marks the splice boundary.
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Layout {
    pub spliced_dir: String,
    pub original_dir: String,
    pub mask_dir: String,
    /// Appended to the image file stem to form the mask file stem.
    pub mask_suffix: String,
    pub mask_kind: MaskKind,
}

impl Default for Layout {
    fn default() -> Self {
        Self {
            spliced_dir: "spliced".into(),
            original_dir: "original".into(),
            mask_dir: "masks".into(),
            mask_suffix: String::new(),
            mask_kind: MaskKind::Region,
        }
    }
}

impl Layout {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read layout {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("invalid layout {}", path.display()))
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    /// `<dir>/<file name>` relative to the dataset root.
    pub id: String,
    pub image: PathBuf,
    /// `None` for originals. `Some(None)` when a spliced image has no mask.
    pub mask: Option<Option<PathBuf>>,
}

fn list_images(dir: &Path) -> Result<Vec<PathBuf>> {
    if !dir.is_dir() {
        return Ok(Vec::new());
    }
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot list {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && is_image(p))
        .collect();
    files.sort();
    Ok(files)
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Lists spliced images (with their masks) then originals, each sorted by name.
pub fn scan(root: &Path, layout: &Layout) -> Result<Vec<Entry>> {
    if !root.is_dir() {
        bail!("dataset root {} is not a directory", root.display());
    }
    let masks = list_images(&root.join(&layout.mask_dir))?;
    let mut entries = Vec::new();
    for image in list_images(&root.join(&layout.spliced_dir))? {
        let stem = image
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let want = format!("{stem}{}", layout.mask_suffix);
        let mask = masks
            .iter()
            .find(|m| m.file_stem().is_some_and(|s| s.to_string_lossy() == want))
            .cloned();
        entries.push(Entry {
            id: format!("{}/{}", layout.spliced_dir, file_name(&image)),
            image,
            mask: Some(mask),
        });
    }
    for image in list_images(&root.join(&layout.original_dir))? {
        entries.push(Entry {
            id: format!("{}/{}", layout.original_dir, file_name(&image)),
            image,
            mask: None,
        });
    }
    if entries.is_empty() {
        bail!(
            "dataset {} holds no images under `{}` or `{}`",
            root.display(),
            layout.spliced_dir,
            layout.original_dir
        );
    }
    Ok(entries)
}
