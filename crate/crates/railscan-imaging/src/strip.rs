use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{ImagingError, Result};

/// A grayscale trackbed image. Rows run along-track, columns across-track.
///
/// Pixels are stored as `f64`; strips loaded from disk hold values in
/// `[0, 255]` until normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageStrip {
    pub width: usize,
    pub height: usize,
    /// Row-major, `height * width` values, all finite.
    pub pixels: Vec<f64>,
    /// Physical pixel pitch in millimeters (0.86 at the reference
    /// operating point).
    pub pixel_pitch_mm: f64,
    /// Along-track offset of row 0 in pixels from the start of the mile.
    pub origin: i64,
    pub mile_id: String,
}

/// Sidecar metadata stored next to the image file as TOML.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StripMeta {
    pub pixel_pitch_mm: f64,
    pub origin: i64,
    pub mile_id: String,
}

impl ImageStrip {
    pub fn new(
        width: usize,
        height: usize,
        pixels: Vec<f64>,
        pixel_pitch_mm: f64,
        origin: i64,
        mile_id: impl Into<String>,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(ImagingError::Data(format!(
                "strip dimensions must be positive, got {width}x{height}"
            )));
        }
        if pixels.len() != width * height {
            return Err(ImagingError::Data(format!(
                "pixel count {} does not match {width}x{height}",
                pixels.len()
            )));
        }
        if !(pixel_pitch_mm > 0.0) {
            return Err(ImagingError::Data(format!(
                "pixel pitch must be positive, got {pixel_pitch_mm}"
            )));
        }
        if let Some(bad) = pixels.iter().position(|v| !v.is_finite()) {
            return Err(ImagingError::Data(format!(
                "non-finite pixel at index {bad}"
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
            pixel_pitch_mm,
            origin,
            mile_id: mile_id.into(),
        })
    }

    pub fn from_u8(
        width: usize,
        height: usize,
        bytes: &[u8],
        pixel_pitch_mm: f64,
        origin: i64,
        mile_id: impl Into<String>,
    ) -> Result<Self> {
        let pixels = bytes.iter().map(|&b| b as f64).collect();
        Self::new(width, height, pixels, pixel_pitch_mm, origin, mile_id)
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.width + col]
    }

    pub fn meta(&self) -> StripMeta {
        StripMeta {
            pixel_pitch_mm: self.pixel_pitch_mm,
            origin: self.origin,
            mile_id: self.mile_id.clone(),
        }
    }

    /// Quantize to 8 bits (round, clamp to `[0, 255]`).
    pub fn to_u8(&self) -> Vec<u8> {
        self.pixels
            .iter()
            .map(|&v| v.round().clamp(0.0, 255.0) as u8)
            .collect()
    }

    /// Write the image (format from extension: `.pgm` or `.png`) plus the
    /// TOML metadata sidecar at `<path>.meta.toml`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let buf: image::GrayImage =
            image::ImageBuffer::from_raw(self.width as u32, self.height as u32, self.to_u8())
                .expect("buffer size matches dimensions");
        buf.save(path).map_err(|source| ImagingError::Codec {
            path: path.display().to_string(),
            source,
        })?;
        let meta = toml::to_string(&self.meta()).expect("meta serializes");
        let meta_path = sidecar_path(path);
        std::fs::write(&meta_path, meta).map_err(|source| ImagingError::Io {
            path: meta_path.display().to_string(),
            source,
        })
    }

    /// Load an 8-bit grayscale image and its metadata sidecar.
    pub fn load(path: &Path) -> Result<Self> {
        let img = image::open(path).map_err(|source| ImagingError::Codec {
            path: path.display().to_string(),
            source,
        })?;
        let gray = img.into_luma8();
        let (w, h) = gray.dimensions();
        let meta_path = sidecar_path(path);
        let meta_text =
            std::fs::read_to_string(&meta_path).map_err(|source| ImagingError::Io {
                path: meta_path.display().to_string(),
                source,
            })?;
        let meta: StripMeta = toml::from_str(&meta_text).map_err(|e| ImagingError::Meta {
            path: meta_path.display().to_string(),
            detail: e.to_string(),
        })?;
        Self::from_u8(
            w as usize,
            h as usize,
            gray.as_raw(),
            meta.pixel_pitch_mm,
            meta.origin,
            meta.mile_id,
        )
    }
}

fn sidecar_path(image_path: &Path) -> std::path::PathBuf {
    let mut s = image_path.as_os_str().to_os_string();
    s.push(".meta.toml");
    std::path::PathBuf::from(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite_pixels() {
        let err = ImageStrip::new(2, 1, vec![1.0, f64::NAN], 0.86, 0, "m0");
        assert!(matches!(err, Err(ImagingError::Data(_))));
    }

    #[test]
    fn rejects_bad_pitch() {
        assert!(ImageStrip::new(1, 1, vec![0.0], 0.0, 0, "m0").is_err());
        assert!(ImageStrip::new(1, 1, vec![0.0], -1.0, 0, "m0").is_err());
    }

    #[test]
    fn save_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.pgm");
        let strip =
            ImageStrip::from_u8(3, 2, &[0, 50, 100, 150, 200, 255], 0.86, 1234, "mile7").unwrap();
        strip.save(&path).unwrap();
        let back = ImageStrip::load(&path).unwrap();
        assert_eq!(back, strip);
    }

    #[test]
    fn png_also_supported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.png");
        let strip = ImageStrip::from_u8(2, 2, &[9, 8, 7, 6], 1.72, 0, "m1").unwrap();
        strip.save(&path).unwrap();
        assert_eq!(ImageStrip::load(&path).unwrap(), strip);
    }
}
