//! Trackbed image handling: strips, illumination normalization, patch
//! extraction and label-aware mirroring.
//!
//! Everything here operates on `f64` pixel grids; 8-bit quantization only
//! happens at file boundaries (PGM/PNG read and write). All functions are
//! pure over immutable inputs and take any RNG explicitly, so they are safe
//! to call from parallel workers.

mod catalog;
mod error;
mod normalize;
mod patch;
mod strip;

pub use catalog::{ClassCatalog, Condition, MaterialClass, ObjectClassDef, BACKGROUND_CLASS};
pub use error::ImagingError;
pub use normalize::{gain_normalize, gain_normalize_opts, subtract_mean, GainOpts};
pub use patch::{crop_patch, mirror, Axis, Patch, PatchLabel, PatchSource};
pub use strip::{ImageStrip, StripMeta};

pub type Result<T> = std::result::Result<T, ImagingError>;
