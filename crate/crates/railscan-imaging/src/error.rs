use thiserror::Error;

#[derive(Debug, Error)]
pub enum ImagingError {
    #[error("invalid image data: {0}")]
    Data(String),

    #[error("crop out of bounds: {0}")]
    Bounds(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid class catalog: {0}")]
    Catalog(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("image codec error on {path}: {source}")]
    Codec {
        path: String,
        #[source]
        source: image::ImageError,
    },

    #[error("metadata error on {path}: {detail}")]
    Meta { path: String, detail: String },
}
