//! Versioned binary tensor container used for model checkpoints and
//! correlation-filter banks.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic      8 bytes  "RLSNCKP1"
//! version    u32
//! arch_hash  u64      FNV-1a of the architecture description
//! iteration  u64      training iteration the file was written at
//! n_tensors  u32
//! entry*     n_tensors of:
//!   name_len u32, name (UTF-8)
//!   dtype    u8       0 = f32, 1 = complex64 (interleaved re/im f32)
//!   ndim     u32, dims ndim x u32
//!   payload  numel * (1 or 2) * f32
//! ```

use std::io::{Read, Write};
use std::path::Path;

use crate::{NetError, Result};

pub const CHECKPOINT_MAGIC: [u8; 8] = *b"RLSNCKP1";
const CHECKPOINT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dtype {
    F32 = 0,
    /// Interleaved re/im pairs.
    Complex64 = 1,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedTensor {
    pub name: String,
    pub dims: Vec<usize>,
    pub dtype: Dtype,
    pub data: Vec<f32>,
}

impl NamedTensor {
    pub fn from_f64(name: impl Into<String>, dims: Vec<usize>, values: &[f64]) -> Self {
        let numel: usize = dims.iter().product();
        assert_eq!(numel, values.len(), "dims do not match value count");
        Self {
            name: name.into(),
            dims,
            dtype: Dtype::F32,
            data: values.iter().map(|&v| v as f32).collect(),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|&v| v as f64).collect()
    }

    pub fn numel(&self) -> usize {
        self.dims.iter().product()
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TensorFile {
    pub arch_hash: u64,
    pub iteration: u64,
    pub entries: Vec<NamedTensor>,
}

impl TensorFile {
    pub fn new(arch_hash: u64, iteration: u64) -> Self {
        Self {
            arch_hash,
            iteration,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, t: NamedTensor) {
        self.entries.push(t);
    }

    pub fn get(&self, name: &str) -> Option<&NamedTensor> {
        self.entries.iter().find(|t| t.name == name)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let io_err = |source| NetError::Io {
            path: path.display().to_string(),
            source,
        };
        let mut buf: Vec<u8> = Vec::new();
        buf.extend_from_slice(&CHECKPOINT_MAGIC);
        buf.extend_from_slice(&CHECKPOINT_VERSION.to_le_bytes());
        buf.extend_from_slice(&self.arch_hash.to_le_bytes());
        buf.extend_from_slice(&self.iteration.to_le_bytes());
        buf.extend_from_slice(&(self.entries.len() as u32).to_le_bytes());
        for t in &self.entries {
            let name = t.name.as_bytes();
            buf.extend_from_slice(&(name.len() as u32).to_le_bytes());
            buf.extend_from_slice(name);
            buf.push(t.dtype as u8);
            buf.extend_from_slice(&(t.dims.len() as u32).to_le_bytes());
            for &d in &t.dims {
                buf.extend_from_slice(&(d as u32).to_le_bytes());
            }
            let expect = t.numel() * if t.dtype == Dtype::Complex64 { 2 } else { 1 };
            if t.data.len() != expect {
                return Err(NetError::Format(format!(
                    "tensor {} has {} values, dims imply {expect}",
                    t.name,
                    t.data.len()
                )));
            }
            for &v in &t.data {
                buf.extend_from_slice(&v.to_le_bytes());
            }
        }
        let mut f = std::fs::File::create(path).map_err(io_err)?;
        f.write_all(&buf).map_err(io_err)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let io_err = |source| NetError::Io {
            path: path.display().to_string(),
            source,
        };
        let mut bytes = Vec::new();
        std::fs::File::open(path)
            .map_err(io_err)?
            .read_to_end(&mut bytes)
            .map_err(io_err)?;
        let mut cur = Cursor { bytes: &bytes, pos: 0 };

        let magic = cur.take(8)?;
        if magic != CHECKPOINT_MAGIC {
            return Err(NetError::Format("bad magic".into()));
        }
        let version = cur.u32()?;
        if version != CHECKPOINT_VERSION {
            return Err(NetError::Format(format!("unsupported version {version}")));
        }
        let arch_hash = cur.u64()?;
        let iteration = cur.u64()?;
        let n = cur.u32()? as usize;
        let mut entries = Vec::with_capacity(n);
        for _ in 0..n {
            let name_len = cur.u32()? as usize;
            let name = String::from_utf8(cur.take(name_len)?.to_vec())
                .map_err(|e| NetError::Format(format!("bad tensor name: {e}")))?;
            let dtype = match cur.u8()? {
                0 => Dtype::F32,
                1 => Dtype::Complex64,
                other => return Err(NetError::Format(format!("unknown dtype {other}"))),
            };
            let ndim = cur.u32()? as usize;
            let mut dims = Vec::with_capacity(ndim);
            for _ in 0..ndim {
                dims.push(cur.u32()? as usize);
            }
            let numel: usize = dims.iter().product();
            let len = numel * if dtype == Dtype::Complex64 { 2 } else { 1 };
            let raw = cur.take(len * 4)?;
            let data = raw
                .chunks_exact(4)
                .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
                .collect();
            entries.push(NamedTensor {
                name,
                dims,
                dtype,
                data,
            });
        }
        Ok(Self {
            arch_hash,
            iteration,
            entries,
        })
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.bytes.len() {
            return Err(NetError::Format("truncated file".into()));
        }
        let s = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }
    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }
    fn u32(&mut self) -> Result<u32> {
        let b = self.take(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }
    fn u64(&mut self) -> Result<u64> {
        let b = self.take(8)?;
        Ok(u64::from_le_bytes([
            b[0], b[1], b[2], b[3], b[4], b[5], b[6], b[7],
        ]))
    }
}

/// FNV-1a, used to fingerprint architecture descriptions in checkpoints.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.ckpt");
        let mut file = TensorFile::new(fnv1a64(b"arch-v1"), 42);
        file.push(NamedTensor::from_f64(
            "conv1.weights",
            vec![2, 1, 3, 3],
            &(0..18).map(|v| v as f64 * 0.5).collect::<Vec<_>>(),
        ));
        file.push(NamedTensor {
            name: "filters.pr_clip".into(),
            dims: vec![2, 2],
            dtype: Dtype::Complex64,
            data: vec![1.0, -1.0, 0.5, 0.25, 0.0, 2.0, 3.0, -0.5],
        });
        file.save(&path).unwrap();
        let back = TensorFile::load(&path).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.get("conv1.weights").unwrap().dims, vec![2, 1, 3, 3]);
    }

    #[test]
    fn rejects_corrupt_magic() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.ckpt");
        std::fs::write(&path, b"NOTMAGIC....").unwrap();
        assert!(matches!(
            TensorFile::load(&path),
            Err(NetError::Format(_))
        ));
    }

    #[test]
    fn fnv_reference_values() {
        // Standard FNV-1a test vectors.
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
    }
}
