use crate::{BaselineError, Result};

/// Histogram-of-oriented-gradients geometry. Orientation bins are unsigned
/// (gradients folded into `[0, pi)`), blocks slide one cell at a time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HogGeometry {
    /// Cell side in pixels.
    pub cell_size: usize,
    /// Block side in cells.
    pub block_cells: usize,
    /// Orientation bins over [0, pi).
    pub bins: usize,
}

impl Default for HogGeometry {
    fn default() -> Self {
        Self {
            cell_size: 8,
            block_cells: 2,
            bins: 9,
        }
    }
}

impl HogGeometry {
    pub fn cells(&self, side: usize) -> usize {
        side / self.cell_size
    }

    /// Descriptor length for a `w x h` window.
    pub fn descriptor_len(&self, width: usize, height: usize) -> usize {
        let cx = self.cells(width);
        let cy = self.cells(height);
        if cx < self.block_cells || cy < self.block_cells {
            return 0;
        }
        let bx = cx - self.block_cells + 1;
        let by = cy - self.block_cells + 1;
        bx * by * self.block_cells * self.block_cells * self.bins
    }
}

const L2_HYS_CLIP: f64 = 0.2;
const NORM_EPS: f64 = 1e-10;

/// Compute the HOG descriptor of a `width x height` patch: [-1, 0, 1]
/// gradients with clamped borders, soft orientation binning into per-cell
/// histograms, then L2-Hys block normalization (clip 0.2, renormalize) and
/// concatenation.
pub fn hog(patch: &[f64], width: usize, height: usize, geo: &HogGeometry) -> Result<Vec<f64>> {
    if patch.len() != width * height {
        return Err(BaselineError::Shape(format!(
            "patch length {} vs {width}x{height}",
            patch.len()
        )));
    }
    if geo.cell_size == 0 || geo.bins == 0 || geo.block_cells == 0 {
        return Err(BaselineError::Shape("degenerate HOG geometry".into()));
    }
    if width % geo.cell_size != 0 || height % geo.cell_size != 0 {
        return Err(BaselineError::Shape(format!(
            "window {width}x{height} not divisible by cell size {}",
            geo.cell_size
        )));
    }
    let cx = geo.cells(width);
    let cy = geo.cells(height);
    if cx < geo.block_cells || cy < geo.block_cells {
        return Err(BaselineError::Shape(
            "window smaller than one block".into(),
        ));
    }

    let hist = cell_histograms(patch, width, height, geo);

    // L2-Hys over sliding blocks.
    let bx = cx - geo.block_cells + 1;
    let by = cy - geo.block_cells + 1;
    let block_len = geo.block_cells * geo.block_cells * geo.bins;
    let mut out = Vec::with_capacity(bx * by * block_len);
    let mut block = vec![0.0; block_len];
    for yb in 0..by {
        for xb in 0..bx {
            let mut idx = 0;
            for dy in 0..geo.block_cells {
                for dx in 0..geo.block_cells {
                    let cell = (yb + dy) * cx + (xb + dx);
                    for b in 0..geo.bins {
                        block[idx] = hist[cell * geo.bins + b];
                        idx += 1;
                    }
                }
            }
            let norm = block.iter().map(|v| v * v).sum::<f64>().sqrt() + NORM_EPS;
            for v in &mut block {
                *v = (*v / norm).min(L2_HYS_CLIP);
            }
            let norm2 = block.iter().map(|v| v * v).sum::<f64>().sqrt() + NORM_EPS;
            for v in &mut block {
                *v /= norm2;
            }
            out.extend_from_slice(&block);
        }
    }
    Ok(out)
}

/// Per-cell unsigned orientation histograms (row-major over cells), before
/// any block normalization.
pub(crate) fn cell_histograms(
    patch: &[f64],
    width: usize,
    height: usize,
    geo: &HogGeometry,
) -> Vec<f64> {
    let cx = geo.cells(width);
    let cy = geo.cells(height);
    let mut hist = vec![0.0; cx * cy * geo.bins];
    let at = |y: usize, x: usize| patch[y * width + x];
    for y in 0..height {
        let cell_y = y / geo.cell_size;
        if cell_y >= cy {
            continue;
        }
        for x in 0..width {
            let cell_x = x / geo.cell_size;
            if cell_x >= cx {
                continue;
            }
            let gx = at(y, (x + 1).min(width - 1)) - at(y, x.saturating_sub(1));
            let gy = at((y + 1).min(height - 1), x) - at(y.saturating_sub(1), x);
            let mag = gx.hypot(gy);
            if mag == 0.0 {
                continue;
            }
            // Unsigned orientation in [0, pi).
            let mut theta = gy.atan2(gx);
            if theta < 0.0 {
                theta += std::f64::consts::PI;
            }
            if theta >= std::f64::consts::PI {
                theta -= std::f64::consts::PI;
            }
            // Soft binning between the two nearest bin centers at b*pi/bins.
            let t = theta * geo.bins as f64 / std::f64::consts::PI;
            let lo = t.floor() as usize % geo.bins;
            let hi = (lo + 1) % geo.bins;
            let frac = t - t.floor();
            let base = (cell_y * cx + cell_x) * geo.bins;
            hist[base + lo] += mag * (1.0 - frac);
            hist[base + hi] += mag * frac;
        }
    }
    hist
}
