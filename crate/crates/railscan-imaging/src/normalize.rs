use crate::{ImageStrip, ImagingError, Result};

/// Envelope estimation parameters for [`gain_normalize_opts`].
#[derive(Debug, Clone, Copy)]
pub struct GainOpts {
    /// Gaussian smoothing sigma applied to the median-filtered copy.
    pub envelope_sigma: f64,
    /// Intensity level the envelope is normalized to.
    pub target_level: f64,
    /// Square median window (odd). 31 px by default; wide enough to ride
    /// over fasteners and specular highlights.
    pub median_window: usize,
}

impl Default for GainOpts {
    fn default() -> Self {
        Self {
            envelope_sigma: 24.0,
            target_level: 128.0,
            median_window: 31,
        }
    }
}

/// Envelope floor: divisions never see values below one intensity unit.
const ENVELOPE_EPS: f64 = 1.0;

/// Global gain normalization: divide the image by its smoothed signal
/// envelope (median filter, then Gaussian blur) and rescale to
/// `target_level`. Output pixels are real-valued and finite.
pub fn gain_normalize(
    strip: &ImageStrip,
    envelope_sigma: f64,
    target_level: f64,
) -> Result<ImageStrip> {
    gain_normalize_opts(
        strip,
        GainOpts {
            envelope_sigma,
            target_level,
            ..GainOpts::default()
        },
    )
}

pub fn gain_normalize_opts(strip: &ImageStrip, opts: GainOpts) -> Result<ImageStrip> {
    if !(opts.envelope_sigma > 0.0) {
        return Err(ImagingError::Data(format!(
            "envelope sigma must be positive, got {}",
            opts.envelope_sigma
        )));
    }
    if !(opts.target_level > 0.0) {
        return Err(ImagingError::Data(format!(
            "target level must be positive, got {}",
            opts.target_level
        )));
    }
    if opts.median_window == 0 || opts.median_window % 2 == 0 {
        return Err(ImagingError::Data(format!(
            "median window must be odd and positive, got {}",
            opts.median_window
        )));
    }
    // ImageStrip construction already rejects non-finite pixels; re-check
    // here because callers may have mutated the buffer.
    if strip.pixels.iter().any(|v| !v.is_finite()) {
        return Err(ImagingError::Data("non-finite input pixel".into()));
    }

    let med = median_filter(&strip.pixels, strip.width, strip.height, opts.median_window);
    let mut env = gaussian_blur(&med, strip.width, strip.height, opts.envelope_sigma);
    for v in &mut env {
        if *v < ENVELOPE_EPS {
            *v = ENVELOPE_EPS;
        }
    }
    let pixels: Vec<f64> = strip
        .pixels
        .iter()
        .zip(&env)
        .map(|(&p, &e)| p * opts.target_level / e)
        .collect();
    let mut out = strip.clone();
    out.pixels = pixels;
    Ok(out)
}

/// Subtract the training-set mean intensity from every pixel.
pub fn subtract_mean(strip: &ImageStrip, dataset_mean: f64) -> Result<ImageStrip> {
    if !dataset_mean.is_finite() {
        return Err(ImagingError::Data("non-finite dataset mean".into()));
    }
    let mut out = strip.clone();
    for v in &mut out.pixels {
        *v -= dataset_mean;
    }
    Ok(out)
}

/// Median filter with the window clamped to the image bounds (no padding).
/// Even-count windows take the lower median. Integral images in [0, 255]
/// use a sliding-histogram path; anything else falls back to sorting.
pub fn median_filter(pixels: &[f64], width: usize, height: usize, window: usize) -> Vec<f64> {
    debug_assert_eq!(pixels.len(), width * height);
    let integral = pixels
        .iter()
        .all(|&v| v >= 0.0 && v <= 255.0 && v.fract() == 0.0);
    if integral && width * height >= 4096 {
        median_filter_u8(pixels, width, height, window)
    } else {
        median_filter_sort(pixels, width, height, window)
    }
}

fn median_filter_sort(pixels: &[f64], width: usize, height: usize, window: usize) -> Vec<f64> {
    let hw = (window / 2) as i64;
    let mut out = vec![0.0; pixels.len()];
    let mut buf: Vec<f64> = Vec::with_capacity(window * window);
    for r in 0..height as i64 {
        for c in 0..width as i64 {
            buf.clear();
            let r0 = (r - hw).max(0);
            let r1 = (r + hw).min(height as i64 - 1);
            let c0 = (c - hw).max(0);
            let c1 = (c + hw).min(width as i64 - 1);
            for rr in r0..=r1 {
                for cc in c0..=c1 {
                    buf.push(pixels[rr as usize * width + cc as usize]);
                }
            }
            let k = (buf.len() - 1) / 2;
            let (_, m, _) = buf.select_nth_unstable_by(k, |a, b| a.total_cmp(b));
            out[r as usize * width + c as usize] = *m;
        }
    }
    out
}

/// Two-level (16 coarse / 256 fine) sliding histogram median for 8-bit
/// data. Windows are intersected with the image bounds, matching the sort
/// path exactly.
fn median_filter_u8(pixels: &[f64], width: usize, height: usize, window: usize) -> Vec<f64> {
    let hw = window / 2;
    let mut out = vec![0.0; pixels.len()];
    // Per-column histograms over the current row band.
    let mut col_fine = vec![[0u32; 256]; width];
    let mut col_coarse = vec![[0u32; 16]; width];
    let at = |r: usize, c: usize| pixels[r * width + c] as usize;

    // Initialize band for row 0: rows [0, hw].
    let band_hi = hw.min(height - 1);
    for r in 0..=band_hi {
        for c in 0..width {
            let v = at(r, c);
            col_fine[c][v] += 1;
            col_coarse[c][v >> 4] += 1;
        }
    }

    for r in 0..height {
        if r > 0 {
            // Slide the band: drop row r-1-hw, add row r+hw.
            if r >= hw + 1 {
                let dead = r - 1 - hw;
                for c in 0..width {
                    let v = at(dead, c);
                    col_fine[c][v] -= 1;
                    col_coarse[c][v >> 4] -= 1;
                }
            }
            if r + hw < height {
                let fresh = r + hw;
                for c in 0..width {
                    let v = at(fresh, c);
                    col_fine[c][v] += 1;
                    col_coarse[c][v >> 4] += 1;
                }
            }
        }

        // Window histogram over columns [0, hw].
        let mut fine = [0u32; 256];
        let mut coarse = [0u32; 16];
        let mut count: u32 = 0;
        let c_hi = hw.min(width - 1);
        for c in 0..=c_hi {
            for v in 0..256 {
                fine[v] += col_fine[c][v];
            }
            for v in 0..16 {
                coarse[v] += col_coarse[c][v];
            }
            count += col_count(&col_coarse[c]);
        }

        for c in 0..width {
            if c > 0 {
                if c >= hw + 1 {
                    let dead = c - 1 - hw;
                    for v in 0..256 {
                        fine[v] -= col_fine[dead][v];
                    }
                    for v in 0..16 {
                        coarse[v] -= col_coarse[dead][v];
                    }
                    count -= col_count(&col_coarse[dead]);
                }
                if c + hw < width {
                    let fresh = c + hw;
                    for v in 0..256 {
                        fine[v] += col_fine[fresh][v];
                    }
                    for v in 0..16 {
                        coarse[v] += col_coarse[fresh][v];
                    }
                    count += col_count(&col_coarse[fresh]);
                }
            }
            // Lower median: rank (count-1)/2, zero-based.
            let target = (count - 1) / 2;
            let mut acc = 0u32;
            let mut bucket = 0usize;
            for b in 0..16 {
                if acc + coarse[b] > target {
                    bucket = b;
                    break;
                }
                acc += coarse[b];
            }
            let mut med = bucket << 4;
            for v in (bucket << 4)..((bucket + 1) << 4) {
                if acc + fine[v] > target {
                    med = v;
                    break;
                }
                acc += fine[v];
            }
            out[r * width + c] = med as f64;
        }
    }
    out
}

#[inline]
fn col_count(coarse: &[u32; 16]) -> u32 {
    coarse.iter().sum()
}

/// Separable Gaussian blur, kernel truncated at 3 sigma and renormalized
/// over the in-bounds support (no padding).
pub fn gaussian_blur(pixels: &[f64], width: usize, height: usize, sigma: f64) -> Vec<f64> {
    let radius = (3.0 * sigma).ceil() as i64;
    let kernel: Vec<f64> = (-radius..=radius)
        .map(|j| (-((j * j) as f64) / (2.0 * sigma * sigma)).exp())
        .collect();

    // Horizontal pass.
    let mut tmp = vec![0.0; pixels.len()];
    for r in 0..height {
        let row = &pixels[r * width..(r + 1) * width];
        for c in 0..width as i64 {
            let mut s = 0.0;
            let mut ws = 0.0;
            let lo = (c - radius).max(0);
            let hi = (c + radius).min(width as i64 - 1);
            for x in lo..=hi {
                let k = kernel[(x - c + radius) as usize];
                s += k * row[x as usize];
                ws += k;
            }
            tmp[r * width + c as usize] = s / ws;
        }
    }
    // Vertical pass.
    let mut out = vec![0.0; pixels.len()];
    for c in 0..width {
        for r in 0..height as i64 {
            let mut s = 0.0;
            let mut ws = 0.0;
            let lo = (r - radius).max(0);
            let hi = (r + radius).min(height as i64 - 1);
            for y in lo..=hi {
                let k = kernel[(y - r + radius) as usize];
                s += k * tmp[y as usize * width + c];
                ws += k;
            }
            out[r as usize * width + c] = s / ws;
        }
    }
    out
}
