use num_complex::Complex64;

use railscan_decision::{FeatureGrid, PairScores};

use crate::fft::{fft2d_real, ifft2d};
use crate::normalize::intensity_normalize;
use crate::{BaselineError, Result};

/// Denominator floor applied when alpha < 1 and the average power spectrum
/// underflows; counted on the filter instead of failing the design.
const DENOM_FLOOR: f64 = 1e-12;

/// An OT-MACH correlation filter in the Fourier domain.
#[derive(Debug, Clone)]
pub struct MachFilter {
    pub class_id: usize,
    pub width: usize,
    pub height: usize,
    pub alpha: f64,
    /// Frequency coefficients, row-major `width x height`.
    pub h: Vec<Complex64>,
    /// Frequency bins whose denominator hit the floor during design.
    pub floored_bins: usize,
}

/// Design `h = [alpha I + (1-alpha) D]^-1 x_bar` per frequency, where
/// `D = (1/N) sum |X_i|^2` is diagonal in the Fourier basis and the
/// samples are intensity-normalized before transforming. At `alpha = 1`
/// the denominator is exactly one and `h` is exactly the average spectrum.
pub fn otmach_design(
    samples: &[Vec<f64>],
    width: usize,
    height: usize,
    alpha: f64,
    class_id: usize,
) -> Result<MachFilter> {
    if samples.is_empty() {
        return Err(BaselineError::Design("no training samples".into()));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(BaselineError::Design(format!("alpha {alpha} outside [0, 1]")));
    }
    let n = width * height;
    let mut mean = vec![Complex64::new(0.0, 0.0); n];
    let mut power = vec![0.0f64; n];
    for s in samples {
        if s.len() != n {
            return Err(BaselineError::Shape(format!(
                "sample length {} vs {width}x{height}",
                s.len()
            )));
        }
        let normalized = intensity_normalize(s)?;
        let spec = fft2d_real(&normalized, width, height);
        for i in 0..n {
            mean[i] += spec[i];
            power[i] += spec[i].norm_sqr();
        }
    }
    let count = samples.len() as f64;
    for v in &mut mean {
        *v /= count;
    }
    for v in &mut power {
        *v /= count;
    }

    let mut h = vec![Complex64::new(0.0, 0.0); n];
    let mut floored_bins = 0;
    for i in 0..n {
        let mut denom = alpha + (1.0 - alpha) * power[i];
        if denom == 0.0 {
            if alpha == 0.0 {
                return Err(BaselineError::Design(format!(
                    "zero spectrum at frequency bin {i} with alpha = 0"
                )));
            }
            denom = DENOM_FLOOR;
            floored_bins += 1;
        } else if alpha < 1.0 && denom < DENOM_FLOOR {
            denom = DENOM_FLOOR;
            floored_bins += 1;
        }
        h[i] = mean[i] / denom;
    }

    // The design equation must hold on construction.
    for i in 0..n {
        let denom = (alpha + (1.0 - alpha) * power[i]).max(if alpha < 1.0 {
            DENOM_FLOOR
        } else {
            0.0
        });
        let back = h[i] * denom;
        if (back - mean[i]).norm() > 1e-10 * (1.0 + mean[i].norm()) {
            return Err(BaselineError::Design(format!(
                "design equation violated at bin {i}"
            )));
        }
    }

    Ok(MachFilter {
        class_id,
        width,
        height,
        alpha,
        h,
        floored_bins,
    })
}

/// Feature-space OT-MACH degenerates to the average feature vector when
/// the features are already intensity-invariant.
pub fn otmach_hog_design(samples: &[Vec<f64>]) -> Result<Vec<f64>> {
    let first = samples
        .first()
        .ok_or_else(|| BaselineError::Design("no training samples".into()))?;
    let dim = first.len();
    let mut mean = vec![0.0; dim];
    for s in samples {
        if s.len() != dim {
            return Err(BaselineError::Shape("ragged feature vectors".into()));
        }
        for (m, v) in mean.iter_mut().zip(s) {
            *m += v;
        }
    }
    let inv = 1.0 / samples.len() as f64;
    for m in &mut mean {
        *m *= inv;
    }
    Ok(mean)
}

/// The filter brought back to the pixel domain (real part; the designed
/// spectrum of real samples is conjugate-symmetric).
pub fn spatial_template(filter: &MachFilter) -> Vec<f64> {
    let mut freq = filter.h.clone();
    ifft2d(&mut freq, filter.width, filter.height);
    freq.into_iter().map(|c| c.re).collect()
}

/// Full linear cross-correlation response of the filter template over every
/// valid placement inside the window, computed in the frequency domain.
/// Returns the response grid and its dimensions.
pub fn correlate_map(
    filter: &MachFilter,
    window: &[f64],
    win_w: usize,
    win_h: usize,
) -> Result<(Vec<f64>, usize, usize)> {
    if window.len() != win_w * win_h {
        return Err(BaselineError::Shape(format!(
            "window length {} vs {win_w}x{win_h}",
            window.len()
        )));
    }
    if win_w < filter.width || win_h < filter.height {
        return Err(BaselineError::Shape(format!(
            "window {win_w}x{win_h} smaller than filter {}x{}",
            filter.width, filter.height
        )));
    }
    let template = spatial_template(filter);
    let pw = win_w.next_power_of_two();
    let ph = win_h.next_power_of_two();

    let mut win_pad = vec![Complex64::new(0.0, 0.0); pw * ph];
    for y in 0..win_h {
        for x in 0..win_w {
            win_pad[y * pw + x] = Complex64::new(window[y * win_w + x], 0.0);
        }
    }
    let mut tpl_pad = vec![Complex64::new(0.0, 0.0); pw * ph];
    for y in 0..filter.height {
        for x in 0..filter.width {
            tpl_pad[y * pw + x] = Complex64::new(template[y * filter.width + x], 0.0);
        }
    }
    crate::fft::fft2d(&mut win_pad, pw, ph);
    crate::fft::fft2d(&mut tpl_pad, pw, ph);
    for (w, t) in win_pad.iter_mut().zip(&tpl_pad) {
        *w *= t.conj();
    }
    ifft2d(&mut win_pad, pw, ph);

    let rw = win_w - filter.width + 1;
    let rh = win_h - filter.height + 1;
    let mut out = vec![0.0; rw * rh];
    for y in 0..rh {
        for x in 0..rw {
            out[y * rw + x] = win_pad[y * pw + x].re;
        }
    }
    Ok((out, rw, rh))
}

/// Peak correlation response and its location (row, col) within the valid
/// search region. Ties go to the lowest linear index.
pub fn correlate(
    filter: &MachFilter,
    window: &[f64],
    win_w: usize,
    win_h: usize,
) -> Result<(f64, (usize, usize))> {
    let (map, rw, _rh) = correlate_map(filter, window, win_w, win_h)?;
    let mut best = f64::NEG_INFINITY;
    let mut best_idx = 0;
    for (i, &v) in map.iter().enumerate() {
        if v > best {
            best = v;
            best_idx = i;
        }
    }
    Ok((best, (best_idx / rw, best_idx % rw)))
}

/// Peak dot-product response of a feature-space filter over a grid of
/// feature vectors.
pub fn correlate_feature_grid(filter: &[f64], grid: &FeatureGrid) -> Result<(f64, usize)> {
    if grid.is_empty() {
        return Err(BaselineError::Shape("empty feature grid".into()));
    }
    if grid.dim != filter.len() {
        return Err(BaselineError::Shape(format!(
            "filter dim {} vs grid dim {}",
            filter.len(),
            grid.dim
        )));
    }
    let mut best = f64::NEG_INFINITY;
    let mut best_cell = 0;
    for i in 0..grid.len() {
        let s: f64 = grid.cell(i).iter().zip(filter).map(|(a, b)| a * b).sum();
        if s > best {
            best = s;
            best_cell = i;
        }
    }
    Ok((best, best_cell))
}

/// Per-class dual templates for the correlation baselines:
/// `b_c = h_c` and `f_c = h_c - sum_{i != c} h_i / (C - 1)`.
pub fn pair_filters(filters: &[(usize, Vec<f64>)]) -> Result<Vec<(usize, Vec<f64>, Vec<f64>)>> {
    let c = filters.len();
    if c < 2 {
        return Err(BaselineError::Design(
            "need at least two classes to form rest templates".into(),
        ));
    }
    let dim = filters[0].1.len();
    if filters.iter().any(|(_, h)| h.len() != dim) {
        return Err(BaselineError::Shape("ragged filters".into()));
    }
    let mut out = Vec::with_capacity(c);
    for (class_id, h) in filters {
        let mut rest = vec![0.0; dim];
        for (other_id, other) in filters {
            if other_id == class_id {
                continue;
            }
            for (r, v) in rest.iter_mut().zip(other) {
                *r += v / (c as f64 - 1.0);
            }
        }
        let f: Vec<f64> = h.iter().zip(&rest).map(|(a, b)| a - b).collect();
        out.push((*class_id, h.clone(), f));
    }
    Ok(out)
}

/// Same construction applied to already-evaluated per-class response maps;
/// valid because the scores are linear in the templates. Feeds the shared
/// decision layer.
pub fn pair_scores_from_responses(responses: &[(usize, Vec<f64>)]) -> Result<Vec<PairScores>> {
    let c = responses.len();
    if c < 2 {
        return Err(BaselineError::Design(
            "need at least two classes to form rest responses".into(),
        ));
    }
    let cells = responses[0].1.len();
    if responses.iter().any(|(_, r)| r.len() != cells) {
        return Err(BaselineError::Shape("ragged response maps".into()));
    }
    let mut out = Vec::with_capacity(c);
    for (class_id, r) in responses {
        let mut rest = vec![0.0; cells];
        for (other_id, other) in responses {
            if other_id == class_id {
                continue;
            }
            for (acc, v) in rest.iter_mut().zip(other) {
                *acc += v / (c as f64 - 1.0);
            }
        }
        out.push(PairScores {
            class_id: *class_id,
            vs_background: r.clone(),
            vs_rest: r.iter().zip(&rest).map(|(a, b)| a - b).collect(),
        });
    }
    Ok(out)
}
