use rand::Rng;

use crate::Tensor;

pub fn relu(input: &Tensor) -> Tensor {
    let mut out = input.clone();
    for v in &mut out.data {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    out
}

/// Subgradient at zero is zero: gradient passes only where the input was
/// strictly positive.
pub fn relu_backward(d_out: &Tensor, input: &Tensor) -> Tensor {
    debug_assert_eq!(d_out.shape(), input.shape());
    let mut d_in = d_out.clone();
    for (g, &x) in d_in.data.iter_mut().zip(&input.data) {
        if x <= 0.0 {
            *g = 0.0;
        }
    }
    d_in
}

/// Inverted dropout: in train mode units are zeroed with probability
/// `ratio` and survivors are scaled by `1/(1-ratio)`, so eval mode is the
/// identity and needs no rescaling. Returns the keep mask used (empty in
/// eval mode or at ratio 0).
pub fn dropout(input: &Tensor, ratio: f64, train: bool, rng: &mut impl Rng) -> (Tensor, Vec<bool>) {
    assert!((0.0..1.0).contains(&ratio), "dropout ratio must be in [0,1)");
    if !train || ratio == 0.0 {
        return (input.clone(), Vec::new());
    }
    let scale = 1.0 / (1.0 - ratio);
    let mut out = input.clone();
    let mut mask = vec![true; input.numel()];
    for (v, keep) in out.data.iter_mut().zip(mask.iter_mut()) {
        if rng.gen::<f64>() < ratio {
            *v = 0.0;
            *keep = false;
        } else {
            *v *= scale;
        }
    }
    (out, mask)
}

pub fn dropout_backward(d_out: &Tensor, mask: &[bool], ratio: f64) -> Tensor {
    if mask.is_empty() {
        return d_out.clone();
    }
    let scale = 1.0 / (1.0 - ratio);
    let mut d_in = d_out.clone();
    for (g, &keep) in d_in.data.iter_mut().zip(mask) {
        *g = if keep { *g * scale } else { 0.0 };
    }
    d_in
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn relu_all_negative_is_zero() {
        let t = Tensor::vector(vec![-3.0, -0.5, -1e9]);
        assert!(relu(&t).data.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn relu_all_positive_is_identity() {
        let t = Tensor::vector(vec![3.0, 0.5, 1e9]);
        assert_eq!(relu(&t).data, t.data);
    }

    #[test]
    fn relu_finite_difference_away_from_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let xs: Vec<f64> = (0..64)
            .map(|_| {
                let v: f64 = rng.gen_range(0.1..1.0);
                if rng.gen::<bool>() {
                    v
                } else {
                    -v
                }
            })
            .collect();
        let t = Tensor::vector(xs.clone());
        let mix: Vec<f64> = (0..64).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let d_out = Tensor::vector(mix.clone());
        let d_in = relu_backward(&d_out, &t);
        let err = crate::gradcheck::finite_diff_check(
            &mut |x| {
                let r = relu(&Tensor::vector(x.to_vec()));
                r.data.iter().zip(&mix).map(|(a, b)| a * b).sum()
            },
            &xs,
            &d_in.data,
            1e-5,
        );
        assert!(err < 1e-7, "relu gradient error {err}");
    }

    #[test]
    fn dropout_identity_cases() {
        let t = Tensor::vector(vec![1.0, -2.0, 3.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (a, mask_a) = dropout(&t, 0.0, true, &mut rng);
        assert_eq!(a.data, t.data);
        assert!(mask_a.is_empty());
        let (b, mask_b) = dropout(&t, 0.7, false, &mut rng);
        assert_eq!(b.data, t.data);
        assert!(mask_b.is_empty());
    }

    #[test]
    fn dropout_rate_and_expectation() {
        let n = 1_000_000usize;
        let t = Tensor::vector(vec![1.0; n]);
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        let (out, mask) = dropout(&t, 0.1, true, &mut rng);
        let dropped = mask.iter().filter(|&&k| !k).count() as f64 / n as f64;
        assert!((dropped - 0.1).abs() < 0.002, "drop rate {dropped}");
        let mean = out.data.iter().sum::<f64>() / n as f64;
        assert!((mean - 1.0).abs() / 1.0 < 0.005, "mean {mean}");
    }
}
