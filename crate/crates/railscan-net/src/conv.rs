use crate::{NetError, Result, Tensor};

/// Weights of a valid (unpadded) 2-D convolution layer.
///
/// `weights` is laid out `(out_c, in_c, kh, kw)`, `bias` has one entry per
/// output channel.
#[derive(Debug, Clone, PartialEq)]
pub struct Conv2d {
    pub in_c: usize,
    pub out_c: usize,
    pub kh: usize,
    pub kw: usize,
    pub stride: usize,
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct ConvGrads {
    pub d_input: Tensor,
    pub d_weights: Vec<f64>,
    pub d_bias: Vec<f64>,
}

impl Conv2d {
    pub fn zeros(in_c: usize, out_c: usize, kh: usize, kw: usize, stride: usize) -> Self {
        Self {
            in_c,
            out_c,
            kh,
            kw,
            stride,
            weights: vec![0.0; out_c * in_c * kh * kw],
            bias: vec![0.0; out_c],
        }
    }

    fn check(&self, input: &Tensor) -> Result<(usize, usize)> {
        if self.stride == 0 {
            return Err(NetError::Shape("stride must be >= 1".into()));
        }
        if input.c != self.in_c {
            return Err(NetError::Shape(format!(
                "input has {} channels, kernel expects {}",
                input.c, self.in_c
            )));
        }
        if input.h < self.kh || input.w < self.kw {
            return Err(NetError::Shape(format!(
                "kernel {}x{} larger than input {}x{}",
                self.kh, self.kw, input.h, input.w
            )));
        }
        let oh = (input.h - self.kh) / self.stride + 1;
        let ow = (input.w - self.kw) / self.stride + 1;
        Ok((oh, ow))
    }
}

/// Lower the receptive fields into a `(in_c*kh*kw) x (oh*ow)` matrix.
fn im2col(input: &Tensor, conv: &Conv2d, oh: usize, ow: usize, cols: &mut Vec<f64>) {
    let ick = conv.in_c * conv.kh * conv.kw;
    let spatial = oh * ow;
    cols.clear();
    cols.resize(ick * spatial, 0.0);
    let s = conv.stride;
    for ic in 0..conv.in_c {
        let plane = &input.data[ic * input.h * input.w..(ic + 1) * input.h * input.w];
        for ky in 0..conv.kh {
            for kx in 0..conv.kw {
                let row = ((ic * conv.kh + ky) * conv.kw + kx) * spatial;
                for oy in 0..oh {
                    let src = (oy * s + ky) * input.w + kx;
                    let dst = row + oy * ow;
                    if s == 1 {
                        cols[dst..dst + ow].copy_from_slice(&plane[src..src + ow]);
                    } else {
                        for ox in 0..ow {
                            cols[dst + ox] = plane[src + ox * s];
                        }
                    }
                }
            }
        }
    }
}

/// Scatter-add the column matrix back into an input-shaped tensor.
fn col2im(cols: &[f64], conv: &Conv2d, oh: usize, ow: usize, d_input: &mut Tensor) {
    let spatial = oh * ow;
    let s = conv.stride;
    for ic in 0..conv.in_c {
        let plane_off = ic * d_input.h * d_input.w;
        for ky in 0..conv.kh {
            for kx in 0..conv.kw {
                let row = ((ic * conv.kh + ky) * conv.kw + kx) * spatial;
                for oy in 0..oh {
                    let dst = plane_off + (oy * s + ky) * d_input.w + kx;
                    let src = row + oy * ow;
                    for ox in 0..ow {
                        d_input.data[dst + ox * s] += cols[src + ox];
                    }
                }
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn dgemm(
    m: usize,
    k: usize,
    n: usize,
    a: &[f64],
    rsa: isize,
    csa: isize,
    b: &[f64],
    rsb: isize,
    csb: isize,
    c: &mut [f64],
) {
    unsafe {
        matrixmultiply::dgemm(
            m,
            k,
            n,
            1.0,
            a.as_ptr(),
            rsa,
            csa,
            b.as_ptr(),
            rsb,
            csb,
            0.0,
            c.as_mut_ptr(),
            n as isize,
            1,
        );
    }
}

/// Valid convolution: output dims are `floor((in - k)/stride) + 1` per axis.
pub fn conv2d_valid(input: &Tensor, conv: &Conv2d) -> Result<Tensor> {
    let (oh, ow) = conv.check(input)?;
    let spatial = oh * ow;
    let ick = conv.in_c * conv.kh * conv.kw;
    let mut cols = Vec::new();
    im2col(input, conv, oh, ow, &mut cols);
    let mut out = Tensor::zeros(conv.out_c, oh, ow);
    dgemm(
        conv.out_c,
        ick,
        spatial,
        &conv.weights,
        ick as isize,
        1,
        &cols,
        spatial as isize,
        1,
        &mut out.data,
    );
    for oc in 0..conv.out_c {
        let b = conv.bias[oc];
        for v in &mut out.data[oc * spatial..(oc + 1) * spatial] {
            *v += b;
        }
    }
    Ok(out)
}

/// Exact adjoint of [`conv2d_valid`]: gradients for the input, the weights
/// and the bias given the upstream gradient `d_out`.
pub fn conv2d_backward(input: &Tensor, conv: &Conv2d, d_out: &Tensor) -> Result<ConvGrads> {
    let (oh, ow) = conv.check(input)?;
    if d_out.shape() != (conv.out_c, oh, ow) {
        return Err(NetError::Shape(format!(
            "upstream gradient shape {:?} does not match output ({}, {oh}, {ow})",
            d_out.shape(),
            conv.out_c
        )));
    }
    let spatial = oh * ow;
    let ick = conv.in_c * conv.kh * conv.kw;
    let mut cols = Vec::new();
    im2col(input, conv, oh, ow, &mut cols);

    let mut d_bias = vec![0.0; conv.out_c];
    for oc in 0..conv.out_c {
        d_bias[oc] = d_out.data[oc * spatial..(oc + 1) * spatial].iter().sum();
    }

    // dW (oc x ick) = d_out (oc x S) * cols^T (S x ick)
    let mut d_weights = vec![0.0; conv.out_c * ick];
    dgemm(
        conv.out_c,
        spatial,
        ick,
        &d_out.data,
        spatial as isize,
        1,
        &cols,
        1,
        spatial as isize,
        &mut d_weights,
    );

    // d_cols (ick x S) = W^T (ick x oc) * d_out (oc x S)
    let mut d_cols = vec![0.0; ick * spatial];
    dgemm(
        ick,
        conv.out_c,
        spatial,
        &conv.weights,
        1,
        ick as isize,
        &d_out.data,
        spatial as isize,
        1,
        &mut d_cols,
    );
    let mut d_input = Tensor::zeros(input.c, input.h, input.w);
    col2im(&d_cols, conv, oh, ow, &mut d_input);

    Ok(ConvGrads {
        d_input,
        d_weights,
        d_bias,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive_conv(input: &Tensor, conv: &Conv2d) -> Tensor {
        let oh = (input.h - conv.kh) / conv.stride + 1;
        let ow = (input.w - conv.kw) / conv.stride + 1;
        let mut out = Tensor::zeros(conv.out_c, oh, ow);
        for oc in 0..conv.out_c {
            for oy in 0..oh {
                for ox in 0..ow {
                    let mut acc = conv.bias[oc];
                    for ic in 0..conv.in_c {
                        for ky in 0..conv.kh {
                            for kx in 0..conv.kw {
                                let wv = conv.weights
                                    [((oc * conv.in_c + ic) * conv.kh + ky) * conv.kw + kx];
                                acc += wv
                                    * input.at(ic, oy * conv.stride + ky, ox * conv.stride + kx);
                            }
                        }
                    }
                    *out.at_mut(oc, oy, ox) = acc;
                }
            }
        }
        out
    }

    #[test]
    fn identity_kernel() {
        let input = Tensor::from_vec(1, 3, 3, (1..=9).map(|v| v as f64).collect());
        let mut conv = Conv2d::zeros(1, 1, 1, 1, 1);
        conv.weights[0] = 1.0;
        let out = conv2d_valid(&input, &conv).unwrap();
        assert_eq!(out.data, input.data);
    }

    #[test]
    fn all_ones_3x3_sums_to_nine() {
        let input = Tensor::from_vec(1, 3, 3, vec![1.0; 9]);
        let mut conv = Conv2d::zeros(1, 1, 3, 3, 1);
        conv.weights.iter_mut().for_each(|w| *w = 1.0);
        let out = conv2d_valid(&input, &conv).unwrap();
        assert_eq!(out.shape(), (1, 1, 1));
        assert_eq!(out.data[0], 9.0);
    }

    #[test]
    fn kernel_larger_than_input_is_error() {
        let input = Tensor::zeros(1, 2, 2);
        let conv = Conv2d::zeros(1, 1, 3, 3, 1);
        assert!(matches!(
            conv2d_valid(&input, &conv),
            Err(NetError::Shape(_))
        ));
    }

    #[test]
    fn matches_naive_convolution() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(ic, oc, h, w, k, s) in
            &[(1, 4, 8, 8, 3, 2), (3, 2, 7, 9, 3, 1), (2, 5, 6, 6, 5, 1), (4, 3, 9, 5, 1, 2)]
        {
            let input = Tensor::from_vec(
                ic,
                h,
                w,
                (0..ic * h * w).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            );
            let mut conv = Conv2d::zeros(ic, oc, k, k, s);
            conv.weights.iter_mut().for_each(|v| *v = rng.gen_range(-1.0..1.0));
            conv.bias.iter_mut().for_each(|v| *v = rng.gen_range(-1.0..1.0));
            let fast = conv2d_valid(&input, &conv).unwrap();
            let slow = naive_conv(&input, &conv);
            assert_eq!(fast.shape(), slow.shape());
            for (a, b) in fast.data.iter().zip(&slow.data) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn output_shape_formula_holds() {
        // floor((in - k)/stride) + 1, for all in >= k over a grid of cases.
        for k in 1..=6usize {
            for n in k..=20usize {
                for s in 1..=3usize {
                    let input = Tensor::zeros(1, n, k);
                    let conv = Conv2d::zeros(1, 1, k, k, s);
                    let out = conv2d_valid(&input, &conv).unwrap();
                    assert_eq!(out.h, (n - k) / s + 1);
                    assert_eq!(out.w, 1);
                }
            }
        }
    }

    #[test]
    fn gradients_match_finite_differences() {
        // Random 1x8x8 input, 4 kernels 3x3, stride 2 per the reference
        // case, checked through the shared harness.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let input = Tensor::from_vec(1, 8, 8, (0..64).map(|_| rng.gen_range(-1.0..1.0)).collect());
        let mut conv = Conv2d::zeros(1, 4, 3, 3, 2);
        conv.weights.iter_mut().for_each(|v| *v = rng.gen_range(-1.0..1.0));
        conv.bias.iter_mut().for_each(|v| *v = rng.gen_range(-0.5..0.5));

        // Scalar objective: weighted sum of outputs (fixed random weights).
        let out0 = conv2d_valid(&input, &conv).unwrap();
        let mix: Vec<f64> = (0..out0.numel()).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let d_out = Tensor::from_vec(out0.c, out0.h, out0.w, mix.clone());
        let grads = conv2d_backward(&input, &conv, &d_out).unwrap();

        let loss_at_input = |x: &[f64]| {
            let t = Tensor::from_vec(1, 8, 8, x.to_vec());
            let o = conv2d_valid(&t, &conv).unwrap();
            o.data.iter().zip(&mix).map(|(a, b)| a * b).sum::<f64>()
        };
        let err = crate::gradcheck::finite_diff_check(
            &mut |x| loss_at_input(x),
            &input.data,
            &grads.d_input.data,
            1e-5,
        );
        assert!(err < 1e-6, "input gradient error {err}");

        let loss_at_weights = |wv: &[f64]| {
            let mut c2 = conv.clone();
            c2.weights = wv.to_vec();
            let o = conv2d_valid(&input, &c2).unwrap();
            o.data.iter().zip(&mix).map(|(a, b)| a * b).sum::<f64>()
        };
        let errw = crate::gradcheck::finite_diff_check(
            &mut |wv| loss_at_weights(wv),
            &conv.weights,
            &grads.d_weights,
            1e-5,
        );
        assert!(errw < 1e-6, "weight gradient error {errw}");

        let loss_at_bias = |bv: &[f64]| {
            let mut c2 = conv.clone();
            c2.bias = bv.to_vec();
            let o = conv2d_valid(&input, &c2).unwrap();
            o.data.iter().zip(&mix).map(|(a, b)| a * b).sum::<f64>()
        };
        let errb = crate::gradcheck::finite_diff_check(
            &mut |bv| loss_at_bias(bv),
            &conv.bias,
            &grads.d_bias,
            1e-5,
        );
        assert!(errb < 1e-6, "bias gradient error {errb}");
    }
}
