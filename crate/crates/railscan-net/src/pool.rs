use crate::{NetError, Result, Tensor};

/// Overlapping max pooling. Ties break toward the smallest linear index of
/// the input plane, which keeps backward routing deterministic. Returns the
/// pooled tensor plus the winning input index per output element.
pub fn maxpool(input: &Tensor, k: usize, stride: usize) -> Result<(Tensor, Vec<u32>)> {
    if stride == 0 {
        return Err(NetError::Shape("stride must be >= 1".into()));
    }
    if input.h < k || input.w < k {
        return Err(NetError::Shape(format!(
            "pool window {k}x{k} larger than input {}x{}",
            input.h, input.w
        )));
    }
    let oh = (input.h - k) / stride + 1;
    let ow = (input.w - k) / stride + 1;
    let mut out = Tensor::zeros(input.c, oh, ow);
    let mut arg = vec![0u32; input.c * oh * ow];
    for c in 0..input.c {
        let plane = &input.data[c * input.h * input.w..(c + 1) * input.h * input.w];
        for oy in 0..oh {
            for ox in 0..ow {
                let mut best = f64::NEG_INFINITY;
                let mut best_idx = 0usize;
                for ky in 0..k {
                    let row = (oy * stride + ky) * input.w + ox * stride;
                    for kx in 0..k {
                        let v = plane[row + kx];
                        if v > best {
                            best = v;
                            best_idx = row + kx;
                        }
                    }
                }
                let o = (c * oh + oy) * ow + ox;
                out.data[o] = best;
                arg[o] = best_idx as u32;
            }
        }
    }
    Ok((out, arg))
}

/// Route the upstream gradient to each window's argmax; overlapping windows
/// sum into the same winner.
pub fn maxpool_backward(d_out: &Tensor, argmax: &[u32], in_shape: (usize, usize, usize)) -> Tensor {
    let (c, h, w) = in_shape;
    assert_eq!(d_out.numel(), argmax.len());
    let mut d_input = Tensor::zeros(c, h, w);
    let plane = h * w;
    let out_plane = d_out.h * d_out.w;
    for ch in 0..c {
        for o in 0..out_plane {
            let idx = ch * plane + argmax[ch * out_plane + o] as usize;
            d_input.data[idx] += d_out.data[ch * out_plane + o];
        }
    }
    d_input
}
