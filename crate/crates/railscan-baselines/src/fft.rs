//! Complex FFT: iterative radix-2 for power-of-two lengths with a
//! Bluestein chirp-z fallback for everything else, plus row/column 2-D
//! transforms. Accuracy is anchored by naive-DFT and spatial-correlation
//! oracles in the tests; throughput is secondary at desk scale.

use num_complex::Complex64;
use std::f64::consts::PI;

/// In-place forward DFT of any length.
pub fn fft(data: &mut [Complex64]) {
    let n = data.len();
    if n <= 1 {
        return;
    }
    if n.is_power_of_two() {
        radix2(data);
    } else {
        bluestein(data);
    }
}

/// In-place inverse DFT (includes the 1/n scale).
pub fn ifft(data: &mut [Complex64]) {
    for v in data.iter_mut() {
        *v = v.conj();
    }
    fft(data);
    let scale = 1.0 / data.len() as f64;
    for v in data.iter_mut() {
        *v = v.conj() * scale;
    }
}

fn radix2(data: &mut [Complex64]) {
    let n = data.len();
    // Bit-reversal permutation.
    let shift = (n - 1).leading_zeros();
    for i in 0..n {
        let j = (i.reverse_bits() >> shift) as usize;
        if i < j {
            data.swap(i, j);
        }
    }
    let mut m = 2;
    while m <= n {
        let step = -2.0 * PI / m as f64;
        let w_m = Complex64::from_polar(1.0, step);
        for chunk in data.chunks_exact_mut(m) {
            let mut w = Complex64::new(1.0, 0.0);
            for k in 0..m / 2 {
                let e = chunk[k];
                let o = w * chunk[k + m / 2];
                chunk[k] = e + o;
                chunk[k + m / 2] = e - o;
                w *= w_m;
            }
        }
        m <<= 1;
    }
}

/// Chirp-z transform: express an arbitrary-length DFT as a cyclic
/// convolution of power-of-two length. Chirp exponents are reduced mod 2n
/// so the angles stay accurate for long inputs.
fn bluestein(data: &mut [Complex64]) {
    let n = data.len();
    let m = (2 * n - 1).next_power_of_two();

    let chirp: Vec<Complex64> = (0..n)
        .map(|k| {
            let ksq = ((k as u64 * k as u64) % (2 * n as u64)) as f64;
            Complex64::from_polar(1.0, -PI * ksq / n as f64)
        })
        .collect();

    let mut a = vec![Complex64::new(0.0, 0.0); m];
    for k in 0..n {
        a[k] = data[k] * chirp[k];
    }
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    b[0] = chirp[0].conj();
    for k in 1..n {
        let c = chirp[k].conj();
        b[k] = c;
        b[m - k] = c;
    }
    radix2(&mut a);
    radix2(&mut b);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    // Inverse pow-2 FFT via the conjugation identity.
    for v in a.iter_mut() {
        *v = v.conj();
    }
    radix2(&mut a);
    let scale = 1.0 / m as f64;
    for k in 0..n {
        data[k] = a[k].conj() * scale * chirp[k];
    }
}

/// Forward 2-D DFT over a row-major `width x height` grid.
pub fn fft2d(data: &mut [Complex64], width: usize, height: usize) {
    assert_eq!(data.len(), width * height);
    for row in data.chunks_exact_mut(width) {
        fft(row);
    }
    let mut col = vec![Complex64::new(0.0, 0.0); height];
    for c in 0..width {
        for r in 0..height {
            col[r] = data[r * width + c];
        }
        fft(&mut col);
        for r in 0..height {
            data[r * width + c] = col[r];
        }
    }
}

/// Inverse 2-D DFT (scaled).
pub fn ifft2d(data: &mut [Complex64], width: usize, height: usize) {
    assert_eq!(data.len(), width * height);
    for v in data.iter_mut() {
        *v = v.conj();
    }
    fft2d(data, width, height);
    let scale = 1.0 / (width * height) as f64;
    for v in data.iter_mut() {
        *v = v.conj() * scale;
    }
}

/// Forward 2-D DFT of a real grid.
pub fn fft2d_real(data: &[f64], width: usize, height: usize) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = data.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    fft2d(&mut out, width, height);
    out
}
