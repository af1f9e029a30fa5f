//! In-place discrete Fourier transform `X_m = Σ_j x_j e^{−2πi jm/N}` for any
//! length: iterative radix-2 for powers of two, Bluestein's chirp-z
//! convolution otherwise.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

fn cis(angle: f64) -> Complex64 {
    Complex64::new(libm::cos(angle), libm::sin(angle))
}

pub(crate) fn fft(data: &mut [Complex64]) {
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

fn radix2(data: &mut [Complex64]) {
    let n = data.len();
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let twiddles: Vec<Complex64> = (0..half)
            .map(|k| cis(-2.0 * PI * k as f64 / len as f64))
            .collect();
        for chunk in data.chunks_exact_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((a, b), w) in lo.iter_mut().zip(hi.iter_mut()).zip(&twiddles) {
                let t = *b * w;
                *b = *a - t;
                *a += t;
            }
        }
        len <<= 1;
    }
}

fn inverse_radix2(data: &mut [Complex64]) {
    for z in data.iter_mut() {
        *z = z.conj();
    }
    radix2(data);
    let scale = 1.0 / data.len() as f64;
    for z in data.iter_mut() {
        *z = z.conj() * scale;
    }
}

fn bluestein(data: &mut [Complex64]) {
    let n = data.len();
    let m = (2 * n - 1).next_power_of_two();
    // exp(−iπk²/N), with k² reduced mod 2N to keep the angle small
    let chirp: Vec<Complex64> = (0..n as u64)
        .map(|k| {
            let r = (k * k) % (2 * n as u64);
            cis(-PI * r as f64 / n as f64)
        })
        .collect();

    let mut a = vec![Complex64::new(0.0, 0.0); m];
    for ((slot, x), w) in a.iter_mut().zip(data.iter()).zip(&chirp) {
        *slot = x * w;
    }
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    b[0] = chirp[0].conj();
    for k in 1..n {
        b[k] = chirp[k].conj();
        b[m - k] = chirp[k].conj();
    }
    radix2(&mut a);
    radix2(&mut b);
    for (x, y) in a.iter_mut().zip(&b) {
        *x *= y;
    }
    inverse_radix2(&mut a);
    for ((out, c), w) in data.iter_mut().zip(&a).zip(&chirp) {
        *out = c * w;
    }
}
