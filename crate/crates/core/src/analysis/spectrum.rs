use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::fft::fft;
use crate::propagation::Trajectory;
use crate::{Error, Result};

pub const MIN_SPECTRUM_SAMPLES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Window {
    /// No tapering; keeps the slow `1/(ω − ω_R)` leakage of a truncated tone.
    #[default]
    Rectangular,
    /// Symmetric Hann taper, for isolating peaks.
    Hann,
}

/// One-sided power spectrum against scaled angular frequency.
///
/// Bin `m` sits at `ω_m = 2πm/(N·h)`. Negative-frequency power of the complex
/// input is folded onto `|ω|`, and powers are normalised by `1/N`, so the sum
/// of `power` equals `Σ|x_j|²` of the (windowed) samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub frequencies: Vec<f64>,
    pub power: Vec<f64>,
    pub resolution: f64,
}

impl Spectrum {
    /// Frequency and power of the strongest bin (first one on ties).
    pub fn peak(&self) -> (f64, f64) {
        self.peak_from(0)
    }

    /// Strongest bin above zero frequency.
    pub fn peak_excluding_dc(&self) -> (f64, f64) {
        self.peak_from(1)
    }

    fn peak_from(&self, first: usize) -> (f64, f64) {
        let mut best = first.min(self.power.len() - 1);
        for (i, &p) in self.power.iter().enumerate().skip(first) {
            if p > self.power[best] {
                best = i;
            }
        }
        (self.frequencies[best], self.power[best])
    }

    pub fn total_power(&self) -> f64 {
        self.power.iter().sum()
    }
}

pub fn power_spectrum(samples: &Trajectory<Complex64>, window: Window) -> Result<Spectrum> {
    let n = samples.len();
    if n < MIN_SPECTRUM_SAMPLES {
        return Err(Error::TooShort {
            len: n,
            min: MIN_SPECTRUM_SAMPLES,
        });
    }
    let mut data: Vec<Complex64> = match window {
        Window::Rectangular => samples.samples().to_vec(),
        Window::Hann => samples
            .samples()
            .iter()
            .enumerate()
            .map(|(j, z)| z * (0.5 * (1.0 - libm::cos(2.0 * PI * j as f64 / (n - 1) as f64))))
            .collect(),
    };
    fft(&mut data);

    let resolution = 2.0 * PI / (n as f64 * samples.grid().step());
    let norm = 1.0 / n as f64;
    let bins = n / 2 + 1;
    let mut frequencies = Vec::with_capacity(bins);
    let mut power = Vec::with_capacity(bins);
    for m in 0..bins {
        let mirror = n - m;
        let p = if m == 0 || mirror == m {
            data[m].norm_sqr()
        } else {
            data[m].norm_sqr() + data[mirror].norm_sqr()
        };
        frequencies.push(m as f64 * resolution);
        power.push(p * norm);
    }
    Ok(Spectrum {
        frequencies,
        power,
        resolution,
    })
}
