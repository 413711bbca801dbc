//! Even piecewise-linear kernels with value 1 on `[-1/4, 1/4]` and corners at
//! `x_t = 1/4 + t/(4T)`.
//!
//! Writing `d_t = y_t - y_{t-1}`, the normalized coefficient
//! `C(j) = (π² j² / 2T) K̂(j) = Σ_t d_t (cos(2πj x_t) - cos(2πj x_{t-1}))`
//! is periodic in `j` with period `4T`, so any `ℓ^p` tail collapses to `4T`
//! Hurwitz zeta evaluations:
//! `‖K̂‖_{m,p}^p = 2 (2T/(16T²π²))^p Σ_{j=m}^{m+4T-1} |C(j)|^p ζ(2p, j/(4T))`.

use std::f64::consts::PI;

use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::zeta::zeta_em;
use super::{mix_with_constant_raw, pairwise_sum, CertifiedNorm, ConstantMix, KernelError};

#[derive(Debug, Clone, PartialEq)]
pub struct KernelPL {
    /// Wing values `y_0..y_T` at `x_t = 1/4 + t/(4T)`; `y_0 = 1`.
    ys: Vec<f64>,
}

impl KernelPL {
    /// Wraps wing values `y_0..y_T`. Requires `y_0 = 1` and at least one segment.
    pub fn new(ys: Vec<f64>) -> Result<Self, KernelError> {
        if ys.len() < 2 {
            return Err(KernelError::TooFewSamples);
        }
        if ys.iter().any(|y| !y.is_finite()) {
            return Err(KernelError::NonFiniteValue);
        }
        if (ys[0] - 1.0).abs() > 1e-14 {
            return Err(KernelError::BadLeadingValue { y0: ys[0] });
        }
        Ok(KernelPL { ys })
    }

    /// The constant kernel `K ≡ 1` sampled with `t` wing segments.
    pub fn constant_one(t: usize) -> Self {
        KernelPL { ys: vec![1.0; t + 1] }
    }

    /// Number of wing segments `T`.
    pub fn segments(&self) -> usize {
        self.ys.len() - 1
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    /// Kernel value at `x` (even, periodic with period 1).
    pub fn value_at(&self, x: f64) -> f64 {
        let mut x = (x - x.round()).abs(); // into [0, 1/2]
        if x <= 0.25 {
            return 1.0;
        }
        let t = self.segments() as f64;
        let pos = (x - 0.25) * 4.0 * t;
        x = pos.min(t);
        let cell = (x.floor() as usize).min(self.segments() - 1);
        let frac = x - cell as f64;
        self.ys[cell] * (1.0 - frac) + self.ys[cell + 1] * frac
    }

    /// `K̂(0) = ∫ K`: exact trapezoid over the corners.
    pub fn hat_zero(&self) -> f64 {
        let t = self.segments();
        let mut wing = 0.0;
        for i in 1..=t {
            wing += self.ys[i - 1] + self.ys[i];
        }
        0.5 + wing / (4.0 * t as f64)
    }

    /// Normalized coefficient `C(j)` by direct summation.
    pub fn c_at(&self, j: i64) -> f64 {
        let t = self.segments();
        let four_t = (4 * t) as f64;
        let j = j.unsigned_abs() as f64;
        let mut sum = 0.0;
        let mut cos_prev = (2.0 * PI * j * 0.25).cos();
        for i in 1..=t {
            let x = (t + i) as f64 / four_t;
            let cos_cur = (2.0 * PI * j * x).cos();
            sum += (self.ys[i] - self.ys[i - 1]) * (cos_cur - cos_prev);
            cos_prev = cos_cur;
        }
        sum
    }

    /// Fourier coefficient `K̂(j) = K̂(-j)`.
    pub fn fourier_coeff(&self, j: i64) -> f64 {
        if j == 0 {
            return self.hat_zero();
        }
        let jf = j.unsigned_abs() as f64;
        self.c_at(j) * 2.0 * self.segments() as f64 / (PI * PI * jf * jf)
    }

    /// One full period `C(0..4T)` of the normalized coefficients, via a single
    /// real-input FFT of the second differences.
    pub fn c_profile(&self) -> Vec<f64> {
        let t = self.segments();
        let n = 4 * t;
        // C(j) = Σ_{u} w_u cos(2πju/(4T)) with w supported on u = T..=2T.
        let mut buf = vec![Complex::new(0.0, 0.0); n];
        let d = |i: usize| -> f64 {
            if i == 0 || i > t {
                0.0
            } else {
                self.ys[i] - self.ys[i - 1]
            }
        };
        for u in t..=2 * t {
            let i = u - t;
            buf[u % n] += Complex::new(d(i) - d(i + 1), 0.0);
        }
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        buf.into_iter().map(|z| z.re).collect()
    }

    /// Tail norm `‖K̂‖_{m,p} = (Σ_{|j| >= m} |K̂(j)|^p)^{1/p}` for `m >= 1`.
    pub fn tail_norm(&self, m: usize, p: f64) -> Result<f64, KernelError> {
        Ok(self.tail_norm_certified(m, p)?.value)
    }

    /// Tail norm with its accumulated error bound.
    pub fn tail_norm_certified(&self, m: usize, p: f64) -> Result<CertifiedNorm, KernelError> {
        if m == 0 {
            return Err(KernelError::TailStartZero);
        }
        if !(p >= 1.0) {
            return Err(KernelError::BadExponent { p, min_p: 1.0 });
        }
        let t = self.segments();
        let n = 4 * t;
        let profile = self.c_profile();
        let scale = (2.0 * t as f64 / (16.0 * (t * t) as f64 * PI * PI)).powf(p);
        // Terms are independent in j; the reduction order is a fixed pairwise
        // tree, so results are identical for any rayon thread count.
        let contributions: Vec<(f64, f64)> = (m..m + n)
            .into_par_iter()
            .map(|j| {
                let c = profile[j % n].abs();
                if c == 0.0 {
                    return (0.0, 0.0);
                }
                let (z, rem) = zeta_em(2.0 * p, j as f64 / n as f64);
                let weight = c.powf(p);
                (weight * z, weight * rem)
            })
            .collect();
        let values: Vec<f64> = contributions.iter().map(|c| c.0).collect();
        let remainders: Vec<f64> = contributions.iter().map(|c| c.1).collect();
        let sum_p = 2.0 * scale * pairwise_sum(&values);
        let rem_p = 2.0 * scale * pairwise_sum(&remainders);
        let value = sum_p.powf(1.0 / p);
        // d(x^{1/p}) = x^{1/p - 1}/p dx, plus the blanket binary64 margin.
        let error_bound = if sum_p > 0.0 {
            sum_p.powf(1.0 / p - 1.0) / p * rem_p + value.abs() * 1e-12
        } else {
            0.0
        };
        Ok(CertifiedNorm { value, error_bound })
    }

    /// Full norm `‖K̂‖_p` including the `j = 0` term.
    pub fn norm(&self, p: f64) -> Result<f64, KernelError> {
        Ok(self.norm_certified(p)?.value)
    }

    pub fn norm_certified(&self, p: f64) -> Result<CertifiedNorm, KernelError> {
        let tail = self.tail_norm_certified(1, p)?;
        let total = self.hat_zero().abs().powf(p) + tail.value.powf(p);
        let value = total.powf(1.0 / p);
        Ok(CertifiedNorm { value, error_bound: tail.error_bound + value.abs() * 1e-12 })
    }

    /// Optimal constant mix for this kernel at exponent `p`.
    pub fn mix_with_constant(&self, p: f64) -> Result<ConstantMix, KernelError> {
        let tail1 = self.tail_norm(1, p)?;
        mix_with_constant_raw(self.hat_zero(), tail1, p)
    }

    /// The mixed kernel `alpha + (1 - alpha) K`, again piecewise linear.
    pub fn mixed(&self, alpha: f64) -> KernelPL {
        let ys = self.ys.iter().map(|y| alpha + (1.0 - alpha) * y).collect();
        KernelPL { ys }
    }
}
