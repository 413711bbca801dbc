//! Even step kernels with value 1 on `[-1/4, 1/4]` and constant values on the
//! cells of `[1/4, 1/2]` with breakpoints in `(1/Q)·Z`.
//!
//! The normalized coefficient `S(j) = πj·K̂(j)` is periodic in `j` with period
//! `Q`, so tails reduce to `Q` Hurwitz zeta values with exponent `p` (the
//! coefficients decay like `1/j` rather than `1/j²`).

use std::f64::consts::PI;

use super::zeta::zeta_em;
use super::{mix_with_constant_raw, pairwise_sum, CertifiedNorm, ConstantMix, KernelError};

#[derive(Debug, Clone, PartialEq)]
pub struct KernelStep {
    q: usize,
    /// Values on the cells `[1/4 + i/Q, 1/4 + (i+1)/Q)` for `i = 0..Q/4`.
    values: Vec<f64>,
}

impl KernelStep {
    pub fn new(q: usize, values: Vec<f64>) -> Result<Self, KernelError> {
        if q == 0 || q % 4 != 0 {
            return Err(KernelError::BadDenominator { q });
        }
        let expected = q / 4;
        if values.len() != expected {
            return Err(KernelError::CellCountMismatch { q, expected, got: values.len() });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(KernelError::NonFiniteValue);
        }
        Ok(KernelStep { q, values })
    }

    /// The two-level kernel: value 1 on the center, `level` on `(1/4, 1/2]`.
    pub fn two_level(level: f64) -> Self {
        KernelStep { q: 4, values: vec![level] }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value_at(&self, x: f64) -> f64 {
        let x = (x - x.round()).abs();
        if x <= 0.25 {
            return 1.0;
        }
        let cell = ((x - 0.25) * self.q as f64) as usize;
        self.values[cell.min(self.values.len() - 1)]
    }

    pub fn hat_zero(&self) -> f64 {
        let wing: f64 = self.values.iter().sum();
        0.5 + 2.0 * wing / self.q as f64
    }

    /// Normalized coefficient `S(j) = πj·K̂(j)` for `j != 0`.
    pub fn s_at(&self, j: i64) -> f64 {
        let j = j.unsigned_abs() as f64;
        let mut sum = (PI * j / 2.0).sin();
        for (i, &v) in self.values.iter().enumerate() {
            let a = 0.25 + i as f64 / self.q as f64;
            let b = a + 1.0 / self.q as f64;
            sum += v * ((2.0 * PI * j * b).sin() - (2.0 * PI * j * a).sin());
        }
        sum
    }

    pub fn fourier_coeff(&self, j: i64) -> f64 {
        if j == 0 {
            return self.hat_zero();
        }
        self.s_at(j) / (PI * j.unsigned_abs() as f64)
    }

    /// Tail norm for `m >= 1`; requires `p > 1` because the coefficients only
    /// decay like `1/j`.
    pub fn tail_norm(&self, m: usize, p: f64) -> Result<f64, KernelError> {
        Ok(self.tail_norm_certified(m, p)?.value)
    }

    pub fn tail_norm_certified(&self, m: usize, p: f64) -> Result<CertifiedNorm, KernelError> {
        if m == 0 {
            return Err(KernelError::TailStartZero);
        }
        if !(p > 1.0) {
            return Err(KernelError::BadExponent { p, min_p: 1.0 });
        }
        let q = self.q;
        let profile: Vec<f64> = (0..q).map(|j| self.s_at(j as i64)).collect();
        let mut values = Vec::with_capacity(q);
        let mut remainders = Vec::with_capacity(q);
        for j in m..m + q {
            let s = profile[j % q].abs();
            if s == 0.0 {
                values.push(0.0);
                remainders.push(0.0);
                continue;
            }
            let (z, rem) = zeta_em(p, j as f64 / q as f64);
            let weight = s.powf(p);
            values.push(weight * z);
            remainders.push(weight * rem);
        }
        let scale = (PI * q as f64).powf(-p);
        let sum_p = 2.0 * scale * pairwise_sum(&values);
        let rem_p = 2.0 * scale * pairwise_sum(&remainders);
        let value = sum_p.powf(1.0 / p);
        let error_bound = if sum_p > 0.0 {
            sum_p.powf(1.0 / p - 1.0) / p * rem_p + value.abs() * 1e-12
        } else {
            0.0
        };
        Ok(CertifiedNorm { value, error_bound })
    }

    pub fn norm(&self, p: f64) -> Result<f64, KernelError> {
        let tail = self.tail_norm(1, p)?;
        Ok((self.hat_zero().abs().powf(p) + tail.powf(p)).powf(1.0 / p))
    }

    pub fn mix_with_constant(&self, p: f64) -> Result<ConstantMix, KernelError> {
        let tail1 = self.tail_norm(1, p)?;
        mix_with_constant_raw(self.hat_zero(), tail1, p)
    }

    /// The mixed kernel `alpha + (1 - alpha) K`, again a step kernel.
    pub fn mixed(&self, alpha: f64) -> KernelStep {
        KernelStep {
            q: self.q,
            values: self.values.iter().map(|v| alpha + (1.0 - alpha) * v).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_level_coefficients_closed_form() {
        // K̂(j) = (1 - v) sin(πj/2) / (πj) for j != 0.
        let v = 0.35;
        let k = KernelStep::two_level(v);
        for j in 1..=9i64 {
            let expected = (1.0 - v) * (PI * j as f64 / 2.0).sin() / (PI * j as f64);
            assert!((k.fourier_coeff(j) - expected).abs() < 1e-14, "j={j}");
        }
        assert!((k.hat_zero() - (0.5 + v / 2.0)).abs() < 1e-15);
    }

    #[test]
    fn degenerate_level_one_is_constant() {
        let k = KernelStep::two_level(1.0);
        for j in 1..6 {
            assert!(k.fourier_coeff(j).abs() < 1e-15);
        }
        assert!(k.tail_norm(1, 4.0 / 3.0).unwrap() < 1e-15);
        let mix = k.mix_with_constant(4.0 / 3.0).unwrap();
        assert_eq!(mix.norm, 1.0);
    }

    #[test]
    fn coefficients_match_numeric_quadrature() {
        let k = KernelStep::new(8, vec![0.9, 0.4]).unwrap();
        for j in [1i64, 2, 3, 5, 12] {
            let n = 1 << 16;
            let h = 1.0 / n as f64;
            let mut acc = 0.0;
            for i in 0..n {
                let x = -0.5 + (i as f64 + 0.5) * h;
                acc += k.value_at(x) * (2.0 * PI * j as f64 * x).cos();
            }
            let quad = acc * h;
            assert!(
                (k.fourier_coeff(j) - quad).abs() < 1e-8,
                "j={j}: formula={}, quadrature={quad}",
                k.fourier_coeff(j)
            );
        }
    }

    #[test]
    fn tail_norm_matches_brute_force_partial_sum() {
        let k = KernelStep::new(8, vec![0.8, 0.55]).unwrap();
        let p = 4.0 / 3.0;
        let tail = k.tail_norm(2, p).unwrap();
        let mut brute = 0.0;
        for j in 2..400_000i64 {
            brute += k.fourier_coeff(j).abs().powf(p);
        }
        brute *= 2.0;
        // The brute-force sum is truncated, so it sits slightly below.
        assert!(brute <= tail.powf(p) + 1e-12);
        assert!(tail.powf(p) - brute < 2e-5);
    }
}
