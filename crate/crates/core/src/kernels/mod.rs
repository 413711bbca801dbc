//! Kernel functions on the circle that equal 1 on `[-1/4, 1/4]`, their exact
//! Fourier tail norms, parametric families, shape optimization, and
//! autoconvolution quadrature.
//!
//! The Fourier coefficients of the piecewise-linear and step kernels built
//! here have normalized profiles that are periodic in the frequency, so every
//! `ℓ^p` tail reduces to finitely many Hurwitz zeta values. That makes the
//! tail norms exact up to floating-point and zeta truncation error, which is
//! tracked explicitly.

mod autoconv;
mod closed_form;
mod optimize;
mod pl;
mod step;
mod zeta;

pub use autoconv::{autoconvolution_norms, convolution_at, AutoconvResult, DensitySpec};
pub use closed_form::{ClosedFormKernel, KernelPreset};
pub use optimize::{
    minimize_over_family, optimize_kernel, KernelSpace, OptimizeConfig, OptimizeOutcome,
    OptimizedKernel,
};
pub use pl::KernelPL;
pub use step::KernelStep;
pub use zeta::{hurwitz_zeta, hurwitz_zeta_with_remainder};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("hurwitz zeta requires finite s > 1 and a > 0 (got s={s}, a={a})")]
    ZetaDomain { s: f64, a: f64 },
    #[error("kernel values must start at y0 = 1 (got {y0})")]
    BadLeadingValue { y0: f64 },
    #[error("kernel needs at least one wing value")]
    TooFewSamples,
    #[error("kernel values must be finite")]
    NonFiniteValue,
    #[error("step kernel breakpoint denominator must be a positive multiple of 4 (got {q})")]
    BadDenominator { q: usize },
    #[error("step kernel with denominator {q} expects {expected} wing values (got {got})")]
    CellCountMismatch { q: usize, expected: usize, got: usize },
    #[error("parameter {name} must be positive (got {value})")]
    NonPositiveParameter { name: &'static str, value: f64 },
    #[error("tail norms start at m >= 1; the j = 0 term is handled separately")]
    TailStartZero,
    #[error("this tail norm requires p > {min_p} (got {p})")]
    BadExponent { p: f64, min_p: f64 },
    #[error("mixing with the constant kernel requires hat K(0) <= 1 (got {hat0})")]
    MixDomain { hat0: f64 },
    #[error("quadrature failed to converge at c = {at}")]
    QuadratureDiverged { at: f64 },
    #[error("density must have positive finite mass")]
    ZeroMass,
    #[error("density table needs at least two samples and lo < hi")]
    BadTable,
}

/// A norm value together with its accumulated error bound
/// (`|value| * 1e-12` plus the zeta remainder contributions).
#[derive(Debug, Clone, Copy)]
pub struct CertifiedNorm {
    pub value: f64,
    pub error_bound: f64,
}

/// Optimal mix weight `alpha` of a kernel with the constant kernel 1 and the
/// resulting norm `‖(alpha + (1-alpha)K)^∧‖_p`.
///
/// With `M = 1 - K̂(0)` and `N = (tail norm from 1)^p`, the extremal weight is
/// `alpha = 1 - M^{q/p} / (M^q + N^{q/p})` (`q` conjugate to `p`) and the
/// attained norm is `(N (M^q + N^{q/p})^{1-p})^{1/p}`. For `p = 4/3` the
/// implied Hölder bound is `‖·‖^{-4} = 1 + M^4/N^3`.
#[derive(Debug, Clone, Copy)]
pub struct ConstantMix {
    pub alpha: f64,
    pub norm: f64,
}

pub(crate) fn mix_with_constant_raw(hat0: f64, tail1: f64, p: f64) -> Result<ConstantMix, KernelError> {
    if hat0 > 1.0 + 1e-12 {
        return Err(KernelError::MixDomain { hat0 });
    }
    let m = (1.0 - hat0).max(0.0);
    let n = tail1.powf(p);
    if n == 0.0 {
        // Constant kernel: any alpha works and the mix is the constant 1.
        return Ok(ConstantMix { alpha: 1.0, norm: 1.0 });
    }
    let q = p / (p - 1.0);
    if m == 0.0 {
        return Ok(ConstantMix { alpha: 1.0, norm: 1.0 });
    }
    let denom = m.powf(q) + n.powf(q / p);
    let alpha = 1.0 - m.powf(q / p) / denom;
    let norm = (n * denom.powf(1.0 - p)).powf(1.0 / p);
    Ok(ConstantMix { alpha, norm })
}

/// Deterministic pairwise summation; the result does not depend on how the
/// term vector was produced (thread counts included).
pub(crate) fn pairwise_sum(terms: &[f64]) -> f64 {
    match terms.len() {
        0 => 0.0,
        1 => terms[0],
        2 => terms[0] + terms[1],
        n => {
            let mid = n / 2;
            pairwise_sum(&terms[..mid]) + pairwise_sum(&terms[mid..])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_sum_matches_naive_on_smooth_data() {
        let terms: Vec<f64> = (0..1000).map(|i| 1.0 / (1.0 + i as f64)).collect();
        let naive: f64 = terms.iter().sum();
        assert!((pairwise_sum(&terms) - naive).abs() < 1e-12);
    }
}
