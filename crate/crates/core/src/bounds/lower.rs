//! Lower bounds on `Δ(ε)`: the trivial floors, the Hölder kernel bound, the
//! quartic refinement with its sine-cap feasibility threshold, and the
//! rearrangement bound that is strongest near `ε = 1/2`.

use std::f64::consts::PI;

use super::sdr::sdr;
use super::{check_eps, BoundError};
use crate::kernels::KernelPL;

const P43: f64 = 4.0 / 3.0;

/// `max(ε²/2, 2ε - 1)`: the two floors that hold for every `ε`.
pub fn trivial_lower(eps: f64) -> f64 {
    assert!((0.0..=1.0).contains(&eps), "eps must lie in [0, 1]");
    (eps * eps / 2.0).max(2.0 * eps - 1.0)
}

/// The sine cap `(L/π)·sin(π/L)`: an upper bound for `|f̂(j)|²` (`j != 0`)
/// when `L` bounds `‖f∗f‖_∞` from above. Increasing in `L`, with limit 1.
pub fn sin_cap(l: f64) -> f64 {
    assert!(l >= 1.0, "the cap is used for L >= 1");
    (l / PI) * (PI / l).sin()
}

/// Smallest `L >= 1` with `sin_cap(L) >= target`; `None` when `target >= 1`
/// (the cap never reaches 1, so such a constraint is vacuous).
pub fn sin_cap_inverse(target: f64) -> Option<f64> {
    if target >= 1.0 {
        return None;
    }
    if target <= 0.0 {
        return Some(1.0);
    }
    let mut lo = 1.0f64;
    let mut hi = 2.0f64;
    while sin_cap(hi) < target {
        hi *= 2.0;
        if hi > 1e12 {
            return None;
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if sin_cap(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-13 * hi {
            break;
        }
    }
    Some(hi)
}

/// `Δ(ε) >= coeff·ε²` with `coeff = ½·‖K̂‖_{4/3}^{-4}`, for any kernel that is
/// at least 1 on `[-1/4, 1/4]` (checked by sampling the center).
pub fn simple_lower_from_kernel(kernel: &KernelPL) -> Result<f64, BoundError> {
    for i in 0..=256 {
        let x = 0.25 * i as f64 / 256.0;
        let value = kernel.value_at(x);
        if value < 1.0 - 1e-12 {
            return Err(BoundError::Inadmissible { x, value });
        }
    }
    let norm = kernel.norm(P43)?;
    Ok(0.5 * norm.powi(-4))
}

/// Inputs of the quartic bound: central coefficients `K̂(0..m-1)` and the
/// `ℓ^{4/3}` tail norm from `m`.
#[derive(Debug, Clone)]
pub struct QuarticBoundInputs {
    hat: Vec<f64>,
    tail: f64,
}

impl QuarticBoundInputs {
    pub fn new(hat: Vec<f64>, tail: f64) -> Result<Self, BoundError> {
        if !(tail > 0.0) {
            return Err(BoundError::ZeroTail);
        }
        assert!(!hat.is_empty(), "m >= 1 requires at least K̂(0)");
        Ok(QuarticBoundInputs { hat, tail })
    }

    /// Extracts `K̂(0..m-1)` and the tail from a piecewise-linear kernel.
    pub fn from_kernel(kernel: &KernelPL, m: usize) -> Result<Self, BoundError> {
        assert!(m >= 1);
        let hat = (0..m as i64).map(|j| kernel.fourier_coeff(j)).collect();
        let tail = kernel.tail_norm(m, P43)?;
        Self::new(hat, tail)
    }

    pub fn m(&self) -> usize {
        self.hat.len()
    }

    pub fn hat(&self) -> &[f64] {
        &self.hat
    }

    pub fn tail(&self) -> f64 {
        self.tail
    }

    /// `ℓ^{4/3}` norm of everything past 0: central terms plus the tail.
    pub fn tail_from_one(&self) -> f64 {
        let mut sum = self.tail.powf(P43);
        for k in self.hat.iter().skip(1) {
            sum += 2.0 * k.abs().powf(P43);
        }
        sum.powf(1.0 / P43)
    }

    /// The minimizing central coefficients of the unconstrained quartic.
    pub fn unconstrained_minimizer(&self) -> Vec<f64> {
        let m = self.m();
        let mut xs = vec![0.0; m - 1];
        for j in 1..m {
            // lnorm_j^{4/3}: everything with |index| >= j.
            let mut lnorm_p = self.tail.powf(P43);
            for k in self.hat.iter().skip(j + 1) {
                lnorm_p += 2.0 * k.abs().powf(P43);
            }
            lnorm_p += 2.0 * self.hat[j].abs().powf(P43);
            let mut numer = 1.0 - self.hat[0];
            for i in 1..j {
                numer -= 2.0 * self.hat[i] * xs[i - 1];
            }
            xs[j - 1] = self.hat[j].cbrt() * numer / lnorm_p;
        }
        xs
    }

    /// Closed-form unconstrained minimum `1 + ((1 - K̂(0)) / ‖K̂‖_{1,4/3})⁴`.
    pub fn unconstrained_minimum(&self) -> f64 {
        1.0 + ((1.0 - self.hat[0]) / self.tail_from_one()).powi(4)
    }
}

/// The quartic lower bound for `‖f∗f‖₂²` at given central coefficients
/// `x_j = Re f̂(j)`:
/// `1 + (M / tail)⁴ + 2 Σ x_j⁴` with `M = 1 - K̂(0) - 2 Σ K̂(j) x_j`.
pub fn quartic_bound(inputs: &QuarticBoundInputs, xs: &[f64]) -> f64 {
    assert_eq!(xs.len(), inputs.m() - 1, "one x_j per central coefficient");
    let mut m = 1.0 - inputs.hat[0];
    let mut quartic_sum = 0.0;
    for (x, k) in xs.iter().zip(inputs.hat.iter().skip(1)) {
        m -= 2.0 * k * x;
        quartic_sum += 2.0 * x.abs().powi(4);
    }
    1.0 + (m / inputs.tail).powi(4) + quartic_sum
}

fn golden_min(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    f((a + b) / 2.0).min(f1).min(f2)
}

/// The largest `L` such that every admissible `x_1 ∈ [0, sqrt(sin_cap(L))]`
/// forces the quartic bound above `L`; no pdf can then have `‖f∗f‖_∞ < L`,
/// so `Δ(ε) >= (L/2)·ε²`.
///
/// Bisection to 1e-7 with a golden-section inner minimization (the quartic is
/// convex in `x_1`). Inputs with no contradiction return the trivial 1.
pub fn feasibility_threshold(inputs: &QuarticBoundInputs) -> f64 {
    let inner_min = |l: f64| -> f64 {
        if inputs.m() == 1 {
            return quartic_bound(inputs, &[]);
        }
        let cap = sin_cap(l).max(0.0).sqrt();
        golden_min(|x| quartic_bound(inputs, &[x]), 0.0, cap, 1e-9)
    };
    let holds = |l: f64| inner_min(l) > l;
    if !holds(1.0) {
        return 1.0;
    }
    let mut lo = 1.0;
    let mut hi = 1.0 + inputs.unconstrained_minimum();
    while holds(hi) {
        hi *= 2.0;
        if hi > 1e6 {
            return hi; // cannot happen for admissible kernels
        }
    }
    while hi - lo > 1e-7 {
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Minimal `L` consistent with `max{|f̂(1)|, |f̂(2)|} >= 1/3`:
/// solves `(1/3)² <= sin_cap(L)`.
pub fn central_coefficient_floor() -> f64 {
    central_coefficient_floor_for_cap(1.0 / 3.0).expect("1/9 is below the cap limit")
}

/// Generalization for an arbitrary coefficient floor; `None` when the
/// constraint is vacuous (`cap >= 1` can never bind since `sin_cap < 1`).
pub fn central_coefficient_floor_for_cap(cap: f64) -> Option<f64> {
    sin_cap_inverse(cap * cap)
}

/// The closed-form lower bound for `F = max{Re f̂(1), -Re f̂(2)}` over nifs
/// of support measure `ε/2`, optimized over the comparison function family.
pub fn f_floor_closed_form(eps: f64) -> f64 {
    let (c4, s4) = ((PI * eps / 4.0).cos(), (PI * eps / 4.0).sin());
    let inner = 3.0 + 4.0 * (PI * eps / 2.0).cos() + 2.0 * (PI * eps).cos()
        - (PI * eps / 2.0).sin();
    (3.0 * c4 + s4 - inner.sqrt()) / (PI * eps * (c4 + s4))
}

/// Numeric cross-check of [`f_floor_closed_form`]: maximizes
/// `-2/((b+1)ε) ∫_{-ε/4}^{ε/4} sdr(L_b)` over `b ∈ (2, 4)`, with
/// `L_b(x) = cos(4πx) - b·cos(2πx)` rearranged on `[-1/4, 1/4]` at the given
/// resolution.
pub fn f_floor_via_sdr(eps: f64, cells: usize) -> f64 {
    let value_for = |b: f64| -> f64 {
        let samples: Vec<f64> = (0..cells)
            .map(|i| {
                let x = -0.25 + 0.5 * (i as f64 + 0.5) / cells as f64;
                (4.0 * PI * x).cos() - b * (2.0 * PI * x).cos()
            })
            .collect();
        let rearranged = sdr(&samples);
        let h = 0.5 / cells as f64;
        let mut central = 0.0;
        for (i, v) in rearranged.iter().enumerate() {
            let x = -0.25 + 0.5 * (i as f64 + 0.5) / cells as f64;
            if x.abs() <= eps / 4.0 {
                central += v * h;
            }
        }
        -2.0 / ((b + 1.0) * eps) * central
    };
    -golden_min(|b| -value_for(b), 2.0, 4.0, 1e-6)
}

/// Result of the rearrangement bound around `ε = 1/2`.
#[derive(Debug, Clone, Copy)]
pub struct DeltaHalfBound {
    /// Lower bound for `‖f∗f‖_∞` over the relevant nifs.
    pub floor: f64,
    /// Implied `Δ(ε) >= delta`.
    pub delta: f64,
    /// False when `ε` is outside `(3/8, 5/8)` and the result fell back to the
    /// other bounds.
    pub in_range: bool,
}

/// Lower bound `Δ(ε) >= ½ ε² · floor(ε)` via the rearrangement argument:
/// the closed-form `F`-floor intersected with the sine cap directly (monotone
/// bisection on the exact curves; no Taylor truncation).
pub fn delta_half_lower(eps: f64) -> Result<DeltaHalfBound, BoundError> {
    check_eps(eps)?;
    if eps <= 0.375 || eps >= 0.625 {
        // Outside the window the bound is dominated; fall back to the
        // kernel-based coefficient (paper-level regression constant) and the
        // reflection floor.
        let delta = trivial_lower(eps).max(0.591389 * eps * eps);
        return Ok(DeltaHalfBound { floor: 2.0 * delta / (eps * eps), delta, in_range: false });
    }
    let f = f_floor_closed_form(eps);
    let floor = sin_cap_inverse(f * f).expect("F² < 1 inside the window");
    let delta = 0.5 * eps * eps * floor;
    Ok(DeltaHalfBound { floor, delta, in_range: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::ClosedFormKernel;

    #[test]
    fn trivial_lower_examples() {
        assert_eq!(trivial_lower(1.0), 1.0);
        assert_eq!(trivial_lower(0.5), 0.125);
        assert_eq!(trivial_lower(0.75), 0.5);
    }

    #[test]
    fn sin_cap_examples() {
        assert!(sin_cap(1.0).abs() < 1e-15);
        assert!((sin_cap(1e6) - 1.0).abs() < 1e-6);
        // The x1 cap at the full-bound threshold.
        let cap = sin_cap(1.182778).sqrt();
        assert!((cap - 0.4191447).abs() < 1e-6, "cap = {cap}");
    }

    #[test]
    fn sin_cap_inverse_round_trips() {
        for &target in &[0.05, 0.11111111, 0.2, 0.5, 0.9] {
            let l = sin_cap_inverse(target).unwrap();
            assert!((sin_cap(l) - target).abs() < 1e-10, "target {target}");
        }
        assert_eq!(sin_cap_inverse(1.0), None);
        assert_eq!(sin_cap_inverse(1.5), None);
    }

    #[test]
    fn constant_kernel_recovers_the_trivial_coefficient() {
        let k = KernelPL::constant_one(8);
        let coeff = simple_lower_from_kernel(&k).unwrap();
        assert!((coeff - 0.5).abs() < 1e-12);
    }

    #[test]
    fn quartic_bound_with_m_equal_one_is_the_plain_ratio() {
        let inputs = QuarticBoundInputs::new(vec![0.7], 0.5).unwrap();
        let value = quartic_bound(&inputs, &[]);
        assert!((value - (1.0 + (0.3f64 / 0.5).powi(4))).abs() < 1e-15);
        assert!((inputs.unconstrained_minimum() - value).abs() < 1e-15);
    }

    #[test]
    fn unconstrained_minimum_matches_direct_search() {
        // m = 2 inputs in the vicinity of the bundled kernel's constants.
        let inputs = QuarticBoundInputs::new(vec![0.63, 0.27], 0.24).unwrap();
        let closed = inputs.unconstrained_minimum();
        let searched = golden_min(|x| quartic_bound(&inputs, &[x]), -1.0, 1.0, 1e-10);
        assert!((closed - searched).abs() < 1e-9, "closed {closed}, searched {searched}");
        let xs = inputs.unconstrained_minimizer();
        assert!((quartic_bound(&inputs, &xs) - closed).abs() < 1e-9);
    }

    #[test]
    fn feasibility_threshold_degenerates_without_sine_information() {
        // m = 1: the predicate is x-free, so the threshold equals the plain
        // quartic value.
        let inputs = QuarticBoundInputs::new(vec![0.66], 0.59).unwrap();
        let l = feasibility_threshold(&inputs);
        let plain = quartic_bound(&inputs, &[]);
        assert!((l - plain).abs() < 1e-6, "l = {l}, plain = {plain}");
    }

    #[test]
    fn feasibility_threshold_trivial_inputs() {
        // M = 0 (the constant kernel): no contradiction is available.
        let inputs = QuarticBoundInputs::new(vec![1.0, 0.0], 0.3).unwrap();
        assert_eq!(feasibility_threshold(&inputs), 1.0);
    }

    #[test]
    fn delta_half_window_and_fallback() {
        let inside = delta_half_lower(0.5).unwrap();
        assert!(inside.in_range);
        assert!(inside.delta >= 0.14966, "delta = {}", inside.delta);
        assert!(inside.floor >= 1.1092 + 0.176158 * 0.5, "floor = {}", inside.floor);

        let outside = delta_half_lower(0.2).unwrap();
        assert!(!outside.in_range);
        assert!(outside.delta >= trivial_lower(0.2));
    }

    #[test]
    fn closed_form_floor_dominates_its_linearization_on_the_window() {
        for k in 0..=250 {
            let eps = 0.375 + 0.25 * k as f64 / 250.0;
            if eps <= 0.375 || eps >= 0.625 {
                continue;
            }
            let floor = delta_half_lower(eps).unwrap().floor;
            let linear = 1.1092 + 0.176158 * eps;
            assert!(
                floor >= linear - 1e-9,
                "eps={eps}: floor {floor} below linearization {linear}"
            );
        }
    }

    #[test]
    fn sdr_route_agrees_with_the_closed_form() {
        for &eps in &[0.4, 0.5, 0.6] {
            let closed = f_floor_closed_form(eps);
            let numeric = f_floor_via_sdr(eps, 20_000);
            assert!(
                (closed - numeric).abs() < 2e-3,
                "eps={eps}: closed {closed}, sdr {numeric}"
            );
        }
    }

    #[test]
    fn central_coefficient_floor_value() {
        let l = central_coefficient_floor();
        assert!(l >= 1.11, "L = {l}");
        assert!(l < 1.183, "weaker than the full bound: {l}");
        assert_eq!(central_coefficient_floor_for_cap(1.0), None);
    }

    #[test]
    fn admissibility_is_enforced() {
        // A kernel dipping below 1 on the center cannot be built with
        // KernelPL (the center is implicit), so check via the sampled check
        // against a legitimate kernel: it passes.
        let k = ClosedFormKernel::ArctanMix.sample(64).unwrap();
        assert!(simple_lower_from_kernel(&k).is_ok());
    }
}
