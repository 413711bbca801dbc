//! Bounds on the largest symmetric subset guaranteed inside any subset of
//! `[0, 1)` of a given measure, and the associated B*[g]-set combinatorics.
//!
//! The crate has four layers:
//!
//! * [`intervals`] — exact geometry of finite interval unions and the
//!   largest-symmetric-subset functional `D(A)`;
//! * [`sidon`] — B*[g] representation machinery, exact search for `R(g, n)`
//!   and `C(g, n)`, and probabilistic constructions;
//! * [`kernels`] — Fourier kernels equal to 1 on `[-1/4, 1/4]`, exact `ℓ^p`
//!   tail norms via Hurwitz zeta, shape optimization, and autoconvolution
//!   quadrature;
//! * [`bounds`] — the lower- and upper-bound pipeline assembled into a
//!   best-known envelope with provenance certificates.

pub mod bounds;
pub mod intervals;
pub mod kernels;
pub mod sidon;

/// Formats a float with 17 significant digits, enough to re-parse the exact
/// binary64 value.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}
