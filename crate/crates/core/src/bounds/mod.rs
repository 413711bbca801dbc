//! The bound pipeline: every lower and upper bound on `Δ(ε)` — the guaranteed
//! measure of a symmetric subset inside any subset of `[0, 1)` of measure
//! `ε` — assembled into a best-known envelope with provenance certificates.

mod envelope;
mod lower;
mod sdr;
mod upper;

pub use envelope::{Envelope, EnvelopeRow};
pub use lower::{
    central_coefficient_floor, central_coefficient_floor_for_cap, delta_half_lower,
    f_floor_closed_form, f_floor_via_sdr, feasibility_threshold, quartic_bound,
    simple_lower_from_kernel, sin_cap, sin_cap_inverse, trivial_lower, DeltaHalfBound,
    QuarticBoundInputs,
};
pub use sdr::sdr;
pub use upper::{upper_envelope_base, upper_from_bstar, UpperCertificate};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::kernels::{KernelError, KernelPL};
use crate::sidon::SidonError;

#[derive(Debug, Error)]
pub enum BoundError {
    #[error("epsilon must lie in (0, 1] (got {eps})")]
    EpsOutOfRange { eps: f64 },
    #[error("kernel is not admissible: K({x}) = {value} < 1 inside [-1/4, 1/4]")]
    Inadmissible { x: f64, value: f64 },
    #[error("tail norm must be positive")]
    ZeroTail,
    #[error("the certificate connection requires a non-modular witness")]
    ModularWitness,
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Sidon(#[from] SidonError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

/// The functional form of a proved inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum BoundForm {
    /// `coeff · ε²`.
    QuadraticCoeff { coeff: f64 },
    /// `2ε - 1`.
    TwoEpsMinusOne,
    /// Sampled values `(ε, bound)`.
    PointwiseTable { points: Vec<(f64, f64)> },
    /// `π ε² / (1 + sqrt(1 - ε))²`.
    SqrtCurve,
    /// `c2 ε² + c3 ε³`.
    Cubic { c2: f64, c3: f64 },
}

/// One inequality `Δ(ε) >= …` or `Δ(ε) <= …` on an ε-range, with the chain
/// of operations that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub kind: BoundKind,
    #[serde(flatten)]
    pub form: BoundForm,
    pub eps_lo: f64,
    pub eps_hi: f64,
    pub provenance: Vec<ProvenanceEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProvenanceEntry {
    pub operation: String,
    pub inputs: serde_json::Value,
    pub outputs: serde_json::Value,
}

impl BoundCertificate {
    /// The bound value at `eps`, or `None` outside the certificate's range.
    pub fn eval(&self, eps: f64) -> Option<f64> {
        if eps < self.eps_lo - 1e-12 || eps > self.eps_hi + 1e-12 {
            return None;
        }
        Some(match &self.form {
            BoundForm::QuadraticCoeff { coeff } => coeff * eps * eps,
            BoundForm::TwoEpsMinusOne => 2.0 * eps - 1.0,
            BoundForm::SqrtCurve => {
                std::f64::consts::PI * eps * eps / (1.0 + (1.0 - eps).sqrt()).powi(2)
            }
            BoundForm::Cubic { c2, c3 } => c2 * eps * eps + c3 * eps * eps * eps,
            BoundForm::PointwiseTable { points } => {
                // Piecewise-linear interpolation over the sampled grid.
                match points.binary_search_by(|(x, _)| x.total_cmp(&eps)) {
                    Ok(i) => points[i].1,
                    Err(0) => points.first()?.1,
                    Err(i) if i == points.len() => points.last()?.1,
                    Err(i) => {
                        let (x0, y0) = points[i - 1];
                        let (x1, y1) = points[i];
                        y0 + (y1 - y0) * (eps - x0) / (x1 - x0)
                    }
                }
            }
        })
    }
}

/// Content hash of a piecewise-linear kernel, recorded in provenance chains.
pub fn kernel_hash(kernel: &KernelPL) -> String {
    let mut hasher = Sha256::new();
    for y in kernel.ys() {
        hasher.update(y.to_le_bytes());
    }
    let digest = hasher.finalize();
    let mut out = String::with_capacity(16);
    for byte in digest.iter().take(8) {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

pub(crate) fn check_eps(eps: f64) -> Result<(), BoundError> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(BoundError::EpsOutOfRange { eps });
    }
    Ok(())
}
