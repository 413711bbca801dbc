//! The best-known envelope: pointwise maximum of the lower bounds and
//! minimum of the upper bounds, with provenance certificates and CSV export.

use serde_json::json;

use super::lower::{delta_half_lower, feasibility_threshold, QuarticBoundInputs};
use super::upper::{upper_envelope_base, UpperCertificate};
use super::{
    check_eps, kernel_hash, BoundCertificate, BoundError, BoundForm, BoundKind, ProvenanceEntry,
};
use crate::fmt_f64;
use crate::kernels::ClosedFormKernel;

/// Coefficients of the cubic lower bound `c2·ε² + c3·ε³` derived from the
/// linearized rearrangement floor. The full pointwise floor is also applied;
/// these constants act as its proved global form.
pub const CUBIC_C2: f64 = 0.5546;
pub const CUBIC_C3: f64 = 0.088079;

/// Regression floor for the recomputed feasibility coefficient.
pub const FEASIBILITY_COEFF_FLOOR: f64 = 0.591389;

#[derive(Debug, Clone)]
pub struct Envelope {
    feasibility_coeff: f64,
    lower_certs: Vec<BoundCertificate>,
    upper_certs: Vec<BoundCertificate>,
    witness_certs: Vec<UpperCertificate>,
}

/// One row of the exported envelope grid.
#[derive(Debug, Clone, Copy)]
pub struct EnvelopeRow {
    pub eps: f64,
    pub lower: f64,
    pub upper: f64,
}

impl Envelope {
    /// Builds the standard envelope, recomputing the feasibility coefficient
    /// from the bundled kernel at the stated tolerances. The recomputed value
    /// must meet the published floor; a shortfall is a build defect.
    pub fn standard() -> Result<Envelope, BoundError> {
        let kernel = ClosedFormKernel::k5().sample(10_000)?;
        let inputs = QuarticBoundInputs::from_kernel(&kernel, 2)?;
        let l_star = feasibility_threshold(&inputs);
        let coeff = l_star / 2.0;
        debug_assert!(
            coeff >= FEASIBILITY_COEFF_FLOOR - 1e-6,
            "recomputed coefficient {coeff} fell below the regression floor"
        );
        let hash = kernel_hash(&kernel);
        let lower_certs = vec![
            BoundCertificate {
                kind: BoundKind::Lower,
                form: BoundForm::TwoEpsMinusOne,
                eps_lo: 0.5,
                eps_hi: 1.0,
                provenance: vec![ProvenanceEntry {
                    operation: "trivial_lower".into(),
                    inputs: json!({"center": 0.5}),
                    outputs: json!({"form": "2*eps-1"}),
                }],
            },
            BoundCertificate {
                kind: BoundKind::Lower,
                form: BoundForm::QuadraticCoeff { coeff },
                eps_lo: 0.0,
                eps_hi: 1.0,
                provenance: vec![ProvenanceEntry {
                    operation: "feasibility_threshold".into(),
                    inputs: json!({
                        "kernel_hash": hash,
                        "hat0": inputs.hat()[0],
                        "hat1": inputs.hat()[1],
                        "tail_from_2": inputs.tail(),
                        "bisection_tol": 1e-7,
                        "inner_tol": 1e-9,
                    }),
                    outputs: json!({"l_star": l_star, "coeff": coeff}),
                }],
            },
            BoundCertificate {
                kind: BoundKind::Lower,
                form: BoundForm::Cubic { c2: CUBIC_C2, c3: CUBIC_C3 },
                eps_lo: 0.0,
                eps_hi: 1.0,
                provenance: vec![ProvenanceEntry {
                    operation: "delta_half_lower".into(),
                    inputs: json!({"window": [0.375, 0.625]}),
                    outputs: json!({"c2": CUBIC_C2, "c3": CUBIC_C3}),
                }],
            },
            BoundCertificate {
                kind: BoundKind::Lower,
                form: BoundForm::PointwiseTable {
                    points: delta_half_table(1e-3),
                },
                eps_lo: 0.375,
                eps_hi: 0.625,
                provenance: vec![ProvenanceEntry {
                    operation: "delta_half_lower".into(),
                    inputs: json!({"grid": 1e-3, "taylor_free": true}),
                    outputs: json!({"form": "pointwise sine-cap intersection"}),
                }],
            },
        ];
        let upper_certs = vec![
            BoundCertificate {
                kind: BoundKind::Upper,
                form: BoundForm::TwoEpsMinusOne,
                eps_lo: 11.0 / 16.0,
                eps_hi: 1.0,
                provenance: vec![ProvenanceEntry {
                    operation: "upper_envelope".into(),
                    inputs: json!({"limit_family": "R(g, 3g - floor(g/3) + 1)"}),
                    outputs: json!({"equality_range": [0.6875, 1.0]}),
                }],
            },
            BoundCertificate {
                kind: BoundKind::Upper,
                form: BoundForm::QuadraticCoeff { coeff: 96.0 / 121.0 },
                eps_lo: 0.0,
                eps_hi: 11.0 / 16.0,
                provenance: vec![ProvenanceEntry {
                    operation: "upper_envelope".into(),
                    inputs: json!({"anchor": {"eps": 0.6875, "delta": 0.375}}),
                    outputs: json!({"rule": "delta_over_eps2_increasing"}),
                }],
            },
            BoundCertificate {
                kind: BoundKind::Upper,
                form: BoundForm::SqrtCurve,
                eps_lo: 0.0,
                eps_hi: 1.0,
                provenance: vec![ProvenanceEntry {
                    operation: "upper_envelope".into(),
                    inputs: json!({"construction": "square-root inclusion profile"}),
                    outputs: json!({"form": "pi*eps^2/(1+sqrt(1-eps))^2"}),
                }],
            },
        ];
        Ok(Envelope { feasibility_coeff: coeff, lower_certs, upper_certs, witness_certs: Vec::new() })
    }

    /// Adds a pointwise upper certificate (from a verified witness).
    pub fn with_witness(mut self, cert: UpperCertificate) -> Envelope {
        self.witness_certs.push(cert);
        self
    }

    pub fn feasibility_coeff(&self) -> f64 {
        self.feasibility_coeff
    }

    pub fn certificates(&self) -> impl Iterator<Item = &BoundCertificate> {
        self.lower_certs
            .iter()
            .chain(self.upper_certs.iter())
            .chain(self.witness_certs.iter().map(|w| &w.certificate))
    }

    /// Best known lower bound at `eps` (`Δ(0) = 0`, `Δ(1) = 1` hardcoded).
    pub fn lower(&self, eps: f64) -> Result<f64, BoundError> {
        if eps == 0.0 {
            return Ok(0.0);
        }
        check_eps(eps)?;
        if eps == 1.0 {
            return Ok(1.0);
        }
        let mut best = (2.0 * eps - 1.0).max(0.0);
        best = best.max(self.feasibility_coeff * eps * eps);
        best = best.max(CUBIC_C2 * eps * eps + CUBIC_C3 * eps * eps * eps);
        let half = delta_half_lower(eps)?;
        if half.in_range {
            best = best.max(half.delta);
        }
        Ok(best)
    }

    /// Best known upper bound at `eps`.
    pub fn upper(&self, eps: f64) -> Result<f64, BoundError> {
        if eps == 0.0 {
            return Ok(0.0);
        }
        check_eps(eps)?;
        let mut best = upper_envelope_base(eps);
        for witness in &self.witness_certs {
            best = best.min(witness.eval(eps));
        }
        Ok(best)
    }

    /// The envelope sampled on a uniform grid with the given step.
    pub fn grid(&self, step: f64) -> Result<Vec<EnvelopeRow>, BoundError> {
        assert!(step > 0.0 && step <= 0.5);
        let count = (1.0 / step).round() as usize;
        let mut rows = Vec::with_capacity(count);
        for k in 1..=count {
            let eps = (k as f64 * step).min(1.0);
            rows.push(EnvelopeRow { eps, lower: self.lower(eps)?, upper: self.upper(eps)? });
        }
        Ok(rows)
    }

    /// CSV export: `eps,lower,upper,lower_over_eps2,upper_over_eps2`.
    pub fn to_csv(&self, step: f64) -> Result<String, BoundError> {
        let mut out = String::from("eps,lower,upper,lower_over_eps2,upper_over_eps2\n");
        for row in self.grid(step)? {
            let e2 = row.eps * row.eps;
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_f64(row.eps),
                fmt_f64(row.lower),
                fmt_f64(row.upper),
                fmt_f64(row.lower / e2),
                fmt_f64(row.upper / e2),
            ));
        }
        Ok(out)
    }

    /// Verifies `lower <= upper` across the grid; returns the first violation.
    pub fn check_consistency(&self, step: f64) -> Result<(), (f64, f64, f64)> {
        let rows = self.grid(step).map_err(|_| (0.0, 0.0, 0.0))?;
        for row in rows {
            if row.lower > row.upper + 1e-12 {
                return Err((row.eps, row.lower, row.upper));
            }
        }
        Ok(())
    }
}

fn delta_half_table(step: f64) -> Vec<(f64, f64)> {
    let mut points = Vec::new();
    let mut eps = 0.375 + step;
    while eps < 0.625 {
        if let Ok(bound) = delta_half_lower(eps) {
            if bound.in_range {
                points.push((eps, bound.delta));
            }
        }
        eps += step;
    }
    points
}
