//! Upper bounds on `Δ(ε)`: the exact line segment `2ε - 1` on `[11/16, 1]`,
//! the quadratic `96/121·ε²` below it, the probabilistic `π ε²/(1+√(1-ε))²`
//! curve, and pointwise certificates from verified B*[g] witnesses.

use std::f64::consts::PI;

use serde_json::json;

use super::{BoundCertificate, BoundError, BoundForm, BoundKind, ProvenanceEntry};
use crate::sidon::BstarSet;

pub const ELEVEN_SIXTEENTHS: f64 = 11.0 / 16.0;
pub const QUADRATIC_CAP: f64 = 96.0 / 121.0;

/// The analytic upper envelope (no loaded certificates):
/// `min{2ε-1 on [11/16, 1], (96/121)ε² on (0, 11/16], πε²/(1+√(1-ε))²}`.
pub fn upper_envelope_base(eps: f64) -> f64 {
    assert!(eps > 0.0 && eps <= 1.0);
    let mut best = PI * eps * eps / (1.0 + (1.0 - eps).sqrt()).powi(2);
    if eps >= ELEVEN_SIXTEENTHS {
        best = best.min(2.0 * eps - 1.0);
    }
    if eps <= ELEVEN_SIXTEENTHS {
        best = best.min(QUADRATIC_CAP * eps * eps);
    }
    best
}

/// A pointwise upper certificate `Δ(ε₀) <= cap` from a verified witness,
/// extended to all `ε <= ε₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperCertificate {
    pub eps0: f64,
    pub cap: f64,
    pub certificate: BoundCertificate,
}

impl UpperCertificate {
    /// Bound at `eps`: constant leftward by monotonicity, improved by the
    /// scaling law `Δ(ε) <= (Δ(x)/x)·ε` and by `Δ(ε)/ε²` increasing. The
    /// quadratic propagation is the strongest of the three for `ε <= ε₀`;
    /// the certificate says nothing for `ε > ε₀`.
    pub fn eval(&self, eps: f64) -> f64 {
        if eps > self.eps0 {
            return f64::INFINITY;
        }
        let constant = self.cap;
        let linear = self.cap / self.eps0 * eps;
        let quadratic = self.cap / (self.eps0 * self.eps0) * eps * eps;
        constant.min(linear).min(quadratic)
    }
}

/// `Δ(|S|/n) <= g/n` for a verified non-modular B*[g] witness.
pub fn upper_from_bstar(witness: &BstarSet) -> Result<UpperCertificate, BoundError> {
    if witness.modulus().is_some() {
        return Err(BoundError::ModularWitness);
    }
    witness.verify()?;
    let n = witness.ambient_n() as f64;
    let eps0 = witness.len() as f64 / n;
    let cap = witness.g() as f64 / n;
    let certificate = BoundCertificate {
        kind: BoundKind::Upper,
        form: BoundForm::PointwiseTable { points: vec![(eps0, cap)] },
        eps_lo: 0.0,
        eps_hi: eps0,
        provenance: vec![ProvenanceEntry {
            operation: "upper_from_bstar".into(),
            inputs: json!({
                "witness": witness.to_json(),
            }),
            outputs: json!({
                "eps0": eps0,
                "cap": cap,
                "propagation": ["constant", "delta_over_eps", "delta_over_eps_squared"],
            }),
        }],
    };
    Ok(UpperCertificate { eps0, cap, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sidon::{search_r, SearchConfig};

    #[test]
    fn base_envelope_examples() {
        assert!((upper_envelope_base(1.0) - 1.0).abs() < 1e-15);
        let at_break = upper_envelope_base(ELEVEN_SIXTEENTHS);
        assert!((at_break - 0.375).abs() < 1e-12);
        // Small eps: the sqrt curve undercuts the quadratic cap.
        let small = upper_envelope_base(0.01);
        let sqrt_curve = PI * 1e-4 / (1.0 + 0.99f64.sqrt()).powi(2);
        assert!((small - sqrt_curve).abs() < 1e-12);
        assert!(small < QUADRATIC_CAP * 1e-4);
    }

    #[test]
    fn crossover_near_the_cited_point() {
        // The sqrt curve beats 96/121 exactly below (11/96)(8√(6π) - 11π).
        let crossover = 11.0 / 96.0 * (8.0 * (6.0 * PI).sqrt() - 11.0 * PI);
        assert!((crossover - 0.0201).abs() < 1e-3);
        for (eps, sqrt_wins) in [(crossover - 1e-3, true), (crossover + 1e-3, false)] {
            let sqrt_curve = PI * eps * eps / (1.0 + (1.0 - eps).sqrt()).powi(2);
            let quad = QUADRATIC_CAP * eps * eps;
            assert_eq!(sqrt_curve < quad, sqrt_wins, "eps = {eps}");
        }
    }

    #[test]
    fn witness_certificates_propagate_quadratically() {
        let out = search_r(6, 17, &SearchConfig::default());
        assert!(out.size >= 11);
        let cert = upper_from_bstar(&out.witness).unwrap();
        assert!(cert.cap <= 6.0 / 17.0 + 1e-12);
        let eps0 = cert.eps0;
        // Downward propagation is the quadratic rate.
        let half = cert.eval(eps0 / 2.0);
        assert!((half - cert.cap / 4.0).abs() < 1e-12);
        assert_eq!(cert.eval(eps0 + 0.01), f64::INFINITY);
    }

    #[test]
    fn full_set_gives_the_vacuous_bound() {
        let witness = crate::sidon::BstarSet::new_line((1..=9).collect(), 9).unwrap();
        let cert = upper_from_bstar(&witness).unwrap();
        assert!((cert.eval(1.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn modular_witnesses_are_rejected() {
        let witness = crate::sidon::BstarSet::new_modular(vec![0, 1, 2, 4], 7).unwrap();
        assert!(matches!(upper_from_bstar(&witness), Err(BoundError::ModularWitness)));
    }
}
