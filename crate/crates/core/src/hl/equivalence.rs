//! Two-sided comparison of `‖f‖_p` with `(Σ (1+k)^{2p−4} c_k^p)^{1/p}` on `O_N⁺`.

use serde::{Deserialize, Serialize};

use crate::elements::Element;
use crate::error::{domain, Error, Result};
use crate::fusion::{RingId, RingKind};
use crate::norms::{central_lp_norm, l2_norm, log_sum_exp, NormResult, QuadratureConfig};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    /// `rhs_form / ‖f‖_p`.
    pub lower_ratio: f64,
    /// `‖f‖_p / rhs_form`.
    pub upper_ratio: f64,
    pub rhs_form: f64,
    pub lp: NormResult,
}

fn check_conditions(c: &[f64], d: f64) -> Result<()> {
    let at = |k: usize| c.get(k).copied().unwrap_or(0.0);
    for k in 0..c.len() {
        if !(at(k) >= at(k + 1) && at(k + 1) >= 0.0) {
            return Err(Error::Precondition {
                index: k,
                message: format!("need c_{k} ≥ c_{} ≥ 0, got {} and {}", k + 1, at(k), at(k + 1)),
            });
        }
    }
    let mut tail = 0.0;
    for k in (0..c.len()).rev() {
        tail += c[k] / (k as f64 + 1.0);
        if tail > d * c[k] {
            return Err(Error::Precondition {
                index: k,
                message: format!("Σ_{{m≥{k}}} c_m/(m+1) = {tail} exceeds D·c_{k} = {}", d * c[k]),
            });
        }
    }
    Ok(())
}

/// Checks monotonicity and the tail condition with constant `d`, then compares the two sides.
pub fn equivalence_check(ring: &RingId, c: &[f64], p: f64, d: f64, q: &QuadratureConfig) -> Result<EquivalenceReport> {
    if !matches!(ring.kind(), RingKind::OnPlus(_)) {
        return domain(format!("the equivalence is stated for O_N⁺, got {ring}"));
    }
    if !(p > 1.5 && p <= 2.0) {
        return domain(format!("p = {p} must lie in (3/2, 2]"));
    }
    if !(d > 0.0 && d.is_finite()) {
        return domain(format!("D = {d} must be positive"));
    }
    check_conditions(c, d)?;
    let e = Element::central_real(*ring, c)?;
    if e.is_zero() {
        return domain("the comparison is undefined for the zero element");
    }
    let ln_terms = c
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0.0)
        .map(|(k, &x)| (2.0 * p - 4.0) * (k as f64 + 1.0).ln() + p * x.ln());
    let rhs_form = if p == 2.0 { l2_norm(&e).value } else { (log_sum_exp(ln_terms) / p).exp() };
    let lp = if p == 2.0 { l2_norm(&e) } else { central_lp_norm(&e, p, q)? };
    Ok(EquivalenceReport { lower_ratio: rhs_form / lp.value, upper_ratio: lp.value / rhs_form, rhs_form, lp })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plancherel_case_is_exact() {
        let r = RingId::on_plus(3).unwrap();
        let c: Vec<f64> = (0..30).map(|k| 0.5f64.powi(k)).collect();
        let rep = equivalence_check(&r, &c, 2.0, 2.0, &QuadratureConfig::default()).unwrap();
        assert_eq!(rep.lower_ratio, 1.0);
        assert_eq!(rep.upper_ratio, 1.0);
    }

    #[test]
    fn increasing_coefficients_fail_at_zero() {
        let r = RingId::on_plus(3).unwrap();
        match equivalence_check(&r, &[0.0, 1.0], 1.8, 5.0, &QuadratureConfig::default()) {
            Err(Error::Precondition { index, .. }) => assert_eq!(index, 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tail_condition_reports_the_failing_level() {
        let r = RingId::on_plus(3).unwrap();
        // Tail at k = 0 is 1 + 1/2 + 1/3 > 1.5.
        match equivalence_check(&r, &[1.0, 1.0, 1.0], 1.8, 1.5, &QuadratureConfig::default()) {
            Err(Error::Precondition { index, .. }) => assert_eq!(index, 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn geometric_ratios_are_finite() {
        let r = RingId::on_plus(3).unwrap();
        let c: Vec<f64> = (0..60).map(|k| 0.8f64.powi(k)).collect();
        let rep = equivalence_check(&r, &c, 1.7, 5.0, &QuadratureConfig::default()).unwrap();
        assert!(rep.lower_ratio.is_finite() && rep.upper_ratio.is_finite());
        assert!((rep.lower_ratio * rep.upper_ratio - 1.0).abs() < 1e-12);
        assert!(equivalence_check(&r, &c, 1.5, 5.0, &QuadratureConfig::default()).is_err());
        let s5 = RingId::sn_plus(5).unwrap();
        assert!(equivalence_check(&s5, &c, 1.7, 5.0, &QuadratureConfig::default()).is_err());
    }
}
