//! Rapid decay, strong Haagerup and Hausdorff–Young checks.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rhs_norm;
use crate::elements::{generate_family, Element, FamilyKind, FamilySpec};
use crate::error::{domain, Error, Result};
use crate::fusion::{RingId, RingKind};
use crate::norms::{
    central_lp_norm, dual_lp_norm, effective_radius, freegroup_opnorm_lower, l2_norm, NormResult, OpnormOptions,
    QuadratureConfig,
};

/// Seeded random trials: how many, from which seed, and how many labels each may carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trials {
    pub count: usize,
    pub seed: u64,
    pub support_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    /// `‖f‖_∞-estimate / bound` per trial.
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
    /// Trials whose power iteration stopped early; their Rayleigh quotient is still a
    /// lower bound and is used as is.
    pub unconverged: usize,
    /// Smallest ball radius actually used on free groups.
    pub min_effective_radius: Option<usize>,
}

struct SupEstimate {
    value: f64,
    converged: bool,
    radius: Option<usize>,
}

fn sup_estimate(e: &Element, q: &QuadratureConfig, op: &OpnormOptions) -> Result<SupEstimate> {
    match e.ring().kind() {
        RingKind::OnPlus(_) | RingKind::SnPlus(_) => {
            Ok(SupEstimate { value: central_lp_norm(e, f64::INFINITY, q)?.value, converged: true, radius: None })
        }
        RingKind::FreeGroup(n) => {
            let support = e.point_coeffs().map_or(0, |m| m.len());
            let radius = effective_radius(n, support.max(1), op.radius, op.max_entries);
            match freegroup_opnorm_lower(e, op) {
                Ok(r) => Ok(SupEstimate { value: r.value, converged: true, radius }),
                Err(Error::NonConvergence { partial, .. }) => Ok(SupEstimate { value: partial, converged: false, radius }),
                Err(err) => Err(err),
            }
        }
        _ => domain(format!("no sup-norm estimate for {}", e.ring())),
    }
}

fn run_trials(
    elements: &[Element],
    bound: impl Fn(&Element) -> f64 + Sync,
    q: &QuadratureConfig,
    op: &OpnormOptions,
) -> Result<VerifyReport> {
    let results: Vec<Result<(f64, SupEstimate)>> = elements
        .par_iter()
        .map(|e| {
            let s = sup_estimate(e, q, op)?;
            Ok((s.value / bound(e), s))
        })
        .collect();
    let mut ratios = Vec::with_capacity(results.len());
    let mut unconverged = 0;
    let mut min_radius: Option<usize> = None;
    for r in results {
        let (ratio, s) = r?;
        ratios.push(ratio);
        unconverged += usize::from(!s.converged);
        if let Some(x) = s.radius {
            min_radius = Some(min_radius.map_or(x, |m| m.min(x)));
        }
    }
    let max_ratio = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(VerifyReport { ratios, max_ratio, unconverged, min_effective_radius: min_radius })
}

/// Largest `‖f‖_∞ / ((1+k)^β ‖f‖_2)` over seeded random elements supported on level `k`.
///
/// Level rings use central elements `c·χ_k`; free groups use random sphere elements with
/// at most `support_cap` words, and their sup norm is the certified lower bound.
pub fn rd_verify(
    ring: &RingId,
    k: usize,
    beta: f64,
    trials: Trials,
    q: &QuadratureConfig,
    op: &OpnormOptions,
) -> Result<VerifyReport> {
    if !matches!(ring.kind(), RingKind::OnPlus(_) | RingKind::SnPlus(_) | RingKind::FreeGroup(_)) {
        return domain(format!("rapid decay checks run on O_N⁺, S_N⁺ and free groups, got {ring}"));
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return domain(format!("β = {beta} must be nonnegative"));
    }
    let spec = FamilySpec::new(FamilyKind::SphereUniform { level: k }, trials.seed, trials.support_cap);
    let fam = generate_family(ring, &spec, trials.count)?;
    let scale = (1.0 + k as f64).powf(beta);
    run_trials(&fam.elements, |e| scale * l2_norm(e).value, q, op)
}

/// Largest `‖λ(f)‖ / (√e √(k+1) ‖f‖_2)` over seeded random `f` on positive words of length `k`.
pub fn strong_haagerup_verify(n: u32, k: usize, trials: Trials, op: &OpnormOptions) -> Result<VerifyReport> {
    let ring = RingId::free_group(n)?;
    if n < 2 {
        return domain("the strong Haagerup inequality is stated for N ≥ 2");
    }
    let spec = FamilySpec::new(FamilyKind::Holomorphic { level: k }, trials.seed, trials.support_cap);
    let fam = generate_family(&ring, &spec, trials.count)?;
    let scale = 0.5f64.exp() * (k as f64 + 1.0).sqrt();
    run_trials(&fam.elements, |e| scale * l2_norm(e).value, &QuadratureConfig::default(), op)
}

/// Ratio of one given element against the strong Haagerup bound.
pub fn strong_haagerup_ratio(e: &Element, op: &OpnormOptions) -> Result<(f64, NormResult)> {
    if !matches!(e.ring().kind(), RingKind::FreeGroup(n) if n >= 2) {
        return domain(format!("expected a free group on N ≥ 2 generators, got {}", e.ring()));
    }
    let pts = e.point_coeffs().expect("free group elements carry points");
    let mut level = None;
    for l in pts.keys() {
        let crate::fusion::IrrLabel::Word(w) = l else { unreachable!("validated labels") };
        if !w.is_positive() || level.is_some_and(|k| k != w.len()) {
            return domain("the element must be supported on positive words of one length");
        }
        level = Some(w.len());
    }
    let k = level.unwrap_or(0);
    let sup = freegroup_opnorm_lower(e, op)?;
    let bound = 0.5f64.exp() * (k as f64 + 1.0).sqrt() * l2_norm(e).value;
    Ok((sup.value / bound, sup))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyReport {
    /// `‖f‖_p − ‖f̂‖_{p′}`.
    pub margin: f64,
    pub lp: NormResult,
    pub dual: f64,
    pub engine: String,
}

/// Hausdorff–Young margin for `1 ≤ p ≤ 2`.
pub fn hausdorff_young_check(e: &Element, p: f64, q: &QuadratureConfig, op: &OpnormOptions) -> Result<HyReport> {
    if !(1.0..=2.0).contains(&p) {
        return domain(format!("p = {p} must lie in [1, 2]"));
    }
    let conj = if p == 1.0 { f64::INFINITY } else { p / (p - 1.0) };
    let (lp, engine) = rhs_norm(e, p, q, op)?;
    let dual = dual_lp_norm(e, conj)?.value;
    Ok(HyReport { margin: lp.value - dual, lp, dual, engine: engine.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{IrrLabel, Word};
    use num_complex::Complex64;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn words(n: u32, ws: &[&str]) -> Element {
        let r = RingId::free_group(n).unwrap();
        Element::points(r, ws.iter().map(|w| (IrrLabel::Word(Word::parse(w).unwrap()), c(1.0)))).unwrap()
    }

    #[test]
    fn rd_ratio_of_level_characters_is_one() {
        let (q, op) = (QuadratureConfig::default(), OpnormOptions::default());
        let r = RingId::on_plus(3).unwrap();
        let rep = rd_verify(&r, 4, 1.0, Trials { count: 3, seed: 9, support_cap: 1 }, &q, &op).unwrap();
        for x in rep.ratios {
            assert!((x - 1.0).abs() < 1e-9, "{x}");
        }
        let rep = rd_verify(&r, 0, 1.0, Trials { count: 2, seed: 1, support_cap: 1 }, &q, &op).unwrap();
        assert!((rep.max_ratio - 1.0).abs() < 1e-12);
        assert!(rd_verify(&RingId::lattice(1).unwrap(), 1, 1.0, Trials { count: 1, seed: 0, support_cap: 1 }, &q, &op).is_err());
    }

    #[test]
    fn strong_haagerup_examples() {
        let op = OpnormOptions::with_radius(8);
        let (r, _) = strong_haagerup_ratio(&words(2, &["e"]), &op).unwrap();
        assert!((r - (-0.5f64).exp()).abs() < 1e-12);
        let (r, sup) = strong_haagerup_ratio(&words(2, &["a", "b"]), &op).unwrap();
        // ‖δ_a + δ_b‖ = 2√(2−1) = 2.
        assert!(sup.value <= 2.0 + 1e-12 && sup.value > 1.9);
        assert!(r <= 2.0 / (0.5f64.exp() * 2.0) + 1e-12);
        assert!(strong_haagerup_ratio(&words(2, &["A"]), &op).is_err());
        let rep = strong_haagerup_verify(2, 2, Trials { count: 3, seed: 5, support_cap: 4 }, &op).unwrap();
        assert_eq!(rep.ratios.len(), 3);
        assert!(rep.max_ratio <= 1.0);
    }

    #[test]
    fn hausdorff_young_examples() {
        let (q, op) = (QuadratureConfig::default(), OpnormOptions::default());
        let r = RingId::on_plus(3).unwrap();
        let chi1 = Element::central(r, [c(0.0), c(1.0)]).unwrap();
        assert_eq!(hausdorff_young_check(&chi1, 2.0, &q, &op).unwrap().margin, 0.0);
        let z = RingId::lattice(1).unwrap();
        let cos2 = Element::points(z, [(IrrLabel::Vector(vec![1]), c(1.0)), (IrrLabel::Vector(vec![-1]), c(1.0))]).unwrap();
        let rep = hausdorff_young_check(&cos2, 4.0 / 3.0, &q, &op).unwrap();
        assert!((rep.dual - 2f64.powf(0.25)).abs() < 1e-14);
        assert!(rep.margin >= 0.0);
        let rep = hausdorff_young_check(&words(2, &["ab"]), 1.0, &q, &op).unwrap();
        assert!(rep.margin.abs() < 1e-15);
    }
}
