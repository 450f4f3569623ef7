//! Hardy–Littlewood left-hand sides and inequality ratios.
//!
//! For a weight `w` and `1 < p ≤ 2` the three forms are
//!
//! * Schatten: `(Σ_α w(|α|)^{2−p} n_α ‖f̂(α)‖_{S^p}^p)^{1/p}`
//! * HS: `(Σ_α w(|α|)^{2−p} n_α^{2−p/2} ‖f̂(α)‖_{HS}^p)^{1/p}`
//! * Sphere: `(Σ_k w(k)^{2−p} (Σ_{|α|=k} n_α ‖f̂(α)‖_{HS}^2)^{p/2})^{1/p}`
//!
//! A central block `(c/n)·Id_n` gives `n^{2−p}|c|^p` in the first two and `|c|^2` inside
//! the sphere sum, so everything is evaluated in the log domain from `(k, c, ln n)`.

mod corpus;
mod equivalence;
mod sweep;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::elements::{dual_blocks, ln_dims_for, Element};
use crate::error::{domain, Error, Result};
use crate::fusion::{growth_profile, length, RingKind};
use crate::norms::{
    engine_id, freegroup_lp_lower, l2_norm, log_sum_exp, lp_norm, NormResult, OpnormOptions, QuadratureConfig,
    Semantics,
};
use crate::weights::WeightSpec;

pub use corpus::{regression_corpus, CorpusCase, CORPUS_P_VALUES};
pub use equivalence::{equivalence_check, EquivalenceReport};
pub use sweep::{sharpness_sweep, SweepCell, SweepColumn, SweepFamily, SweepReport, SweepSpec};
pub use verify::{hausdorff_young_check, rd_verify, strong_haagerup_ratio, strong_haagerup_verify, HyReport, Trials, VerifyReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LhsForm {
    Schatten,
    Hs,
    Sphere,
}

impl fmt::Display for LhsForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LhsForm::Schatten => "schatten",
            LhsForm::Hs => "hs",
            LhsForm::Sphere => "sphere",
        })
    }
}

impl FromStr for LhsForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "schatten" => Ok(LhsForm::Schatten),
            "hs" => Ok(LhsForm::Hs),
            "sphere" => Ok(LhsForm::Sphere),
            _ => domain(format!("unknown form `{s}` (expected schatten, hs or sphere)")),
        }
    }
}

fn check_hl_p(p: f64) -> Result<()> {
    if !(p > 1.0 && p <= 2.0) {
        return domain(format!("p = {p} must lie in (1, 2]"));
    }
    Ok(())
}

/// Per-level logarithms of the unweighted summands.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelTerm {
    pub k: usize,
    /// `ln Σ_{|α|=k} n_α ‖f̂(α)‖_{S^p}^p`.
    pub ln_schatten: f64,
    /// `ln Σ_{|α|=k} n_α^{2−p/2} ‖f̂(α)‖_{HS}^p`.
    pub ln_hs: f64,
    /// `ln (Σ_{|α|=k} n_α ‖f̂(α)‖_{HS}^2)^{p/2}`.
    pub ln_sphere: f64,
    /// `ln s_k`, `s_k = Σ_{|α|=k} n_α²`.
    pub ln_sphere_size: f64,
}

/// Nonzero levels of `e` with their summands at exponent `p`.
pub fn level_terms(e: &Element, p: f64) -> Result<Vec<LevelTerm>> {
    check_hl_p(p)?;
    let coeffs = e.length_coefficients();
    let ln_n = ln_dims_for(e);
    let k_max = e.max_length();
    let mut per_level: Vec<(Vec<f64>, Vec<f64>)> = vec![(Vec::new(), Vec::new()); k_max + 1];
    for ((k, z), l) in coeffs.iter().zip(&ln_n) {
        let ln_abs = z.norm().ln();
        per_level[*k].0.push((2.0 - p) * l + p * ln_abs);
        per_level[*k].1.push(2.0 * ln_abs);
    }
    let ln_s = if coeffs.is_empty() { Vec::new() } else { growth_profile(e.ring(), k_max)?.ln_spheres() };
    Ok(per_level
        .into_iter()
        .enumerate()
        .filter(|(_, (a, _))| !a.is_empty())
        .map(|(k, (a, b))| {
            // Scalar blocks make the Schatten and HS summands coincide.
            let ln_schatten = log_sum_exp(a);
            LevelTerm { k, ln_schatten, ln_hs: ln_schatten, ln_sphere: p / 2.0 * log_sum_exp(b), ln_sphere_size: ln_s[k] }
        })
        .collect())
}

/// The left-hand side in the requested form; exact.
pub fn hl_lhs(e: &Element, w: &WeightSpec, p: f64, form: LhsForm) -> Result<NormResult> {
    check_hl_p(p)?;
    if p == 2.0 {
        return Ok(l2_norm(e));
    }
    let terms = level_terms(e, p)?;
    let ln = log_sum_exp(terms.iter().map(|t| {
        let body = match form {
            LhsForm::Schatten => t.ln_schatten,
            LhsForm::Hs => t.ln_hs,
            LhsForm::Sphere => t.ln_sphere,
        };
        (2.0 - p) * w.ln_eval(t.k) + body
    }));
    Ok(NormResult::exact((ln / p).exp()))
}

/// `(Σ_k s_k^{−(2−p)/2} w(k)^{2−p} Σ_{|α|=k} n_α ‖f̂(α)‖_{S^p}^p)^{1/p}`, the Schatten
/// form with the sphere-size correction; it never exceeds the sphere form.
pub fn hl_lhs_sphere_normalized(e: &Element, w: &WeightSpec, p: f64) -> Result<NormResult> {
    let terms = level_terms(e, p)?;
    let ln = log_sum_exp(
        terms.iter().map(|t| (2.0 - p) * w.ln_eval(t.k) - (2.0 - p) / 2.0 * t.ln_sphere_size + t.ln_schatten),
    );
    Ok(NormResult::exact((ln / p).exp()))
}

/// The same left-hand side evaluated directly from the Fourier blocks and their singular
/// values. Only suitable for moderate dimensions.
pub fn hl_lhs_blocks(e: &Element, w: &WeightSpec, p: f64, form: LhsForm) -> Result<f64> {
    check_hl_p(p)?;
    let mut total = 0.0;
    let mut spheres = vec![0.0; e.max_length() + 1];
    for (label, block) in dual_blocks(e) {
        let k = length(e.ring(), &label)?;
        let n = block.ln_dim().exp();
        let wk = w.ln_eval(k).exp().powf(2.0 - p);
        match form {
            LhsForm::Schatten => total += wk * n * block.schatten_pow(p),
            LhsForm::Hs => total += wk * n.powf(2.0 - p / 2.0) * block.hs_norm().powf(p),
            LhsForm::Sphere => spheres[k] += n * block.hs_norm().powi(2),
        }
    }
    if form == LhsForm::Sphere {
        total = spheres.iter().enumerate().map(|(k, s)| w.ln_eval(k).exp().powf(2.0 - p) * s.powf(p / 2.0)).sum();
    }
    Ok(total.powf(1.0 / p))
}

/// The function-side norm used as the right-hand side, with its engine id.
///
/// Free groups below `p = 2` use the interpolation lower bound of
/// [`freegroup_lp_lower`], so ratios against it over-estimate the true ratio.
pub fn rhs_norm(e: &Element, p: f64, q: &QuadratureConfig, op: &OpnormOptions) -> Result<(NormResult, &'static str)> {
    if matches!(e.ring().kind(), RingKind::FreeGroup(_)) && (1.0..2.0).contains(&p) {
        return Ok((freegroup_lp_lower(e, p)?, "free-lp-lower"));
    }
    Ok((lp_norm(e, p, q, op)?, engine_id(e, p)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HlRatio {
    pub ratio: f64,
    pub lhs: f64,
    pub rhs: NormResult,
    pub engine: String,
    /// The right-hand side is only a lower bound, so `ratio` is an upper estimate.
    pub upper_estimate: bool,
}

/// `hl_lhs / ‖f‖_{L^p}`.
pub fn hl_ratio(
    e: &Element,
    w: &WeightSpec,
    p: f64,
    form: LhsForm,
    q: &QuadratureConfig,
    op: &OpnormOptions,
) -> Result<HlRatio> {
    check_hl_p(p)?;
    if e.is_zero() {
        return domain("the ratio is undefined for the zero element");
    }
    let lhs = hl_lhs(e, w, p, form)?.value;
    let (rhs, engine) = rhs_norm(e, p, q, op)?;
    Ok(HlRatio {
        ratio: lhs / rhs.value,
        lhs,
        upper_estimate: rhs.semantics == Semantics::LowerBound,
        rhs,
        engine: engine.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{IrrLabel, RingId, Word};
    use num_complex::Complex64;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    const FORMS: [LhsForm; 3] = [LhsForm::Schatten, LhsForm::Hs, LhsForm::Sphere];

    #[test]
    fn trivial_character_has_unit_lhs() {
        let w = WeightSpec::new(2.0, 1.5).unwrap();
        for ring in [RingId::on_plus(3).unwrap(), RingId::lattice(2).unwrap(), RingId::free_group(2).unwrap()] {
            for form in FORMS {
                for p in [1.2, 1.5, 2.0] {
                    let v = hl_lhs(&Element::one(ring), &w, p, form).unwrap().value;
                    assert!((v - 1.0).abs() < 1e-15, "{ring} {form} {p}: {v}");
                }
            }
        }
    }

    #[test]
    fn p_two_collapses_to_l2() {
        let r = RingId::on_plus(3).unwrap();
        let e = Element::central(r, [c(0.0), c(1.0)]).unwrap();
        let w = WeightSpec::new(r.r0().unwrap(), 2.0).unwrap();
        for form in FORMS {
            assert_eq!(hl_lhs(&e, &w, 2.0, form).unwrap().value, 1.0);
        }
        assert!(hl_lhs(&e, &w, 1.0, LhsForm::Schatten).is_err());
        assert!(hl_lhs(&e, &w, 2.1, LhsForm::Schatten).is_err());
    }

    #[test]
    fn reduced_forms_match_block_formula() {
        let r = RingId::on_plus(3).unwrap();
        let w = WeightSpec::new(r.r0().unwrap(), 0.0).unwrap();
        let e = Element::central(r, [c(0.0), c(1.0)]).unwrap();
        // χ_1: w(1)^{0.5} · 3 · 3 · (1/3)^{1.5} = w(1)^{0.5} · 3^{0.5}.
        let expected = (w.ln_eval(1).exp().powf(0.5) * 3f64.sqrt()).powf(1.0 / 1.5);
        let v = hl_lhs(&e, &w, 1.5, LhsForm::Schatten).unwrap().value;
        assert!((v - expected).abs() < 1e-12 * expected);
        let e = Element::central(r, [c(0.3), Complex64::new(-1.0, 0.5), c(0.0), c(2.0), c(0.1)]).unwrap();
        let w = WeightSpec::new(1.7, 1.2).unwrap();
        for form in FORMS {
            for p in [1.1, 1.5, 1.9] {
                let a = hl_lhs(&e, &w, p, form).unwrap().value;
                let b = hl_lhs_blocks(&e, &w, p, form).unwrap();
                assert!((a - b).abs() <= 1e-12 * b, "{form} {p}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn point_forms_match_block_formula() {
        let f2 = RingId::free_group(2).unwrap();
        let terms = [("e", c(1.0)), ("a", c(-2.0)), ("Ab", Complex64::new(0.5, 1.5)), ("ab", c(0.25))];
        let e = Element::points(f2, terms.iter().map(|(s, z)| (IrrLabel::Word(Word::parse(s).unwrap()), *z))).unwrap();
        let w = WeightSpec::new(2f64.sqrt(), 1.5).unwrap();
        for form in FORMS {
            let a = hl_lhs(&e, &w, 1.5, form).unwrap().value;
            let b = hl_lhs_blocks(&e, &w, 1.5, form).unwrap();
            assert!((a - b).abs() <= 1e-12 * b);
        }
        let sphere = hl_lhs(&e, &w, 1.5, LhsForm::Sphere).unwrap().value;
        let schatten = hl_lhs(&e, &w, 1.5, LhsForm::Schatten).unwrap().value;
        assert!(schatten >= sphere);
    }

    #[test]
    fn ratio_of_identity_is_one() {
        let q = QuadratureConfig::default();
        let op = OpnormOptions::default();
        let w = WeightSpec::new(1.0, 1.0).unwrap();
        for ring in [RingId::on_plus(3).unwrap(), RingId::lattice(1).unwrap(), RingId::free_group(2).unwrap()] {
            let r = hl_ratio(&Element::one(ring), &w, 1.5, LhsForm::Schatten, &q, &op).unwrap();
            assert!((r.ratio - 1.0).abs() < 1e-8, "{ring}: {}", r.ratio);
        }
        let zero = Element::central(RingId::on_plus(3).unwrap(), []).unwrap();
        assert!(hl_ratio(&zero, &w, 1.5, LhsForm::Schatten, &q, &op).is_err());
    }

    #[test]
    fn free_group_ratio_is_flagged_as_upper_estimate() {
        let f2 = RingId::free_group(2).unwrap();
        let e = Element::points(
            f2,
            [(IrrLabel::Word(Word::parse("a").unwrap()), c(1.0)), (IrrLabel::Word(Word::parse("b").unwrap()), c(1.0))],
        )
        .unwrap();
        let w = WeightSpec::new(1.0, 1.5).unwrap();
        let r = hl_ratio(&e, &w, 1.5, LhsForm::Sphere, &QuadratureConfig::default(), &OpnormOptions::default()).unwrap();
        assert!(r.upper_estimate);
        assert_eq!(r.engine, "free-lp-lower");
        assert!(r.ratio.is_finite());
    }
}
