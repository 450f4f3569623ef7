//! Norm engines on both sides of the Fourier transform.
//!
//! Dual-side `ℓ^p(Ĝ)` norms are exact finite sums. Function-side `L^p(𝔾)` norms come
//! from quadrature (central elements through the SU(2)/SO(3) character transfer,
//! lattices and rational rotation algebras on the torus) or, on free groups, from a
//! certified lower bound for the operator norm.

mod central;
mod freegroup;
mod quadrature;
mod torus;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::elements::{ln_dims_for, Element, Payload};
use crate::error::{domain, Error, Result};
use crate::fusion::RingKind;

pub use central::{central_lp_norm, central_profile, haar_moment};
pub use freegroup::{ball_size, effective_radius, freegroup_lp_lower, freegroup_opnorm_lower, freegroup_sup_upper, OpnormOptions};
pub use torus::{lattice_lp_norm, qtorus_lp_norm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Semantics {
    Exact,
    QuadratureEstimate,
    LowerBound,
}

impl Semantics {
    pub fn as_str(&self) -> &'static str {
        match self {
            Semantics::Exact => "exact",
            Semantics::QuadratureEstimate => "quadrature_estimate",
            Semantics::LowerBound => "lower_bound",
        }
    }
}

/// A computed norm together with what kind of number it is.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormResult {
    pub value: f64,
    pub semantics: Semantics,
    /// Absolute error estimate; zero for exact results.
    pub error_estimate: f64,
    #[serde(default)]
    pub detail: BTreeMap<String, f64>,
}

impl NormResult {
    pub fn exact(value: f64) -> Self {
        NormResult { value, semantics: Semantics::Exact, error_estimate: 0.0, detail: BTreeMap::new() }
    }

    pub(crate) fn with(mut self, key: &str, v: f64) -> Self {
        self.detail.insert(key.to_string(), v);
        self
    }

    /// `λ·self` for `λ ≥ 0`, error estimate scaled alongside.
    pub fn scaled(&self, lambda: f64) -> Self {
        NormResult { value: self.value * lambda, error_estimate: self.error_estimate * lambda, ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureConfig {
    /// Base node count; a power of two, at least 16.
    pub node_count: usize,
    /// Number of doubling rounds used for the error estimate.
    pub refinement_rounds: usize,
    /// Grid size for sup norms before local refinement.
    pub sup_grid: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { node_count: 2048, refinement_rounds: 2, sup_grid: 8192 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.node_count < 16 || !self.node_count.is_power_of_two() {
            return domain(format!("node_count {} must be a power of two ≥ 16", self.node_count));
        }
        if self.refinement_rounds == 0 || self.sup_grid == 0 {
            return domain("refinement_rounds and sup_grid must be positive");
        }
        Ok(())
    }

    /// Twice the resolution in every knob; used for golden values.
    pub fn doubled(&self) -> Self {
        QuadratureConfig { node_count: self.node_count * 2, refinement_rounds: self.refinement_rounds, sup_grid: self.sup_grid * 2 }
    }
}

/// Quadrature acceptance threshold on `|value(n) − value(2n)|`.
pub const QUADRATURE_TOLERANCE: f64 = 1e-8;

pub(crate) fn check_p(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return domain(format!("p = {p} must lie in [1, ∞]"));
    }
    Ok(())
}

/// Runs a quadrature engine on `f / max|f(α)|` and scales the result back, so refinement
/// decisions do not depend on the overall size of the coefficients.
pub(crate) fn at_unit_scale(e: &Element, engine: impl FnOnce(&Element) -> Result<NormResult>) -> Result<NormResult> {
    let m = e.length_coefficients().iter().map(|(_, z)| z.norm()).fold(0.0, f64::max);
    if m == 0.0 || m == 1.0 || !m.is_finite() {
        return engine(e);
    }
    Ok(engine(&e.scaled(num_complex::Complex64::new(1.0 / m, 0.0)))?.scaled(m))
}

/// `ln Σ exp(x_i)`, or `-∞` for an empty list.
pub(crate) fn log_sum_exp(xs: impl IntoIterator<Item = f64>) -> f64 {
    let xs: Vec<f64> = xs.into_iter().collect();
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// `(Σ n_α ‖f̂(α)‖_{S^p}^p)^{1/p}`, or the largest block operator norm at `p = ∞`.
///
/// Central blocks `(c_k/n_k) Id_{n_k}` contribute `n_k^{2−p} |c_k|^p`; this is summed in
/// the log domain so astronomically large `n_k` are harmless.
pub fn dual_lp_norm(e: &Element, p: f64) -> Result<NormResult> {
    check_p(p)?;
    let coeffs = e.length_coefficients();
    let ln_n = ln_dims_for(e);
    let value = if p.is_infinite() {
        coeffs.iter().zip(&ln_n).map(|((_, z), l)| (z.norm().ln() - l).exp()).fold(0.0, f64::max)
    } else {
        let terms = coeffs.iter().zip(&ln_n).map(|((_, z), l)| (2.0 - p) * l + p * z.norm().ln());
        (log_sum_exp(terms) / p).exp()
    };
    Ok(NormResult::exact(value))
}

/// `‖f‖_2`, equal on both sides of the Fourier transform.
pub fn l2_norm(e: &Element) -> NormResult {
    let coeffs = e.length_coefficients();
    let m = coeffs.iter().map(|(_, z)| z.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        return NormResult::exact(0.0);
    }
    let s: f64 = coeffs.iter().map(|(_, z)| (z.norm() / m).powi(2)).sum();
    NormResult::exact(m * s.sqrt())
}

/// Function-side `L^p` norm with the engine that fits the element's ring.
///
/// Free groups have no `L^p` engine for `1 < p < ∞`; `p = 2` is exact and `p = ∞` uses
/// the operator-norm lower bound.
pub fn lp_norm(e: &Element, p: f64, q: &QuadratureConfig, op: &OpnormOptions) -> Result<NormResult> {
    check_p(p)?;
    if p == 2.0 {
        return Ok(l2_norm(e));
    }
    match (e.ring().kind(), e.payload()) {
        (RingKind::OnPlus(_) | RingKind::SnPlus(_), Payload::Central(_)) => central_lp_norm(e, p, q),
        (RingKind::Lattice(_), Payload::Points(_)) => lattice_lp_norm(e, p, q),
        (RingKind::QTorus { .. }, Payload::Points(_)) => qtorus_lp_norm(e, p, q),
        (RingKind::FreeGroup(_), Payload::Points(_)) if p.is_infinite() => freegroup_opnorm_lower(e, op),
        (RingKind::FreeGroup(_), _) => Err(Error::Unsupported(format!(
            "L^{p} norms on free group algebras are only computed for p = 2 and p = ∞"
        ))),
        _ => domain("payload does not match ring"),
    }
}

/// Stable identifier of the engine [`lp_norm`] selects, used in reports and cache keys.
pub fn engine_id(e: &Element, p: f64) -> &'static str {
    if p == 2.0 {
        return "plancherel";
    }
    match e.ring().kind() {
        RingKind::OnPlus(_) => "su2-weyl",
        RingKind::SnPlus(_) => "so3-weyl",
        RingKind::Lattice(_) => "torus-trapezoid",
        RingKind::QTorus { .. } => "qtorus-fiber",
        RingKind::FreeGroup(_) => "free-opnorm-lower",
    }
}
