//! `L^p` norms of central elements on `O_N⁺` and `S_{N+2}⁺`.
//!
//! Both rings share their fusion rules with SU(2) and SO(3), so `‖Σ c_k χ_k‖_p` equals
//! the `L^p` norm of the class function `Σ c_k χ'_k` for the Haar measure of the
//! classical group. With `x = 2cos θ`:
//!
//! * SU(2): `χ'_k = U_k(cos θ) = sin((k+1)θ)/sin θ`, density `(2/π) sin²θ`;
//! * SO(3): `χ'_k = sin((2k+1)θ/2)/sin(θ/2)`, density `(1/π)(1 − cos θ)`.
//!
//! Both character families obey `χ'_{k+1} = x χ'_k − χ'_{k−1}` and are summed by
//! Clenshaw's recurrence, which also takes care of the removable singularities at
//! `θ = 0, π`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature::{composite_gl, golden_max, refine, PANEL_POINTS};
use super::{at_unit_scale, check_p, NormResult, QuadratureConfig, Semantics};
use crate::elements::Element;
use crate::error::{domain, Result};
use crate::fusion::{RingId, RingKind};

/// `Σ c_k χ'_k(θ)` for the classical group attached to `ring`.
pub fn central_profile(ring: &RingId, c: &[Complex64], theta: f64) -> Complex64 {
    let x = 2.0 * theta.cos();
    let mut b1 = Complex64::new(0.0, 0.0);
    let mut b2 = Complex64::new(0.0, 0.0);
    for ck in c.iter().rev() {
        let b0 = ck + b1 * x - b2;
        b2 = b1;
        b1 = b0;
    }
    // b1 = b_0, b2 = b_1 after the loop.
    match ring.kind() {
        RingKind::SnPlus(_) => b1 + b2,
        _ => b1,
    }
}

fn density(ring: &RingId, theta: f64) -> f64 {
    match ring.kind() {
        RingKind::SnPlus(_) => (1.0 - theta.cos()) / PI,
        _ => 2.0 / PI * theta.sin().powi(2),
    }
}

/// Base node count, raised so every panel sees at most about one oscillation.
fn effective_nodes(base: usize, top_level: usize) -> usize {
    base.max((PANEL_POINTS * (top_level + 2)).next_power_of_two())
}

pub fn central_lp_norm(e: &Element, p: f64, q: &QuadratureConfig) -> Result<NormResult> {
    at_unit_scale(e, |e| central_lp_core(e, p, q))
}

fn central_lp_core(e: &Element, p: f64, q: &QuadratureConfig) -> Result<NormResult> {
    check_p(p)?;
    q.validate()?;
    let Some(c) = e.central_coeffs() else {
        return domain("central_lp_norm needs central coefficients");
    };
    let ring = *e.ring();
    if c.is_empty() {
        return Ok(NormResult::exact(0.0));
    }
    let top = c.len() - 1;
    if p.is_infinite() {
        return Ok(central_sup(&ring, c, q));
    }
    let base = effective_nodes(q.node_count, top);
    let r = refine(base, q.refinement_rounds, |n| {
        composite_gl(0.0, PI, n, |t| central_profile(&ring, c, t).norm().powf(p) * density(&ring, t)).powf(1.0 / p)
    });
    Ok(NormResult { value: r.value, semantics: Semantics::QuadratureEstimate, error_estimate: r.error, detail: Default::default() }
        .with("nodes", r.nodes as f64)
        .with("refinement_rounds", r.rounds as f64))
}

fn central_sup(ring: &RingId, c: &[Complex64], q: &QuadratureConfig) -> NormResult {
    let m = q.sup_grid.max(32 * (c.len() + 1));
    let h = PI / (m - 1) as f64;
    let g = |t: f64| central_profile(ring, c, t).norm();
    let (mut arg, mut best) = (0usize, f64::NEG_INFINITY);
    for j in 0..m {
        let v = g(j as f64 * h);
        if v > best {
            best = v;
            arg = j;
        }
    }
    let lo = (arg as f64 - 1.0).max(0.0) * h;
    let hi = ((arg + 1) as f64 * h).min(PI);
    let (_, refined) = golden_max(lo, hi, g);
    let value = refined.max(best);
    NormResult { value, semantics: Semantics::QuadratureEstimate, error_estimate: value - best, detail: Default::default() }
        .with("sup_grid", m as f64)
        .with("argmax", arg as f64 * h)
}

/// `h(χ_{l_1} ⋯ χ_{l_m})` by quadrature of the classical character product.
pub fn haar_moment(ring: &RingId, levels: &[u32], q: &QuadratureConfig) -> Result<NormResult> {
    q.validate()?;
    if !ring.is_level_ring() {
        return domain(format!("Haar moments of characters need a level ring, got {ring}"));
    }
    let chars: Vec<Vec<Complex64>> = levels
        .iter()
        .map(|&l| {
            let mut v = vec![Complex64::new(0.0, 0.0); l as usize + 1];
            v[l as usize] = Complex64::new(1.0, 0.0);
            v
        })
        .collect();
    let total: usize = levels.iter().map(|&l| l as usize).sum();
    let base = effective_nodes(q.node_count, total);
    let r = refine(base, q.refinement_rounds, |n| {
        composite_gl(0.0, PI, n, |t| {
            let prod = chars.iter().fold(Complex64::new(1.0, 0.0), |acc, c| acc * central_profile(ring, c, t));
            prod.re * density(ring, t)
        })
    });
    Ok(NormResult { value: r.value, semantics: Semantics::QuadratureEstimate, error_estimate: r.error, detail: Default::default() }
        .with("nodes", r.nodes as f64))
}
