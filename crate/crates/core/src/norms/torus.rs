//! `L^p` norms on the torus `𝕋^d` and on rational rotation algebras `𝕋²_{r/q}`.
//!
//! Lattice elements are trigonometric polynomials integrated with the trapezoid rule.
//! For `θ = r/q` the algebra is represented fiberwise by `U_1 ↦ z_1 C`, `U_2 ↦ z_2 S`
//! with the clock `C = diag(ω^j)`, `ω = e^{2πi r/q}`, and the shift `S e_j = e_{j−1}`,
//! so that `S C = ω C S`. The monomial of `m = (m_1, m_2)` is `U_1^{m_1} U_2^{m_2}`.
//! Conjugation by `S` and `C` moves the fiber over `z` to the fibers over `(ωz_1, z_2)`
//! and `(z_1, ωz_2)`, so the trace is integrated over the fundamental cell
//! `[0, 2π/q)²` only.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::quadrature::{golden_max, refine};
use super::{at_unit_scale, check_p, NormResult, QuadratureConfig, Semantics};
use crate::elements::Element;
use crate::error::{domain, Error, Result};
use crate::fusion::RingKind;

struct Terms {
    dim: usize,
    exps: Vec<Vec<i64>>,
    coeffs: Vec<Complex64>,
}

impl Terms {
    fn from_element(e: &Element, dim: usize) -> Result<Self> {
        let Some(pts) = e.point_coeffs() else {
            return domain("torus norms need point coefficients");
        };
        let mut exps = Vec::with_capacity(pts.len());
        let mut coeffs = Vec::with_capacity(pts.len());
        for (l, z) in pts {
            match l {
                crate::fusion::IrrLabel::Vector(v) if v.len() == dim => exps.push(v.clone()),
                _ => return domain(format!("label {l} is not a vector in Z^{dim}")),
            }
            coeffs.push(*z);
        }
        Ok(Terms { dim, exps, coeffs })
    }

    fn max_degree(&self) -> usize {
        self.exps.iter().flat_map(|m| m.iter().map(|x| x.unsigned_abs() as usize)).max().unwrap_or(0)
    }

    fn eval(&self, theta: &[f64]) -> Complex64 {
        self.exps
            .iter()
            .zip(&self.coeffs)
            .map(|(m, c)| {
                let phase: f64 = m.iter().zip(theta).map(|(&k, t)| k as f64 * t).sum();
                c * Complex64::from_polar(1.0, phase)
            })
            .sum()
    }
}

/// Mean of `g` over the grid `θ_a = cell · j_a / n`, `j_a = 0 … n−1`, in `dim` variables.
fn grid_mean(dim: usize, n: usize, cell: f64, g: &(impl Fn(&[f64]) -> f64 + Sync)) -> f64 {
    let h = cell / n as f64;
    if dim == 1 {
        return (0..n).map(|j| g(&[j as f64 * h])).sum::<f64>() / n as f64;
    }
    let rest = n.pow(dim as u32 - 1);
    let rows: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|j0| {
            let mut theta = vec![0.0; dim];
            theta[0] = j0 as f64 * h;
            let mut s = 0.0;
            for idx in 0..rest {
                let mut r = idx;
                for a in 1..dim {
                    theta[a] = (r % n) as f64 * h;
                    r /= n;
                }
                s += g(&theta);
            }
            s
        })
        .collect();
    rows.iter().sum::<f64>() / (n as f64).powi(dim as i32)
}

/// Max of `g` over a grid followed by coordinate-wise golden-section refinement.
fn grid_max(dim: usize, n: usize, cell: f64, g: &(impl Fn(&[f64]) -> f64 + Sync)) -> (f64, f64) {
    let h = cell / n as f64;
    let total = n.pow(dim as u32);
    let (mut best, mut arg) = (f64::NEG_INFINITY, vec![0.0; dim]);
    let mut theta = vec![0.0; dim];
    for idx in 0..total {
        let mut r = idx;
        for t in theta.iter_mut() {
            *t = (r % n) as f64 * h;
            r /= n;
        }
        let v = g(&theta);
        if v > best {
            best = v;
            arg.clone_from(&theta);
        }
    }
    let grid_best = best;
    for _ in 0..3 {
        for a in 0..dim {
            let mut probe = arg.clone();
            let (x, v) = golden_max(arg[a] - h, arg[a] + h, |x| {
                probe[a] = x;
                g(&probe)
            });
            if v > best {
                best = v;
                arg[a] = x;
            }
        }
    }
    (best, grid_best)
}

/// Per-axis node count for a `dim`-dimensional trapezoid rule.
fn axis_nodes(dim: usize, base: usize, degree: usize) -> Result<usize> {
    let scaled = match dim {
        1 => base,
        2 => base / 16,
        3 => base / 64,
        _ => return Err(Error::Resource(format!("torus quadrature is limited to d ≤ 3, got d = {dim}"))),
    };
    Ok(scaled.max(8).max((4 * (degree + 1)).next_power_of_two()))
}

fn sup_axis_nodes(dim: usize, sup_grid: usize, degree: usize) -> Result<usize> {
    let scaled = match dim {
        1 => sup_grid,
        2 => sup_grid / 32,
        3 => sup_grid / 256,
        _ => return Err(Error::Resource(format!("torus sup norms are limited to d ≤ 3, got d = {dim}"))),
    };
    Ok(scaled.max(8).max((16 * (degree + 1)).next_power_of_two()))
}

fn lattice_core(t: &Terms, p: f64, q: &QuadratureConfig) -> Result<NormResult> {
    check_p(p)?;
    q.validate()?;
    if t.coeffs.is_empty() {
        return Ok(NormResult::exact(0.0));
    }
    let deg = t.max_degree();
    if p.is_infinite() {
        let n = sup_axis_nodes(t.dim, q.sup_grid, deg)?;
        let (value, grid) = grid_max(t.dim, n, 2.0 * PI, &|th: &[f64]| t.eval(th).norm());
        return Ok(NormResult {
            value,
            semantics: Semantics::QuadratureEstimate,
            error_estimate: value - grid,
            detail: Default::default(),
        }
        .with("sup_grid", n as f64));
    }
    let n0 = axis_nodes(t.dim, q.node_count, deg)?;
    let r = refine(n0, q.refinement_rounds, |n| {
        grid_mean(t.dim, n, 2.0 * PI, &|th: &[f64]| t.eval(th).norm().powf(p)).powf(1.0 / p)
    });
    Ok(NormResult { value: r.value, semantics: Semantics::QuadratureEstimate, error_estimate: r.error, detail: Default::default() }
        .with("axis_nodes", r.nodes as f64)
        .with("refinement_rounds", r.rounds as f64))
}

/// `‖Σ f(m) e^{i m·θ}‖_{L^p(𝕋^d)}` for normalized Haar measure.
pub fn lattice_lp_norm(e: &Element, p: f64, q: &QuadratureConfig) -> Result<NormResult> {
    let RingKind::Lattice(d) = e.ring().kind() else {
        return domain(format!("lattice_lp_norm needs a lattice ring, got {}", e.ring()));
    };
    at_unit_scale(e, |e| lattice_core(&Terms::from_element(e, d as usize)?, p, q))
}

/// Fiber operator `Σ f(m) z_1^{m_1} z_2^{m_2} C^{m_1} S^{m_2}`.
fn fiber(t: &Terms, omega_pows: &[Complex64], z: &[f64]) -> DMatrix<Complex64> {
    let q = omega_pows.len() as i64;
    let mut a = DMatrix::zeros(q as usize, q as usize);
    for (m, c) in t.exps.iter().zip(&t.coeffs) {
        let zc = c * Complex64::from_polar(1.0, m[0] as f64 * z[0] + m[1] as f64 * z[1]);
        // (C^{m_1} S^{m_2}) e_j = ω^{m_1 (j − m_2)} e_{j − m_2}.
        for j in 0..q {
            let row = (j - m[1]).rem_euclid(q);
            let phase = (m[0] * row).rem_euclid(q) as usize;
            a[(row as usize, j as usize)] += zc * omega_pows[phase];
        }
    }
    a
}

/// `(∫_{𝕋²} (1/q) tr |π_z(f)|^p dz)^{1/p}` for `θ = r/q`; `q = 1` is the classical torus.
pub fn qtorus_lp_norm(e: &Element, p: f64, qc: &QuadratureConfig) -> Result<NormResult> {
    let RingKind::QTorus { num, den } = e.ring().kind() else {
        return domain(format!("qtorus_lp_norm needs a rotation algebra, got {}", e.ring()));
    };
    at_unit_scale(e, |e| qtorus_core(e, num, den, p, qc))
}

fn qtorus_core(e: &Element, num: u64, den: u64, p: f64, qc: &QuadratureConfig) -> Result<NormResult> {
    let t = Terms::from_element(e, 2)?;
    if den == 1 {
        return lattice_core(&t, p, qc);
    }
    check_p(p)?;
    qc.validate()?;
    if t.coeffs.is_empty() {
        return Ok(NormResult::exact(0.0));
    }
    let q = den as usize;
    let omega_pows: Vec<Complex64> =
        (0..q).map(|j| Complex64::from_polar(1.0, 2.0 * PI * (num as f64) * j as f64 / q as f64)).collect();
    let cell = 2.0 * PI / q as f64;
    let deg = t.max_degree();
    if p.is_infinite() {
        let n = sup_axis_nodes(2, qc.sup_grid, deg)?;
        let (value, grid) = grid_max(2, n, cell, &|z: &[f64]| {
            let s = fiber(&t, &omega_pows, z).singular_values();
            s.iter().copied().fold(0.0, f64::max)
        });
        return Ok(NormResult { value, semantics: Semantics::QuadratureEstimate, error_estimate: value - grid, detail: Default::default() }
            .with("sup_grid", n as f64));
    }
    let n0 = axis_nodes(2, qc.node_count, deg)?;
    let r = refine(n0, qc.refinement_rounds, |n| {
        let mean = grid_mean(2, n, cell, &|z: &[f64]| {
            let a = fiber(&t, &omega_pows, z);
            if p == 2.0 {
                a.iter().map(|x| x.norm_sqr()).sum::<f64>()
            } else {
                a.singular_values().iter().map(|s| s.powf(p)).sum::<f64>()
            }
        });
        (mean / q as f64).powf(1.0 / p)
    });
    Ok(NormResult { value: r.value, semantics: Semantics::QuadratureEstimate, error_estimate: r.error, detail: Default::default() }
        .with("axis_nodes", r.nodes as f64)
        .with("refinement_rounds", r.rounds as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{IrrLabel, RingId};

    fn v(a: &[i64]) -> IrrLabel {
        IrrLabel::Vector(a.to_vec())
    }

    fn one(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn cosine_norms() {
        let z1 = RingId::lattice(1).unwrap();
        let e = Element::points(z1, [(v(&[1]), one(1.0)), (v(&[-1]), one(1.0))]).unwrap();
        let q = QuadratureConfig::default();
        assert!((lattice_lp_norm(&e, 2.0, &q).unwrap().value - 2f64.sqrt()).abs() < 1e-13);
        assert!((lattice_lp_norm(&e, 4.0, &q).unwrap().value - 6f64.powf(0.25)).abs() < 1e-13);
        assert!((lattice_lp_norm(&e, f64::INFINITY, &q).unwrap().value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn lattice_delta() {
        let z2 = RingId::lattice(2).unwrap();
        let e = Element::one(z2);
        for p in [1.0, 1.5, 3.0] {
            assert!((lattice_lp_norm(&e, p, &QuadratureConfig::default()).unwrap().value - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn clock_and_shift_commutation() {
        let t = Terms { dim: 2, exps: vec![vec![1, 0]], coeffs: vec![one(1.0)] };
        let q = 3;
        let w: Vec<Complex64> = (0..q).map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / q as f64)).collect();
        let c = fiber(&t, &w, &[0.0, 0.0]);
        let t2 = Terms { dim: 2, exps: vec![vec![0, 1]], coeffs: vec![one(1.0)] };
        let s = fiber(&t2, &w, &[0.0, 0.0]);
        let lhs = &s * &c;
        let rhs = (&c * &s) * w[1];
        assert!((lhs - rhs).norm() < 1e-14);
    }

    #[test]
    fn qtorus_monomials_are_unitary() {
        let r = RingId::qtorus(1, 3).unwrap();
        let q = QuadratureConfig::default();
        let e = Element::points(r, [(v(&[1, 0]), one(1.0))]).unwrap();
        for p in [1.0, 1.5, 3.0, f64::INFINITY] {
            assert!((qtorus_lp_norm(&e, p, &q).unwrap().value - 1.0).abs() < 1e-12);
        }
        let e = Element::points(r, [(v(&[1, 0]), one(1.0)), (v(&[0, 1]), one(1.0))]).unwrap();
        assert!((qtorus_lp_norm(&e, 2.0, &q).unwrap().value - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn rational_zero_delegates_to_lattice() {
        let r = RingId::qtorus(0, 1).unwrap();
        let z2 = RingId::lattice(2).unwrap();
        let terms = [(v(&[1, 2]), Complex64::new(0.3, -1.0)), (v(&[-1, 0]), one(2.0)), (v(&[0, 0]), one(0.5))];
        let a = Element::points(r, terms.clone()).unwrap();
        let b = Element::points(z2, terms).unwrap();
        for p in [1.0, 1.5, f64::INFINITY] {
            let q = QuadratureConfig::default();
            assert_eq!(qtorus_lp_norm(&a, p, &q).unwrap().value, lattice_lp_norm(&b, p, &q).unwrap().value);
        }
    }
}
