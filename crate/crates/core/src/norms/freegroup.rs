//! Lower bounds for `‖λ(f)‖` on the free group.
//!
//! The left convolution operator `T v = f * v` is restricted to vectors supported in the
//! ball `B_R` (its image is unrestricted). Then `‖T‖ ≤ ‖λ(f)‖`, and every Rayleigh
//! quotient `‖T v‖ / ‖v‖` is a certified lower bound. Power iteration on `T*T` drives
//! the quotient towards `‖T‖`; the quotient is nondecreasing along the iteration.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{NormResult, Semantics};
use crate::elements::Element;
use crate::error::{domain, Error, Result};
use crate::fusion::{IrrLabel, RingKind};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpnormOptions {
    /// Radius of the domain ball.
    pub radius: usize,
    /// Cap on `|B_R| · |supp f|`; the radius is lowered until the operator fits.
    pub max_entries: usize,
    pub max_iter: usize,
    /// Relative change of the eigenvalue estimate at which iteration stops.
    pub tolerance: f64,
}

impl Default for OpnormOptions {
    fn default() -> Self {
        OpnormOptions { radius: 12, max_entries: 1 << 23, max_iter: 10_000, tolerance: 1e-10 }
    }
}

impl OpnormOptions {
    pub fn with_radius(radius: usize) -> Self {
        OpnormOptions { radius, ..Self::default() }
    }
}

/// `|B_R|` in `𝔽_N`.
pub fn ball_size(n: u32, r: usize) -> u128 {
    let mut total: u128 = 1;
    let mut sphere: u128 = 2 * n as u128;
    for _ in 1..=r {
        total = total.saturating_add(sphere);
        sphere = sphere.saturating_mul(2 * n as u128 - 1);
    }
    total
}

fn letter_digit(l: i16, n: u32) -> u128 {
    if l > 0 {
        l as u128
    } else {
        n as u128 + (-l) as u128
    }
}

/// Key of the reduced word `g · x`, ordered lexicographically on the reversed word with
/// prefixes first. Domain words are enumerated in the same order, so products that only
/// touch the front of `x` land on nearby indices.
fn product_key(g: &[i16], x: &[i16], n: u32, width: usize) -> u128 {
    let mut c = 0;
    while c < g.len() && c < x.len() && g[g.len() - 1 - c] == -x[c] {
        c += 1;
    }
    let base = 2 * n as u128 + 1;
    let mut key: u128 = 0;
    let mut len = 0;
    for &l in x[c..].iter().rev().chain(g[..g.len() - c].iter().rev()) {
        key = key * base + letter_digit(l, n);
        len += 1;
    }
    for _ in len..width {
        key *= base;
    }
    key
}

/// Calls `visit` on the reversal of every reduced word of length `≤ r`, enumerating
/// words depth-first (so the visited words are sorted by their last letters).
fn for_each_ball_word(n: u32, r: usize, mut visit: impl FnMut(&[i16])) {
    fn rec(n: i16, r: usize, w: &mut Vec<i16>, x: &mut Vec<i16>, visit: &mut impl FnMut(&[i16])) {
        x.clear();
        x.extend(w.iter().rev());
        visit(x);
        if w.len() == r {
            return;
        }
        // Letters in key-digit order: g_1 … g_N, then their inverses.
        for l in (1..=n).chain((1..=n).map(|i| -i)) {
            if w.last() != Some(&-l) {
                w.push(l);
                rec(n, r, w, x, visit);
                w.pop();
            }
        }
    }
    rec(n as i16, r, &mut Vec::with_capacity(r), &mut Vec::with_capacity(r), &mut visit);
}

trait Scalar: Copy + Send + Sync + std::ops::Mul<Output = Self> + std::ops::AddAssign + std::iter::Sum {
    fn zero() -> Self;
    fn conj(self) -> Self;
    fn norm_sqr(self) -> f64;
    fn scale(self, s: f64) -> Self;
    fn from_complex(z: Complex64) -> Self;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn conj(self) -> Self {
        self
    }
    fn norm_sqr(self) -> f64 {
        self * self
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn from_complex(z: Complex64) -> Self {
        z.re
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn from_complex(z: Complex64) -> Self {
        z
    }
}

/// The restricted convolution operator in gather/scatter form.
struct BallOperator {
    /// `out[i * s + j]` is the output index of `g_j · x_i`.
    out: Vec<u32>,
    domain: usize,
    range: usize,
}

impl BallOperator {
    fn build(n: u32, support: &[(Vec<i16>, Complex64)], r: usize) -> Result<Self> {
        let s = support.len();
        let width = support.iter().map(|(g, _)| g.len()).max().unwrap_or(0) + r;
        let bits = ((2 * n + 1) as f64).log2() * width as f64;
        if bits >= 127.0 {
            return Err(Error::Resource(format!("words of length {width} over {n} generators exceed the key width")));
        }
        let dom = ball_size(n, r) as usize;
        let mut keyed: Vec<(u128, u32)> = Vec::with_capacity(dom * s);
        let mut i = 0u32;
        for_each_ball_word(n, r, |x| {
            for (j, (g, _)) in support.iter().enumerate() {
                keyed.push((product_key(g, x, n, width), i * s as u32 + j as u32));
            }
            i += 1;
        });
        keyed.sort_unstable();
        let mut out = vec![0u32; keyed.len()];
        let mut range = 0u32;
        let mut prev = None;
        for (key, slot) in keyed {
            if prev.is_some() && prev != Some(key) {
                range += 1;
            }
            prev = Some(key);
            out[slot as usize] = range;
        }
        let range = if prev.is_some() { range as usize + 1 } else { 0 };
        Ok(BallOperator { out, domain: dom, range })
    }

    fn apply<T: Scalar>(&self, coeffs: &[T], v: &[T], y: &mut [T]) {
        y.iter_mut().for_each(|z| *z = T::zero());
        let s = coeffs.len();
        for (row, vi) in self.out.chunks_exact(s).zip(v) {
            for (o, c) in row.iter().zip(coeffs) {
                y[*o as usize] += *c * *vi;
            }
        }
    }

    fn apply_adjoint<T: Scalar>(&self, coeffs: &[T], y: &[T], w: &mut [T]) {
        let s = coeffs.len();
        for (row, wi) in self.out.chunks_exact(s).zip(w.iter_mut()) {
            *wi = row.iter().zip(coeffs).map(|(o, c)| c.conj() * y[*o as usize]).sum();
        }
    }

    /// Power iteration on `T*T`; returns `(λ, last change, iterations, converged)`.
    fn power_iteration<T: Scalar>(&self, coeffs: &[T], max_iter: usize, tol: f64) -> (f64, f64, usize, bool) {
        let start = T::from_complex(Complex64::new(1.0 / (self.domain as f64).sqrt(), 0.0));
        let mut v = vec![start; self.domain];
        let mut y = vec![T::zero(); self.range];
        let mut lambda = 0.0f64;
        let mut change = f64::INFINITY;
        for it in 1..=max_iter {
            self.apply(coeffs, &v, &mut y);
            // Rayleigh quotient with the actual norm of v, which the flush below perturbs.
            let next = (norm(&y) / norm(&v)).powi(2);
            change = (next - lambda).abs();
            let done = change <= tol * next;
            lambda = lambda.max(next);
            if done {
                return (lambda, change, it, true);
            }
            self.apply_adjoint(coeffs, &y, &mut v);
            let nv = norm(&v);
            if nv == 0.0 {
                return (lambda, 0.0, it, true);
            }
            // Entries below 1e-150 are flushed to zero to stay clear of subnormal arithmetic.
            v.iter_mut().for_each(|z| {
                *z = if z.norm_sqr() < 1e-300 { T::zero() } else { z.scale(1.0 / nv) }
            });
        }
        (lambda, change, max_iter, false)
    }
}

fn norm<T: Scalar>(v: &[T]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest radius `≤ requested` whose operator fits in `max_entries`.
pub fn effective_radius(n: u32, support_size: usize, requested: usize, max_entries: usize) -> Option<usize> {
    (0..=requested).rev().find(|&r| ball_size(n, r).saturating_mul(support_size as u128) <= max_entries as u128)
}

/// Certified lower bound for `‖λ(f)‖` from the ball of radius `opts.radius`.
///
/// If the radius does not fit the entry budget it is lowered; the radius actually used is
/// reported as `effective_radius`. Failure to converge yields
/// [`Error::NonConvergence`] whose `partial` value is still a valid lower bound.
pub fn freegroup_opnorm_lower(e: &Element, opts: &OpnormOptions) -> Result<NormResult> {
    let RingKind::FreeGroup(n) = e.ring().kind() else {
        return domain(format!("operator norms are computed on free groups, got {}", e.ring()));
    };
    let pts = e.point_coeffs().expect("free group elements carry points");
    if pts.is_empty() {
        return Ok(NormResult::exact(0.0).with("effective_radius", 0.0));
    }
    let support: Vec<(Vec<i16>, Complex64)> = pts
        .iter()
        .map(|(l, c)| match l {
            IrrLabel::Word(w) => (w.letters().to_vec(), *c),
            _ => unreachable!("validated labels"),
        })
        .collect();
    let r = effective_radius(n, support.len(), opts.radius, opts.max_entries).ok_or_else(|| {
        Error::Resource(format!("support of size {} exceeds the entry budget {}", support.len(), opts.max_entries))
    })?;
    let op = BallOperator::build(n, &support, r)?;
    let (lambda, last_change, iterations, converged) = if support.iter().all(|(_, c)| c.im == 0.0) {
        let coeffs: Vec<f64> = support.iter().map(|(_, c)| c.re).collect();
        op.power_iteration(&coeffs, opts.max_iter, opts.tolerance)
    } else {
        let coeffs: Vec<Complex64> = support.iter().map(|(_, c)| *c).collect();
        op.power_iteration(&coeffs, opts.max_iter, opts.tolerance)
    };
    let value = lambda.sqrt();
    if !converged {
        return Err(Error::NonConvergence { partial: value, iterations });
    }
    Ok(NormResult {
        value,
        semantics: Semantics::LowerBound,
        error_estimate: (lambda.sqrt() - (lambda - last_change).max(0.0).sqrt()).abs(),
        detail: Default::default(),
    }
    .with("requested_radius", opts.radius as f64)
    .with("effective_radius", r as f64)
    .with("iterations", iterations as f64)
    .with("domain_size", op.domain as f64))
}

/// Upper bound for `‖λ(f)‖` from the coefficients alone.
///
/// The minimum of `‖f‖_1`, the Haagerup bound `Σ_k (k+1)‖p_k f‖_2` and, when the support
/// lies in the positive monoid, the strong bound `Σ_k √e √(k+1) ‖p_k f‖_2`.
pub fn freegroup_sup_upper(e: &Element) -> Result<f64> {
    let RingKind::FreeGroup(_) = e.ring().kind() else {
        return domain(format!("expected a free group element, got {}", e.ring()));
    };
    let pts = e.point_coeffs().expect("free group elements carry points");
    let mut spheres = vec![0.0f64; e.max_length() + 1];
    let mut positive = true;
    let mut l1 = 0.0;
    for (l, z) in pts {
        let IrrLabel::Word(w) = l else { unreachable!("validated labels") };
        positive &= w.is_positive();
        spheres[w.len()] += z.norm_sqr();
        l1 += z.norm();
    }
    let haagerup: f64 = spheres.iter().enumerate().map(|(k, s)| (k as f64 + 1.0) * s.sqrt()).sum();
    let mut best = l1.min(haagerup);
    if positive {
        let e_half = 0.5f64.exp();
        let strong: f64 = spheres.iter().enumerate().map(|(k, s)| e_half * (k as f64 + 1.0).sqrt() * s.sqrt()).sum();
        best = best.min(strong);
    }
    Ok(best)
}

/// Lower bound `‖f‖_2^{2/p} U^{1−2/p} ≤ ‖λ(f)‖_p` for `1 ≤ p ≤ 2`, with `U` from
/// [`freegroup_sup_upper`]. It follows from `‖x‖_2 ≤ ‖x‖_p^{p/2} ‖x‖_∞^{1−p/2}`.
pub fn freegroup_lp_lower(e: &Element, p: f64) -> Result<NormResult> {
    if !(1.0..=2.0).contains(&p) {
        return domain(format!("the free group L^p lower bound needs 1 ≤ p ≤ 2, got {p}"));
    }
    let l2 = super::l2_norm(e).value;
    if l2 == 0.0 {
        return Ok(NormResult::exact(0.0));
    }
    if p == 2.0 {
        return Ok(NormResult::exact(l2));
    }
    let u = freegroup_sup_upper(e)?;
    let value = (2.0 / p * l2.ln() + (1.0 - 2.0 / p) * u.ln()).exp();
    Ok(NormResult { value, semantics: Semantics::LowerBound, error_estimate: 0.0, detail: Default::default() }
        .with("sup_upper", u))
}
