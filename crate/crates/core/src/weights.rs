//! Decay weights `w_{r,s}(k) = 1/(r^k (1+k)^s)`, Paley admissibility constants and
//! partial-sum probes.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::fusion::{big_ln, growth_profile, lattice_sphere_count, RingId, RingKind};
use crate::report::fmt_float;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSpec {
    pub r: f64,
    pub s: f64,
}

impl WeightSpec {
    pub fn new(r: f64, s: f64) -> Result<Self> {
        if !(r >= 1.0 && r.is_finite()) {
            return domain(format!("weight base r = {r} must be a finite number ≥ 1"));
        }
        if !s.is_finite() {
            return domain(format!("weight exponent s = {s} must be finite"));
        }
        Ok(WeightSpec { r, s })
    }

    /// `ln w(k)`, finite for every `k`.
    pub fn ln_eval(&self, k: usize) -> f64 {
        -(k as f64) * self.r.ln() - self.s * (1.0 + k as f64).ln()
    }

    /// Parses `r=…,s=…` (either order; `r` defaults to 1).
    pub fn parse(text: &str) -> Result<Self> {
        let (mut r, mut s) = (1.0, None);
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let Some((key, value)) = part.split_once('=') else {
                return domain(format!("weight component {part:?} is not key=value"));
            };
            let v: f64 = value.trim().parse().or_else(|_| domain(format!("weight value {value:?} is not a number")))?;
            match key.trim() {
                "r" => r = v,
                "s" => s = Some(v),
                other => return domain(format!("unknown weight key {other:?}")),
            }
        }
        let Some(s) = s else { return domain("weight needs s=…") };
        WeightSpec::new(r, s)
    }
}

impl std::fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "r={},s={}", self.r, self.s)
    }
}

/// `w_{r,s}(k) = (1+k)^{−s} r^{−k}`; underflows to 0 only for astronomically small weights.
pub fn eval_weight(w: &WeightSpec, k: usize) -> f64 {
    (1.0 + k as f64).powf(-w.s) * w.r.powf(-(k as f64))
}

/// Relative growth of the running maximum between `K/2` and `K` below which a scan
/// counts as stabilized.
pub const STABILIZATION_TOLERANCE: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constant {
    Finite(f64),
    Divergent,
}

impl Constant {
    pub fn finite(&self) -> Option<f64> {
        match self {
            Constant::Finite(x) => Some(*x),
            Constant::Divergent => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub constant: Constant,
    /// Largest scan value at truncation `K` (reported even when divergent).
    pub scan_max: f64,
    /// Level whose weight value attains `scan_max`.
    pub attained_at: usize,
    pub truncation: usize,
    pub stabilized: bool,
}

/// One point of a scan: the value `t · Σ_{w ≥ t} mass` at `t = w(k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub k: usize,
    pub weight: f64,
    pub mass: f64,
    pub value: f64,
}

/// Scan in the log domain: for each level `k`, `ln w(k) + ln Σ_{j: w(j) ≥ w(k)} m_j`.
fn log_scan(ln_w: &[f64], ln_mass: &[f64]) -> Vec<(f64, f64)> {
    let mut order: Vec<usize> = (0..ln_w.len()).collect();
    order.sort_by(|&a, &b| ln_w[b].total_cmp(&ln_w[a]).then(a.cmp(&b)));
    let mut out = vec![(0.0, 0.0); ln_w.len()];
    let mut acc = f64::NEG_INFINITY;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j < order.len() && ln_w[order[j]] == ln_w[order[i]] {
            acc = log_add(acc, ln_mass[order[j]]);
            j += 1;
        }
        for &k in &order[i..j] {
            out[k] = (acc, ln_w[k] + acc);
        }
        i = j;
    }
    out
}

fn log_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

fn argmax(values: &[f64]) -> (usize, f64) {
    values.iter().copied().enumerate().fold((0, f64::NEG_INFINITY), |acc, (k, v)| if v > acc.1 { (k, v) } else { acc })
}

fn is_nonincreasing(w: &WeightSpec) -> bool {
    w.s >= 0.0
}

/// `t · Σ_{w(α) ≥ t} n_α²` at every attained weight value `t = w(k)`, `k ≤ K`.
///
/// For nonincreasing weights this is `w(k) · b_k`, evaluated directly in floating point
/// when `b_k` fits; otherwise levels are ordered by weight and masses accumulated.
pub fn paley_trace(ring: &RingId, w: &WeightSpec, k_max: usize) -> Result<Vec<ScanPoint>> {
    let g = growth_profile(ring, k_max)?;
    if is_nonincreasing(w) {
        return Ok(g
            .balls
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let weight = eval_weight(w, k);
                let mass = b.to_f64().unwrap_or(f64::INFINITY);
                let value = if mass.is_finite() && weight > 0.0 {
                    weight * mass
                } else {
                    (w.ln_eval(k) + big_ln(b)).exp()
                };
                ScanPoint { k, weight, mass, value }
            })
            .collect());
    }
    let ln_w: Vec<f64> = (0..=k_max).map(|k| w.ln_eval(k)).collect();
    let ln_m: Vec<f64> = g.spheres.iter().map(big_ln).collect();
    Ok(log_scan(&ln_w, &ln_m)
        .into_iter()
        .enumerate()
        .map(|(k, (lm, lv))| ScanPoint { k, weight: eval_weight(w, k), mass: lm.exp(), value: lv.exp() })
        .collect())
}

fn report_from(values_full: &[f64], values_half_max: f64, k_max: usize) -> AdmissibilityReport {
    let (attained_at, scan_max) = argmax(values_full);
    let stabilized = scan_max.is_finite()
        && values_half_max.is_finite()
        && scan_max <= values_half_max * (1.0 + STABILIZATION_TOLERANCE);
    AdmissibilityReport {
        constant: if stabilized { Constant::Finite(scan_max) } else { Constant::Divergent },
        scan_max,
        attained_at,
        truncation: k_max,
        stabilized,
    }
}

/// Paley admissibility constant `C_w = sup_t t · Σ_{w(α) ≥ t} n_α²`, scanned up to level `K`.
///
/// The scan counts as stabilized when the maximum at truncation `K` exceeds the maximum at
/// truncation `⌊K/2⌋` by at most [`STABILIZATION_TOLERANCE`]; otherwise it is reported divergent.
pub fn paley_constant(ring: &RingId, w: &WeightSpec, k_max: usize) -> Result<AdmissibilityReport> {
    let full: Vec<f64> = paley_trace(ring, w, k_max)?.iter().map(|p| p.value).collect();
    let half: Vec<f64> = paley_trace(ring, w, k_max / 2)?.iter().map(|p| p.value).collect();
    Ok(report_from(&full, argmax(&half).1, k_max))
}

/// Scan for the rapid-decay form: `y · Σ_{j: w̃(j) ≥ y} (1+j)^{2β}` at `y = w̃(k)`,
/// `w̃(j) = w(j)/(1+j)^β`.
pub fn paley_rd_trace(w: &WeightSpec, beta: f64, k_max: usize) -> Result<Vec<ScanPoint>> {
    if !(beta > 0.0 && beta.is_finite()) {
        return domain(format!("RD exponent β = {beta} must be positive"));
    }
    let ln_w: Vec<f64> = (0..=k_max).map(|k| w.ln_eval(k) - beta * (1.0 + k as f64).ln()).collect();
    let ln_m: Vec<f64> = (0..=k_max).map(|k| 2.0 * beta * (1.0 + k as f64).ln()).collect();
    Ok(log_scan(&ln_w, &ln_m)
        .into_iter()
        .enumerate()
        .map(|(k, (lm, lv))| ScanPoint { k, weight: ln_w[k].exp(), mass: lm.exp(), value: lv.exp() })
        .collect())
}

pub fn paley_constant_rd(w: &WeightSpec, beta: f64, k_max: usize) -> Result<AdmissibilityReport> {
    let full: Vec<f64> = paley_rd_trace(w, beta, k_max)?.iter().map(|p| p.value).collect();
    let half: Vec<f64> = paley_rd_trace(w, beta, k_max / 2)?.iter().map(|p| p.value).collect();
    Ok(report_from(&full, argmax(&half).1, k_max))
}

/// CSV rows `k,weight,mass,value` for plotting a scan.
pub fn trace_csv(trace: &[ScanPoint]) -> String {
    let mut out = String::from("k,weight,mass,value\n");
    for p in trace {
        out.push_str(&format!("{},{},{},{}\n", p.k, fmt_float(p.weight), fmt_float(p.mass), fmt_float(p.value)));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Converged,
    Diverging,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaReport {
    /// `S_k = Σ_{|m|₁ ≤ k} (1+|m|₁)^{−s}` for `k = 0 … K`.
    pub partial_sums: Vec<f64>,
    /// `S_{K/10} − S_{K/100}`.
    pub previous_decade: f64,
    /// `S_K − S_{K/10}`.
    pub last_decade: f64,
    pub verdict: Verdict,
}

/// Partial sums of `Σ_m (1+|m|₁)^{−s}` over a lattice with a convergence verdict.
///
/// The verdict compares the last two decade increments: `Converged` when the last one is
/// at most half the previous one (or below `10⁻⁶` of the total), `Diverging` when it is at
/// least 90% of it, `Inconclusive` otherwise or when `K < 100`.
pub fn zeta_probe(ring: &RingId, s: f64, k_max: usize) -> Result<ZetaReport> {
    let d = match ring.kind() {
        RingKind::Lattice(d) => d as usize,
        _ => return domain(format!("zeta_probe needs a lattice ring, got {ring}")),
    };
    if !s.is_finite() {
        return domain("s must be finite");
    }
    let mut partial_sums = Vec::with_capacity(k_max + 1);
    let mut acc = 0.0;
    for k in 0..=k_max {
        let count = lattice_sphere_count(d, k);
        let term = if count.is_zero() { 0.0 } else { (big_ln(&count) - s * (1.0 + k as f64).ln()).exp() };
        acc += term;
        partial_sums.push(acc);
    }
    let (previous_decade, last_decade, verdict) = if k_max >= 100 {
        let a = partial_sums[k_max / 100];
        let b = partial_sums[k_max / 10];
        let c = partial_sums[k_max];
        let (d0, d1) = (b - a, c - b);
        let verdict = if d1 <= 1e-6 * c || d1 <= 0.5 * d0 {
            Verdict::Converged
        } else if d1 >= 0.9 * d0 {
            Verdict::Diverging
        } else {
            Verdict::Inconclusive
        };
        (d0, d1, verdict)
    } else {
        (f64::NAN, f64::NAN, Verdict::Inconclusive)
    };
    Ok(ZetaReport { partial_sums, previous_decade, last_decade, verdict })
}

/// Exact `b_k` as used by [`paley_trace`], for independent checks.
pub fn ball_masses(ring: &RingId, k_max: usize) -> Result<Vec<BigUint>> {
    Ok(growth_profile(ring, k_max)?.balls)
}
