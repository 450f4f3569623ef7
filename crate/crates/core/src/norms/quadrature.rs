//! Composite Gauss–Legendre rules and the doubling refinement driver.

use std::sync::OnceLock;

use gauss_quad::GaussLegendre;

use super::QUADRATURE_TOLERANCE;

/// Points per Gauss–Legendre panel.
pub(crate) const PANEL_POINTS: usize = 16;

fn reference_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let mut v = GaussLegendre::new(PANEL_POINTS).expect("valid degree").into_node_weight_pairs();
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        v
    })
}

/// `∫_a^b g` over `nodes / 16` equal panels.
pub(crate) fn composite_gl(a: f64, b: f64, nodes: usize, mut g: impl FnMut(f64) -> f64) -> f64 {
    let panels = (nodes / PANEL_POINTS).max(1);
    let h = (b - a) / panels as f64;
    let rule = reference_rule();
    let mut total = 0.0;
    for i in 0..panels {
        let mid = a + (i as f64 + 0.5) * h;
        let mut s = 0.0;
        for &(x, w) in rule {
            s += w * g(mid + 0.5 * h * x);
        }
        total += 0.5 * h * s;
    }
    total
}

pub(crate) struct Refined {
    pub value: f64,
    pub error: f64,
    pub nodes: usize,
    pub rounds: usize,
}

/// Evaluates `eval(n)` at `n = base, 2·base, …` until two consecutive values differ by
/// less than the tolerance or `rounds` doublings are spent.
pub(crate) fn refine(base: usize, rounds: usize, mut eval: impl FnMut(usize) -> f64) -> Refined {
    let mut n = base;
    let mut prev = eval(n);
    let mut error = f64::INFINITY;
    let mut used = 0;
    for _ in 0..rounds {
        n *= 2;
        let next = eval(n);
        error = (next - prev).abs();
        prev = next;
        used += 1;
        if error < QUADRATURE_TOLERANCE {
            break;
        }
    }
    Refined { value: prev, error, nodes: n, rounds: used }
}

/// Maximizes `g` near `x0` on `[lo, hi]` by golden-section search; returns `(x, g(x))`.
pub(crate) fn golden_max(lo: f64, hi: f64, mut g: impl FnMut(f64) -> f64) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - phi * (b - a);
    let mut d = a + phi * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..80 {
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + phi * (b - a);
            gd = g(d);
        }
        if (b - a).abs() < 1e-15 * (1.0 + a.abs()) {
            break;
        }
    }
    let mut best = (c, gc);
    for x in [a, b, d] {
        let v = g(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    if gd > best.1 {
        best = (d, gd);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let v = composite_gl(0.0, 2.0, 32, |x| x.powi(7));
        assert!((v - 2f64.powi(8) / 8.0).abs() < 1e-12);
        let v = composite_gl(0.0, std::f64::consts::PI, 64, |x| x.sin().powi(2));
        assert!((v - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn refinement_stops_early_on_converged_values() {
        let r = refine(16, 5, |_| 1.0);
        assert_eq!(r.rounds, 1);
        assert_eq!(r.error, 0.0);
    }

    #[test]
    fn golden_section_finds_interior_maximum() {
        let (x, v) = golden_max(0.0, 2.0, |x| 1.0 - (x - 0.7).powi(2));
        assert!((x - 0.7).abs() < 1e-7);
        assert!((v - 1.0).abs() < 1e-14);
    }
}
