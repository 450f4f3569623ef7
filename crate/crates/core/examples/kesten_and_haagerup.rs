//! Operator norms on free groups: Kesten's values, the strong Haagerup inequality on
//! positive words, and rapid decay on O_3⁺.
//!
//! ```text
//! cargo run --release --example kesten_and_haagerup
//! ```

use cqg::elements::Element;
use cqg::fusion::{IrrLabel, RingId, Word};
use cqg::hl::{rd_verify, strong_haagerup_ratio, strong_haagerup_verify, Trials};
use cqg::norms::{freegroup_opnorm_lower, freegroup_sup_upper, OpnormOptions, QuadratureConfig};
use num_complex::Complex64;

fn words(n: u32, ws: &[&str]) -> cqg::Result<Element> {
    let ring = RingId::free_group(n)?;
    let terms = ws.iter().map(|w| Ok((IrrLabel::Word(Word::parse(w)?), Complex64::new(1.0, 0.0))));
    Element::points(ring, terms.collect::<cqg::Result<Vec<_>>>()?)
}

fn lower(e: &Element, op: &OpnormOptions) -> cqg::Result<f64> {
    match freegroup_opnorm_lower(e, op) {
        Ok(r) => Ok(r.value),
        Err(cqg::Error::NonConvergence { partial, .. }) => Ok(partial),
        Err(other) => Err(other),
    }
}

fn main() -> cqg::Result<()> {
    let kesten = [(2u32, &["a", "b", "A", "B"][..], 2.0 * 3f64.sqrt()), (3, &["a", "b", "c", "A", "B", "C"][..], 2.0 * 5f64.sqrt())];
    for (n, ws, exact) in kesten {
        let e = words(n, ws)?;
        for r in [2, 4, 8] {
            let v = lower(&e, &OpnormOptions::with_radius(r))?;
            println!("F_{n} sphere-1 sum, R={r:<2}: {v:.6} ≤ {exact:.6} ≤ {:.6}", freegroup_sup_upper(&e)?);
        }
    }

    let ab = words(2, &["a", "b"])?;
    let (ratio, sup) = strong_haagerup_ratio(&ab, &OpnormOptions::with_radius(10))?;
    println!("\nδ_a + δ_b: ‖λ(f)‖ ≥ {:.6}, ratio to √e·√2·‖f‖_2 = {ratio:.4}", sup.value);

    let op = OpnormOptions { radius: 8, max_entries: 1 << 20, max_iter: 60, tolerance: 1e-6 };
    for k in 0..=4 {
        let rep = strong_haagerup_verify(2, k, Trials { count: 5, seed: k as u64, support_cap: 8 }, &op)?;
        println!("strong Haagerup, F_2, k={k}: max ratio {:.4}", rep.max_ratio);
    }

    let q = QuadratureConfig::default();
    let on3 = RingId::on_plus(3)?;
    for k in [0, 3, 10] {
        let rep = rd_verify(&on3, k, 1.0, Trials { count: 3, seed: 1, support_cap: 1 }, &q, &op)?;
        println!("rapid decay, O_3⁺, k={k}: max ratio {:.8}", rep.max_ratio);
    }
    Ok(())
}
