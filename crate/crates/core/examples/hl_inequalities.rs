//! Hardy–Littlewood ratios `LHS / ‖f‖_p` over the regression corpus, summarized per group,
//! with the three left-hand-side forms compared on one element.
//!
//! ```text
//! cargo run --release --example hl_inequalities
//! ```

use std::collections::BTreeMap;

use cqg::elements::Element;
use cqg::fusion::RingId;
use cqg::hl::{hl_lhs, hl_lhs_sphere_normalized, hl_ratio, regression_corpus, LhsForm};
use cqg::norms::{OpnormOptions, QuadratureConfig};
use cqg::weights::WeightSpec;

fn main() -> cqg::Result<()> {
    let q = QuadratureConfig::default();
    let op = OpnormOptions::default();
    let mut groups: BTreeMap<String, (f64, f64, usize)> = BTreeMap::new();
    for case in regression_corpus() {
        let r = hl_ratio(&case.element, &case.weight, case.p, case.form, &q, &op)?;
        let mut parts = case.id.split('/');
        let key = format!("{} p={} {} w=({})", parts.next().unwrap(), case.p, case.form, case.weight);
        let g = groups.entry(key).or_insert((f64::INFINITY, 0.0, 0));
        g.0 = g.0.min(r.ratio);
        g.1 = g.1.max(r.ratio);
        g.2 += 1;
    }
    for (key, (lo, hi, n)) in groups {
        println!("{key:<48} {n:>3} elements, ratio in [{lo:.4}, {hi:.4}]");
    }

    let on3 = RingId::on_plus(3)?;
    let e = Element::central_real(on3, &[1.0, 0.5, -0.25, 0.125])?;
    let w = WeightSpec::new(on3.r0().unwrap(), 2.0)?;
    println!("\nforms on 1 + χ_1/2 − χ_2/4 + χ_3/8, p = 1.5:");
    for form in [LhsForm::Schatten, LhsForm::Hs, LhsForm::Sphere] {
        println!("  {form:<9} {:.10}", hl_lhs(&e, &w, 1.5, form)?.value);
    }
    println!("  sphere-normalized {:.10}", hl_lhs_sphere_normalized(&e, &w, 1.5)?.value);
    Ok(())
}
