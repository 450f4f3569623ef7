//! Rational rotation algebras: L^p norms through the fiber decomposition, their agreement
//! with the classical torus at θ = 0, and Hardy–Littlewood ratios with weight `w_{1,2}`.
//!
//! ```text
//! cargo run --release --example quantum_torus
//! ```

use cqg::elements::Element;
use cqg::fusion::{IrrLabel, RingId};
use cqg::hl::{hl_ratio, LhsForm};
use cqg::norms::{l2_norm, lattice_lp_norm, qtorus_lp_norm, OpnormOptions, QuadratureConfig};
use cqg::weights::WeightSpec;
use num_complex::Complex64;

fn element(ring: RingId) -> cqg::Result<Element> {
    let terms = [([0, 0], 1.0), ([1, 0], 0.5), ([0, 1], -0.5), ([1, 1], 0.25), ([-2, 1], 0.75)];
    Element::points(ring, terms.map(|(m, c)| (IrrLabel::Vector(m.to_vec()), Complex64::new(c, 0.0))))
}

fn main() -> cqg::Result<()> {
    let q = QuadratureConfig::default();
    let op = OpnormOptions::default();
    let w = WeightSpec::new(1.0, 2.0)?;
    let classical = element(RingId::lattice(2)?)?;
    println!("ℤ² reference: L^1 {:.12}, L^4 {:.12}", lattice_lp_norm(&classical, 1.0, &q)?.value, lattice_lp_norm(&classical, 4.0, &q)?.value);
    for (num, den) in [(0, 1), (1, 2), (1, 3), (2, 5), (3, 7)] {
        let e = element(RingId::qtorus(num, den)?)?;
        let l1 = qtorus_lp_norm(&e, 1.0, &q)?.value;
        let l2 = qtorus_lp_norm(&e, 2.0, &q)?.value;
        let l4 = qtorus_lp_norm(&e, 4.0, &q)?.value;
        let hl = hl_ratio(&e, &w, 1.5, LhsForm::Schatten, &q, &op)?;
        println!(
            "θ={num}/{den}: L^1 {l1:.12}  L^2 {l2:.12} (ℓ² {:.12})  L^4 {l4:.12}  HL ratio p=1.5 {:.6}",
            l2_norm(&e).value,
            hl.ratio
        );
    }
    Ok(())
}
