//! Haar moments of characters two ways: by counting trivial summands in tensor powers
//! and by quadrature against the classical Weyl density.
//!
//! ```text
//! cargo run --example character_moments
//! ```

use cqg::fusion::{trivial_multiplicity_in_power, IrrLabel, RingId, DEFAULT_MOMENT_CAP};
use cqg::norms::{haar_moment, QuadratureConfig};

fn main() -> cqg::Result<()> {
    let q = QuadratureConfig::default();
    for ring in [RingId::on_plus(3)?, RingId::sn_plus(5)?] {
        println!("{ring}: h(χ_1^m)");
        for m in 1..=8 {
            let count = trivial_multiplicity_in_power(&ring, &vec![IrrLabel::Level(1); m], DEFAULT_MOMENT_CAP)?;
            let quad = haar_moment(&ring, &vec![1; m], &q)?;
            println!("  m={m}  count {count:>5}  quadrature {:>22.15}  |diff| {:.1e}", quad.value, (quad.value - count as f64).abs());
        }
    }

    let ring = RingId::on_plus(3)?;
    let mixed = [2u32, 3, 1];
    let count = trivial_multiplicity_in_power(&ring, &mixed.map(IrrLabel::Level), DEFAULT_MOMENT_CAP)?;
    let quad = haar_moment(&ring, &mixed, &q)?.value;
    println!("\nh(χ_2 χ_3 χ_1) on {ring}: count {count}, quadrature {quad:.12}");
    Ok(())
}
