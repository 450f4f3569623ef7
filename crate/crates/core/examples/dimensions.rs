//! Dimensions of the irreducibles of O_N⁺ and S_N⁺ and the growth of balls in every
//! supported dual.
//!
//! ```text
//! cargo run --example dimensions
//! ```

use cqg::fusion::{big_ln, growth_profile, level_dims, tensor_multiplicity, IrrLabel, RingId};

fn main() -> cqg::Result<()> {
    for ring in [RingId::on_plus(2)?, RingId::on_plus(3)?, RingId::sn_plus(5)?] {
        let dims = level_dims(&ring, 8)?;
        let shown: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
        println!("{ring:<10} n_k = {}", shown.join(", "));
    }

    let on3 = RingId::on_plus(3)?;
    let dims = level_dims(&on3, 200)?;
    println!("\nO_3⁺ n_200 has {} digits", dims[200].to_string().len());
    let ratio = (big_ln(&dims[200]) - big_ln(&dims[199])).exp();
    println!("n_200 / n_199 = {ratio:.15}, r0 = {:.15}", on3.r0().unwrap());

    println!("\nχ_2 ⊗ χ_3 on O_3⁺:");
    for c in 0..=5 {
        let m = tensor_multiplicity(&on3, &IrrLabel::Level(2), &IrrLabel::Level(3), &IrrLabel::Level(c))?;
        if m > 0 {
            println!("  contains χ_{c} (dim {})", dims[c as usize]);
        }
    }

    println!("\nball sizes b_k = Σ_{{|α|≤k}} n_α²:");
    for ring in [RingId::lattice(2)?, RingId::free_group(2)?, RingId::on_plus(2)?, RingId::sn_plus(5)?] {
        let g = growth_profile(&ring, 6)?;
        let shown: Vec<String> = g.balls.iter().map(|b| b.to_string()).collect();
        println!("  {ring:<10} {}", shown.join(", "));
    }
    Ok(())
}
