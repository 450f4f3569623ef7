//! Paley admissibility constants `sup_t t·Σ_{w ≥ t} n_α²` for weights `w_{r,s}`, plus the
//! rapid-decay scan and the lattice zeta probe.
//!
//! ```text
//! cargo run --example paley_constants
//! ```

use cqg::fusion::RingId;
use cqg::weights::{paley_constant, paley_constant_rd, paley_trace, trace_csv, zeta_probe, WeightSpec};

fn main() -> cqg::Result<()> {
    let cases = [
        (RingId::on_plus(2)?, WeightSpec::new(1.0, 3.0)?),
        (RingId::on_plus(2)?, WeightSpec::new(1.0, 2.5)?),
        (RingId::on_plus(3)?, WeightSpec::new(RingId::on_plus(3)?.r0().unwrap().powi(2), 1.0)?),
        (RingId::lattice(1)?, WeightSpec::new(1.0, 1.0)?),
        (RingId::lattice(2)?, WeightSpec::new(1.0, 2.0)?),
        (RingId::free_group(2)?, WeightSpec::new(3.0, 1.0)?),
    ];
    for (ring, w) in &cases {
        let rep = paley_constant(ring, w, 1000)?;
        println!(
            "{ring:<10} {w:<22} {:?} (max {:.6} at k={}, stabilized {})",
            rep.constant, rep.scan_max, rep.attained_at, rep.stabilized
        );
    }

    println!("\nrapid-decay scans, β = 1:");
    for s in [1.6, 2.0, 3.0] {
        let rep = paley_constant_rd(&WeightSpec::new(1.0, s)?, 1.0, 1000)?;
        println!("  s={s}: {:?} (max {:.6})", rep.constant, rep.scan_max);
    }

    println!("\nfirst scan points, O_2⁺ with w_{{1,3}}:");
    let trace = paley_trace(&RingId::on_plus(2)?, &WeightSpec::new(1.0, 3.0)?, 5)?;
    print!("{}", trace_csv(&trace));

    println!("\nΣ (1+|m|₁)^(-s) on ℤ²:");
    for s in [1.5, 2.0, 2.5, 3.0] {
        let z = zeta_probe(&RingId::lattice(2)?, s, 10_000)?;
        println!("  s={s}: {:?} (S_K = {:.6})", z.verdict, z.partial_sums.last().unwrap());
    }
    Ok(())
}
