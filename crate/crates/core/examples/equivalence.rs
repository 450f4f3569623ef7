//! Two-sided comparison of `‖f‖_p` with `(Σ (1+k)^{2p−4} c_k^p)^{1/p}` for radial,
//! nonincreasing profiles on O_3⁺.
//!
//! ```text
//! cargo run --release --example equivalence
//! ```

use cqg::elements::{generate_family, FamilyKind, FamilySpec};
use cqg::fusion::RingId;
use cqg::hl::equivalence_check;
use cqg::norms::QuadratureConfig;

fn main() -> cqg::Result<()> {
    let q = QuadratureConfig::default();
    let ring = RingId::on_plus(3)?;
    let kinds = [FamilyKind::Geometric { rho: 0.5 }, FamilyKind::Geometric { rho: 0.9 }, FamilyKind::Heat { t: 0.2 }, FamilyKind::Monotone];
    println!("{:<28} {:>4} {:>8} {:>12} {:>12}", "profile", "p", "D", "lower", "upper");
    for kind in kinds {
        let fam = generate_family(&ring, &FamilySpec::new(kind, 9, 60), 1)?;
        let d = fam.metadata.d_constant.expect("positive profile");
        let c: Vec<f64> = fam.elements[0].central_coeffs().unwrap().iter().map(|z| z.re).collect();
        for p in [1.6, 1.8, 2.0] {
            let rep = equivalence_check(&ring, &c, p, d, &q)?;
            println!("{:<28} {p:>4} {d:>8.4} {:>12.6} {:>12.6}", format!("{kind:?}"), rep.lower_ratio, rep.upper_ratio);
        }
    }

    let rising = [0.2, 1.0, 0.5];
    match equivalence_check(&ring, &rising, 1.8, 2.0, &q) {
        Err(e) => println!("\nnon-monotone profile rejected: {e}"),
        Ok(_) => unreachable!("precondition is checked"),
    }
    Ok(())
}
