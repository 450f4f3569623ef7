//! Every norm engine on one element per ring, with the kind of number each returns.
//!
//! ```text
//! cargo run --release --example norm_engines
//! ```

use cqg::elements::{element_to_json, generate_family, FamilyKind, FamilySpec};
use cqg::fusion::RingId;
use cqg::norms::{dual_lp_norm, engine_id, freegroup_lp_lower, l2_norm, lp_norm, OpnormOptions, QuadratureConfig};

fn main() -> cqg::Result<()> {
    let q = QuadratureConfig::default();
    let op = OpnormOptions::with_radius(8);
    let samples = [
        (RingId::on_plus(3)?, FamilyKind::Geometric { rho: 0.6 }),
        (RingId::sn_plus(5)?, FamilyKind::Heat { t: 0.5 }),
        (RingId::lattice(2)?, FamilyKind::SphereUniform { level: 2 }),
        (RingId::qtorus(1, 3)?, FamilyKind::SphereUniform { level: 2 }),
        (RingId::free_group(2)?, FamilyKind::SphereUniform { level: 1 }),
    ];
    for (ring, kind) in samples {
        let e = generate_family(&ring, &FamilySpec::new(kind, 42, 5), 1)?.elements.remove(0);
        println!("{ring}: {}", element_to_json(&e));
        println!("  ‖f‖_2 = {:.12}", l2_norm(&e).value);
        for p in [1.0, 1.5, 4.0, f64::INFINITY] {
            let (r, engine) = match lp_norm(&e, p, &q, &op) {
                Ok(r) => (r, engine_id(&e, p).to_string()),
                Err(cqg::Error::Unsupported(_)) if p <= 2.0 => (freegroup_lp_lower(&e, p)?, "free-lp-surrogate".into()),
                Err(cqg::Error::Unsupported(why)) => {
                    println!("  L^{p:<4} unsupported: {why}");
                    continue;
                }
                Err(cqg::Error::NonConvergence { partial, .. }) => {
                    println!("  L^{p:<4} {partial:>18.12}  lower bound, not converged");
                    continue;
                }
                Err(other) => return Err(other),
            };
            println!("  L^{p:<4} {:>18.12}  {:<20} ±{:.1e}  [{engine}]", r.value, r.semantics.as_str(), r.error_estimate);
        }
        for p in [1.0, 2.0, f64::INFINITY] {
            println!("  ℓ^{p:<4} {:>18.12}  exact", dual_lp_norm(&e, p)?.value);
        }
    }
    Ok(())
}
