//! Ratios along heat profiles `c_k = e^{−tk}` as `t → 0`, for weight exponents on both
//! sides of the critical value `s = 4 − 2p`. Writes the sweep as CSV to stdout.
//!
//! ```text
//! cargo run --release --example sharpness_sweep
//! ```

use cqg::fusion::RingId;
use cqg::hl::{sharpness_sweep, LhsForm, SweepFamily, SweepSpec};
use cqg::norms::{OpnormOptions, QuadratureConfig};

fn main() -> cqg::Result<()> {
    let ring = RingId::on_plus(3)?;
    let p = 1.5;
    let spec = SweepSpec {
        ring,
        p_grid: vec![p],
        r: ring.r0().unwrap(),
        s_grid: vec![1.0, 0.75, 0.5],
        family: SweepFamily::Heat,
        params: vec![1.0, 0.5, 0.2, 0.1, 0.05, 0.02, 0.01],
        support_cap: None,
        form: LhsForm::Schatten,
    };
    let report = sharpness_sweep(&spec, &QuadratureConfig::default(), &OpnormOptions::default())?;
    print!("{}", report.to_csv());
    for c in &report.columns {
        eprintln!("s={:<5} growth {:.4}  max ratio {:.4}  monotone {}", c.s, c.growth, c.max_ratio, c.monotone);
    }
    Ok(())
}
