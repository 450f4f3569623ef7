//! Ratio sweeps over decay pairs and concentrating families.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{hl_lhs, rhs_norm, LhsForm};
use crate::elements::{generate_family, Element, FamilyKind, FamilySpec};
use crate::error::{domain, Result};
use crate::fusion::RingId;
use crate::norms::{NormResult, OpnormOptions, QuadratureConfig};
use crate::report::fmt_float;
use crate::weights::WeightSpec;

/// Radial families indexed by one parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepFamily {
    /// `c_k = e^{−t k}`; concentrates as `t → 0`.
    Heat,
    /// `c_k = ρ^k`; concentrates as `ρ → 1`.
    Geometric,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub ring: RingId,
    pub p_grid: Vec<f64>,
    /// Exponential rate `r` of the weight inside `w^{2−p}`.
    pub r: f64,
    /// Exponents `s` of the displayed factor `(1+k)^{−s}`, i.e. after the `2−p` power.
    pub s_grid: Vec<f64>,
    pub family: SweepFamily,
    /// Family parameters in sweep order; growth is measured from first to last.
    pub params: Vec<f64>,
    /// Truncation level; `None` cuts where the profile drops below `e^{−40}`.
    pub support_cap: Option<usize>,
    pub form: LhsForm,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub p: f64,
    pub r: f64,
    pub s: f64,
    pub family_param: f64,
    pub lhs: f64,
    pub rhs: NormResult,
    pub engine: String,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepColumn {
    pub p: f64,
    pub r: f64,
    pub s: f64,
    pub max_ratio: f64,
    /// `ratio(last parameter) / ratio(first parameter)`.
    pub growth: f64,
    /// The ratio never decreases along the parameter list.
    pub monotone: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub cells: Vec<SweepCell>,
    pub columns: Vec<SweepColumn>,
}

impl SweepReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,r,s,family_param,lhs,rhs,ratio,rhs_semantics\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                fmt_float(c.p),
                fmt_float(c.r),
                fmt_float(c.s),
                fmt_float(c.family_param),
                fmt_float(c.lhs),
                fmt_float(c.rhs.value),
                fmt_float(c.ratio),
                c.rhs.semantics.as_str()
            ));
        }
        out
    }

    pub fn column(&self, p: f64, s: f64) -> Option<&SweepColumn> {
        self.columns.iter().find(|c| c.p == p && c.s == s)
    }
}

fn truncation(family: SweepFamily, param: f64) -> usize {
    let rate = match family {
        SweepFamily::Heat => param,
        SweepFamily::Geometric => -param.ln(),
    };
    (40.0 / rate).ceil() as usize
}

fn member(spec: &SweepSpec, param: f64) -> Result<Element> {
    let kind = match spec.family {
        SweepFamily::Heat => FamilyKind::Heat { t: param },
        SweepFamily::Geometric => FamilyKind::Geometric { rho: param },
    };
    let cap = spec.support_cap.unwrap_or_else(|| truncation(spec.family, param));
    let fam = generate_family(&spec.ring, &FamilySpec::new(kind, 0, cap), 1)?;
    Ok(fam.elements.into_iter().next().expect("one member"))
}

/// Evaluates every `(p, s, parameter)` cell. The right-hand side is computed once per
/// `(p, parameter)` and shared across `s`.
pub fn sharpness_sweep(spec: &SweepSpec, q: &QuadratureConfig, op: &OpnormOptions) -> Result<SweepReport> {
    if spec.params.is_empty() || spec.p_grid.is_empty() || spec.s_grid.is_empty() {
        return domain("sweep grids must be nonempty");
    }
    if let Some(&p) = spec.p_grid.iter().find(|&&p| !(p > 1.0 && p < 2.0)) {
        return domain(format!("sweep exponent p = {p} must lie in (1, 2)"));
    }
    let pairs: Vec<(f64, f64)> =
        spec.p_grid.iter().flat_map(|&p| spec.params.iter().map(move |&t| (p, t))).collect();
    let evaluated: Vec<Result<(Vec<f64>, NormResult, &'static str)>> = pairs
        .par_iter()
        .map(|&(p, t)| {
            let e = member(spec, t)?;
            let (rhs, engine) = rhs_norm(&e, p, q, op)?;
            let lhs = spec
                .s_grid
                .iter()
                .map(|&s| {
                    let w = WeightSpec::new(spec.r, s / (2.0 - p))?;
                    Ok(hl_lhs(&e, &w, p, spec.form)?.value)
                })
                .collect::<Result<Vec<f64>>>()?;
            Ok((lhs, rhs, engine))
        })
        .collect();
    let mut cells = Vec::new();
    let mut columns = Vec::new();
    let n_t = spec.params.len();
    for (pi, &p) in spec.p_grid.iter().enumerate() {
        for (si, &s) in spec.s_grid.iter().enumerate() {
            let mut ratios = Vec::with_capacity(n_t);
            for (ti, &t) in spec.params.iter().enumerate() {
                let (lhs, rhs, engine) = evaluated[pi * n_t + ti].as_ref().map_err(Clone::clone)?;
                let ratio = lhs[si] / rhs.value;
                ratios.push(ratio);
                cells.push(SweepCell {
                    p,
                    r: spec.r,
                    s,
                    family_param: t,
                    lhs: lhs[si],
                    rhs: rhs.clone(),
                    engine: engine.to_string(),
                    ratio,
                });
            }
            columns.push(SweepColumn {
                p,
                r: spec.r,
                s,
                max_ratio: ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                growth: ratios[n_t - 1] / ratios[0],
                monotone: ratios.windows(2).all(|w| w[1] >= w[0]),
            });
        }
    }
    Ok(SweepReport { cells, columns })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_sweep_layout_and_csv() {
        let spec = SweepSpec {
            ring: RingId::lattice(1).unwrap(),
            p_grid: vec![1.5],
            r: 1.0,
            s_grid: vec![0.5, 0.1],
            family: SweepFamily::Heat,
            params: vec![1.0, 0.5],
            support_cap: None,
            form: LhsForm::Schatten,
        };
        let rep = sharpness_sweep(&spec, &QuadratureConfig::default(), &OpnormOptions::default()).unwrap();
        assert_eq!(rep.cells.len(), 4);
        assert_eq!(rep.columns.len(), 2);
        let csv = rep.to_csv();
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.lines().nth(1).unwrap().ends_with("quadrature_estimate"));
        // A weaker weight (smaller s) gives a larger left-hand side.
        assert!(rep.cells[2].lhs > rep.cells[0].lhs);
    }

    #[test]
    fn rejects_p_two_and_empty_grids() {
        let mut spec = SweepSpec {
            ring: RingId::on_plus(3).unwrap(),
            p_grid: vec![2.0],
            r: 1.0,
            s_grid: vec![0.5],
            family: SweepFamily::Geometric,
            params: vec![0.5],
            support_cap: Some(10),
            form: LhsForm::Schatten,
        };
        let (q, op) = (QuadratureConfig::default(), OpnormOptions::default());
        assert!(sharpness_sweep(&spec, &q, &op).is_err());
        spec.p_grid = vec![1.5];
        spec.params.clear();
        assert!(sharpness_sweep(&spec, &q, &op).is_err());
    }
}
