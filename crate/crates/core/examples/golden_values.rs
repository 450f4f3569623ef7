//! Regenerates the committed regression values under `tests/golden/` at doubled
//! quadrature resolution.
//!
//! ```text
//! cargo run --release --example golden_values
//! ```

use std::path::PathBuf;

use cqg::elements::{element_to_json, generate_family, FamilyKind, FamilySpec};
use cqg::fusion::RingId;
use cqg::hl::{equivalence_check, hl_lhs, hl_ratio, regression_corpus, LhsForm};
use cqg::norms::{qtorus_lp_norm, OpnormOptions, QuadratureConfig};
use cqg::weights::WeightSpec;
use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde_json::json;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn write(name: &str, value: serde_json::Value) {
    let path = golden_dir().join(name);
    let text = serde_json::to_string_pretty(&value).unwrap() + "\n";
    cqg::report::write_atomic(&path, text.as_bytes()).unwrap();
    println!("wrote {}", path.display());
}

fn corpus(q: &QuadratureConfig) {
    let op = OpnormOptions::default();
    let cases: Vec<serde_json::Value> = regression_corpus()
        .iter()
        .map(|c| {
            let r = hl_ratio(&c.element, &c.weight, c.p, c.form, q, &op).unwrap();
            json!({ "id": c.id, "lhs": r.lhs, "rhs": r.rhs.value, "ratio": r.ratio, "engine": r.engine })
        })
        .collect();
    write("corpus.json", json!({ "resolution": q, "cases": cases }));
}

fn equivalence(q: &QuadratureConfig) {
    let ring = RingId::on_plus(3).unwrap();
    let mut cells = Vec::new();
    let mut k: f64 = 1.0;
    for rho in [0.5, 0.7, 0.9] {
        let fam = generate_family(&ring, &FamilySpec::new(FamilyKind::Geometric { rho }, 0, 200), 1).unwrap();
        let d = fam.metadata.d_constant.unwrap();
        let c: Vec<f64> = fam.elements[0].central_coeffs().unwrap().iter().map(|z| z.re).collect();
        for p in [1.6, 1.8, 2.0] {
            let rep = equivalence_check(&ring, &c, p, d, q).unwrap();
            k = k.max(rep.lower_ratio).max(rep.upper_ratio);
            cells.push(json!({ "rho": rho, "p": p, "d": d, "lower_ratio": rep.lower_ratio, "upper_ratio": rep.upper_ratio }));
        }
    }
    write("equivalence.json", json!({ "resolution": q, "truncation": 200, "envelope_k": k, "cells": cells }));
}

fn qtorus(q: &QuadratureConfig) {
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    let labels: Vec<Vec<i64>> = (0..=3).flat_map(|k| cqg::fusion::lattice_sphere_points(2, k)).collect();
    let weight = WeightSpec::new(1.0, 2.0).unwrap();
    let mut cases = Vec::new();
    for i in 0..50 {
        let size = rng.gen_range(1..=5);
        let mut idx = sample(&mut rng, labels.len(), size).into_vec();
        idx.sort_unstable();
        let terms: Vec<(cqg::fusion::IrrLabel, Complex64)> = idx
            .into_iter()
            .map(|j| {
                let z = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
                (cqg::fusion::IrrLabel::Vector(labels[j].clone()), z)
            })
            .collect();
        for theta in ["1/3", "2/5"] {
            let ring: RingId = format!("qtorus:{theta}").parse().unwrap();
            let e = cqg::elements::Element::points(ring, terms.clone()).unwrap();
            let lhs = hl_lhs(&e, &weight, 1.5, LhsForm::Schatten).unwrap().value;
            let lp = qtorus_lp_norm(&e, 1.5, q).unwrap().value;
            let element: serde_json::Value = serde_json::from_str(&element_to_json(&e)).unwrap();
            cases.push(json!({ "index": i, "element": element, "lhs": lhs, "lp": lp, "ratio": lhs / lp }));
        }
    }
    write("qtorus.json", json!({ "resolution": q, "p": 1.5, "weight": weight, "cases": cases }));
}

fn main() {
    let q = QuadratureConfig::default().doubled();
    corpus(&q);
    equivalence(&q);
    qtorus(&q);
}
