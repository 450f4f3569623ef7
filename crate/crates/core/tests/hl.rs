use cqg::elements::Element;
use cqg::fusion::{IrrLabel, RingId, Word};
use cqg::hl::{
    hausdorff_young_check, hl_lhs, hl_lhs_blocks, hl_lhs_sphere_normalized, hl_ratio, level_terms, rd_verify, regression_corpus,
    strong_haagerup_verify, LhsForm, Trials,
};
use cqg::norms::{l2_norm, OpnormOptions, QuadratureConfig};
use cqg::weights::WeightSpec;
use num_complex::Complex64;
use proptest::prelude::*;

fn central_strategy() -> impl Strategy<Value = Element> {
    (
        prop_oneof![(2u32..6).prop_map(|n| RingId::on_plus(n).unwrap()), (4u32..8).prop_map(|n| RingId::sn_plus(n).unwrap())],
        prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 1..14),
    )
        .prop_filter_map("nonzero", |(ring, c)| {
            let e = Element::central(ring, c.into_iter().map(|(a, b)| Complex64::new(a, b))).unwrap();
            (!e.is_zero()).then_some(e)
        })
}

fn free_strategy() -> impl Strategy<Value = Element> {
    prop::collection::btree_map(prop::collection::vec(prop_oneof![-2i16..=-1, 1i16..=2], 0..5), -3.0f64..3.0, 1..8)
        .prop_filter_map("reduced, nonzero", |terms| {
            let ring = RingId::free_group(2).unwrap();
            let e = Element::points(
                ring,
                terms.into_iter().map(|(w, c)| (IrrLabel::Word(Word::reduced(w).unwrap()), Complex64::new(c, 0.0))),
            )
            .ok()?;
            (!e.is_zero()).then_some(e)
        })
}

fn weight() -> impl Strategy<Value = WeightSpec> {
    (1.0f64..3.0, -1.0f64..4.0).prop_map(|(r, s)| WeightSpec::new(r, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn forms_dominate_level_by_level(e in prop_oneof![central_strategy(), free_strategy()], p in 1.01f64..2.0) {
        for t in level_terms(&e, p).unwrap() {
            prop_assert!(t.ln_schatten <= t.ln_hs + 1e-12);
            prop_assert!(t.ln_hs <= t.ln_sphere + (2.0 - p) / 2.0 * t.ln_sphere_size + 1e-9, "k={}", t.k);
        }
    }

    #[test]
    fn sphere_normalized_form_sits_below_the_sphere_form(e in prop_oneof![central_strategy(), free_strategy()], w in weight(), p in 1.01f64..2.0) {
        let a = hl_lhs_sphere_normalized(&e, &w, p).unwrap().value;
        let b = hl_lhs(&e, &w, p, LhsForm::Sphere).unwrap().value;
        prop_assert!(a <= b * (1.0 + 1e-12), "{a} > {b}");
        let s = hl_lhs(&e, &w, p, LhsForm::Schatten).unwrap().value;
        let h = hl_lhs(&e, &w, p, LhsForm::Hs).unwrap().value;
        prop_assert!(s <= h * (1.0 + 1e-12));
    }

    #[test]
    fn log_domain_and_block_routes_agree(e in prop_oneof![central_strategy(), free_strategy()], w in weight(), p in 1.01f64..2.0) {
        for form in [LhsForm::Schatten, LhsForm::Hs, LhsForm::Sphere] {
            let a = hl_lhs(&e, &w, p, form).unwrap().value;
            let b = hl_lhs_blocks(&e, &w, p, form).unwrap();
            prop_assert!((a - b).abs() <= 1e-9 * a, "{form}: {a} vs {b}");
        }
    }

    #[test]
    fn exponent_two_collapses_to_plancherel(e in prop_oneof![central_strategy(), free_strategy()], w in weight()) {
        let q = QuadratureConfig::default();
        let op = OpnormOptions::default();
        for form in [LhsForm::Schatten, LhsForm::Hs, LhsForm::Sphere] {
            prop_assert_eq!(hl_lhs(&e, &w, 2.0, form).unwrap().value, l2_norm(&e).value);
            prop_assert_eq!(hl_ratio(&e, &w, 2.0, form, &q, &op).unwrap().ratio, 1.0);
        }
    }
}

#[test]
fn ratios_are_scale_invariant() {
    let q = QuadratureConfig::default();
    let op = OpnormOptions::default();
    let corpus = regression_corpus();
    for case in corpus.iter().step_by(7) {
        let base = hl_ratio(&case.element, &case.weight, case.p, case.form, &q, &op).unwrap().ratio;
        for lambda in [2.0, 10.0, 1.0 / 7.0] {
            let scaled = case.element.scaled(Complex64::new(lambda, 0.0));
            let r = hl_ratio(&scaled, &case.weight, case.p, case.form, &q, &op).unwrap().ratio;
            assert!((r - base).abs() <= 1e-10 * base, "{} λ={lambda}: {r} vs {base}", case.id);
        }
    }
}

#[test]
fn corpus_ratios_are_finite_and_positive() {
    let q = QuadratureConfig::default();
    let op = OpnormOptions::default();
    let corpus = regression_corpus();
    assert!(corpus.len() >= 200);
    for case in &corpus {
        let r = hl_ratio(&case.element, &case.weight, case.p, case.form, &q, &op).unwrap();
        assert!(r.ratio.is_finite() && r.ratio > 0.0, "{}", case.id);
        assert_eq!(r.upper_estimate, case.id.starts_with("free"));
    }
}

#[test]
fn hausdorff_young_margins_on_the_corpus() {
    let q = QuadratureConfig::default();
    let op = OpnormOptions::default();
    for case in regression_corpus().iter().filter(|c| !c.id.starts_with("free") && c.form == LhsForm::Schatten) {
        for p in [1.0, 4.0 / 3.0, 2.0] {
            let rep = hausdorff_young_check(&case.element, p, &q, &op).unwrap();
            assert!(rep.margin >= -1e-6, "{} p={p}: {}", case.id, rep.margin);
        }
    }
}

#[test]
fn rapid_decay_on_level_rings() {
    let q = QuadratureConfig::default();
    let op = OpnormOptions::default();
    // Level characters have sup k+1 on O_N⁺ and 2k+1 on S_N⁺ (the SO(3) picture).
    for (ring, sup) in [(RingId::on_plus(3).unwrap(), 1.0), (RingId::sn_plus(5).unwrap(), 2.0)] {
        for k in 0..=6 {
            let rep = rd_verify(&ring, k, 1.0, Trials { count: 5, seed: k as u64, support_cap: 1 }, &q, &op).unwrap();
            let expected = (sup * k as f64 + 1.0) / (k as f64 + 1.0);
            assert!((rep.max_ratio - expected).abs() <= 1e-6, "{ring} k={k}: {}", rep.max_ratio);
        }
    }
}

#[test]
fn strong_haagerup_on_short_words() {
    let op = OpnormOptions { radius: 8, max_entries: 1 << 18, max_iter: 60, tolerance: 1e-6 };
    for n in [2, 3] {
        for k in 0..=3 {
            let rep = strong_haagerup_verify(n, k, Trials { count: 3, seed: 40 + k as u64, support_cap: 6 }, &op).unwrap();
            assert!(rep.max_ratio <= 1.0 + 1e-6, "N={n} k={k}: {}", rep.max_ratio);
        }
    }
}
