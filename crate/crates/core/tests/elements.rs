use cqg::elements::{dual_blocks, element_from_json, element_to_json, generate_family, Block, Element, FamilyKind, FamilySpec};
use cqg::fusion::{level_dims, IrrLabel, RingId, Word};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn coeffs() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..14)
}

proptest! {
    #[test]
    fn central_blocks_are_scaled_identities(n in 2u32..6, c in coeffs()) {
        let ring = RingId::on_plus(n).unwrap();
        let z: Vec<Complex64> = c.iter().map(|&(a, b)| Complex64::new(a, b)).collect();
        let e = Element::central(ring, z.clone()).unwrap();
        let dims = level_dims(&ring, z.len() - 1).unwrap();
        let blocks = dual_blocks(&e);
        prop_assert_eq!(blocks.len(), z.iter().filter(|x| x.norm() != 0.0).count());
        for (label, block) in blocks {
            let IrrLabel::Level(k) = label else { panic!("central blocks carry levels") };
            let Block::ScalarIdentity { scalar, dim } = block else { panic!("central block is dense") };
            prop_assert_eq!(&dim, &dims[k as usize]);
            let nk = dim.to_f64().unwrap();
            prop_assert_eq!(scalar, z[k as usize] / nk);
        }
    }

    #[test]
    fn canonical_json_round_trips(
        terms in prop::collection::btree_map(prop::collection::vec(prop_oneof![-3i16..=-1, 1i16..=3], 0..5), (-1e3f64..1e3, -1e3f64..1e3), 1..8)
    ) {
        let ring = RingId::free_group(3).unwrap();
        let e = Element::points(
            ring,
            terms.iter().map(|(w, &(a, b))| (IrrLabel::Word(Word::reduced(w.iter().copied()).unwrap()), Complex64::new(a, b))),
        );
        // Distinct letter lists may reduce to one word; the constructor rejects or merges them.
        if let Ok(e) = e {
            let text = element_to_json(&e);
            let back = element_from_json(&text).unwrap();
            prop_assert_eq!(&back, &e);
            prop_assert_eq!(element_to_json(&back), text);
        }
    }

    #[test]
    fn families_are_reproducible(seed in any::<u64>(), level in 0usize..4, cap in 1usize..10) {
        for (ring, kind) in [
            (RingId::on_plus(3).unwrap(), FamilyKind::Monotone),
            (RingId::on_plus(3).unwrap(), FamilyKind::SphereUniform { level }),
            (RingId::free_group(2).unwrap(), FamilyKind::SphereUniform { level }),
            (RingId::free_group(2).unwrap(), FamilyKind::Holomorphic { level }),
            (RingId::lattice(2).unwrap(), FamilyKind::SphereUniform { level }),
        ] {
            let spec = FamilySpec::new(kind, seed, cap);
            let a = generate_family(&ring, &spec, 5).unwrap();
            let b = generate_family(&ring, &spec, 5).unwrap();
            prop_assert_eq!(&a, &b);
            for (x, y) in a.elements.iter().zip(&b.elements) {
                prop_assert_eq!(element_to_json(x), element_to_json(y));
            }
        }
    }
}

/// Nonnegative, nonincreasing, and `Σ_{m≥k} c_m/(m+1) ≤ D c_k` for every `k`.
fn satisfies_radial_conditions(c: &[f64], d: f64) -> bool {
    let nonincreasing = c.windows(2).all(|w| w[1] <= w[0]) && c.iter().all(|&x| x >= 0.0);
    let tail_ok = (0..c.len()).all(|k| {
        let tail: f64 = (k..c.len()).map(|m| c[m] / (m as f64 + 1.0)).sum();
        tail <= d * c[k] * (1.0 + 1e-12)
    });
    nonincreasing && tail_ok
}

#[test]
fn radial_family_members_meet_the_tail_conditions() {
    let ring = RingId::on_plus(3).unwrap();
    let kinds = [
        FamilyKind::Geometric { rho: 0.5 },
        FamilyKind::Geometric { rho: 0.9 },
        FamilyKind::Heat { t: 0.1 },
        FamilyKind::Heat { t: 1.0 },
        FamilyKind::Monotone,
    ];
    for kind in kinds {
        for cap in [0usize, 5, 40] {
            let fam = generate_family(&ring, &FamilySpec::new(kind, 17, cap), 8).unwrap();
            assert!(fam.metadata.monotone);
            assert_eq!(fam.metadata.truncation, cap);
            let d = fam.metadata.d_constant.expect("positive profiles have a tail constant");
            for e in &fam.elements {
                let c: Vec<f64> = e.central_coeffs().unwrap().iter().map(|z| z.re).collect();
                assert_eq!(c.len(), cap + 1);
                assert_eq!(c[0], 1.0);
                assert!(satisfies_radial_conditions(&c, d), "{kind:?} cap {cap}");
                assert!(!satisfies_radial_conditions(&c, 0.5 * d) || d == 0.0);
            }
        }
    }
}

#[test]
fn geometric_tail_constant_matches_closed_form() {
    let rho: f64 = 0.7;
    let ring = RingId::on_plus(3).unwrap();
    let fam = generate_family(&ring, &FamilySpec::new(FamilyKind::Geometric { rho }, 0, 400), 1).unwrap();
    // For k = 0 the tail is Σ ρ^m/(m+1) = −ln(1−ρ)/ρ, the largest ratio.
    let expected = -(1.0 - rho).ln() / rho;
    assert!((fam.metadata.d_constant.unwrap() - expected).abs() < 1e-12);
}

#[test]
fn randomized_families_depend_on_the_seed() {
    let ring = RingId::on_plus(3).unwrap();
    let a = generate_family(&ring, &FamilySpec::new(FamilyKind::Monotone, 1, 6), 3).unwrap();
    let b = generate_family(&ring, &FamilySpec::new(FamilyKind::Monotone, 2, 6), 3).unwrap();
    assert_ne!(a.elements, b.elements);
}
