use cqg::fusion::{
    dim, growth_profile, level_dims, sphere_words, tensor_multiplicity, trivial_multiplicity_in_power, IrrLabel, RingId, Word,
    DEFAULT_MOMENT_CAP,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn level_ring(kind: u8, param: u32) -> RingId {
    if kind == 0 {
        RingId::on_plus(param).unwrap()
    } else {
        RingId::sn_plus(param + 2).unwrap()
    }
}

fn word(letters: &[i16]) -> Word {
    Word::reduced(letters.iter().copied()).unwrap()
}

proptest! {
    #[test]
    fn tensor_products_preserve_dimension(kind in 0u8..2, param in 2u32..7, a in 0u32..=8, b in 0u32..=8) {
        let ring = level_ring(kind, param);
        let lhs: BigUint = (0..=a + b)
            .map(|c| {
                let m = tensor_multiplicity(&ring, &IrrLabel::Level(a), &IrrLabel::Level(b), &IrrLabel::Level(c)).unwrap();
                dim(&ring, &IrrLabel::Level(c)).unwrap() * m
            })
            .sum();
        let rhs = dim(&ring, &IrrLabel::Level(a)).unwrap() * dim(&ring, &IrrLabel::Level(b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trivial_label_pairs_each_level_with_itself(kind in 0u8..2, param in 2u32..7, a in 0u32..=8, b in 0u32..=8) {
        let ring = level_ring(kind, param);
        let m = tensor_multiplicity(&ring, &IrrLabel::Level(a), &IrrLabel::Level(b), &IrrLabel::Level(0)).unwrap();
        prop_assert_eq!(m, (a == b) as u64);
    }

    #[test]
    fn trivial_label_pairs_each_word_with_its_inverse(
        a in prop::collection::vec(prop_oneof![-2i16..=-1, 1i16..=2], 0..6),
        b in prop::collection::vec(prop_oneof![-2i16..=-1, 1i16..=2], 0..6),
    ) {
        let ring = RingId::free_group(2).unwrap();
        let (a, b) = (word(&a), word(&b));
        let m = tensor_multiplicity(&ring, &IrrLabel::Word(a.clone()), &IrrLabel::Word(b.clone()), &IrrLabel::Word(Word::identity())).unwrap();
        prop_assert_eq!(m, (b == a.inverse()) as u64);
    }

    #[test]
    fn balls_are_prefix_sums_of_spheres(ring in prop_oneof![
        (2u32..6).prop_map(|n| RingId::on_plus(n).unwrap()),
        (4u32..8).prop_map(|n| RingId::sn_plus(n).unwrap()),
        (1u32..4).prop_map(|n| RingId::free_group(n).unwrap()),
        (1u32..4).prop_map(|d| RingId::lattice(d).unwrap()),
    ]) {
        let g = growth_profile(&ring, 60).unwrap();
        let mut acc = BigUint::from(0u32);
        for (s, b) in g.spheres.iter().zip(&g.balls) {
            acc += s;
            prop_assert_eq!(&acc, b);
        }
    }
}

#[test]
fn free_group_spheres_match_word_enumeration() {
    let ring = RingId::free_group(2).unwrap();
    let g = growth_profile(&ring, 5).unwrap();
    for k in 0..=5 {
        assert_eq!(g.spheres[k], BigUint::from(sphere_words(2, k).len()));
    }
    let expected: Vec<BigUint> = [1u32, 4, 12, 36].into_iter().map(BigUint::from).collect();
    assert_eq!(&g.spheres[..4], &expected[..]);
}

#[test]
fn dimension_ratio_approaches_the_growth_rate() {
    for n in [3u32, 4, 5, 10] {
        let ring = RingId::on_plus(n).unwrap();
        let dims = level_dims(&ring, 30).unwrap();
        let ratio = cqg::fusion::big_ln(&dims[30]) - cqg::fusion::big_ln(&dims[29]);
        let r0 = (n as f64 + ((n * n - 4) as f64).sqrt()) / 2.0;
        assert!((ratio.exp() - r0).abs() < 1e-6, "N={n}: {} vs {r0}", ratio.exp());
        assert!((ring.r0().unwrap() - r0).abs() < 1e-12);
    }
}

#[test]
fn even_powers_of_the_fundamental_count_catalan_numbers() {
    let catalan = [1u128, 1, 2, 5, 14, 42, 132, 429];
    for n in [2u32, 3, 7] {
        let ring = RingId::on_plus(n).unwrap();
        for (m, &c) in catalan.iter().enumerate().skip(1) {
            let levels = vec![IrrLabel::Level(1); 2 * m];
            assert_eq!(trivial_multiplicity_in_power(&ring, &levels, DEFAULT_MOMENT_CAP).unwrap(), c, "N={n}, m={m}");
        }
        assert!(trivial_multiplicity_in_power(&ring, &[], DEFAULT_MOMENT_CAP).is_err());
    }
}

#[test]
fn rotation_algebras_have_no_multiplicities() {
    let ring = RingId::qtorus(1, 3).unwrap();
    let v = IrrLabel::Vector(vec![0, 0]);
    assert!(tensor_multiplicity(&ring, &v, &v, &v).is_err());
}
