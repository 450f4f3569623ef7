//! Seeded regression corpus of elements paired with the admissible weights of the
//! Hardy–Littlewood inequalities.

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::LhsForm;
use crate::elements::Element;
use crate::fusion::{lattice_sphere_points, positive_words, IrrLabel, RingId};
use crate::weights::WeightSpec;

pub const CORPUS_P_VALUES: [f64; 2] = [1.5, 1.8];

const PER_GROUP: usize = 40;

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusCase {
    /// Stable identifier, `<group>/<index>/p=<p>/<form>`.
    pub id: String,
    pub element: Element,
    pub weight: WeightSpec,
    pub p: f64,
    pub form: LhsForm,
}

fn normal(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn random_central(ring: RingId, rng: &mut ChaCha8Rng) -> Element {
    let top = rng.gen_range(0..=12usize);
    let c: Vec<Complex64> = (0..=top).map(|_| normal(rng)).collect();
    Element::central(ring, c).expect("finite coefficients")
}

fn random_on(ring: RingId, labels: &[IrrLabel], cap: usize, rng: &mut ChaCha8Rng) -> Element {
    let size = rng.gen_range(1..=cap.min(labels.len()));
    let mut idx = sample(rng, labels.len(), size).into_vec();
    idx.sort_unstable();
    let terms: Vec<(IrrLabel, Complex64)> = idx.into_iter().map(|i| (labels[i].clone(), normal(rng))).collect();
    Element::points(ring, terms).expect("valid labels")
}

fn lattice_ball(d: usize, radius: usize) -> Vec<IrrLabel> {
    (0..=radius).flat_map(|k| lattice_sphere_points(d, k)).map(IrrLabel::Vector).collect()
}

fn positive_ball(n: u16, radius: usize) -> Vec<IrrLabel> {
    (0..=radius).flat_map(|k| positive_words(n, k)).map(IrrLabel::Word).collect()
}

/// The fixed corpus: 240 elements over six groups, each evaluated at both corpus exponents.
///
/// * `lattice1`, `lattice2`: random support ≤ 20 in the ℓ¹ ball of radius 6, weight
///   `w_{1,d}`, Schatten form.
/// * `onplus2`: random central elements up to level 12, weight `w_{1,3}`.
/// * `onplus3`, `snplus5`: the same with weight `w_{r₀,2}`.
/// * `free2`: random support ≤ 8 on positive words of length ≤ 4, sphere form with
///   `w_{1,3/2}` and pointwise form with `w_{√2,3/2}`.
pub fn regression_corpus() -> Vec<CorpusCase> {
    let mut cases = Vec::new();
    let mut push = |group: &str, elements: &[Element], forms: &[(LhsForm, WeightSpec)]| {
        for (i, e) in elements.iter().enumerate() {
            for p in CORPUS_P_VALUES {
                for (form, w) in forms {
                    cases.push(CorpusCase {
                        id: format!("{group}/{i:03}/p={p}/{form}"),
                        element: e.clone(),
                        weight: *w,
                        p,
                        form: *form,
                    });
                }
            }
        }
    };
    let w = |r: f64, s: f64| WeightSpec::new(r, s).expect("valid weight");
    for d in [1u32, 2] {
        let ring = RingId::lattice(d).expect("valid ring");
        let labels = lattice_ball(d as usize, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(100 + d as u64);
        let elements: Vec<Element> = (0..PER_GROUP).map(|_| random_on(ring, &labels, 20, &mut rng)).collect();
        push(&format!("lattice{d}"), &elements, &[(LhsForm::Schatten, w(1.0, d as f64))]);
    }
    let central = [
        ("onplus2", RingId::on_plus(2).expect("valid ring"), false),
        ("onplus3", RingId::on_plus(3).expect("valid ring"), true),
        ("snplus5", RingId::sn_plus(5).expect("valid ring"), true),
    ];
    for (seed, (group, ring, exponential)) in central.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(200 + seed as u64);
        let elements: Vec<Element> = (0..PER_GROUP).map(|_| random_central(ring, &mut rng)).collect();
        let weight = if exponential { w(ring.r0().expect("level ring"), 2.0) } else { w(1.0, 3.0) };
        push(group, &elements, &[(LhsForm::Schatten, weight)]);
    }
    let ring = RingId::free_group(2).expect("valid ring");
    let labels = positive_ball(2, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(300);
    let elements: Vec<Element> = (0..PER_GROUP).map(|_| random_on(ring, &labels, 8, &mut rng)).collect();
    push("free2", &elements, &[(LhsForm::Sphere, w(1.0, 1.5)), (LhsForm::Schatten, w(2f64.sqrt(), 1.5))]);
    cases
}
