//! Seeded generators for the structured test families.

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{Element, Payload};
use crate::error::{domain, Error, Result};
use crate::fusion::{lattice_sphere_points, positive_words, sphere_words, IrrLabel, RingId, RingKind};

/// Hard cap on the number of labels a generated element may carry.
const MAX_GENERATED_LABELS: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyKind {
    /// `c_k = ρ^k`.
    Geometric { rho: f64 },
    /// Sorted uniform draws, normalized to `c_0 = 1`.
    Monotone,
    /// `c_k = e^{−t k}`.
    Heat { t: f64 },
    /// Random complex coefficients on the sphere of radius `level`.
    SphereUniform { level: usize },
    /// Random complex coefficients on positive words of length `level`.
    Holomorphic { level: usize },
}

impl std::str::FromStr for FamilyKind {
    type Err = Error;

    /// `geometric:rho=…`, `heat:t=…`, `monotone`, `sphere:level=…`, `holomorphic:level=…`.
    fn from_str(text: &str) -> Result<Self> {
        let (name, params) = text.split_once(':').unwrap_or((text, ""));
        let mut values = std::collections::BTreeMap::new();
        for part in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let Some((k, v)) = part.split_once('=') else {
                return domain(format!("family parameter {part:?} is not key=value"));
            };
            let v: f64 = v.trim().parse().or_else(|_| domain(format!("family parameter {part:?} is not numeric")))?;
            values.insert(k.trim().to_string(), v);
        }
        let mut take = |key: &str| values.remove(key).ok_or_else(|| Error::Domain(format!("family {name} needs {key}=…")));
        let level = |v: f64| {
            if v >= 0.0 && v.fract() == 0.0 {
                Ok(v as usize)
            } else {
                domain(format!("level {v} must be a nonnegative integer"))
            }
        };
        let kind = match name.trim() {
            "geometric" => FamilyKind::Geometric { rho: take("rho")? },
            "heat" => FamilyKind::Heat { t: take("t")? },
            "monotone" => FamilyKind::Monotone,
            "sphere" | "sphere_uniform" => FamilyKind::SphereUniform { level: level(take("level")?)? },
            "holomorphic" => FamilyKind::Holomorphic { level: level(take("level")?)? },
            other => return domain(format!("unknown family {other:?}")),
        };
        if let Some(extra) = values.keys().next() {
            return domain(format!("unknown family parameter {extra:?}"));
        }
        Ok(kind)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    #[serde(flatten)]
    pub kind: FamilyKind,
    pub seed: u64,
    /// Largest level for radial families; largest support size for sphere families.
    pub support_cap: usize,
}

impl FamilySpec {
    pub fn new(kind: FamilyKind, seed: u64, support_cap: usize) -> Self {
        FamilySpec { kind, seed, support_cap }
    }

    pub fn is_randomized(&self) -> bool {
        !matches!(self.kind, FamilyKind::Geometric { .. } | FamilyKind::Heat { .. })
    }

    fn validate(&self, ring: &RingId) -> Result<()> {
        match self.kind {
            FamilyKind::Geometric { rho } if !(rho > 0.0 && rho < 1.0) => {
                domain(format!("geometric ratio {rho} outside (0, 1)"))
            }
            FamilyKind::Heat { t } if !(t > 0.0 && t.is_finite()) => domain(format!("heat time {t} must be positive")),
            FamilyKind::Holomorphic { .. } if !matches!(ring.kind(), RingKind::FreeGroup(_)) => {
                domain(format!("holomorphic family needs a free group, got {ring}"))
            }
            FamilyKind::SphereUniform { .. } | FamilyKind::Holomorphic { .. } if self.support_cap == 0 => {
                domain("support cap must be positive")
            }
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyMetadata {
    /// Largest tail constant `max_k Σ_{m≥k} c_m/(m+1) / c_k` over the generated radial profiles.
    pub d_constant: Option<f64>,
    /// Every radial profile is real, nonnegative and nonincreasing.
    pub monotone: bool,
    /// Level at which the radial profiles are truncated.
    pub truncation: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratedFamily {
    pub elements: Vec<Element>,
    pub metadata: FamilyMetadata,
}

/// Generates `count` members of a family; identical inputs give bit-identical output.
pub fn generate_family(ring: &RingId, spec: &FamilySpec, count: usize) -> Result<GeneratedFamily> {
    spec.validate(ring)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let k = spec.support_cap;
    let mut elements = Vec::with_capacity(count);
    let mut d_constant: Option<f64> = None;
    let mut monotone = true;
    let radial_shell = match spec.kind {
        FamilyKind::Geometric { .. } | FamilyKind::Heat { .. } | FamilyKind::Monotone => Some(radial_labels(ring, k)?),
        _ => None,
    };
    for _ in 0..count {
        let elem = match spec.kind {
            FamilyKind::Geometric { rho } => {
                let c: Vec<f64> = (0..=k).map(|j| rho.powi(j as i32)).collect();
                track(&c, &mut d_constant, &mut monotone);
                radial_element(ring, &c, radial_shell.as_deref())?
            }
            FamilyKind::Heat { t } => {
                let c: Vec<f64> = (0..=k).map(|j| (-t * j as f64).exp()).collect();
                track(&c, &mut d_constant, &mut monotone);
                radial_element(ring, &c, radial_shell.as_deref())?
            }
            FamilyKind::Monotone => {
                let mut c: Vec<f64> = (0..=k).map(|_| rng.gen::<f64>()).collect();
                c.sort_by(|a, b| b.total_cmp(a));
                let top = c[0];
                c.iter_mut().for_each(|x| *x /= top);
                track(&c, &mut d_constant, &mut monotone);
                radial_element(ring, &c, radial_shell.as_deref())?
            }
            FamilyKind::SphereUniform { level } => sphere_element(ring, level, k, &mut rng)?,
            FamilyKind::Holomorphic { level } => {
                let n = ring.generators().expect("free group");
                let words = checked_words(n as u16, level, true)?;
                random_on(ring, words.into_iter().map(IrrLabel::Word).collect(), k, &mut rng)?
            }
        };
        elements.push(elem);
    }
    let truncation = match spec.kind {
        FamilyKind::SphereUniform { level } | FamilyKind::Holomorphic { level } => level,
        _ => k,
    };
    Ok(GeneratedFamily { elements, metadata: FamilyMetadata { d_constant, monotone, truncation } })
}

/// `max_k (Σ_{m≥k} c_m/(m+1)) / c_k` over the support; `None` if some `c_k` vanishes with a positive tail.
pub fn tail_constant(c: &[f64]) -> Option<f64> {
    let mut tail = 0.0;
    let mut best: f64 = 0.0;
    for (k, &ck) in c.iter().enumerate().rev() {
        tail += ck / (k as f64 + 1.0);
        if ck > 0.0 {
            best = best.max(tail / ck);
        } else if tail > 0.0 {
            return None;
        }
    }
    Some(best)
}

fn track(c: &[f64], d: &mut Option<f64>, monotone: &mut bool) {
    *monotone &= c.iter().all(|&x| x >= 0.0) && c.windows(2).all(|w| w[0] >= w[1]);
    let here = tail_constant(c).unwrap_or(f64::INFINITY);
    *d = Some(d.map_or(here, |x| x.max(here)));
}

fn checked_words(n: u16, level: usize, positive: bool) -> Result<Vec<crate::fusion::Word>> {
    let base: f64 = if positive { n as f64 } else { 2.0 * n as f64 - 1.0 };
    let approx = if positive { base.powi(level as i32) } else { 2.0 * n as f64 * base.powi(level as i32 - 1) };
    if level > 0 && approx > MAX_GENERATED_LABELS as f64 {
        return Err(Error::Resource(format!("sphere of radius {level} in F_{n} is too large to enumerate")));
    }
    Ok(if positive { positive_words(n, level) } else { sphere_words(n, level) })
}

fn sphere_labels(ring: &RingId, level: usize) -> Result<Vec<IrrLabel>> {
    Ok(match ring.kind() {
        RingKind::OnPlus(_) | RingKind::SnPlus(_) => vec![IrrLabel::Level(level as u32)],
        RingKind::FreeGroup(n) => checked_words(n as u16, level, false)?.into_iter().map(IrrLabel::Word).collect(),
        RingKind::Lattice(_) | RingKind::QTorus { .. } => {
            let d = ring.torus_dim().expect("torus ring");
            let count = crate::fusion::lattice_sphere_count(d, level);
            if count > num_bigint::BigUint::from(MAX_GENERATED_LABELS) {
                return Err(Error::Resource(format!("lattice sphere of radius {level} is too large to enumerate")));
            }
            lattice_sphere_points(d, level).into_iter().map(IrrLabel::Vector).collect()
        }
    })
}

/// Labels of each sphere `0..=k` for point rings; `None` for level rings.
fn radial_labels(ring: &RingId, k: usize) -> Result<Vec<Vec<IrrLabel>>> {
    if ring.is_level_ring() {
        return Ok(Vec::new());
    }
    let mut total = 0usize;
    let mut out = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let shell = sphere_labels(ring, j)?;
        total += shell.len();
        if total > MAX_GENERATED_LABELS {
            return Err(Error::Resource(format!("ball of radius {k} in {ring} is too large to enumerate")));
        }
        out.push(shell);
    }
    Ok(out)
}

fn radial_element(ring: &RingId, c: &[f64], shells: Option<&[Vec<IrrLabel>]>) -> Result<Element> {
    if ring.is_level_ring() {
        return Element::central_real(*ring, c);
    }
    let shells = shells.expect("point ring shells");
    let terms = shells
        .iter()
        .zip(c)
        .flat_map(|(shell, &ck)| shell.iter().map(move |l| (l.clone(), Complex64::new(ck, 0.0))));
    Element::points(*ring, terms)
}

fn complex_normal(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn sphere_element(ring: &RingId, level: usize, cap: usize, rng: &mut ChaCha8Rng) -> Result<Element> {
    if ring.is_level_ring() {
        let mut c = vec![Complex64::new(0.0, 0.0); level + 1];
        c[level] = complex_normal(rng);
        return super::make_element(*ring, Payload::Central(c));
    }
    random_on(ring, sphere_labels(ring, level)?, cap, rng)
}

fn random_on(ring: &RingId, labels: Vec<IrrLabel>, cap: usize, rng: &mut ChaCha8Rng) -> Result<Element> {
    let chosen: Vec<IrrLabel> = if labels.len() > cap {
        let mut idx = sample(rng, labels.len(), cap).into_vec();
        idx.sort_unstable();
        idx.into_iter().map(|i| labels[i].clone()).collect()
    } else {
        labels
    };
    let terms: Vec<(IrrLabel, Complex64)> = chosen.into_iter().map(|l| (l, complex_normal(rng))).collect();
    Element::points(*ring, terms)
}
