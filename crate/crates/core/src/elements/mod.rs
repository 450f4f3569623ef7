//! Fourier-side descriptions of test functions.
//!
//! A central element `Σ c_k χ_k` on `O_N⁺`/`S_{N+2}⁺` has Fourier blocks
//! `f̂(k) = (c_k / n_k)·Id_{n_k}`; a group-dual element `Σ f(g) λ_g` has the
//! scalar blocks `f̂(g) = f(g)`.

mod family;
mod json;

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Result};
use crate::fusion::{big_ln, level_dims, IrrLabel, RingId};

pub use family::{generate_family, tail_constant, FamilyKind, FamilyMetadata, FamilySpec, GeneratedFamily};
pub use json::{element_from_json, element_to_json};

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    /// Level-indexed character coefficients `c_0 … c_K`.
    Central(Vec<Complex64>),
    /// Coefficients on individual group or lattice labels.
    Points(BTreeMap<IrrLabel, Complex64>),
}

/// An immutable, canonicalized element of `Pol(𝔾)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    ring: RingId,
    payload: Payload,
}

/// Validates `payload` against `ring` and canonicalizes it (trailing zeros trimmed,
/// zero point coefficients dropped).
pub fn make_element(ring: RingId, payload: Payload) -> Result<Element> {
    match payload {
        Payload::Central(mut c) => {
            if !ring.is_level_ring() {
                return domain(format!("central coefficients need a level ring, got {ring}"));
            }
            if c.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return domain("coefficients must be finite");
            }
            while c.last().is_some_and(|z| z.is_zero()) {
                c.pop();
            }
            Ok(Element { ring, payload: Payload::Central(c) })
        }
        Payload::Points(map) => {
            if ring.is_level_ring() {
                return domain(format!("point coefficients are not supported on {ring}"));
            }
            let mut out = BTreeMap::new();
            for (label, z) in map {
                label.validate(&ring)?;
                if !z.re.is_finite() || !z.im.is_finite() {
                    return domain("coefficients must be finite");
                }
                if !z.is_zero() {
                    out.insert(label, z);
                }
            }
            Ok(Element { ring, payload: Payload::Points(out) })
        }
    }
}

impl Element {
    pub fn central(ring: RingId, coeffs: impl IntoIterator<Item = Complex64>) -> Result<Self> {
        make_element(ring, Payload::Central(coeffs.into_iter().collect()))
    }

    pub fn central_real(ring: RingId, coeffs: &[f64]) -> Result<Self> {
        Self::central(ring, coeffs.iter().map(|&x| Complex64::new(x, 0.0)))
    }

    pub fn points(ring: RingId, terms: impl IntoIterator<Item = (IrrLabel, Complex64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (l, z) in terms {
            *map.entry(l).or_insert(Complex64::zero()) += z;
        }
        make_element(ring, Payload::Points(map))
    }

    /// The unit `1 = χ_0 = λ_e`.
    pub fn one(ring: RingId) -> Self {
        match ring.is_level_ring() {
            true => Self::central(ring, [Complex64::one()]).expect("valid"),
            false => Self::points(ring, [(IrrLabel::trivial_for(&ring), Complex64::one())]).expect("valid"),
        }
    }

    pub fn ring(&self) -> &RingId {
        &self.ring
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn central_coeffs(&self) -> Option<&[Complex64]> {
        match &self.payload {
            Payload::Central(c) => Some(c),
            Payload::Points(_) => None,
        }
    }

    pub fn point_coeffs(&self) -> Option<&BTreeMap<IrrLabel, Complex64>> {
        match &self.payload {
            Payload::Points(m) => Some(m),
            Payload::Central(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.payload {
            Payload::Central(c) => c.is_empty(),
            Payload::Points(m) => m.is_empty(),
        }
    }

    pub fn scaled(&self, lambda: Complex64) -> Element {
        let payload = match &self.payload {
            Payload::Central(c) => Payload::Central(c.iter().map(|z| z * lambda).collect()),
            Payload::Points(m) => Payload::Points(m.iter().map(|(l, z)| (l.clone(), z * lambda)).collect()),
        };
        make_element(self.ring, payload).expect("scaling preserves validity")
    }

    /// Largest label length in the support (0 for the zero element).
    pub fn max_length(&self) -> usize {
        match &self.payload {
            Payload::Central(c) => c.len().saturating_sub(1),
            Payload::Points(m) => m.keys().map(IrrLabel::raw_length).max().unwrap_or(0),
        }
    }

    /// Support restricted to labels of length `k` (the level projection `p_k`).
    pub fn sphere_part(&self, k: usize) -> Element {
        let payload = match &self.payload {
            Payload::Central(c) => {
                let mut v = vec![Complex64::zero(); (k + 1).min(c.len())];
                if k < c.len() {
                    v[k] = c[k];
                }
                Payload::Central(v)
            }
            Payload::Points(m) => Payload::Points(
                m.iter().filter(|(l, _)| l.raw_length() == k).map(|(l, z)| (l.clone(), *z)).collect(),
            ),
        };
        make_element(self.ring, payload).expect("restriction preserves validity")
    }

    /// `(label length, coefficient)` pairs; for central elements the coefficient is `c_k`.
    pub fn length_coefficients(&self) -> Vec<(usize, Complex64)> {
        match &self.payload {
            Payload::Central(c) => c.iter().copied().enumerate().filter(|(_, z)| !z.is_zero()).collect(),
            Payload::Points(m) => m.iter().map(|(l, z)| (l.raw_length(), *z)).collect(),
        }
    }

    /// Sum of `|coefficient|` over the support.
    pub fn l1_coefficients(&self) -> f64 {
        self.length_coefficients().iter().map(|(_, z)| z.norm()).sum()
    }
}

/// A Fourier block `f̂(α)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Block {
    /// `scalar · Id_dim`; `dim` may be astronomically large.
    ScalarIdentity { scalar: Complex64, dim: BigUint },
    Dense(DMatrix<Complex64>),
}

impl Block {
    pub fn ln_dim(&self) -> f64 {
        match self {
            Block::ScalarIdentity { dim, .. } => big_ln(dim),
            Block::Dense(m) => (m.nrows() as f64).ln(),
        }
    }

    /// Singular values with multiplicities.
    pub fn singular_values(&self) -> Vec<(f64, f64)> {
        match self {
            Block::ScalarIdentity { scalar, dim } => {
                vec![(scalar.norm(), dim.to_f64().unwrap_or(f64::INFINITY))]
            }
            Block::Dense(m) => m.clone().singular_values().iter().map(|&s| (s, 1.0)).collect(),
        }
    }

    /// `tr |A|^p = ‖A‖_{S^p}^p`.
    pub fn schatten_pow(&self, p: f64) -> f64 {
        self.singular_values().iter().map(|(s, m)| m * s.powf(p)).sum()
    }

    pub fn hs_norm(&self) -> f64 {
        self.schatten_pow(2.0).sqrt()
    }

    pub fn op_norm(&self) -> f64 {
        self.singular_values().iter().map(|(s, _)| *s).fold(0.0, f64::max)
    }

    /// Materializes the block; panics for dimensions beyond `usize`.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        match self {
            Block::ScalarIdentity { scalar, dim } => {
                let n = dim.to_usize().expect("dimension fits in memory");
                DMatrix::from_diagonal_element(n, n, *scalar)
            }
            Block::Dense(m) => m.clone(),
        }
    }
}

/// Fourier blocks over the support, in label order.
pub fn dual_blocks(e: &Element) -> Vec<(IrrLabel, Block)> {
    match e.payload() {
        Payload::Central(c) => {
            if c.is_empty() {
                return Vec::new();
            }
            let dims = level_dims(e.ring(), c.len() - 1).expect("level ring");
            c.iter()
                .zip(dims)
                .enumerate()
                .filter(|(_, (z, _))| !z.is_zero())
                .map(|(k, (z, n))| {
                    // Huge n goes through logs so it does not overflow.
                    let scalar = match n.to_f64().filter(|x| x.is_finite()) {
                        Some(nf) => z / nf,
                        None => z * (-big_ln(&n)).exp(),
                    };
                    (IrrLabel::Level(k as u32), Block::ScalarIdentity { scalar, dim: n })
                })
                .collect()
        }
        Payload::Points(m) => m
            .iter()
            .map(|(l, z)| (l.clone(), Block::Dense(DMatrix::from_element(1, 1, *z))))
            .collect(),
    }
}

/// `ln n_α` for every label in the support, aligned with [`Element::length_coefficients`].
pub(crate) fn ln_dims_for(e: &Element) -> Vec<f64> {
    match e.payload() {
        Payload::Central(c) if !c.is_empty() => {
            let dims = level_dims(e.ring(), c.len() - 1).expect("level ring");
            c.iter().zip(dims).filter(|(z, _)| !z.is_zero()).map(|(_, n)| big_ln(&n)).collect()
        }
        Payload::Central(_) => Vec::new(),
        Payload::Points(m) => vec![0.0; m.len()],
    }
}
