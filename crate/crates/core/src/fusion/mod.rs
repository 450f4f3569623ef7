//! Representation rings of the supported duals.
//!
//! Five rings are modelled: the free orthogonal quantum groups `O_N⁺`, the free
//! permutation quantum groups `S_{N+2}⁺`, free groups `𝔽_N`, lattices `ℤ^d` and the
//! rational rotation algebras `𝕋²_θ`. The first two share the fusion rules of `SU(2)`
//! and `SO(3)` respectively; the others are group duals whose irreducibles are
//! one-dimensional.

mod word;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

pub use word::{positive_words, sphere_words, Word};

/// Levels up to this index are computed in machine integers before switching to
/// arbitrary precision.
pub const BIGINT_SWITCH_LEVEL: usize = 40;

/// Default cap on the number of factors in [`trivial_multiplicity_in_power`].
pub const DEFAULT_MOMENT_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    /// `O_N⁺`, `N ≥ 2`.
    OnPlus(u32),
    /// `S_{N+2}⁺`, stored by `N = M − 2 ≥ 2`.
    SnPlus(u32),
    /// Dual of the free group on `N ≥ 1` generators.
    FreeGroup(u32),
    /// Dual of `ℤ^d`.
    Lattice(u32),
    /// Rotation algebra `𝕋²_θ` with `θ = num/den` reduced, `0 ≤ num < den`.
    QTorus { num: u64, den: u64 },
}

/// A validated ring descriptor. Construct through the named constructors or `FromStr`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingId(RingKind);

impl RingId {
    pub fn on_plus(n: u32) -> Result<Self> {
        if n < 2 {
            return domain(format!("O_N+ needs N >= 2, got {n}"));
        }
        Ok(RingId(RingKind::OnPlus(n)))
    }

    /// `S_M⁺` for `M ≥ 4`.
    pub fn sn_plus(m: u32) -> Result<Self> {
        if m < 4 {
            return domain(format!("S_M+ needs M >= 4, got {m}"));
        }
        Ok(RingId(RingKind::SnPlus(m - 2)))
    }

    pub fn free_group(n: u32) -> Result<Self> {
        if !(1..=26).contains(&n) {
            return domain(format!("free group rank must be in 1..=26, got {n}"));
        }
        Ok(RingId(RingKind::FreeGroup(n)))
    }

    pub fn lattice(d: u32) -> Result<Self> {
        if d < 1 {
            return domain("lattice dimension must be >= 1");
        }
        Ok(RingId(RingKind::Lattice(d)))
    }

    /// `θ = num/den`, which must already be in lowest terms with `0 ≤ num < den`.
    pub fn qtorus(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num >= den {
            return domain(format!("theta {num}/{den} must satisfy 0 <= num < den"));
        }
        if num.gcd(&den) != 1 {
            return domain(format!("theta {num}/{den} is not in lowest terms"));
        }
        Ok(RingId(RingKind::QTorus { num, den }))
    }

    pub fn kind(&self) -> RingKind {
        self.0
    }

    /// Rings whose irreducibles are indexed by levels `0, 1, 2, …`.
    pub fn is_level_ring(&self) -> bool {
        matches!(self.0, RingKind::OnPlus(_) | RingKind::SnPlus(_))
    }

    /// The recursion parameter `N` for `O_N⁺` / `S_{N+2}⁺`.
    pub fn level_parameter(&self) -> Option<u32> {
        match self.0 {
            RingKind::OnPlus(n) | RingKind::SnPlus(n) => Some(n),
            _ => None,
        }
    }

    /// Largest root of `X² − N X + 1`, the exponential growth rate of the level dimensions.
    pub fn r0(&self) -> Option<f64> {
        self.level_parameter().map(|n| {
            let n = n as f64;
            (n + (n * n - 4.0).max(0.0).sqrt()) / 2.0
        })
    }

    /// Number of free generators for `𝔽_N`.
    pub fn generators(&self) -> Option<u32> {
        match self.0 {
            RingKind::FreeGroup(n) => Some(n),
            _ => None,
        }
    }

    /// Dimension of the underlying torus for lattice-type rings.
    pub fn torus_dim(&self) -> Option<usize> {
        match self.0 {
            RingKind::Lattice(d) => Some(d as usize),
            RingKind::QTorus { .. } => Some(2),
            _ => None,
        }
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            RingKind::OnPlus(n) => write!(f, "onplus:{n}"),
            RingKind::SnPlus(n) => write!(f, "snplus:{}", n + 2),
            RingKind::FreeGroup(n) => write!(f, "free:{n}"),
            RingKind::Lattice(d) => write!(f, "lattice:{d}"),
            RingKind::QTorus { num, den } => write!(f, "qtorus:{num}/{den}"),
        }
    }
}

impl serde::Serialize for RingId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for RingId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for RingId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, param) = s
            .split_once(':')
            .ok_or_else(|| Error::Domain(format!("ring descriptor {s:?} must look like kind:params")))?;
        let int = |p: &str| -> Result<u32> {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::Domain(format!("invalid ring parameter {p:?}")))
        };
        match kind.trim() {
            "onplus" => RingId::on_plus(int(param)?),
            "snplus" => RingId::sn_plus(int(param)?),
            "free" => RingId::free_group(int(param)?),
            "lattice" => RingId::lattice(int(param)?),
            "qtorus" => {
                let (a, b) = param.split_once('/').unwrap_or((param, "1"));
                let a = a.trim().parse::<u64>().map_err(|_| Error::Domain(format!("invalid theta {param:?}")))?;
                let b = b.trim().parse::<u64>().map_err(|_| Error::Domain(format!("invalid theta {param:?}")))?;
                RingId::qtorus(a, b)
            }
            other => domain(format!("unknown ring kind {other:?}")),
        }
    }
}

/// Label of an irreducible corepresentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrrLabel {
    Level(u32),
    Word(Word),
    Vector(Vec<i64>),
}

impl IrrLabel {
    pub fn trivial_for(ring: &RingId) -> IrrLabel {
        match ring.kind() {
            RingKind::OnPlus(_) | RingKind::SnPlus(_) => IrrLabel::Level(0),
            RingKind::FreeGroup(_) => IrrLabel::Word(Word::identity()),
            RingKind::Lattice(d) => IrrLabel::Vector(vec![0; d as usize]),
            RingKind::QTorus { .. } => IrrLabel::Vector(vec![0; 2]),
        }
    }

    pub fn validate(&self, ring: &RingId) -> Result<()> {
        match (ring.kind(), self) {
            (RingKind::OnPlus(_) | RingKind::SnPlus(_), IrrLabel::Level(_)) => Ok(()),
            (RingKind::FreeGroup(n), IrrLabel::Word(w)) => {
                if w.max_generator() as u32 > n {
                    domain(format!("word {w} uses a generator beyond g_{n}"))
                } else {
                    Ok(())
                }
            }
            (RingKind::Lattice(d), IrrLabel::Vector(v)) if v.len() == d as usize => Ok(()),
            (RingKind::QTorus { .. }, IrrLabel::Vector(v)) if v.len() == 2 => Ok(()),
            _ => domain(format!("label {self:?} is not valid for ring {ring}")),
        }
    }

    /// Natural length without validation.
    pub fn raw_length(&self) -> usize {
        match self {
            IrrLabel::Level(k) => *k as usize,
            IrrLabel::Word(w) => w.len(),
            IrrLabel::Vector(v) => v.iter().map(|x| x.unsigned_abs() as usize).sum(),
        }
    }
}

impl fmt::Display for IrrLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrLabel::Level(k) => write!(f, "{k}"),
            IrrLabel::Word(w) => write!(f, "{w}"),
            IrrLabel::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// Level dimensions `n_0 … n_{kmax}` for `O_N⁺` / `S_{N+2}⁺`.
///
/// `O_N⁺`: `n_0 = 1, n_1 = N`; `S_{N+2}⁺`: `m_0 = 1, m_1 = N + 1`; both continue with
/// `x_{k+1} = N x_k − x_{k−1}`.
pub fn level_dims(ring: &RingId, kmax: usize) -> Result<Vec<BigUint>> {
    let (n, first) = match ring.kind() {
        RingKind::OnPlus(n) => (n as u64, n as u64),
        RingKind::SnPlus(n) => (n as u64, n as u64 + 1),
        _ => return Err(Error::Unsupported(format!("{ring} has no level dimensions"))),
    };
    let mut small: Vec<u64> = Vec::with_capacity(kmax.min(BIGINT_SWITCH_LEVEL) + 1);
    small.push(1);
    if kmax >= 1 {
        small.push(first);
    }
    while small.len() <= kmax.min(BIGINT_SWITCH_LEVEL) {
        let len = small.len();
        // N x_k − x_{k−1} never goes negative since x_k ≥ x_{k−1} and N ≥ 2.
        let next = n
            .checked_mul(small[len - 1])
            .and_then(|v| v.checked_sub(small[len - 2]));
        match next {
            Some(v) => small.push(v),
            None => break,
        }
    }
    let mut out: Vec<BigUint> = small.into_iter().map(BigUint::from).collect();
    let nb = BigUint::from(n);
    while out.len() <= kmax {
        let len = out.len();
        let next = &nb * &out[len - 1] - &out[len - 2];
        out.push(next);
    }
    Ok(out)
}

/// Natural logarithms of the level dimensions.
pub fn ln_level_dims(ring: &RingId, kmax: usize) -> Result<Vec<f64>> {
    Ok(level_dims(ring, kmax)?.iter().map(big_ln).collect())
}

/// `ln x` for an arbitrary-precision positive integer (−∞ for zero).
pub fn big_ln(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Dimension of the irreducible labelled `label`.
pub fn dim(ring: &RingId, label: &IrrLabel) -> Result<BigUint> {
    label.validate(ring)?;
    match label {
        IrrLabel::Level(k) => Ok(level_dims(ring, *k as usize)?.pop().expect("nonempty")),
        _ => Ok(BigUint::one()),
    }
}

/// Natural length: level, reduced word length, or ℓ¹ norm.
pub fn length(ring: &RingId, label: &IrrLabel) -> Result<usize> {
    label.validate(ring)?;
    Ok(label.raw_length())
}

/// Multiplicity of `c` in `a ⊗ b`.
pub fn tensor_multiplicity(ring: &RingId, a: &IrrLabel, b: &IrrLabel, c: &IrrLabel) -> Result<u64> {
    for l in [a, b, c] {
        l.validate(ring)?;
    }
    match (ring.kind(), a, b, c) {
        (RingKind::OnPlus(_), IrrLabel::Level(a), IrrLabel::Level(b), IrrLabel::Level(c)) => {
            let (a, b, c) = (*a as i64, *b as i64, *c as i64);
            Ok(((a - b).abs() <= c && c <= a + b && (a + b + c) % 2 == 0) as u64)
        }
        (RingKind::SnPlus(_), IrrLabel::Level(a), IrrLabel::Level(b), IrrLabel::Level(c)) => {
            let (a, b, c) = (*a as i64, *b as i64, *c as i64);
            Ok(((a - b).abs() <= c && c <= a + b) as u64)
        }
        (RingKind::FreeGroup(_), IrrLabel::Word(a), IrrLabel::Word(b), IrrLabel::Word(c)) => {
            Ok((&a.mul(b) == c) as u64)
        }
        (RingKind::Lattice(_), IrrLabel::Vector(a), IrrLabel::Vector(b), IrrLabel::Vector(c)) => {
            Ok(a.iter().zip(b).zip(c).all(|((x, y), z)| x + y == *z) as u64)
        }
        (RingKind::QTorus { .. }, ..) => Err(Error::Unsupported(
            "rotation-algebra products carry a phase cocycle; multiplicities are not defined".into(),
        )),
        _ => unreachable!("labels validated against ring"),
    }
}

/// Multiplicity of the trivial level in `levels[0] ⊗ levels[1] ⊗ ⋯`, which equals the
/// Haar moment `h(χ_{k_1} ⋯ χ_{k_m})`.
pub fn trivial_multiplicity_in_power(ring: &RingId, levels: &[IrrLabel], cap: usize) -> Result<u128> {
    let step = match ring.kind() {
        RingKind::OnPlus(_) => 2,
        RingKind::SnPlus(_) => 1,
        _ => {
            return Err(Error::Unsupported(format!(
                "moment counting needs a level ring, got {ring}"
            )))
        }
    };
    if levels.is_empty() {
        return domain("need at least one factor");
    }
    if levels.len() > cap {
        return Err(Error::Resource(format!(
            "{} factors exceed the cap of {cap}",
            levels.len()
        )));
    }
    let mut mult: Vec<u128> = vec![1];
    for label in levels {
        label.validate(ring)?;
        let l = label.raw_length();
        let mut next = vec![0u128; mult.len() + l];
        for (a, &m) in mult.iter().enumerate() {
            if m == 0 {
                continue;
            }
            let lo = a.abs_diff(l);
            let mut c = lo;
            while c <= a + l {
                next[c] = next[c]
                    .checked_add(m)
                    .ok_or_else(|| Error::Resource("fusion multiplicity overflowed u128".into()))?;
                c += step;
            }
        }
        mult = next;
    }
    Ok(mult[0])
}

/// Sphere and ball sizes `s_k = Σ_{|α|=k} n_α²`, `b_k = Σ_{j≤k} s_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthProfile {
    pub spheres: Vec<BigUint>,
    pub balls: Vec<BigUint>,
}

impl GrowthProfile {
    pub fn k_max(&self) -> usize {
        self.spheres.len() - 1
    }

    pub fn ln_balls(&self) -> Vec<f64> {
        self.balls.iter().map(big_ln).collect()
    }

    pub fn ln_spheres(&self) -> Vec<f64> {
        self.spheres.iter().map(big_ln).collect()
    }
}

/// Number of points of `ℤ^d` with ℓ¹ norm exactly `k`.
pub fn lattice_sphere_count(d: usize, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    // Σ_i 2^i C(d,i) C(k−1,i−1): choose i nonzero coordinates, their signs, and a composition of k.
    let mut total = BigUint::zero();
    for i in 1..=d.min(k) {
        total += (BigUint::one() << i) * binomial(d, i) * binomial(k - 1, i - 1);
    }
    total
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * BigUint::from(n - j) / BigUint::from(j + 1);
    }
    acc
}

pub fn growth_profile(ring: &RingId, k_max: usize) -> Result<GrowthProfile> {
    let spheres: Vec<BigUint> = match ring.kind() {
        RingKind::OnPlus(_) | RingKind::SnPlus(_) => {
            level_dims(ring, k_max)?.into_iter().map(|n| &n * &n).collect()
        }
        RingKind::FreeGroup(n) => {
            let n = n as u64;
            let mut v = vec![BigUint::one()];
            let mut cur = BigUint::from(2 * n);
            for _ in 1..=k_max {
                v.push(cur.clone());
                cur *= BigUint::from(2 * n - 1);
            }
            v
        }
        RingKind::Lattice(_) | RingKind::QTorus { .. } => {
            let d = ring.torus_dim().expect("torus ring");
            (0..=k_max).map(|k| lattice_sphere_count(d, k)).collect()
        }
    };
    let mut balls = Vec::with_capacity(spheres.len());
    let mut acc = BigUint::zero();
    for s in &spheres {
        acc += s;
        balls.push(acc.clone());
    }
    Ok(GrowthProfile { spheres, balls })
}

/// All lattice points of ℓ¹ norm exactly `k` in `ℤ^d`, lexicographically sorted.
pub fn lattice_sphere_points(d: usize, k: usize) -> Vec<Vec<i64>> {
    fn rec(d: usize, remaining: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() + 1 == d {
            if remaining == 0 {
                prefix.push(0);
                out.push(prefix.clone());
                prefix.pop();
            } else {
                for v in [-remaining, remaining] {
                    prefix.push(v);
                    out.push(prefix.clone());
                    prefix.pop();
                }
            }
            return;
        }
        for v in -remaining..=remaining {
            prefix.push(v);
            rec(d, remaining - v.abs(), prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, k as i64, &mut Vec::with_capacity(d), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn on(n: u32) -> RingId {
        RingId::on_plus(n).unwrap()
    }

    fn lv(k: u32) -> IrrLabel {
        IrrLabel::Level(k)
    }

    #[test]
    fn dims_follow_the_recursions() {
        assert_eq!(dim(&on(2), &lv(5)).unwrap(), BigUint::from(6u32));
        assert_eq!(dim(&on(3), &lv(0)).unwrap(), BigUint::one());
        assert_eq!(dim(&on(3), &lv(3)).unwrap(), BigUint::from(21u32));
        let s5 = RingId::sn_plus(5).unwrap();
        let d: Vec<u64> = level_dims(&s5, 4).unwrap().iter().map(|x| x.to_u64().unwrap()).collect();
        // N = 3: 1, 4, 3·4−1, 3·11−4, …
        assert_eq!(d, vec![1, 4, 11, 29, 76]);
        let s4 = RingId::sn_plus(4).unwrap();
        let d: Vec<u64> = level_dims(&s4, 3).unwrap().iter().map(|x| x.to_u64().unwrap()).collect();
        assert_eq!(d, vec![1, 3, 5, 7]);
    }

    #[test]
    fn dims_cross_the_bigint_threshold() {
        let d = level_dims(&on(3), 120).unwrap();
        for k in 2..=120 {
            assert_eq!(&d[k] + &d[k - 2], BigUint::from(3u32) * &d[k - 1]);
        }
        assert!(d[100].bits() > 64);
    }

    #[test]
    fn group_duals_are_one_dimensional() {
        let f2 = RingId::free_group(2).unwrap();
        let w = IrrLabel::Word(Word::parse("abA").unwrap());
        assert_eq!(dim(&f2, &w).unwrap(), BigUint::one());
        assert_eq!(length(&f2, &w).unwrap(), 3);
        let z2 = RingId::lattice(2).unwrap();
        assert_eq!(length(&z2, &IrrLabel::Vector(vec![2, -1])).unwrap(), 3);
        assert_eq!(length(&on(3), &lv(7)).unwrap(), 7);
    }

    #[test]
    fn invalid_labels_are_domain_errors() {
        let f2 = RingId::free_group(2).unwrap();
        assert!(dim(&f2, &lv(1)).is_err());
        assert!(dim(&f2, &IrrLabel::Word(Word::parse("c").unwrap())).is_err());
        assert!(dim(&on(3), &IrrLabel::Vector(vec![1])).is_err());
        assert!(length(&RingId::lattice(2).unwrap(), &IrrLabel::Vector(vec![1])).is_err());
    }

    #[test]
    fn ring_parameters_are_enforced() {
        assert!(RingId::on_plus(1).is_err());
        assert!(RingId::sn_plus(3).is_err());
        assert!(RingId::free_group(0).is_err());
        assert!(RingId::lattice(0).is_err());
        assert!(RingId::qtorus(2, 4).is_err());
        assert!(RingId::qtorus(3, 3).is_err());
        assert!(RingId::qtorus(0, 1).is_ok());
        assert!(RingId::qtorus(2, 5).is_ok());
    }

    #[test]
    fn ring_descriptors_round_trip() {
        for s in ["onplus:3", "snplus:5", "free:2", "lattice:2", "qtorus:1/3", "qtorus:0/1"] {
            let r: RingId = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("snplus:5".parse::<RingId>().unwrap().level_parameter(), Some(3));
        assert!("qtorus:2/6".parse::<RingId>().is_err());
        assert!("torus:2".parse::<RingId>().is_err());
    }

    #[test]
    fn tensor_rules() {
        let o3 = on(3);
        assert_eq!(tensor_multiplicity(&o3, &lv(1), &lv(1), &lv(0)).unwrap(), 1);
        assert_eq!(tensor_multiplicity(&o3, &lv(1), &lv(1), &lv(1)).unwrap(), 0);
        let s5 = RingId::sn_plus(5).unwrap();
        assert_eq!(tensor_multiplicity(&s5, &lv(1), &lv(1), &lv(1)).unwrap(), 1);
        let f2 = RingId::free_group(2).unwrap();
        let w = |s: &str| IrrLabel::Word(Word::parse(s).unwrap());
        assert_eq!(tensor_multiplicity(&f2, &w("ab"), &w("Ba"), &w("aa")).unwrap(), 1);
        assert_eq!(tensor_multiplicity(&f2, &w("ab"), &w("a"), &w("aa")).unwrap(), 0);
        let z2 = RingId::lattice(2).unwrap();
        let v = |a: i64, b: i64| IrrLabel::Vector(vec![a, b]);
        assert_eq!(tensor_multiplicity(&z2, &v(1, 2), &v(-1, 0), &v(0, 2)).unwrap(), 1);
        let qt = RingId::qtorus(1, 3).unwrap();
        assert!(matches!(
            tensor_multiplicity(&qt, &v(0, 0), &v(0, 0), &v(0, 0)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn moments_count_catalan_paths() {
        let o3 = on(3);
        let ones = |m: usize| vec![lv(1); m];
        assert_eq!(trivial_multiplicity_in_power(&o3, &ones(4), DEFAULT_MOMENT_CAP).unwrap(), 2);
        assert_eq!(trivial_multiplicity_in_power(&o3, &ones(6), DEFAULT_MOMENT_CAP).unwrap(), 5);
        for k in 1..6 {
            assert_eq!(trivial_multiplicity_in_power(&o3, &[lv(k)], DEFAULT_MOMENT_CAP).unwrap(), 0);
        }
        assert!(matches!(
            trivial_multiplicity_in_power(&o3, &ones(17), DEFAULT_MOMENT_CAP),
            Err(Error::Resource(_))
        ));
        assert!(trivial_multiplicity_in_power(&o3, &[], DEFAULT_MOMENT_CAP).is_err());
    }

    #[test]
    fn growth_examples() {
        let g = growth_profile(&on(2), 2).unwrap();
        let b: Vec<u64> = g.balls.iter().map(|x| x.to_u64().unwrap()).collect();
        assert_eq!(b, vec![1, 5, 14]);
        let g = growth_profile(&RingId::free_group(2).unwrap(), 3).unwrap();
        let s: Vec<u64> = g.spheres.iter().map(|x| x.to_u64().unwrap()).collect();
        assert_eq!(s, vec![1, 4, 12, 36]);
        let g = growth_profile(&RingId::lattice(2).unwrap(), 1).unwrap();
        assert_eq!(g.balls[1], BigUint::from(5u32));
    }

    #[test]
    fn lattice_sphere_points_match_counts() {
        for d in 1..=3 {
            for k in 0..=6 {
                let pts = lattice_sphere_points(d, k);
                assert_eq!(BigUint::from(pts.len()), lattice_sphere_count(d, k), "d={d} k={k}");
                assert!(pts.iter().all(|p| p.iter().map(|x| x.abs()).sum::<i64>() == k as i64));
            }
        }
    }

    #[test]
    fn big_ln_matches_f64_for_small_and_extends_past_overflow() {
        let x = BigUint::from(123456789u64);
        assert!((big_ln(&x) - (123456789f64).ln()).abs() < 1e-12);
        let huge = BigUint::from(3u32).pow(2000);
        assert!((big_ln(&huge) - 2000.0 * 3f64.ln()).abs() < 1e-9);
    }
}
