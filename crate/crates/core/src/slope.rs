//! Slopes built from positive systems of additive functions on K0.
//!
//! A slope value is a vector whose components are either the maximal value
//! `One` or `Nu(q)`, standing for `arcctg(q) / pi`. Since arcctg is strictly
//! decreasing, `Nu` components are ordered by reversing the rational order of
//! their arguments. No floating-point value ever takes part in a comparison.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A class in a free abelian model of K0, one integer per additive function.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct K0Class {
    pub components: Vec<i64>,
}

impl K0Class {
    pub fn new(components: Vec<i64>) -> Self {
        K0Class { components }
    }

    /// The class `(rank, degree)` on a curve.
    pub fn rank_degree(rank: i64, degree: i64) -> Self {
        K0Class { components: vec![rank, degree] }
    }

    pub fn zero(arity: usize) -> Self {
        K0Class { components: vec![0; arity] }
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| *c == 0)
    }

    pub fn rank(&self) -> i64 {
        self.components[0]
    }

    pub fn degree(&self) -> i64 {
        self.components[1]
    }

    pub fn scale(&self, m: i64) -> Self {
        K0Class { components: self.components.iter().map(|c| c * m).collect() }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        assert_eq!(self.arity(), other.arity(), "K0 classes of different arity");
        K0Class {
            components: self.components.iter().zip(&other.components).map(|(a, b)| f(*a, *b)).collect(),
        }
    }
}

impl Add for &K0Class {
    type Output = K0Class;
    fn add(self, rhs: &K0Class) -> K0Class {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &K0Class {
    type Output = K0Class;
    fn sub(self, rhs: &K0Class) -> K0Class {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &K0Class {
    type Output = K0Class;
    fn neg(self) -> K0Class {
        self.scale(-1)
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A system of additive functions `(x_0, ..., x_{r-1})` on K0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositiveSystem {
    pub labels: Vec<String>,
    /// Whether the all-zero vector is only attained by the zero object.
    pub is_base: bool,
}

impl PositiveSystem {
    pub fn new(labels: &[&str], is_base: bool) -> Self {
        assert!(!labels.is_empty(), "a positive system needs at least one function");
        PositiveSystem { labels: labels.iter().map(|s| s.to_string()).collect(), is_base }
    }

    /// `(rk, deg)` on the coherent sheaves of a curve; a positive base.
    pub fn rank_degree() -> Self {
        Self::new(&["rk", "deg"], true)
    }

    pub fn arity(&self) -> usize {
        self.labels.len()
    }

    fn check_arity(&self, cls: &K0Class) -> Result<()> {
        if cls.arity() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), got: cls.arity() });
        }
        Ok(())
    }
}

/// Why a sample failed [`check_positive`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PositivityViolation {
    /// Component `index` is negative although all earlier components vanish.
    Negative { class: K0Class, index: usize },
    /// All but the last component vanish and the last is not strictly positive.
    LastNotPositive { class: K0Class },
    /// The zero vector, flagged only for a positive base.
    ZeroVector { class: K0Class },
}

fn positivity_violation(system: &PositiveSystem, cls: &K0Class) -> Option<PositivityViolation> {
    let r = system.arity();
    let c = &cls.components;
    if cls.is_zero() {
        return system.is_base.then(|| PositivityViolation::ZeroVector { class: cls.clone() });
    }
    for i in 0..r {
        if c[i] < 0 {
            return Some(if i == r - 1 {
                PositivityViolation::LastNotPositive { class: cls.clone() }
            } else {
                PositivityViolation::Negative { class: cls.clone(), index: i }
            });
        }
        if c[i] > 0 {
            return None;
        }
    }
    unreachable!("nonzero class has a nonzero component")
}

/// Checks the cascading positivity conditions on every sample.
pub fn check_positive(system: &PositiveSystem, samples: &[K0Class]) -> Result<Vec<PositivityViolation>> {
    samples
        .iter()
        .map(|s| system.check_arity(s).map(|_| positivity_violation(system, s)))
        .filter_map(|r| r.transpose())
        .collect()
}

/// One component of a slope vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlopeComponent {
    /// `arcctg(q) / pi`.
    Nu(Rational64),
    One,
}

impl SlopeComponent {
    /// Float rendering for display; never used for ordering.
    pub fn approx(&self) -> f64 {
        match self {
            SlopeComponent::One => 1.0,
            SlopeComponent::Nu(q) => {
                let x = *q.numer() as f64 / *q.denom() as f64;
                (std::f64::consts::FRAC_PI_2 - x.atan()) / std::f64::consts::PI
            }
        }
    }
}

impl Ord for SlopeComponent {
    fn cmp(&self, other: &Self) -> Ordering {
        use SlopeComponent::*;
        match (self, other) {
            (One, One) => Ordering::Equal,
            (One, Nu(_)) => Ordering::Greater,
            (Nu(_), One) => Ordering::Less,
            (Nu(a), Nu(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for SlopeComponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SlopeComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeComponent::One => write!(f, "1"),
            SlopeComponent::Nu(q) => write!(f, "nu({q})"),
        }
    }
}

/// The vector slope `gamma` of a nonzero class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SlopeValue {
    pub components: Vec<SlopeComponent>,
}

impl SlopeValue {
    pub fn approx(&self) -> Vec<f64> {
        self.components.iter().map(SlopeComponent::approx).collect()
    }
}

impl fmt::Display for SlopeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Computes `gamma(cls)`: `s` leading ones, where `s` is the index of the
/// first nonzero component, followed by `Nu(-x_{s+j} / x_s)`.
pub fn gamma_slope(system: &PositiveSystem, cls: &K0Class) -> Result<SlopeValue> {
    system.check_arity(cls)?;
    if cls.is_zero() {
        return Err(Error::ZeroClass);
    }
    if positivity_violation(system, cls).is_some() {
        return Err(Error::NotPositive(cls.to_string()));
    }
    let c = &cls.components;
    let r = c.len();
    let s = c.iter().position(|x| *x != 0).expect("nonzero class");
    let mut components = vec![SlopeComponent::One; s];
    // x_s > 0 by positivity and minimality of s, so the b = 0 branch never occurs here
    components.extend((s + 1..r).map(|j| SlopeComponent::Nu(Rational64::new(-c[j], c[s]))));
    Ok(SlopeValue { components })
}

/// Lexicographic comparison of slope vectors of equal length.
pub fn compare_slopes(a: &SlopeValue, b: &SlopeValue) -> Result<Ordering> {
    if a.components.len() != b.components.len() {
        return Err(Error::LengthMismatch(a.components.len(), b.components.len()));
    }
    Ok(a.components.cmp(&b.components))
}

/// A rational number or `+inf`, totally ordered with `+inf` maximal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtendedRational {
    Finite(Rational64),
    PlusInfinity,
}

impl ExtendedRational {
    pub fn int(n: i64) -> Self {
        ExtendedRational::Finite(Rational64::from_integer(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        ExtendedRational::Finite(Rational64::new(n, d))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedRational::PlusInfinity)
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(q) => write!(f, "{q}"),
            ExtendedRational::PlusInfinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for ExtendedRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "+inf" | "infinity" | "oo") {
            return Ok(ExtendedRational::PlusInfinity);
        }
        let bad = || Error::Precondition(format!("not a rational number: `{s}`"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim().parse::<i64>().map_err(|_| bad())?, d.trim().parse::<i64>().map_err(|_| bad())?),
            None => (s.parse::<i64>().map_err(|_| bad())?, 1),
        };
        if d == 0 {
            return Err(bad());
        }
        Ok(ExtendedRational::ratio(n, d))
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtendedRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `deg / rk`, or `+inf` for torsion classes.
pub fn mu_bar(cls: &K0Class) -> Result<ExtendedRational> {
    let system = PositiveSystem::rank_degree();
    system.check_arity(cls)?;
    if cls.is_zero() {
        return Err(Error::ZeroClass);
    }
    if positivity_violation(&system, cls).is_some() {
        return Err(Error::NotPositive(cls.to_string()));
    }
    Ok(if cls.rank() == 0 {
        ExtendedRational::PlusInfinity
    } else {
        ExtendedRational::ratio(cls.degree(), cls.rank())
    })
}

/// Which seesaw alternative a short exact sequence `0 -> A -> B -> C -> 0` exhibits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Seesaw {
    /// `A < B < C`.
    Increasing,
    /// `A > B > C`.
    Decreasing,
    /// All three slopes equal.
    Equal,
    /// None of the alternatives holds.
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeesawReport {
    pub sub: SlopeValue,
    pub middle: SlopeValue,
    pub quotient: SlopeValue,
    pub alternative: Seesaw,
}

impl SeesawReport {
    pub fn holds(&self) -> bool {
        self.alternative != Seesaw::Mixed
    }
}

/// Checks the seesaw property for the classes `a`, `a + c`, `c`.
pub fn seesaw_check(system: &PositiveSystem, a: &K0Class, c: &K0Class) -> Result<SeesawReport> {
    system.check_arity(a)?;
    system.check_arity(c)?;
    let b = a + c;
    let ga = gamma_slope(system, a)?;
    let gb = gamma_slope(system, &b)?;
    let gc = gamma_slope(system, c)?;
    let ab = compare_slopes(&ga, &gb)?;
    let ac = compare_slopes(&ga, &gc)?;
    let bc = compare_slopes(&gb, &gc)?;
    let alternative = match (ab, ac, bc) {
        (Ordering::Less, Ordering::Less, Ordering::Less) => Seesaw::Increasing,
        (Ordering::Greater, Ordering::Greater, Ordering::Greater) => Seesaw::Decreasing,
        (Ordering::Equal, Ordering::Equal, Ordering::Equal) => Seesaw::Equal,
        _ => Seesaw::Mixed,
    };
    Ok(SeesawReport { sub: ga, middle: gb, quotient: gc, alternative })
}
