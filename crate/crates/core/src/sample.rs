//! Seeded random objects and cuts for property checks.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::elliptic::{EllipticObject, StableClass};
use crate::families::StabilityFamily;
use crate::object::{Object, Point};
use crate::p1::{DerivedObject, P1Indec};
use crate::stability::POrder;
use crate::tstructure::{Bound, PointSet, SlopeCut};

/// Bounds for random objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleBounds {
    pub max_summands: usize,
    pub degree: i64,
    pub length: u32,
    pub shift: i64,
    pub max_mult: u64,
    pub rank: i64,
    pub points: Vec<Point>,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            max_summands: 6,
            degree: 8,
            length: 4,
            shift: 3,
            max_mult: 3,
            rank: 4,
            points: ["x", "y", "z"].iter().map(|l| Point::new(l)).collect(),
        }
    }
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A nonzero object with `1..=max_summands` summands.
pub fn random_object<R: Rng>(rng: &mut R, b: &SampleBounds) -> DerivedObject {
    let n = rng.gen_range(1..=b.max_summands);
    Object::normalize((0..n).map(|_| {
        let base = if rng.gen_bool(0.7) || b.points.is_empty() {
            P1Indec::Line(rng.gen_range(-b.degree..=b.degree))
        } else {
            P1Indec::Torsion { point: b.points[rng.gen_range(0..b.points.len())].clone(), length: rng.gen_range(1..=b.length) }
        };
        (base.at(rng.gen_range(-b.shift..=b.shift)), rng.gen_range(1..=b.max_mult))
    }))
}

pub fn random_objects(seed: u64, count: usize, b: &SampleBounds) -> Vec<DerivedObject> {
    let mut r = rng(seed);
    (0..count).map(|_| random_object(&mut r, b)).collect()
}

/// A random stable class on the elliptic curve.
pub fn random_class<R: Rng>(rng: &mut R, b: &SampleBounds) -> StableClass {
    let x = b.points[rng.gen_range(0..b.points.len())].label().to_string();
    if rng.gen_bool(0.2) {
        return StableClass::skyscraper(&x);
    }
    loop {
        let r = rng.gen_range(1..=b.rank);
        let d = rng.gen_range(-b.degree..=b.degree);
        if let Ok(c) = StableClass::new(r, d, &x) {
            return c;
        }
    }
}

/// A nonzero elliptic object.
pub fn random_elliptic_object<R: Rng>(rng: &mut R, b: &SampleBounds) -> EllipticObject {
    let n = rng.gen_range(1..=b.max_summands);
    Object::normalize((0..n).map(|_| (random_class(rng, b).at(rng.gen_range(-b.shift..=b.shift)), rng.gen_range(1..=b.max_mult))))
}

/// A random valid cut for the family.
pub fn random_cut<R: Rng>(rng: &mut R, family: &StabilityFamily) -> SlopeCut {
    match family {
        StabilityFamily::Standard(s) => {
            let m = rng.gen_range(-3..=3);
            let k = match rng.gen_range(0..4) {
                0 => Bound::NegInf,
                1 => Bound::PosInf,
                _ => Bound::Finite(rng.gen_range(-6..=6)),
            };
            let listed = s.point_order.points();
            let points = match rng.gen_range(0..3) {
                0 => PointSet::All,
                1 => PointSet::None,
                _ => {
                    let top = rng.gen_range(0..=listed.len());
                    PointSet::Set(listed[listed.len() - top..].iter().cloned().collect())
                }
            };
            SlopeCut::Standard { m, k, points }
        }
        StabilityFamily::Exceptional(e) => match e.p {
            POrder::Finite(p) => {
                let a = rng.gen_range(-4..=4);
                let b = a - p as i64 - rng.gen_range(1..=2);
                SlopeCut::exceptional(Bound::Finite(a), Bound::Finite(b))
            }
            POrder::Infinite => match rng.gen_range(0..3) {
                0 => SlopeCut::exceptional(Bound::Finite(rng.gen_range(-4..=4)), Bound::NegInf),
                1 => SlopeCut::exceptional(Bound::PosInf, Bound::Finite(rng.gen_range(-4..=4))),
                _ => SlopeCut::exceptional(Bound::PosInf, Bound::NegInf),
            },
        },
        _ => SlopeCut::Coarse { m: rng.gen_range(-3..=3) },
    }
}
