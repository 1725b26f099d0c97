//! A reduced model of the derived category of an elliptic curve.
//!
//! Indecomposable semistable sheaves of non-coprime type are represented by
//! multiples of stable classes. That keeps K0 classes, slopes and
//! extension-closed subcategories right, which is all HN filtrations, hearts
//! and torsion pairs depend on; it does not model indecomposability.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::object::{hom0, Indecomposable, Object, Point, PointOrder, Shifted, Window};
use crate::slope::{ExtendedRational, K0Class};
use crate::stability::{FamilyDescriptor, Filtration, SlopeId, Stability};

/// A stable sheaf of rank `r` and degree `d` with parameter `x`; `r = 0`
/// means the skyscraper at `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StableClass {
    pub r: i64,
    pub d: i64,
    pub x: Point,
}

pub type EllipticObject = Object<StableClass>;

impl StableClass {
    pub fn new(r: i64, d: i64, x: &str) -> Result<Self> {
        if r < 0 {
            return Err(Error::InvalidClass(format!("rank {r} is negative")));
        }
        if r == 0 && d != 1 {
            return Err(Error::InvalidClass(format!("a torsion class has degree 1, got {d}")));
        }
        if r.gcd(&d) != 1 {
            return Err(Error::InvalidClass(format!("gcd({r}, {d}) != 1")));
        }
        Ok(StableClass { r, d, x: Point::new(x) })
    }

    pub fn skyscraper(x: &str) -> Self {
        StableClass { r: 0, d: 1, x: Point::new(x) }
    }

    pub fn at(self, shift: i64) -> Shifted<StableClass> {
        Shifted::new(self, shift)
    }

    /// `d / r`, or `+inf` for torsion.
    pub fn mu(&self) -> ExtendedRational {
        if self.r == 0 {
            ExtendedRational::PlusInfinity
        } else {
            ExtendedRational::Finite(Rational64::new(self.d, self.r))
        }
    }
}

impl fmt::Display for StableClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{},{})", self.r, self.d, self.x)
    }
}

/// `mu_class`: the slope `d/r` of a stable class.
pub fn mu_class(c: &StableClass) -> ExtendedRational {
    c.mu()
}

/// `dim Ext^degree(e, f)` between stable sheaves on an elliptic curve.
pub fn hom_dim_stable(e: &StableClass, f: &StableClass, degree: i64) -> u64 {
    // chi(e, f) = r_e d_f - d_e r_f
    let chi = e.r * f.d - e.d * f.r;
    let dim = match (degree, e.mu().cmp(&f.mu())) {
        (0 | 1, _) if e == f => 1,
        (0, Ordering::Less) => chi,
        (1, Ordering::Greater) => -chi,
        _ => 0,
    };
    dim as u64
}

impl Indecomposable for StableClass {
    fn k0(&self) -> K0Class {
        K0Class::rank_degree(self.r, self.d)
    }

    fn ext_dim(&self, other: &Self, degree: i64) -> u64 {
        hom_dim_stable(self, other, degree)
    }

    /// Skyscrapers, then bundles by rank and degree, for every window point.
    fn enumerate(window: &Window) -> Vec<Self> {
        let mut out = Vec::new();
        for x in &window.points {
            out.push(StableClass { r: 0, d: 1, x: x.clone() });
            for r in 1..=window.rank as i64 {
                for d in -window.degree..=window.degree {
                    if r.gcd(&d) == 1 {
                        out.push(StableClass { r, d, x: x.clone() });
                    }
                }
            }
        }
        out
    }
}

/// Slopes `(shift, mu, point)` ordered lexicographically, points by the order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EllipticStability {
    pub point_order: PointOrder,
}

impl EllipticStability {
    pub fn new(point_order: PointOrder) -> Self {
        EllipticStability { point_order }
    }
}

impl Stability for EllipticStability {
    type Indec = StableClass;

    fn descriptor(&self) -> FamilyDescriptor {
        FamilyDescriptor::Elliptic { point_order: self.point_order.points().to_vec() }
    }

    fn slope_of(&self, g: &Shifted<StableClass>) -> Result<Option<SlopeId>> {
        Ok(Some(SlopeId::Elliptic { shift: g.shift, mu: g.base.mu(), point: g.base.x.clone() }))
    }

    fn compare(&self, a: &SlopeId, b: &SlopeId) -> Result<Ordering> {
        match (a, b) {
            (SlopeId::Elliptic { shift: i, mu: p, point: x }, SlopeId::Elliptic { shift: j, mu: q, point: y }) => {
                Ok(i.cmp(j).then(p.cmp(q)).then_with(|| self.point_order.cmp(x, y)))
            }
            _ => Err(Error::CrossFamily(a.family_name().into(), b.family_name().into())),
        }
    }

    fn tau(&self, s: &SlopeId) -> Result<SlopeId> {
        match s {
            SlopeId::Elliptic { .. } => Ok(s.shifted(1)),
            _ => Err(Error::CrossFamily("elliptic".into(), s.family_name().into())),
        }
    }

    fn tau_inv(&self, s: &SlopeId) -> Result<SlopeId> {
        self.tau(s).map(|t| t.shifted(-2))
    }

    fn indecomposable_hn(&self, g: &Shifted<StableClass>) -> Result<Filtration<StableClass>> {
        let slope = self.slope_of(g)?.expect("every stable class is semistable");
        Ok(Filtration::singleton(slope, g.clone().into()))
    }

    fn points(&self) -> Vec<Point> {
        self.point_order.points().to_vec()
    }
}

fn check_q(q: &ExtendedRational) -> Result<()> {
    match q {
        ExtendedRational::PlusInfinity => Ok(()),
        ExtendedRational::Finite(v) if *v >= Rational64::from_integer(0) && *v < Rational64::from_integer(1) => Ok(()),
        ExtendedRational::Finite(v) => Err(Error::QOutOfRange(v.to_string())),
    }
}

/// Whether a class lies in `A(q,P)_0 = <mu < q, or mu = q and x in P>`.
pub fn in_a0(c: &StableClass, q: &ExtendedRational, points: &BTreeSet<Point>) -> bool {
    match c.mu().cmp(q) {
        Ordering::Less => true,
        Ordering::Equal => points.contains(&c.x),
        Ordering::Greater => false,
    }
}

/// Splits a sheaf (all summands in shift 0) into its `A(q,P)_1` and
/// `A(q,P)_0` parts and checks `Hom(A_1 part, A_0 part) = 0`.
pub fn a_qp_split(
    x: &EllipticObject,
    q: &ExtendedRational,
    points: &BTreeSet<Point>,
) -> Result<(EllipticObject, EllipticObject)> {
    check_q(q)?;
    let mut a1 = Object::zero();
    let mut a0 = Object::zero();
    for (g, m) in x.terms() {
        if g.shift != 0 {
            return Err(Error::Precondition(format!("{g} is not a sheaf in degree 0")));
        }
        let part = Object::single(g.clone(), m);
        if in_a0(&g.base, q, points) {
            a0.add_assign(&part);
        } else {
            a1.add_assign(&part);
        }
    }
    let d = hom0(&a1, &a0);
    if d != 0 {
        return Err(Error::HomViolation(format!("Hom({a1}, {a0}) has dimension {d}")));
    }
    Ok((a1, a0))
}

/// Whether `x` lies in the heart `<A(q,P)_1, A(q,P)_0[1]>`.
pub fn elliptic_heart_contains(x: &EllipticObject, q: &ExtendedRational, points: &BTreeSet<Point>) -> Result<bool> {
    check_q(q)?;
    Ok(x.terms().all(|(g, _)| match g.shift {
        0 => !in_a0(&g.base, q, points),
        1 => in_a0(&g.base, q, points),
        _ => false,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stability::hn;

    fn s(r: i64, d: i64, x: &str) -> StableClass {
        StableClass::new(r, d, x).unwrap()
    }

    fn q(v: &str) -> ExtendedRational {
        v.parse().unwrap()
    }

    #[test]
    fn class_invariants() {
        assert!(StableClass::new(2, 4, "x").is_err());
        assert!(StableClass::new(0, 2, "x").is_err());
        assert!(StableClass::new(-1, 1, "x").is_err());
        assert_eq!(s(0, 1, "x"), StableClass::skyscraper("x"));
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu_class(&s(1, 0, "l")), q("0"));
        assert_eq!(mu_class(&s(0, 1, "x")), ExtendedRational::PlusInfinity);
        assert_eq!(mu_class(&s(2, 3, "l")), q("3/2"));
    }

    #[test]
    fn hom_examples() {
        assert_eq!(hom_dim_stable(&s(1, 0, "l"), &s(1, 1, "m"), 0), 1);
        assert_eq!(hom_dim_stable(&s(1, 0, "l"), &s(1, 0, "l"), 0), 1);
        assert_eq!(hom_dim_stable(&s(1, 0, "l"), &s(1, 0, "l"), 1), 1);
        for d in 0..=1 {
            assert_eq!(hom_dim_stable(&s(1, 0, "l"), &s(1, 0, "m"), d), 0);
        }
        assert_eq!(hom_dim_stable(&s(1, 3, "l"), &s(2, 1, "m"), 1), 5);
    }

    #[test]
    fn hn_examples() {
        let f = EllipticStability::new(PointOrder::from_labels(&["l", "m", "x"]));
        let x = EllipticObject::from(s(1, 0, "l").at(0)).direct_sum(&s(1, 1, "m").at(0).into());
        let h = hn(&x, &f).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h.quotients[0].object, s(1, 0, "l").at(0).into());
        let y = EllipticObject::from(s(0, 1, "x").at(0)).direct_sum(&s(1, 5, "l").at(0).into());
        let h = hn(&y, &f).unwrap();
        assert_eq!(h.quotients[1].object, s(0, 1, "x").at(0).into());
    }

    #[test]
    fn split_examples() {
        let none = BTreeSet::new();
        let x = EllipticObject::from(s(1, -1, "l").at(0)).direct_sum(&s(1, 2, "l").at(0).into());
        let (a1, a0) = a_qp_split(&x, &q("0"), &none).unwrap();
        assert_eq!(a0, s(1, -1, "l").at(0).into());
        assert_eq!(a1, s(1, 2, "l").at(0).into());
        let with_l: BTreeSet<Point> = [Point::new("l")].into();
        let (_, a0) = a_qp_split(&s(1, 0, "l").at(0).into(), &q("0"), &with_l).unwrap();
        assert!(!a0.is_zero());
        let (a1, _) = a_qp_split(&s(0, 1, "x").at(0).into(), &q("1/2"), &none).unwrap();
        assert!(!a1.is_zero());
        assert!(matches!(a_qp_split(&x, &q("1"), &none), Err(Error::QOutOfRange(_))));
        assert!(matches!(a_qp_split(&x, &q("-1/2"), &none), Err(Error::QOutOfRange(_))));
    }

    #[test]
    fn heart_examples() {
        let none = BTreeSet::new();
        assert!(elliptic_heart_contains(&s(1, 1, "l").at(0).into(), &q("0"), &none).unwrap());
        assert!(elliptic_heart_contains(&s(1, -1, "l").at(1).into(), &q("0"), &none).unwrap());
        assert!(!elliptic_heart_contains(&s(1, -1, "l").at(0).into(), &q("0"), &none).unwrap());
    }
}
