//! The bounded derived category of coherent sheaves on the projective line.
//!
//! Indecomposable sheaves are the line bundles `O(n)` and the torsion sheaves
//! `T(x,d)` of length `d` supported at a point `x`; the skyscraper `O_x` is
//! `T(x,1)`. Hom dimensions come from the standard Ext table on P1, and
//! every entry is consistent with the Euler form `rk rk' + rk deg' - deg rk'`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::object::{Indecomposable, Object, Point, Shifted, Window};
use crate::slope::K0Class;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum P1Indec {
    /// `O(n)`.
    Line(i64),
    /// The indecomposable torsion sheaf of length `length >= 1` at `point`.
    Torsion { point: Point, length: u32 },
}

pub type ShiftedIndec = Shifted<P1Indec>;
pub type DerivedObject = Object<P1Indec>;

impl P1Indec {
    pub fn line(n: i64) -> Self {
        P1Indec::Line(n)
    }

    /// Panics on `length == 0`; the parser reports that case as an error.
    pub fn torsion(point: &str, length: u32) -> Self {
        assert!(length >= 1, "torsion length must be at least 1");
        P1Indec::Torsion { point: Point::new(point), length }
    }

    pub fn at(self, shift: i64) -> ShiftedIndec {
        Shifted::new(self, shift)
    }

    pub fn is_torsion(&self) -> bool {
        matches!(self, P1Indec::Torsion { .. })
    }
}

impl fmt::Display for P1Indec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1Indec::Line(n) => write!(f, "O({n})"),
            P1Indec::Torsion { point, length } => write!(f, "T({point},{length})"),
        }
    }
}

impl Indecomposable for P1Indec {
    fn k0(&self) -> K0Class {
        match self {
            P1Indec::Line(n) => K0Class::rank_degree(1, *n),
            P1Indec::Torsion { length, .. } => K0Class::rank_degree(0, *length as i64),
        }
    }

    fn ext_dim(&self, other: &Self, degree: i64) -> u64 {
        use P1Indec::*;
        let dim: i64 = match (degree, self, other) {
            (0, Line(a), Line(b)) => (b - a + 1).max(0),
            (1, Line(a), Line(b)) => (a - b - 1).max(0),
            (0, Line(_), Torsion { length, .. }) => *length as i64,
            (1, Line(_), Torsion { .. }) => 0,
            (0, Torsion { .. }, Line(_)) => 0,
            (1, Torsion { length, .. }, Line(_)) => *length as i64,
            (0 | 1, Torsion { point: x, length: d }, Torsion { point: y, length: e }) => {
                if x == y {
                    (*d).min(*e) as i64
                } else {
                    0
                }
            }
            _ => 0,
        };
        dim as u64
    }

    /// Line bundles `O(0), O(1), O(-1), O(2), ...` then torsion sheaves by point and length.
    fn enumerate(window: &Window) -> Vec<Self> {
        let mut degrees: Vec<i64> = (-window.degree..=window.degree).collect();
        degrees.sort_by_key(|n| (n.abs(), *n < 0));
        let mut out: Vec<P1Indec> = degrees.into_iter().map(P1Indec::Line).collect();
        for p in &window.points {
            for d in 1..=window.length {
                out.push(P1Indec::Torsion { point: p.clone(), length: d });
            }
        }
        out
    }
}

/// `O(n)[shift]` as an object.
pub fn line(n: i64, shift: i64) -> DerivedObject {
    P1Indec::line(n).at(shift).into()
}

/// `T(x,d)[shift]` as an object.
pub fn torsion(x: &str, d: u32, shift: i64) -> DerivedObject {
    P1Indec::torsion(x, d).at(shift).into()
}

/// The Euler form `chi(a, b) = rk(a) rk(b) + rk(a) deg(b) - deg(a) rk(b)` on P1.
pub fn euler_form(a: &K0Class, b: &K0Class) -> i64 {
    a.rank() * b.rank() + a.rank() * b.degree() - a.degree() * b.rank()
}
