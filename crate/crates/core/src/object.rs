//! Objects of a derived category of a hereditary abelian category.
//!
//! Every object is isomorphic to a finite direct sum of shifted
//! indecomposables, so objects are stored as normal forms: a sorted map from
//! `base[shift]` to a positive multiplicity. The zero object is the empty map.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::slope::K0Class;

/// A label for a point of the curve. Labels order lexicographically; this is
/// the canonical sort of normal forms and the default point order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub String);

impl Point {
    pub fn new(label: &str) -> Self {
        Point(label.to_string())
    }

    pub fn label(&self) -> &str {
        &self.0
    }

    pub fn is_valid_label(label: &str) -> bool {
        !label.is_empty() && label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Bounds used to enumerate finitely many indecomposables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    /// Shifts range over `-shift..=shift`.
    pub shift: i64,
    /// Degrees range over `-degree..=degree`.
    pub degree: i64,
    /// Torsion lengths range over `1..=length`.
    pub length: u32,
    /// Ranks range over `0..=rank` (curves of positive genus only).
    pub rank: u32,
    pub points: Vec<Point>,
}

impl Window {
    pub fn new(radius: i64) -> Self {
        Window { shift: radius, degree: radius, length: 2, rank: 3, points: vec![Point::new("x"), Point::new("y")] }
    }

    pub fn with_points(mut self, points: Vec<Point>) -> Self {
        if !points.is_empty() {
            self.points = points;
        }
        self
    }

    pub fn with_shift(mut self, shift: i64) -> Self {
        self.shift = shift;
        self
    }

    pub fn with_length(mut self, length: u32) -> Self {
        self.length = length;
        self
    }

    pub fn with_rank(mut self, rank: u32) -> Self {
        self.rank = rank;
        self
    }

    pub fn shifts(&self) -> impl Iterator<Item = i64> {
        -self.shift..=self.shift
    }
}

impl Default for Window {
    fn default() -> Self {
        Window::new(8)
    }
}

/// An indecomposable object of the heart `Coh`, with its exact Ext table.
pub trait Indecomposable: Clone + Ord + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// The class in K0 (rank, degree).
    fn k0(&self) -> K0Class;

    /// `dim Ext^degree(self, other)` in the abelian category.
    fn ext_dim(&self, other: &Self, degree: i64) -> u64;

    /// All indecomposables (unshifted) inside the window, in canonical order.
    fn enumerate(window: &Window) -> Vec<Self>;
}

/// The object `base[shift]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shifted<I> {
    pub shift: i64,
    pub base: I,
}

impl<I: Indecomposable> Shifted<I> {
    pub fn new(base: I, shift: i64) -> Self {
        Shifted { shift, base }
    }

    pub fn shifted(&self, n: i64) -> Self {
        Shifted { shift: self.shift + n, base: self.base.clone() }
    }

    pub fn k0(&self) -> K0Class {
        let c = self.base.k0();
        if self.shift.rem_euclid(2) == 1 {
            -&c
        } else {
            c
        }
    }
}

impl<I: Indecomposable> fmt::Display for Shifted<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.base, self.shift)
    }
}

/// Normal form of an object: a finite formal sum with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Object<I: Ord> {
    terms: BTreeMap<Shifted<I>, u64>,
}

impl<I: Indecomposable> Default for Object<I> {
    fn default() -> Self {
        Object { terms: BTreeMap::new() }
    }
}

impl<I: Indecomposable> Object<I> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(g: Shifted<I>, mult: u64) -> Self {
        Self::normalize([(g, mult)])
    }

    /// The indecomposable `base` at shift 0.
    pub fn sheaf(base: I) -> Self {
        Self::single(Shifted::new(base, 0), 1)
    }

    /// Merges repeated keys and drops zero multiplicities.
    pub fn normalize(items: impl IntoIterator<Item = (Shifted<I>, u64)>) -> Self {
        let mut terms = BTreeMap::new();
        for (g, m) in items {
            if m > 0 {
                *terms.entry(g).or_insert(0) += m;
            }
        }
        Object { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Shifted<I>, u64)> + '_ {
        self.terms.iter().map(|(g, m)| (g, *m))
    }

    /// Number of distinct shifted indecomposables.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total number of indecomposable summands, counted with multiplicity.
    pub fn summand_count(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn multiplicity(&self, g: &Shifted<I>) -> u64 {
        self.terms.get(g).copied().unwrap_or(0)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (g, m) in &other.terms {
            *self.terms.entry(g.clone()).or_insert(0) += m;
        }
    }

    pub fn scale(&self, m: u64) -> Self {
        if m == 0 {
            return Self::zero();
        }
        Object { terms: self.terms.iter().map(|(g, k)| (g.clone(), k * m)).collect() }
    }

    pub fn shift(&self, n: i64) -> Self {
        Object { terms: self.terms.iter().map(|(g, m)| (g.shifted(n), *m)).collect() }
    }

    pub fn k0(&self) -> K0Class {
        let mut acc = K0Class::rank_degree(0, 0);
        for (g, m) in &self.terms {
            acc = &acc + &g.k0().scale(*m as i64);
        }
        acc
    }

    pub fn sum<'a>(objects: impl IntoIterator<Item = &'a Self>) -> Self {
        let mut out = Self::zero();
        for o in objects {
            out.add_assign(o);
        }
        out
    }
}

impl<I: Indecomposable> From<Shifted<I>> for Object<I> {
    fn from(g: Shifted<I>) -> Self {
        Object::single(g, 1)
    }
}

impl<I: Indecomposable> fmt::Display for Object<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *m > 1 {
                write!(f, "{m}*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Dimensions of `Hom^q` indexed by `q`, zero entries omitted.
pub type HomProfile = BTreeMap<i64, u64>;

/// `dim Hom^q(a, b) = dim Ext^{q + shift(b) - shift(a)}(base a, base b)`.
pub fn hom_dim<I: Indecomposable>(a: &Shifted<I>, b: &Shifted<I>, q: i64) -> u64 {
    a.base.ext_dim(&b.base, q + b.shift - a.shift)
}

/// Bilinear extension of [`hom_dim`] over direct sums.
pub fn hom_profile<I: Indecomposable>(x: &Object<I>, y: &Object<I>) -> HomProfile {
    let mut out = HomProfile::new();
    for (a, m) in x.terms() {
        for (b, n) in y.terms() {
            // heart is hereditary: only Ext^0 and Ext^1 can be nonzero
            for e in 0..=1 {
                let dim = a.base.ext_dim(&b.base, e);
                if dim > 0 {
                    *out.entry(e - b.shift + a.shift).or_insert(0) += m * n * dim;
                }
            }
        }
    }
    out
}

/// Whether `Hom^q(x, y)` vanishes for every `q <= 0`.
pub fn hom_nonpositive_vanishes<I: Indecomposable>(x: &Object<I>, y: &Object<I>) -> bool {
    hom_profile(x, y).range(..=0).all(|(_, d)| *d == 0)
}

/// `dim Hom^0(x, y)`.
pub fn hom0<I: Indecomposable>(x: &Object<I>, y: &Object<I>) -> u64 {
    hom_profile(x, y).get(&0).copied().unwrap_or(0)
}

/// All shifted indecomposables in the window, simplest first: by `|shift|`
/// (non-negative first), then canonical order of the base.
pub fn window_generators<I: Indecomposable>(window: &Window) -> Vec<Shifted<I>> {
    let bases = I::enumerate(window);
    let mut shifts: Vec<i64> = window.shifts().collect();
    shifts.sort_by_key(|s| (s.abs(), *s < 0));
    shifts
        .into_iter()
        .flat_map(|s| bases.iter().map(move |b| Shifted::new(b.clone(), s)))
        .collect()
}

/// A total order on points: labels not configured come first, by label,
/// then the configured labels in the given order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PointOrder {
    points: Vec<Point>,
}

impl PointOrder {
    /// Duplicates after the first occurrence are dropped.
    pub fn new(points: Vec<Point>) -> Self {
        let mut seen = std::collections::BTreeSet::new();
        PointOrder { points: points.into_iter().filter(|p| seen.insert(p.clone())).collect() }
    }

    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Self {
        Self::new(labels.iter().map(|l| Point::new(l.as_ref())).collect())
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn contains(&self, x: &Point) -> bool {
        self.points.contains(x)
    }

    pub fn cmp(&self, a: &Point, b: &Point) -> std::cmp::Ordering {
        let rank = |x: &Point| self.points.iter().position(|p| p == x);
        rank(a).cmp(&rank(b)).then_with(|| a.cmp(b))
    }
}
