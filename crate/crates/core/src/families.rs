//! Concrete stability data on the derived category of P1: the coarse family
//! `Coh[i]`, the standard families indexed by degrees and points, the
//! exceptional families attached to the pair `(O(k), O(k+1))`, and
//! coarsenings of these by order-convex, shift-stable blocks.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::object::{hom0, window_generators, Object, Point, PointOrder, Window};
use crate::p1::{DerivedObject, P1Indec, ShiftedIndec};
use crate::stability::{blocks_from_sizes, split, FamilyDescriptor, Filtration, Level, POrder, Quotient, SlopeId, Stability};

fn cross(a: &SlopeId, b: &SlopeId) -> Error {
    Error::CrossFamily(a.family_name().into(), b.family_name().into())
}

/// `Coh[i]` is semistable of slope `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CoarseStability;

/// Slopes `Z x (Z ⊔ points)`: `O(n)[i]` has slope `(i, n)`, torsion at `x`
/// in shift `i` has slope `(i, x)`. Points sit above every degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StandardStability {
    pub point_order: PointOrder,
}

impl StandardStability {
    pub fn new(point_order: PointOrder) -> Self {
        StandardStability { point_order }
    }

    fn compare_levels(&self, a: &Level, b: &Level) -> Ordering {
        match (a, b) {
            (Level::Int(n), Level::Int(m)) => n.cmp(m),
            (Level::Int(_), Level::Pt(_)) => Ordering::Less,
            (Level::Pt(_), Level::Int(_)) => Ordering::Greater,
            (Level::Pt(x), Level::Pt(y)) => self.point_order.cmp(x, y),
        }
    }
}

/// `standard_slope`: the slope of any shifted indecomposable.
pub fn standard_slope(g: &ShiftedIndec) -> SlopeId {
    let level = match &g.base {
        P1Indec::Line(n) => Level::Int(*n),
        P1Indec::Torsion { point, .. } => Level::Pt(point.clone()),
    };
    SlopeId::Standard { shift: g.shift, level }
}

/// Slopes `Z x {0,1}` with `O(k)[i]` at `(i,0)` and `O(k+1)[i]` at `(i,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExceptionalStability {
    pub k: i64,
    pub p: POrder,
}

impl ExceptionalStability {
    pub fn new(k: i64, p: POrder) -> Self {
        ExceptionalStability { k, p }
    }

    /// The two-block coarsening matching this family's order type.
    pub fn two_block_partition(&self) -> Partition {
        match self.p {
            POrder::Finite(_) => Partition::ExceptionalPairs,
            POrder::Infinite => Partition::ExceptionalColumns,
        }
    }
}

/// Order on the exceptional slope set. Within a column the shift decides;
/// across columns `(i,0) < (j,1)` iff `i <= j + p + 1`, always when `p = inf`.
pub fn compare_exceptional(a: &SlopeId, b: &SlopeId, p: POrder) -> Result<Ordering> {
    let (&SlopeId::Exceptional { shift: i, col: ca }, &SlopeId::Exceptional { shift: j, col: cb }) = (a, b) else {
        return Err(cross(a, b));
    };
    if ca == cb {
        return Ok(i.cmp(&j));
    }
    let zero_below_one = |i: i64, j: i64| match p {
        POrder::Infinite => true,
        POrder::Finite(p) => i <= j + p as i64 + 1,
    };
    Ok(match (ca, cb) {
        (0, _) if zero_below_one(i, j) => Ordering::Less,
        (0, _) => Ordering::Greater,
        _ if zero_below_one(j, i) => Ordering::Greater,
        _ => Ordering::Less,
    })
}

/// The destabilizing triangle of a shifted indecomposable relative to `(O(k), O(k+1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rewrite {
    /// Quotients, lowest slope first.
    pub parts: Vec<(SlopeId, DerivedObject)>,
    /// The middle term `F^1`, present when there are two parts.
    pub mid: Option<DerivedObject>,
}

impl Rewrite {
    pub fn into_filtration(self, x: DerivedObject) -> Filtration<P1Indec> {
        let mut terms = vec![x];
        terms.extend(self.mid);
        terms.push(Object::zero());
        Filtration { quotients: self.parts.into_iter().map(|(s, o)| Quotient::new(s, o)).collect(), terms }
    }
}

/// Rewrites `g` through the triangles
/// `(n-k) O(k+1) -> O(n) -> (n-k-1) O(k)[1]` for `n > k+1`,
/// `(k-n) O(k+1)[-1] -> O(n) -> (k-n+1) O(k)` for `n < k` and
/// `d O(k+1) -> T(x,d) -> d O(k)[1]`.
pub fn exceptional_rewrite(g: &ShiftedIndec, k: i64) -> Rewrite {
    let i = g.shift;
    let o = |n: i64, shift: i64, mult: i64| Object::single(P1Indec::Line(n).at(shift), mult as u64);
    let two = |low: (SlopeId, DerivedObject), high: (SlopeId, DerivedObject)| Rewrite {
        mid: Some(high.1.clone()),
        parts: vec![low, high],
    };
    match &g.base {
        P1Indec::Line(n) if *n == k => Rewrite { parts: vec![(SlopeId::exceptional(i, 0), o(k, i, 1))], mid: None },
        P1Indec::Line(n) if *n == k + 1 => Rewrite { parts: vec![(SlopeId::exceptional(i, 1), o(k + 1, i, 1))], mid: None },
        P1Indec::Line(n) if *n > k + 1 => two(
            (SlopeId::exceptional(i + 1, 0), o(k, i + 1, n - k - 1)),
            (SlopeId::exceptional(i, 1), o(k + 1, i, n - k)),
        ),
        P1Indec::Line(n) => two(
            (SlopeId::exceptional(i, 0), o(k, i, k - n + 1)),
            (SlopeId::exceptional(i - 1, 1), o(k + 1, i - 1, k - n)),
        ),
        P1Indec::Torsion { length, .. } => {
            let d = *length as i64;
            two((SlopeId::exceptional(i + 1, 0), o(k, i + 1, d)), (SlopeId::exceptional(i, 1), o(k + 1, i, d)))
        }
    }
}

/// A partition of a slope set into order-convex blocks permuted by `tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partition {
    /// Every slope its own block.
    Singletons,
    /// One block per shift; turns the standard family into the coarse one.
    ByShift,
    /// Exceptional, finite `p`: `(j,1)` together with `(j+p+1,0)`.
    ExceptionalPairs,
    /// Exceptional, `p = inf`: column 0 and column 1.
    ExceptionalColumns,
    /// Shifts below `t` against shifts from `t` on.
    ShiftThreshold(i64),
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Partition::Singletons => write!(f, "singletons"),
            Partition::ByShift => write!(f, "by-shift"),
            Partition::ExceptionalPairs => write!(f, "exc-pairs"),
            Partition::ExceptionalColumns => write!(f, "exc-columns"),
            Partition::ShiftThreshold(t) => write!(f, "threshold:{t}"),
        }
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "singletons" => Ok(Partition::Singletons),
            "by-shift" => Ok(Partition::ByShift),
            "exc-pairs" => Ok(Partition::ExceptionalPairs),
            "exc-columns" => Ok(Partition::ExceptionalColumns),
            _ => s
                .strip_prefix("threshold:")
                .and_then(|t| t.parse().ok())
                .map(Partition::ShiftThreshold)
                .ok_or_else(|| Error::InvalidPartition(format!("unknown partition `{s}`"))),
        }
    }
}

/// An exceptional family with slopes grouped into blocks; block `key`s are
/// ordered as integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarsenedStability {
    pub base: ExceptionalStability,
    pub partition: Partition,
}

impl CoarsenedStability {
    fn key(&self, s: &SlopeId) -> Result<i64> {
        let &SlopeId::Exceptional { shift, col } = s else {
            return Err(Error::CrossFamily("exceptional".into(), s.family_name().into()));
        };
        Ok(match (self.partition, self.base.p) {
            (Partition::ExceptionalPairs, POrder::Finite(p)) if col == 0 => shift - p as i64,
            (Partition::ExceptionalPairs, _) => shift + 1,
            _ => col as i64,
        })
    }

    fn block_key(s: &SlopeId) -> Result<i64> {
        match s {
            SlopeId::Block { key } => Ok(*key),
            other => Err(Error::CrossFamily("block".into(), other.family_name().into())),
        }
    }
}

/// The t-stabilities on P1 handled by this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityFamily {
    Coarse(CoarseStability),
    Standard(StandardStability),
    Exceptional(ExceptionalStability),
    Coarsened(CoarsenedStability),
}

impl StabilityFamily {
    pub fn coarse() -> Self {
        StabilityFamily::Coarse(CoarseStability)
    }

    pub fn standard(point_order: PointOrder) -> Self {
        StabilityFamily::Standard(StandardStability::new(point_order))
    }

    pub fn exceptional(k: i64, p: POrder) -> Self {
        StabilityFamily::Exceptional(ExceptionalStability::new(k, p))
    }

    pub fn from_descriptor(d: &FamilyDescriptor) -> Result<Self> {
        match d {
            FamilyDescriptor::Coarse => Ok(Self::coarse()),
            FamilyDescriptor::Standard { point_order } => Ok(Self::standard(PointOrder::new(point_order.clone()))),
            FamilyDescriptor::Exceptional { k, p } => Ok(Self::exceptional(*k, *p)),
            FamilyDescriptor::Coarsened { base, partition } => coarsen(&Self::from_descriptor(base)?, partition.parse()?),
            other => Err(Error::UnsupportedFamily(format!("{other:?} is not a P1 family"))),
        }
    }
}

impl fmt::Display for StabilityFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StabilityFamily::Coarse(_) => write!(f, "coarse"),
            StabilityFamily::Standard(_) => write!(f, "standard"),
            StabilityFamily::Exceptional(e) => write!(f, "exceptional(k={}, p={})", e.k, e.p),
            StabilityFamily::Coarsened(c) => {
                write!(f, "{} / {}", StabilityFamily::Exceptional(c.base), c.partition)
            }
        }
    }
}

impl Stability for StabilityFamily {
    type Indec = P1Indec;

    fn descriptor(&self) -> FamilyDescriptor {
        match self {
            StabilityFamily::Coarse(_) => FamilyDescriptor::Coarse,
            StabilityFamily::Standard(s) => FamilyDescriptor::Standard { point_order: s.point_order.points().to_vec() },
            StabilityFamily::Exceptional(e) => FamilyDescriptor::Exceptional { k: e.k, p: e.p },
            StabilityFamily::Coarsened(c) => FamilyDescriptor::Coarsened {
                base: Box::new(FamilyDescriptor::Exceptional { k: c.base.k, p: c.base.p }),
                partition: c.partition.to_string(),
            },
        }
    }

    fn slope_of(&self, g: &ShiftedIndec) -> Result<Option<SlopeId>> {
        Ok(match self {
            StabilityFamily::Coarse(_) => Some(SlopeId::Coarse { shift: g.shift }),
            StabilityFamily::Standard(_) => Some(standard_slope(g)),
            StabilityFamily::Exceptional(e) => match g.base {
                P1Indec::Line(n) if n == e.k => Some(SlopeId::exceptional(g.shift, 0)),
                P1Indec::Line(n) if n == e.k + 1 => Some(SlopeId::exceptional(g.shift, 1)),
                _ => None,
            },
            StabilityFamily::Coarsened(c) => {
                let parts = exceptional_rewrite(g, c.base.k).parts;
                let keys = parts.iter().map(|(s, _)| c.key(s)).collect::<Result<Vec<_>>>()?;
                match keys.as_slice() {
                    [first, rest @ ..] if rest.iter().all(|k| k == first) => Some(SlopeId::Block { key: *first }),
                    _ => None,
                }
            }
        })
    }

    fn compare(&self, a: &SlopeId, b: &SlopeId) -> Result<Ordering> {
        match (self, a, b) {
            (StabilityFamily::Coarse(_), SlopeId::Coarse { shift: i }, SlopeId::Coarse { shift: j }) => Ok(i.cmp(j)),
            (
                StabilityFamily::Standard(s),
                SlopeId::Standard { shift: i, level: la },
                SlopeId::Standard { shift: j, level: lb },
            ) => Ok(i.cmp(j).then_with(|| s.compare_levels(la, lb))),
            (StabilityFamily::Exceptional(e), _, _) => compare_exceptional(a, b, e.p),
            (StabilityFamily::Coarsened(_), _, _) => {
                Ok(CoarsenedStability::block_key(a)?.cmp(&CoarsenedStability::block_key(b)?))
            }
            _ => Err(cross(a, b)),
        }
    }

    fn tau(&self, s: &SlopeId) -> Result<SlopeId> {
        match (self, s) {
            (StabilityFamily::Coarse(_), SlopeId::Coarse { .. })
            | (StabilityFamily::Standard(_), SlopeId::Standard { .. })
            | (StabilityFamily::Exceptional(_), SlopeId::Exceptional { .. }) => Ok(s.shifted(1)),
            (StabilityFamily::Coarsened(c), SlopeId::Block { key }) => Ok(SlopeId::Block {
                key: if c.partition == Partition::ExceptionalColumns { *key } else { key + 1 },
            }),
            _ => Err(Error::CrossFamily(self.to_string(), s.family_name().into())),
        }
    }

    fn tau_inv(&self, s: &SlopeId) -> Result<SlopeId> {
        match (self, s) {
            (StabilityFamily::Coarsened(c), SlopeId::Block { key }) => Ok(SlopeId::Block {
                key: if c.partition == Partition::ExceptionalColumns { *key } else { key - 1 },
            }),
            (StabilityFamily::Coarsened(_), _) => Err(Error::CrossFamily("block".into(), s.family_name().into())),
            _ => self.tau(s).map(|t| t.shifted(-2)),
        }
    }

    fn indecomposable_hn(&self, g: &ShiftedIndec) -> Result<Filtration<P1Indec>> {
        let x = DerivedObject::from(g.clone());
        match self {
            StabilityFamily::Exceptional(e) => Ok(exceptional_rewrite(g, e.k).into_filtration(x)),
            StabilityFamily::Coarsened(c) => {
                let base = exceptional_rewrite(g, c.base.k).into_filtration(x.clone());
                let mut sizes: Vec<(i64, usize)> = Vec::new();
                for q in &base.quotients {
                    let key = c.key(&q.slope)?;
                    match sizes.last_mut() {
                        Some((k, n)) if *k == key => *n += 1,
                        _ => sizes.push((key, 1)),
                    }
                }
                let blocks = split(&base.quotients, &blocks_from_sizes(&sizes.iter().map(|(_, n)| *n).collect::<Vec<_>>()))?;
                let mut terms = Vec::with_capacity(blocks.len() + 1);
                let mut start = 0;
                let mut quotients = Vec::with_capacity(blocks.len());
                for ((key, n), block) in sizes.iter().zip(blocks) {
                    terms.push(base.terms[start].clone());
                    start += n;
                    quotients.push(Quotient::new(SlopeId::Block { key: *key }, block.object));
                }
                terms.push(Object::zero());
                Ok(Filtration { quotients, terms })
            }
            _ => {
                let slope = self.slope_of(g)?.expect("coarse and standard families make every indecomposable semistable");
                Ok(Filtration::singleton(slope, x))
            }
        }
    }

    fn points(&self) -> Vec<Point> {
        match self {
            StabilityFamily::Standard(s) => s.point_order.points().to_vec(),
            _ => Vec::new(),
        }
    }
}

/// Coarsens a family along a partition of its slope set.
pub fn coarsen(family: &StabilityFamily, partition: Partition) -> Result<StabilityFamily> {
    match (family, partition) {
        (_, Partition::Singletons) => Ok(family.clone()),
        (StabilityFamily::Standard(_) | StabilityFamily::Coarse(_), Partition::ByShift) => Ok(StabilityFamily::coarse()),
        (StabilityFamily::Exceptional(e), Partition::ExceptionalPairs) if e.p != POrder::Infinite => {
            Ok(StabilityFamily::Coarsened(CoarsenedStability { base: *e, partition }))
        }
        (StabilityFamily::Exceptional(e), Partition::ExceptionalColumns) if e.p == POrder::Infinite => {
            Ok(StabilityFamily::Coarsened(CoarsenedStability { base: *e, partition }))
        }
        (StabilityFamily::Exceptional(e), Partition::ExceptionalPairs | Partition::ExceptionalColumns) => Err(
            Error::InvalidPartition(format!("{partition} blocks are not order-convex for p = {}", e.p)),
        ),
        (StabilityFamily::Exceptional(_), Partition::ByShift) => {
            Err(Error::InvalidPartition("shift blocks are not order-convex in the exceptional order".into()))
        }
        (_, Partition::ShiftThreshold(t)) => Err(Error::InvalidPartition(format!(
            "blocks split at shift {t} are not permuted by the shift"
        ))),
        (f, p) => Err(Error::InvalidPartition(format!("{p} does not apply to the {f} family"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FinerWitness {
    /// A fine-semistable generator that is not weak-semistable.
    NotWeakSemistable { generator: String, fine_slope: String },
    /// One fine slope whose generators land in different weak slopes.
    NotAMap { fine_slope: String, weak_slopes: [String; 2] },
    /// `a < b` in the fine order but `r(a) > r(b)`.
    OrderViolation { a: String, b: String, ra: String, rb: String },
    /// `r(tau a) != tau r(a)`.
    TauViolation { slope: String, expected: String, got: String },
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FinerVerdict {
    pub holds: bool,
    pub witnesses: Vec<FinerWitness>,
}

impl FinerVerdict {
    /// Generators that are fine-semistable but not weak-semistable.
    pub fn unstable_generators(&self) -> Vec<&str> {
        self.witnesses
            .iter()
            .filter_map(|w| match w {
                FinerWitness::NotWeakSemistable { generator, .. } => Some(generator.as_str()),
                _ => None,
            })
            .collect()
    }
}

/// Whether `fine` refines `weak` on the window: every fine-semistable
/// generator is weak-semistable, and the induced slope map is monotone and
/// commutes with `tau`.
pub fn is_finer(fine: &StabilityFamily, weak: &StabilityFamily, window: &Window) -> Result<FinerVerdict> {
    let mut witnesses = Vec::new();
    let mut map: Vec<(SlopeId, SlopeId)> = Vec::new();
    for g in window_generators::<P1Indec>(window) {
        let Some(fs) = fine.slope_of(&g)? else { continue };
        let Some(ws) = weak.slope_of(&g)? else {
            witnesses.push(FinerWitness::NotWeakSemistable { generator: g.to_string(), fine_slope: fs.to_string() });
            continue;
        };
        match map.iter().find(|(f, _)| f == &fs) {
            Some((_, w)) if weak.compare(w, &ws)? != Ordering::Equal => witnesses.push(FinerWitness::NotAMap {
                fine_slope: fs.to_string(),
                weak_slopes: [w.to_string(), ws.to_string()],
            }),
            Some(_) => {}
            None => map.push((fs, ws)),
        }
    }
    for (a, ra) in &map {
        for (b, rb) in &map {
            if fine.compare(a, b)? == Ordering::Less && weak.compare(ra, rb)? == Ordering::Greater {
                witnesses.push(FinerWitness::OrderViolation {
                    a: a.to_string(),
                    b: b.to_string(),
                    ra: ra.to_string(),
                    rb: rb.to_string(),
                });
            }
        }
        let up = fine.tau(a)?;
        if let Some((_, r_up)) = map.iter().find(|(f, _)| f == &up) {
            let expected = weak.tau(ra)?;
            if weak.compare(&expected, r_up)? != Ordering::Equal {
                witnesses.push(FinerWitness::TauViolation {
                    slope: a.to_string(),
                    expected: expected.to_string(),
                    got: r_up.to_string(),
                });
            }
        }
    }
    Ok(FinerVerdict { holds: witnesses.is_empty(), witnesses })
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FinestWitness {
    pub slope: String,
    /// `Hom^0(source, target) = 0` although both are semistable of `slope`.
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FinestReport {
    pub finest: bool,
    pub slopes: usize,
    pub witnesses: Vec<FinestWitness>,
}

/// Checks that semistable objects of equal slope have nonzero `Hom^0` in both
/// directions, which is the finest-stability criterion. Samples for each
/// slope are its semistable generators in the window.
pub fn finest_check(family: &StabilityFamily, window: &Window) -> Result<FinestReport> {
    let mut by_slope: Vec<(SlopeId, Vec<DerivedObject>)> = Vec::new();
    for g in window_generators::<P1Indec>(window) {
        let Some(s) = family.slope_of(&g)? else { continue };
        let x = DerivedObject::from(g);
        match by_slope.iter_mut().find(|(t, _)| t == &s) {
            Some((_, xs)) => xs.push(x),
            None => by_slope.push((s, vec![x])),
        }
    }
    let mut witnesses = Vec::new();
    for (s, xs) in &by_slope {
        for (i, a) in xs.iter().enumerate() {
            for b in &xs[i..] {
                for (src, tgt) in [(a, b), (b, a)] {
                    if hom0(src, tgt) == 0 {
                        witnesses.push(FinestWitness { slope: s.to_string(), source: src.to_string(), target: tgt.to_string() });
                    }
                }
            }
        }
    }
    Ok(FinestReport { finest: witnesses.is_empty(), slopes: by_slope.len(), witnesses })
}
