//! Stability data on a triangulated category and Harder–Narasimhan filtrations.
//!
//! A family supplies a linearly ordered slope set, the shift automorphism
//! `tau`, the slope of each semistable indecomposable and the HN filtration of
//! each indecomposable. HN filtrations of arbitrary objects are assembled from
//! the per-summand filtrations by merging quotients by slope.
//!
//! Filtrations are stored as quotient lists plus term objects. Terms are
//! `terms[0] = X`, `terms[last] = 0` and `terms[i] = F^i X`, the part of `X`
//! carrying quotients `i..`; quotient `i` is the cone of `F^{i+1} X -> F^i X`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::object::{hom_nonpositive_vanishes, hom_profile, window_generators, HomProfile, Indecomposable, Object, Point, Shifted, Window};
use crate::slope::ExtendedRational;

/// The level of a standard slope: a line bundle degree or a point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Int(i64),
    Pt(Point),
}

/// A slope in one of the concrete slope sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SlopeId {
    /// `Coh[shift]`.
    Coarse { shift: i64 },
    /// `<O(n)[shift]>` or `<O_x[shift]>`.
    Standard { shift: i64, level: Level },
    /// `<O(k)[shift]>` for `col = 0`, `<O(k+1)[shift]>` for `col = 1`.
    Exceptional { shift: i64, col: u8 },
    /// `<F[shift]>` for the stable bundle of slope `mu` at `point`.
    Elliptic { shift: i64, mu: ExtendedRational, point: Point },
    /// A block of a coarsened family.
    Block { key: i64 },
}

impl SlopeId {
    pub fn standard_int(shift: i64, n: i64) -> Self {
        SlopeId::Standard { shift, level: Level::Int(n) }
    }

    pub fn standard_pt(shift: i64, x: &str) -> Self {
        SlopeId::Standard { shift, level: Level::Pt(Point::new(x)) }
    }

    pub fn exceptional(shift: i64, col: u8) -> Self {
        SlopeId::Exceptional { shift, col }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            SlopeId::Coarse { .. } => "coarse",
            SlopeId::Standard { .. } => "standard",
            SlopeId::Exceptional { .. } => "exceptional",
            SlopeId::Elliptic { .. } => "elliptic",
            SlopeId::Block { .. } => "block",
        }
    }

    /// The shift component; blocks have none.
    pub fn shift(&self) -> Option<i64> {
        match self {
            SlopeId::Coarse { shift }
            | SlopeId::Standard { shift, .. }
            | SlopeId::Exceptional { shift, .. }
            | SlopeId::Elliptic { shift, .. } => Some(*shift),
            SlopeId::Block { .. } => None,
        }
    }

    /// The same slope with its shift component moved by `n`.
    pub fn shifted(&self, n: i64) -> SlopeId {
        let mut s = self.clone();
        match &mut s {
            SlopeId::Coarse { shift }
            | SlopeId::Standard { shift, .. }
            | SlopeId::Exceptional { shift, .. }
            | SlopeId::Elliptic { shift, .. } => *shift += n,
            SlopeId::Block { .. } => {}
        }
        s
    }
}

impl fmt::Display for SlopeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeId::Coarse { shift } => write!(f, "({shift})"),
            SlopeId::Standard { shift, level: Level::Int(n) } => write!(f, "({shift}, {n})"),
            SlopeId::Standard { shift, level: Level::Pt(x) } => write!(f, "({shift}, @{x})"),
            SlopeId::Exceptional { shift, col } => write!(f, "({shift},{col})"),
            SlopeId::Elliptic { shift, mu, point } => write!(f, "({shift}, {mu}, @{point})"),
            SlopeId::Block { key } => write!(f, "[{key}]"),
        }
    }
}

/// The `p` parameter of an exceptional family: a natural number or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum POrder {
    Finite(u32),
    Infinite,
}

impl fmt::Display for POrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            POrder::Finite(p) => write!(f, "{p}"),
            POrder::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for POrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" | "oo" | "infinity" => Ok(POrder::Infinite),
            t => t
                .parse::<u32>()
                .map(POrder::Finite)
                .map_err(|_| Error::Precondition(format!("p must be a natural number or `inf`, got `{t}`"))),
        }
    }
}

impl Serialize for POrder {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            POrder::Finite(p) => s.serialize_u32(*p),
            POrder::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for POrder {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(POrder::Finite(n)),
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Serializable description of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyDescriptor {
    Coarse,
    Standard { point_order: Vec<Point> },
    Exceptional { k: i64, p: POrder },
    Coarsened { base: Box<FamilyDescriptor>, partition: String },
    Elliptic { point_order: Vec<Point> },
    Custom { name: String },
}

/// Stability data on a derived category whose heart has indecomposables `Indec`.
pub trait Stability {
    type Indec: Indecomposable;

    fn descriptor(&self) -> FamilyDescriptor;

    /// The slope of a shifted indecomposable if it is semistable.
    fn slope_of(&self, g: &Shifted<Self::Indec>) -> Result<Option<SlopeId>>;

    fn compare(&self, a: &SlopeId, b: &SlopeId) -> Result<Ordering>;

    /// The slope of `Pi[1]` for `Pi` of slope `s`.
    fn tau(&self, s: &SlopeId) -> Result<SlopeId>;

    fn tau_inv(&self, s: &SlopeId) -> Result<SlopeId>;

    /// HN filtration of a single shifted indecomposable.
    fn indecomposable_hn(&self, g: &Shifted<Self::Indec>) -> Result<Filtration<Self::Indec>>;

    /// Points the family knows about; used to build enumeration windows.
    fn points(&self) -> Vec<Point> {
        Vec::new()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient<I: Indecomposable> {
    pub slope: SlopeId,
    pub object: Object<I>,
}

impl<I: Indecomposable> Quotient<I> {
    pub fn new(slope: SlopeId, object: Object<I>) -> Self {
        Quotient { slope, object }
    }
}

/// A t-filtration: quotients in order plus the term objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration<I: Indecomposable> {
    pub quotients: Vec<Quotient<I>>,
    pub terms: Vec<Object<I>>,
}

impl<I: Indecomposable> Filtration<I> {
    /// The empty filtration of the zero object.
    pub fn zero() -> Self {
        Filtration { quotients: Vec::new(), terms: vec![Object::zero()] }
    }

    pub fn singleton(slope: SlopeId, object: Object<I>) -> Self {
        Filtration { quotients: vec![Quotient::new(slope, object.clone())], terms: vec![object, Object::zero()] }
    }

    /// The filtered object `terms[0]`.
    pub fn object(&self) -> &Object<I> {
        &self.terms[0]
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }

    pub fn slopes(&self) -> Vec<SlopeId> {
        self.quotients.iter().map(|q| q.slope.clone()).collect()
    }

    pub fn scale(&self, m: u64) -> Self {
        if m == 0 {
            return Self::zero();
        }
        Filtration {
            quotients: self.quotients.iter().map(|q| Quotient::new(q.slope.clone(), q.object.scale(m))).collect(),
            terms: self.terms.iter().map(|t| t.scale(m)).collect(),
        }
    }

    /// Applies the shift functor: objects move by `n`, slopes by `tau^n`.
    pub fn shift<S: Stability<Indec = I> + ?Sized>(&self, family: &S, n: i64) -> Result<Self> {
        let mut quotients = Vec::with_capacity(self.quotients.len());
        for q in &self.quotients {
            let mut s = q.slope.clone();
            for _ in 0..n.abs() {
                s = if n > 0 { family.tau(&s)? } else { family.tau_inv(&s)? };
            }
            quotients.push(Quotient::new(s, q.object.shift(n)));
        }
        Ok(Filtration { quotients, terms: self.terms.iter().map(|t| t.shift(n)).collect() })
    }
}

/// Sorts slopes ascending and removes duplicates.
pub fn sorted_unique<S: Stability + ?Sized>(family: &S, slopes: impl IntoIterator<Item = SlopeId>) -> Result<Vec<SlopeId>> {
    let mut out: Vec<SlopeId> = Vec::new();
    for s in slopes {
        let (mut lo, mut hi) = (0, out.len());
        let mut found = false;
        while lo < hi {
            let mid = (lo + hi) / 2;
            match family.compare(&out[mid], &s)? {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => {
                    found = true;
                    break;
                }
            }
        }
        if !found {
            out.insert(lo, s);
        }
    }
    Ok(out)
}

fn check_ascending<S: Stability + ?Sized>(family: &S, f: &Filtration<S::Indec>) -> Result<()> {
    for w in f.quotients.windows(2) {
        if family.compare(&w[0].slope, &w[1].slope)? != Ordering::Less {
            return Err(Error::Precondition(format!("slopes {} and {} are not ascending", w[0].slope, w[1].slope)));
        }
    }
    Ok(())
}

/// Merges HN filtrations of `X_1, ..., X_m` into the HN filtration of their
/// direct sum: quotients sorted ascending, equal slopes coalesced.
pub fn merge_by_slope<S: Stability + ?Sized>(family: &S, parts: &[Filtration<S::Indec>]) -> Result<Filtration<S::Indec>> {
    for f in parts {
        check_ascending(family, f)?;
    }
    let slopes = sorted_unique(family, parts.iter().flat_map(|f| f.slopes()))?;
    let mut quotients = Vec::with_capacity(slopes.len());
    let mut terms = Vec::with_capacity(slopes.len() + 1);
    // cursor[s] = number of quotients of parts[s] already consumed
    let mut cursor = vec![0usize; parts.len()];
    for phi in slopes {
        let term = Object::sum(parts.iter().zip(&cursor).map(|(f, c)| &f.terms[*c]));
        terms.push(term);
        let mut object = Object::zero();
        for (f, c) in parts.iter().zip(cursor.iter_mut()) {
            if *c < f.quotients.len() && family.compare(&f.quotients[*c].slope, &phi)? == Ordering::Equal {
                object.add_assign(&f.quotients[*c].object);
                *c += 1;
            }
        }
        quotients.push(Quotient::new(phi, object));
    }
    terms.push(Object::zero());
    Ok(Filtration { quotients, terms })
}

/// Which source the next quotient of an explicit shuffle comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MergeMode {
    /// Sort ascending and coalesce equal slopes; yields the HN filtration of the sum.
    BySlope,
    /// Interleave in the given order, keeping each source's internal order.
    Explicit(Vec<Source>),
}

/// A t-filtration of `X ⊕ Y` built from t-filtrations of `X` and `Y`.
pub fn shuffle_merge<S: Stability + ?Sized>(
    family: &S,
    fa: &Filtration<S::Indec>,
    fb: &Filtration<S::Indec>,
    mode: &MergeMode,
) -> Result<Filtration<S::Indec>> {
    match mode {
        MergeMode::BySlope => merge_by_slope(family, &[fa.clone(), fb.clone()]),
        MergeMode::Explicit(order) => {
            let na = order.iter().filter(|s| **s == Source::First).count();
            let nb = order.len() - na;
            if na != fa.len() || nb != fb.len() {
                return Err(Error::InvalidShuffle(format!(
                    "shuffle takes {na}+{nb} quotients but the filtrations have {}+{}",
                    fa.len(),
                    fb.len()
                )));
            }
            let (mut ia, mut ib) = (0, 0);
            let mut quotients = Vec::with_capacity(order.len());
            let mut terms = Vec::with_capacity(order.len() + 1);
            for src in order {
                terms.push(fa.terms[ia].direct_sum(&fb.terms[ib]));
                match src {
                    Source::First => {
                        quotients.push(fa.quotients[ia].clone());
                        ia += 1;
                    }
                    Source::Second => {
                        quotients.push(fb.quotients[ib].clone());
                        ib += 1;
                    }
                }
            }
            terms.push(Object::zero());
            Ok(Filtration { quotients, terms })
        }
    }
}

/// Computes the HN filtration of `x`. The zero object has the empty filtration.
pub fn hn<S: Stability + ?Sized>(x: &Object<S::Indec>, family: &S) -> Result<Filtration<S::Indec>> {
    if x.is_zero() {
        return Ok(Filtration::zero());
    }
    let parts = x
        .terms()
        .map(|(g, m)| family.indecomposable_hn(g).map(|f| f.scale(m)))
        .collect::<Result<Vec<_>>>()?;
    merge_by_slope(family, &parts)
}

/// The slope of `x` if it has a single HN quotient.
pub fn is_semistable<S: Stability + ?Sized>(x: &Object<S::Indec>, family: &S) -> Result<Option<SlopeId>> {
    let f = hn(x, family)?;
    Ok(match f.quotients.as_slice() {
        [q] => Some(q.slope.clone()),
        _ => None,
    })
}

/// Summand-wise semistability: a direct sum lies in `Pi_phi` exactly when
/// every summand is semistable of slope `phi`.
pub fn object_slope<S: Stability + ?Sized>(x: &Object<S::Indec>, family: &S) -> Result<Option<SlopeId>> {
    let mut slope: Option<SlopeId> = None;
    for (g, _) in x.terms() {
        match family.slope_of(g)? {
            None => return Ok(None),
            Some(s) => match &slope {
                None => slope = Some(s),
                Some(prev) if family.compare(prev, &s)? == Ordering::Equal => {}
                Some(_) => return Ok(None),
            },
        }
    }
    Ok(slope)
}

/// Flattens nested filtrations: each outer quotient is replaced by its inner list.
pub fn glue<T, I: Indecomposable>(outer: Vec<(T, Vec<Quotient<I>>)>) -> Result<Vec<Quotient<I>>> {
    let mut flat = Vec::new();
    for (i, (_, inner)) in outer.into_iter().enumerate() {
        if inner.is_empty() {
            return Err(Error::Precondition(format!("inner filtration {i} is empty")));
        }
        flat.extend(inner);
    }
    Ok(flat)
}

/// One block of [`split`]: the direct sum of the block's quotients and the block itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitBlock<I: Indecomposable> {
    pub object: Object<I>,
    pub inner: Vec<Quotient<I>>,
}

/// Groups a flat quotient list into consecutive blocks given by index lists.
pub fn split<I: Indecomposable>(flat: &[Quotient<I>], blocks: &[Vec<usize>]) -> Result<Vec<SplitBlock<I>>> {
    let mut next = 0usize;
    for (b, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::NonConsecutiveBlocks(format!("block {b} is empty")));
        }
        for &i in block {
            if i != next {
                return Err(Error::NonConsecutiveBlocks(format!("block {b} has index {i}, expected {next}")));
            }
            next += 1;
        }
    }
    if next != flat.len() {
        return Err(Error::NonConsecutiveBlocks(format!("blocks cover {next} of {} quotients", flat.len())));
    }
    Ok(blocks
        .iter()
        .map(|block| {
            let inner: Vec<Quotient<I>> = block.iter().map(|i| flat[*i].clone()).collect();
            SplitBlock { object: Object::sum(inner.iter().map(|q| &q.object)), inner }
        })
        .collect())
}

/// Index lists for consecutive blocks of the given sizes.
pub fn blocks_from_sizes(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|n| {
            let b = (start..start + n).collect();
            start += n;
            b
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HnCheckKind {
    /// (a) slopes strictly ascending.
    Ascending,
    /// (b) each quotient nonzero and semistable of its recorded slope.
    Semistable,
    /// (c) `Hom^{<=0}(Q_j, Q_i) = 0` for `j > i`.
    HomVanishing,
    /// (d) `k0(terms[i]) = k0(terms[i+1]) + k0(Q_i)`.
    K0Additive,
    /// (e) `terms[0] = X`, `terms[last] = 0`.
    Endpoints,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HnCheck {
    pub kind: HnCheckKind,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HnReport {
    pub checks: Vec<HnCheck>,
}

impl HnReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<HnCheckKind> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.kind).collect()
    }

    pub fn check(&self, kind: HnCheckKind) -> &HnCheck {
        self.checks.iter().find(|c| c.kind == kind).expect("every check is reported")
    }
}

impl fmt::Display for HnReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let kind = serde_json::to_value(c.kind).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
            write!(f, "{} {kind}", if c.passed { "ok  " } else { "FAIL" })?;
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Checks the conditions characterizing the HN filtration of `x`. A filtration
/// passing all five is the HN filtration, which is unique.
pub fn verify_hn<S: Stability + ?Sized>(x: &Object<S::Indec>, filt: &Filtration<S::Indec>, family: &S) -> HnReport {
    let mut checks = Vec::with_capacity(5);
    let mut record = |kind, problem: Option<String>| checks.push(HnCheck { kind, passed: problem.is_none(), detail: problem });

    let ascending = filt.quotients.windows(2).enumerate().find_map(|(i, w)| match family.compare(&w[0].slope, &w[1].slope) {
        Ok(Ordering::Less) => None,
        Ok(_) => Some(format!("quotient {i} has slope {} not below {}", w[0].slope, w[1].slope)),
        Err(e) => Some(e.to_string()),
    });
    record(HnCheckKind::Ascending, ascending);

    let semistable = filt.quotients.iter().enumerate().find_map(|(i, q)| {
        if q.object.is_zero() {
            return Some(format!("quotient {i} is zero"));
        }
        match object_slope(&q.object, family) {
            Ok(Some(s)) if family.compare(&s, &q.slope).ok() == Some(Ordering::Equal) => None,
            Ok(Some(s)) => Some(format!("quotient {i} ({}) has slope {s}, recorded {}", q.object, q.slope)),
            Ok(None) => Some(format!("quotient {i} ({}) is not semistable", q.object)),
            Err(e) => Some(e.to_string()),
        }
    });
    record(HnCheckKind::Semistable, semistable);

    let mut vanishing = None;
    'outer: for i in 0..filt.quotients.len() {
        for j in i + 1..filt.quotients.len() {
            let (lo, hi) = (&filt.quotients[i].object, &filt.quotients[j].object);
            if !hom_nonpositive_vanishes(hi, lo) {
                vanishing = Some(format!("Hom^<=0({hi}, {lo}) = {:?}", hom_profile(hi, lo)));
                break 'outer;
            }
        }
    }
    record(HnCheckKind::HomVanishing, vanishing);

    let additive = if filt.terms.len() != filt.quotients.len() + 1 {
        Some(format!("{} terms for {} quotients", filt.terms.len(), filt.quotients.len()))
    } else {
        filt.quotients.iter().enumerate().find_map(|(i, q)| {
            let lhs = filt.terms[i].k0();
            let rhs = &filt.terms[i + 1].k0() + &q.object.k0();
            (lhs != rhs).then(|| format!("k0(F^{i}) = {lhs} but k0(F^{}) + k0(Q_{i}) = {rhs}", i + 1))
        })
    };
    record(HnCheckKind::K0Additive, additive);

    let endpoints = match (filt.terms.first(), filt.terms.last()) {
        (Some(first), Some(last)) if first == x && last.is_zero() => None,
        (Some(first), Some(last)) => Some(format!("terms run from {first} to {last}, expected {x} to 0")),
        _ => Some("no terms".to_string()),
    };
    record(HnCheckKind::Endpoints, endpoints);

    HnReport { checks }
}

/// Violations of the Hom-vanishing properties of an HN filtration, tested
/// against the semistable generators of a window.
pub fn check_hom_properties<S: Stability + ?Sized>(
    filt: &Filtration<S::Indec>,
    family: &S,
    window: &Window,
) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    if filt.is_empty() {
        return Ok(problems);
    }
    let x = filt.object();
    let first = &filt.quotients[0].slope;
    let last = &filt.quotients[filt.len() - 1].slope;
    let gens: Vec<(Object<S::Indec>, SlopeId)> = window_generators::<S::Indec>(window)
        .into_iter()
        .filter_map(|g| match family.slope_of(&g) {
            Ok(Some(s)) => Some(Ok((Object::from(g), s))),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    for (g, s) in &gens {
        if family.compare(s, first)? == Ordering::Less && !hom_nonpositive_vanishes(x, g) {
            problems.push(format!("Hom^<=0(X, {g}) != 0 although {s} < {first}"));
        }
        for (i, q) in filt.quotients.iter().enumerate() {
            if family.compare(s, &q.slope)? == Ordering::Less && !hom_nonpositive_vanishes(&filt.terms[i], g) {
                problems.push(format!("Hom^<=0(F^{i}X, {g}) != 0 although {s} < {}", q.slope));
            }
        }
        if family.compare(s, last)? == Ordering::Greater && !hom_nonpositive_vanishes(g, x) {
            problems.push(format!("Hom^<=0({g}, X) != 0 although {s} > {last}"));
        }
    }
    for (a, sa) in &gens {
        for (b, sb) in &gens {
            let y = a.direct_sum(b);
            let lowest = if family.compare(sa, sb)? == Ordering::Less { sa } else { sb };
            if family.compare(lowest, last)? == Ordering::Greater && !hom_nonpositive_vanishes(&y, x) {
                problems.push(format!("Hom^<=0({y}, X) != 0 although HN(Y) starts above {last}"));
            }
        }
    }
    Ok(problems)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum StabilityViolation {
    /// `slope_of(G[1]) != tau(slope_of(G))`.
    TauMismatch { generator: String, expected: String, got: String },
    /// `tau(phi) < phi`.
    TauDecreasing { slope: String },
    /// `phi_source > phi_target` but `Hom^{<=0}(source, target) != 0`.
    HomNonVanishing { source: String, target: String, profile: HomProfile },
    /// A sample object whose computed HN filtration fails verification.
    HnFailure { object: String, failed: Vec<HnCheckKind> },
    Error { message: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub generators: usize,
    pub pairs: usize,
    pub samples: usize,
    pub violations: Vec<StabilityViolation>,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the stability axioms on every generator pair in the window, then
/// runs `hn` and [`verify_hn`] on each sample object.
pub fn validate_stability<S: Stability + ?Sized>(
    family: &S,
    window: &Window,
    samples: &[Object<S::Indec>],
) -> StabilityReport {
    let mut report = StabilityReport::default();
    let mut semistable: Vec<(Object<S::Indec>, SlopeId)> = Vec::new();
    for g in window_generators::<S::Indec>(window) {
        let slope = match family.slope_of(&g) {
            Ok(Some(s)) => s,
            Ok(None) => continue,
            Err(e) => {
                report.violations.push(StabilityViolation::Error { message: e.to_string() });
                continue;
            }
        };
        report.generators += 1;
        let check = (|| -> Result<Option<StabilityViolation>> {
            let up = family.tau(&slope)?;
            match family.slope_of(&g.shifted(1))? {
                Some(s) if family.compare(&s, &up)? == Ordering::Equal => {}
                other => {
                    return Ok(Some(StabilityViolation::TauMismatch {
                        generator: g.to_string(),
                        expected: up.to_string(),
                        got: other.map(|s| s.to_string()).unwrap_or_else(|| "unstable".into()),
                    }))
                }
            }
            if family.compare(&up, &slope)? == Ordering::Less {
                return Ok(Some(StabilityViolation::TauDecreasing { slope: slope.to_string() }));
            }
            Ok(None)
        })();
        match check {
            Ok(Some(v)) => report.violations.push(v),
            Ok(None) => {}
            Err(e) => report.violations.push(StabilityViolation::Error { message: e.to_string() }),
        }
        semistable.push((g.into(), slope));
    }
    for (a, sa) in &semistable {
        for (b, sb) in &semistable {
            match family.compare(sa, sb) {
                Ok(Ordering::Greater) => {
                    report.pairs += 1;
                    if !hom_nonpositive_vanishes(a, b) {
                        report.violations.push(StabilityViolation::HomNonVanishing {
                            source: a.to_string(),
                            target: b.to_string(),
                            profile: hom_profile(a, b),
                        });
                    }
                }
                Ok(_) => {}
                Err(e) => report.violations.push(StabilityViolation::Error { message: e.to_string() }),
            }
        }
    }
    for x in samples {
        report.samples += 1;
        match hn(x, family) {
            Ok(f) => {
                let r = verify_hn(x, &f, family);
                if !r.passed() {
                    report.violations.push(StabilityViolation::HnFailure { object: x.to_string(), failed: r.failed() });
                }
            }
            Err(e) => report.violations.push(StabilityViolation::Error { message: e.to_string() }),
        }
    }
    report
}
