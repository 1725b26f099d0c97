//! t-structures from cuts of a slope set.
//!
//! A cut `Phi = Phi_- ⊔ Phi_+` with `Phi_+` closed upwards gives
//! `T^{<=0} = <Pi_phi | phi in Phi_+>` and `T^{>=0} = <Pi_phi | phi in tau(Phi_-)>`.
//! An object lies in `T^{<=0}` when all its HN slopes lie in `Phi_+`; the
//! heart is cut out by `phi in Phi_+` and `tau^{-1}(phi) in Phi_-`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::StabilityFamily;
use crate::object::{hom0, window_generators, Indecomposable, Object, Point, PointOrder, Window};
use crate::p1::{DerivedObject, P1Indec};
use crate::stability::{hn, Level, POrder, SlopeId, Stability};

/// An integer or one of the two infinities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInf,
    Finite(i64),
    PosInf,
}

impl Bound {
    /// Whether `i >= self`.
    pub fn admits(self, i: i64) -> bool {
        match self {
            Bound::NegInf => true,
            Bound::Finite(b) => b <= i,
            Bound::PosInf => false,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Bound::Finite(_))
    }

    pub fn offset(self, n: i64) -> Bound {
        match self {
            Bound::Finite(b) => Bound::Finite(b + n),
            inf => inf,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::Finite(b) => write!(f, "{b}"),
            Bound::PosInf => write!(f, "inf"),
        }
    }
}

impl FromStr for Bound {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-inf" => Ok(Bound::NegInf),
            "inf" | "+inf" => Ok(Bound::PosInf),
            t => t.parse().map(Bound::Finite).map_err(|_| Error::InvalidCut(format!("`{t}` is not an integer or ±inf"))),
        }
    }
}

/// The points whose torsion sheaves sit at the lower threshold of a standard
/// cut with `K = +inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PointSet {
    All,
    None,
    Set(BTreeSet<Point>),
}

impl PointSet {
    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Self {
        let set: BTreeSet<Point> = labels.iter().map(|l| Point::new(l.as_ref())).collect();
        if set.is_empty() {
            PointSet::None
        } else {
            PointSet::Set(set)
        }
    }

    pub fn contains(&self, x: &Point) -> bool {
        match self {
            PointSet::All => true,
            PointSet::None => false,
            PointSet::Set(s) => s.contains(x),
        }
    }

    fn normalized(&self) -> PointSet {
        match self {
            PointSet::Set(s) if s.is_empty() => PointSet::None,
            other => other.clone(),
        }
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSet::All => write!(f, "all"),
            PointSet::None => write!(f, "none"),
            PointSet::Set(s) => {
                let labels: Vec<&str> = s.iter().map(Point::label).collect();
                write!(f, "{}", labels.join(";"))
            }
        }
    }
}

/// A finite description of `Phi_+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SlopeCut {
    /// Threshold `c(n) = m+1` for `n < k`, else `m`; `c(x) = m` if `k < +inf`
    /// or `x in points`, else `m+1`. `Phi_+ = {(i,a) : i >= c(a)}`.
    Standard { m: i64, k: Bound, points: PointSet },
    /// `Phi_+ = {(i,0) : i >= a} ∪ {(j,1) : j >= b}`.
    Exceptional { a: Bound, b: Bound },
    /// `Phi_+ = {i >= m}`.
    Coarse { m: i64 },
}

impl SlopeCut {
    pub fn standard(m: i64, k: Bound, points: PointSet) -> Self {
        SlopeCut::Standard { m, k, points }
    }

    pub fn exceptional(a: Bound, b: Bound) -> Self {
        SlopeCut::Exceptional { a, b }
    }

    /// The threshold shift of a standard level.
    fn threshold(m: i64, k: Bound, points: &PointSet, level: &Level) -> i64 {
        match level {
            Level::Int(n) => {
                if k > Bound::Finite(*n) {
                    m + 1
                } else {
                    m
                }
            }
            Level::Pt(x) => {
                if k < Bound::PosInf || points.contains(x) {
                    m
                } else {
                    m + 1
                }
            }
        }
    }

    /// Whether `slope` lies in `Phi_+`.
    pub fn in_plus(&self, slope: &SlopeId) -> Result<bool> {
        match (self, slope) {
            (SlopeCut::Standard { m, k, points }, SlopeId::Standard { shift, level }) => {
                Ok(*shift >= Self::threshold(*m, *k, points, level))
            }
            (SlopeCut::Exceptional { a, .. }, SlopeId::Exceptional { shift, col: 0 }) => Ok(a.admits(*shift)),
            (SlopeCut::Exceptional { b, .. }, SlopeId::Exceptional { shift, .. }) => Ok(b.admits(*shift)),
            (SlopeCut::Coarse { m }, SlopeId::Coarse { shift }) => Ok(shift >= m),
            (cut, s) => Err(Error::InvalidCut(format!("cut {cut} does not apply to {} slopes", s.family_name()))),
        }
    }

    /// The same cut after the shift functor `[-s]`: everything moves up by `s`.
    pub fn shifted(&self, s: i64) -> SlopeCut {
        match self {
            SlopeCut::Standard { m, k, points } => SlopeCut::Standard { m: m + s, k: *k, points: points.clone() },
            SlopeCut::Exceptional { a, b } => SlopeCut::Exceptional { a: a.offset(s), b: b.offset(s) },
            SlopeCut::Coarse { m } => SlopeCut::Coarse { m: m + s },
        }
    }

    /// The image of the cut under the twist `- ⊗ O(t)`. Exceptional cuts keep
    /// their parameters and move to the family with `k + t`.
    pub fn twisted(&self, t: i64) -> SlopeCut {
        match self {
            SlopeCut::Standard { m, k, points } => SlopeCut::Standard { m: *m, k: k.offset(t), points: points.clone() },
            other => other.clone(),
        }
    }
}

impl fmt::Display for SlopeCut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeCut::Standard { m, k, points } => write!(f, "std:m={m},K={k},P={points}"),
            SlopeCut::Exceptional { a, b } => write!(f, "exc:a={a},b={b}"),
            SlopeCut::Coarse { m } => write!(f, "coarse:m={m}"),
        }
    }
}

/// Parses `std:m=M,K=K|inf|-inf,P=x;y|all|none`, `exc:a=A,b=B` and `coarse:m=M`.
impl FromStr for SlopeCut {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidCut(msg);
        let (kind, rest) = s.trim().split_once(':').ok_or_else(|| bad(format!("`{s}` has no `kind:` prefix")))?;
        let mut fields = std::collections::BTreeMap::new();
        for kv in rest.split(',').map(str::trim).filter(|kv| !kv.is_empty()) {
            let (key, value) = kv.split_once('=').ok_or_else(|| bad(format!("`{kv}` is not key=value")))?;
            fields.insert(key.trim().to_string(), value.trim().to_string());
        }
        let take = |key: &str| fields.get(key).map(String::as_str);
        let int = |key: &str, default: i64| -> Result<i64> {
            take(key).map_or(Ok(default), |v| v.parse().map_err(|_| bad(format!("{key}={v} is not an integer"))))
        };
        let check_keys = |allowed: &[&str]| -> Result<()> {
            match fields.keys().find(|k| !allowed.contains(&k.as_str())) {
                Some(k) => Err(bad(format!("unknown field `{k}` for {kind} cut"))),
                None => Ok(()),
            }
        };
        match kind.trim() {
            "std" => {
                check_keys(&["m", "K", "P"])?;
                let points = match take("P").unwrap_or("all") {
                    "all" => PointSet::All,
                    "none" => PointSet::None,
                    list => {
                        let labels: Vec<&str> = list.split(';').map(str::trim).filter(|l| !l.is_empty()).collect();
                        if let Some(l) = labels.iter().find(|l| !Point::is_valid_label(l)) {
                            return Err(bad(format!("`{l}` is not a point label")));
                        }
                        PointSet::from_labels(&labels)
                    }
                };
                Ok(SlopeCut::Standard { m: int("m", 0)?, k: take("K").unwrap_or("-inf").parse()?, points })
            }
            "exc" => {
                check_keys(&["a", "b"])?;
                let a = take("a").ok_or_else(|| bad("exc cut needs a=".into()))?.parse()?;
                let b = take("b").ok_or_else(|| bad("exc cut needs b=".into()))?.parse()?;
                Ok(SlopeCut::Exceptional { a, b })
            }
            "coarse" => {
                check_keys(&["m"])?;
                Ok(SlopeCut::Coarse { m: int("m", 0)? })
            }
            other => Err(bad(format!("unknown cut kind `{other}`"))),
        }
    }
}

fn exceptional_family(family: &StabilityFamily) -> Option<(i64, POrder)> {
    match family {
        StabilityFamily::Exceptional(e) => Some((e.k, e.p)),
        _ => None,
    }
}

/// The exact validity conditions. `Ok(())` when `Phi_+` is closed upwards,
/// nonempty and not everything.
pub fn check_cut(cut: &SlopeCut, family: &StabilityFamily) -> Result<()> {
    let invalid = |msg: String| Err(Error::InvalidCut(msg));
    match (cut, family) {
        (SlopeCut::Coarse { .. }, StabilityFamily::Coarse(_)) => Ok(()),
        (SlopeCut::Standard { k, points, .. }, StabilityFamily::Standard(s)) => {
            if *k != Bound::PosInf {
                return Ok(());
            }
            if let PointSet::Set(set) = points {
                let order: &PointOrder = &s.point_order;
                if let Some(x) = set.iter().find(|x| !order.contains(x)) {
                    return invalid(format!("point {x} is not in the configured point order"));
                }
                for x in set {
                    if let Some(y) = order.points().iter().find(|y| !set.contains(y) && order.cmp(y, x) == Ordering::Greater) {
                        return invalid(format!("{{{points}}} is not closed upwards: {y} > {x} is missing"));
                    }
                }
            }
            Ok(())
        }
        (SlopeCut::Exceptional { a, b }, StabilityFamily::Exceptional(e)) => match (e.p, *a, *b) {
            (POrder::Finite(p), Bound::Finite(a), Bound::Finite(b)) => {
                let p = p as i64;
                if b == a - p - 2 || b == a - p - 1 {
                    Ok(())
                } else {
                    invalid(format!("with p = {p} a cut needs b in {{a-p-2, a-p-1}} = {{{}, {}}}, got b = {b}", a - p - 2, a - p - 1))
                }
            }
            (POrder::Finite(_), a, b) if a == b && !a.is_finite() => invalid(format!("Phi_+ is {}", degenerate(a))),
            (POrder::Finite(p), _, _) => invalid(format!("with p = {p} both a and b must be finite")),
            (POrder::Infinite, Bound::NegInf, Bound::NegInf) | (POrder::Infinite, Bound::PosInf, Bound::PosInf) => {
                invalid(format!("Phi_+ is {}", degenerate(*a)))
            }
            (POrder::Infinite, Bound::PosInf, _) | (POrder::Infinite, _, Bound::NegInf) => Ok(()),
            (POrder::Infinite, _, _) => invalid("with p = inf, a < +inf forces b = -inf".into()),
        },
        (cut, family) => invalid(format!("cut {cut} does not apply to the {family} family")),
    }
}

fn degenerate(a: Bound) -> &'static str {
    if a == Bound::NegInf {
        "everything"
    } else {
        "empty"
    }
}

/// Result of [`validate_cut`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutReport {
    pub valid: bool,
    pub problems: Vec<String>,
    /// Number of slope pairs checked for upward closure.
    pub pairs: usize,
}

/// Checks the exact conditions of [`check_cut`] and, independently, upward
/// closure of `Phi_+` on every pair of slopes from the window.
pub fn validate_cut(cut: &SlopeCut, family: &StabilityFamily, window: &Window) -> CutReport {
    let mut problems = Vec::new();
    if let Err(e) = check_cut(cut, family) {
        problems.push(e.to_string());
    }
    let mut pairs = 0;
    match window_slopes(family, window, cut) {
        Ok(slopes) => {
            let flags: Vec<Option<bool>> = slopes.iter().map(|s| cut.in_plus(s).ok()).collect();
            for (s, fs) in slopes.iter().zip(&flags) {
                for (t, ft) in slopes.iter().zip(&flags) {
                    if let (Some(true), Some(false)) = (fs, ft) {
                        pairs += 1;
                        if family.compare(s, t).ok() == Some(Ordering::Less) {
                            problems.push(format!("{s} is in Phi_+ but the larger {t} is not"));
                        }
                    }
                }
            }
        }
        Err(e) => problems.push(e.to_string()),
    }
    CutReport { valid: problems.is_empty(), problems, pairs }
}

/// Adds a point outside every listed set, standing in for the generic points
/// of P1, which no finite window would otherwise see.
fn with_generic_point(mut points: Vec<Point>) -> Vec<Point> {
    let mut label = String::from("generic");
    while points.iter().any(|p| p.label() == label) {
        label.push('_');
    }
    points.push(Point::new(&label));
    points.sort();
    points.dedup();
    points
}

/// Slopes of the semistable generators of the window, without repetition.
fn window_slopes(family: &StabilityFamily, window: &Window, cut: &SlopeCut) -> Result<Vec<SlopeId>> {
    let mut points = window.points.clone();
    points.extend(family.points());
    if let SlopeCut::Standard { points: PointSet::Set(set), .. } = cut {
        points.extend(set.iter().cloned());
    }
    let window = window.clone().with_points(with_generic_point(points)).with_length(1);
    let mut out: Vec<SlopeId> = Vec::new();
    for g in window_generators::<P1Indec>(&window) {
        if let Some(s) = family.slope_of(&g)? {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// Splits `x` into `(X_le0, X_ge1)` with `X_le0 ∈ T^{<=0}`, `X_ge1 ∈ T^{>=1}`.
/// Each summand goes wholly to one side, or is cut along its HN filtration.
pub fn truncate(x: &DerivedObject, cut: &SlopeCut, family: &StabilityFamily) -> Result<(DerivedObject, DerivedObject)> {
    check_cut(cut, family)?;
    let mut le0 = Object::zero();
    let mut ge1 = Object::zero();
    for (g, m) in x.terms() {
        let f = family.indecomposable_hn(g)?;
        let flags = f.quotients.iter().map(|q| cut.in_plus(&q.slope)).collect::<Result<Vec<bool>>>()?;
        match flags.iter().position(|b| *b) {
            Some(0) => le0.add_assign(&Object::single(g.clone(), m)),
            None => ge1.add_assign(&Object::single(g.clone(), m)),
            Some(k) => {
                le0.add_assign(&f.terms[k].scale(m));
                for q in &f.quotients[..k] {
                    ge1.add_assign(&q.object.scale(m));
                }
            }
        }
    }
    Ok((le0, ge1))
}

/// Whether `phi` lies in the heart: `phi in Phi_+` and `tau^{-1}(phi) in Phi_-`.
pub fn in_heart(slope: &SlopeId, cut: &SlopeCut, family: &StabilityFamily) -> Result<bool> {
    Ok(cut.in_plus(slope)? && !cut.in_plus(&family.tau_inv(slope)?)?)
}

/// Whether `x` lies in the heart of the t-structure of `cut`.
pub fn heart_contains(x: &DerivedObject, cut: &SlopeCut, family: &StabilityFamily) -> Result<bool> {
    check_cut(cut, family)?;
    for q in hn(x, family)?.quotients {
        if !in_heart(&q.slope, cut, family)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `x` lies in `T^{<=0}`.
pub fn in_le0(x: &DerivedObject, cut: &SlopeCut, family: &StabilityFamily) -> Result<bool> {
    for q in hn(x, family)?.quotients {
        if !cut.in_plus(&q.slope)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every object lies between two shifts of the t-structure.
pub fn is_bounded(cut: &SlopeCut, family: &StabilityFamily) -> Result<bool> {
    check_cut(cut, family)?;
    Ok(match cut {
        SlopeCut::Exceptional { a, b } => a.is_finite() && b.is_finite(),
        _ => true,
    })
}

/// The heart as a list of generators, plus boundedness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeartDescription {
    pub generators: Vec<String>,
    pub bounded: bool,
}

fn line_label(n: i64) -> String {
    if n == 0 {
        "O".to_string()
    } else {
        format!("O({n})")
    }
}

/// The heart generators of a valid cut.
pub fn heart_slopes(cut: &SlopeCut, family: &StabilityFamily) -> Result<HeartDescription> {
    let bounded = is_bounded(cut, family)?;
    let generators = match cut {
        SlopeCut::Coarse { m } => vec![format!("Coh[{m}]")],
        SlopeCut::Standard { m, k, points } => {
            let m = *m;
            let lines: Vec<String> = match k {
                Bound::NegInf => vec![format!("O(n)[{m}], n in Z")],
                Bound::PosInf => vec![format!("O(n)[{}], n in Z", m + 1)],
                Bound::Finite(k) => vec![format!("O(n)[{m}], n >= {k}"), format!("O(n)[{}], n < {k}", m + 1)],
            };
            let pts = match (k, points.normalized()) {
                (Bound::PosInf, PointSet::None) => vec![format!("O_x[{}], x in P1", m + 1)],
                (Bound::PosInf, PointSet::Set(set)) => {
                    let labels: Vec<&str> = set.iter().map(Point::label).collect();
                    let labels = labels.join(", ");
                    vec![format!("O_x[{m}], x in {{{labels}}}"), format!("O_y[{}], y not in {{{labels}}}", m + 1)]
                }
                _ => vec![format!("O_x[{m}], x in P1")],
            };
            match (k, points.normalized()) {
                (Bound::NegInf, _) => vec![format!("Coh[{m}]")],
                (Bound::PosInf, PointSet::None) => vec![format!("Coh[{}]", m + 1)],
                _ => lines.into_iter().chain(pts).collect(),
            }
        }
        SlopeCut::Exceptional { a, b } => {
            let (k, _) = exceptional_family(family).expect("checked by is_bounded");
            let mut g = Vec::new();
            if let Bound::Finite(a) = a {
                g.push(format!("{}[{a}]", line_label(k)));
            }
            if let Bound::Finite(b) = b {
                g.push(format!("{}[{b}]", line_label(k + 1)));
            }
            g
        }
    };
    Ok(HeartDescription { generators, bounded })
}

/// Names of the t-structures in the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CatalogName {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
}

impl CatalogName {
    pub const ALL: [CatalogName; 9] = [
        CatalogName::A,
        CatalogName::B,
        CatalogName::C,
        CatalogName::D,
        CatalogName::E,
        CatalogName::F,
        CatalogName::G,
        CatalogName::H,
        CatalogName::I,
    ];
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for CatalogName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CatalogName::ALL
            .into_iter()
            .find(|n| n.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::BadParams(format!("no catalog entry `{s}`")))
    }
}

/// Parameters of a catalog entry: `p` for E and F, the point set for D.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CatalogParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Point>>,
}

impl CatalogParams {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn p(p: u32) -> Self {
        CatalogParams { p: Some(p), points: None }
    }

    pub fn points<S: AsRef<str>>(labels: &[S]) -> Self {
        CatalogParams { p: None, points: Some(labels.iter().map(|l| Point::new(l.as_ref())).collect()) }
    }
}

/// A catalog t-structure, normalized to `k = 0` and `m = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: CatalogName,
    pub params: CatalogParams,
    pub family: StabilityFamily,
    pub cut: SlopeCut,
    pub heart: HeartDescription,
    /// F(0): the heart is the category of the Kronecker quiver.
    pub quiver: bool,
}

/// Builds a catalog entry. `point_order` is the point order of the standard
/// family; for D it is reordered so that the chosen points come last.
pub fn catalog(name: CatalogName, params: &CatalogParams, point_order: &PointOrder) -> Result<CatalogEntry> {
    let need_p = || params.p.ok_or_else(|| Error::BadParams(format!("{name} needs p >= 0")));
    let std = |order: PointOrder, m, k, points| (StabilityFamily::standard(order), SlopeCut::standard(m, k, points));
    let exc = |p: POrder, a, b| (StabilityFamily::exceptional(0, p), SlopeCut::exceptional(a, b));
    let mut stored = CatalogParams::none();
    let (family, cut) = match name {
        CatalogName::A => std(point_order.clone(), 0, Bound::NegInf, PointSet::All),
        CatalogName::B => std(point_order.clone(), 0, Bound::Finite(0), PointSet::All),
        CatalogName::C => std(point_order.clone(), 0, Bound::PosInf, PointSet::All),
        CatalogName::D => {
            let chosen = params.points.clone().unwrap_or_default();
            if chosen.is_empty() {
                return Err(Error::BadParams("D needs a nonempty point set".into()));
            }
            if let Some(x) = chosen.iter().find(|x| !Point::is_valid_label(x.label())) {
                return Err(Error::BadParams(format!("`{x}` is not a point label")));
            }
            let mut order: Vec<Point> = point_order.points().iter().filter(|x| !chosen.contains(x)).cloned().collect();
            let mut top: Vec<Point> = chosen.clone();
            top.sort_by(|x, y| point_order.cmp(x, y));
            top.dedup();
            order.extend(top.iter().cloned());
            stored.points = Some(top.clone());
            std(PointOrder::new(order), 0, Bound::PosInf, PointSet::Set(top.into_iter().collect()))
        }
        CatalogName::E => {
            let p = need_p()?;
            stored.p = Some(p);
            exc(POrder::Finite(p), Bound::Finite(p as i64), Bound::Finite(-2))
        }
        CatalogName::F => {
            let p = need_p()?;
            stored.p = Some(p);
            exc(POrder::Finite(p), Bound::Finite(p as i64), Bound::Finite(-1))
        }
        CatalogName::G => exc(POrder::Infinite, Bound::Finite(0), Bound::NegInf),
        CatalogName::H => exc(POrder::Infinite, Bound::PosInf, Bound::Finite(0)),
        CatalogName::I => exc(POrder::Infinite, Bound::PosInf, Bound::NegInf),
    };
    let heart = heart_slopes(&cut, &family)?;
    Ok(CatalogEntry { name, quiver: name == CatalogName::F && stored.p == Some(0), params: stored, family, cut, heart })
}

/// A torsion pair `(A_1, A_0)` in `Coh P1`, given by membership of
/// indecomposable sheaves in `A_1`; `A_0` is the complement.
#[derive(Clone)]
pub struct TorsionPair {
    a1: Arc<dyn Fn(&P1Indec) -> bool + Send + Sync>,
}

impl fmt::Debug for TorsionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("TorsionPair")
    }
}

impl TorsionPair {
    pub fn new(a1: impl Fn(&P1Indec) -> bool + Send + Sync + 'static) -> Self {
        TorsionPair { a1: Arc::new(a1) }
    }

    pub fn in_a1(&self, g: &P1Indec) -> bool {
        (self.a1)(g)
    }

    pub fn in_a0(&self, g: &P1Indec) -> bool {
        !self.in_a1(g)
    }
}

/// The standard cut whose `Phi_+` is `{i >= 1}` plus the slopes of `A_1` in
/// shift 0, after checking `Hom^0(A_1, A_0) = 0` on the window.
pub fn torsion_pair_cut(pair: &TorsionPair, window: &Window) -> Result<SlopeCut> {
    let sheaves = P1Indec::enumerate(window);
    for a in sheaves.iter().filter(|g| pair.in_a1(g)) {
        for b in sheaves.iter().filter(|g| pair.in_a0(g)) {
            let d = hom0(&Object::sheaf(a.clone()), &Object::sheaf(b.clone()));
            if d != 0 {
                return Err(Error::HomViolation(format!("Hom({a}, {b}) has dimension {d}")));
            }
        }
    }
    let not_describable = |msg: String| Err(Error::NotSlopeDescribable(msg));
    let degrees: Vec<i64> = (-window.degree..=window.degree).collect();
    let a1_degrees: Vec<i64> = degrees.iter().copied().filter(|n| pair.in_a1(&P1Indec::Line(*n))).collect();
    let k = match a1_degrees.first() {
        None => Bound::PosInf,
        Some(&n) if n == -window.degree => Bound::NegInf,
        Some(&n) => Bound::Finite(n),
    };
    if a1_degrees.iter().zip(a1_degrees.iter().skip(1)).any(|(a, b)| b - a != 1) || a1_degrees.last().is_some_and(|n| *n != window.degree) {
        return not_describable(format!("line bundles in A_1 have degrees {a1_degrees:?}, not an interval up to +inf"));
    }
    let mut a1_points = BTreeSet::new();
    for x in &window.points {
        let members: Vec<bool> = (1..=window.length).map(|d| pair.in_a1(&P1Indec::Torsion { point: x.clone(), length: d })).collect();
        if members.iter().any(|b| *b != members[0]) {
            return not_describable(format!("torsion at {x} is split between A_1 and A_0 by length"));
        }
        if members[0] {
            a1_points.insert(x.clone());
        }
    }
    let points = if a1_points.len() == window.points.len() {
        PointSet::All
    } else if k != Bound::PosInf {
        return not_describable("some line bundle is in A_1 but some torsion sheaf is not".into());
    } else {
        PointSet::Set(a1_points).normalized()
    };
    Ok(SlopeCut::Standard { m: 0, k, points })
}

/// Bounded cut identified with a catalog entry up to twist and shift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub name: CatalogName,
    pub params: CatalogParams,
    /// Apply `- ⊗ O(twist)` and then `[-shift]` to the catalog entry to get the input.
    pub twist: i64,
    pub shift: i64,
}

/// The catalog entry with the given twist and shift applied.
pub fn apply_normalization(entry: &CatalogEntry, twist: i64, shift: i64) -> (StabilityFamily, SlopeCut) {
    let family = match &entry.family {
        StabilityFamily::Exceptional(e) => StabilityFamily::exceptional(e.k + twist, e.p),
        other => other.clone(),
    };
    (family, entry.cut.twisted(twist).shifted(shift))
}

/// Whether two cuts define the same `T^{<=0}` on the indecomposables of the window.
pub fn cuts_equivalent(
    (f1, c1): (&StabilityFamily, &SlopeCut),
    (f2, c2): (&StabilityFamily, &SlopeCut),
    window: &Window,
) -> Result<bool> {
    let mut points = window.points.clone();
    for c in [c1, c2] {
        if let SlopeCut::Standard { points: PointSet::Set(s), .. } = c {
            points.extend(s.iter().cloned());
        }
    }
    points.extend(f1.points());
    points.extend(f2.points());
    let window = window.clone().with_points(with_generic_point(points)).with_length(1);
    for g in window_generators::<P1Indec>(&window) {
        let x = DerivedObject::from(g);
        if in_le0(&x, c1, f1)? != in_le0(&x, c2, f2)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All catalog entries of the cut's own family type that reproduce the cut
/// after the computed twist and shift.
pub fn catalog_matches(cut: &SlopeCut, family: &StabilityFamily, window: &Window) -> Result<Vec<Classification>> {
    check_cut(cut, family)?;
    if !is_bounded(cut, family)? {
        return Err(Error::Unbounded);
    }
    let order = match family {
        StabilityFamily::Standard(s) => s.point_order.clone(),
        _ => PointOrder::default(),
    };
    let mut candidates: Vec<(CatalogName, CatalogParams, i64, i64)> = Vec::new();
    match (cut, family) {
        (SlopeCut::Coarse { m }, _) => candidates.push((CatalogName::A, CatalogParams::none(), 0, *m)),
        (SlopeCut::Standard { m, k, points }, _) => {
            for s in [*m, m + 1] {
                candidates.push((CatalogName::A, CatalogParams::none(), 0, s));
            }
            if let Bound::Finite(k) = k {
                candidates.push((CatalogName::B, CatalogParams::none(), *k, *m));
            }
            candidates.push((CatalogName::C, CatalogParams::none(), 0, *m));
            if let PointSet::Set(set) = points.normalized() {
                let labels: Vec<&str> = set.iter().map(Point::label).collect();
                candidates.push((CatalogName::D, CatalogParams::points(&labels), 0, *m));
            }
        }
        (SlopeCut::Exceptional { a: Bound::Finite(a), .. }, StabilityFamily::Exceptional(e)) => {
            if let POrder::Finite(p) = e.p {
                for name in [CatalogName::E, CatalogName::F] {
                    candidates.push((name, CatalogParams::p(p), e.k, a - p as i64));
                }
            }
        }
        _ => {}
    }
    let mut out = Vec::new();
    for (name, params, twist, shift) in candidates {
        let entry = catalog(name, &params, &order)?;
        let (f, c) = apply_normalization(&entry, twist, shift);
        if cuts_equivalent((&f, &c), (family, cut), window)? {
            out.push(Classification { name, params: entry.params, twist, shift });
        }
    }
    Ok(out)
}

/// Identifies a bounded cut with its catalog entry.
pub fn classify_bounded_cut(cut: &SlopeCut, family: &StabilityFamily, window: &Window) -> Result<Classification> {
    let mut matches = catalog_matches(cut, family, window)?;
    match matches.len() {
        1 => Ok(matches.remove(0)),
        0 => Err(Error::InvalidCut(format!("{cut} matches no catalog entry"))),
        n => Err(Error::InvalidCut(format!("{cut} matches {n} catalog entries"))),
    }
}

/// An ASCII picture of the cut: slopes in increasing order, `-` for `Phi_-`,
/// `+` for `Phi_+` and `#` for heart slopes.
pub fn render_diagram(cut: &SlopeCut, family: &StabilityFamily) -> Result<String> {
    check_cut(cut, family)?;
    let mark = |s: &SlopeId| -> Result<char> {
        Ok(if in_heart(s, cut, family)? {
            '#'
        } else if cut.in_plus(s)? {
            '+'
        } else {
            '-'
        })
    };
    let mut out = String::new();
    match (cut, family) {
        (SlopeCut::Standard { m, k, points }, StabilityFamily::Standard(st)) => {
            let mut cols: Vec<(String, Level)> = Vec::new();
            match k {
                Bound::Finite(k) => {
                    cols.push((format!("O(n<{k})"), Level::Int(k - 1)));
                    cols.push((format!("O(n>={k})"), Level::Int(*k)));
                }
                _ => cols.push(("O(n)".into(), Level::Int(0))),
            }
            let mut pts: Vec<Point> = st.point_order.points().to_vec();
            if let PointSet::Set(s) = points {
                pts.extend(s.iter().filter(|x| !pts.contains(x)).cloned().collect::<Vec<_>>());
            }
            if pts.is_empty() {
                pts.push(Point::new("x"));
            }
            for x in pts {
                cols.push((format!("O_{x}"), Level::Pt(x)));
            }
            let width = cols.iter().map(|(h, _)| h.len()).max().unwrap_or(1).max(3);
            out.push_str(&format!("{:>6} ", "shift"));
            for (h, _) in &cols {
                out.push_str(&format!(" {h:^width$}"));
            }
            out.push('\n');
            for i in (m - 1..=m + 2).rev() {
                out.push_str(&format!("{i:>6} "));
                for (_, level) in &cols {
                    let c = mark(&SlopeId::Standard { shift: i, level: level.clone() })?;
                    out.push_str(&format!(" {:^width$}", c.to_string()));
                }
                out.push('\n');
            }
        }
        (SlopeCut::Exceptional { a, b }, StabilityFamily::Exceptional(e)) => {
            let centre = [a, b].iter().find_map(|x| if let Bound::Finite(v) = x { Some(*v) } else { None }).unwrap_or(0);
            let mut slopes: Vec<SlopeId> =
                (centre - 4..=centre + 4).flat_map(|i| [SlopeId::exceptional(i, 0), SlopeId::exceptional(i, 1)]).collect();
            slopes.sort_by(|x, y| family.compare(x, y).unwrap_or(Ordering::Equal));
            let mut labels = Vec::new();
            let mut marks = Vec::new();
            for s in &slopes {
                let SlopeId::Exceptional { shift, col } = s else { unreachable!() };
                let label = format!("{}[{shift}]", line_label(e.k + *col as i64));
                marks.push(format!("{:^w$}", mark(s)?.to_string(), w = label.len()));
                labels.push(label);
            }
            out.push_str(&format!("... {} ...\n", labels.join(" < ")));
            out.push_str(&format!("    {}\n", marks.join("   ")));
        }
        (SlopeCut::Coarse { m }, _) => {
            let cells: Vec<String> = (m - 2..=m + 2)
                .map(|i| Ok(format!("Coh[{i}]:{}", mark(&SlopeId::Coarse { shift: i })?)))
                .collect::<Result<_>>()?;
            out.push_str(&format!("... {} ...\n", cells.join(" < ")));
        }
        _ => unreachable!("check_cut matched cut and family"),
    }
    out.push_str("legend: - Phi_-, + Phi_+, # heart\n");
    Ok(out)
}
