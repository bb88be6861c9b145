//! The marked circle with `n` accumulation points, its cyclic order, arcs,
//! crossing and suspension.
//!
//! Anticlockwise order runs `Acc(0), Pt(0, ·) by increasing p, Acc(1), Pt(1, ·), ...`.
//! Suspension moves marked points to their predecessor and fixes
//! accumulation points.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the completed marked set: an accumulation point or a marked
/// point `p` of the open segment between `Acc(i)` and `Acc(i+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryPoint {
    Acc(usize),
    Pt(usize, i64),
}

impl BoundaryPoint {
    pub fn acc(i: i64, n: usize) -> Self {
        BoundaryPoint::Acc(reduce(i, n))
    }

    pub fn pt(i: i64, p: i64, n: usize) -> Self {
        BoundaryPoint::Pt(reduce(i, n), p)
    }

    pub fn segment(&self) -> usize {
        match *self {
            BoundaryPoint::Acc(i) | BoundaryPoint::Pt(i, _) => i,
        }
    }

    pub fn is_acc(&self) -> bool {
        matches!(self, BoundaryPoint::Acc(_))
    }

    /// Position along the circle starting from `Acc(0)`; comparing keys is
    /// the linear order obtained by cutting the circle just before `Acc(0)`.
    pub fn key(&self) -> (usize, u8, i64) {
        match *self {
            BoundaryPoint::Acc(i) => (i, 0, 0),
            BoundaryPoint::Pt(i, p) => (i, 1, p),
        }
    }

    /// Next point anticlockwise; accumulation points are their own successor.
    pub fn successor(&self) -> Self {
        self.shift(-1)
    }

    pub fn predecessor(&self) -> Self {
        self.shift(1)
    }

    /// The point after applying `[k]`.
    pub fn shift(&self, k: i64) -> Self {
        match *self {
            BoundaryPoint::Acc(i) => BoundaryPoint::Acc(i),
            BoundaryPoint::Pt(i, p) => BoundaryPoint::Pt(i, p - k),
        }
    }

    pub fn rotate(&self, r: usize, n: usize) -> Self {
        match *self {
            BoundaryPoint::Acc(i) => BoundaryPoint::Acc((i + r) % n),
            BoundaryPoint::Pt(i, p) => BoundaryPoint::Pt((i + r) % n, p),
        }
    }

    /// Marked points moved to position 0 of their segment.
    pub fn normalized(&self) -> Self {
        match *self {
            BoundaryPoint::Acc(i) => BoundaryPoint::Acc(i),
            BoundaryPoint::Pt(i, _) => BoundaryPoint::Pt(i, 0),
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Acc(i) => write!(f, "a{i}"),
            BoundaryPoint::Pt(i, p) => write!(f, "m{i}({p})"),
        }
    }
}

fn reduce(i: i64, n: usize) -> usize {
    assert!(n >= 1, "n must be positive");
    i.rem_euclid(n as i64) as usize
}

/// True iff travelling anticlockwise from `x` reaches `y` strictly before `z`.
pub fn cyclic_less(x: BoundaryPoint, y: BoundaryPoint, z: BoundaryPoint) -> Result<bool> {
    if x == y || y == z || x == z {
        return Err(Error::DegenerateTriple);
    }
    Ok(strictly_between(x, y, z))
}

fn strictly_between(x: BoundaryPoint, y: BoundaryPoint, z: BoundaryPoint) -> bool {
    let (kx, ky, kz) = (x.key(), y.key(), z.key());
    (kx < ky && ky < kz) || (ky < kz && kz < kx) || (kz < kx && kx < ky)
}

/// `x` lies in the half-open anticlockwise interval `(lo, hi]`; empty when `lo == hi`.
pub fn in_half_open(x: BoundaryPoint, lo: BoundaryPoint, hi: BoundaryPoint) -> bool {
    if lo == hi {
        return false;
    }
    x == hi || (x != lo && strictly_between(lo, x, hi))
}

/// `x` lies in the closed anticlockwise interval `[lo, hi]`; a single point when `lo == hi`.
pub fn in_closed(x: BoundaryPoint, lo: BoundaryPoint, hi: BoundaryPoint) -> bool {
    x == lo || x == hi || (lo != hi && strictly_between(lo, x, hi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcKind {
    Short,
    Long,
    Limit,
    DoubleLimit,
}

/// An arc with canonically ordered endpoints; also an indecomposable object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[BoundaryPoint; 2]", try_from = "[BoundaryPoint; 2]")]
pub struct Arc {
    a: BoundaryPoint,
    b: BoundaryPoint,
}

impl Arc {
    pub fn new(x: BoundaryPoint, y: BoundaryPoint) -> Result<Self> {
        if x == y {
            return Err(Error::InvalidArc(format!("endpoints coincide at {x}")));
        }
        if let (BoundaryPoint::Pt(i, p), BoundaryPoint::Pt(j, q)) = (x, y) {
            if i == j && (p - q).abs() < 2 {
                return Err(Error::InvalidArc(format!("adjacent endpoints {x}, {y}")));
            }
        }
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        Ok(Arc { a, b })
    }

    /// Convenience constructor for an arc that is known to be valid.
    pub fn of(x: BoundaryPoint, y: BoundaryPoint) -> Self {
        Arc::new(x, y).expect("valid arc")
    }

    pub fn endpoints(&self) -> (BoundaryPoint, BoundaryPoint) {
        (self.a, self.b)
    }

    pub fn contains(&self, p: BoundaryPoint) -> bool {
        self.a == p || self.b == p
    }

    /// The endpoint other than `p`, if `p` is an endpoint.
    pub fn other(&self, p: BoundaryPoint) -> Option<BoundaryPoint> {
        if self.a == p {
            Some(self.b)
        } else if self.b == p {
            Some(self.a)
        } else {
            None
        }
    }

    pub fn kind(&self) -> ArcKind {
        match (self.a, self.b) {
            (BoundaryPoint::Acc(_), BoundaryPoint::Acc(_)) => ArcKind::DoubleLimit,
            (BoundaryPoint::Acc(_), _) | (_, BoundaryPoint::Acc(_)) => ArcKind::Limit,
            (BoundaryPoint::Pt(i, _), BoundaryPoint::Pt(j, _)) if i == j => ArcKind::Short,
            _ => ArcKind::Long,
        }
    }

    pub fn suspend(&self, k: i64) -> Arc {
        Arc::of(self.a.shift(k), self.b.shift(k))
    }

    pub fn rotate(&self, r: usize, n: usize) -> Arc {
        Arc::of(self.a.rotate(r, n), self.b.rotate(r, n))
    }

    /// Representative of the suspension class with marked points at position 0.
    /// Only meaningful for limit and double limit arcs.
    pub fn normalized(&self) -> Arc {
        Arc::of(self.a.normalized(), self.b.normalized())
    }

    /// The unique shared accumulation endpoint, if the arcs are distinct and share one.
    pub fn shared_acc(&self, other: &Arc) -> Option<BoundaryPoint> {
        if self == other {
            return None;
        }
        [self.a, self.b]
            .into_iter()
            .find(|p| p.is_acc() && other.contains(*p))
    }

    pub fn acc_endpoints(&self) -> impl Iterator<Item = BoundaryPoint> {
        [self.a, self.b].into_iter().filter(|p| p.is_acc())
    }

    pub fn max_segment(&self) -> usize {
        self.a.segment().max(self.b.segment())
    }
}

impl From<Arc> for [BoundaryPoint; 2] {
    fn from(x: Arc) -> Self {
        [x.a, x.b]
    }
}

impl TryFrom<[BoundaryPoint; 2]> for Arc {
    type Error = Error;
    fn try_from(v: [BoundaryPoint; 2]) -> Result<Self> {
        Arc::new(v[0], v[1])
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.a, self.b)
    }
}

/// Parses `a3` or `m1(-2)`, as printed by `Display`.
impl FromStr for BoundaryPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArc(format!("cannot parse boundary point {s:?}"));
        let s = s.trim();
        if let Some(i) = s.strip_prefix('a') {
            return i.parse().map(BoundaryPoint::Acc).map_err(|_| bad());
        }
        let rest = s.strip_prefix('m').ok_or_else(bad)?;
        let (i, p) = rest.strip_suffix(')').and_then(|r| r.split_once('(')).ok_or_else(bad)?;
        Ok(BoundaryPoint::Pt(i.parse().map_err(|_| bad())?, p.parse().map_err(|_| bad())?))
    }
}

/// Parses `{a0, m1(3)}`; the braces are optional.
impl FromStr for Arc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let (x, y) = inner
            .split_once(',')
            .ok_or_else(|| Error::InvalidArc(format!("expected two endpoints in {s:?}")))?;
        Arc::new(x.parse()?, y.parse()?)
    }
}

/// Strict interleaving of endpoints; a shared endpoint never counts.
pub fn cross(x: &Arc, y: &Arc) -> bool {
    let (x0, x1) = x.endpoints();
    let (y0, y1) = y.endpoints();
    if y.contains(x0) || y.contains(x1) {
        return false;
    }
    strictly_between(x0, y0, x1) != strictly_between(x0, y1, x1)
}

pub fn suspend(x: &Arc, k: i64) -> Arc {
    x.suspend(k)
}

/// Whether `x` and some suspension of `y` cross.
pub fn crosses_under_some_shift(x: &Arc, y: &Arc) -> bool {
    let (x0, x1) = x.endpoints();
    let (y0, y1) = y.endpoints();
    let mut offsets = vec![0i64];
    for xp in [x0, x1] {
        for yp in [y0, y1] {
            if let (BoundaryPoint::Pt(i, p), BoundaryPoint::Pt(j, q)) = (xp, yp) {
                if i == j {
                    // q - k sweeps past p as k varies; probe each side of it.
                    for d in -3..=3 {
                        offsets.push(q - p + d);
                    }
                }
            }
        }
    }
    offsets.into_iter().any(|k| cross(x, &y.suspend(k)))
}

/// A finite, duplicate-free, ordered collection of arcs over `n` accumulation points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawArcSet")]
pub struct ArcSet {
    n: usize,
    arcs: Vec<Arc>,
}

#[derive(Deserialize)]
struct RawArcSet {
    n: usize,
    arcs: Vec<Arc>,
}

impl TryFrom<RawArcSet> for ArcSet {
    type Error = Error;
    fn try_from(raw: RawArcSet) -> Result<Self> {
        ArcSet::new(raw.n, raw.arcs)
    }
}

impl ArcSet {
    pub fn new(n: usize, arcs: Vec<Arc>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArcSet("n must be positive".into()));
        }
        for (k, x) in arcs.iter().enumerate() {
            if x.max_segment() >= n {
                return Err(Error::InvalidArcSet(format!("arc {x} uses an index beyond n = {n}")));
            }
            if arcs[..k].contains(x) {
                return Err(Error::InvalidArcSet(format!("duplicate arc {x}")));
            }
        }
        Ok(ArcSet { n, arcs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Arcs sorted into canonical order.
    pub fn canonical(&self) -> ArcSet {
        let mut arcs = self.arcs.clone();
        arcs.sort();
        ArcSet { n: self.n, arcs }
    }

    pub fn rotate(&self, r: usize) -> ArcSet {
        let arcs = self.arcs.iter().map(|x| x.rotate(r, self.n)).collect();
        ArcSet { n: self.n, arcs }
    }

    pub fn normalized(&self) -> Result<ArcSet> {
        ArcSet::new(self.n, self.arcs.iter().map(Arc::normalized).collect())
    }

    pub fn index_of(&self, x: &Arc) -> Option<usize> {
        self.arcs.iter().position(|y| y == x)
    }
}

/// Segments containing a marked-point endpoint of some arc.
pub fn orbit_segments(a: &ArcSet) -> BTreeSet<usize> {
    a.arcs()
        .iter()
        .flat_map(|x| {
            let (p, q) = x.endpoints();
            [p, q]
        })
        .filter(|p| !p.is_acc())
        .map(|p| p.segment())
        .collect()
}

pub fn complete_orbit(a: &ArcSet) -> bool {
    orbit_segments(a).len() == a.n()
}
