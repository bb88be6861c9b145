//! Graded morphism spaces between indecomposables, composition, the
//! forward/backward dichotomy and triangles with indecomposable end terms.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::cyclic_geometry::{cross, in_closed, in_half_open, Arc, ArcSet, BoundaryPoint};
use crate::error::{Error, Result};

/// Default degree window: statements "for all i" are checked on `[-D, D]`.
pub const DEFAULT_WINDOW: i64 = 6;

/// Dimension of `Ext^1(X, Y)`, always 0 or 1.
pub fn ext1_dim(x: &Arc, y: &Arc) -> u8 {
    if x == y {
        return (x.kind() == crate::cyclic_geometry::ArcKind::DoubleLimit) as u8;
    }
    if cross(x, y) {
        return 1;
    }
    if let Some(a) = x.shared_acc(y) {
        let u = x.other(a).unwrap();
        let v = y.other(a).unwrap();
        // Y is X rotated anticlockwise about a: a < u < v.
        if u != v && crate::cyclic_geometry::cyclic_less(a, u, v).unwrap_or(false) {
            return 1;
        }
    }
    0
}

/// Dimension of `Hom(X, Y[i]) = Ext^1(X, Y[i-1])`.
pub fn hom_dim(x: &Arc, y: &Arc, i: i64) -> u8 {
    ext1_dim(x, &y.suspend(i - 1))
}

/// The `k` with `y[k] == x`, if `x` is a suspension of `y`.
pub fn shift_between(y: &Arc, x: &Arc) -> Option<i64> {
    let (y0, y1) = y.endpoints();
    let (x0, x1) = x.endpoints();
    let mut candidates = vec![0];
    for yp in [y0, y1] {
        for xp in [x0, x1] {
            if let (BoundaryPoint::Pt(i, p), BoundaryPoint::Pt(j, q)) = (yp, xp) {
                if i == j {
                    candidates.push(p - q);
                }
            }
        }
    }
    candidates.into_iter().find(|&k| y.suspend(k) == *x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDegreeTable {
    pub source: Arc,
    pub target: Arc,
    pub window: [i64; 2],
    pub dims: BTreeMap<i64, u8>,
}

impl HomDegreeTable {
    pub fn compute(x: &Arc, y: &Arc, window: i64) -> Self {
        let dims = (-window..=window).map(|i| (i, hom_dim(x, y, i))).collect();
        HomDegreeTable { source: *x, target: *y, window: [-window, window], dims }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,dim\n");
        for (i, d) in &self.dims {
            out.push_str(&format!("{i},{d}\n"));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

fn in_closed_open(p: BoundaryPoint, lo: BoundaryPoint, hi: BoundaryPoint) -> bool {
    p == lo || (p != hi && in_half_open(p, lo, hi))
}

/// Pairs each endpoint of `x` with the endpoint of `y` it rotates to, so that
/// cyclically `x1 <= y1 < x2 <= y2`. `None` if no such alignment exists.
pub fn rotation_pairing(x: &Arc, y: &Arc) -> Option<[(BoundaryPoint, BoundaryPoint); 2]> {
    let (a, b) = x.endpoints();
    let (c, d) = y.endpoints();
    for (x1, x2) in [(a, b), (b, a)] {
        for (y1, y2) in [(c, d), (d, c)] {
            if in_closed_open(y1, x1, x2) && in_closed_open(y2, x2, x1) {
                return Some([(x1, y1), (x2, y2)]);
            }
        }
    }
    None
}

/// Forward unless rotating `x` onto `y` sweeps an endpoint past `reference`.
///
/// Only meaningful when `Hom(x, y)` is nonzero.
pub fn direction(x: &Arc, y: &Arc, reference: BoundaryPoint) -> Option<Direction> {
    let pairs = rotation_pairing(x, y)?;
    let swept = pairs.iter().any(|&(from, to)| in_half_open(reference, from, to));
    Some(if swept { Direction::Backward } else { Direction::Forward })
}

/// A nonzero morphism `source -> target[degree]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismHandle {
    pub source: Arc,
    pub target: Arc,
    pub degree: i64,
    pub direction: Direction,
}

impl MorphismHandle {
    pub fn new(source: Arc, target: Arc, degree: i64, reference: BoundaryPoint) -> Result<Self> {
        if hom_dim(&source, &target, degree) == 0 {
            return Err(Error::NoMorphism);
        }
        let direction = direction(&source, &target.suspend(degree), reference)
            .ok_or_else(|| Error::Unreachable("nonzero hom without rotation pairing".into()))?;
        Ok(MorphismHandle { source, target, degree, direction })
    }

    pub fn shifted_target(&self) -> Arc {
        self.target.suspend(self.degree)
    }
}

/// Whether `w` lies between `y` and `z` in the sense of the factoring lemma.
pub fn factors_through(y: &Arc, w: &Arc, z: &Arc) -> Result<bool> {
    if y == z || hom_dim(y, z, 0) == 0 {
        return Err(Error::NoMorphism);
    }
    let [(y1, z1), (y2, z2)] = rotation_pairing(y, z).ok_or(Error::NoMorphism)?;
    let (w1, w2) = w.endpoints();
    let fits = |p: BoundaryPoint, q: BoundaryPoint| in_closed(p, y1, z1) && in_closed(q, y2, z2);
    Ok(fits(w1, w2) || fits(w2, w1))
}

/// `g[deg f] . f`: `None` when the composite vanishes, else its direction.
pub fn compose_nonzero(f: &MorphismHandle, g: &MorphismHandle) -> Result<Option<Direction>> {
    if f.target != g.source {
        return Err(Error::Precondition("non-composable handles".into()));
    }
    use Direction::*;
    let dir = match (f.direction, g.direction) {
        (Backward, Backward) => return Ok(None),
        (Forward, Forward) => Forward,
        _ => Backward,
    };
    let x = f.source;
    let w = f.shifted_target();
    let z = g.target.suspend(f.degree + g.degree);
    if x == z {
        return Ok((w == x).then_some(Forward));
    }
    if hom_dim(&x, &z, 0) == 0 {
        return Ok(None);
    }
    Ok(factors_through(&x, &w, &z)?.then_some(dir))
}

/// A distinguished triangle `first -> (+) middle -> third -> first[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    pub first: Arc,
    pub middle: Vec<Arc>,
    pub third: Arc,
}

fn valid_arcs(pairs: &[(BoundaryPoint, BoundaryPoint)]) -> Vec<Arc> {
    pairs.iter().filter_map(|&(p, q)| Arc::new(p, q).ok()).collect()
}

/// The non-split triangles whose outer terms are `x` and `y`.
pub fn extension_triangles(x: &Arc, y: &Arc) -> Result<Vec<Triangle>> {
    if cross(x, y) {
        let (a, b) = x.endpoints();
        let (c, d) = y.endpoints();
        for (x0, x1) in [(a, b), (b, a)] {
            for (y0, y1) in [(c, d), (d, c)] {
                let interleaved = crate::cyclic_geometry::cyclic_less(y0, x0, y1) == Ok(true)
                    && crate::cyclic_geometry::cyclic_less(x0, y1, x1) == Ok(true)
                    && crate::cyclic_geometry::cyclic_less(y1, x1, y0) == Ok(true);
                if interleaved {
                    return Ok(vec![
                        Triangle { first: *x, middle: valid_arcs(&[(y1, x1), (y0, x0)]), third: *y },
                        Triangle { first: *y, middle: valid_arcs(&[(y0, x1), (x0, y1)]), third: *x },
                    ]);
                }
            }
        }
        return Err(Error::Unreachable("crossing arcs without interleaving labels".into()));
    }
    if let Some(a) = x.shared_acc(y) {
        let u = x.other(a).unwrap();
        let v = y.other(a).unwrap();
        if u == v {
            return Err(Error::NoExtensionTriangle);
        }
        // With a < u < v the connecting map lies in Ext^1({a,u}, {a,v}).
        let (first_u, second_v) = if crate::cyclic_geometry::cyclic_less(a, u, v)? { (x, y) } else { (y, x) };
        return Ok(vec![Triangle {
            first: *second_v,
            middle: valid_arcs(&[(u, v)]),
            third: *first_u,
        }]);
    }
    Err(Error::NoExtensionTriangle)
}

/// One step `cone = cone(q -> p)` of a presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeStep {
    pub q: Arc,
    pub p: Arc,
    pub cone: Arc,
}

/// Iterated cone presentation of an arc from shifts of generator summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConePresentation {
    pub target: Arc,
    pub steps: Vec<ConeStep>,
}

impl ConePresentation {
    /// `(Q, P)` with `target = cone(Q -> P)`; `Q` is `None` when the target
    /// is already a shift of a summand.
    pub fn pair(&self) -> (Option<Arc>, Arc) {
        match self.steps.last() {
            Some(s) => (Some(s.q), s.p),
            None => (None, self.target),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    Acc(usize),
    Seg(usize),
}

fn node(p: BoundaryPoint) -> Node {
    match p {
        BoundaryPoint::Acc(i) => Node::Acc(i),
        BoundaryPoint::Pt(i, _) => Node::Seg(i),
    }
}

/// Presents `x` as an iterated cone along the chain of summands of `e` that
/// joins its endpoints through shared accumulation points.
pub fn cone_presentation(x: &Arc, e: &ArcSet) -> Result<ConePresentation> {
    if e.arcs().iter().any(|g| shift_between(g, x).is_some()) {
        return Ok(ConePresentation { target: *x, steps: vec![] });
    }
    let mut adj: HashMap<Node, Vec<(Node, Arc)>> = HashMap::new();
    for g in e.arcs() {
        let (p, q) = g.endpoints();
        adj.entry(node(p)).or_default().push((node(q), *g));
        adj.entry(node(q)).or_default().push((node(p), *g));
    }
    let (u, v) = x.endpoints();
    let (start, goal) = (node(u), node(v));
    let mut prev: HashMap<Node, Node> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    prev.insert(start, start);
    while let Some(cur) = queue.pop_front() {
        if cur == goal {
            break;
        }
        for (next, _) in adj.get(&cur).into_iter().flatten() {
            if !prev.contains_key(next) {
                prev.insert(*next, cur);
                queue.push_back(*next);
            }
        }
    }
    if !prev.contains_key(&goal) || start == goal {
        return Err(Error::Unreachable(format!("{x} is not reachable from the summands")));
    }
    let mut path = vec![goal];
    while *path.last().unwrap() != start {
        path.push(prev[path.last().unwrap()]);
    }
    path.reverse();
    let mut points = Vec::with_capacity(path.len());
    for (k, nd) in path.iter().enumerate() {
        let p = match *nd {
            Node::Acc(i) => BoundaryPoint::Acc(i),
            Node::Seg(_) if k == 0 => u,
            Node::Seg(_) if k == path.len() - 1 => v,
            Node::Seg(i) => {
                return Err(Error::Unsupported(format!("chain passes through segment {i}")));
            }
        };
        points.push(p);
    }
    let mut cur = Arc::new(points[0], points[1])?;
    let mut steps = Vec::new();
    for r in 1..points.len() - 1 {
        let a = points[r];
        let next = Arc::new(a, points[r + 1])?;
        let z = Arc::new(points[0], points[r + 1])?;
        let (first, second) = if crate::cyclic_geometry::cyclic_less(a, points[0], points[r + 1])? {
            (cur, next)
        } else {
            (next, cur)
        };
        steps.push(ConeStep { q: first.suspend(-1), p: second, cone: z });
        cur = z;
    }
    Ok(ConePresentation { target: *x, steps })
}
