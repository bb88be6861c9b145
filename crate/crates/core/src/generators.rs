//! Limit pre-generators, limit generators, fan generators and the linear
//! generator axioms.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclic_geometry::{
    complete_orbit, cross, crosses_under_some_shift, Arc, ArcKind, ArcSet, BoundaryPoint,
};
use crate::error::{Error, Result};
use crate::hom_calculus::{factors_through, hom_dim};

/// Largest `n` the enumerators accept by default.
pub const DEFAULT_CAP: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorCandidate {
    pub arcs: ArcSet,
    /// `None` outside the shift-non-crossing limit regime.
    pub homologically_connected: Option<bool>,
    pub complete_orbit: bool,
    pub limit_kind: bool,
}

impl GeneratorCandidate {
    pub fn new(arcs: ArcSet) -> Self {
        GeneratorCandidate {
            homologically_connected: is_homologically_connected(&arcs).ok(),
            complete_orbit: complete_orbit(&arcs),
            limit_kind: arcs
                .arcs()
                .iter()
                .all(|x| matches!(x.kind(), ArcKind::Limit | ArcKind::DoubleLimit)),
            arcs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitGeneratorDecomposition {
    pub pre_generator: ArcSet,
    pub limit_part: ArcSet,
    pub segment_assignment: BTreeMap<usize, Arc>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    /// False if `x` and `y` were already joined.
    fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        self.0[rx] = ry;
        rx != ry
    }
}

fn pairwise_shift_noncrossing(arcs: &[Arc]) -> bool {
    arcs.iter().enumerate().all(|(k, x)| {
        arcs[k + 1..].iter().all(|y| !crosses_under_some_shift(x, y))
    })
}

/// Connectivity of the shared-accumulation-point graph on the summands.
pub fn is_homologically_connected(a: &ArcSet) -> Result<bool> {
    let arcs = a.arcs();
    let limit = arcs
        .iter()
        .all(|x| matches!(x.kind(), ArcKind::Limit | ArcKind::DoubleLimit));
    if !limit || !pairwise_shift_noncrossing(arcs) {
        return Err(Error::Unsupported("only shift-non-crossing (double) limit arcs".into()));
    }
    // Summands are nodes 0..len, accumulation points len..len+n.
    let mut uf = UnionFind::new(arcs.len() + a.n());
    for (k, x) in arcs.iter().enumerate() {
        for p in x.acc_endpoints() {
            uf.union(k, arcs.len() + p.segment());
        }
    }
    let roots: std::collections::BTreeSet<usize> = (0..arcs.len()).map(|k| uf.find(k)).collect();
    Ok(roots.len() <= 1)
}

/// A noncrossing tree of `n - 1` double limit arcs on all accumulation points.
pub fn is_limit_pre_generator(a: &ArcSet) -> bool {
    let n = a.n();
    let arcs = a.arcs();
    if arcs.len() != n - 1 || arcs.iter().any(|x| x.kind() != ArcKind::DoubleLimit) {
        return false;
    }
    let noncrossing = arcs
        .iter()
        .enumerate()
        .all(|(k, x)| arcs[k + 1..].iter().all(|y| !cross(x, y)));
    if !noncrossing {
        return false;
    }
    let mut uf = UnionFind::new(n);
    arcs.iter().all(|x| {
        let (p, q) = x.endpoints();
        uf.union(p.segment(), q.segment())
    })
}

/// Splits a limit generator into its pre-generator and per-segment limit arcs.
pub fn decompose(a: &ArcSet) -> Result<LimitGeneratorDecomposition> {
    let n = a.n();
    let (doubles, rest): (Vec<Arc>, Vec<Arc>) =
        a.arcs().iter().partition(|x| x.kind() == ArcKind::DoubleLimit);
    if let Some(x) = rest.iter().find(|x| x.kind() != ArcKind::Limit) {
        return Err(Error::InvalidArcSet(format!("{x} is not a (double) limit arc")));
    }
    let pre_generator = ArcSet::new(n, doubles)?;
    if !is_limit_pre_generator(&pre_generator) {
        return Err(Error::InvalidArcSet("double limit part is not a noncrossing tree".into()));
    }
    let mut segment_assignment = BTreeMap::new();
    for x in &rest {
        let (p, q) = x.endpoints();
        let s = if p.is_acc() { q.segment() } else { p.segment() };
        if segment_assignment.insert(s, *x).is_some() {
            return Err(Error::InvalidArcSet(format!("two limit arcs end in segment {s}")));
        }
    }
    if segment_assignment.len() != n {
        return Err(Error::InvalidArcSet("some segment has no limit arc".into()));
    }
    if !pairwise_shift_noncrossing(a.arcs()) {
        return Err(Error::InvalidArcSet("summands cross under some shift".into()));
    }
    Ok(LimitGeneratorDecomposition {
        pre_generator,
        limit_part: ArcSet::new(n, rest)?,
        segment_assignment,
    })
}

pub fn is_limit_generator(a: &ArcSet) -> bool {
    decompose(a).is_ok()
}

/// The apex shared by all arcs of the fan generator.
pub fn fan_apex(n: usize) -> BoundaryPoint {
    BoundaryPoint::Acc(n - 1)
}

/// The fan generator, ordered by the anticlockwise position of the free endpoint
/// starting just after the apex.
pub fn fan_generator(n: usize) -> ArcSet {
    assert!(n >= 1, "n must be positive");
    let apex = fan_apex(n);
    let mut arcs = vec![Arc::of(apex, BoundaryPoint::Pt(n - 1, 0))];
    for j in 0..n - 1 {
        arcs.push(Arc::of(apex, BoundaryPoint::Acc(j)));
        arcs.push(Arc::of(apex, BoundaryPoint::Pt(j, 0)));
    }
    ArcSet::new(n, arcs).expect("fan arcs are distinct")
}

/// All noncrossing spanning trees on `n` accumulation points, as sorted edge lists.
pub fn noncrossing_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let crossing = |&(a, b): &(usize, usize), &(c, d): &(usize, usize)| {
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    };
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        start: usize,
        n: usize,
        pairs: &[(usize, usize)],
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
        crossing: &dyn Fn(&(usize, usize), &(usize, usize)) -> bool,
    ) {
        if chosen.len() == n - 1 {
            let mut uf = UnionFind::new(n);
            if chosen.iter().all(|&(a, b)| uf.union(a, b)) {
                out.push(chosen.clone());
            }
            return;
        }
        for k in start..pairs.len() {
            if chosen.iter().all(|c| !crossing(c, &pairs[k])) {
                chosen.push(pairs[k]);
                rec(k + 1, n, pairs, chosen, out, crossing);
                chosen.pop();
            }
        }
    }
    rec(0, n, &pairs, &mut chosen, &mut out, &crossing);
    out
}

fn limit_completions(n: usize, tree: &[Arc]) -> Vec<ArcSet> {
    let mut out = Vec::new();
    let mut chosen: Vec<Arc> = Vec::with_capacity(n);
    fn rec(s: usize, n: usize, tree: &[Arc], chosen: &mut Vec<Arc>, out: &mut Vec<ArcSet>) {
        if s == n {
            let mut arcs: Vec<Arc> = tree.iter().chain(chosen.iter()).copied().collect();
            arcs.sort();
            out.push(ArcSet::new(n, arcs).expect("distinct arcs"));
            return;
        }
        for a in 0..n {
            let x = Arc::of(BoundaryPoint::Acc(a), BoundaryPoint::Pt(s, 0));
            if tree.iter().chain(chosen.iter()).all(|y| !crosses_under_some_shift(&x, y)) {
                chosen.push(x);
                rec(s + 1, n, tree, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(0, n, tree, &mut chosen, &mut out);
    out
}

/// Smallest canonical form in the rotation orbit.
pub fn rotation_representative(a: &ArcSet) -> ArcSet {
    (0..a.n())
        .map(|r| a.rotate(r).canonical())
        .min_by(|x, y| x.arcs().cmp(y.arcs()))
        .expect("n >= 1")
}

pub fn enumerate_limit_generators(n: usize, up_to_equivalence: bool) -> Result<Vec<ArcSet>> {
    enumerate_limit_generators_capped(n, up_to_equivalence, DEFAULT_CAP)
}

/// All limit generators with marked endpoints at position 0, canonically sorted.
pub fn enumerate_limit_generators_capped(
    n: usize,
    up_to_equivalence: bool,
    cap: usize,
) -> Result<Vec<ArcSet>> {
    if n == 0 {
        return Err(Error::InvalidArcSet("n must be positive".into()));
    }
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let trees = noncrossing_trees(n);
    let mut all: Vec<ArcSet> = trees
        .par_iter()
        .flat_map_iter(|t| {
            let arcs: Vec<Arc> = t
                .iter()
                .map(|&(i, j)| Arc::of(BoundaryPoint::Acc(i), BoundaryPoint::Acc(j)))
                .collect();
            limit_completions(n, &arcs)
        })
        .collect();
    if up_to_equivalence {
        all.retain(|g| rotation_representative(g).arcs() == g.arcs());
    }
    all.sort_by(|x, y| x.arcs().cmp(y.arcs()));
    Ok(all)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomResult {
    pub pass: bool,
    pub witness: Vec<Arc>,
}

impl AxiomResult {
    fn ok() -> Self {
        AxiomResult { pass: true, witness: vec![] }
    }

    fn fail(witness: Vec<Arc>) -> Self {
        AxiomResult { pass: false, witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearGeneratorReport {
    pub objects: usize,
    pub g1: AxiomResult,
    pub g2: AxiomResult,
    pub g3: AxiomResult,
    pub g4: AxiomResult,
}

impl LinearGeneratorReport {
    pub fn passed(&self) -> bool {
        self.g1.pass && self.g2.pass && self.g3.pass && self.g4.pass
    }
}

/// Indecomposables of `<E>_1` whose shift lies in `[-window, window]`.
pub fn windowed_shifts(e: &ArcSet, window: i64) -> Vec<Arc> {
    let mut out: Vec<Arc> = e
        .arcs()
        .iter()
        .flat_map(|x| (-window..=window).map(move |k| x.suspend(k)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `q <= p` in the linear generator order.
fn le(q: &Arc, p: &Arc) -> bool {
    q == p || hom_dim(p, q, 0) == 1
}

/// Checks the linear generator axioms on the windowed shifts of `e`.
pub fn check_linear_generator(e: &ArcSet, window: i64) -> LinearGeneratorReport {
    let objs = windowed_shifts(e, window);
    let in_window = |x: &Arc| objs.binary_search(x).is_ok();

    let mut g1 = AxiomResult::ok();
    'g1: for (k, q) in objs.iter().enumerate() {
        for p in &objs[k + 1..] {
            if le(q, p) == le(p, q) {
                g1 = AxiomResult::fail(vec![*q, *p]);
                break 'g1;
            }
        }
    }
    if g1.pass {
        'trans: for r in &objs {
            for q in objs.iter().filter(|q| le(r, q)) {
                for p in objs.iter().filter(|p| le(q, p)) {
                    if !le(r, p) {
                        g1 = AxiomResult::fail(vec![*r, *q, *p]);
                        break 'trans;
                    }
                }
            }
        }
    }

    let g2 = objs
        .iter()
        .find(|p| !le(p, &p.suspend(1)))
        .map_or_else(AxiomResult::ok, |p| AxiomResult::fail(vec![*p, p.suspend(1)]));

    let mut g3 = AxiomResult::ok();
    'g3: for p in &objs {
        let p1 = p.suspend(1);
        if !in_window(&p1) {
            continue;
        }
        for q in &objs {
            if q != p && *q != p1 && le(p, q) && le(q, &p1) {
                g3 = AxiomResult::fail(vec![*p, *q, p1]);
                break 'g3;
            }
        }
    }

    let mut g4 = AxiomResult::ok();
    'g4: for r in &objs {
        for q in objs.iter().filter(|q| *q != r && le(r, q)) {
            for p in objs.iter().filter(|p| *p != q && *p != r && le(q, p)) {
                if factors_through(p, q, r) != Ok(true) {
                    g4 = AxiomResult::fail(vec![*r, *q, *p]);
                    break 'g4;
                }
            }
        }
    }

    LinearGeneratorReport { objects: objs.len(), g1, g2, g3, g4 }
}
