//! Dissections of the disc with `2n` alternating red and green boundary
//! points, their faces, and the correspondence with limit generators.
//!
//! Boundary positions run anticlockwise `0..2n`; even positions are red (∘),
//! odd ones green (●). `Acc(i)` sits at `2i` and segment `i` at `2i + 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclic_geometry::{Arc, ArcKind, ArcSet, BoundaryPoint};
use crate::error::{Error, Result};
use crate::generators::is_limit_generator;

/// The disc with `n` red and `n` green boundary points and no punctures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedDisc {
    pub n: usize,
}

impl MarkedDisc {
    pub fn positions(&self) -> usize {
        2 * self.n
    }

    pub fn is_red(p: usize) -> bool {
        p.is_multiple_of(2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChordKind {
    RedArc,
    BindingArc,
}

/// A chord between two boundary positions, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct ChordArc {
    a: usize,
    b: usize,
}

impl ChordArc {
    pub fn new(x: usize, y: usize) -> Result<Self> {
        if x == y {
            return Err(Error::InvalidArc(format!("chord endpoints coincide at {x}")));
        }
        if x % 2 == 1 && y % 2 == 1 {
            return Err(Error::InvalidArc(format!("chord {x}-{y} joins two green points")));
        }
        Ok(ChordArc { a: x.min(y), b: x.max(y) })
    }

    pub fn of(x: usize, y: usize) -> Self {
        ChordArc::new(x, y).expect("valid chord")
    }

    pub fn ends(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn contains(&self, p: usize) -> bool {
        self.a == p || self.b == p
    }

    pub fn other(&self, p: usize) -> Option<usize> {
        if self.a == p {
            Some(self.b)
        } else if self.b == p {
            Some(self.a)
        } else {
            None
        }
    }

    pub fn kind(&self) -> ChordKind {
        if self.a.is_multiple_of(2) && self.b.is_multiple_of(2) {
            ChordKind::RedArc
        } else {
            ChordKind::BindingArc
        }
    }

    /// The green endpoint of a binding arc.
    pub fn green(&self) -> Option<usize> {
        [self.a, self.b].into_iter().find(|p| p % 2 == 1)
    }

    /// The red endpoint of a binding arc, or the smaller end of a red arc.
    pub fn red(&self) -> usize {
        if self.a.is_multiple_of(2) {
            self.a
        } else {
            self.b
        }
    }

    pub fn rotate(&self, k: usize, size: usize) -> ChordArc {
        ChordArc::of((self.a + k) % size, (self.b + k) % size)
    }
}

impl From<ChordArc> for [usize; 2] {
    fn from(c: ChordArc) -> Self {
        [c.a, c.b]
    }
}

impl TryFrom<[usize; 2]> for ChordArc {
    type Error = Error;
    fn try_from(v: [usize; 2]) -> Result<Self> {
        ChordArc::new(v[0], v[1])
    }
}

impl fmt::Display for ChordArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

/// Strict interleaving on the boundary cycle; shared endpoints never cross.
pub fn chords_cross(x: &ChordArc, y: &ChordArc) -> bool {
    let (a, b) = x.ends();
    let (c, d) = y.ends();
    if x.contains(c) || x.contains(d) {
        return false;
    }
    (a < c && c < b) != (a < d && d < b)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDissection")]
pub struct DissectionSet {
    pub n: usize,
    pub red: Vec<ChordArc>,
    pub binding: Vec<ChordArc>,
}

#[derive(Deserialize)]
struct RawDissection {
    n: usize,
    #[serde(default)]
    red: Vec<ChordArc>,
    #[serde(default)]
    binding: Vec<ChordArc>,
}

impl TryFrom<RawDissection> for DissectionSet {
    type Error = Error;
    fn try_from(raw: RawDissection) -> Result<Self> {
        DissectionSet::new(raw.n, raw.red, raw.binding)
    }
}

impl DissectionSet {
    pub fn new(n: usize, red: Vec<ChordArc>, binding: Vec<ChordArc>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArcSet("n must be positive".into()));
        }
        for c in red.iter().chain(&binding) {
            if c.ends().1 >= 2 * n {
                return Err(Error::InvalidArcSet(format!("chord {c} leaves the {}-gon", 2 * n)));
            }
        }
        if let Some(c) = red.iter().find(|c| c.kind() != ChordKind::RedArc) {
            return Err(Error::InvalidArcSet(format!("{c} is listed as red but has a green end")));
        }
        if let Some(c) = binding.iter().find(|c| c.kind() != ChordKind::BindingArc) {
            return Err(Error::InvalidArcSet(format!("{c} is listed as binding but joins red points")));
        }
        let all = [red.as_slice(), binding.as_slice()].concat();
        for (k, c) in all.iter().enumerate() {
            if all[..k].contains(c) {
                return Err(Error::InvalidArcSet(format!("duplicate chord {c}")));
            }
        }
        Ok(DissectionSet { n, red, binding })
    }

    pub fn disc(&self) -> MarkedDisc {
        MarkedDisc { n: self.n }
    }

    /// Red arcs followed by binding arcs.
    pub fn chords(&self) -> Vec<ChordArc> {
        [self.red.as_slice(), self.binding.as_slice()].concat()
    }

    pub fn len(&self) -> usize {
        self.red.len() + self.binding.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn canonical(&self) -> DissectionSet {
        let mut red = self.red.clone();
        let mut binding = self.binding.clone();
        red.sort();
        binding.sort();
        DissectionSet { n: self.n, red, binding }
    }

    /// Rotation by `r` steps of the colour-preserving symmetry (2 positions each).
    pub fn rotate(&self, r: usize) -> DissectionSet {
        let size = 2 * self.n;
        let rot = |c: &ChordArc| c.rotate(2 * r, size);
        DissectionSet {
            n: self.n,
            red: self.red.iter().map(rot).collect(),
            binding: self.binding.iter().map(rot).collect(),
        }
    }

    pub fn status(&self) -> DissectionStatus {
        DissectionStatus {
            admissible: is_admissible_dissection(self),
            extended_admissible: is_extended_admissible(self),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DissectionStatus {
    pub admissible: bool,
    pub extended_admissible: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FaceEdge {
    /// The boundary side from position `i` to `i + 1`.
    Side(usize),
    /// A chord, by index into the list passed to [`polygon_faces`].
    Chord(usize),
}

/// A face of a chord subdivision; `edges[t]` joins `corners[t]` to `corners[t + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub corners: Vec<usize>,
    pub edges: Vec<FaceEdge>,
}

impl Face {
    pub fn sides(&self) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(|e| match e {
            FaceEdge::Side(i) => Some(*i),
            FaceEdge::Chord(_) => None,
        })
    }

    /// Green points lying on this face's boundary with both adjacent sides in it.
    pub fn greens(&self, size: usize) -> Vec<usize> {
        self.corners
            .iter()
            .copied()
            .filter(|&c| c % 2 == 1)
            .filter(|&c| {
                let prev = FaceEdge::Side((c + size - 1) % size);
                self.edges.contains(&prev) && self.edges.contains(&FaceEdge::Side(c))
            })
            .collect()
    }
}

/// Faces of the `size`-gon cut along pairwise non-crossing chords.
pub fn polygon_faces(size: usize, chords: &[ChordArc]) -> Result<Vec<Face>> {
    let mut faces = vec![Face {
        corners: (0..size).collect(),
        edges: (0..size).map(FaceEdge::Side).collect(),
    }];
    for (id, c) in chords.iter().enumerate() {
        let (a, b) = c.ends();
        let hit = faces.iter().position(|f| f.corners.contains(&a) && f.corners.contains(&b));
        let Some(k) = hit else {
            return Err(Error::InvalidArcSet(format!("chord {c} crosses another chord")));
        };
        let f = faces.swap_remove(k);
        let len = f.corners.len();
        let s = f.corners.iter().position(|&p| p == a).unwrap();
        let t = f.corners.iter().position(|&p| p == b).unwrap();
        let (s, t) = (s.min(t), s.max(t));
        let first = Face {
            corners: f.corners[s..=t].to_vec(),
            edges: f.edges[s..t].iter().copied().chain([FaceEdge::Chord(id)]).collect(),
        };
        let second = Face {
            corners: (t..len).chain(0..=s).map(|i| f.corners[i]).collect(),
            edges: (t..len)
                .chain(0..s)
                .map(|i| f.edges[i])
                .chain([FaceEdge::Chord(id)])
                .collect(),
        };
        faces.push(first);
        faces.push(second);
    }
    Ok(faces)
}

fn pairwise_noncrossing(chords: &[ChordArc]) -> bool {
    chords
        .iter()
        .enumerate()
        .all(|(k, x)| chords[k + 1..].iter().all(|y| !chords_cross(x, y)))
}

/// Non-crossing red arcs whose faces each hold exactly one green point.
pub fn faces_each_hold_one_green(n: usize, red: &[ChordArc]) -> bool {
    if !pairwise_noncrossing(red) {
        return false;
    }
    match polygon_faces(2 * n, red) {
        Ok(faces) => faces.iter().all(|f| f.greens(2 * n).len() == 1),
        Err(_) => false,
    }
}

pub fn is_admissible_dissection(d: &DissectionSet) -> bool {
    d.binding.is_empty()
        && d.red.len() + 1 == d.n
        && faces_each_hold_one_green(d.n, &d.red)
}

pub fn is_extended_admissible(d: &DissectionSet) -> bool {
    let red_part = DissectionSet { n: d.n, red: d.red.clone(), binding: vec![] };
    if !is_admissible_dissection(&red_part) || d.binding.len() != d.n {
        return false;
    }
    let mut greens: Vec<usize> = d.binding.iter().filter_map(ChordArc::green).collect();
    greens.sort();
    greens.dedup();
    greens.len() == d.n && pairwise_noncrossing(&d.chords()) && d.len() == 2 * d.n - 1
}

/// Arc count of an admissible ∘-dissection of a surface of genus `g` with
/// `b` boundary components, `red_marked` red boundary points and `punctures`.
pub fn admissible_arc_count(red_marked: usize, punctures: usize, b: usize, g: usize) -> i64 {
    red_marked as i64 + punctures as i64 + b as i64 + 2 * g as i64 - 2
}

/// Arc count of an extended admissible ∘-dissection.
pub fn extended_arc_count(
    marked: usize,
    punctures: usize,
    green_punctures: usize,
    b: usize,
    g: usize,
) -> i64 {
    marked as i64 + punctures as i64 + green_punctures as i64 + b as i64 + 2 * g as i64 - 2
}

pub fn chord_for_arc(x: &Arc) -> Result<ChordArc> {
    let pos = |p: BoundaryPoint| match p {
        BoundaryPoint::Acc(i) => 2 * i,
        BoundaryPoint::Pt(i, _) => 2 * i + 1,
    };
    match x.kind() {
        ArcKind::Limit | ArcKind::DoubleLimit => {
            let (p, q) = x.endpoints();
            ChordArc::new(pos(p), pos(q))
        }
        _ => Err(Error::Precondition(format!("{x} is not a (double) limit arc"))),
    }
}

pub fn arc_for_chord(c: &ChordArc) -> Arc {
    let point = |p: usize| {
        if p.is_multiple_of(2) {
            BoundaryPoint::Acc(p / 2)
        } else {
            BoundaryPoint::Pt(p / 2, 0)
        }
    };
    let (a, b) = c.ends();
    Arc::of(point(a), point(b))
}

/// The extended dissection of a limit generator. Chords keep the order of `g`'s
/// summands within the red and binding lists.
pub fn epsilon(g: &ArcSet) -> Result<DissectionSet> {
    if !is_limit_generator(g) {
        return Err(Error::Precondition("not a limit generator".into()));
    }
    let mut red = Vec::new();
    let mut binding = Vec::new();
    for x in g.arcs() {
        let c = chord_for_arc(x)?;
        match c.kind() {
            ChordKind::RedArc => red.push(c),
            ChordKind::BindingArc => binding.push(c),
        }
    }
    DissectionSet::new(g.n(), red, binding)
}

/// The normalized limit generator of an extended dissection, canonically sorted.
pub fn epsilon_inverse(d: &DissectionSet) -> Result<ArcSet> {
    if !is_extended_admissible(d) {
        return Err(Error::Precondition("not an extended admissible dissection".into()));
    }
    let mut arcs: Vec<Arc> = d.chords().iter().map(arc_for_chord).collect();
    arcs.sort();
    ArcSet::new(d.n, arcs)
}

/// For each chord of `d.chords()`, the index of the matching summand of `g`.
pub fn summand_indices(g: &ArcSet, d: &DissectionSet) -> Result<Vec<usize>> {
    let normalized: Vec<Arc> = g.arcs().iter().map(Arc::normalized).collect();
    d.chords()
        .iter()
        .map(|c| {
            let x = arc_for_chord(c);
            normalized
                .iter()
                .position(|y| *y == x)
                .ok_or_else(|| Error::Precondition(format!("no summand for chord {c}")))
        })
        .collect()
}

/// The admissible dissection of the recoloured disc: every old point turns red
/// (old position `i` moves to `2i`) and each face gains a green point on its
/// first boundary side (side `s` becomes position `2s + 1`). Red arcs of the
/// result list the old red arcs first, then the old binding arcs.
pub fn induced_admissible(d: &DissectionSet) -> Result<(MarkedDisc, DissectionSet)> {
    if !is_extended_admissible(d) {
        return Err(Error::Precondition("not an extended admissible dissection".into()));
    }
    let size = 2 * d.n;
    let faces = polygon_faces(size, &d.chords())?;
    let mut new_greens: Vec<usize> = Vec::with_capacity(faces.len());
    for f in &faces {
        let s = f
            .sides()
            .min()
            .ok_or_else(|| Error::Unreachable("face without a boundary side".into()))?;
        new_greens.push(2 * s + 1);
    }
    new_greens.sort();
    if new_greens != (0..size).map(|s| 2 * s + 1).collect::<Vec<_>>() {
        return Err(Error::Unreachable("recoloured points do not alternate".into()));
    }
    let red = d
        .chords()
        .iter()
        .map(|c| {
            let (a, b) = c.ends();
            ChordArc::of(2 * a, 2 * b)
        })
        .collect();
    let disc = MarkedDisc { n: size };
    Ok((disc, DissectionSet::new(size, red, vec![])?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendabilityReport {
    pub extendable: bool,
    /// 1 or 2 when that condition fails.
    pub failed_condition: Option<u8>,
    /// A red point (by red index) with the wrong number of incident arcs.
    pub witness: Option<usize>,
    pub reconstructed: Option<DissectionSet>,
}

/// Whether an admissible dissection of a disc arises from an extended one.
pub fn extendability_report(d: &DissectionSet) -> ExtendabilityReport {
    let fail = |c: u8, w: Option<usize>| ExtendabilityReport {
        extendable: false,
        failed_condition: Some(c),
        witness: w,
        reconstructed: None,
    };
    let reds = d.n;
    if reds == 0 || reds % 2 == 1 || !is_admissible_dissection(d) {
        return fail(1, None);
    }
    let degree = |r: usize| d.red.iter().filter(|c| c.contains(2 * r)).count();
    let mut witness = None;
    // Red index r becomes old position (r + shift) mod reds; odd positions are green.
    for shift in [0, reds - 1] {
        let alternating = (0..reds).filter(|r| (r + shift) % 2 == 1);
        if let Some(bad) = alternating.clone().find(|&r| degree(r) != 1) {
            witness.get_or_insert(bad);
            continue;
        }
        let to_old = |p: usize| (p / 2 + shift) % reds;
        let mut red = Vec::new();
        let mut binding = Vec::new();
        let mut ok = true;
        for c in &d.red {
            let (a, b) = c.ends();
            match ChordArc::new(to_old(a), to_old(b)) {
                Ok(x) if x.kind() == ChordKind::RedArc => red.push(x),
                Ok(x) => binding.push(x),
                Err(_) => ok = false,
            }
        }
        if !ok {
            continue;
        }
        if let Ok(e) = DissectionSet::new(reds / 2, red, binding) {
            if is_extended_admissible(&e) {
                return ExtendabilityReport {
                    extendable: true,
                    failed_condition: None,
                    witness: None,
                    reconstructed: Some(e.canonical()),
                };
            }
        }
    }
    fail(2, witness)
}

/// All admissible dissections of the disc with `n` red points, found by
/// searching every non-crossing red chord set for the one-green-per-face property.
pub fn enumerate_admissible_dissections(n: usize) -> Vec<DissectionSet> {
    let size = 2 * n;
    let candidates: Vec<ChordArc> = (0..size)
        .step_by(2)
        .flat_map(|a| (a + 2..size).step_by(2).map(move |b| ChordArc::of(a, b)))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        k: usize,
        n: usize,
        candidates: &[ChordArc],
        chosen: &mut Vec<ChordArc>,
        out: &mut Vec<DissectionSet>,
    ) {
        if k == candidates.len() {
            if faces_each_hold_one_green(n, chosen) {
                out.push(DissectionSet::new(n, chosen.clone(), vec![]).unwrap());
            }
            return;
        }
        rec(k + 1, n, candidates, chosen, out);
        if chosen.iter().all(|c| !chords_cross(c, &candidates[k])) {
            chosen.push(candidates[k]);
            rec(k + 1, n, candidates, chosen, out);
            chosen.pop();
        }
    }
    rec(0, n, &candidates, &mut chosen, &mut out);
    out
}

/// All extended admissible dissections: admissible red parts times every
/// non-crossing choice of one binding arc per green point.
pub fn enumerate_extended_dissections(n: usize) -> Vec<DissectionSet> {
    let mut out = Vec::new();
    for base in enumerate_admissible_dissections(n) {
        let mut chosen = Vec::new();
        extend_bindings(&base, 0, &mut chosen, &mut out);
    }
    out
}

fn extend_bindings(
    base: &DissectionSet,
    k: usize,
    chosen: &mut Vec<ChordArc>,
    out: &mut Vec<DissectionSet>,
) {
    let n = base.n;
    if k == n {
        out.push(DissectionSet::new(n, base.red.clone(), chosen.clone()).unwrap().canonical());
        return;
    }
    let green = 2 * k + 1;
    for r in (0..2 * n).step_by(2) {
        let c = ChordArc::of(r, green);
        if base.red.iter().chain(chosen.iter()).all(|x| !chords_cross(x, &c)) {
            chosen.push(c);
            extend_bindings(base, k + 1, chosen, out);
            chosen.pop();
        }
    }
}
