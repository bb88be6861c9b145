//! Signed diagonal matrices for limit generators and the sign-level check
//! that the induced map into the dg endomorphism complex is multiplicative
//! and kills the differential.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclic_geometry::{Arc, ArcSet};
use crate::endomorphism_rings::{chi_multiply, ChiAlgebra};
use crate::error::{Error, Result};
use crate::generators::{fan_apex, fan_generator, is_limit_generator};
use crate::hom_calculus::{cone_presentation, direction, Direction};
use crate::quiver_algebras::keyboard_from_extended;
use crate::surface_dissections::{epsilon, summand_indices};

/// Cone data of one summand `G_j = cone(Q_j -> P_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeEntry {
    /// Index of the summand in the generator.
    pub summand: usize,
    pub q: Option<Arc>,
    pub p: Arc,
    pub in_generated_1: bool,
}

/// Cone data in matrix order: summands with `Q_j != 0` first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeData {
    pub entries: Vec<ConeEntry>,
    pub m: usize,
}

impl ConeData {
    pub fn new(g: &ArcSet) -> Result<Self> {
        let n = g.n();
        let fan = fan_generator(n);
        let apex = fan_apex(n);
        let mut entries = Vec::with_capacity(g.len());
        for (k, x) in g.arcs().iter().enumerate() {
            let in1 = x.contains(apex);
            let (q, p) = if in1 { (None, *x) } else { cone_presentation(x, &fan)?.pair() };
            entries.push(ConeEntry { summand: k, q, p, in_generated_1: in1 });
        }
        entries.sort_by_key(|e| e.in_generated_1);
        let m = entries.iter().filter(|e| !e.in_generated_1).count();
        Ok(ConeData { entries, m })
    }

    /// `position[summand]` in matrix order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.entries.len()];
        for (j, e) in self.entries.iter().enumerate() {
            pos[e.summand] = j;
        }
        pos
    }

    /// The generator reordered to matrix order.
    pub fn ordered(&self, g: &ArcSet) -> Vec<Arc> {
        self.entries.iter().map(|e| g.arcs()[e.summand]).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Beta,
    Delta,
}

impl Side {
    fn flip(self) -> Side {
        match self {
            Side::Beta => Side::Delta,
            Side::Delta => Side::Beta,
        }
    }
}

/// The initial choice of the propagation, at a 0-based matrix position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InitialChoice {
    pub side: Side,
    pub vertex: usize,
}

impl fmt::Display for InitialChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Beta => "beta",
            Side::Delta => "delta",
        };
        write!(f, "{side}:{}", self.vertex + 1)
    }
}

/// Parses `beta:5` or `delta:1`, with 1-based positions.
impl FromStr for InitialChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("expected beta:<j> or delta:<j>, got {s:?}"));
        let (side, j) = s.split_once(':').ok_or_else(bad)?;
        let side = match side {
            "beta" => Side::Beta,
            "delta" => Side::Delta,
            _ => return Err(bad()),
        };
        let j: usize = j.parse().map_err(|_| bad())?;
        if j == 0 {
            return Err(bad());
        }
        Ok(InitialChoice { side, vertex: j - 1 })
    }
}

/// A keyboard arrow between matrix positions with the direction of the
/// morphism it stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyboardEdge {
    pub source: usize,
    pub target: usize,
    pub direction: Direction,
}

/// The keyboard arrows of `epsilon(g)` in matrix positions.
pub fn keyboard_edges(g: &ArcSet, cones: &ConeData) -> Result<Vec<KeyboardEdge>> {
    let d = epsilon(g)?;
    let kb = keyboard_from_extended(&d)?;
    if !kb.gentle.is_tree() {
        return Err(Error::NotATree(format!("keyboard quiver of {g:?}")));
    }
    let sigma = summand_indices(g, &d)?;
    let pos = cones.positions();
    let apex = fan_apex(g.n());
    kb.gentle
        .arrows
        .iter()
        .map(|a| {
            let (x, y) = (g.arcs()[sigma[a.source]], g.arcs()[sigma[a.target]]);
            let direction = direction(&x, &y, apex)
                .ok_or_else(|| Error::Unreachable(format!("arrow {x} -> {y} without a morphism")))?;
            Ok(KeyboardEdge { source: pos[sigma[a.source]], target: pos[sigma[a.target]], direction })
        })
        .collect()
}

/// The signed diagonal matrix: `beta` holds positions `0..m`, `delta` all
/// positions. `chosen[j]` records the side picked at `j`; a `Beta` pick past
/// `m` is the algorithm's `0` and leaves no entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedMatrix {
    pub m: usize,
    pub beta: Vec<i8>,
    pub delta: Vec<i8>,
    pub chosen: Vec<Side>,
    pub initial: InitialChoice,
}

impl SignedMatrix {
    pub fn size(&self) -> usize {
        self.delta.len()
    }

    /// The diagonal, `beta` block then `delta` block.
    pub fn diagonal(&self) -> Vec<i8> {
        [self.beta.as_slice(), &self.delta].concat()
    }

    /// `beta_j`, with `-delta_j` standing in past `m` where the matrix has no entry.
    pub fn beta_sign(&self, j: usize) -> i8 {
        if j < self.m {
            self.beta[j]
        } else {
            -self.delta[j]
        }
    }

    pub fn delta_sign(&self, j: usize) -> i8 {
        self.delta[j]
    }
}

/// Every initial choice the algorithm accepts: `beta` at positions below `m`
/// and `delta` everywhere.
pub fn legal_choices(cones: &ConeData) -> Vec<InitialChoice> {
    let n = cones.entries.len();
    (0..cones.m)
        .map(|vertex| InitialChoice { side: Side::Beta, vertex })
        .chain((0..n).map(|vertex| InitialChoice { side: Side::Delta, vertex }))
        .collect()
}

/// The two essentially different choices: `beta` and `delta` at the first position.
pub fn both_choices() -> [InitialChoice; 2] {
    [InitialChoice { side: Side::Beta, vertex: 0 }, InitialChoice { side: Side::Delta, vertex: 0 }]
}

/// Propagates `initial` over the keyboard tree, keeping the side across
/// forward arrows and switching it across backward ones.
///
/// A `beta` pick at a position past `m` is accepted; it places no `-1`.
pub fn signed_matrix(g: &ArcSet, initial: InitialChoice) -> Result<SignedMatrix> {
    if !is_limit_generator(g) {
        return Err(Error::Precondition("not a limit generator".into()));
    }
    let cones = ConeData::new(g)?;
    let edges = keyboard_edges(g, &cones)?;
    signed_matrix_from_edges(&cones, &edges, initial)
}

pub fn signed_matrix_from_edges(
    cones: &ConeData,
    edges: &[KeyboardEdge],
    initial: InitialChoice,
) -> Result<SignedMatrix> {
    let size = cones.entries.len();
    if initial.vertex >= size {
        return Err(Error::Precondition(format!("no position {} among {size}", initial.vertex + 1)));
    }
    let mut adj = vec![Vec::new(); size];
    for e in edges {
        adj[e.source].push((e.target, e.direction));
        adj[e.target].push((e.source, e.direction));
    }
    let mut chosen: Vec<Option<Side>> = vec![None; size];
    chosen[initial.vertex] = Some(initial.side);
    let mut queue = VecDeque::from([initial.vertex]);
    while let Some(j) = queue.pop_front() {
        let side = chosen[j].unwrap();
        for &(l, dir) in &adj[j] {
            let next = if dir == Direction::Forward { side } else { side.flip() };
            match chosen[l] {
                None => {
                    chosen[l] = Some(next);
                    queue.push_back(l);
                }
                Some(s) if s != next => {
                    return Err(Error::NotATree(format!("inconsistent choice at position {}", l + 1)));
                }
                Some(_) => {}
            }
        }
    }
    let chosen = chosen
        .into_iter()
        .enumerate()
        .map(|(j, s)| s.ok_or_else(|| Error::NotATree(format!("position {} unreachable", j + 1))))
        .collect::<Result<Vec<_>>>()?;
    let sign = |hit: bool| if hit { -1 } else { 1 };
    Ok(SignedMatrix {
        m: cones.m,
        beta: (0..cones.m).map(|j| sign(chosen[j] == Side::Beta)).collect(),
        delta: chosen.iter().map(|&s| sign(s == Side::Delta)).collect(),
        chosen,
        initial,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignViolation {
    pub identity: String,
    /// 1-based matrix positions involved.
    pub positions: Vec<usize>,
    pub degrees: Vec<i64>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignReport {
    pub checked: usize,
    pub violations: Vec<SignViolation>,
}

impl SignReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn merge(&mut self, other: SignReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }
}

/// Direction of a nonzero `G_j -> G_l[i]` between summands in matrix order.
fn hom_direction(arcs: &[Arc], j: usize, l: usize, i: i64, apex: crate::cyclic_geometry::BoundaryPoint) -> Option<Direction> {
    direction(&arcs[j], &arcs[l].suspend(i), apex)
}

/// Checks that forward maps keep `(beta, delta)` and backward maps swap them,
/// and that `beta_j delta_j = -1` wherever both entries exist.
pub fn check_beta_delta(mat: &SignedMatrix, g: &ArcSet) -> Result<SignReport> {
    let cones = ConeData::new(g)?;
    let arcs = cones.ordered(g);
    let chi = ChiAlgebra::new(&ArcSet::new(g.n(), arcs.clone())?, 0)?;
    let apex = fan_apex(g.n());
    let size = arcs.len();
    if mat.size() != size {
        return Err(Error::Precondition(format!("matrix for {} positions, generator has {size}", mat.size())));
    }
    let mut report = SignReport::default();
    for j in 0..mat.m {
        report.checked += 1;
        if mat.beta[j] * mat.delta[j] != -1 {
            report.violations.push(SignViolation {
                identity: "beta*delta=-1".into(),
                positions: vec![j + 1],
                degrees: vec![],
                detail: format!("beta {} delta {}", mat.beta[j], mat.delta[j]),
            });
        }
    }
    for j in 0..size {
        for l in (0..size).filter(|&l| l != j) {
            if chi.dim(j, l, 0) == 0 {
                continue;
            }
            report.checked += 1;
            let dir = hom_direction(&arcs, j, l, 0, apex)
                .ok_or_else(|| Error::Unreachable("nonzero hom without direction".into()))?;
            let (b, d) = (mat.beta_sign(j), mat.delta_sign(j));
            let (bl, dl) = (mat.beta_sign(l), mat.delta_sign(l));
            let ok = match dir {
                Direction::Forward => (j >= mat.m || l >= mat.m || b == bl) && d == dl,
                Direction::Backward => (j >= mat.m || b == dl) && (l >= mat.m || d == bl) && d == -dl,
            };
            if !ok {
                report.violations.push(SignViolation {
                    identity: format!("{dir:?} map keeps signs").to_lowercase(),
                    positions: vec![j + 1, l + 1],
                    degrees: vec![0],
                    detail: format!("(beta, delta) = ({b}, {d}) -> ({bl}, {dl})"),
                });
            }
        }
    }
    Ok(report)
}

/// Image of a basis morphism: `[[y, w], [0, z]]` as signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockMorphism {
    pub source: usize,
    pub target: usize,
    pub degree: i64,
    pub block: [[i8; 2]; 2],
}

fn power(s: i8, i: i64) -> i8 {
    if i.rem_euclid(2) == 1 {
        s
    } else {
        1
    }
}

fn block_product(a: [[i8; 2]; 2], b: [[i8; 2]; 2]) -> [[i8; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, x) in row.iter_mut().enumerate() {
            *x = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

/// `phi(x) = M^i pi(x)` for the basis morphism `x: G_j -> G_l[i]` in
/// matrix positions.
pub fn phi_block(mat: &SignedMatrix, chi: &ChiAlgebra, j: usize, l: usize, i: i64, dir: Direction) -> Result<BlockMorphism> {
    if chi.dim(j, l, i) == 0 {
        return Err(Error::ZeroOperand(format!("({}, {}) in degree {i}", j + 1, l + 1)));
    }
    let (b, d) = (power(mat.beta_sign(j), i), power(mat.delta_sign(j), i));
    let block = match dir {
        Direction::Forward => [[b, 0], [0, d]],
        Direction::Backward => [[0, b], [0, 0]],
    };
    Ok(BlockMorphism { source: j, target: l, degree: i, block })
}

/// Checks `d(phi(x)) = 0` through `beta_j^i = (-1)^i delta_j^i` and
/// `phi(x x') = phi(x) phi(x')` on every composable pair of basis morphisms
/// with degrees in `[-window, window]`.
pub fn verify_phi_homomorphism(g: &ArcSet, mat: &SignedMatrix, window: i64) -> Result<SignReport> {
    let cones = ConeData::new(g)?;
    let arcs = cones.ordered(g);
    let ordered = ArcSet::new(g.n(), arcs.clone())?;
    let chi = ChiAlgebra::new(&ordered, window)?;
    let apex = fan_apex(g.n());
    let size = arcs.len();
    if mat.size() != size {
        return Err(Error::Precondition(format!("matrix for {} positions, generator has {size}", mat.size())));
    }
    let mut report = SignReport::default();
    for j in 0..size {
        for i in -window..=window {
            report.checked += 1;
            let parity = power(-1, i);
            if power(mat.beta_sign(j), i) != parity * power(mat.delta_sign(j), i) {
                report.violations.push(SignViolation {
                    identity: "differential".into(),
                    positions: vec![j + 1],
                    degrees: vec![i],
                    detail: format!("beta^{i} != (-1)^{i} delta^{i}"),
                });
            }
        }
    }
    let dir_of = |j: usize, l: usize, i: i64| {
        hom_direction(&arcs, j, l, i, apex).ok_or_else(|| Error::Unreachable("nonzero hom without direction".into()))
    };
    let parts = (0..size)
        .into_par_iter()
        .map(|j| -> Result<SignReport> {
            let mut r = SignReport::default();
            for jj in 0..size {
                for i in -window..=window {
                    if chi.dim(j, jj, i) == 0 {
                        continue;
                    }
                    let x = phi_block(mat, &chi, j, jj, i, dir_of(j, jj, i)?)?;
                    for l in 0..size {
                        for i2 in -window..=window {
                            if chi.dim(jj, l, i2) == 0 {
                                continue;
                            }
                            r.checked += 1;
                            let x2 = phi_block(mat, &chi, jj, l, i2, dir_of(jj, l, i2)?)?;
                            let c = chi_multiply(&chi, (j, jj, i), (jj, l, i2))? as i8;
                            let rhs = block_product(x.block, x2.block).map(|row| row.map(|v| v * c));
                            let lhs = if c == 0 {
                                [[0; 2]; 2]
                            } else {
                                phi_block(mat, &chi, j, l, i + i2, dir_of(j, l, i + i2)?)?.block
                            };
                            if lhs != rhs {
                                r.violations.push(SignViolation {
                                    identity: "multiplicativity".into(),
                                    positions: vec![j + 1, jj + 1, l + 1],
                                    degrees: vec![i, i2],
                                    detail: format!("phi(xx') = {lhs:?}, phi(x)phi(x') = {rhs:?}"),
                                });
                            }
                        }
                    }
                }
            }
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    for p in parts {
        report.merge(p);
    }
    Ok(report)
}
