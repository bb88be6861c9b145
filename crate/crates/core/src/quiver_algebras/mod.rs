//! Gentle quivers of dissections, keyboard and piano quivers, and the graded
//! path algebra of a piano quiver.

mod components;
mod rewriting;

pub use components::*;
pub use rewriting::*;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface_dissections::{
    induced_admissible, is_admissible_dissection, is_extended_admissible, ChordArc,
    DissectionSet,
};

/// An arrow `source -> target` created where both chords meet boundary point `at`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub at: usize,
}

/// A quiver with length-two zero relations, given as pairs of arrow indices
/// `(first, second)` with `first` followed by `second`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GentleQuiver {
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<(usize, usize)>,
    /// Chords the vertices came from, when built from a dissection.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chords: Vec<ChordArc>,
    /// Number of boundary positions the chords live on.
    #[serde(default)]
    pub size: usize,
}

impl GentleQuiver {
    pub fn new(vertices: usize, arrows: Vec<Arrow>, relations: Vec<(usize, usize)>) -> Self {
        GentleQuiver { vertices, arrows, relations, chords: vec![], size: 0 }
    }

    /// The quiver of chords on a `size`-gon, without checking admissibility.
    /// Around each point the chords are ordered anticlockwise by their other
    /// endpoint and each consecutive pair gives an arrow.
    pub fn from_chords(size: usize, chords: &[ChordArc]) -> Self {
        let mut arrows = Vec::new();
        for p in 0..size {
            let mut around: Vec<(usize, usize)> = chords
                .iter()
                .enumerate()
                .filter_map(|(k, c)| c.other(p).map(|q| ((q + size - p) % size, k)))
                .collect();
            around.sort();
            for w in around.windows(2) {
                arrows.push(Arrow { source: w[0].1, target: w[1].1, at: p });
            }
        }
        let mut relations = Vec::new();
        for (i, x) in arrows.iter().enumerate() {
            for (j, y) in arrows.iter().enumerate() {
                if x.target == y.source && x.at != y.at {
                    relations.push((i, j));
                }
            }
        }
        GentleQuiver { vertices: chords.len(), arrows, relations, chords: chords.to_vec(), size }
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&e| self.arrows[e].source == v)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&e| self.arrows[e].target == v)
    }

    pub fn is_relation(&self, first: usize, second: usize) -> bool {
        self.relations.contains(&(first, second))
    }

    /// Whether the underlying graph is a tree.
    pub fn is_tree(&self) -> bool {
        if self.vertices == 0 || self.arrows.len() + 1 != self.vertices {
            return false;
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                let w = if a.source == v {
                    a.target
                } else if a.target == v {
                    a.source
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Arrow sequences of nonzero paths `a ~> b` (at most one in a tree).
    pub fn delta_path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        if a == b {
            return Some(vec![]);
        }
        let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
        let mut stack = vec![a];
        let mut visited = vec![false; self.vertices];
        visited[a] = true;
        while let Some(v) = stack.pop() {
            for e in self.out_arrows(v) {
                let w = self.arrows[e].target;
                if !visited[w] {
                    visited[w] = true;
                    prev.insert(w, e);
                    stack.push(w);
                }
            }
        }
        if !visited[b] {
            return None;
        }
        let mut path = vec![];
        let mut v = b;
        while v != a {
            let e = prev[&v];
            path.push(e);
            v = self.arrows[e].source;
        }
        path.reverse();
        let zero = path.windows(2).any(|w| self.is_relation(w[0], w[1]));
        (!zero).then_some(path)
    }
}

pub fn gentle_from_dissection(d: &DissectionSet) -> Result<GentleQuiver> {
    if !is_admissible_dissection(d) {
        return Err(Error::Precondition("not an admissible dissection".into()));
    }
    Ok(GentleQuiver::from_chords(2 * d.n, &d.red))
}

/// Failure of one of the locally gentle conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GentleViolation {
    pub condition: u8,
    pub detail: String,
}

/// Checks the locally gentle conditions; `Ok(())` when all hold.
pub fn locally_gentle_violation(q: &GentleQuiver) -> std::result::Result<(), GentleViolation> {
    let fail = |condition, detail: String| Err(GentleViolation { condition, detail });
    for v in 0..q.vertices {
        if q.out_arrows(v).count() > 2 || q.in_arrows(v).count() > 2 {
            return fail(1, format!("vertex {v} has more than two arrows on one side"));
        }
    }
    for &(x, y) in &q.relations {
        if x >= q.arrows.len() || y >= q.arrows.len() || q.arrows[x].target != q.arrows[y].source {
            return fail(2, format!("relation ({x}, {y}) is not a path of length two"));
        }
    }
    for (b, arrow) in q.arrows.iter().enumerate() {
        let after: Vec<usize> = q.out_arrows(arrow.target).collect();
        let before: Vec<usize> = q.in_arrows(arrow.source).collect();
        let in_rel_after = after.iter().filter(|&&g| q.is_relation(b, g)).count();
        let free_after = after.len() - in_rel_after;
        let in_rel_before = before.iter().filter(|&&g| q.is_relation(g, b)).count();
        let free_before = before.len() - in_rel_before;
        if in_rel_after > 1 || in_rel_before > 1 {
            return fail(3, format!("arrow {b} has two relations on one side"));
        }
        if free_after > 1 || free_before > 1 {
            return fail(4, format!("arrow {b} has two relation-free continuations on one side"));
        }
    }
    Ok(())
}

pub fn is_locally_gentle(q: &GentleQuiver) -> bool {
    locally_gentle_violation(q).is_ok()
}

/// A gentle quiver with a set of sharp vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyboardQuiver {
    pub gentle: GentleQuiver,
    pub sharp: Vec<bool>,
}

impl KeyboardQuiver {
    pub fn sharp_vertices(&self) -> Vec<usize> {
        (0..self.sharp.len()).filter(|&v| self.sharp[v]).collect()
    }

    /// An arrow joining two sharp vertices, if any.
    pub fn sharp_arrow(&self) -> Option<usize> {
        let arrows = &self.gentle.arrows;
        (0..arrows.len()).find(|&e| self.sharp[arrows[e].source] && self.sharp[arrows[e].target])
    }
}

/// Generators of the ideal of a piano quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PianoRelation {
    /// `alpha_v beta_v - iota_v`
    AlphaBeta { vertex: usize },
    /// `beta_v alpha_v - iota_v`
    BetaAlpha { vertex: usize },
    /// `alpha delta - delta alpha` along an arrow
    AlphaDelta { arrow: usize },
    /// `beta delta...delta - delta...delta beta` along a path with standard ends
    BetaPath { arrows: Vec<usize> },
    /// A zero relation of the keyboard quiver
    Zero { first: usize, second: usize },
}

/// A keyboard quiver with an `alpha` loop (degree -1) at every vertex and a
/// `beta` loop (degree +1) at every standard vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PianoQuiver {
    pub keyboard: KeyboardQuiver,
}

impl PianoQuiver {
    pub fn new(keyboard: KeyboardQuiver) -> Self {
        PianoQuiver { keyboard }
    }

    pub fn gentle(&self) -> &GentleQuiver {
        &self.keyboard.gentle
    }

    pub fn vertices(&self) -> usize {
        self.keyboard.gentle.vertices
    }

    pub fn is_sharp(&self, v: usize) -> bool {
        self.keyboard.sharp[v]
    }

    pub fn arrow(&self, e: usize) -> Arrow {
        self.keyboard.gentle.arrows[e]
    }

    /// The generating relations of the ideal.
    pub fn relations(&self) -> Vec<PianoRelation> {
        let q = self.gentle();
        let mut out = Vec::new();
        for v in (0..self.vertices()).filter(|&v| !self.is_sharp(v)) {
            out.push(PianoRelation::AlphaBeta { vertex: v });
            out.push(PianoRelation::BetaAlpha { vertex: v });
        }
        for e in 0..q.arrows.len() {
            out.push(PianoRelation::AlphaDelta { arrow: e });
        }
        for e in 0..q.arrows.len() {
            let a = q.arrows[e];
            if self.is_sharp(a.source) {
                continue;
            }
            if !self.is_sharp(a.target) {
                out.push(PianoRelation::BetaPath { arrows: vec![e] });
            } else {
                for f in q.out_arrows(a.target) {
                    if !q.is_relation(e, f) {
                        out.push(PianoRelation::BetaPath { arrows: vec![e, f] });
                    }
                }
            }
        }
        for &(first, second) in &q.relations {
            out.push(PianoRelation::Zero { first, second });
        }
        out
    }
}

/// The keyboard quiver of an extended dissection, computed on the induced
/// admissible dissection. Vertex `k` is the `k`-th chord of `d.chords()`, so
/// the binding arcs come last and are the sharp vertices.
pub fn keyboard_from_extended(d: &DissectionSet) -> Result<KeyboardQuiver> {
    if !is_extended_admissible(d) {
        return Err(Error::Precondition("not an extended admissible dissection".into()));
    }
    let (_, induced) = induced_admissible(d)?;
    let mut gentle = gentle_from_dissection(&induced)?;
    gentle.chords = d.chords();
    gentle.size = 2 * d.n;
    for a in &mut gentle.arrows {
        a.at /= 2;
    }
    let sharp = (0..gentle.vertices).map(|v| v >= d.red.len()).collect();
    Ok(KeyboardQuiver { gentle, sharp })
}

pub fn piano_from_extended(d: &DissectionSet) -> Result<PianoQuiver> {
    Ok(PianoQuiver::new(keyboard_from_extended(d)?))
}

/// A canonical string for the piano quiver up to isomorphism, built from
/// canonical encodings of the underlying tree rooted at its centres.
pub fn isomorphism_key(p: &PianoQuiver) -> String {
    let q = p.gentle();
    let n = q.vertices;
    if !q.is_tree() {
        return format!("{:?}", q);
    }
    // Adjacency as (neighbour, arrow index, outgoing from this vertex).
    let mut adj: Vec<Vec<(usize, usize, bool)>> = vec![vec![]; n];
    for (e, a) in q.arrows.iter().enumerate() {
        adj[a.source].push((a.target, e, true));
        adj[a.target].push((a.source, e, false));
    }
    fn encode(
        p: &PianoQuiver,
        adj: &[Vec<(usize, usize, bool)>],
        v: usize,
        parent: Option<(usize, usize)>,
    ) -> String {
        let q = p.gentle();
        // Whether arrows e, f meet in a relation through v.
        let related = |e: usize, f: usize| q.is_relation(e, f) || q.is_relation(f, e);
        let children: Vec<(usize, usize, bool)> =
            adj[v].iter().copied().filter(|&(w, _, _)| Some(w) != parent.map(|x| x.0)).collect();
        let mut codes: Vec<String> = children
            .iter()
            .map(|&(w, e, out)| {
                let with_parent = parent.is_some_and(|(_, pe)| related(pe, e));
                format!(
                    "{}{}{}",
                    if out { '>' } else { '<' },
                    if with_parent { '*' } else { '.' },
                    encode(p, adj, w, Some((v, e)))
                )
            })
            .collect();
        let mut entries = Vec::new();
        let mut used = vec![false; children.len()];
        for i in 0..children.len() {
            for j in i + 1..children.len() {
                if !used[i] && !used[j] && related(children[i].1, children[j].1) {
                    used[i] = true;
                    used[j] = true;
                    let (x, y) = if codes[i] <= codes[j] { (&codes[i], &codes[j]) } else { (&codes[j], &codes[i]) };
                    entries.push(format!("[{x}|{y}]"));
                }
            }
        }
        for (i, c) in codes.iter_mut().enumerate() {
            if !used[i] {
                entries.push(std::mem::take(c));
            }
        }
        entries.sort();
        format!("({}{})", if p.is_sharp(v) { '#' } else { 'o' }, entries.concat())
    }
    tree_centres(&adj)
        .into_iter()
        .map(|c| encode(p, &adj, c, None))
        .min()
        .unwrap_or_default()
}

fn tree_centres(adj: &[Vec<(usize, usize, bool)>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= leaves.len();
        let mut next = Vec::new();
        for &l in &leaves {
            degree[l] = 0;
            for &(w, _, _) in &adj[l] {
                if degree[w] > 0 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        leaves = next;
    }
    leaves
}

#[cfg(test)]
mod tests;
