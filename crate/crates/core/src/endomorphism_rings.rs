//! The graded endomorphism ring of a generator as a generalized matrix
//! algebra, and its comparison with the piano algebra.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclic_geometry::{cross, cyclic_less, Arc, ArcKind, ArcSet, BoundaryPoint};
use crate::error::{Error, Result};
use crate::hom_calculus::{factors_through, hom_dim};
use crate::quiver_algebras::{
    graded_dim_windowed, normal_form, piano_from_extended, representative, PianoQuiver,
};
use crate::surface_dissections::{epsilon, summand_indices};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    /// `k[x]` with `x` in degree -1.
    PolyK,
    /// `k[x, x^-1]`.
    LaurentK,
    /// One-dimensional in every degree but 1.
    LongRing,
    ZeroEntry,
}

impl EntryKind {
    pub fn dim(&self, degree: i64) -> u8 {
        match self {
            EntryKind::PolyK => (degree <= 0) as u8,
            EntryKind::LaurentK => 1,
            EntryKind::LongRing => (degree != 1) as u8,
            EntryKind::ZeroEntry => 0,
        }
    }

    /// The kind whose profile on `[-window, window]` is `dims`, if exactly one fits.
    pub fn from_profile(dims: &BTreeMap<i64, u8>) -> Option<EntryKind> {
        let kinds = [EntryKind::PolyK, EntryKind::LaurentK, EntryKind::LongRing, EntryKind::ZeroEntry];
        let mut fits = kinds.into_iter().filter(|k| dims.iter().all(|(&i, &d)| k.dim(i) == d));
        let first = fits.next()?;
        fits.next().is_none().then_some(first)
    }
}

/// One entry of the matrix algebra with its dimensions on the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedEntry {
    pub kind: EntryKind,
    pub dims: BTreeMap<i64, u8>,
}

impl GradedEntry {
    pub fn new(kind: EntryKind, window: i64) -> Self {
        let dims = (-window..=window).map(|i| (i, kind.dim(i))).collect();
        GradedEntry { kind, dims }
    }

    /// Dimension in any degree, not just inside the window.
    pub fn dim(&self, degree: i64) -> u8 {
        self.kind.dim(degree)
    }
}

fn segments(x: &Arc) -> Vec<usize> {
    let (p, q) = x.endpoints();
    [p, q].into_iter().filter(|b| !b.is_acc()).map(|b| b.segment()).collect()
}

fn diagonal_kind(x: &Arc) -> EntryKind {
    match x.kind() {
        ArcKind::Limit => EntryKind::PolyK,
        ArcKind::DoubleLimit => EntryKind::LaurentK,
        ArcKind::Long | ArcKind::Short => EntryKind::LongRing,
    }
}

/// The entry `Hom^*(G_i, G_j)`.
///
/// Summands whose marked endpoints sweep a common segment under suspension
/// are rejected.
pub fn classify_entry(g: &ArcSet, i: usize, j: usize, window: i64) -> Result<GradedEntry> {
    let arcs = g.arcs();
    let (x, y) = (arcs[i], arcs[j]);
    if i == j {
        return Ok(GradedEntry::new(diagonal_kind(&x), window));
    }
    let sy = segments(&y);
    if segments(&x).iter().any(|s| sy.contains(s)) {
        return Err(Error::OrbitsOverlap(i, j));
    }
    let kind = if cross(&x, &y) {
        EntryKind::LaurentK
    } else if let Some(a) = x.shared_acc(&y) {
        let (u, v) = (x.other(a).unwrap(), y.other(a).unwrap());
        if cyclic_less(a, u, v)? {
            EntryKind::LaurentK
        } else {
            EntryKind::ZeroEntry
        }
    } else {
        EntryKind::ZeroEntry
    };
    Ok(GradedEntry::new(kind, window))
}

/// The generalized matrix algebra of a generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiAlgebra {
    pub summands: Vec<Arc>,
    pub kinds: Vec<ArcKind>,
    pub entries: Vec<Vec<GradedEntry>>,
    pub window: i64,
}

impl ChiAlgebra {
    pub fn new(g: &ArcSet, window: i64) -> Result<Self> {
        let m = g.len();
        let entries = (0..m)
            .into_par_iter()
            .map(|i| (0..m).map(|j| classify_entry(g, i, j, window)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Ok(ChiAlgebra {
            summands: g.arcs().to_vec(),
            kinds: g.arcs().iter().map(Arc::kind).collect(),
            entries,
            window,
        })
    }

    pub fn size(&self) -> usize {
        self.summands.len()
    }

    pub fn dim(&self, i: usize, j: usize, degree: i64) -> u8 {
        self.entries[i][j].dim(degree)
    }

    /// `[i][j]` dimensions in one degree.
    pub fn dimension_matrix(&self, degree: i64) -> Vec<Vec<u8>> {
        self.entries.iter().map(|row| row.iter().map(|e| e.dim(degree)).collect()).collect()
    }

    /// Rows `i,degree,d_0,...,d_{m-1}` over the window.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("row,degree");
        for j in 0..self.size() {
            out.push_str(&format!(",{j}"));
        }
        out.push('\n');
        for d in -self.window..=self.window {
            for (i, row) in self.dimension_matrix(d).iter().enumerate() {
                out.push_str(&format!("{i},{d}"));
                for x in row {
                    out.push_str(&format!(",{x}"));
                }
                out.push('\n');
            }
        }
        out
    }
}

fn long_ring_product(p: i64, q: i64) -> bool {
    (p <= 0 && q <= 0) || (p <= 0 && q >= 2 && q > -p) || (p >= 2 && q <= 0 && -q < p)
}

fn all_share_acc(x: &Arc, y: &Arc, z: &Arc) -> bool {
    x.acc_endpoints().any(|a: BoundaryPoint| y.contains(a) && z.contains(a))
}

/// Coefficient of `g . f` on the distinguished basis of `(i, l, p + q)`, for
/// `f` in degree `p` of `(i, j)` and `g` in degree `q` of `(j, l)`.
pub fn chi_multiply(a: &ChiAlgebra, f: (usize, usize, i64), g: (usize, usize, i64)) -> Result<u8> {
    let (i, j, p) = f;
    let (j2, l, q) = g;
    if j != j2 {
        return Err(Error::Precondition(format!("entries ({i},{j}) and ({j2},{l}) do not compose")));
    }
    if a.dim(i, j, p) == 0 {
        return Err(Error::ZeroOperand(format!("({i},{j}) in degree {p}")));
    }
    if a.dim(j, l, q) == 0 {
        return Err(Error::ZeroOperand(format!("({j},{l}) in degree {q}")));
    }
    if a.dim(i, l, p + q) == 0 {
        return Ok(0);
    }
    let s = &a.summands;
    if i == j && j == l {
        return Ok(match a.entries[i][i].kind {
            EntryKind::LongRing => long_ring_product(p, q) as u8,
            _ => 1,
        });
    }
    if all_share_acc(&s[i], &s[j], &s[l]) {
        return Ok(1);
    }
    let x = s[i];
    let w = s[j].suspend(p);
    let z = s[l].suspend(p + q);
    if x == z {
        return Ok((w == x) as u8);
    }
    if hom_dim(&x, &z, 0) == 0 {
        return Ok(0);
    }
    Ok(factors_through(&x, &w, &z)? as u8)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MismatchKind {
    Dimension,
    Product,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoMismatch {
    pub kind: MismatchKind,
    /// Piano vertices `a -> b` (and `b -> c` for products).
    pub vertices: Vec<usize>,
    pub degrees: Vec<i64>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub dimensions_checked: usize,
    pub products_checked: usize,
    pub mismatches: Vec<IsoMismatch>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the piano algebra of `epsilon(g)` with `ChiAlgebra(g)` degreewise
/// on `[-window, window]`, dimensions first and then every product of
/// distinguished basis elements.
pub fn verify_path_algebra_iso(g: &ArcSet, window: i64) -> Result<IsoReport> {
    let d = epsilon(g)?;
    let p = piano_from_extended(&d)?;
    verify_against_piano(g, &p, window)
}

/// As [`verify_path_algebra_iso`] against a given piano quiver, whose vertex
/// `k` is matched with the summand of the `k`-th chord of `epsilon(g)`.
pub fn verify_against_piano(g: &ArcSet, p: &PianoQuiver, window: i64) -> Result<IsoReport> {
    let chi = ChiAlgebra::new(g, window)?;
    let sigma = summand_indices(g, &epsilon(g)?)?;
    let v = p.vertices();
    if v != chi.size() {
        return Err(Error::Precondition(format!("{v} vertices for {} summands", chi.size())));
    }
    let per_source = (0..v)
        .into_par_iter()
        .map(|a| -> Result<IsoReport> {
            let mut r = IsoReport::default();
            for b in 0..v {
                for m in -window..=window {
                    r.dimensions_checked += 1;
                    let pd = graded_dim_windowed(p, a, b, m, window)?;
                    let cd = chi.dim(sigma[a], sigma[b], m);
                    if pd != cd {
                        r.mismatches.push(IsoMismatch {
                            kind: MismatchKind::Dimension,
                            vertices: vec![a, b],
                            degrees: vec![m],
                            detail: format!("piano {pd}, endomorphism ring {cd}"),
                        });
                    }
                }
            }
            for b in 0..v {
                for s in -window..=window {
                    if chi.dim(sigma[a], sigma[b], s) == 0 {
                        continue;
                    }
                    let Some(f) = representative(p, a, b, s) else { continue };
                    for c in 0..v {
                        for t in -window..=window {
                            if chi.dim(sigma[b], sigma[c], t) == 0 {
                                continue;
                            }
                            let Some(h) = representative(p, b, c, t) else { continue };
                            r.products_checked += 1;
                            let path = !normal_form(p, &f.concat(&h))?.is_zero();
                            let ring = chi_multiply(&chi, (sigma[a], sigma[b], s), (sigma[b], sigma[c], t))? == 1;
                            if path != ring {
                                r.mismatches.push(IsoMismatch {
                                    kind: MismatchKind::Product,
                                    vertices: vec![a, b, c],
                                    degrees: vec![s, t],
                                    detail: format!("path product nonzero: {path}, ring product nonzero: {ring}"),
                                });
                            }
                        }
                    }
                }
            }
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = IsoReport::default();
    for r in per_source {
        report.dimensions_checked += r.dimensions_checked;
        report.products_checked += r.products_checked;
        report.mismatches.extend(r.mismatches);
    }
    Ok(report)
}
