//! Degreewise dimensions of the piano algebra and the structure of its
//! graded pieces as modules over the keyboard algebra.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{normal_form, words_of_length, GentleQuiver, Letter, PianoQuiver, Word};
use crate::error::{Error, Result};
use crate::hom_calculus::DEFAULT_WINDOW;

/// Dimension of the degree `m` piece of paths `a ~> b`, by closed form.
pub fn graded_dim(p: &PianoQuiver, a: usize, b: usize, m: i64) -> Result<u8> {
    graded_dim_windowed(p, a, b, m, DEFAULT_WINDOW)
}

pub fn graded_dim_windowed(p: &PianoQuiver, a: usize, b: usize, m: i64, window: i64) -> Result<u8> {
    if m.abs() > window {
        return Err(Error::WindowExceeded { degree: m, window });
    }
    if a >= p.vertices() || b >= p.vertices() {
        return Err(Error::Precondition(format!("vertex out of range: {a}, {b}")));
    }
    if a == b {
        return Ok((!p.is_sharp(a) || m <= 0) as u8);
    }
    Ok(p.gentle().delta_path(a, b).is_some() as u8)
}

/// A shortest word representing the nonzero class of `(a, b, m)`, if any.
pub fn representative(p: &PianoQuiver, a: usize, b: usize, m: i64) -> Option<Word> {
    if graded_dim_windowed(p, a, b, m, i64::MAX).ok()? == 0 {
        return None;
    }
    let path = p.gentle().delta_path(a, b)?;
    let mut letters: Vec<Letter> = path.iter().map(|&e| Letter::Delta(e)).collect();
    if m <= 0 {
        letters.extend(std::iter::repeat_n(Letter::Alpha(b), (-m) as usize));
    } else if !p.is_sharp(b) {
        letters.extend(std::iter::repeat_n(Letter::Beta(b), m as usize));
    } else {
        let last = letters.pop()?;
        let before = p.arrow(path[path.len() - 1]).source;
        letters.extend(std::iter::repeat_n(Letter::Beta(before), m as usize));
        letters.push(last);
    }
    Some(Word::new(a, letters))
}

/// Dimension vector of the projective at `c`: `x` counts when a nonzero path
/// `x ~> c` exists.
pub fn projective_column(q: &GentleQuiver, c: usize) -> Vec<u8> {
    (0..q.vertices).map(|x| q.delta_path(x, c).is_some() as u8).collect()
}

/// A graded piece described column by column: `columns[b][x]` is the
/// dimension at `x` of the summand indexed by `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentStructure {
    pub degree: i64,
    pub columns: Vec<Vec<u8>>,
}

impl ComponentStructure {
    pub fn total(&self) -> usize {
        self.columns.iter().flatten().map(|&d| d as usize).sum()
    }
}

fn check_window(i: i64, window: i64) -> Result<()> {
    if i.abs() > window {
        return Err(Error::WindowExceeded { degree: i, window });
    }
    Ok(())
}

fn standard_predecessor(p: &PianoQuiver, b: usize) -> Option<usize> {
    p.gentle()
        .in_arrows(b)
        .map(|e| p.arrow(e).source)
        .find(|&a| !p.is_sharp(a))
}

/// The predicted structure: the keyboard algebra in degrees `i <= 0`, and in
/// positive degrees the projective `p_b` for standard `b`, `p_{b'}` for sharp
/// `b` with standard predecessor `b'`, and 0 for a sharp source.
pub fn degree_component_structure(p: &PianoQuiver, i: i64, window: i64) -> Result<ComponentStructure> {
    check_window(i, window)?;
    let q = p.gentle();
    let columns = (0..p.vertices())
        .map(|b| {
            if i <= 0 || !p.is_sharp(b) {
                projective_column(q, b)
            } else {
                match standard_predecessor(p, b) {
                    Some(a) => projective_column(q, a),
                    None => vec![0; p.vertices()],
                }
            }
        })
        .collect();
    Ok(ComponentStructure { degree: i, columns })
}

/// Same as [`degree_component_structure`] but with the radical of `p_b` for a
/// sharp `b` in positive degrees, which is what the algebra actually has when a
/// zero relation ends at `b`.
pub fn degree_component_structure_corrected(
    p: &PianoQuiver,
    i: i64,
    window: i64,
) -> Result<ComponentStructure> {
    check_window(i, window)?;
    let q = p.gentle();
    let columns = (0..p.vertices())
        .map(|b| {
            let mut col = projective_column(q, b);
            if i > 0 && p.is_sharp(b) {
                col[b] = 0;
            }
            col
        })
        .collect();
    Ok(ComponentStructure { degree: i, columns })
}

/// The degree `i` piece read off the algebra itself.
pub fn actual_degree_component(p: &PianoQuiver, i: i64, window: i64) -> Result<ComponentStructure> {
    check_window(i, window)?;
    let n = p.vertices();
    let mut columns = vec![vec![0; n]; n];
    for (b, col) in columns.iter_mut().enumerate() {
        for (x, d) in col.iter_mut().enumerate() {
            *d = graded_dim_windowed(p, x, b, i, window)?;
        }
    }
    Ok(ComponentStructure { degree: i, columns })
}

/// Dimension matrix `[a][b]` of the degree `m` piece.
pub fn dimension_matrix(p: &PianoQuiver, m: i64, window: i64) -> Result<Vec<Vec<u8>>> {
    let n = p.vertices();
    (0..n)
        .map(|a| (0..n).map(|b| graded_dim_windowed(p, a, b, m, window)).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleMismatch {
    pub source: usize,
    pub target: usize,
    pub degree: i64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub words: usize,
    pub mismatches: Vec<OracleMismatch>,
}

/// Compares [`graded_dim`] with the classes found by reducing every word of
/// length at most `max_len`: at most one nonzero class per `(a, b, m)`, found
/// exactly where the closed form is 1 and a short enough word exists.
pub fn path_enumeration_oracle(p: &PianoQuiver, max_len: usize) -> Result<OracleReport> {
    let mut classes: BTreeMap<(usize, usize, i64), BTreeSet<Vec<Letter>>> = BTreeMap::new();
    let mut words = 0;
    for a in 0..p.vertices() {
        for len in 0..=max_len {
            for letters in words_of_length(p, a, len) {
                words += 1;
                let nf = normal_form(p, &Word::new(a, letters))?;
                if !nf.is_zero() {
                    classes.entry((a, nf.target, nf.degree)).or_default().insert(nf.word);
                }
            }
        }
    }
    let mut mismatches = Vec::new();
    for (&(a, b, m), found) in &classes {
        if found.len() > 1 {
            mismatches.push(OracleMismatch {
                source: a,
                target: b,
                degree: m,
                detail: format!("{} distinct normal forms", found.len()),
            });
        }
        if graded_dim_windowed(p, a, b, m, i64::MAX)? == 0 {
            mismatches.push(OracleMismatch {
                source: a,
                target: b,
                degree: m,
                detail: "nonzero word where the closed form is 0".into(),
            });
        }
    }
    let bound = max_len as i64;
    for a in 0..p.vertices() {
        for b in 0..p.vertices() {
            for m in -bound..=bound {
                if let Some(w) = representative(p, a, b, m) {
                    if w.letters.len() <= max_len && !classes.contains_key(&(a, b, m)) {
                        mismatches.push(OracleMismatch {
                            source: a,
                            target: b,
                            degree: m,
                            detail: "closed form is 1 but no word reduces to a nonzero class".into(),
                        });
                    }
                }
            }
        }
    }
    Ok(OracleReport { words, mismatches })
}
