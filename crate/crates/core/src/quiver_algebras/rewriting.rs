//! Words in the piano quiver and their normal forms modulo the piano ideal.
//!
//! Oriented rules, with `w` the target of the arrow:
//! `alpha beta -> 1`, `beta alpha -> 1`, `alpha delta -> delta alpha`,
//! `beta delta -> delta beta` when `w` is standard,
//! `beta delta delta -> delta delta beta` through a sharp middle vertex, and
//! `beta delta alpha -> delta` into a sharp vertex. A word whose arrows contain
//! a zero relation is zero.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::PianoQuiver;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Letter {
    /// The degree -1 loop at a vertex.
    Alpha(usize),
    /// The degree +1 loop at a standard vertex.
    Beta(usize),
    /// An arrow of the keyboard quiver, by index.
    Delta(usize),
}

impl Letter {
    pub fn degree(&self) -> i64 {
        match self {
            Letter::Alpha(_) => -1,
            Letter::Beta(_) => 1,
            Letter::Delta(_) => 0,
        }
    }
}

/// A path starting at `source`; the empty word is the idempotent there.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    pub source: usize,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(source: usize, letters: Vec<Letter>) -> Self {
        Word { source, letters }
    }

    pub fn degree(&self) -> i64 {
        self.letters.iter().map(Letter::degree).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word { source: self.source, letters: [self.letters.as_slice(), &other.letters].concat() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    /// `delta...delta alpha^k`
    DeltaAlpha,
    /// `delta...delta beta^m` ending at a standard vertex
    DeltaBeta,
    /// `delta...delta beta^m delta` ending at a sharp vertex
    DeltaBetaDelta,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathNormalForm {
    pub source: usize,
    pub target: usize,
    pub degree: i64,
    pub shape: Shape,
    /// The reduced word; empty for zero.
    pub word: Vec<Letter>,
}

impl PathNormalForm {
    pub fn is_zero(&self) -> bool {
        self.shape == Shape::Zero
    }
}

/// Target vertex of a composable word.
pub fn word_target(p: &PianoQuiver, w: &Word) -> Result<usize> {
    if w.source >= p.vertices() {
        return Err(Error::NonComposable(0));
    }
    let mut cur = w.source;
    for (k, l) in w.letters.iter().enumerate() {
        match *l {
            Letter::Alpha(v) if v == cur => {}
            Letter::Beta(v) if v == cur && !p.is_sharp(v) => {}
            Letter::Delta(e) if e < p.gentle().arrows.len() && p.arrow(e).source == cur => {
                cur = p.arrow(e).target;
            }
            _ => return Err(Error::NonComposable(k)),
        }
    }
    Ok(cur)
}

fn has_zero_relation(p: &PianoQuiver, letters: &[Letter]) -> bool {
    let deltas: Vec<usize> = letters
        .iter()
        .filter_map(|l| match l {
            Letter::Delta(e) => Some(*e),
            _ => None,
        })
        .collect();
    deltas.windows(2).any(|w| p.gentle().is_relation(w[0], w[1]))
}

/// If a rule applies to `window` (which starts at a redex candidate),
/// returns `(consumed, replacement)`.
fn rule_at(p: &PianoQuiver, window: &[Letter]) -> Option<(usize, Vec<Letter>)> {
    use Letter::*;
    match window {
        [Alpha(u), Beta(v), ..] | [Beta(u), Alpha(v), ..] if u == v => Some((2, vec![])),
        [Alpha(_), Delta(e), ..] => Some((2, vec![Delta(*e), Alpha(p.arrow(*e).target)])),
        [Beta(_), Delta(e), rest @ ..] => {
            let w = p.arrow(*e).target;
            if !p.is_sharp(w) {
                return Some((2, vec![Delta(*e), Beta(w)]));
            }
            match rest.first() {
                Some(Delta(f)) => Some((3, vec![Delta(*e), Delta(*f), Beta(p.arrow(*f).target)])),
                Some(Alpha(_)) => Some((3, vec![Delta(*e)])),
                _ => None,
            }
        }
        _ => None,
    }
}

fn classify(p: &PianoQuiver, source: usize, target: usize, word: Vec<Letter>) -> PathNormalForm {
    let degree = word.iter().map(Letter::degree).sum();
    let last_delta = word.iter().rposition(|l| matches!(l, Letter::Delta(_)));
    let has_beta = word.iter().any(|l| matches!(l, Letter::Beta(_)));
    let shape = if !has_beta {
        Shape::DeltaAlpha
    } else if p.is_sharp(target) && last_delta == Some(word.len() - 1) {
        Shape::DeltaBetaDelta
    } else {
        Shape::DeltaBeta
    };
    PathNormalForm { source, target, degree, shape, word }
}

fn zero_form(p: &PianoQuiver, w: &Word, target: usize) -> PathNormalForm {
    let _ = p;
    PathNormalForm { source: w.source, target, degree: w.degree(), shape: Shape::Zero, word: vec![] }
}

/// Reduces a word with a stack: letters move from the input to the output
/// stack, and any redex formed at the top is rewritten and its replacement
/// pushed back onto the input.
pub fn normal_form(p: &PianoQuiver, w: &Word) -> Result<PathNormalForm> {
    let target = word_target(p, w)?;
    if has_zero_relation(p, &w.letters) {
        return Ok(zero_form(p, w, target));
    }
    let mut input: Vec<Letter> = w.letters.iter().rev().copied().collect();
    let mut out: Vec<Letter> = Vec::with_capacity(w.letters.len());
    while let Some(x) = input.pop() {
        out.push(x);
        let len = out.len();
        for span in [3usize, 2] {
            if len < span {
                continue;
            }
            if let Some((consumed, rhs)) = rule_at(p, &out[len - span..]) {
                if consumed == span {
                    out.truncate(len - span);
                    input.extend(rhs.into_iter().rev());
                    break;
                }
            }
        }
    }
    Ok(classify(p, w.source, target, out))
}

/// All words obtained from `letters` by one rule application anywhere.
pub fn one_step_rewrites(p: &PianoQuiver, letters: &[Letter]) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    for k in 0..letters.len() {
        if let Some((consumed, rhs)) = rule_at(p, &letters[k..]) {
            let mut next = letters[..k].to_vec();
            next.extend(rhs);
            next.extend_from_slice(&letters[k + consumed..]);
            out.push(next);
        }
    }
    out
}

/// Memoised exploration of every maximal rewrite sequence.
#[derive(Default)]
pub struct RewriteExplorer {
    memo: HashMap<Vec<Letter>, BTreeSet<Vec<Letter>>>,
}

impl RewriteExplorer {
    pub fn new() -> Self {
        Self::default()
    }

    /// The set of irreducible words reachable from `letters`.
    pub fn terminals(&mut self, p: &PianoQuiver, letters: &[Letter]) -> BTreeSet<Vec<Letter>> {
        if let Some(r) = self.memo.get(letters) {
            return r.clone();
        }
        let next = one_step_rewrites(p, letters);
        let result = if next.is_empty() {
            BTreeSet::from([letters.to_vec()])
        } else {
            let mut acc = BTreeSet::new();
            for w in next {
                acc.extend(self.terminals(p, &w));
            }
            acc
        };
        self.memo.insert(letters.to_vec(), result.clone());
        result
    }
}

/// Every composable word of length `len` starting at `source`.
pub fn words_of_length(p: &PianoQuiver, source: usize, len: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(p: &PianoQuiver, v: usize, len: usize, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        cur.push(Letter::Alpha(v));
        rec(p, v, len, cur, out);
        cur.pop();
        if !p.is_sharp(v) {
            cur.push(Letter::Beta(v));
            rec(p, v, len, cur, out);
            cur.pop();
        }
        for e in p.gentle().out_arrows(v) {
            cur.push(Letter::Delta(e));
            rec(p, p.arrow(e).target, len, cur, out);
            cur.pop();
        }
    }
    rec(p, source, len, &mut cur, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfluenceWitness {
    pub source: usize,
    pub word: Vec<Letter>,
    pub terminals: Vec<Vec<Letter>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfluenceReport {
    pub words: usize,
    pub witness: Option<ConfluenceWitness>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Explores all rewrite sequences of every word up to `max_len` letters and
/// checks that each ends in a single irreducible word equal to [`normal_form`].
pub fn check_confluence(p: &PianoQuiver, max_len: usize) -> ConfluenceReport {
    let mut explorer = RewriteExplorer::new();
    let mut words = 0;
    for source in 0..p.vertices() {
        for len in 0..=max_len {
            for letters in words_of_length(p, source, len) {
                words += 1;
                if has_zero_relation(p, &letters) {
                    continue;
                }
                let t = explorer.terminals(p, &letters);
                let fast = normal_form(p, &Word::new(source, letters.clone())).map(|f| f.word);
                if t.len() != 1 || fast.as_ref().ok() != t.iter().next() {
                    return ConfluenceReport {
                        words,
                        witness: Some(ConfluenceWitness {
                            source,
                            word: letters,
                            terminals: t.into_iter().collect(),
                        }),
                    };
                }
            }
        }
    }
    ConfluenceReport { words, witness: None }
}
