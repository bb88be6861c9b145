use super::*;
use crate::generators::{enumerate_limit_generators, fan_generator};
use crate::surface_dissections::epsilon;
use proptest::prelude::*;

fn c(a: usize, b: usize) -> ChordArc {
    ChordArc::of(a, b)
}

/// Nine-arc extended dissection on ten boundary points, chords numbered 1..9.
fn keyboard_dissection() -> DissectionSet {
    DissectionSet::new(
        5,
        vec![c(0, 4), c(0, 8), c(2, 4), c(6, 8)],
        vec![c(0, 1), c(3, 4), c(4, 5), c(8, 9), c(6, 7)],
    )
    .unwrap()
}

/// Labels 1..9 in the order red 1, 3, 5, 8 then binding 2, 4, 6, 7, 9.
const LABELS: [usize; 9] = [1, 3, 5, 8, 2, 4, 6, 7, 9];

fn labelled_arrows(q: &GentleQuiver) -> BTreeSet<(usize, usize)> {
    q.arrows.iter().map(|a| (LABELS[a.source], LABELS[a.target])).collect()
}

use std::collections::BTreeSet;

#[test]
fn keyboard_example() {
    let k = keyboard_from_extended(&keyboard_dissection()).unwrap();
    let q = &k.gentle;
    let expected: BTreeSet<(usize, usize)> =
        [(2, 1), (1, 3), (6, 1), (1, 5), (5, 4), (7, 3), (3, 8), (9, 8)].into_iter().collect();
    assert_eq!(labelled_arrows(q), expected);
    let rels: BTreeSet<[(usize, usize); 2]> = q
        .relations
        .iter()
        .map(|&(x, y)| {
            let (x, y) = (q.arrows[x], q.arrows[y]);
            [(LABELS[x.source], LABELS[x.target]), (LABELS[y.source], LABELS[y.target])]
        })
        .collect();
    let expected: BTreeSet<[(usize, usize); 2]> =
        [[(2, 1), (1, 5)], [(6, 1), (1, 3)], [(1, 3), (3, 8)]].into_iter().collect();
    assert_eq!(rels, expected);
    let sharp: BTreeSet<usize> = k.sharp_vertices().iter().map(|&v| LABELS[v]).collect();
    assert_eq!(sharp, [2, 4, 6, 7, 9].into_iter().collect());
    assert!(is_locally_gentle(q));
    assert!(q.is_tree());
    assert_eq!(k.sharp_arrow(), None);
}

#[test]
fn punctured_figure_quiver() {
    // Five red points and chords 1 = 0-3, 2 = 3-2, 3 = 2-0, 4 = 4-3, 5 = 2-1.
    let q = GentleQuiver::from_chords(5, &[c(0, 3), c(2, 3), c(0, 2), c(3, 4), c(1, 2)]);
    let arrows: BTreeSet<(usize, usize)> =
        q.arrows.iter().map(|a| (a.source + 1, a.target + 1)).collect();
    assert_eq!(arrows, [(3, 1), (4, 1), (1, 2), (2, 3), (3, 5)].into_iter().collect());
    assert_eq!(q.relations.len(), 3);
    assert!(is_locally_gentle(&q));
    assert!(!q.is_tree());
}

#[test]
fn small_dissections() {
    let d = DissectionSet::new(2, vec![c(0, 2)], vec![]).unwrap();
    let q = gentle_from_dissection(&d).unwrap();
    assert_eq!((q.vertices, q.arrows.len()), (1, 0));
    let d = DissectionSet::new(3, vec![c(0, 2), c(0, 4), c(2, 4)], vec![]).unwrap();
    assert!(gentle_from_dissection(&d).is_err());
    let p = piano_from_extended(&epsilon(&fan_generator(1)).unwrap()).unwrap();
    assert_eq!((p.vertices(), p.keyboard.sharp_vertices()), (1, vec![0]));
    assert!(!p.relations().iter().any(|r| matches!(r, PianoRelation::AlphaBeta { .. })));
}

#[test]
fn locally_gentle_negatives() {
    let arrows = (1..4).map(|t| Arrow { source: 0, target: t, at: 0 }).collect();
    let q = GentleQuiver::new(4, arrows, vec![]);
    assert_eq!(locally_gentle_violation(&q).unwrap_err().condition, 1);
    let arrows = vec![
        Arrow { source: 0, target: 1, at: 0 },
        Arrow { source: 1, target: 2, at: 0 },
        Arrow { source: 1, target: 3, at: 0 },
    ];
    let q = GentleQuiver::new(4, arrows.clone(), vec![(0, 1), (0, 2)]);
    assert_eq!(locally_gentle_violation(&q).unwrap_err().condition, 3);
    let q = GentleQuiver::new(4, arrows, vec![]);
    assert_eq!(locally_gentle_violation(&q).unwrap_err().condition, 4);
}

/// The fan piano quiver is a linearly oriented line, sharp at both ends and
/// alternating in between.
#[test]
fn fan_piano_is_alternating_line() {
    for n in 1..=5 {
        let p = piano_from_extended(&epsilon(&fan_generator(n)).unwrap()).unwrap();
        let q = p.gentle();
        assert!(q.relations.is_empty());
        let start = (0..q.vertices).find(|&v| q.in_arrows(v).count() == 0).unwrap();
        let mut order = vec![start];
        while let Some(e) = q.out_arrows(*order.last().unwrap()).next() {
            order.push(q.arrows[e].target);
        }
        assert_eq!(order.len(), 2 * n - 1);
        for (k, v) in order.iter().enumerate() {
            assert_eq!(p.is_sharp(*v), k % 2 == 0);
        }
    }
}

fn fan_piano(n: usize) -> (PianoQuiver, Vec<usize>) {
    let p = piano_from_extended(&epsilon(&fan_generator(n)).unwrap()).unwrap();
    let q = p.gentle().clone();
    let start = (0..q.vertices).find(|&v| q.in_arrows(v).count() == 0).unwrap();
    let mut order = vec![start];
    while let Some(e) = q.out_arrows(*order.last().unwrap()).next() {
        order.push(q.arrows[e].target);
    }
    (p, order)
}

#[test]
fn normal_form_examples() {
    let (p, order) = fan_piano(2);
    let mid = order[1];
    let id = normal_form(&p, &Word::new(mid, vec![Letter::Alpha(mid), Letter::Beta(mid)])).unwrap();
    assert_eq!((id.degree, id.word.clone(), id.shape), (0, vec![], Shape::DeltaAlpha));

    let e0 = p.gentle().out_arrows(order[0]).next().unwrap();
    let e1 = p.gentle().out_arrows(mid).next().unwrap();
    let (d0, d1) = (Letter::Delta(e0), Letter::Delta(e1));
    // beta delta beta alpha delta at the middle vertex, then into the last one.
    let w = Word::new(mid, vec![Letter::Beta(mid), Letter::Beta(mid), Letter::Alpha(mid), d1]);
    let nf = normal_form(&p, &w).unwrap();
    assert_eq!(nf.shape, Shape::DeltaBetaDelta);
    assert_eq!(nf.word, vec![Letter::Beta(mid), d1]);
    let w = Word::new(order[0], vec![Letter::Alpha(order[0]), d0, Letter::Beta(mid), Letter::Beta(mid)]);
    let nf = normal_form(&p, &w).unwrap();
    assert_eq!((nf.shape, nf.degree), (Shape::DeltaBeta, 1));
    assert_eq!(nf.word, vec![d0, Letter::Beta(mid)]);
    let bad = Word::new(order[0], vec![Letter::Beta(order[0])]);
    assert_eq!(normal_form(&p, &bad), Err(Error::NonComposable(0)));

    let k = piano_from_extended(&keyboard_dissection()).unwrap();
    let (x, y) = k.gentle().relations[0];
    let s = k.arrow(x).source;
    let nf = normal_form(&k, &Word::new(s, vec![Letter::Delta(x), Letter::Delta(y)])).unwrap();
    assert!(nf.is_zero());
}

#[test]
fn graded_dim_examples() {
    let k = piano_from_extended(&keyboard_dissection()).unwrap();
    for v in 0..k.vertices() {
        for m in -6..=6 {
            let d = graded_dim(&k, v, v, m).unwrap();
            assert_eq!(d, (!k.is_sharp(v) || m <= 0) as u8);
        }
    }
    // Sharp sources receive nothing in positive degrees.
    for b in (0..k.vertices()).filter(|&b| k.is_sharp(b) && k.gentle().in_arrows(b).count() == 0) {
        for a in 0..k.vertices() {
            assert_eq!(graded_dim(&k, a, b, 3).unwrap(), 0);
        }
    }
    assert_eq!(graded_dim(&k, 0, 0, 7), Err(Error::WindowExceeded { degree: 7, window: 6 }));
    // Degree independence off the diagonal.
    for a in 0..k.vertices() {
        for b in (0..k.vertices()).filter(|&b| b != a) {
            let d0 = graded_dim(&k, a, b, 0).unwrap();
            assert!((-6..=6).all(|m| graded_dim(&k, a, b, m).unwrap() == d0));
        }
    }
}

#[test]
fn fan_components() {
    let (p, _) = fan_piano(3);
    let neg = degree_component_structure(&p, -2, 6).unwrap();
    let pos = degree_component_structure(&p, 2, 6).unwrap();
    assert_eq!((neg.total(), pos.total()), (15, 12));
    assert_eq!(pos, actual_degree_component(&p, 2, 6).unwrap());
    assert_eq!(neg, actual_degree_component(&p, -2, 6).unwrap());
}

/// A zero relation ending at a sharp vertex makes its positive-degree column
/// smaller than the projective at its predecessor.
#[test]
fn sharp_column_after_relation() {
    // Red 0-2 and 2-4, binding 1-2, 3-4 and 0-5.
    let d = DissectionSet::new(3, vec![c(0, 2), c(2, 4)], vec![c(1, 2), c(3, 4), c(0, 5)]).unwrap();
    let p = piano_from_extended(&d).unwrap();
    assert_eq!(p.gentle().relations.len(), 1);
    let predicted = degree_component_structure(&p, 1, 6).unwrap();
    let actual = actual_degree_component(&p, 1, 6).unwrap();
    assert_eq!((predicted.total(), actual.total()), (8, 7));
    assert_eq!(degree_component_structure_corrected(&p, 1, 6).unwrap(), actual);
}

#[test]
fn confluence_small() {
    for n in 1..=3 {
        for g in enumerate_limit_generators(n, true).unwrap() {
            let p = piano_from_extended(&epsilon(&g).unwrap()).unwrap();
            let r = check_confluence(&p, 5);
            assert!(r.passed(), "{:?}", r.witness);
        }
    }
}

#[test]
fn oracle_small() {
    for g in enumerate_limit_generators(3, true).unwrap() {
        let p = piano_from_extended(&epsilon(&g).unwrap()).unwrap();
        let r = path_enumeration_oracle(&p, 5).unwrap();
        assert!(r.mismatches.is_empty(), "{:?}", r.mismatches);
    }
}

#[test]
fn isomorphism_keys() {
    for n in 1..=4 {
        for g in enumerate_limit_generators(n, false).unwrap() {
            let p = piano_from_extended(&epsilon(&g).unwrap()).unwrap();
            let r = piano_from_extended(&epsilon(&g.rotate(1 % n)).unwrap()).unwrap();
            assert_eq!(isomorphism_key(&p), isomorphism_key(&r));
        }
    }
    let keys: BTreeSet<String> = enumerate_limit_generators(3, false)
        .unwrap()
        .iter()
        .map(|g| isomorphism_key(&piano_from_extended(&epsilon(g).unwrap()).unwrap()))
        .collect();
    assert!(keys.len() > 1);
}

#[test]
fn keyboard_invariants() {
    for n in 1..=4 {
        for g in enumerate_limit_generators(n, false).unwrap() {
            let k = keyboard_from_extended(&epsilon(&g).unwrap()).unwrap();
            assert_eq!(k.sharp_arrow(), None);
            assert_eq!(k.sharp_vertices().len(), n);
            assert!(k.gentle.is_tree());
            assert!(is_locally_gentle(&k.gentle));
        }
    }
}

proptest! {
    #[test]
    fn rewriting_preserves_normal_form(n in 1usize..4, k in 0usize..100, s in 0usize..7,
                                        len in 0usize..7, pick in 0usize..10_000) {
        let all = enumerate_limit_generators(n, false).unwrap();
        let p = piano_from_extended(&epsilon(&all[k % all.len()]).unwrap()).unwrap();
        let s = s % p.vertices();
        let words = words_of_length(&p, s, len);
        let w = Word::new(s, words[pick % words.len()].clone());
        let nf = normal_form(&p, &w).unwrap();
        prop_assert_eq!(nf.degree, w.degree());
        if !nf.is_zero() {
            prop_assert_eq!(graded_dim_windowed(&p, s, nf.target, nf.degree, 100).unwrap(), 1);
            for next in one_step_rewrites(&p, &w.letters) {
                let again = normal_form(&p, &Word::new(s, next)).unwrap();
                prop_assert_eq!(&again, &nf);
            }
        }
    }
}
