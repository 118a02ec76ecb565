mod common;

use common::{bundle, word};
use tri_core::bundle::{build_layered, mat_mul, words_with_both_letters, BundleError, Letter};
use tri_core::triangulation::is_isomorphic;
use tri_core::{degree2_report, fixtures, is_taut, monodromy_matrix, solve_angle, MonodromyWord};

#[test]
fn monodromy_examples() {
    let rl = monodromy_matrix(&word("RL")).unwrap();
    assert_eq!((rl.matrix, rl.trace, rl.pseudo_anosov), ([[2, 1], [1, 1]], 3, true));
    let rr = monodromy_matrix(&word("RR")).unwrap();
    assert_eq!((rr.matrix, rr.trace, rr.pseudo_anosov), ([[1, 2], [0, 1]], 2, false));
    let with_pair = word("RL").with_insertions(vec![1]).unwrap();
    assert_eq!(monodromy_matrix(&with_pair).unwrap(), rl);
}

#[test]
fn words_with_both_letters_are_pseudo_anosov() {
    for len in 2..=7 {
        for w in words_with_both_letters(len) {
            let m = monodromy_matrix(&w).unwrap();
            assert!(m.pseudo_anosov, "{w}");
            let [[a, b], [c, d]] = m.matrix;
            assert_eq!(a * d - b * c, 1);
        }
    }
}

#[test]
fn rl_bundle_is_figure_eight() {
    let b = bundle("RL", &[]);
    assert_eq!(b.triangulation.size(), 2);
    assert_eq!(b.triangulation.degrees(), vec![6, 6]);
    assert!(is_isomorphic(&b.triangulation, &fixtures::figure_eight()));
    assert!(degree2_report(&b.triangulation).is_empty());
    assert!(solve_angle(&b.triangulation).unwrap().verdict.has_angle_structure());
}

#[test]
fn built_bundles_are_valid() {
    for len in 1..=5 {
        let words: Vec<MonodromyWord> = (0..1usize << len)
            .map(|bits| MonodromyWord {
                letters: (0..len)
                    .map(|i| if bits >> i & 1 == 0 { Letter::R } else { Letter::L })
                    .collect(),
                insertions: vec![],
            })
            .collect();
        for w in words {
            if !w.has_both_letters() {
                // parabolic monodromy: the fixed edge closes up and the cusp degenerates
                assert!(matches!(build_layered(&w), Err(BundleError::Invalid(_))), "{w}");
                continue;
            }
            for ins in std::iter::once(vec![]).chain((0..=len).map(|p| vec![p])) {
                let ww = w.with_insertions(ins.clone()).unwrap();
                let b = build_layered(&ww).unwrap();
                let tri = &b.triangulation;
                assert_eq!(tri.size(), len + 2 * ins.len(), "{w} {ins:?}");
                assert_eq!(tri.cusps().len(), 1, "{w} {ins:?}");
                assert!(tri.is_orientable(), "{w} {ins:?}");
                assert!(is_taut(tri, &b.taut), "{w} {ins:?}");
                assert_eq!(degree2_report(tri).len(), ins.len(), "{w} {ins:?}");
            }
        }
    }
}

#[test]
fn every_insertion_adds_one_degree_two_edge() {
    let b = bundle("RLRLL", &[0, 0, 2, 5, 5, 5]);
    assert_eq!(b.triangulation.size(), 17);
    assert_eq!(degree2_report(&b.triangulation).len(), 6);
    assert!(degree2_report(&b.triangulation).iter().all(|c| c.degree == 2));
}

#[test]
fn builder_errors() {
    assert_eq!("".parse::<MonodromyWord>(), Err(BundleError::EmptyWord));
    assert_eq!("RLx".parse::<MonodromyWord>(), Err(BundleError::BadLetter('x')));
    assert_eq!(
        word("RL").with_insertions(vec![0, 3]),
        Err(BundleError::BadInsertion { position: 3, len: 2 })
    );
    let empty = MonodromyWord {
        letters: vec![],
        insertions: vec![],
    };
    assert!(matches!(build_layered(&empty), Err(BundleError::EmptyWord)));
}

#[test]
fn long_words_overflow_cleanly() {
    let long: MonodromyWord = "RL".repeat(60).parse().unwrap();
    assert_eq!(monodromy_matrix(&long), Err(BundleError::Overflow));
    assert!(matches!(build_layered(&long), Err(BundleError::Overflow)));
}

#[test]
fn concatenation_multiplies_matrices() {
    let a = word("RRL").with_insertions(vec![1]).unwrap();
    let b = word("LR").with_insertions(vec![2]).unwrap();
    let ab = a.concat(&b);
    assert_eq!(ab.to_string(), "RRLLR");
    assert_eq!(ab.insertions, vec![1, 5]);
    assert_eq!(
        monodromy_matrix(&ab).unwrap().matrix,
        mat_mul(&monodromy_matrix(&a).unwrap().matrix, &monodromy_matrix(&b).unwrap().matrix)
    );
}
