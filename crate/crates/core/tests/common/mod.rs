#![allow(dead_code)]

use tri_core::bundle::{build_layered, words_with_both_letters, LayeredBundle};
use tri_core::{fixtures, MonodromyWord, Triangulation};

pub const FIG8_JSON: &str = include_str!("../../fixtures/fig8.json");
pub const RL_INSERT1_JSON: &str = include_str!("../../fixtures/rl_insert1.json");
pub const GIESEKING_JSON: &str = include_str!("../../fixtures/gieseking.json");

pub fn word(s: &str) -> MonodromyWord {
    s.parse().unwrap()
}

pub fn bundle(s: &str, insertions: &[usize]) -> LayeredBundle {
    build_layered(&word(s).with_insertions(insertions.to_vec()).unwrap()).unwrap()
}

pub fn rl_insert1() -> Triangulation {
    bundle("RL", &[1]).triangulation
}

/// Named triangulations with at most `max_k` tetrahedra: the two small
/// fixtures plus layered bundles with zero or one insertion.
pub fn small_triangulations(max_k: usize) -> Vec<(String, Triangulation)> {
    let mut out = vec![
        ("figure-eight".to_string(), fixtures::figure_eight()),
        ("gieseking".to_string(), fixtures::gieseking()),
    ];
    for len in 2..=max_k {
        for w in words_with_both_letters(len) {
            out.push((w.to_string(), build_layered(&w).unwrap().triangulation));
            if len + 2 <= max_k {
                for pos in 0..=len {
                    let ww = w.with_insertions(vec![pos]).unwrap();
                    out.push((format!("{w}+{pos}"), build_layered(&ww).unwrap().triangulation));
                }
            }
        }
    }
    out
}
