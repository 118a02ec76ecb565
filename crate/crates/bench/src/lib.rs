//! Inputs shared by the benchmarks.

use tri_core::{build_layered, MonodromyWord, Triangulation};

/// Layered bundle for `word` with cancelling pairs before the given letters.
pub fn bundle(word: &str, insertions: &[usize]) -> Triangulation {
    let w: MonodromyWord = word.parse().expect("valid word");
    let w = w.with_insertions(insertions.to_vec()).expect("valid insertions");
    build_layered(&w).expect("bundle builds").triangulation
}

/// Bundles of growing size, labelled by tetrahedron count.
pub fn ladder() -> Vec<(usize, Triangulation)> {
    ["RL", "RRLL", "RRRLLL", "RLRLRLRL", "RRLRLLRRLRLL"]
        .iter()
        .map(|w| {
            let tri = bundle(w, &[]);
            (tri.size(), tri)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_grows() {
        let sizes: Vec<usize> = ladder().iter().map(|(k, _)| *k).collect();
        assert!(sizes.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(bundle("RL", &[1]).size(), 4);
    }
}
