use crate::triangulation::{Triangulation, PAIR_EDGES};

use super::TautStructure;

/// Whether `taut` puts exactly two π angles at every edge class.
pub fn is_taut(tri: &Triangulation, taut: &TautStructure) -> bool {
    if taut.pi_pair.len() != tri.size() || taut.pi_pair.iter().any(|&p| p > 2) {
        return false;
    }
    let mut pis = vec![0usize; tri.edge_classes().len()];
    for (t, &p) in taut.pi_pair.iter().enumerate() {
        for e in PAIR_EDGES[p as usize] {
            pis[tri.edge_class_id(t, e)] += 1;
        }
    }
    pis.iter().all(|&c| c == 2)
}

/// All taut structures, in lexicographic order of `pi_pair`.
///
/// Depth-first over tetrahedra; a branch is cut as soon as some edge has more
/// than two π angles, or can no longer reach two with the slots left.
pub fn enumerate_taut(tri: &Triangulation) -> Vec<TautStructure> {
    let k = tri.size();
    let n_edges = tri.edge_classes().len();
    // remaining[t][c]: slots of class c in tetrahedra t.. (inclusive)
    let mut remaining = vec![vec![0usize; n_edges]; k + 1];
    for t in (0..k).rev() {
        remaining[t] = remaining[t + 1].clone();
        for e in 0..6 {
            remaining[t][tri.edge_class_id(t, e)] += 1;
        }
    }
    let mut out = Vec::new();
    let mut choice = vec![0u8; k];
    let mut pis = vec![0usize; n_edges];
    descend(tri, 0, &remaining, &mut choice, &mut pis, &mut out);
    out
}

fn descend(
    tri: &Triangulation,
    t: usize,
    remaining: &[Vec<usize>],
    choice: &mut [u8],
    pis: &mut [usize],
    out: &mut Vec<TautStructure>,
) {
    if t == choice.len() {
        if pis.iter().all(|&c| c == 2) {
            out.push(TautStructure { pi_pair: choice.to_vec() });
        }
        return;
    }
    let classes: Vec<usize> = (0..6).map(|e| tri.edge_class_id(t, e)).collect();
    for p in 0..3u8 {
        let [e1, e2] = PAIR_EDGES[p as usize];
        pis[classes[e1]] += 1;
        pis[classes[e2]] += 1;
        let viable = classes
            .iter()
            .all(|&c| pis[c] <= 2 && pis[c] + remaining[t + 1][c] >= 2);
        if viable {
            choice[t] = p;
            descend(tri, t + 1, remaining, choice, pis, out);
        }
        pis[classes[e1]] -= 1;
        pis[classes[e2]] -= 1;
    }
}

/// Plain `3^k` scan, for cross-checking [`enumerate_taut`] on small inputs.
pub fn enumerate_taut_exhaustive(tri: &Triangulation) -> Vec<TautStructure> {
    let k = tri.size();
    let total = 3usize.pow(k as u32);
    (0..total)
        .map(|mut code| {
            let mut pi_pair = vec![0u8; k];
            for slot in pi_pair.iter_mut().rev() {
                *slot = (code % 3) as u8;
                code /= 3;
            }
            TautStructure { pi_pair }
        })
        .filter(|t| is_taut(tri, t))
        .collect()
}
