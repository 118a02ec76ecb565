//! Canonical relabeling for isomorphism tests.
//!
//! Every choice of starting tetrahedron and starting vertex labeling induces a
//! breadth-first relabeling of the whole (connected) triangulation. The
//! lexicographically smallest resulting table is a complete isomorphism
//! invariant. Cost is `24·k` traversals, which is fine at the sizes used here.

use std::collections::VecDeque;

use super::{GluingTable, Perm4, TetGluing, Triangulation};

fn relabel(tri: &Triangulation, start: usize, start_map: Perm4) -> Vec<(usize, Perm4)> {
    let k = tri.size();
    // maps[t] sends old vertex labels of t to new labels
    let mut maps: Vec<Option<Perm4>> = vec![None; k];
    let mut new_index = vec![usize::MAX; k];
    let mut order = Vec::with_capacity(k);
    maps[start] = Some(start_map);
    new_index[start] = 0;
    order.push(start);
    let mut out = Vec::with_capacity(4 * k);
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        let phi = maps[t].expect("visited");
        for g in 0..4 {
            let f = phi.inverse().apply(g);
            let (t2, _, q) = tri.gluing(t, f);
            if maps[t2].is_none() {
                maps[t2] = Some(phi.compose(q.inverse()));
                new_index[t2] = order.len();
                order.push(t2);
                queue.push_back(t2);
            }
            let phi2 = maps[t2].expect("just set");
            out.push((new_index[t2], phi2.compose(q).compose(phi.inverse())));
        }
    }
    out
}

/// The canonical representative of `tri`'s isomorphism class.
pub fn canonical_table(tri: &Triangulation) -> GluingTable {
    let best = (0..tri.size())
        .flat_map(|start| Perm4::all().map(move |p| (start, p)))
        .map(|(start, p)| relabel(tri, start, p))
        .min()
        .expect("non-empty triangulation");
    GluingTable {
        tets: best
            .chunks(4)
            .map(|c| TetGluing {
                nbr: [c[0].0, c[1].0, c[2].0, c[3].0],
                perm: [c[0].1, c[1].1, c[2].1, c[3].1],
            })
            .collect(),
    }
}

/// Whether two triangulations are combinatorially isomorphic.
pub fn is_isomorphic(a: &Triangulation, b: &Triangulation) -> bool {
    a.size() == b.size() && canonical_table(a) == canonical_table(b)
}
