//! 2-3 and 3-2 Pachner moves.
//!
//! Both moves replace a small cluster of tetrahedra. Vertices of the cluster
//! are tagged with tokens (`A`, `B` for the apexes, `X0..X2` for the middle
//! triangle); old and new tetrahedra are matched face by face through their
//! token sets, which gives every new gluing permutation directly.

use std::collections::VecDeque;

use super::{edge_index, EdgeClass, GluingTable, Perm4, TetGluing, Triangulation, TriangulationError};

type Token = u8;
const A: Token = 0;
const B: Token = 1;
const X0: Token = 2;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("tet {tet} face {face} does not exist")]
    NoSuchFace { tet: usize, face: usize },
    #[error("tet {tet} face {face} is glued to its own tetrahedron")]
    SelfGluedFace { tet: usize, face: usize },
    #[error("edge class {edge} does not exist")]
    NoSuchEdge { edge: usize },
    #[error("edge class {edge} has degree {degree}, not 3")]
    WrongDegree { edge: usize, degree: usize },
    #[error("edge class {edge} meets a tetrahedron more than once")]
    RepeatedTetrahedron { edge: usize },
    #[error("move produced an invalid triangulation: {0}")]
    Invalid(#[from] TriangulationError),
}

/// Where the pieces of a 2-3 move ended up.
#[derive(Debug, Clone)]
pub(crate) struct Layout23 {
    pub tet: usize,
    pub other: usize,
    /// Labels in `tet` of `X0, X1, X2` (the common face, ascending).
    pub x_in_tet: [usize; 3],
    /// Labels in `other` of `X0, X1, X2`.
    pub x_in_other: [usize; 3],
    /// New index of each surviving old tetrahedron.
    pub old_to_new: Vec<Option<usize>>,
    /// Index of the first of the three new tetrahedra; new tet `first_new + l`
    /// has tokens `[A, B, Xi, Xj]` with `{i, j} = {0,1,2} \ {l}` ascending.
    pub first_new: usize,
}

struct Cluster {
    removed: Vec<usize>,
    old_tokens: Vec<[Token; 4]>,
    new_tokens: Vec<[Token; 4]>,
}

fn face_tokens(tokens: &[Token; 4], face: usize) -> [Token; 3] {
    let mut s = [0; 3];
    let mut i = 0;
    for (v, &tok) in tokens.iter().enumerate() {
        if v != face {
            s[i] = tok;
            i += 1;
        }
    }
    s.sort_unstable();
    s
}

fn label_of(tokens: &[Token; 4], tok: Token) -> usize {
    tokens.iter().position(|&t| t == tok).expect("token present")
}

fn retriangulate(tri: &Triangulation, cluster: &Cluster) -> Result<(Triangulation, Vec<Option<usize>>, usize), MoveError> {
    let k = tri.size();
    let mut old_to_new = vec![None; k];
    let mut next = 0;
    for (t, slot) in old_to_new.iter_mut().enumerate() {
        if !cluster.removed.contains(&t) {
            *slot = Some(next);
            next += 1;
        }
    }
    let first_new = next;
    let total = first_new + cluster.new_tokens.len();
    let removed_pos = |t: usize| cluster.removed.iter().position(|&r| r == t);

    // Old boundary faces of the cluster, keyed by token set.
    let mut boundary: Vec<([Token; 3], usize, usize)> = Vec::new();
    for (i, &t) in cluster.removed.iter().enumerate() {
        for f in 0..4 {
            let key = face_tokens(&cluster.old_tokens[i], f);
            let internal = cluster
                .removed
                .iter()
                .enumerate()
                .any(|(j, _)| (0..4).any(|g| (j, g) != (i, f) && face_tokens(&cluster.old_tokens[j], g) == key));
            if !internal {
                boundary.push((key, t, f));
            }
        }
    }

    // For an old boundary face: (new tet, new face, map old labels -> new labels).
    let locate = |t: usize, f: usize| -> (usize, usize, Perm4) {
        let i = removed_pos(t).expect("removed tet");
        let toks = &cluster.old_tokens[i];
        let key = face_tokens(toks, f);
        for (n, ntoks) in cluster.new_tokens.iter().enumerate() {
            for g in 0..4 {
                if face_tokens(ntoks, g) == key {
                    let mut images = [0u8; 4];
                    for v in 0..4 {
                        images[v] = if v == f { g as u8 } else { label_of(ntoks, toks[v]) as u8 };
                    }
                    let phi = Perm4::new(images).expect("token map is a bijection");
                    return (first_new + n, g, phi);
                }
            }
        }
        unreachable!("boundary face without a new counterpart")
    };

    let placeholder = TetGluing {
        nbr: [usize::MAX; 4],
        perm: [Perm4::IDENTITY; 4],
    };
    let mut tets = vec![placeholder; total];
    for (t, tet) in tri.table().tets.iter().enumerate() {
        if let Some(nt) = old_to_new[t] {
            for f in 0..4 {
                if let Some(n2) = old_to_new[tet.nbr[f]] {
                    tets[nt].nbr[f] = n2;
                    tets[nt].perm[f] = tet.perm[f];
                }
            }
        }
    }

    for (n, ntoks) in cluster.new_tokens.iter().enumerate() {
        for g in 0..4 {
            let key = face_tokens(ntoks, g);
            let partner = cluster.new_tokens.iter().enumerate().find_map(|(m, mtoks)| {
                if m == n {
                    return None;
                }
                (0..4).find(|&h| face_tokens(mtoks, h) == key).map(|h| (m, h))
            });
            if let Some((m, h)) = partner {
                let mtoks = &cluster.new_tokens[m];
                let mut images = [0u8; 4];
                for v in 0..4 {
                    images[v] = if v == g { h as u8 } else { label_of(mtoks, ntoks[v]) as u8 };
                }
                tets[first_new + n].nbr[g] = first_new + m;
                tets[first_new + n].perm[g] = Perm4::new(images).expect("bijection");
                continue;
            }
            let &(_, t, f) = boundary
                .iter()
                .find(|(bk, _, _)| *bk == key)
                .expect("new boundary face matches an old one");
            let (_, _, phi) = locate(t, f);
            let (t2, f2, q) = tri.gluing(t, f);
            match old_to_new[t2] {
                Some(nt2) => {
                    tets[first_new + n].nbr[g] = nt2;
                    tets[first_new + n].perm[g] = q.compose(phi.inverse());
                    tets[nt2].nbr[f2] = first_new + n;
                    tets[nt2].perm[f2] = phi.compose(q.inverse());
                }
                None => {
                    let (n2, _, phi2) = locate(t2, f2);
                    tets[first_new + n].nbr[g] = n2;
                    tets[first_new + n].perm[g] = phi2.compose(q).compose(phi.inverse());
                }
            }
        }
    }

    let result = Triangulation::new(GluingTable { tets })?;
    Ok((result, old_to_new, first_new))
}

pub(crate) fn pachner_23_layout(tri: &Triangulation, tet: usize, face: usize) -> Result<(Triangulation, Layout23), MoveError> {
    if tet >= tri.size() || face >= 4 {
        return Err(MoveError::NoSuchFace { tet, face });
    }
    let (other, other_face, p) = tri.gluing(tet, face);
    if other == tet {
        return Err(MoveError::SelfGluedFace { tet, face });
    }
    let mut x_in_tet = [0usize; 3];
    let mut tet_tokens = [A; 4];
    let mut i = 0;
    for (v, token) in tet_tokens.iter_mut().enumerate() {
        if v != face {
            x_in_tet[i] = v;
            *token = X0 + i as Token;
            i += 1;
        }
    }
    let x_in_other = x_in_tet.map(|v| p.apply(v));
    let mut other_tokens = [B; 4];
    for (i, &w) in x_in_other.iter().enumerate() {
        other_tokens[w] = X0 + i as Token;
    }
    debug_assert_eq!(other_tokens[other_face], B);
    let new_tokens = (0..3)
        .map(|l| {
            let mut toks = [A, B, 0, 0];
            let mut j = 2;
            for i in 0..3 {
                if i != l {
                    toks[j] = X0 + i as Token;
                    j += 1;
                }
            }
            toks
        })
        .collect();
    let cluster = Cluster {
        removed: vec![tet, other],
        old_tokens: vec![tet_tokens, other_tokens],
        new_tokens,
    };
    let (result, old_to_new, first_new) = retriangulate(tri, &cluster)?;
    Ok((
        result,
        Layout23 {
            tet,
            other,
            x_in_tet,
            x_in_other,
            old_to_new,
            first_new,
        },
    ))
}

/// Replaces the two tetrahedra on either side of face `face` of `tet` by three
/// tetrahedra around a new degree-3 edge.
///
/// Surviving tetrahedra keep their relative order; the three new ones are
/// appended last, and each has the new edge between its vertices 0 and 1.
pub fn pachner_23(tri: &Triangulation, tet: usize, face: usize) -> Result<Triangulation, MoveError> {
    pachner_23_layout(tri, tet, face).map(|(t, _)| t)
}

/// Replaces the three distinct tetrahedra around a degree-3 edge by two
/// tetrahedra sharing a face. The two new tetrahedra are appended last and
/// are glued to each other along face 0.
pub fn pachner_32(tri: &Triangulation, edge: &EdgeClass) -> Result<Triangulation, MoveError> {
    let Some(class) = tri.edge_classes().get(edge.id) else {
        return Err(MoveError::NoSuchEdge { edge: edge.id });
    };
    if class.degree != 3 {
        return Err(MoveError::WrongDegree {
            edge: class.id,
            degree: class.degree,
        });
    }
    let removed: Vec<usize> = class.slots.iter().map(|s| s.tet).collect();
    if removed[0] == removed[1] || removed[1] == removed[2] || removed[0] == removed[2] {
        return Err(MoveError::RepeatedTetrahedron { edge: class.id });
    }

    let inconsistent = || MoveError::RepeatedTetrahedron { edge: class.id };
    const UNSET: Token = u8::MAX;
    let mut tokens = vec![[UNSET; 4]; 3];
    let [a, b] = class.slots[0].vertices();
    let mut next_y = X0;
    for (v, token) in tokens[0].iter_mut().enumerate() {
        *token = if v == a {
            A
        } else if v == b {
            B
        } else {
            next_y += 1;
            next_y - 1
        };
    }
    debug_assert_eq!(next_y, X0 + 2);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let t = removed[i];
        for f in 0..4 {
            if tokens[i][f] < X0 {
                continue;
            }
            let (t2, f2, q) = tri.gluing(t, f);
            let j = removed.iter().position(|&r| r == t2).ok_or_else(inconsistent)?;
            if j == i {
                return Err(inconsistent());
            }
            let fresh = tokens[j][0] == UNSET;
            for v in (0..4).filter(|&v| v != f) {
                let w = q.apply(v);
                if fresh {
                    tokens[j][w] = tokens[i][v];
                } else if tokens[j][w] != tokens[i][v] {
                    return Err(inconsistent());
                }
            }
            if fresh {
                // the apex opposite the shared face is the third equator token
                let shared = (0..4)
                    .filter(|&v| v != f)
                    .map(|v| tokens[i][v])
                    .find(|&tok| tok >= X0)
                    .ok_or_else(inconsistent)?;
                tokens[j][f2] = (X0..X0 + 3)
                    .find(|&y| y != shared && y != tokens[i][f])
                    .expect("three equator tokens");
                queue.push_back(j);
            }
        }
    }
    if tokens.iter().any(|t| t.contains(&UNSET)) {
        return Err(inconsistent());
    }
    for (i, &t) in removed.iter().enumerate() {
        let [a, b] = class.slots[i].vertices();
        let ends = [tokens[i][a], tokens[i][b]];
        if !(ends == [A, B] || ends == [B, A]) || edge_index(a, b) != class.slots[i].edge || t != class.slots[i].tet {
            return Err(inconsistent());
        }
    }

    let cluster = Cluster {
        removed,
        old_tokens: tokens,
        new_tokens: vec![[A, X0, X0 + 1, X0 + 2], [B, X0, X0 + 1, X0 + 2]],
    };
    retriangulate(tri, &cluster).map(|(t, _, _)| t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::triangulation::is_isomorphic;

    #[test]
    fn two_three_on_figure_eight() {
        let tri = fixtures::figure_eight();
        for t in 0..2 {
            for f in 0..4 {
                let after = pachner_23(&tri, t, f).unwrap();
                assert_eq!(after.size(), 3);
                assert_eq!(after.edge_classes().len(), 3);
                assert_eq!(after.cusps().len(), 1);
                assert!(after.is_orientable());
                let new_edge = after.edge_of(2, 0, 1);
                assert_eq!(new_edge.degree, 3);
                let back = pachner_32(&after, &new_edge.clone()).unwrap();
                assert!(is_isomorphic(&back, &tri));
            }
        }
    }

    #[test]
    fn three_two_rejects_high_degree() {
        let tri = fixtures::figure_eight();
        let e = tri.edge_classes()[0].clone();
        assert_eq!(
            pachner_32(&tri, &e).unwrap_err(),
            MoveError::WrongDegree { edge: 0, degree: 6 }
        );
    }

    #[test]
    fn bad_face_rejected() {
        let tri = fixtures::figure_eight();
        assert_eq!(pachner_23(&tri, 5, 0).unwrap_err(), MoveError::NoSuchFace { tet: 5, face: 0 });
    }
}
