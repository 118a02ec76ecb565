//! Ideal triangulations given by face gluings.
//!
//! Face `f` of a tetrahedron is the face opposite vertex `f`. The gluing of
//! face `f` of tetrahedron `t` is a target `(t', f')` and a permutation `p` of
//! vertex labels with `p(f) = f'`; `p` carries the three vertices of the face
//! onto the matching vertices of the target face.
//!
//! Opposite edge pairs are indexed globally: pair 0 is `{0,1}|{2,3}`, pair 1 is
//! `{0,2}|{1,3}` and pair 2 is `{0,3}|{1,2}`.

mod canonical;
mod pachner;
mod perm;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

pub use canonical::{canonical_table, is_isomorphic};
pub use pachner::{pachner_23, pachner_32, MoveError};
pub(crate) use pachner::pachner_23_layout;
pub use perm::Perm4;

/// Vertex pairs of the six edges of a tetrahedron, by edge index.
pub const EDGE_VERTICES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

/// Edge indices of the two edges in each opposite pair.
pub const PAIR_EDGES: [[usize; 2]; 3] = [[0, 5], [1, 4], [2, 3]];

/// Index of the edge joining vertices `a != b`.
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("no edge joins {a} and {b}"),
    }
}

/// The opposite pair an edge belongs to.
pub fn edge_pair(edge: usize) -> usize {
    edge.min(5 - edge)
}

/// Gluing data for one tetrahedron, as it appears in the JSON format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TetGluing {
    pub nbr: [usize; 4],
    pub perm: [Perm4; 4],
}

/// A raw, unvalidated gluing table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluingTable {
    pub tets: Vec<TetGluing>,
}

impl GluingTable {
    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Compact JSON, byte-stable for a given table.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("gluing table serializes")
    }

    pub fn len(&self) -> usize {
        self.tets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tets.is_empty()
    }
}

/// One occurrence of an edge class in a tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeSlot {
    pub tet: usize,
    pub edge: usize,
}

impl EdgeSlot {
    pub fn vertices(self) -> [usize; 2] {
        EDGE_VERTICES[self.edge]
    }

    pub fn pair(self) -> usize {
        edge_pair(self.edge)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeClass {
    pub id: usize,
    /// Slots in increasing `(tet, edge)` order.
    pub slots: Vec<EdgeSlot>,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CuspLink {
    pub id: usize,
    /// Triangle cells of the link as `(tet, vertex)` corners.
    pub corners: Vec<(usize, usize)>,
    pub euler_char: i64,
    pub orientable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ValidationReport {
    pub valid: bool,
    pub k: usize,
    pub edge_classes: usize,
    pub degrees: Vec<usize>,
    pub cusp_count: usize,
    pub cusp_links: Vec<CuspLink>,
    pub orientable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TriangulationError {
    #[error("triangulation has no tetrahedra")]
    Empty,
    #[error("tet {tet} face {face}: neighbour {nbr} out of range")]
    NeighbourOutOfRange { tet: usize, face: usize, nbr: usize },
    #[error("tet {tet} face {face} is glued to itself")]
    FaceGluedToItself { tet: usize, face: usize },
    #[error("tet {tet} face {face}: gluing is not an involution")]
    NotInvolution { tet: usize, face: usize },
    #[error("triangulation is disconnected (tet {tet} unreachable from tet 0)")]
    Disconnected { tet: usize },
    #[error("edge {edge:?} of tet {tet} is identified with itself in reverse")]
    EdgeReversed { tet: usize, edge: [usize; 2] },
    #[error("cusp {cusp} (containing tet {tet} vertex {vertex}) has Euler characteristic {euler_char}")]
    CuspEulerCharacteristic {
        cusp: usize,
        euler_char: i64,
        tet: usize,
        vertex: usize,
    },
    #[error("{edges} edge classes for {tets} tetrahedra")]
    EdgeCount { edges: usize, tets: usize },
}

impl TriangulationError {
    /// The `(tet, face-or-vertex)` cell the error refers to, if any.
    pub fn cell(&self) -> Option<(usize, usize)> {
        use TriangulationError::*;
        match *self {
            NeighbourOutOfRange { tet, face, .. }
            | FaceGluedToItself { tet, face }
            | NotInvolution { tet, face } => Some((tet, face)),
            Disconnected { tet } => Some((tet, 0)),
            EdgeReversed { tet, edge } => Some((tet, edge_index(edge[0], edge[1]))),
            CuspEulerCharacteristic { tet, vertex, .. } => Some((tet, vertex)),
            Empty | EdgeCount { .. } => None,
        }
    }
}

/// A validated ideal triangulation with its edge classes and cusp links.
///
/// Immutable once constructed; derived data is computed at validation time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    table: GluingTable,
    edges: Vec<EdgeClass>,
    slot_class: Vec<usize>,
    cusps: Vec<CuspLink>,
    orientable: bool,
}

/// Validates a gluing table and reports its combinatorics.
pub fn validate(table: &GluingTable) -> Result<ValidationReport, TriangulationError> {
    Triangulation::new(table.clone()).map(|t| t.report())
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut x = x;
        while self.0[x] != root {
            let next = self.0[x];
            self.0[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // smaller root wins so class representatives are the smallest members
        if ra < rb {
            self.0[rb] = ra;
        } else if rb < ra {
            self.0[ra] = rb;
        }
    }
}

/// Parity sign of the permutation that sorts `labels`.
fn sorting_sign(labels: &[usize]) -> i8 {
    let mut inversions = 0;
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if labels[i] > labels[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Two-colours the cells of one connectivity structure; `links` yields
/// `(neighbour, relative sign)` for a cell. Returns false on a conflict.
fn consistently_orientable<F>(cells: &[usize], n: usize, mut links: F) -> bool
where
    F: FnMut(usize) -> Vec<(usize, i8)>,
{
    let mut sign = vec![0i8; n];
    for &start in cells {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for (d, rel) in links(c) {
                let want = sign[c] * rel;
                if sign[d] == 0 {
                    sign[d] = want;
                    queue.push_back(d);
                } else if sign[d] != want {
                    return false;
                }
            }
        }
    }
    true
}

impl Triangulation {
    pub fn new(table: GluingTable) -> Result<Self, TriangulationError> {
        let k = table.tets.len();
        if k == 0 {
            return Err(TriangulationError::Empty);
        }
        for (t, tet) in table.tets.iter().enumerate() {
            for f in 0..4 {
                let nbr = tet.nbr[f];
                if nbr >= k {
                    return Err(TriangulationError::NeighbourOutOfRange { tet: t, face: f, nbr });
                }
            }
        }
        for (t, tet) in table.tets.iter().enumerate() {
            for f in 0..4 {
                let (t2, p) = (tet.nbr[f], tet.perm[f]);
                let f2 = p.apply(f);
                if t2 == t && f2 == f {
                    return Err(TriangulationError::FaceGluedToItself { tet: t, face: f });
                }
                let back = &table.tets[t2];
                if back.nbr[f2] != t || back.perm[f2] != p.inverse() {
                    return Err(TriangulationError::NotInvolution { tet: t, face: f });
                }
            }
        }

        let mut reach = UnionFind::new(k);
        for (t, tet) in table.tets.iter().enumerate() {
            for &n in &tet.nbr {
                reach.union(t, n);
            }
        }
        if let Some(t) = (0..k).find(|&t| reach.find(t) != 0) {
            return Err(TriangulationError::Disconnected { tet: t });
        }

        // Directed edge ends (t, a, b) at index 16t + 4a + b; an undirected
        // edge class is the union of both directions.
        let mut ends = UnionFind::new(16 * k);
        let mut corners = UnionFind::new(4 * k);
        for (t, tet) in table.tets.iter().enumerate() {
            for f in 0..4 {
                let (t2, p) = (tet.nbr[f], tet.perm[f]);
                for a in (0..4).filter(|&a| a != f) {
                    corners.union(4 * t + a, 4 * t2 + p.apply(a));
                    for b in (0..4).filter(|&b| b != f && b != a) {
                        ends.union(16 * t + 4 * a + b, 16 * t2 + 4 * p.apply(a) + p.apply(b));
                    }
                }
            }
        }
        for t in 0..k {
            for edge in EDGE_VERTICES {
                let [a, b] = edge;
                if ends.find(16 * t + 4 * a + b) == ends.find(16 * t + 4 * b + a) {
                    return Err(TriangulationError::EdgeReversed { tet: t, edge });
                }
            }
        }

        let mut slot_root = vec![0usize; 6 * k];
        for t in 0..k {
            for (e, [a, b]) in EDGE_VERTICES.iter().enumerate() {
                let r1 = ends.find(16 * t + 4 * a + b);
                let r2 = ends.find(16 * t + 4 * b + a);
                slot_root[6 * t + e] = r1.min(r2);
            }
        }
        let mut slot_class = vec![usize::MAX; 6 * k];
        let mut edges: Vec<EdgeClass> = Vec::new();
        for s in 0..6 * k {
            if slot_class[s] != usize::MAX {
                continue;
            }
            let id = edges.len();
            let slots: Vec<EdgeSlot> = (s..6 * k)
                .filter(|&s2| slot_root[s2] == slot_root[s])
                .map(|s2| EdgeSlot { tet: s2 / 6, edge: s2 % 6 })
                .collect();
            for slot in &slots {
                slot_class[6 * slot.tet + slot.edge] = id;
            }
            edges.push(EdgeClass {
                id,
                degree: slots.len(),
                slots,
            });
        }

        let mut cusps: Vec<CuspLink> = Vec::new();
        let mut corner_cusp = vec![usize::MAX; 4 * k];
        for c in 0..4 * k {
            if corner_cusp[c] != usize::MAX {
                continue;
            }
            let root = corners.find(c);
            let cells: Vec<usize> = (c..4 * k).filter(|&c2| corners.find(c2) == root).collect();
            let id = cusps.len();
            for &cell in &cells {
                corner_cusp[cell] = id;
            }
            let mut link_vertices: Vec<usize> = Vec::new();
            for &cell in &cells {
                let (t, a) = (cell / 4, cell % 4);
                for b in (0..4).filter(|&b| b != a) {
                    link_vertices.push(ends.find(16 * t + 4 * a + b));
                }
            }
            link_vertices.sort_unstable();
            link_vertices.dedup();
            // V - E + F with E = 3F/2
            let euler_char = link_vertices.len() as i64 - cells.len() as i64 / 2;
            let orientable = consistently_orientable(&cells, 4 * k, |cell| {
                let (t, v) = (cell / 4, cell % 4);
                (0..4)
                    .filter(|&f| f != v)
                    .map(|f| {
                        let p = table.tets[t].perm[f];
                        let others: Vec<usize> =
                            (0..4).filter(|&u| u != v).map(|u| p.apply(u)).collect();
                        (4 * table.tets[t].nbr[f] + p.apply(v), -sorting_sign(&others))
                    })
                    .collect()
            });
            cusps.push(CuspLink {
                id,
                corners: cells.iter().map(|&c| (c / 4, c % 4)).collect(),
                euler_char,
                orientable,
            });
        }
        if let Some(bad) = cusps.iter().find(|c| c.euler_char != 0) {
            let (tet, vertex) = bad.corners[0];
            return Err(TriangulationError::CuspEulerCharacteristic {
                cusp: bad.id,
                euler_char: bad.euler_char,
                tet,
                vertex,
            });
        }
        if edges.len() != k {
            return Err(TriangulationError::EdgeCount { edges: edges.len(), tets: k });
        }

        let all_tets: Vec<usize> = (0..k).collect();
        let orientable = consistently_orientable(&all_tets, k, |t| {
            let tet = &table.tets[t];
            (0..4).map(|f| (tet.nbr[f], -tet.perm[f].sign())).collect()
        });

        Ok(Triangulation {
            table,
            edges,
            slot_class,
            cusps,
            orientable,
        })
    }

    pub fn from_json(s: &str) -> Result<Self, LoadError> {
        let table = GluingTable::from_json(s)?;
        Ok(Triangulation::new(table)?)
    }

    /// Number of tetrahedra, `k`.
    pub fn size(&self) -> usize {
        self.table.tets.len()
    }

    pub fn table(&self) -> &GluingTable {
        &self.table
    }

    pub fn to_json(&self) -> String {
        self.table.to_json()
    }

    /// `(neighbour tet, neighbour face, vertex permutation)` across face `f` of `t`.
    pub fn gluing(&self, t: usize, f: usize) -> (usize, usize, Perm4) {
        let p = self.table.tets[t].perm[f];
        (self.table.tets[t].nbr[f], p.apply(f), p)
    }

    pub fn edge_classes(&self) -> &[EdgeClass] {
        &self.edges
    }

    /// Edge class id of edge index `edge` in tetrahedron `t`.
    pub fn edge_class_id(&self, t: usize, edge: usize) -> usize {
        self.slot_class[6 * t + edge]
    }

    /// The edge class containing the edge `{a, b}` of tetrahedron `t`.
    pub fn edge_of(&self, t: usize, a: usize, b: usize) -> &EdgeClass {
        &self.edges[self.edge_class_id(t, edge_index(a, b))]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.degree).collect()
    }

    pub fn cusps(&self) -> &[CuspLink] {
        &self.cusps
    }

    pub fn is_orientable(&self) -> bool {
        self.orientable
    }

    pub fn report(&self) -> ValidationReport {
        ValidationReport {
            valid: true,
            k: self.size(),
            edge_classes: self.edges.len(),
            degrees: self.degrees(),
            cusp_count: self.cusps.len(),
            cusp_links: self.cusps.clone(),
            orientable: self.orientable,
        }
    }
}

/// Failure to read a triangulation from JSON.
#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("malformed triangulation JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid triangulation: {0}")]
    Invalid(#[from] TriangulationError),
}
