//! Normal-surface coordinates, matching equations, the canonical basis and
//! the formal Euler characteristic.
//!
//! Standard coordinates have `7k` entries: triangle `(t, v)` cutting off
//! vertex `v` sits at `4t + v`, and quadrilateral `(t, p)` at `4k + 3t + p`.
//! Quadrilateral `(t, p)` is the one separating opposite pair `p`, i.e.
//! disjoint from both edges of that pair.

use serde::{Deserialize, Serialize};

use crate::angle::{build_system, AngleAssignment};
use crate::exact::{RatMatrix, Rational};
use crate::triangulation::{edge_index, edge_pair, Triangulation, PAIR_EDGES};

/// A (possibly formal) normal class in standard coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalVector {
    pub tri: Vec<[Rational; 4]>,
    pub quad: Vec<[Rational; 3]>,
}

/// Quadrilateral coordinates only, `3k` entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QVector(pub Vec<[Rational; 3]>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalError {
    #[error("normal vector has {tri} triangle rows and {quad} quad rows, expected {k} of each")]
    Shape { k: usize, tri: usize, quad: usize },
    #[error("angle assignment does not satisfy the angle equations")]
    NotAngleSolution,
    #[error("at least one quadrilateral count must be positive")]
    NoQuadrilaterals,
}

impl NormalVector {
    pub fn zero(k: usize) -> Self {
        NormalVector {
            tri: vec![std::array::from_fn(|_| Rational::zero()); k],
            quad: vec![std::array::from_fn(|_| Rational::zero()); k],
        }
    }

    pub fn size(&self) -> usize {
        self.tri.len()
    }

    pub fn check_shape(&self, k: usize) -> Result<(), NormalError> {
        if self.tri.len() != k || self.quad.len() != k {
            return Err(NormalError::Shape {
                k,
                tri: self.tri.len(),
                quad: self.quad.len(),
            });
        }
        Ok(())
    }

    pub fn to_flat(&self) -> Vec<Rational> {
        self.tri
            .iter()
            .flat_map(|r| r.iter().cloned())
            .chain(self.quad.iter().flat_map(|r| r.iter().cloned()))
            .collect()
    }

    pub fn from_flat(k: usize, flat: &[Rational]) -> Self {
        assert_eq!(flat.len(), 7 * k, "expected 7k coordinates");
        NormalVector {
            tri: (0..k).map(|t| std::array::from_fn(|v| flat[4 * t + v].clone())).collect(),
            quad: (0..k)
                .map(|t| std::array::from_fn(|p| flat[4 * k + 3 * t + p].clone()))
                .collect(),
        }
    }

    pub fn q_vector(&self) -> QVector {
        QVector(self.quad.clone())
    }

    /// `self + c·other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &NormalVector) {
        for (a, b) in self.tri.iter_mut().zip(&other.tri) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        for (a, b) in self.quad.iter_mut().zip(&other.quad) {
            for (x, y) in a.iter_mut().zip(b) {
                *x += c * y;
            }
        }
    }
}

impl QVector {
    pub fn to_flat(&self) -> Vec<Rational> {
        self.0.iter().flat_map(|r| r.iter().cloned()).collect()
    }
}

/// The `6k × 7k` matching equations: one row per glued face pair and per
/// normal-arc type on that face.
pub fn matching_matrix(tri: &Triangulation) -> RatMatrix {
    let k = tri.size();
    let quad_col = |t: usize, a: usize, b: usize| 4 * k + 3 * t + edge_pair(edge_index(a, b));
    let mut rows = Vec::with_capacity(6 * k);
    for t in 0..k {
        for f in 0..4 {
            let (t2, f2, p) = tri.gluing(t, f);
            if (t2, f2) < (t, f) {
                continue;
            }
            for v in (0..4).filter(|&v| v != f) {
                let w = p.apply(v);
                let mut row = vec![Rational::zero(); 7 * k];
                // the quad cutting off v on face f separates {v, f} from the rest
                row[4 * t + v] += Rational::one();
                row[quad_col(t, v, f)] += Rational::one();
                row[4 * t2 + w] -= Rational::one();
                row[quad_col(t2, w, f2)] -= Rational::one();
                rows.push(row);
            }
        }
    }
    RatMatrix::from_rows(rows)
}

/// The tetrahedral solutions `d` (indexed by tetrahedron) and edge solutions
/// `e` (indexed by edge class).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalBasis {
    pub d: Vec<NormalVector>,
    pub e: Vec<NormalVector>,
}

impl CanonicalBasis {
    /// `Σ n_i d_i + Σ m_j e_j`.
    pub fn combine(&self, n: &[Rational], m: &[Rational]) -> NormalVector {
        assert_eq!(n.len(), self.d.len());
        assert_eq!(m.len(), self.e.len());
        let mut out = NormalVector::zero(self.d.len());
        for (c, v) in n.iter().zip(&self.d).chain(m.iter().zip(&self.e)) {
            if !c.is_zero() {
                out.add_scaled(c, v);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = &NormalVector> {
        self.d.iter().chain(&self.e)
    }
}

pub fn canonical_basis(tri: &Triangulation) -> CanonicalBasis {
    let k = tri.size();
    let one = Rational::one();
    let d = (0..k)
        .map(|t| {
            let mut v = NormalVector::zero(k);
            v.tri[t].iter_mut().for_each(|x| *x -= &one);
            v.quad[t].iter_mut().for_each(|x| *x += &one);
            v
        })
        .collect();
    let e = tri
        .edge_classes()
        .iter()
        .map(|class| {
            let mut v = NormalVector::zero(k);
            for slot in &class.slots {
                let [a, b] = slot.vertices();
                v.quad[slot.tet][slot.pair()] += &one;
                v.tri[slot.tet][a] -= &one;
                v.tri[slot.tet][b] -= &one;
            }
            v
        })
        .collect();
    CanonicalBasis { d, e }
}

/// `Σ n_i d_i + Σ m_j e_j` in exact integers, as `(triangles, quads)`,
/// straight from the slot description of the basis.
pub fn combine_integers(tri: &Triangulation, n: &[i64], m: &[i64]) -> (Vec<[i128; 4]>, Vec<[i128; 3]>) {
    let k = tri.size();
    assert_eq!(n.len(), k);
    assert_eq!(m.len(), tri.edge_classes().len());
    let mut tris = vec![[0i128; 4]; k];
    let mut quads = vec![[0i128; 3]; k];
    for (t, &c) in n.iter().enumerate() {
        let c = c as i128;
        tris[t].iter_mut().for_each(|x| *x -= c);
        quads[t].iter_mut().for_each(|x| *x += c);
    }
    for (class, &c) in tri.edge_classes().iter().zip(m) {
        let c = c as i128;
        for slot in &class.slots {
            let [a, b] = slot.vertices();
            quads[slot.tet][slot.pair()] += c;
            tris[slot.tet][a] -= c;
            tris[slot.tet][b] -= c;
        }
    }
    (tris, quads)
}

fn inverse_degree(tri: &Triangulation, t: usize, edge: usize) -> Rational {
    let deg = tri.edge_classes()[tri.edge_class_id(t, edge)].degree;
    Rational::new(1, deg as i64)
}

/// Euler characteristic weight of triangle `(t, v)`.
pub fn triangle_weight(tri: &Triangulation, t: usize, v: usize) -> Rational {
    let s: Rational = (0..4)
        .filter(|&b| b != v)
        .map(|b| inverse_degree(tri, t, edge_index(v, b)))
        .sum();
    s - Rational::new(1, 2)
}

/// Euler characteristic weight of quadrilateral `(t, p)`.
pub fn quad_weight(tri: &Triangulation, t: usize, p: usize) -> Rational {
    let s: Rational = (0..6)
        .filter(|&e| edge_pair(e) != p)
        .map(|e| inverse_degree(tri, t, e))
        .sum();
    s - Rational::one()
}

/// The formal Euler characteristic, extended linearly to all vectors.
pub fn chi_star(tri: &Triangulation, v: &NormalVector) -> Rational {
    let k = tri.size();
    let mut total = Rational::zero();
    for t in 0..k {
        for (vert, x) in v.tri[t].iter().enumerate() {
            if !x.is_zero() {
                total += x * triangle_weight(tri, t, vert);
            }
        }
        for (p, x) in v.quad[t].iter().enumerate() {
            if !x.is_zero() {
                total += x * quad_weight(tri, t, p);
            }
        }
    }
    total
}

/// Sum of the corner angles of triangle `(t, v)`: the dihedral angles at the
/// three edges through `v`.
pub fn triangle_corner_sum(a: &AngleAssignment, t: usize, v: usize) -> Rational {
    (0..4)
        .filter(|&b| b != v)
        .map(|b| &a.values[t][edge_pair(edge_index(v, b))])
        .sum()
}

/// Sum of the corner angles of quadrilateral `(t, p)`: the dihedral angles
/// at the four edges it meets.
pub fn quad_corner_sum(a: &AngleAssignment, t: usize, p: usize) -> Rational {
    (0..6)
        .filter(|&e| edge_pair(e) != p)
        .map(|e| &a.values[t][edge_pair(e)])
        .sum()
}

/// Euler characteristic from a Gauss-Bonnet angle count, ignoring branch
/// points: each disk contributes (angle sum - (sides - 2)π) / 2π.
///
/// Agrees with [`chi_star`] on the matching kernel whenever `a` satisfies the
/// angle equations, and `a` is rejected otherwise.
pub fn chi_angles(tri: &Triangulation, v: &NormalVector, a: &AngleAssignment) -> Result<Rational, NormalError> {
    let k = tri.size();
    v.check_shape(k)?;
    if !build_system(tri).is_solution(a) {
        return Err(NormalError::NotAngleSolution);
    }
    let half = Rational::new(1, 2);
    let mut total = Rational::zero();
    for t in 0..k {
        for (vert, x) in v.tri[t].iter().enumerate() {
            if !x.is_zero() {
                total += x * (triangle_corner_sum(a, t, vert) - Rational::one()) * &half;
            }
        }
        for (p, x) in v.quad[t].iter().enumerate() {
            if !x.is_zero() {
                total += x * (quad_corner_sum(a, t, p) - Rational::from(2)) * &half;
            }
        }
    }
    Ok(total)
}

/// Disks resolving `p` and `q` quadrilaterals of the two types with two π
/// angles in one tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AlmostNormalPieces {
    pub copies: u64,
    pub gon_sides: u64,
}

/// Resolves `p` and `q` incompatible quadrilaterals into `gcd(p, q)` copies of
/// a `4(p̂ + q̂ - 1)`-gon, where `(p̂, q̂)` is the reduced pair. With one count
/// zero the quads are compatible and stay ordinary quadrilaterals.
pub fn almost_normal_pieces(p: u64, q: u64) -> Result<AlmostNormalPieces, NormalError> {
    if p == 0 && q == 0 {
        return Err(NormalError::NoQuadrilaterals);
    }
    if p == 0 || q == 0 {
        return Ok(AlmostNormalPieces {
            copies: p.max(q),
            gon_sides: 4,
        });
    }
    let n = num_integer::gcd(p, q);
    Ok(AlmostNormalPieces {
        copies: n,
        gon_sides: 4 * (p / n + q / n - 1),
    })
}

/// How many of the two edges of pair `p` in tetrahedron `t` lie in `class`.
pub(crate) fn pair_slot_count(tri: &Triangulation, class: usize, t: usize, p: usize) -> usize {
    PAIR_EDGES[p]
        .iter()
        .filter(|&&e| tri.edge_class_id(t, e) == class)
        .count()
}
