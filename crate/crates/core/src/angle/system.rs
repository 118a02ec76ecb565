use crate::exact::{RatMatrix, Rational};
use crate::normal::pair_slot_count;
use crate::triangulation::Triangulation;

use super::AngleAssignment;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowMeaning {
    Tet(usize),
    Edge(usize),
}

/// The `2k × 3k` angle equations: `k` tetrahedron rows with right side 1,
/// then `k` edge rows with right side 2. Column `3t + p` is the angle of
/// pair `p` in tetrahedron `t`.
///
/// Read as quadrilateral vectors, the tetrahedron rows are the tetrahedral
/// solutions and the edge rows the edge solutions of the canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AngleSystem {
    pub matrix: RatMatrix,
    pub rhs: Vec<Rational>,
    pub rows: Vec<RowMeaning>,
}

impl AngleSystem {
    pub fn is_solution(&self, a: &AngleAssignment) -> bool {
        if 3 * a.values.len() != self.matrix.cols() {
            return false;
        }
        self.matrix.mul_vec(&a.to_flat()) == self.rhs
    }
}

pub fn build_system(tri: &Triangulation) -> AngleSystem {
    let k = tri.size();
    let mut matrix = RatMatrix::zeros(2 * k, 3 * k);
    let mut rows = Vec::with_capacity(2 * k);
    let mut rhs = Vec::with_capacity(2 * k);
    for t in 0..k {
        for p in 0..3 {
            matrix[(t, 3 * t + p)] = Rational::one();
        }
        rows.push(RowMeaning::Tet(t));
        rhs.push(Rational::one());
    }
    for class in tri.edge_classes() {
        let r = k + class.id;
        for slot in &class.slots {
            let col = 3 * slot.tet + slot.pair();
            // both edges of a pair in one class count twice, filled once
            matrix[(r, col)] = Rational::from(pair_slot_count(tri, class.id, slot.tet, slot.pair()));
        }
        rows.push(RowMeaning::Edge(class.id));
        rhs.push(Rational::from(2));
    }
    AngleSystem { matrix, rhs, rows }
}

/// Non-negative solution of the angle equations.
pub fn is_semi_angle(a: &AngleAssignment, system: &AngleSystem) -> bool {
    system.is_solution(a) && a.values.iter().flatten().all(|x| !x.is_negative())
}
