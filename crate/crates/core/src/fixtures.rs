//! Small named triangulations used by tests, benches and the CLI docs.

use crate::triangulation::{GluingTable, Perm4, TetGluing, Triangulation};

/// Builds a table from one-sided joins `(tet, face, other, images)`; the
/// reverse gluings are filled in.
pub fn from_joins(k: usize, joins: &[(usize, usize, usize, [u8; 4])]) -> GluingTable {
    let mut tets = vec![
        TetGluing {
            nbr: [usize::MAX; 4],
            perm: [Perm4::IDENTITY; 4],
        };
        k
    ];
    for &(t, f, t2, images) in joins {
        let p = Perm4::new(images).expect("join permutation");
        let f2 = p.apply(f);
        tets[t].nbr[f] = t2;
        tets[t].perm[f] = p;
        tets[t2].nbr[f2] = t;
        tets[t2].perm[f2] = p.inverse();
    }
    GluingTable { tets }
}

/// The standard two-tetrahedron triangulation of the figure-eight knot
/// complement.
pub fn figure_eight() -> Triangulation {
    let table = from_joins(
        2,
        &[
            (0, 0, 1, [1, 3, 0, 2]),
            (0, 1, 1, [2, 0, 3, 1]),
            (0, 2, 1, [0, 3, 2, 1]),
            (0, 3, 1, [2, 1, 0, 3]),
        ],
    );
    Triangulation::new(table).expect("figure-eight table is valid")
}

/// The one-tetrahedron triangulation of the Gieseking manifold
/// (non-orientable, one Klein bottle cusp).
pub fn gieseking() -> Triangulation {
    let table = from_joins(1, &[(0, 0, 0, [1, 2, 0, 3]), (0, 2, 0, [0, 2, 3, 1])]);
    Triangulation::new(table).expect("Gieseking table is valid")
}
