use crate::triangulation::{pachner_23_layout, MoveError, Triangulation, PAIR_EDGES, EDGE_VERTICES};

use super::{is_taut, TautStructure};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransportError {
    #[error("taut structure does not fit the triangulation")]
    InvalidTaut,
    #[error(transparent)]
    Move(#[from] MoveError),
}

#[derive(Debug, Clone)]
pub struct Transported {
    pub triangulation: Triangulation,
    /// `None` when the taut structure does not survive the move.
    pub taut: Option<TautStructure>,
}

/// Performs the 2-3 move through `(tet, face)` and carries `taut` across it.
///
/// The structure survives exactly when the π edges of the two old
/// tetrahedra that run to their apexes end at different vertices of the
/// common face. Tetrahedron numbering follows [`crate::triangulation::pachner_23`].
pub fn taut_transport_23(
    tri: &Triangulation,
    taut: &TautStructure,
    tet: usize,
    face: usize,
) -> Result<Transported, TransportError> {
    if !is_taut(tri, taut) {
        return Err(TransportError::InvalidTaut);
    }
    let (new_tri, layout) = pachner_23_layout(tri, tet, face)?;
    let (_, other_face, _) = tri.gluing(tet, face);

    let r = apex_partner(taut.pi_pair[layout.tet], face, &layout.x_in_tet);
    let w = apex_partner(taut.pi_pair[layout.other], other_face, &layout.x_in_other);
    if r == w {
        return Ok(Transported {
            triangulation: new_tri,
            taut: None,
        });
    }
    let s = 3 - r - w;

    let mut pi_pair = vec![0u8; new_tri.size()];
    for (old, new) in layout.old_to_new.iter().enumerate() {
        if let Some(new) = new {
            pi_pair[*new] = taut.pi_pair[old];
        }
    }
    pi_pair[layout.first_new + r] = 0;
    pi_pair[layout.first_new + w] = 0;
    // in N_s the tokens are [A, B, X_min, X_max]; the π pair is {A X_r, B X_w}
    pi_pair[layout.first_new + s] = if r < w { 1 } else { 2 };

    let carried = TautStructure { pi_pair };
    debug_assert!(is_taut(&new_tri, &carried));
    Ok(Transported {
        triangulation: new_tri,
        taut: Some(carried),
    })
}

/// Index `i` of the vertex `X_i` joined to `apex` by a π edge of pair `pi`.
fn apex_partner(pi: u8, apex: usize, x_labels: &[usize; 3]) -> usize {
    let [e1, e2] = PAIR_EDGES[pi as usize];
    let edge = if EDGE_VERTICES[e1].contains(&apex) { e1 } else { e2 };
    let [a, b] = EDGE_VERTICES[edge];
    let other = if a == apex { b } else { a };
    x_labels
        .iter()
        .position(|&x| x == other)
        .expect("apex edge ends on the common face")
}
