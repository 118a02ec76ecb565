//! Layered triangulations of once-punctured torus bundles.
//!
//! The fibre is the torus `R²/Z²` punctured at the lattice points, triangulated
//! by a lattice basis `(a, b)` with edges `a`, `b`, `a + b`. Each layer is a
//! tetrahedron that flips one edge of the current triangulation: its bottom
//! faces are the two triangles on the old edge, its top faces the two triangles
//! on the new one. `R` flips `b` and moves to the basis `(a, a + b)`; `L` flips
//! `a` and moves to `(a + b, b)`. A cancelling pair flips an edge and straight
//! back, leaving the basis alone. The top is glued to the bottom by the inverse of the
//! accumulated basis change.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::angle::{is_taut, TautStructure};
use crate::fixtures::from_joins;
use crate::triangulation::{EdgeClass, Perm4, Triangulation, TriangulationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    R,
    L,
}

impl Letter {
    pub fn matrix(self) -> Mat2 {
        match self {
            Letter::R => [[1, 1], [0, 1]],
            Letter::L => [[1, 0], [1, 1]],
        }
    }
}

pub type Mat2 = [[i64; 2]; 2];

/// Letters over `{R, L}` plus positions where a cancelling pair is layered.
/// Position `i` means "before letter `i`"; `letters.len()` means "at the end".
/// A cancelling pair flips one fibre edge and immediately flips it back,
/// choosing an edge that neither neighbouring layer touches.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonodromyWord {
    pub letters: Vec<Letter>,
    pub insertions: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BundleError {
    #[error("monodromy word is empty")]
    EmptyWord,
    #[error("unexpected character {0:?} in monodromy word (use R and L)")]
    BadLetter(char),
    #[error("insertion position {position} is past the end of a word of length {len}")]
    BadInsertion { position: usize, len: usize },
    #[error("monodromy matrix entries are too large")]
    Overflow,
    #[error("layered triangulation failed validation: {0}")]
    Invalid(#[from] TriangulationError),
}

impl MonodromyWord {
    pub fn new(letters: Vec<Letter>, mut insertions: Vec<usize>) -> Result<Self, BundleError> {
        if letters.is_empty() {
            return Err(BundleError::EmptyWord);
        }
        if let Some(&position) = insertions.iter().find(|&&i| i > letters.len()) {
            return Err(BundleError::BadInsertion {
                position,
                len: letters.len(),
            });
        }
        insertions.sort_unstable();
        Ok(MonodromyWord { letters, insertions })
    }

    pub fn with_insertions(&self, insertions: Vec<usize>) -> Result<Self, BundleError> {
        MonodromyWord::new(self.letters.clone(), insertions)
    }

    pub fn has_both_letters(&self) -> bool {
        self.letters.contains(&Letter::R) && self.letters.contains(&Letter::L)
    }

    /// Number of tetrahedra in the layered triangulation.
    pub fn size(&self) -> usize {
        self.letters.len() + 2 * self.insertions.len()
    }

    /// Concatenation; insertions of `other` are shifted past `self`.
    pub fn concat(&self, other: &MonodromyWord) -> MonodromyWord {
        let n = self.letters.len();
        let mut letters = self.letters.clone();
        letters.extend(&other.letters);
        let mut insertions = self.insertions.clone();
        insertions.extend(other.insertions.iter().map(|i| i + n));
        insertions.sort_unstable();
        MonodromyWord { letters, insertions }
    }
}

impl FromStr for MonodromyWord {
    type Err = BundleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .chars()
            .map(|c| match c {
                'R' => Ok(Letter::R),
                'L' => Ok(Letter::L),
                other => Err(BundleError::BadLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        MonodromyWord::new(letters, Vec::new())
    }
}

impl fmt::Display for MonodromyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l:?}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Monodromy {
    pub matrix: Mat2,
    pub trace: i64,
    pub pseudo_anosov: bool,
}

fn mul(x: &Mat2, y: &Mat2) -> Option<Mat2> {
    let mut out = [[0i64; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = x[i][0]
                .checked_mul(y[0][j])?
                .checked_add(x[i][1].checked_mul(y[1][j])?)?;
        }
    }
    Some(out)
}

pub fn mat_mul(x: &Mat2, y: &Mat2) -> Mat2 {
    mul(x, y).expect("2x2 product overflows i64")
}

/// Product of the letter matrices in word order. Insertions contribute the
/// identity.
pub fn monodromy_matrix(w: &MonodromyWord) -> Result<Monodromy, BundleError> {
    let mut m: Mat2 = [[1, 0], [0, 1]];
    for l in &w.letters {
        m = mul(&m, &l.matrix()).ok_or(BundleError::Overflow)?;
    }
    let trace = m[0][0].checked_add(m[1][1]).ok_or(BundleError::Overflow)?;
    Ok(Monodromy {
        matrix: m,
        trace,
        pseudo_anosov: trace.unsigned_abs() > 2,
    })
}

#[derive(Debug, Clone)]
pub struct LayeredBundle {
    pub triangulation: Triangulation,
    /// π on each tetrahedron's flipped diagonals.
    pub taut: TautStructure,
}

type Point = [i64; 2];

fn add(p: Point, q: Point) -> Point {
    [p[0] + q[0], p[1] + q[1]]
}

fn sub(p: Point, q: Point) -> Point {
    [p[0] - q[0], p[1] - q[1]]
}

fn scale(c: i64, p: Point) -> Point {
    [c * p[0], c * p[1]]
}

/// Labels 0, 1 are the old diagonal, 2, 3 the new one, each pair sorted.
fn layer(bottom: [Point; 2], top: [Point; 2]) -> [Point; 4] {
    let mut b = bottom;
    let mut t = top;
    b.sort();
    t.sort();
    [b[0], b[1], t[0], t[1]]
}

/// An edge of the fibre triangulation named relative to the current basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FibreEdge {
    A,
    B,
    Sum,
}

impl Letter {
    fn flips(self) -> FibreEdge {
        match self {
            Letter::R => FibreEdge::B,
            Letter::L => FibreEdge::A,
        }
    }
}

enum Step {
    Flip(Letter),
    /// First or second half of a cancelling pair on the given edge.
    Cancel(FibreEdge, bool),
}

/// Picks the edge each cancelling pair flips in a run of `count` pairs
/// between letters `before` and `after`. The edge must differ from the one
/// the previous layer created, so that only the pair's own middle edge has
/// degree 2, and the last pair must leave alone the edge `after` flips.
fn cancel_edges(count: usize, after: Letter) -> Vec<FibreEdge> {
    let mut newest = FibreEdge::Sum;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let x = [FibreEdge::A, FibreEdge::B, FibreEdge::Sum]
            .into_iter()
            .find(|&x| x != newest && (i + 1 < count || x != after.flips()))
            .expect("three edges leave a free choice");
        out.push(x);
        newest = x;
    }
    out
}

fn layout_steps(w: &MonodromyWord) -> Vec<Step> {
    let n = w.letters.len();
    let mut counts = vec![0usize; n + 1];
    for &i in &w.insertions {
        counts[i] += 1;
    }
    // the runs at the end and at the start meet across the gluing
    let wrap = cancel_edges(counts[n] + counts[0], w.letters[0]);
    let (at_end, at_start) = wrap.split_at(counts[n]);
    let mut steps = Vec::with_capacity(w.size());
    let push_run = |steps: &mut Vec<Step>, run: &[FibreEdge]| {
        for &x in run {
            steps.push(Step::Cancel(x, true));
            steps.push(Step::Cancel(x, false));
        }
    };
    push_run(&mut steps, at_start);
    for (i, (&count, &letter)) in counts.iter().zip(&w.letters).enumerate() {
        if i > 0 {
            push_run(&mut steps, &cancel_edges(count, letter));
        }
        steps.push(Step::Flip(letter));
    }
    push_run(&mut steps, at_end);
    steps
}

/// Builds the layered triangulation of `w` and its fibration taut structure.
pub fn build_layered(w: &MonodromyWord) -> Result<LayeredBundle, BundleError> {
    if w.letters.is_empty() {
        return Err(BundleError::EmptyWord);
    }
    // entries of every later point are bounded by twice the final basis
    let mono = monodromy_matrix(w)?;
    if mono.matrix.iter().flatten().any(|v| v.unsigned_abs() > (i64::MAX as u64) / 8) {
        return Err(BundleError::Overflow);
    }

    let (mut a, mut b): (Point, Point) = ([1, 0], [0, 1]);
    let o = [0, 0];
    let mut tets: Vec<[Point; 4]> = Vec::with_capacity(w.size());
    for step in layout_steps(w) {
        // (old diagonal, new diagonal) of the quadrilateral being flipped
        let flip_a = ([b, add(a, b)], [o, add(a, scale(2, b))]);
        let flip_b = ([a, add(a, b)], [o, add(scale(2, a), b)]);
        let flip_sum = ([o, add(a, b)], [a, b]);
        match step {
            Step::Flip(Letter::R) => {
                tets.push(layer(flip_b.0, flip_b.1));
                b = add(a, b);
            }
            Step::Flip(Letter::L) => {
                tets.push(layer(flip_a.0, flip_a.1));
                a = add(a, b);
            }
            Step::Cancel(x, first) => {
                let (old, new) = match x {
                    FibreEdge::A => flip_a,
                    FibreEdge::B => flip_b,
                    FibreEdge::Sum => flip_sum,
                };
                tets.push(if first { layer(old, new) } else { layer(new, old) });
            }
        }
    }

    // monodromy inverse takes the final basis back to the standard one
    let [[p, q], [r, s]] = mono.matrix;
    let inverse = |x: Point| -> Point { [s * x[0] - q * x[1], -r * x[0] + p * x[1]] };

    let k = tets.len();
    let mut joins = Vec::with_capacity(2 * k);
    for i in 0..k {
        let upper = if i + 1 < k {
            tets[i]
        } else {
            tets[i].map(inverse)
        };
        let next = &tets[(i + 1) % k];
        for top_face in [0, 1] {
            let images = match_face(&upper, top_face, next);
            joins.push((i, top_face, (i + 1) % k, images));
        }
    }
    let table = from_joins(k, &joins);
    let triangulation = Triangulation::new(table)?;
    let taut = TautStructure { pi_pair: vec![0; k] };
    debug_assert!(is_taut(&triangulation, &taut));
    Ok(LayeredBundle { triangulation, taut })
}

fn face_points(tet: &[Point; 4], face: usize) -> Vec<Point> {
    (0..4).filter(|&v| v != face).map(|v| tet[v]).collect()
}

fn normal_form(points: &[Point]) -> (Point, Vec<Point>) {
    let min = *points.iter().min().expect("face has points");
    let mut shifted: Vec<Point> = points.iter().map(|&p| sub(p, min)).collect();
    shifted.sort();
    (min, shifted)
}

/// Finds the bottom face of `next` that is a lattice translate of `top_face`
/// of `upper` and returns the vertex map onto it.
fn match_face(upper: &[Point; 4], top_face: usize, next: &[Point; 4]) -> [u8; 4] {
    let (min_u, shape_u) = normal_form(&face_points(upper, top_face));
    for bottom_face in [2, 3] {
        let (min_n, shape_n) = normal_form(&face_points(next, bottom_face));
        if shape_n != shape_u {
            continue;
        }
        let shift = sub(min_n, min_u);
        let mut images = [0u8; 4];
        images[top_face] = bottom_face as u8;
        for v in (0..4).filter(|&v| v != top_face) {
            let target = add(upper[v], shift);
            let u = (0..4)
                .find(|&u| u != bottom_face && next[u] == target)
                .expect("translated vertex lies on the matched face");
            images[v] = u as u8;
        }
        debug_assert!(Perm4::new(images).is_some());
        return images;
    }
    unreachable!("consecutive layers share both triangles of the fibre")
}

/// Edge classes of degree 2.
pub fn degree2_report(tri: &Triangulation) -> Vec<EdgeClass> {
    tri.edge_classes()
        .iter()
        .filter(|c| c.degree == 2)
        .cloned()
        .collect()
}

/// All words over `{R, L}` of the given length that use both letters, in
/// lexicographic order with `R < L`.
pub fn words_with_both_letters(len: usize) -> Vec<MonodromyWord> {
    (0..1usize << len)
        .map(|bits| {
            let letters = (0..len)
                .map(|i| if bits >> (len - 1 - i) & 1 == 0 { Letter::R } else { Letter::L })
                .collect();
            MonodromyWord {
                letters,
                insertions: Vec::new(),
            }
        })
        .filter(MonodromyWord::has_both_letters)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::triangulation::is_isomorphic;

    fn word(s: &str) -> MonodromyWord {
        s.parse().unwrap()
    }

    #[test]
    fn matrices() {
        let rl = monodromy_matrix(&word("RL")).unwrap();
        assert_eq!(rl.matrix, [[2, 1], [1, 1]]);
        assert_eq!(rl.trace, 3);
        assert!(rl.pseudo_anosov);
        let rr = monodromy_matrix(&word("RR")).unwrap();
        assert_eq!(rr.matrix, [[1, 2], [0, 1]]);
        assert!(!rr.pseudo_anosov);
        let ins = word("RL").with_insertions(vec![1]).unwrap();
        assert_eq!(monodromy_matrix(&ins).unwrap(), rl);
    }

    #[test]
    fn parse_errors() {
        assert_eq!("".parse::<MonodromyWord>(), Err(BundleError::EmptyWord));
        assert_eq!("RX".parse::<MonodromyWord>(), Err(BundleError::BadLetter('X')));
        assert!(matches!(
            word("RL").with_insertions(vec![3]),
            Err(BundleError::BadInsertion { position: 3, len: 2 })
        ));
    }

    #[test]
    fn rl_is_the_figure_eight() {
        let b = build_layered(&word("RL")).unwrap();
        assert_eq!(b.triangulation.degrees(), vec![6, 6]);
        assert!(is_isomorphic(&b.triangulation, &fixtures::figure_eight()));
        assert!(is_taut(&b.triangulation, &b.taut));
        assert!(degree2_report(&b.triangulation).is_empty());
    }

    #[test]
    fn insertion_makes_one_degree_two_edge() {
        for pos in 0..=2 {
            let w = word("RL").with_insertions(vec![pos]).unwrap();
            let b = build_layered(&w).unwrap();
            assert_eq!(b.triangulation.size(), 4);
            assert_eq!(degree2_report(&b.triangulation).len(), 1, "position {pos}");
            assert!(is_taut(&b.triangulation, &b.taut));
        }
    }

    #[test]
    fn word_listing() {
        assert_eq!(words_with_both_letters(2).len(), 2);
        assert_eq!(words_with_both_letters(7).len(), 126);
        assert_eq!(words_with_both_letters(3)[0].to_string(), "RRL");
    }
}
