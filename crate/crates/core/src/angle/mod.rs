//! Taut, semi-angle and angle structures, decided exactly.
//!
//! Angles are in units of π. An assignment gives one value per tetrahedron
//! and opposite edge pair; it is an angle structure when every tetrahedron
//! sums to 1, every edge class sums to 2 and all values are positive.

mod solve;
mod system;
mod taut;
mod transport;

use serde::{Deserialize, Serialize};

use crate::exact::Rational;

pub use solve::{
    angle_space_dimension, solve_angle, verify_certificate, AngleSolution, AngleVerdict, Certificate,
    CertificateDefect, SolveError,
};
pub use system::{build_system, is_semi_angle, AngleSystem, RowMeaning};
pub use taut::{enumerate_taut, enumerate_taut_exhaustive, is_taut};
pub use transport::{taut_transport_23, TransportError, Transported};

/// Dihedral angles in units of π, `values[t][p]` for tetrahedron `t` and
/// opposite pair `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AngleAssignment {
    pub values: Vec<[Rational; 3]>,
}

impl AngleAssignment {
    pub fn uniform(k: usize, value: Rational) -> Self {
        AngleAssignment {
            values: vec![std::array::from_fn(|_| value.clone()); k],
        }
    }

    pub fn from_flat(flat: &[Rational]) -> Self {
        assert_eq!(flat.len() % 3, 0);
        AngleAssignment {
            values: flat
                .chunks(3)
                .map(|c| [c[0].clone(), c[1].clone(), c[2].clone()])
                .collect(),
        }
    }

    pub fn to_flat(&self) -> Vec<Rational> {
        self.values.iter().flat_map(|r| r.iter().cloned()).collect()
    }

    pub fn min_value(&self) -> Option<Rational> {
        self.values.iter().flatten().min().cloned()
    }
}

/// A taut structure: for each tetrahedron, the opposite pair carrying angle π.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TautStructure {
    pub pi_pair: Vec<u8>,
}

impl TautStructure {
    pub fn to_assignment(&self) -> AngleAssignment {
        AngleAssignment {
            values: self
                .pi_pair
                .iter()
                .map(|&p| std::array::from_fn(|q| if q == p as usize { Rational::one() } else { Rational::zero() }))
                .collect(),
        }
    }
}
