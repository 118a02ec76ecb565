use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::exact::{clear_denominators, lp_max_min_slack, rank, LpError, LpResult, LpStatus, Rational};
use crate::normal::{chi_star, combine_integers, quad_corner_sum, NormalVector};
use crate::triangulation::Triangulation;

use super::{build_system, is_taut, AngleAssignment, TautStructure};

/// Integer dual witness that no angle structure exists: the combination
/// `Σ n_t d_t + Σ m_E e_E` of the canonical basis has quadrilateral
/// coordinates `q ≥ 0`, `q ≠ 0` and vanishing χ*.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub n: Vec<i64>,
    pub m: Vec<i64>,
    pub q: Vec<[i64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum AngleVerdict {
    AngleStructure { witness: AngleAssignment },
    NoAngleStructure { cert: Certificate },
    NoSemiAngle,
}

impl AngleVerdict {
    pub fn name(&self) -> &'static str {
        match self {
            AngleVerdict::AngleStructure { .. } => "AngleStructure",
            AngleVerdict::NoAngleStructure { .. } => "NoAngleStructure",
            AngleVerdict::NoSemiAngle => "NoSemiAngle",
        }
    }

    pub fn has_angle_structure(&self) -> bool {
        matches!(self, AngleVerdict::AngleStructure { .. })
    }
}

#[derive(Debug, Clone)]
pub struct AngleSolution {
    pub verdict: AngleVerdict,
    /// The raw max-min-slack LP, kept for inspection.
    pub lp: LpResult,
}

impl AngleSolution {
    /// The optimal smallest angle, when the LP was feasible.
    pub fn slack(&self) -> Option<&Rational> {
        self.lp.objective.as_ref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("angle LP reported unbounded")]
    Unbounded,
    #[error("certificate entry does not fit in 64 bits")]
    Overflow,
    #[error("dual certificate failed verification: {0}")]
    Unverified(#[from] CertificateDefect),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateDefect {
    #[error("expected {expected} entries in {field}, found {found}")]
    Shape { field: &'static str, expected: usize, found: usize },
    #[error("n and m are not coprime integers")]
    NotReduced,
    #[error("q does not match the combination at tet {tet}")]
    QMismatch { tet: usize },
    #[error("q is negative at tet {tet} pair {pair}")]
    Negative { tet: usize, pair: usize },
    #[error("q is zero")]
    ZeroQ,
    #[error("chi* of the combination is {value}, not 0")]
    NonzeroChi { value: String },
    #[error("taut structure is not taut on this triangulation")]
    InvalidTaut,
    #[error("q is supported on quad {pair} of tet {tet}, whose taut corner angles are all zero")]
    ZeroAngleQuad { tet: usize, pair: usize },
}

/// Decides whether `tri` carries an angle structure.
///
/// One exact LP maximizes the smallest angle over semi-angle structures.
/// A positive optimum yields a witness; an optimum of zero turns the dual
/// into a [`Certificate`], which is verified before it is returned.
pub fn solve_angle(tri: &Triangulation) -> Result<AngleSolution, SolveError> {
    let sys = build_system(tri);
    let lp = lp_max_min_slack(&sys.matrix, &sys.rhs)?;
    let verdict = match lp.status {
        LpStatus::Infeasible => AngleVerdict::NoSemiAngle,
        LpStatus::Unbounded => return Err(SolveError::Unbounded),
        LpStatus::Optimal => {
            let eps = lp.objective.clone().unwrap_or_else(Rational::zero);
            if eps.is_positive() {
                AngleVerdict::AngleStructure {
                    witness: AngleAssignment::from_flat(&lp.primal),
                }
            } else {
                let cert = certificate_from_dual(tri, &lp.dual)?;
                verify_certificate(tri, &cert, None)?;
                AngleVerdict::NoAngleStructure { cert }
            }
        }
    };
    Ok(AngleSolution { verdict, lp })
}

fn certificate_from_dual(tri: &Triangulation, dual: &[Rational]) -> Result<Certificate, SolveError> {
    let k = tri.size();
    // positive scaling only: the sign of the dual is what makes q ≥ 0
    let ints = clear_denominators(dual);
    let small: Vec<i64> = ints
        .iter()
        .map(|v| v.to_i64().ok_or(SolveError::Overflow))
        .collect::<Result<_, _>>()?;
    let (n, m) = small.split_at(k);
    let q = quad_coords(tri, n, m).ok_or(SolveError::Overflow)?;
    Ok(Certificate {
        n: n.to_vec(),
        m: m.to_vec(),
        q,
    })
}

fn quad_coords(tri: &Triangulation, n: &[i64], m: &[i64]) -> Option<Vec<[i64; 3]>> {
    let (_, quads) = combine_integers(tri, n, m);
    quads
        .iter()
        .map(|row| {
            let mut out = [0i64; 3];
            for (o, &x) in out.iter_mut().zip(row) {
                *o = i64::try_from(x).ok()?;
            }
            Some(out)
        })
        .collect()
}

/// Checks a certificate from scratch against the canonical basis of `tri`,
/// without running any LP.
///
/// With a taut structure, also checks that no quadrilateral in the support of
/// `q` has all four corner angles zero under it.
pub fn verify_certificate(
    tri: &Triangulation,
    cert: &Certificate,
    taut: Option<&TautStructure>,
) -> Result<(), CertificateDefect> {
    let k = tri.size();
    let e = tri.edge_classes().len();
    for (field, expected, found) in [("n", k, cert.n.len()), ("m", e, cert.m.len()), ("q", k, cert.q.len())] {
        if expected != found {
            return Err(CertificateDefect::Shape { field, expected, found });
        }
    }
    let (tris, quads) = combine_integers(tri, &cert.n, &cert.m);
    for (t, (row, stated)) in quads.iter().zip(&cert.q).enumerate() {
        if row.iter().zip(stated).any(|(&x, &y)| x != y as i128) {
            return Err(CertificateDefect::QMismatch { tet: t });
        }
    }
    for (t, row) in cert.q.iter().enumerate() {
        if let Some(p) = row.iter().position(|&x| x < 0) {
            return Err(CertificateDefect::Negative { tet: t, pair: p });
        }
    }
    if cert.q.iter().flatten().all(|&x| x == 0) {
        return Err(CertificateDefect::ZeroQ);
    }
    let total: i128 = cert.n.iter().map(|&x| x as i128).sum::<i128>()
        + 2 * cert.m.iter().map(|&x| x as i128).sum::<i128>();
    if total != 0 {
        return Err(CertificateDefect::NonzeroChi {
            value: (-total).to_string(),
        });
    }
    // the sum rule above is the closed form; evaluate χ* itself as well
    let v = NormalVector {
        tri: tris.iter().map(|r| r.map(|x| Rational::from(BigInt::from(x)))).collect(),
        quad: quads.iter().map(|r| r.map(|x| Rational::from(BigInt::from(x)))).collect(),
    };
    let chi = chi_star(tri, &v);
    if !chi.is_zero() {
        return Err(CertificateDefect::NonzeroChi { value: chi.to_string() });
    }
    let gcd = cert
        .n
        .iter()
        .chain(&cert.m)
        .fold(BigInt::from(0), |acc, &x| num_integer::Integer::gcd(&acc, &BigInt::from(x)));
    if gcd != BigInt::from(1) {
        return Err(CertificateDefect::NotReduced);
    }
    if let Some(taut) = taut {
        if !is_taut(tri, taut) {
            return Err(CertificateDefect::InvalidTaut);
        }
        let angles = taut.to_assignment();
        for (t, row) in cert.q.iter().enumerate() {
            for (p, &x) in row.iter().enumerate() {
                if x != 0 && quad_corner_sum(&angles, t, p).is_zero() {
                    return Err(CertificateDefect::ZeroAngleQuad { tet: t, pair: p });
                }
            }
        }
    }
    Ok(())
}

/// Dimension of the affine space of solutions to the angle equations,
/// `3k - rank`.
pub fn angle_space_dimension(tri: &Triangulation) -> usize {
    let sys = build_system(tri);
    3 * tri.size() - rank(&sys.matrix)
}
