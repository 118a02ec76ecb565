//! Dense two-phase primal simplex over exact rationals.
//!
//! Every pivot uses Bland's smallest-index rule, so the method terminates on
//! degenerate problems without any perturbation. Problems here are small
//! (a few dozen rows) and heavily degenerate, which is the regime this suits.

use serde::Serialize;

use super::{RatMatrix, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Outcome of an LP run.
///
/// `primal` and `dual` are empty unless the status is `Optimal`. `dual` has one
/// multiplier per equality row, exact and unscaled, so that `bᵀ·dual` equals
/// the objective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpResult {
    pub status: LpStatus,
    pub objective: Option<Rational>,
    pub primal: Vec<Rational>,
    pub dual: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("right-hand side has {rhs} entries but the matrix has {rows} rows")]
    RhsLength { rows: usize, rhs: usize },
    #[error("cost vector has {cost} entries but the matrix has {cols} columns")]
    CostLength { cols: usize, cost: usize },
}

impl LpResult {
    fn without_solution(status: LpStatus) -> Self {
        LpResult {
            status,
            objective: None,
            primal: Vec::new(),
            dual: Vec::new(),
        }
    }
}

struct Tableau {
    structural: usize,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.structural + self.rows.len()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (v, p) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            if !pivot_rhs.is_zero() {
                self.rhs[i] -= &f * &pivot_rhs;
            }
        }
        self.basis[r] = c;
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis
            .iter()
            .zip(&self.rhs)
            .map(|(&b, v)| &cost[b] * v)
            .sum()
    }

    /// Runs primal simplex iterations for `max costᵀz`, letting only columns
    /// below `enterable` enter the basis. Returns `false` if unbounded.
    fn optimize(&mut self, cost: &[Rational], enterable: usize) -> bool {
        loop {
            let entering = (0..enterable).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut d = cost[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[b].is_zero() {
                        d -= &cost[b] * &row[j];
                    }
                }
                d.is_positive()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &row[c];
                let better = match &leaving {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            match leaving {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Solves `max costᵀz` subject to `a·z = b`, `z ≥ 0`.
pub fn maximize(a: &RatMatrix, b: &[Rational], cost: &[Rational]) -> Result<LpResult, LpError> {
    if b.len() != a.rows() {
        return Err(LpError::RhsLength {
            rows: a.rows(),
            rhs: b.len(),
        });
    }
    if cost.len() != a.cols() {
        return Err(LpError::CostLength {
            cols: a.cols(),
            cost: cost.len(),
        });
    }
    let m = a.rows();
    let n = a.cols();

    // Flip rows so the starting artificial basis is feasible.
    let signs: Vec<bool> = b.iter().map(Rational::is_negative).collect();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Rational> = a.row(i).to_vec();
        let mut bi = b[i].clone();
        if signs[i] {
            row.iter_mut().for_each(|v| *v = -&*v);
            bi = -bi;
        }
        row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        rows.push(row);
        rhs.push(bi);
    }
    let mut tab = Tableau {
        structural: n,
        rows,
        rhs,
        basis: (n..n + m).collect(),
    };

    let phase1: Vec<Rational> = (0..tab.width())
        .map(|j| if j < n { Rational::zero() } else { -Rational::one() })
        .collect();
    tab.optimize(&phase1, tab.width());
    if !tab.objective(&phase1).is_zero() {
        return Ok(LpResult::without_solution(LpStatus::Infeasible));
    }

    // Drive artificials out of the basis where a structural column allows it.
    // Rows where none does are redundant and keep their artificial at zero.
    for r in 0..m {
        if tab.basis[r] < n {
            continue;
        }
        if let Some(c) = (0..n).find(|&j| !tab.rows[r][j].is_zero()) {
            tab.pivot(r, c);
        }
    }

    let phase2: Vec<Rational> = cost
        .iter()
        .cloned()
        .chain((0..m).map(|_| Rational::zero()))
        .collect();
    if !tab.optimize(&phase2, n) {
        return Ok(LpResult::without_solution(LpStatus::Unbounded));
    }

    let mut primal = vec![Rational::zero(); n];
    for (&bv, v) in tab.basis.iter().zip(&tab.rhs) {
        if bv < n {
            primal[bv] = v.clone();
        }
    }
    // The artificial block of the tableau holds B⁻¹, so y = c_Bᵀ B⁻¹.
    let dual: Vec<Rational> = (0..m)
        .map(|i| {
            let y: Rational = tab
                .basis
                .iter()
                .enumerate()
                .filter(|(_, &bv)| !phase2[bv].is_zero())
                .map(|(r, &bv)| &phase2[bv] * &tab.rows[r][n + i])
                .sum();
            if signs[i] {
                -y
            } else {
                y
            }
        })
        .collect();
    let objective = tab.objective(&phase2);
    Ok(LpResult {
        status: LpStatus::Optimal,
        objective: Some(objective),
        primal,
        dual,
    })
}

/// Maximizes the smallest coordinate over `{x : a·x = b}`, with the smallest
/// coordinate required to be non-negative.
///
/// Internally `x = s + ε·1` with `s ≥ 0, ε ≥ 0`, and `ε` is maximized. The
/// result reports `x` as the primal, `ε*` as the objective and one dual
/// multiplier per row of `a`. `Infeasible` means `a·x = b` has no non-negative
/// solution.
pub fn lp_max_min_slack(a: &RatMatrix, b: &[Rational]) -> Result<LpResult, LpError> {
    if b.len() != a.rows() {
        return Err(LpError::RhsLength {
            rows: a.rows(),
            rhs: b.len(),
        });
    }
    let n = a.cols();
    let mut rows = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut row = a.row(i).to_vec();
        row.push(a.row(i).iter().sum());
        rows.push(row);
    }
    let extended = RatMatrix::from_rows(rows);
    let mut cost = vec![Rational::zero(); n + 1];
    cost[n] = Rational::one();
    let mut res = maximize(&extended, b, &cost)?;
    if res.status == LpStatus::Optimal {
        let eps = res.primal.pop().expect("slack column");
        for x in res.primal.iter_mut() {
            *x += &eps;
        }
        debug_assert_eq!(res.objective.as_ref(), Some(&eps));
    }
    Ok(res)
}
