//! Exact rational linear programming by the two-phase primal simplex method
//! with Bland's rule.
//!
//! All variables are implicitly non-negative. Bland's pivoting rule never
//! cycles, so termination is guaranteed; there is no floating-point fallback
//! because strict feasibility must be certified, not approximated.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintKind {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub kind: ConstraintKind,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, kind: ConstraintKind, rhs: BigRational) -> Self {
        Constraint { coeffs, kind, rhs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        objective: BigRational,
        point: Vec<BigRational>,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    // rows[i] holds the constraint coefficients followed by the rhs
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    num_cols: usize, // structural + slack + artificial
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v = &*v / &inv;
        }
        for r in 0..self.rows.len() {
            if r == row || self.rows[r][col].is_zero() {
                continue;
            }
            let factor = self.rows[r][col].clone();
            for c in 0..=self.num_cols {
                let delta = &factor * &self.rows[row][c];
                self.rows[r][c] = &self.rows[r][c] - &delta;
            }
        }
        self.basis[row] = col;
    }

    /// Maximizes `cost . x` over the current basis. `allowed` columns may
    /// enter. Returns false on unboundedness.
    fn optimize(&mut self, cost: &mut Vec<BigRational>, allowed: &[bool]) -> bool {
        loop {
            // reduced costs are maintained directly in `cost`
            let entering = (0..self.num_cols)
                .find(|&c| allowed[c] && cost[c].is_positive());
            let Some(col) = entering else {
                return true;
            };
            // ratio test, Bland tie-break on the basis variable index
            let mut leaving: Option<(usize, BigRational)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[r][self.num_cols] / a;
                let better = match &leaving {
                    None => true,
                    Some((best_row, best)) => {
                        ratio < *best || (ratio == *best && self.basis[r] < self.basis[*best_row])
                    }
                };
                if better {
                    leaving = Some((r, ratio));
                }
            }
            let Some((row, _)) = leaving else {
                return false;
            };
            self.pivot(row, col);
            // eliminate the entering column from the cost row
            let factor = cost[col].clone();
            if !factor.is_zero() {
                for c in 0..=self.num_cols {
                    let delta = &factor * &self.rows[row][c];
                    cost[c] = &cost[c] - &delta;
                }
            }
        }
    }

    fn extract_point(&self, num_structural: usize) -> Vec<BigRational> {
        let mut point = vec![BigRational::zero(); num_structural];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < num_structural {
                point[b] = self.rows[r][self.num_cols].clone();
            }
        }
        point
    }
}

/// Maximizes `objective . x` subject to the constraints, with `x >= 0`.
pub fn maximize(objective: &[BigRational], constraints: &[Constraint]) -> LpOutcome {
    let n = objective.len();
    let m = constraints.len();
    // columns: structural, one slack/surplus per inequality, artificials
    let num_slack = constraints
        .iter()
        .filter(|c| c.kind != ConstraintKind::Eq)
        .count();
    let mut rows = Vec::with_capacity(m);
    let mut basis = vec![usize::MAX; m];
    let mut slack_idx = 0usize;
    let total_before_artificial = n + num_slack;
    let mut artificial_rows = Vec::new();
    for (i, cons) in constraints.iter().enumerate() {
        assert_eq!(cons.coeffs.len(), n, "constraint arity mismatch");
        let mut row = vec![BigRational::zero(); total_before_artificial + 1];
        row[..n].clone_from_slice(&cons.coeffs);
        let mut rhs = cons.rhs.clone();
        let mut slack_sign = BigRational::zero();
        if cons.kind != ConstraintKind::Eq {
            slack_sign = if cons.kind == ConstraintKind::Le {
                BigRational::one()
            } else {
                -BigRational::one()
            };
        }
        // normalize to a non-negative right-hand side
        let negate = rhs.is_negative();
        if negate {
            for v in row.iter_mut().take(n) {
                *v = -&*v;
            }
            rhs = -rhs;
            slack_sign = -slack_sign;
        }
        if cons.kind != ConstraintKind::Eq {
            row[n + slack_idx] = slack_sign.clone();
        }
        *row.last_mut().unwrap() = rhs;
        // a +1 slack can serve as the initial basic variable
        if cons.kind != ConstraintKind::Eq && slack_sign.is_one() {
            basis[i] = n + slack_idx;
        } else {
            artificial_rows.push(i);
        }
        if cons.kind != ConstraintKind::Eq {
            slack_idx += 1;
        }
        rows.push(row);
    }
    let num_cols = total_before_artificial + artificial_rows.len();
    for row in rows.iter_mut() {
        let rhs = row.pop().unwrap();
        row.resize(num_cols, BigRational::zero());
        row.push(rhs);
    }
    for (k, &r) in artificial_rows.iter().enumerate() {
        rows[r][total_before_artificial + k] = BigRational::one();
        basis[r] = total_before_artificial + k;
    }

    let mut tab = Tableau {
        rows,
        basis,
        num_cols,
    };

    // Phase 1: minimize the sum of artificials, i.e. maximize its negative.
    if !artificial_rows.is_empty() {
        let mut cost = vec![BigRational::zero(); num_cols + 1];
        for c in total_before_artificial..num_cols {
            cost[c] = -BigRational::one();
        }
        // express the cost in terms of the non-basic variables
        for (r, &b) in tab.basis.iter().enumerate() {
            if b >= total_before_artificial {
                for c in 0..=num_cols {
                    let delta = &tab.rows[r][c] * &-BigRational::one();
                    cost[c] = &cost[c] - &delta;
                }
            }
        }
        let allowed = vec![true; num_cols];
        let bounded = tab.optimize(&mut cost, &allowed);
        assert!(bounded, "phase 1 objective is bounded by construction");
        let objective_value = -cost[num_cols].clone();
        if !objective_value.is_zero() {
            return LpOutcome::Infeasible;
        }
        // drive any artificial still in the basis out of it
        for r in 0..tab.rows.len() {
            if tab.basis[r] >= total_before_artificial {
                if let Some(col) =
                    (0..total_before_artificial).find(|&c| !tab.rows[r][c].is_zero())
                {
                    tab.pivot(r, col);
                }
                // an all-zero row is a redundant constraint; leave it
            }
        }
    }

    // Phase 2: maximize the real objective over non-artificial columns.
    let mut cost = vec![BigRational::zero(); num_cols + 1];
    cost[..n].clone_from_slice(objective);
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < num_cols && !cost[b].is_zero() {
            let factor = cost[b].clone();
            for c in 0..=num_cols {
                let delta = &factor * &tab.rows[r][c];
                cost[c] = &cost[c] - &delta;
            }
        }
    }
    let mut allowed = vec![true; num_cols];
    for a in allowed.iter_mut().skip(total_before_artificial) {
        *a = false;
    }
    if !tab.optimize(&mut cost, &allowed) {
        return LpOutcome::Unbounded;
    }
    LpOutcome::Optimal {
        objective: -cost[num_cols].clone(),
        point: tab.extract_point(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn qr(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn simple_maximum() {
        // max x + y st x + 2y <= 4, 3x + y <= 6 -> (8/5, 6/5), value 14/5
        let out = maximize(
            &[q(1), q(1)],
            &[
                Constraint::new(vec![q(1), q(2)], ConstraintKind::Le, q(4)),
                Constraint::new(vec![q(3), q(1)], ConstraintKind::Le, q(6)),
            ],
        );
        assert_eq!(
            out,
            LpOutcome::Optimal {
                objective: qr(14, 5),
                point: vec![qr(8, 5), qr(6, 5)],
            }
        );
    }

    #[test]
    fn infeasible_system() {
        // x <= 1, x >= 2
        let out = maximize(
            &[q(0)],
            &[
                Constraint::new(vec![q(1)], ConstraintKind::Le, q(1)),
                Constraint::new(vec![q(1)], ConstraintKind::Ge, q(2)),
            ],
        );
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_direction() {
        let out = maximize(
            &[q(1)],
            &[Constraint::new(vec![q(-1)], ConstraintKind::Le, q(1))],
        );
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn equality_and_degenerate_rows() {
        // max y st x + y = 1, x - y <= 0, y <= 3/4 -> x = 1/4? no:
        // y <= 3/4 binds with x + y = 1 -> x = 1/4, y = 3/4
        let out = maximize(
            &[q(0), q(1)],
            &[
                Constraint::new(vec![q(1), q(1)], ConstraintKind::Eq, q(1)),
                Constraint::new(vec![q(1), q(-1)], ConstraintKind::Le, q(0)),
                Constraint::new(vec![q(0), q(1)], ConstraintKind::Le, qr(3, 4)),
            ],
        );
        assert_eq!(
            out,
            LpOutcome::Optimal {
                objective: qr(3, 4),
                point: vec![qr(1, 4), qr(3, 4)],
            }
        );
    }

    #[test]
    fn negative_rhs_handled() {
        // max x st -x <= -2, x <= 5 -> 5
        let out = maximize(
            &[q(1)],
            &[
                Constraint::new(vec![q(-1)], ConstraintKind::Le, q(-2)),
                Constraint::new(vec![q(1)], ConstraintKind::Le, q(5)),
            ],
        );
        match out {
            LpOutcome::Optimal { objective, point } => {
                assert_eq!(objective, q(5));
                assert_eq!(point, vec![q(5)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn triangle_feasibility() {
        // strict triangle margins: ascending l with l_3 short, maximize eps
        let cons = vec![
            Constraint::new(vec![q(1), q(-1), q(0), q(0)], ConstraintKind::Le, q(0)),
            Constraint::new(vec![q(0), q(1), q(-1), q(0)], ConstraintKind::Le, q(0)),
            Constraint::new(vec![q(1), q(1), q(1), q(0)], ConstraintKind::Eq, q(1)),
            // l_3 - l_1 - l_2 + eps <= 0
            Constraint::new(vec![q(-1), q(-1), q(1), q(1)], ConstraintKind::Le, q(0)),
            Constraint::new(vec![q(-1), q(0), q(0), q(1)], ConstraintKind::Le, q(0)),
        ];
        match maximize(&[q(0), q(0), q(0), q(1)], &cons) {
            LpOutcome::Optimal { objective, .. } => assert!(objective.is_positive()),
            other => panic!("unexpected {other:?}"),
        }
    }
}
