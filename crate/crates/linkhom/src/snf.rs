//! Dense integer matrices and Smith normal form over arbitrary-precision
//! integers.
//!
//! Pivoting always selects a smallest-magnitude nonzero entry, which keeps
//! coefficient growth tame on the small sparse boundary matrices that occur
//! here. No modular or probabilistic shortcuts: exactness over speed.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + a * b;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Nonzero entries as `(row, col, value)` triplets, row-major.
    pub fn triplets(&self) -> Vec<(usize, usize, BigInt)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    out.push((r, c, v.clone()));
                }
            }
        }
        out
    }
}

/// Diagonal of the Smith normal form: `rank` positive invariant factors with
/// `d_1 | d_2 | ... | d_rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    /// Invariant factors exceeding 1, i.e. the torsion part of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| **d > BigInt::from(1))
            .cloned()
            .collect()
    }
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut k = 0usize;
    while k < rows.min(cols) {
        // smallest-magnitude nonzero pivot in the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let v = a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let better = match pivot {
                    None => true,
                    Some((pi, pj)) => v.abs() < a.get(pi, pj).abs(),
                };
                if better {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut a, k, pi);
        swap_cols(&mut a, k, pj);

        loop {
            let mut clean = true;
            for i in k + 1..rows {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let q = div_round(a.get(i, k), a.get(k, k));
                row_op(&mut a, i, k, &q);
                if !a.get(i, k).is_zero() {
                    // remainder became the new, strictly smaller pivot
                    swap_rows(&mut a, k, i);
                    clean = false;
                }
            }
            for j in k + 1..cols {
                if a.get(k, j).is_zero() {
                    continue;
                }
                let q = div_round(a.get(k, j), a.get(k, k));
                col_op(&mut a, j, k, &q);
                if !a.get(k, j).is_zero() {
                    swap_cols(&mut a, k, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(a.get(i, j) % a.get(k, k)).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    // folding the offending row into row k forces a smaller pivot
                    for j in 0..cols {
                        let v = a.get(k, j) + a.get(i, j);
                        a.set(k, j, v);
                    }
                }
                None => break,
            }
        }
        if a.get(k, k).is_negative() {
            for j in k..cols {
                let v = -a.get(k, j);
                a.set(k, j, v);
            }
        }
        k += 1;
    }
    let invariant_factors: Vec<BigInt> = (0..k).map(|i| a.get(i, i).clone()).collect();
    debug_assert!(invariant_factors
        .windows(2)
        .all(|w| (&w[1] % &w[0]).is_zero()));
    SmithForm {
        rank: k,
        invariant_factors,
    }
}

fn swap_rows(a: &mut IntMatrix, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for j in 0..a.cols {
        let x = a.get(r1, j).clone();
        let y = a.get(r2, j).clone();
        a.set(r1, j, y);
        a.set(r2, j, x);
    }
}

fn swap_cols(a: &mut IntMatrix, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for i in 0..a.rows {
        let x = a.get(i, c1).clone();
        let y = a.get(i, c2).clone();
        a.set(i, c1, y);
        a.set(i, c2, x);
    }
}

/// row_i -= q * row_k
fn row_op(a: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for j in 0..a.cols {
        let v = a.get(i, j) - q * a.get(k, j);
        a.set(i, j, v);
    }
}

/// col_j -= q * col_k
fn col_op(a: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for i in 0..a.rows {
        let v = a.get(i, j) - q * a.get(i, k);
        a.set(i, j, v);
    }
}

/// Quotient rounded to nearest, so the remainder has magnitude at most
/// half the divisor.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = num_integer::Integer::div_mod_floor(a, b);
    if &(r * &two).abs() > &b.abs() {
        q + BigInt::from(1)
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonalizes_known_matrix() {
        let m = IntMatrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 3);
        assert_eq!(
            snf.invariant_factors,
            vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]
        );
    }

    #[test]
    fn rank_and_torsion() {
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 0]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 1);
        assert_eq!(snf.torsion(), vec![BigInt::from(2)]);
        assert_eq!(rank(&IntMatrix::zero(3, 5)), 0);
    }

    #[test]
    fn divisibility_chain() {
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(
            snf.invariant_factors,
            vec![BigInt::from(1), BigInt::from(6)]
        );
    }

    #[test]
    fn multiply() {
        let a = IntMatrix::from_rows(vec![vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(
            a.mul(&b),
            IntMatrix::from_rows(vec![vec![2, 1], vec![4, 3]])
        );
    }
}
