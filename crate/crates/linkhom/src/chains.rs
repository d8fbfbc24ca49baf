//! Cell-level machinery: symbolic matrices encoding equivariant cells,
//! elementary collapse pairings, the chain complexes `E(m, j)` on strictly
//! decreasing integer sequences, relative summand assembly, and integral
//! homology via Smith normal form.
//!
//! A symbolic matrix over `{0, +, *}` with `d - 2` rows and `k` columns
//! records a product of discs and half-discs, one column per factor: a column
//! with `c` nonzero entries stands for a disc of dimension `c + 1`, halved
//! when it carries a `+`. Column dimensions increase weakly left to right
//! with no dimension skipped, which is what the row shape rules encode.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::Error;
use crate::snf::{smith_normal_form, IntMatrix, SmithForm};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Entry {
    Zero,
    Plus,
    Star,
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Entry::Zero => '0',
            Entry::Plus => '+',
            Entry::Star => '*',
        };
        write!(f, "{c}")
    }
}

/// Symbolic matrix with `rows = d - 2`, `cols = k`, encoding one equivariant
/// cell of the pair `(X^k_d, dX^k_d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Entry>,
}

impl SymbolicMatrix {
    /// Builds the matrix for a column-dimension profile: `counts[c]` columns
    /// of disc dimension `c + 1`, for `c = 0..=rows`. The first column of
    /// each intermediate dimension `2..=rows` is the half-disc carrying the
    /// `+`; top-dimension columns are never halved.
    pub fn from_profile(rows: usize, counts: &[usize]) -> Self {
        assert_eq!(counts.len(), rows + 1);
        // no skipped dimensions
        let mut seen_zero = false;
        for &c in &counts[1..] {
            if seen_zero {
                assert_eq!(c, 0, "skipped disc dimension");
            }
            seen_zero |= c == 0;
        }
        let cols: usize = counts.iter().sum();
        let mut m = SymbolicMatrix {
            rows,
            cols,
            entries: vec![Entry::Zero; rows * cols],
        };
        let mut col = 0usize;
        for (c, &count) in counts.iter().enumerate() {
            let dim = c + 1;
            for rep in 0..count {
                for r in 0..dim.saturating_sub(1) {
                    let halved = rep == 0 && dim >= 2 && dim <= rows && r == dim - 2;
                    m.set(r, col, if halved { Entry::Plus } else { Entry::Star });
                }
                col += 1;
            }
        }
        debug_assert!(m.in_s());
        m
    }

    fn set(&mut self, r: usize, c: usize, e: Entry) {
        self.entries[r * self.cols + c] = e;
    }

    pub fn get(&self, r: usize, c: usize) -> Entry {
        self.entries[r * self.cols + c]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn row_first_nonzero(&self, r: usize) -> Option<usize> {
        (0..self.cols).find(|&c| self.get(r, c) != Entry::Zero)
    }

    /// Shape predicate for the ambient set of symbolic matrices: each of the
    /// first `rows - 1` rows is zero or `0..0 + *..*`, the last row is
    /// `0..0 *..*`, and first-nonzero positions strictly increase while rows
    /// stay nonzero.
    pub fn in_s(&self) -> bool {
        for r in 0..self.rows {
            let first = self.row_first_nonzero(r);
            let last_row = r == self.rows - 1;
            if let Some(p) = first {
                for c in 0..self.cols {
                    let e = self.get(r, c);
                    let expected_head = if last_row { Entry::Star } else { Entry::Plus };
                    let ok = match c.cmp(&p) {
                        std::cmp::Ordering::Less => e == Entry::Zero,
                        std::cmp::Ordering::Equal => e == expected_head,
                        std::cmp::Ordering::Greater => e == Entry::Star,
                    };
                    if !ok {
                        return false;
                    }
                }
            }
            if r > 0 {
                match (self.row_first_nonzero(r - 1), first) {
                    (None, Some(_)) => return false,
                    (Some(prev), Some(cur)) if prev >= cur => return false,
                    _ => {}
                }
            }
        }
        true
    }

    /// Membership in the cell set: ambient shape, plus the last two rows are
    /// either both zero or of the paired form `0^a + *^b` over `0^{a+1} *^b`.
    pub fn in_s_c(&self) -> bool {
        if !self.in_s() {
            return false;
        }
        let r1 = self.rows - 2;
        let r2 = self.rows - 1;
        match (self.row_first_nonzero(r1), self.row_first_nonzero(r2)) {
            (None, None) => true,
            (Some(p1), None) => p1 == self.cols - 1,
            (Some(p1), Some(p2)) => p2 == p1 + 1,
            (None, Some(_)) => false,
        }
    }

    /// Membership in the collapsible layer: in the cell set, with row `i`
    /// (1-based) all zero or `0..0 +`.
    pub fn in_s_layer(&self, i: usize) -> bool {
        assert!((1..=self.rows).contains(&i));
        if !self.in_s_c() {
            return false;
        }
        match self.row_first_nonzero(i - 1) {
            None => true,
            Some(p) => p == self.cols - 1 && self.get(i - 1, self.cols - 1) == Entry::Plus,
        }
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| **e != Entry::Zero).count()
    }

    /// Dimension of the encoded cell: one per column plus one per nonzero
    /// entry.
    pub fn cell_dimension(&self) -> usize {
        self.cols + self.nonzero_count()
    }

    /// Number of columns consisting entirely of stars (top-dimension discs).
    pub fn full_star_columns(&self) -> usize {
        (0..self.cols)
            .filter(|&c| (0..self.rows).all(|r| self.get(r, c) == Entry::Star))
            .count()
    }

    /// Largest stabilizer-relevant column weight: the maximal number of
    /// nonzero entries in any column. The cell's stabilizer inside
    /// `SO(rows)` is `SO(rows - weight)`, recorded as metadata only.
    pub fn max_column_weight(&self) -> usize {
        (0..self.cols)
            .map(|c| (0..self.rows).filter(|&r| self.get(r, c) != Entry::Zero).count())
            .max()
            .unwrap_or(0)
    }

    pub fn render_rows(&self) -> Vec<String> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

impl fmt::Display for SymbolicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.render_rows().join(" / "))
    }
}

fn profiles(rows: usize, cols: usize) -> Vec<Vec<usize>> {
    // counts[0] is free; from index 1 on the counts form a positive run,
    // since a missing disc dimension rules out all higher ones
    let mut out = Vec::new();
    let mut counts = vec![0usize; rows + 1];
    fn rec(idx: usize, remaining: usize, counts: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if idx == counts.len() {
            if remaining == 0 {
                out.push(counts.clone());
            }
            return;
        }
        if idx >= 1 {
            if remaining == 0 {
                out.push(counts.clone());
                return;
            }
            for c in 1..=remaining {
                counts[idx] = c;
                rec(idx + 1, remaining - c, counts, out);
                counts[idx] = 0;
            }
        } else {
            for c in 0..=remaining {
                counts[idx] = c;
                rec(idx + 1, remaining - c, counts, out);
                counts[idx] = 0;
            }
        }
    }
    rec(0, cols, &mut counts, &mut out);
    out
}

/// All cells of the relative decomposition of `(X^k_d, dX^k_d)`:
/// the matrices with `d - 2` rows and `k` columns whose last two rows are of
/// the paired half-disc form or zero. Deterministic profile order.
pub fn enum_cells(d: i64, k: i64) -> Vec<SymbolicMatrix> {
    assert!(d >= 4, "need at least two rows");
    assert!(k >= 1);
    let rows = (d - 2) as usize;
    let cols = k as usize;
    profiles(rows, cols)
        .into_iter()
        .filter(|counts| {
            let next_to_top = counts[rows - 1];
            let top = counts[rows];
            next_to_top <= 1 && (top == 0 || next_to_top == 1)
        })
        .map(|counts| SymbolicMatrix::from_profile(rows, &counts))
        .inspect(|m| debug_assert!(m.in_s_c()))
        .collect()
}

/// The elementary collapse pairing on layer `i`: matrices in layer `i` but
/// not layer `i - 1` match up by toggling row `i` between all-zero and
/// `0..0 +`, changing the cell dimension by exactly one.
pub fn collapse_pairing(d: i64, k: i64, i: usize) -> Vec<(SymbolicMatrix, SymbolicMatrix)> {
    assert!((1..=(d - 3) as usize).contains(&i), "layer out of range");
    let cells = enum_cells(d, k);
    let in_layer = |m: &SymbolicMatrix| m.in_s_layer(i) && (i == 1 || !m.in_s_layer(i - 1));
    let mut pairs = Vec::new();
    for cell in cells.iter().filter(|m| in_layer(m)) {
        if cell.row_first_nonzero(i - 1).is_some() {
            continue; // the partner with `+` is emitted from the zero side
        }
        let mut partner = cell.clone();
        partner.set(i - 1, partner.cols - 1, Entry::Plus);
        debug_assert!(partner.in_s_c() && in_layer(&partner));
        debug_assert_eq!(partner.cell_dimension(), cell.cell_dimension() + 1);
        pairs.push((cell.clone(), partner));
    }
    pairs
}

/// Strictly decreasing sequence `k_1 > ... > k_m >= 1`, a generator of
/// `E(m, j)` when `k_1 <= m + j - 1`.
pub type DecSeq = Vec<u32>;

pub fn dec_seq_degree(seq: &[u32]) -> i64 {
    let m = seq.len() as i64;
    seq.iter().map(|&v| v as i64).sum::<i64>() - m * (m + 1) / 2
}

fn dec_seq_label(seq: &[u32]) -> String {
    format!(
        "({})",
        seq.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

/// A chain complex of free abelian groups with labeled generators:
/// `boundaries[q]` maps degree-`q` generators to degree-`q-1` generators.
/// `d . d = 0` is checked at construction.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    generators: Vec<Vec<String>>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(generators: Vec<Vec<String>>, boundaries: Vec<IntMatrix>) -> Self {
        assert_eq!(generators.len(), boundaries.len());
        for q in 0..generators.len() {
            let rows = if q == 0 { 0 } else { generators[q - 1].len() };
            assert_eq!(boundaries[q].rows(), rows);
            assert_eq!(boundaries[q].cols(), generators[q].len());
            if q >= 1 {
                assert!(
                    boundaries[q - 1].mul(&boundaries[q]).is_zero(),
                    "boundary squared is nonzero in degree {q}"
                );
            }
        }
        ChainComplex {
            generators,
            boundaries,
        }
    }

    pub fn top_degree(&self) -> i64 {
        self.generators.len() as i64 - 1
    }

    pub fn generators(&self, q: usize) -> &[String] {
        self.generators.get(q).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn boundary(&self, q: usize) -> Option<&IntMatrix> {
        self.boundaries.get(q)
    }

    pub fn total_generators(&self) -> usize {
        self.generators.iter().map(Vec::len).sum()
    }

    /// Alternating sum of generator counts, the chain-level Euler
    /// characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.generators
            .iter()
            .enumerate()
            .map(|(q, g)| {
                let sign = if q % 2 == 0 { 1 } else { -1 };
                sign * g.len() as i64
            })
            .sum()
    }
}

/// Per-degree free rank and torsion invariant factors; trivial degrees are
/// omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedAbelianGroup {
    pub groups: BTreeMap<i64, DegreeGroup>,
}

impl GradedAbelianGroup {
    pub fn free_rank(&self, degree: i64) -> usize {
        self.groups.get(&degree).map_or(0, |g| g.free_rank)
    }

    pub fn torsion(&self, degree: i64) -> Vec<BigInt> {
        self.groups
            .get(&degree)
            .map(|g| g.torsion.clone())
            .unwrap_or_default()
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.is_empty()
    }

    /// Generating polynomial of the free ranks, shifted by `shift`.
    pub fn free_poincare(&self, shift: i64) -> crate::poly::IntPolynomial {
        let mut acc = crate::poly::IntPolynomial::zero();
        for (&degree, group) in &self.groups {
            if group.free_rank > 0 {
                let e = degree + shift;
                assert!(e >= 0);
                acc = &acc
                    + &crate::poly::IntPolynomial::monomial(
                        BigInt::from(group.free_rank),
                        e as usize,
                    );
            }
        }
        acc
    }
}

impl fmt::Display for GradedAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (degree, group) in &self.groups {
            let mut factors = Vec::new();
            if group.free_rank == 1 {
                factors.push("Z".to_string());
            } else if group.free_rank > 1 {
                factors.push(format!("Z^{}", group.free_rank));
            }
            for t in &group.torsion {
                factors.push(format!("Z/{t}"));
            }
            parts.push(format!("H_{degree} = {}", factors.join(" + ")));
        }
        write!(f, "{}", parts.join(", "))
    }
}

/// Integral homology by Smith normal form: in each degree the free rank is
/// `dim - rank d_q - rank d_{q+1}` and the torsion is the invariant factors
/// of `d_{q+1}` exceeding one.
pub fn homology(complex: &ChainComplex) -> GradedAbelianGroup {
    let top = complex.generators.len();
    let snfs: Vec<SmithForm> = (0..top)
        .map(|q| smith_normal_form(&complex.boundaries[q]))
        .collect();
    let mut groups = BTreeMap::new();
    for q in 0..top {
        let dim = complex.generators[q].len();
        let rank_out = snfs[q].rank;
        let (rank_in, torsion) = if q + 1 < top {
            (snfs[q + 1].rank, snfs[q + 1].torsion())
        } else {
            (0, Vec::new())
        };
        let free_rank = dim - rank_out - rank_in;
        if free_rank > 0 || !torsion.is_empty() {
            groups.insert(
                q as i64,
                DegreeGroup {
                    free_rank,
                    torsion,
                },
            );
        }
    }
    GradedAbelianGroup { groups }
}

/// The chain complex `E(m, j)`: free on strictly decreasing sequences
/// `k_1 > ... > k_m >= 1` with `k_1 <= m + j - 1`, graded by
/// `sum k_i - m(m+1)/2`, with boundary
/// `d(k_1, ..., k_m) = sum_p (-1)^{k_1 + ... + k_{p-1}} (1 + (-1)^{k_p})
/// (k_1, ..., k_p - 1, ..., k_m)`, where a term is dropped if the decrement
/// breaks strict decrease or its last entry reaches zero. For `m = 0` the
/// single generator is the empty sequence in degree zero.
pub fn build_e(m: usize, j: i64) -> ChainComplex {
    assert!(j >= 1);
    let mut by_degree: BTreeMap<i64, Vec<DecSeq>> = BTreeMap::new();
    let bound = m as i64 + j - 1;
    let mut seqs: Vec<DecSeq> = Vec::new();
    fn gen(m: usize, max: i64, current: &mut DecSeq, out: &mut Vec<DecSeq>) {
        if m == 0 {
            out.push(current.clone());
            return;
        }
        // entries stay >= m to leave room for the strictly decreasing tail
        for v in (m as i64..=max).rev() {
            current.push(v as u32);
            gen(m - 1, v - 1, current, out);
            current.pop();
        }
    }
    gen(m, bound, &mut Vec::new(), &mut seqs);
    for seq in seqs {
        by_degree.entry(dec_seq_degree(&seq)).or_default().push(seq);
    }
    let top = by_degree.keys().max().copied().unwrap_or(-1);
    let mut generators = Vec::new();
    let mut index_of: Vec<BTreeMap<DecSeq, usize>> = Vec::new();
    for q in 0..=top {
        let mut seqs = by_degree.remove(&q).unwrap_or_default();
        seqs.sort();
        let mut map = BTreeMap::new();
        for (i, s) in seqs.iter().enumerate() {
            map.insert(s.clone(), i);
        }
        generators.push(seqs.iter().map(|s| dec_seq_label(s)).collect::<Vec<_>>());
        index_of.push(map);
    }
    let mut boundaries = Vec::new();
    for q in 0..=top as usize {
        let cols: Vec<DecSeq> = index_of[q].keys().cloned().collect();
        let rows = if q == 0 { 0 } else { index_of[q - 1].len() };
        let mut mat = IntMatrix::zero(rows, cols.len());
        if q > 0 {
            for (ci, seq) in cols.iter().enumerate() {
                for (coeff, image) in boundary_terms(seq) {
                    let ri = index_of[q - 1][&image];
                    let v = mat.get(ri, ci) + BigInt::from(coeff);
                    mat.set(ri, ci, v);
                }
            }
        }
        boundaries.push(mat);
    }
    ChainComplex::new(generators, boundaries)
}

/// Nonzero boundary terms of one sequence as `(coefficient, image)`. A term
/// drops out when the decrement breaks strict decrease or empties the last
/// entry; odd entries contribute the factor `1 + (-1)^{k_p} = 0`.
fn boundary_terms(seq: &[u32]) -> Vec<(i64, DecSeq)> {
    let m = seq.len();
    let mut out = Vec::new();
    let mut sign_exp: u32 = 0;
    for p in 0..m {
        let kp = seq[p];
        if kp % 2 == 0 {
            let mut image = seq.to_vec();
            image[p] -= 1;
            let valid = image[m - 1] >= 1 && (p + 1 >= m || image[p] > image[p + 1]);
            if valid {
                let sign = if sign_exp % 2 == 0 { 1 } else { -1 };
                out.push((sign * 2, image));
            }
        }
        sign_exp += kp;
    }
    out
}

/// One summand of the relative chain complex of `(X^k_d, dX^k_d)`: the
/// complex `E(d-4, j)` shifted up into homological degree `shift`.
#[derive(Debug, Clone)]
pub struct RelativeSummand {
    pub j: i64,
    pub shift: i64,
    pub complex: ChainComplex,
}

/// Splits the relative complex into its summands: for `j = 1..=k-d+3` the
/// complex `E(d-4, j)` shifted by
/// `(d-1)k - (d-2)(d-3)/2 - (d-2)(j-1)` minus its own top... the shift is
/// applied from degree zero upward. Errors for `k < d - 2`, where everything
/// collapses.
pub fn build_relative(d: i64, k: i64) -> Result<Vec<RelativeSummand>> {
    assert!(d >= 4);
    if k < d - 2 {
        return Err(Error::EmptyRange { k, dm2: d - 2 });
    }
    let mut out = Vec::new();
    for j in 1..=k - d + 3 {
        let shift = (d - 1) * k - (d - 2) * (d - 3) / 2 - (d - 2) * (j - 1);
        out.push(RelativeSummand {
            j,
            shift,
            complex: build_e((d - 4) as usize, j),
        });
    }
    Ok(out)
}

/// Closed-form basis of the rational homology of `E(m, j)`, as sequences with
/// their degrees. Even `m = 2r`: sequences
/// `(k_1, k_1 - 1, ..., k_r, k_r - 1)` with `k_i = 2(r + 1 - i) + 2 e_i` for
/// a weakly decreasing tuple `e` with `2 e_1 + 1 <= j`, in degree
/// `4 (e_1 + ... + e_r)`. Odd `m = 2r + 1`: empty for even `j`; for odd `j`
/// prepend `k_0 = j + 2r`, adding `j - 1` to the degree.
pub fn rational_basis_generators(m: usize, j: i64) -> Vec<(DecSeq, i64)> {
    assert!(j >= 1);
    let r = m / 2;
    if m % 2 == 1 && j % 2 == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for e in crate::betti::nabla_enumerate(r, j) {
        let mut seq = Vec::with_capacity(m);
        if m % 2 == 1 {
            seq.push((j + 2 * r as i64) as u32);
        }
        for (i, &ei) in e.iter().enumerate() {
            let k = 2 * (r - i) as i64 + 2 * ei as i64;
            seq.push(k as u32);
            seq.push((k - 1) as u32);
        }
        let weight: i64 = e.iter().map(|&v| v as i64).sum();
        let degree = if m % 2 == 1 {
            j - 1 + 4 * weight
        } else {
            4 * weight
        };
        debug_assert_eq!(degree, dec_seq_degree(&seq));
        out.push((seq, degree));
    }
    out.sort();
    out
}
