//! Exact combinatorics of length vectors: subset classification, genericity,
//! domination, short-set statistics, Morse numbers, split vectors, critical
//! index sets and chamber enumeration.
//!
//! Everything here is exact rational arithmetic. Genericity and chamber
//! membership are strict-inequality properties, so no floating point is used
//! anywhere in classification.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Error;
use crate::lp::{self, Constraint, ConstraintKind, LpOutcome};
use crate::Result;

/// A subset of `{1, ..., n}` as a bitmask; bit `i-1` encodes element `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub fn empty() -> Self {
        SubsetMask(0)
    }

    pub fn singleton(i: usize) -> Self {
        SubsetMask(1 << (i - 1))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    pub fn insert(&self, i: usize) -> Self {
        SubsetMask(self.0 | 1 << (i - 1))
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// Complement inside `{1, ..., n}`.
    pub fn complement(&self, n: usize) -> Self {
        SubsetMask(!self.0 & ((1u32 << n) - 1))
    }

    /// 1-based element indices, ascending.
    pub fn indices(&self) -> Vec<usize> {
        (1..=32).filter(|&i| self.contains(i)).collect()
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.indices().iter().join(","))
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

/// Classification of a subset against its complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SubsetClass {
    Short,
    Long,
    Median,
}

/// A length vector `(l_1, ..., l_n)` of positive rationals, stored exactly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LengthVector {
    entries: Vec<BigRational>,
}

/// Short-set statistics of a generic length vector: `a[k]` counts the short
/// subsets of size `k + 1` through a dominating index, for `k = 0..=n-3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShortSetStats {
    pub dominating_index: usize,
    pub a: Vec<u64>,
    pub a0_nonempty: bool,
}

impl ShortSetStats {
    /// `a_k`, with the convention that out-of-range indices give zero
    /// (in particular `a_{n-2} = 0`).
    pub fn a(&self, k: i64) -> i64 {
        if k < 0 {
            return 0;
        }
        self.a.get(k as usize).map(|&v| v as i64).unwrap_or(0)
    }

    /// `c_i = a_i - a_{n-2-i}` where `n` is recovered from the list length.
    pub fn c(&self, i: i64) -> i64 {
        let n = self.a.len() as i64 + 2;
        self.a(i) - self.a(n - 2 - i)
    }
}

/// Critical-point counts `mu_k` of the perfect Morse function, `k = 0..=n-3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorseNumbers {
    pub mu: Vec<u64>,
}

/// Canonical chamber invariant: the system of short subsets through the
/// dominating index, minimized lexicographically over all relabelings of
/// `{1, ..., n}`. Two generic vectors get equal keys iff their chambers agree
/// up to permutation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChamberKey {
    pub n: usize,
    masks: Vec<u32>,
}

impl ChamberKey {
    /// The canonical short sets, ascending by mask.
    pub fn short_sets(&self) -> Vec<SubsetMask> {
        self.masks.iter().map(|&m| SubsetMask(m)).collect()
    }
}

impl fmt::Display for ChamberKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.masks.is_empty() {
            return write!(f, "(empty)");
        }
        write!(f, "{}", self.short_sets().iter().join(" "))
    }
}

impl Serialize for ChamberKey {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: usize,
            short_sets: Vec<Vec<usize>>,
        }
        Repr {
            n: self.n,
            short_sets: self.short_sets().iter().map(|m| m.indices()).collect(),
        }
        .serialize(s)
    }
}

/// A chamber of the subset-sum arrangement together with one exact witness.
#[derive(Debug, Clone)]
pub struct Chamber {
    pub key: ChamberKey,
    pub witness: LengthVector,
}

impl LengthVector {
    /// Builds a length vector, requiring `n >= 3` and strictly positive
    /// entries.
    pub fn new(entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() < 3 {
            return Err(Error::Invalid(format!(
                "need at least 3 entries, got {}",
                entries.len()
            )));
        }
        Self::with_min_len(entries, 3)
    }

    fn with_min_len(entries: Vec<BigRational>, min: usize) -> Result<Self> {
        if entries.len() < min {
            return Err(Error::Invalid("too few entries".into()));
        }
        if entries.len() > 32 {
            return Err(Error::Invalid("at most 32 entries supported".into()));
        }
        if let Some(i) = entries.iter().position(|e| !e.is_positive()) {
            return Err(Error::Invalid(format!(
                "entry {} is not strictly positive",
                i + 1
            )));
        }
        Ok(LengthVector { entries })
    }

    pub fn from_ints(entries: &[i64]) -> Result<Self> {
        Self::new(
            entries
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    /// Parses `1,1,1,1,1,3,3,6` or `1/2,3/2,2`; decimals are exact decimal
    /// fractions, e.g. `4.2 = 21/5`.
    pub fn parse(input: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut pos = 0usize;
        for piece in input.split(',') {
            let start = pos;
            pos += piece.len() + 1;
            let token = piece.trim();
            if token.is_empty() {
                return Err(Error::Parse {
                    position: start,
                    message: "empty entry".into(),
                });
            }
            entries.push(parse_rational(token).map_err(|message| Error::Parse {
                position: start,
                message,
            })?);
        }
        Self::new(entries)
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    /// Entry `l_i`, 1-based.
    pub fn entry(&self, i: usize) -> &BigRational {
        &self.entries[i - 1]
    }

    pub fn total(&self) -> BigRational {
        self.entries.iter().sum()
    }

    pub fn subset_sum(&self, set: SubsetMask) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, e) in self.entries.iter().enumerate() {
            if set.0 >> i & 1 == 1 {
                acc += e;
            }
        }
        acc
    }

    /// Sums over all `2^n` subsets, indexed by mask.
    fn all_subset_sums(&self) -> Vec<BigRational> {
        let n = self.n();
        let mut sums = vec![BigRational::zero(); 1 << n];
        for mask in 1usize..1 << n {
            let low = mask.trailing_zeros() as usize;
            sums[mask] = &sums[mask & (mask - 1)] + &self.entries[low];
        }
        sums
    }

    /// Short, long or median: compares `l_J` with `l_{J^c}` exactly.
    pub fn classify_subset(&self, set: SubsetMask) -> SubsetClass {
        let twice = self.subset_sum(set) * BigRational::from_integer(BigInt::from(2));
        match twice.cmp(&self.total()) {
            std::cmp::Ordering::Less => SubsetClass::Short,
            std::cmp::Ordering::Greater => SubsetClass::Long,
            std::cmp::Ordering::Equal => SubsetClass::Median,
        }
    }

    /// The first median subset in mask order, if any.
    pub fn median_witness(&self) -> Option<SubsetMask> {
        let total = self.total();
        let sums = self.all_subset_sums();
        let two = BigRational::from_integer(BigInt::from(2));
        (1..sums.len())
            .find(|&mask| &sums[mask] * &two == total)
            .map(|mask| SubsetMask(mask as u32))
    }

    /// True iff no subset is median, equivalently `M_1(l)` is empty.
    pub fn is_generic(&self) -> bool {
        self.median_witness().is_none()
    }

    fn ensure_generic(&self) -> Result<()> {
        match self.median_witness() {
            Some(witness) => Err(Error::NonGeneric { witness }),
            None => Ok(()),
        }
    }

    /// All indices `m` with `l_m` maximal, 1-based ascending.
    pub fn dominating_indices(&self) -> Vec<usize> {
        let max = self.entries.iter().max().unwrap();
        (1..=self.n()).filter(|&i| self.entry(i) == max).collect()
    }

    /// Short-set statistics for the largest dominating index.
    pub fn short_set_stats(&self) -> Result<ShortSetStats> {
        let m = *self.dominating_indices().last().unwrap();
        self.short_set_stats_for(m)
    }

    /// Short-set statistics for a chosen dominating index `m`. The counts do
    /// not depend on the choice; this entry point exists so that tests can
    /// verify exactly that.
    pub fn short_set_stats_for(&self, m: usize) -> Result<ShortSetStats> {
        self.ensure_generic()?;
        let n = self.n();
        if n < 3 {
            return Err(Error::TooShort { n, min: 3 });
        }
        assert!(
            self.dominating_indices().contains(&m),
            "index {m} is not dominating"
        );
        let total = self.total();
        let sums = self.all_subset_sums();
        let two = BigRational::from_integer(BigInt::from(2));
        let mut a = vec![0u64; n - 2];
        let m_bit = 1usize << (m - 1);
        for mask in 0..sums.len() {
            if mask & m_bit == 0 || &sums[mask] * &two >= total {
                continue;
            }
            let size = mask.count_ones() as usize;
            debug_assert!(size <= n - 2, "short set through a dominating index");
            a[size - 1] += 1;
        }
        let a0_nonempty = a[0] == 1;
        debug_assert!(a[0] <= 1);
        Ok(ShortSetStats {
            dominating_index: m,
            a,
            a0_nonempty,
        })
    }

    /// Morse numbers `mu_k`: partial sums of `c_i = a_i - a_{n-2-i}` in the
    /// lower half, reflected by `mu_k = mu_{n-3-k}` in the upper half.
    pub fn morse_numbers(&self) -> Result<MorseNumbers> {
        let stats = self.short_set_stats()?;
        if !stats.a0_nonempty {
            return Err(Error::EmptyModuli);
        }
        let n = self.n() as i64;
        let m = (n + 1) / 2;
        let mut mu = vec![0u64; (n - 2) as usize];
        let mut acc = 0i64;
        for k in 0..=m - 2 {
            let c = stats.c(k);
            assert!(c >= 0, "c_{k} = {c} < 0 contradicts the non-negativity of the c_i");
            acc += c;
            mu[k as usize] = acc as u64;
        }
        for k in m - 1..=n - 3 {
            mu[k as usize] = mu[(n - 3 - k) as usize];
        }
        Ok(MorseNumbers { mu })
    }

    /// Ascending copy.
    pub fn sorted(&self) -> LengthVector {
        let mut entries = self.entries.clone();
        entries.sort();
        LengthVector { entries }
    }

    pub fn is_strictly_ascending(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] < w[1])
    }

    fn has_distinct_entries(&self) -> bool {
        let set: BTreeSet<_> = self.entries.iter().collect();
        set.len() == self.n()
    }

    /// Returns a distinct-entry representative of the same chamber:
    /// `l_i + delta * 2^i` with `delta` below half the minimal subset-sum gap,
    /// so every strict subset comparison keeps its sign. Already-distinct
    /// vectors are returned unchanged.
    pub fn perturb_to_distinct(&self) -> Result<LengthVector> {
        self.ensure_generic()?;
        if self.has_distinct_entries() {
            return Ok(self.clone());
        }
        let n = self.n();
        let total = self.total();
        let two = BigRational::from_integer(BigInt::from(2));
        let min_gap = self
            .all_subset_sums()
            .iter()
            .map(|s| (s * &two - &total).abs())
            .filter(|g| !g.is_zero())
            .min()
            .expect("generic vector has nonzero gaps");
        let delta = min_gap / BigRational::from_integer(BigInt::one() << (n + 2));
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| e + &delta * BigRational::from_integer(BigInt::one() << (i + 1)))
            .collect();
        Ok(LengthVector { entries })
    }

    /// The split vectors `l+` and `l-` obtained by locking the last side
    /// against the next-to-last: last entries `l_n + l_{n-1}` and
    /// `l_n - l_{n-1}`. Input must be strictly ascending; outputs are
    /// re-sorted ascending.
    pub fn split_vectors(&self) -> Result<(LengthVector, LengthVector)> {
        let n = self.n();
        if self.entries[n - 1] == self.entries[n - 2] {
            return Err(Error::Degenerate);
        }
        if !self.is_strictly_ascending() {
            return Err(Error::Unsorted);
        }
        let mut plus = self.entries[..n - 2].to_vec();
        let mut minus = plus.clone();
        plus.push(&self.entries[n - 1] + &self.entries[n - 2]);
        minus.push(&self.entries[n - 1] - &self.entries[n - 2]);
        plus.sort();
        minus.sort();
        Ok((
            LengthVector::with_min_len(plus, 2)?,
            LengthVector::with_min_len(minus, 2)?,
        ))
    }

    /// The critical sets `J` of the Morse-Bott function: `J` inside
    /// `{1, ..., n-2}` with `J + {n}` short and `J + {n-1, n}` long, each with
    /// Morse index `(n - 3 - |J|)(d - 1)`. Input must be generic, strictly
    /// ascending (so the dominating index is last).
    pub fn critical_index_sets(&self, d: i64) -> Result<Vec<(SubsetMask, u64)>> {
        assert!(d >= 3);
        self.ensure_generic()?;
        if !self.is_strictly_ascending() {
            return Err(Error::Unsorted);
        }
        let n = self.n();
        let mut out = Vec::new();
        for bits in 0u32..1 << (n - 2) {
            let j = SubsetMask(bits);
            if self.classify_subset(j.insert(n)) == SubsetClass::Short
                && self.classify_subset(j.insert(n - 1).insert(n)) == SubsetClass::Long
            {
                let index = (n - 3 - j.len()) as u64 * (d - 1) as u64;
                out.push((j, index));
            }
        }
        Ok(out)
    }

    /// The short subsets through the dominating index, as raw masks.
    fn short_family(&self) -> Result<Vec<u32>> {
        let stats_m = *self.dominating_indices().last().unwrap();
        self.ensure_generic()?;
        let total = self.total();
        let sums = self.all_subset_sums();
        let two = BigRational::from_integer(BigInt::from(2));
        let m_bit = 1usize << (stats_m - 1);
        Ok((0..sums.len())
            .filter(|mask| mask & m_bit != 0 && &sums[*mask] * &two < total)
            .map(|mask| mask as u32)
            .collect())
    }

    /// Memoization key for chamber-constant computations on one fixed sorted
    /// vector; cheaper than full canonicalization.
    pub(crate) fn chamber_signature(&self) -> Result<(usize, Vec<u32>)> {
        Ok((self.n(), self.short_family()?))
    }

    /// Canonical chamber key, minimal over all relabelings.
    pub fn chamber_key(&self) -> Result<ChamberKey> {
        let family = self.short_family()?;
        Ok(canonicalize_family(self.n(), &family))
    }

    /// Smallest integer vector on the same ray (chambers are cones, so this
    /// stays in the chamber).
    pub fn to_integer_witness(&self) -> LengthVector {
        let lcm = self
            .entries
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let scaled: Vec<BigInt> = self
            .entries
            .iter()
            .map(|e| e.numer() * &lcm / e.denom())
            .collect();
        let gcd = scaled.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        LengthVector {
            entries: scaled
                .into_iter()
                .map(|v| BigRational::from_integer(v / &gcd))
                .collect(),
        }
    }
}

impl fmt::Display for LengthVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries.iter().join(", "))
    }
}

fn parse_rational(token: &str) -> std::result::Result<BigRational, String> {
    if let Some((num, den)) = token.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator `{num}`"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator `{den}`"))?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = token.split_once('.') {
        let int_part: BigInt = if int.is_empty() {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| format!("bad number `{token}`"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal `{token}`"));
        }
        let digits: BigInt = frac.parse().unwrap();
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let whole = BigRational::from_integer(int_part);
        let fraction = BigRational::new(digits, scale);
        return Ok(if token.trim_start().starts_with('-') {
            whole - fraction
        } else {
            whole + fraction
        });
    }
    token
        .parse::<BigInt>()
        .map(BigRational::from_integer)
        .map_err(|_| format!("bad number `{token}`"))
}

/// Lexicographically minimal image of the family under relabelings of
/// `{1, ..., n}`. Any nonempty family of short sets through a dominating
/// index contains exactly one singleton, whose image must be element 1 in the
/// minimal relabeling; only the remaining `(n-1)!` maps are searched.
fn canonicalize_family(n: usize, family: &[u32]) -> ChamberKey {
    if family.is_empty() {
        return ChamberKey {
            n,
            masks: Vec::new(),
        };
    }
    let singleton = family
        .iter()
        .find(|m| m.count_ones() == 1)
        .expect("nonempty short family contains the dominating singleton");
    let m_elem = singleton.trailing_zeros() as usize; // 0-based
    let others: Vec<usize> = (0..n).filter(|&i| i != m_elem).collect();
    let mut best: Option<Vec<u32>> = None;
    for images in others.iter().permutations(others.len()) {
        // map: element -> image (0-based); dominating element -> 0
        let mut map = vec![0usize; n];
        map[m_elem] = 0;
        for (k, &&src) in images.iter().enumerate() {
            map[src] = k + 1;
        }
        let mut mapped: Vec<u32> = family
            .iter()
            .map(|&mask| {
                let mut out = 0u32;
                for b in 0..n {
                    if mask >> b & 1 == 1 {
                        out |= 1 << map[b];
                    }
                }
                out
            })
            .collect();
        mapped.sort_unstable();
        if best.as_ref().is_none_or(|b| mapped < *b) {
            best = Some(mapped);
        }
    }
    ChamberKey {
        n,
        masks: best.unwrap(),
    }
}

/// True iff `sub` is forced at most as long as `sup` for every ascending
/// vector: an injection from `sub` into `sup` never decreasing the index.
/// Both sets are sorted descending and compared pointwise.
fn dominated_by(sub: u32, sup: u32) -> bool {
    if sub.count_ones() > sup.count_ones() {
        return false;
    }
    let mut a: Vec<u32> = (0..32).filter(|i| sub >> i & 1 == 1).collect();
    let mut b: Vec<u32> = (0..32).filter(|i| sup >> i & 1 == 1).collect();
    a.reverse();
    b.reverse();
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

/// Chamber enumeration up to permutation, at desk scale (`3 <= n <= 8`).
/// With `require_nonempty`, only chambers with `a_0 = 1` are kept.
pub fn enumerate_chambers(n: usize, require_nonempty: bool) -> Result<Vec<Chamber>> {
    if !(3..=8).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as i64,
            min: 3,
            max: 8,
        });
    }
    Ok(enumerate_chambers_unbounded(n, require_nonempty))
}

/// Chamber enumeration without the desk-scale guard. Exponential in `n`;
/// documented as potentially slow rather than wrong.
pub fn enumerate_chambers_unbounded(n: usize, require_nonempty: bool) -> Vec<Chamber> {
    // Work inside the ascending cone: every chamber class has exactly one
    // representative there, its short sets through n forming the sign vector.
    // Candidate hyperplanes are the subsets through n of size 1..=n-2; sets of
    // size n-1 through n are long for every positive ascending vector.
    let mut candidates: Vec<u32> = (0..1u32 << (n - 1))
        .map(|low| low | 1 << (n - 1))
        .filter(|m| (1..=n - 2).contains(&(m.count_ones() as usize)))
        .collect();
    candidates.sort_by_key(|m| (m.count_ones(), *m));

    let mut out = Vec::new();
    let mut shorts = Vec::new();
    let mut longs = Vec::new();
    search(
        n,
        &candidates,
        0,
        &mut shorts,
        &mut longs,
        require_nonempty,
        &mut out,
    );
    out.sort_by(|a, b| a.key.cmp(&b.key));
    debug_assert!(out.windows(2).all(|w| w[0].key != w[1].key));
    out
}

fn search(
    n: usize,
    candidates: &[u32],
    from: usize,
    shorts: &mut Vec<u32>,
    longs: &mut Vec<u32>,
    require_nonempty: bool,
    out: &mut Vec<Chamber>,
) {
    let (s0, l0) = (shorts.len(), longs.len());
    let mut branch = None;
    for idx in from..candidates.len() {
        let j = candidates[idx];
        if shorts.iter().any(|&s| dominated_by(j, s)) {
            shorts.push(j);
        } else if longs.iter().any(|&l| dominated_by(l, j)) {
            longs.push(j);
        } else {
            branch = Some(idx);
            break;
        }
    }
    match branch {
        None => {
            // Complete sign vector. Forced assignments are implied by the
            // decided ones, so the strict program stayed feasible.
            let witness =
                strict_witness(n, shorts, longs).expect("leaf sign vector must be realizable");
            if !require_nonempty || shorts.contains(&(1 << (n - 1))) {
                let key = canonicalize_family(n, shorts);
                out.push(Chamber { key, witness });
            }
        }
        Some(idx) => {
            let j = candidates[idx];
            shorts.push(j);
            if strict_witness(n, shorts, longs).is_some() {
                search(n, candidates, idx + 1, shorts, longs, require_nonempty, out);
            }
            shorts.pop();
            longs.push(j);
            if strict_witness(n, shorts, longs).is_some() {
                search(n, candidates, idx + 1, shorts, longs, require_nonempty, out);
            }
            longs.pop();
        }
    }
    shorts.truncate(s0);
    longs.truncate(l0);
}

/// Exact feasibility with strict margins: maximize `eps` subject to
/// `l` ascending, `sum l = 1`, `l_i >= eps`, and a margin of `eps` on every
/// designated comparison. Realizable iff the optimum is positive; returns the
/// optimal point scaled to integers.
fn strict_witness(n: usize, shorts: &[u32], longs: &[u32]) -> Option<LengthVector> {
    let vars = n + 1; // l_1..l_n, eps
    let eps = n;
    let mut constraints = Vec::new();
    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    // ascending order
    for i in 0..n - 1 {
        let mut row = vec![BigRational::zero(); vars];
        row[i] = q(1);
        row[i + 1] = q(-1);
        constraints.push(Constraint::new(row, ConstraintKind::Le, q(0)));
    }
    // normalization
    let mut row = vec![BigRational::zero(); vars];
    for item in row.iter_mut().take(n) {
        *item = q(1);
    }
    constraints.push(Constraint::new(row, ConstraintKind::Eq, q(1)));
    // positivity with margin
    for i in 0..n {
        let mut row = vec![BigRational::zero(); vars];
        row[eps] = q(1);
        row[i] = q(-1);
        constraints.push(Constraint::new(row, ConstraintKind::Le, q(0)));
    }
    // l_J - l_{J^c} + eps <= 0 for short J; the reverse for long J
    let signed_row = |mask: u32, sign: i64| {
        let mut row = vec![BigRational::zero(); vars];
        for i in 0..n {
            row[i] = if mask >> i & 1 == 1 { q(sign) } else { q(-sign) };
        }
        row[eps] = q(1);
        row
    };
    for &j in shorts {
        constraints.push(Constraint::new(signed_row(j, 1), ConstraintKind::Le, q(0)));
    }
    for &j in longs {
        constraints.push(Constraint::new(signed_row(j, -1), ConstraintKind::Le, q(0)));
    }
    let mut objective = vec![BigRational::zero(); vars];
    objective[eps] = q(1);
    match lp::maximize(&objective, &constraints) {
        LpOutcome::Optimal { objective, point } if objective.is_positive() => {
            let entries = point[..n].to_vec();
            let vec = LengthVector::with_min_len(entries, 3).expect("positive witness");
            Some(vec.to_integer_witness())
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(entries: &[i64]) -> LengthVector {
        LengthVector::from_ints(entries).unwrap()
    }

    fn mask(indices: &[usize]) -> SubsetMask {
        indices
            .iter()
            .fold(SubsetMask::empty(), |m, &i| m.insert(i))
    }

    #[test]
    fn classify_examples() {
        assert_eq!(lv(&[1, 1, 1]).classify_subset(mask(&[1])), SubsetClass::Short);
        assert_eq!(
            lv(&[1, 1, 1, 1]).classify_subset(mask(&[1, 2])),
            SubsetClass::Median
        );
        assert_eq!(
            lv(&[1, 1, 1, 1, 1, 3, 3, 6]).classify_subset(mask(&[8, 1, 2])),
            SubsetClass::Short
        );
    }

    #[test]
    fn genericity() {
        assert_eq!(lv(&[1, 1, 1, 1]).median_witness(), Some(mask(&[1, 2])));
        assert!(lv(&[1, 1, 1, 1, 1]).is_generic());
        assert!(lv(&[1, 1, 1, 1, 1, 4]).is_generic());
    }

    #[test]
    fn dominating() {
        assert_eq!(lv(&[1, 1, 1, 1, 1, 4]).dominating_indices(), vec![6]);
        assert_eq!(lv(&[1, 1, 1]).dominating_indices(), vec![1, 2, 3]);
        assert_eq!(
            lv(&[1, 1, 1, 1, 5, 5, 5]).dominating_indices(),
            vec![5, 6, 7]
        );
    }

    #[test]
    fn stats_examples() {
        let s = lv(&[1, 1, 1, 1, 1, 3, 3, 6]).short_set_stats().unwrap();
        assert_eq!(s.a, vec![1, 5, 10, 0, 0, 0]);
        let s = lv(&[1, 1, 1, 1, 1, 4]).short_set_stats().unwrap();
        assert_eq!(s.a, vec![1, 0, 0, 0]);
        // equilateral (1,...,1) in R^{2m+1}: a_i = C(2m, i) for i <= m-1
        for m in 2..=4usize {
            let s = lv(&vec![1; 2 * m + 1]).short_set_stats().unwrap();
            for i in 0..=2 * m - 2 {
                let expected = if i <= m - 1 {
                    binomial(2 * m, i)
                } else {
                    0
                };
                assert_eq!(s.a[i], expected, "m={m} i={i}");
            }
        }
    }

    fn binomial(n: usize, k: usize) -> u64 {
        let mut acc = 1u64;
        for i in 0..k {
            acc = acc * (n - i) as u64 / (i + 1) as u64;
        }
        acc
    }

    #[test]
    fn stats_independent_of_dominating_choice() {
        let v = lv(&[1, 1, 1, 1, 5, 5, 5]);
        let reference = v.short_set_stats_for(5).unwrap();
        for m in [6, 7] {
            let s = v.short_set_stats_for(m).unwrap();
            assert_eq!(s.a, reference.a);
        }
    }

    #[test]
    fn stats_rejects_nongeneric() {
        let err = lv(&[1, 1, 1, 1]).short_set_stats().unwrap_err();
        assert_eq!(
            err,
            Error::NonGeneric {
                witness: mask(&[1, 2])
            }
        );
    }

    #[test]
    fn morse_examples() {
        assert_eq!(
            lv(&[1, 1, 1, 1, 1, 4]).morse_numbers().unwrap().mu,
            vec![1, 1, 1, 1]
        );
        let mu = lv(&[1, 1, 1, 1, 1, 3, 3, 6]).morse_numbers().unwrap().mu;
        assert_eq!(mu, vec![1, 6, 16, 16, 6, 1]);
        // symmetry and the n = 6 base case mu_0 = 1
        for entries in [[1, 2, 3, 4, 5, 14].as_slice(), &[2, 3, 4, 9, 11, 12]] {
            let v = lv(entries);
            if !v.is_generic() {
                continue;
            }
            let mu = v.morse_numbers().unwrap().mu;
            assert_eq!(mu[0], 1);
            let rev: Vec<u64> = mu.iter().rev().copied().collect();
            assert_eq!(mu, rev);
        }
        assert_eq!(lv(&[1, 2, 4]).morse_numbers().unwrap_err(), Error::EmptyModuli);
    }

    #[test]
    fn split_examples() {
        let (plus, minus) = lv(&[1, 2, 3, 7]).split_vectors().unwrap();
        assert_eq!(plus, lv(&[1, 2, 10]));
        assert_eq!(minus, lv(&[1, 2, 4]));
        // n = 3 splits into two-entry vectors
        let (plus, minus) = lv(&[1, 2, 4]).split_vectors().unwrap();
        let ints = |v: &LengthVector| -> Vec<i64> {
            v.entries()
                .iter()
                .map(|e| {
                    assert!(e.is_integer());
                    i64::try_from(e.to_integer()).unwrap()
                })
                .collect()
        };
        assert_eq!(ints(&plus), vec![1, 6]);
        assert_eq!(ints(&minus), vec![1, 2]);
        assert_eq!(lv(&[1, 2, 7, 7]).split_vectors().unwrap_err(), Error::Degenerate);
        assert_eq!(lv(&[2, 1, 3, 7]).split_vectors().unwrap_err(), Error::Unsorted);
    }

    #[test]
    fn perturb_keeps_chamber() {
        let v = lv(&[1, 1, 1, 1, 1]);
        let p = v.perturb_to_distinct().unwrap();
        assert!(p.is_strictly_ascending());
        assert_eq!(
            v.short_set_stats().unwrap().a,
            p.short_set_stats().unwrap().a
        );
        let v = lv(&[1, 1, 1, 1, 1, 4]);
        let p = v.perturb_to_distinct().unwrap();
        assert_eq!(v.chamber_key().unwrap(), p.chamber_key().unwrap());
        // identity on distinct entries
        let v = lv(&[1, 2, 4]);
        assert_eq!(v.perturb_to_distinct().unwrap(), v);
    }

    #[test]
    fn perturb_preserves_all_classifications() {
        for entries in [
            vec![1, 1, 1, 1, 1],
            vec![1, 1, 1, 1, 1, 4],
            vec![1, 1, 1, 1, 5, 5, 5],
            vec![1, 1, 1, 1, 1, 3, 3, 6],
        ] {
            let v = lv(&entries);
            let p = v.perturb_to_distinct().unwrap();
            for bits in 0..1u32 << v.n() {
                assert_eq!(
                    v.classify_subset(SubsetMask(bits)),
                    p.classify_subset(SubsetMask(bits))
                );
            }
        }
    }

    #[test]
    fn critical_sets_examples() {
        // n = 3: J = {} qualifies iff {3} short and {2,3} long
        assert!(lv(&[1, 2, 4]).critical_index_sets(3).unwrap().is_empty());
        // one chain level of (1,1,1,1,1,4): only J = {} passes both tests,
        // with top index (n-3)(d-1); the remaining critical points live in
        // the split vectors (see critical_sets_match_morse_recursion)
        let v = lv(&[1, 1, 1, 1, 1, 4]).perturb_to_distinct().unwrap();
        let crits = v.critical_index_sets(3).unwrap();
        assert_eq!(crits.len(), 1);
        assert!(crits[0].0.is_empty());
        assert_eq!(crits[0].1, 6);
        // index scales with d - 1
        let crits5 = v.critical_index_sets(5).unwrap();
        assert_eq!(crits5[0].1, 12);
    }

    #[test]
    fn critical_sets_match_morse_recursion() {
        // counts of |J| = k match the mu bookkeeping: mu_k(l) =
        // mu_k(l-) + mu_{k-1}(l+) + #{J : n-3-|J| = k}
        let v = lv(&[1, 1, 1, 1, 1, 3, 3, 6]).perturb_to_distinct().unwrap();
        let n = v.n();
        let crits = v.critical_index_sets(3).unwrap();
        let (plus, minus) = v.split_vectors().unwrap();
        let mu = v.morse_numbers().unwrap().mu;
        let mu_minus = minus.perturb_to_distinct().unwrap().morse_numbers().unwrap().mu;
        let mu_plus: Vec<u64> = match plus.perturb_to_distinct().unwrap().morse_numbers() {
            Ok(m) => m.mu,
            Err(Error::EmptyModuli) => vec![0; n - 3],
            Err(e) => panic!("{e}"),
        };
        for k in 0..=n - 3 {
            let from_t = crits.iter().filter(|(j, _)| n - 3 - j.len() == k).count() as u64;
            let a = mu_minus.get(k).copied().unwrap_or(0);
            let b = if k == 0 { 0 } else { mu_plus.get(k - 1).copied().unwrap_or(0) };
            assert_eq!(mu[k], a + b + from_t, "k={k}");
        }
    }

    #[test]
    fn chamber_keys() {
        let a = LengthVector::parse("1,1,1,1,1,4").unwrap();
        let b = LengthVector::parse("1,1,1,1,1,4.2").unwrap();
        assert_eq!(a.chamber_key().unwrap(), b.chamber_key().unwrap());
        // permutation invariance
        let c = LengthVector::parse("4,1,1,1,1,1").unwrap();
        assert_eq!(a.chamber_key().unwrap(), c.chamber_key().unwrap());
        // (2,2,2,2,2,9) has the same short-set system {{6}}, hence the same
        // chamber up to permutation
        let d = lv(&[2, 2, 2, 2, 2, 9]);
        assert_eq!(a.chamber_key().unwrap(), d.chamber_key().unwrap());
        // a chamber with a_1 > 0 differs
        let e = lv(&[1, 1, 2, 2, 2, 3]);
        assert!(e.is_generic());
        assert_ne!(a.chamber_key().unwrap(), e.chamber_key().unwrap());
    }

    #[test]
    fn chamber_count_small_n() {
        let all = enumerate_chambers(3, false).unwrap();
        assert_eq!(all.len(), 2);
        let nonempty = enumerate_chambers(3, true).unwrap();
        assert_eq!(nonempty.len(), 1);
        assert_eq!(enumerate_chambers(4, false).unwrap().len(), 3);
        assert_eq!(enumerate_chambers(5, false).unwrap().len(), 7);
        assert!(matches!(
            enumerate_chambers(9, false),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn chamber_witnesses_roundtrip() {
        for n in 3..=6 {
            let chambers = enumerate_chambers(n, false).unwrap();
            for c in &chambers {
                assert!(c.witness.is_generic());
                assert_eq!(c.witness.chamber_key().unwrap(), c.key, "witness {} re-keys", c.witness);
            }
        }
    }

    #[test]
    fn parse_rationals() {
        let v = LengthVector::parse("1/2,3/2,2").unwrap();
        assert_eq!(v.entry(1), &BigRational::new(BigInt::from(1), BigInt::from(2)));
        let v = LengthVector::parse("1,1,4.2").unwrap();
        assert_eq!(v.entry(3), &BigRational::new(BigInt::from(21), BigInt::from(5)));
        assert!(matches!(
            LengthVector::parse("1,,3"),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(LengthVector::parse("1,2").is_err());
        assert!(LengthVector::parse("1,-2,3").is_err());
    }

    #[test]
    fn dominance_order() {
        // {1,8} is dominated by {2,8}; {6,8} is not dominated by {1,2,8}
        assert!(dominated_by(0b1000_0001, 0b1000_0010));
        assert!(!dominated_by(0b1010_0000, 0b1000_0011));
        assert!(dominated_by(0b1000_0000, 0b1000_0001));
    }
}
