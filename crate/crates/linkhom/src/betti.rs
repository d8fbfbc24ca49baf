//! Closed-form Poincaré polynomials.
//!
//! For `d = 3` four independent routes to the same polynomial: the Morse
//! recursion over split vectors, Klyachko's alternating-sum formula, the
//! Hausmann-Knutson telescoping formula, and the direct coefficient form in
//! terms of the short-set statistics. For `d >= 4` the relative pair
//! polynomials `P^k_d`, their specializations for `d <= 7`, and the
//! odd-dimensional assembly that yields the full Poincaré polynomial of
//! `M_d(l)` for odd `d >= 5`, made explicit for `d = 5`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Error;
use crate::lengths::{LengthVector, SubsetClass, SubsetMask};
use crate::poly::{q_poly, IntPolynomial};
use crate::Result;

/// All weakly decreasing `m`-tuples of non-negative integers `j` with
/// `2 j_1 + 1 <= bound`, in lexicographic order. For `m = 0` the empty tuple
/// qualifies iff `bound >= 1`.
pub fn nabla_enumerate(m: usize, bound: i64) -> Vec<Vec<u64>> {
    if bound < 1 {
        return Vec::new();
    }
    let max_first = ((bound - 1) / 2) as u64;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fn rec(m: usize, max: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if m == 0 {
            out.push(current.clone());
            return;
        }
        for v in 0..=max {
            current.push(v);
            rec(m - 1, v, current, out);
            current.pop();
        }
    }
    rec(m, max_first, &mut current, &mut out);
    out
}

/// `|j| = j_1 + ... + j_m`.
pub fn nabla_weight(tuple: &[u64]) -> u64 {
    tuple.iter().sum()
}

/// `||j|| = 2 j_1 + 1`, with `||()|| = 1`.
pub fn nabla_norm(tuple: &[u64]) -> i64 {
    2 * tuple.first().copied().unwrap_or(0) as i64 + 1
}

/// Poincaré polynomial of `M_3(l)` by the Morse recursion
/// `P(l) = P(l-) + t^2 P(l+) + sum over critical sets J of t^{2(n-3-|J|)}`,
/// memoized on the chamber of each (sorted, perturbed) subproblem.
pub fn p3_recursive(l: &LengthVector) -> Result<IntPolynomial> {
    if let Some(witness) = l.median_witness() {
        return Err(Error::NonGeneric { witness });
    }
    let mut memo = HashMap::new();
    p3_rec(&l.sorted().perturb_to_distinct()?, &mut memo)
}

fn p3_rec(
    l: &LengthVector,
    memo: &mut HashMap<(usize, Vec<u32>), IntPolynomial>,
) -> Result<IntPolynomial> {
    let n = l.n();
    let key = l.chamber_signature()?;
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    // a_0 = 0 at any level gives the zero polynomial
    let result = if l.classify_subset(SubsetMask::singleton(n)) != SubsetClass::Short {
        IntPolynomial::zero()
    } else if n == 3 {
        IntPolynomial::one()
    } else {
        let (plus, minus) = l.split_vectors()?;
        let p_minus = p3_rec(&minus.perturb_to_distinct()?, memo)?;
        let p_plus = p3_rec(&plus.perturb_to_distinct()?, memo)?;
        let mut acc = &p_minus + &p_plus.shift(2);
        for (j, _) in l.critical_index_sets(3)? {
            let degree = 2 * (n - 3 - j.len());
            acc = &acc + &IntPolynomial::monomial(BigInt::one(), degree);
        }
        acc
    };
    memo.insert(key, result.clone());
    Ok(result)
}

/// Klyachko's formula
/// `((1 + t^2)^{n-1} - sum over short J of t^{2|J|}) / (t^2 (t^2 - 1))`,
/// the sum over all short subsets of `{1, ..., n}` including the empty set.
/// The division must be exact; a nonzero remainder is a transcription bug.
pub fn p3_klyachko(l: &LengthVector) -> Result<IntPolynomial> {
    if let Some(witness) = l.median_witness() {
        return Err(Error::NonGeneric { witness });
    }
    let n = l.n();
    let one_plus_t2 = IntPolynomial::from_i64_coeffs(&[1, 0, 1]);
    let mut power = IntPolynomial::one();
    for _ in 0..n - 1 {
        power = &power * &one_plus_t2;
    }
    let mut short_sum = IntPolynomial::zero();
    for bits in 0u32..1 << n {
        let j = SubsetMask(bits);
        if l.classify_subset(j) == SubsetClass::Short {
            short_sum = &short_sum + &IntPolynomial::monomial(BigInt::one(), 2 * j.len());
        }
    }
    let numerator = &power - &short_sum;
    // t^2 (t^2 - 1) = t^4 - t^2
    let denominator = IntPolynomial::from_i64_coeffs(&[0, 0, -1, 0, 1]);
    numerator.exact_div(&denominator)
}

/// The Hausmann-Knutson formula
/// `(1 / (1 - t^2)) sum_k a_k (t^{2k} - t^{2(n-2-k)})`, where `a_k` counts
/// the short subsets through the dominating index with `k + 1` elements.
pub fn p3_hausmann_knutson(l: &LengthVector) -> Result<IntPolynomial> {
    let stats = l.sorted().short_set_stats()?;
    let n = l.n() as i64;
    let mut numerator = IntPolynomial::zero();
    for k in 0..=n - 3 {
        let a = stats.a(k);
        if a == 0 {
            continue;
        }
        let coeff = IntPolynomial::constant(BigInt::from(a));
        let term = &IntPolynomial::monomial(BigInt::one(), 2 * k as usize)
            - &IntPolynomial::monomial(BigInt::one(), 2 * (n - 2 - k) as usize);
        numerator = &numerator + &(&coeff * &term);
    }
    let denominator = IntPolynomial::from_i64_coeffs(&[1, 0, -1]);
    if numerator.is_zero() {
        return Ok(IntPolynomial::zero());
    }
    numerator.exact_div(&denominator)
}

/// The direct coefficient form
/// `sum_i (a_i - a_{n-2-i}) (t^{2i} + ... + t^{2(n-3-i)})` over
/// `i = 0..=m-2`, `m = floor((n+1)/2)`.
pub fn p3_closed(l: &LengthVector) -> Result<IntPolynomial> {
    let stats = l.short_set_stats()?;
    let n = l.n() as i64;
    let m = (n + 1) / 2;
    let mut acc = IntPolynomial::zero();
    for i in 0..=m - 2 {
        let c = stats.c(i);
        if c == 0 {
            continue;
        }
        let run = IntPolynomial::geometric(2, n - 2 - 2 * i).shift(2 * i as usize);
        acc = &acc + &(&IntPolynomial::constant(BigInt::from(c)) * &run);
    }
    Ok(acc)
}

/// Rational Poincaré polynomial of the relative pair `(X^k_d, dX^k_d)`.
/// Zero for `k < d - 2`, where the relative complex collapses.
pub fn pair_poincare(d: i64, k: i64) -> IntPolynomial {
    assert!(d >= 4, "pair polynomials need d >= 4");
    assert!(k >= 0);
    if d % 2 == 0 {
        let m = (d - 4) / 2;
        let tuples = nabla_enumerate(m as usize, k - 2 * m - 1);
        let mut acc = IntPolynomial::zero();
        for j in tuples {
            let shift = k + (m + 1) * (2 * m + 3) + 4 * nabla_weight(&j) as i64;
            let run = IntPolynomial::geometric((2 * m + 2) as usize, k - 2 * m - nabla_norm(&j));
            acc = &acc + &run.shift(shift as usize);
        }
        acc
    } else {
        let m = (d - 5) / 2;
        let tuples = nabla_enumerate(m as usize, k - 2 * m - 2);
        if tuples.is_empty() {
            return IntPolynomial::zero();
        }
        let u = (2 * m + 4) * k - (2 * m + 3) * (m + 1) - 4 * (m + 1) * (k - 2 * m - 3).div_euclid(2);
        let mut acc = IntPolynomial::zero();
        for j in tuples {
            let shift = u + 4 * nabla_weight(&j) as i64;
            let terms = (k - 2 * m - nabla_norm(&j)).div_euclid(2);
            let run = IntPolynomial::geometric((4 * (m + 1)) as usize, terms);
            acc = &acc + &run.shift(shift as usize);
        }
        acc
    }
}

/// The closed forms of `P^k_d` for `d = 4, 5, 6, 7`; must agree with
/// [`pair_poincare`].
pub fn pair_poincare_closed(d: i64, k: i64) -> Result<IntPolynomial> {
    assert!(k >= 0);
    match d {
        4 => Ok(IntPolynomial::geometric(2, k - 1).shift((k + 3) as usize)),
        5 => {
            let half = (k - 3).div_euclid(2);
            if half < 0 {
                return Ok(IntPolynomial::zero());
            }
            let shift = 4 * k - 4 * half - 3;
            Ok(IntPolynomial::geometric(4, half + 1).shift(shift as usize))
        }
        6 => Ok(q_poly(k - 4).compose_t_power(4).shift((k + 10) as usize)),
        7 => {
            let half = (k - 5).div_euclid(2);
            if half < 0 {
                return Ok(IntPolynomial::zero());
            }
            let shift = 6 * k - 8 * half - 10;
            let body = &q_poly(half).compose_t_power(8)
                + &q_poly(half - 1).compose_t_power(8).shift(4);
            Ok(body.shift(shift as usize))
        }
        _ => Err(Error::UnsupportedDimension { d }),
    }
}

/// Rational Poincaré polynomial of `M_d(l)` for odd `d = 2m + 5`:
/// `a_0 + sum_{k=2m+3}^{n-3} mu_k P^k_d(t)`. Even `d` is refused; the
/// filtration only splits rationally in odd ambient dimension.
pub fn poincare_odd(l: &LengthVector, d: i64) -> Result<IntPolynomial> {
    if d % 2 == 0 {
        return Err(Error::EvenDimension { d });
    }
    if d < 5 {
        return Err(Error::UnsupportedDimension { d });
    }
    let m = (d - 5) / 2;
    let mu = l.morse_numbers()?.mu;
    let n = l.n() as i64;
    let mut acc = IntPolynomial::one();
    for k in 2 * m + 3..=n - 3 {
        let count = mu[k as usize];
        if count == 0 {
            continue;
        }
        let pair = pair_poincare(d, k);
        acc = &acc + &(&IntPolynomial::constant(BigInt::from(count)) * &pair);
    }
    Ok(acc)
}

/// Closed form for `d = 5`:
/// `1 + t^9 sum_i (a_i - a_{n-2-i}) (Q_{n-6-i}(t^4) - Q_{i-4}(t^4))`.
pub fn p5_closed(l: &LengthVector) -> Result<IntPolynomial> {
    let n = l.n() as i64;
    if n < 5 {
        return Err(Error::TooShort {
            n: l.n(),
            min: 5,
        });
    }
    let stats = l.short_set_stats()?;
    if !stats.a0_nonempty {
        return Err(Error::EmptyModuli);
    }
    let m = (n + 1) / 2;
    let mut acc = IntPolynomial::zero();
    for i in 0..=m - 2 {
        let c = stats.c(i);
        if c == 0 {
            continue;
        }
        let body = &q_poly(n - 6 - i).compose_t_power(4) - &q_poly(i - 4).compose_t_power(4);
        acc = &acc + &(&IntPolynomial::constant(BigInt::from(c)) * &body);
    }
    Ok(&IntPolynomial::one() + &acc.shift(9))
}

/// Dimension, connectivity, and (when `d = n - 1`) the sphere dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct DimInfo {
    pub dimension: i64,
    pub connectivity: i64,
    pub sphere_dimension: Option<i64>,
}

/// `dim M_d(l) = (n-3)(d-1) - (d-2)(d-3)/2` for `n >= d`; for `n < d` the
/// space agrees with `M_n(l)`, of dimension `n(n-3)/2`. The space is always
/// `((d-1)(d-2)/2 + d-3)`-connected, and for `d = n - 1` it is a sphere of
/// dimension `n(n-3)/2`.
pub fn dim_and_connectivity(n: i64, d: i64) -> DimInfo {
    assert!(n >= 3 && d >= 3);
    let dimension = if n >= d {
        (n - 3) * (d - 1) - (d - 2) * (d - 3) / 2
    } else {
        n * (n - 3) / 2
    };
    DimInfo {
        dimension,
        connectivity: (d - 1) * (d - 2) / 2 + d - 3,
        sphere_dimension: (d == n - 1).then(|| n * (n - 3) / 2),
    }
}
