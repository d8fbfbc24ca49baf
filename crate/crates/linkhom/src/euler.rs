//! Euler characteristics for even ambient dimension, where the rational
//! homology of the filtration does not split but its Euler characteristic
//! still adds up, plus the Morse-type Betti bounds that survive.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::betti::nabla_enumerate;
use crate::error::Error;
use crate::lengths::LengthVector;
use crate::Result;

/// Euler characteristic of the relative pair `(X^k_d, dX^k_d)` for even `d`.
///
/// `X^0_d` is a point with empty boundary, so `k = 0` gives 1. For `k >= 1`
/// this agrees with `pair_poincare(d, k)` evaluated at `t = -1`; torsion never
/// enters an Euler characteristic.
pub fn chi_pair_even(d: i64, k: i64) -> Result<BigInt> {
    if d % 2 != 0 {
        return Err(Error::UnsupportedDimension { d });
    }
    assert!(d >= 4 && k >= 0);
    if k == 0 {
        return Ok(BigInt::from(1));
    }
    let m = (d - 4) / 2;
    let half = k / 2;
    let top = half - m - 1;
    if top < 0 {
        return Ok(BigInt::zero());
    }
    let tuples = nabla_enumerate(m as usize, 2 * top + 1);
    let mut sum = BigInt::zero();
    for j in tuples {
        let j1 = j.first().copied().unwrap_or(0) as i64;
        let base = 2 * half - 2 * m - 2 * j1;
        sum += if k % 2 == 0 { base - 1 } else { base };
    }
    let sign_exp = if k % 2 == 0 { m + 1 } else { m };
    Ok(if sign_exp % 2 == 0 { sum } else { -sum })
}

fn stats_with_a0(l: &LengthVector, min_n: usize) -> Result<crate::lengths::ShortSetStats> {
    if l.n() < min_n {
        return Err(Error::TooShort { n: l.n(), min: min_n });
    }
    let stats = l.short_set_stats()?;
    if !stats.a0_nonempty {
        return Err(Error::EmptyModuli);
    }
    Ok(stats)
}

/// `chi(M_4(l))` in closed form, for generic `l` with nonempty moduli and
/// `n >= 5`:
/// for `n = 2k`, `sum_i (-1)^i c_i (k-1-i)`; for `n = 2k-1`,
/// `-(k-3) sum_i (-1)^i c_i`, with `c_i = a_i - a_{n-2-i}`.
pub fn chi_m4(l: &LengthVector) -> Result<BigInt> {
    let stats = stats_with_a0(l, 5)?;
    let n = l.n() as i64;
    let k = (n + 1) / 2; // n = 2k or 2k - 1
    let mut acc = BigInt::zero();
    for i in 0..=k - 2 {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let term = BigInt::from(sign * stats.c(i));
        if n % 2 == 0 {
            acc += term * BigInt::from(k - 1 - i);
        } else {
            acc += term;
        }
    }
    Ok(if n % 2 == 0 { acc } else { acc * BigInt::from(3 - k) })
}

/// `chi(M_6(l))` in closed form, for generic `l` with nonempty moduli and
/// `n >= 7`. Floor expressions follow the filtration proof; the
/// filtration-additivity oracle in [`crate::oracle`] certifies the reading.
pub fn chi_m6(l: &LengthVector) -> Result<BigInt> {
    let stats = stats_with_a0(l, 7)?;
    let n = l.n() as i64;
    let k = (n + 1) / 2;
    let mut twice = BigInt::zero();
    for i in 0..=k - 2 {
        let c = BigInt::from(stats.c(i));
        if c.is_zero() {
            continue;
        }
        let tail = (i - 3).div_euclid(2) * (i - 1).div_euclid(2);
        let term = if n % 2 == 0 {
            let f = i.div_euclid(2);
            let body = (k - 3 - f) * (k - 2 - f) - tail;
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            BigInt::from(sign * body) * c
        } else {
            let f = (i + 1).div_euclid(2);
            let body = (k - 3 - f) * (k - 2 - f) + tail;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            BigInt::from(sign * body) * c
        };
        twice += term;
    }
    let two = BigInt::from(2);
    assert!((&twice % &two).is_zero(), "chi(M_6) sum must be even");
    Ok(twice / two)
}

/// Kamiyama's equilateral value `(-1)^m (m-2) C(2m-1, m-1)`, which must match
/// `chi_m4` on `(1, ..., 1)` with `2m + 1` entries.
pub fn kamiyama_equilateral(m: i64) -> BigInt {
    assert!(m >= 2);
    let value = BigInt::from(m - 2) * binomial(2 * m - 1, m - 1);
    if m % 2 == 0 {
        value
    } else {
        -value
    }
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// A statement about one Betti number of `M_d(l)`: bounds, and optionally an
/// exact difference against the next degree up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiBound {
    pub degree: i64,
    pub lower: BigInt,
    pub upper: BigInt,
    /// When present: `b_degree - b_{degree+1}` exactly.
    pub exact_difference: Option<BigInt>,
}

/// Morse-type bounds on the high Betti numbers of `M_4(l)` and `M_6(l)`.
///
/// For `d = 4` the top cell of each of the `c_1 + c_0` copies of `X^{n-4}`
/// lands in degree `3(n-1)-10`; nothing below can touch those classes, and
/// one degree up only the single final `X^{n-3}` contributes (at most `a_0`
/// classes), whose connecting map cancels in matched pairs. That gives
/// `c_1 + c_0 - a_0 <= b_{3(n-1)-10} <= c_1 + c_0` and the exact difference
/// `b_{3(n-1)-10} - b_{3(n-1)-9} = c_1 + c_0 - a_0`. One degree further down,
/// `c_2 - c_1 <= b_{3(n-2)-10} <= c_2 + c_1 + 2 c_0`. For `d = 6` the final
/// complex meets the critical degree with coefficient 2, so the cancellation
/// budget doubles.
pub fn betti_bounds(l: &LengthVector, d: i64) -> Result<Vec<BettiBound>> {
    let n = l.n() as i64;
    let min_n = match d {
        4 => 6,
        6 => 9,
        _ => return Err(Error::UnsupportedDimension { d }),
    };
    let stats = stats_with_a0(l, min_n as usize)?;
    let a0 = stats.a(0);
    let (c0, c1, c2) = (stats.c(0), stats.c(1), stats.c(2));
    let mut out = Vec::new();
    match d {
        4 => {
            out.push(BettiBound {
                degree: 3 * (n - 1) - 10,
                lower: BigInt::from(c1 + c0 - a0),
                upper: BigInt::from(c1 + c0),
                exact_difference: Some(BigInt::from(c1 + c0 - a0)),
            });
            if n >= 7 {
                out.push(BettiBound {
                    degree: 3 * (n - 2) - 10,
                    lower: BigInt::from(c2 - c1),
                    upper: BigInt::from(c2 + c1 + 2 * c0),
                    exact_difference: None,
                });
            }
        }
        6 => {
            out.push(BettiBound {
                degree: 5 * (n - 1) - 21,
                lower: BigInt::from((c1 + c0 - 2 * a0).max(0)),
                upper: BigInt::from(c1 + c0),
                exact_difference: Some(BigInt::from(c1 + c0 - 2 * a0)),
            });
            if n >= 10 {
                out.push(BettiBound {
                    degree: 5 * (n - 2) - 21,
                    lower: BigInt::from(c2 - c1 - c0),
                    upper: BigInt::from(c2 + c1 + c0),
                    exact_difference: None,
                });
            }
        }
        _ => unreachable!(),
    }
    debug_assert!(out.iter().all(|b| b.lower <= b.upper));
    Ok(out)
}
