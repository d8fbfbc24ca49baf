//! Cross-check engine: every closed formula in the crate is wired against an
//! independent computation of the same quantity, and the outcomes are
//! reported as data rather than thrown.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::betti::{p3_closed, p3_hausmann_knutson, p3_klyachko, p3_recursive, pair_poincare,
    pair_poincare_closed, p5_closed, poincare_odd};
use crate::chains::{build_relative, homology, rational_basis_generators, build_e};
use crate::euler::{chi_m4, chi_m6, chi_pair_even};
use crate::lengths::{enumerate_chambers, LengthVector};
use crate::poly::IntPolynomial;

/// Outcome of one consistency check. A failing report carries both values
/// verbatim.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub details: String,
}

impl CheckReport {
    fn passed(check: &str, inputs: String, value: String) -> Self {
        CheckReport {
            check: check.into(),
            inputs,
            expected: value.clone(),
            actual: value,
            pass: true,
            details: String::new(),
        }
    }

    fn failed(check: &str, inputs: String, expected: String, actual: String, details: String) -> Self {
        CheckReport {
            check: check.into(),
            inputs,
            expected,
            actual,
            pass: false,
            details,
        }
    }

    fn rejected(check: &str, inputs: String, why: String) -> Self {
        CheckReport {
            check: check.into(),
            inputs,
            expected: String::new(),
            actual: String::new(),
            pass: false,
            details: format!("rejected before checking: {why}"),
        }
    }
}

/// The four `d = 3` formulas must produce one and the same polynomial.
pub fn check_p3_agreement(l: &LengthVector) -> CheckReport {
    let name = "p3_agreement";
    let inputs = l.to_string();
    let reference = match p3_recursive(l) {
        Ok(p) => p,
        Err(e) => return CheckReport::rejected(name, inputs, e.to_string()),
    };
    let routes: [(&str, crate::Result<IntPolynomial>); 3] = [
        ("klyachko", p3_klyachko(l)),
        ("hausmann_knutson", p3_hausmann_knutson(l)),
        ("closed", p3_closed(l)),
    ];
    for (label, result) in routes {
        match result {
            Ok(p) if p == reference => {}
            Ok(p) => {
                return CheckReport::failed(
                    name,
                    inputs,
                    reference.to_string(),
                    p.to_string(),
                    format!("{label} disagrees with the recursion"),
                )
            }
            Err(e) => {
                return CheckReport::failed(
                    name,
                    inputs,
                    reference.to_string(),
                    format!("error: {e}"),
                    format!("{label} failed"),
                )
            }
        }
    }
    CheckReport::passed(name, inputs, reference.to_string())
}

/// The `d = 5` closed form must agree with the Morse-filtration assembly.
pub fn check_p5_agreement(l: &LengthVector) -> CheckReport {
    let name = "p5_agreement";
    let inputs = l.to_string();
    let closed = match p5_closed(l) {
        Ok(p) => p,
        Err(e) => return CheckReport::rejected(name, inputs, e.to_string()),
    };
    match poincare_odd(l, 5) {
        Ok(assembled) if assembled == closed => {
            CheckReport::passed(name, inputs, closed.to_string())
        }
        Ok(assembled) => CheckReport::failed(
            name,
            inputs,
            assembled.to_string(),
            closed.to_string(),
            "closed form disagrees with the filtration assembly".into(),
        ),
        Err(e) => CheckReport::failed(
            name,
            inputs,
            String::new(),
            format!("error: {e}"),
            "filtration assembly failed".into(),
        ),
    }
}

/// Smith-normal-form homology of the relative summands, reassembled into a
/// polynomial, against the closed pair polynomial (and its `d <= 7`
/// specializations).
pub fn check_pair_vs_snf(d: i64, k: i64) -> CheckReport {
    let name = "pair_vs_snf";
    let inputs = format!("d={d}, k={k}");
    let closed = pair_poincare(d, k);
    let mut assembled = IntPolynomial::zero();
    match build_relative(d, k) {
        Ok(summands) => {
            for s in summands {
                assembled = &assembled + &homology(&s.complex).free_poincare(s.shift);
            }
        }
        Err(crate::Error::EmptyRange { .. }) => {}
        Err(e) => {
            return CheckReport::failed(
                name,
                inputs,
                closed.to_string(),
                format!("error: {e}"),
                "relative complex construction failed".into(),
            )
        }
    }
    if assembled != closed {
        return CheckReport::failed(
            name,
            inputs,
            closed.to_string(),
            assembled.to_string(),
            "chain-level homology disagrees with the pair polynomial".into(),
        );
    }
    if (4..=7).contains(&d) {
        let special = pair_poincare_closed(d, k).expect("dimension in closed-form range");
        if special != closed {
            return CheckReport::failed(
                name,
                inputs,
                closed.to_string(),
                special.to_string(),
                "closed-form specialization disagrees".into(),
            );
        }
    }
    CheckReport::passed(name, inputs, closed.to_string())
}

/// Closed Euler-characteristic formulas against the filtration sum
/// `sum_k mu_k chi(X^k_d, dX^k_d)`, which is additive even where homology
/// is not.
pub fn check_chi(l: &LengthVector, d: i64) -> CheckReport {
    let name = "chi_filtration";
    let inputs = format!("{l}, d={d}");
    let closed = match d {
        4 => chi_m4(l),
        6 => chi_m6(l),
        _ => Err(crate::Error::UnsupportedDimension { d }),
    };
    let closed = match closed {
        Ok(v) => v,
        Err(e) => return CheckReport::rejected(name, inputs, e.to_string()),
    };
    let mu = match l.morse_numbers() {
        Ok(m) => m.mu,
        Err(e) => return CheckReport::rejected(name, inputs, e.to_string()),
    };
    let mut filtration = BigInt::from(0);
    for (k, &count) in mu.iter().enumerate() {
        filtration += BigInt::from(count) * chi_pair_even(d, k as i64).expect("even d");
    }
    if filtration == closed {
        CheckReport::passed(name, inputs, closed.to_string())
    } else {
        CheckReport::failed(
            name,
            inputs,
            filtration.to_string(),
            closed.to_string(),
            "closed formula disagrees with the filtration sum".into(),
        )
    }
}

/// Free ranks of `H(E(m, j))` against the closed-form basis, and the torsion
/// restricted to order two.
pub fn check_generators(m: usize, j: i64) -> CheckReport {
    let name = "generators";
    let inputs = format!("m={m}, j={j}");
    let h = homology(&build_e(m, j));
    let mut expected: std::collections::BTreeMap<i64, usize> = Default::default();
    for (_, degree) in rational_basis_generators(m, j) {
        *expected.entry(degree).or_default() += 1;
    }
    for (&q, group) in &h.groups {
        if group.free_rank != expected.get(&q).copied().unwrap_or(0) {
            return CheckReport::failed(
                name,
                inputs,
                format!("rank {} in degree {q}", expected.get(&q).copied().unwrap_or(0)),
                format!("rank {} in degree {q}", group.free_rank),
                "free rank disagrees with the closed-form basis".into(),
            );
        }
        if let Some(bad) = group.torsion.iter().find(|t| **t != BigInt::from(2)) {
            return CheckReport::failed(
                name,
                inputs,
                "torsion of order 2 only".into(),
                format!("Z/{bad} in degree {q}"),
                "unexpected torsion".into(),
            );
        }
    }
    for (&q, &rank) in &expected {
        if rank != h.free_rank(q) {
            return CheckReport::failed(
                name,
                inputs,
                format!("rank {rank} in degree {q}"),
                format!("rank {} in degree {q}", h.free_rank(q)),
                "missing free classes".into(),
            );
        }
    }
    CheckReport::passed(name, inputs, format!("{h}"))
}

/// Deterministic corpus: integer vectors in `[1, 50]^n`, resampled until
/// generic (and, if requested, until the moduli space is nonempty).
pub fn random_generic_vectors(
    n: usize,
    count: usize,
    seed: u64,
    require_nonempty: bool,
) -> Vec<LengthVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64) << 32);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let entries: Vec<i64> = (0..n).map(|_| rng.random_range(1..=50)).collect();
        let v = LengthVector::from_ints(&entries).expect("positive entries");
        if !v.is_generic() {
            continue;
        }
        if require_nonempty && !v.short_set_stats().expect("generic").a0_nonempty {
            continue;
        }
        out.push(v);
    }
    out
}

/// Scope selector for the verification suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    All,
    P3,
    P5,
    Pair,
    Chi,
    Generators,
}

enum Task {
    P3(LengthVector),
    P5(LengthVector),
    Pair(i64, i64),
    Chi(LengthVector, i64),
    Generators(usize, i64),
}

impl Task {
    fn run(&self) -> CheckReport {
        match self {
            Task::P3(l) => check_p3_agreement(l),
            Task::P5(l) => check_p5_agreement(l),
            Task::Pair(d, k) => check_pair_vs_snf(*d, *k),
            Task::Chi(l, d) => check_chi(l, *d),
            Task::Generators(m, j) => check_generators(*m, *j),
        }
    }
}

/// Runs the oracle suite at desk scale. Checks are independent and execute
/// concurrently; the report order is deterministic in `seed` regardless of
/// the schedule.
pub fn run_suite(scope: Scope, seed: u64) -> Vec<CheckReport> {
    use rayon::prelude::*;
    let mut tasks = Vec::new();
    let wants = |s: Scope| scope == Scope::All || scope == s;

    if wants(Scope::P3) {
        for n in 4..=7 {
            for chamber in enumerate_chambers(n, true).expect("desk scale") {
                tasks.push(Task::P3(chamber.witness));
            }
        }
        for n in 4..=9 {
            for v in random_generic_vectors(n, 200, seed, false) {
                tasks.push(Task::P3(v));
            }
        }
    }
    if wants(Scope::P5) {
        for n in 5..=7 {
            for chamber in enumerate_chambers(n, true).expect("desk scale") {
                tasks.push(Task::P5(chamber.witness));
            }
        }
        for n in 5..=9 {
            for v in random_generic_vectors(n, 200, seed.wrapping_add(1), true) {
                tasks.push(Task::P5(v));
            }
        }
    }
    if wants(Scope::Pair) {
        for d in 4..=9 {
            for k in d - 2..=8 {
                tasks.push(Task::Pair(d, k));
            }
        }
    }
    if wants(Scope::Chi) {
        let tilde = LengthVector::from_ints(&[1, 1, 1, 1, 1, 1, 1, 6]).unwrap();
        let eight = LengthVector::from_ints(&[1, 1, 1, 1, 1, 3, 3, 6]).unwrap();
        let equilateral = LengthVector::from_ints(&[1; 7]).unwrap();
        for v in [&tilde, &eight, &equilateral] {
            tasks.push(Task::Chi(v.clone(), 4));
        }
        for v in [&tilde, &eight] {
            tasks.push(Task::Chi(v.clone(), 6));
        }
        for n in 5..=9 {
            for v in random_generic_vectors(n, 60, seed.wrapping_add(2), true) {
                if n >= 7 {
                    tasks.push(Task::Chi(v.clone(), 6));
                }
                tasks.push(Task::Chi(v, 4));
            }
        }
    }
    if wants(Scope::Generators) {
        for m in 0..=5usize {
            for j in 1..=8i64 {
                tasks.push(Task::Generators(m, j));
            }
        }
    }
    tasks.par_iter().map(Task::run).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(entries: &[i64]) -> LengthVector {
        LengthVector::from_ints(entries).unwrap()
    }

    #[test]
    fn p3_check_passes_worked_example() {
        let report = check_p3_agreement(&lv(&[1, 1, 1, 1, 1, 4]));
        assert!(report.pass, "{report:?}");
        assert_eq!(report.actual, "1 + t^2 + t^4 + t^6");
    }

    #[test]
    fn p3_check_rejects_nongeneric() {
        let report = check_p3_agreement(&lv(&[1, 1, 1, 1]));
        assert!(!report.pass);
        assert!(report.details.contains("rejected"));
    }

    #[test]
    fn p5_check_passes() {
        let report = check_p5_agreement(&lv(&[1, 1, 1, 1, 1, 4]));
        assert!(report.pass, "{report:?}");
        assert_eq!(report.actual, "1 + t^9");
    }

    #[test]
    fn pair_check_small() {
        assert!(check_pair_vs_snf(5, 3).pass);
        assert!(check_pair_vs_snf(6, 6).pass);
        assert!(check_pair_vs_snf(5, 2).pass); // below threshold: both zero
    }

    #[test]
    fn chi_check_examples() {
        assert!(check_chi(&lv(&[1, 1, 1, 1, 1, 1, 1, 6]), 4).pass);
        assert!(check_chi(&lv(&[1, 1, 1, 1, 1, 3, 3, 6]), 6).pass);
        assert!(check_chi(&lv(&[1; 7]), 4).pass);
    }

    #[test]
    fn generators_check_examples() {
        assert!(check_generators(1, 7).pass);
        assert!(check_generators(3, 2).pass);
        assert!(check_generators(2, 5).pass);
    }

    #[test]
    fn corpus_deterministic() {
        let a = random_generic_vectors(6, 5, 42, true);
        let b = random_generic_vectors(6, 5, 42, true);
        assert_eq!(a, b);
        assert!(a.iter().all(|v| v.is_generic()));
    }
}
