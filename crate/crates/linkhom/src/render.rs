//! Text renderings of polynomials: plain, LaTeX, and JSON.

use num_traits::{One, Signed, Zero};

use crate::poly::IntPolynomial;

fn render(p: &IntPolynomial, star: bool, braces: bool) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (deg, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let show_coeff = deg == 0 || !mag.is_one();
        if show_coeff {
            out.push_str(&mag.to_string());
        }
        if deg > 0 {
            if show_coeff && star {
                out.push('*');
            }
            out.push('t');
            if deg > 1 {
                if braces {
                    out.push_str(&format!("^{{{deg}}}"));
                } else {
                    out.push_str(&format!("^{deg}"));
                }
            }
        }
    }
    out
}

/// Plain text, e.g. `1 + 2*t^9 + t^13`.
pub fn plain(p: &IntPolynomial) -> String {
    render(p, true, false)
}

/// LaTeX source, e.g. `1 + 2t^{9} + t^{13}`.
pub fn latex(p: &IntPolynomial) -> String {
    render(p, false, true)
}

/// JSON object `{"coeffs":[...]}` with exact integer coefficients, dense from
/// degree zero.
pub fn json(p: &IntPolynomial) -> serde_json::Value {
    let coeffs: Vec<serde_json::Value> = p
        .coeffs()
        .iter()
        .map(|c| {
            serde_json::Value::Number(
                serde_json::Number::from_string_unchecked(c.to_string()),
            )
        })
        .collect();
    serde_json::json!({ "coeffs": coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_examples() {
        let p = IntPolynomial::from_i64_coeffs(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 1]);
        assert_eq!(plain(&p), "1 + 2*t^9 + t^13");
        assert_eq!(latex(&p), "1 + 2t^{9} + t^{13}");
        assert_eq!(plain(&IntPolynomial::zero()), "0");
        assert_eq!(plain(&IntPolynomial::from_i64_coeffs(&[0, 1])), "t");
        assert_eq!(plain(&IntPolynomial::from_i64_coeffs(&[-2, -1])), "-2 - t");
    }

    #[test]
    fn json_roundtrip_matches_coeffs() {
        let p = IntPolynomial::from_i64_coeffs(&[3, 0, -5]);
        let v = json(&p);
        assert_eq!(v["coeffs"][0].to_string(), "3");
        assert_eq!(v["coeffs"][2].to_string(), "-5");
    }
}
