//! Exact q-analogues and exact verification of the cyclic sieving phenomenon.
//!
//! A triple `(X, X(q), C_n)` exhibits cyclic sieving when `X(ω^c)` equals the
//! number of elements fixed by `c` rotations, for `ω` a primitive `n`-th root
//! of unity. The verdict here never touches floating point: `p(ω^c) = t` is
//! decided by reducing `p - t` modulo a cyclotomic polynomial.

mod poly;

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub use poly::IntPolynomial;

/// `∏_{i=1}^{k} (1 + q^i + q^{2i} + ... + q^{(m-1)i})`, the generating
/// function `[m]_{q}[m]_{q^2}...[m]_{q^k}` for `W(m, k)`.
///
/// Each factor is entered as its expanded geometric sum, so no division
/// happens here.
pub fn w_poly(m: u32, k: usize) -> IntPolynomial {
    (1..=k).fold(IntPolynomial::one(), |acc, i| {
        let mut coeffs = vec![BigInt::zero(); (m as usize - 1) * i + 1];
        for j in 0..m as usize {
            coeffs[j * i] = BigInt::from(1);
        }
        &acc * &IntPolynomial::new(coeffs)
    })
}

/// The `d`-th cyclotomic polynomial, by exact division of `q^d - 1` by the
/// cyclotomic polynomials of the proper divisors of `d`.
pub fn cyclotomic(d: u64) -> IntPolynomial {
    assert!(d >= 1, "cyclotomic polynomials are indexed from 1");
    let mut table: BTreeMap<u64, IntPolynomial> = BTreeMap::new();
    for e in divisors(d) {
        let mut quotient = &IntPolynomial::monomial(1, e as usize) - &IntPolynomial::one();
        for f in divisors(e).into_iter().filter(|&f| f < e) {
            let (q, r) = quotient.div_rem_monic(&table[&f]);
            assert!(r.is_zero(), "Φ_{f} does not divide q^{e} - 1 exactly");
            quotient = q;
        }
        table.insert(e, quotient);
    }
    table.remove(&d).expect("d divides itself")
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|&e| n.is_multiple_of(e)).collect()
}

/// Decides exactly whether `p(ω^c) = target` for `ω` a primitive `n`-th root
/// of unity.
pub fn equals_at_root(p: &IntPolynomial, n: u64, c: u64, target: i64) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    if c >= n {
        return Err(Error::RotationOutOfRange { c, n });
    }
    let g = n.gcd(&c);
    let d = n / g;
    // ω^c is a primitive d-th root ζ raised to c/g, with gcd(c/g, d) = 1
    let folded = p.fold_exponents(c / g, d);
    let shifted = &folded - &IntPolynomial::constant(target);
    if d == 1 {
        return Ok(shifted.is_zero());
    }
    let (_, rem) = shifted.div_rem_monic(&cyclotomic(d));
    Ok(rem.is_zero())
}

/// One rotation amount in a [`CspReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct CspRow {
    pub c: u64,
    pub fixed: u64,
    pub matches: bool,
    /// `p(exp(2πi c / n))` in floating point; advisory only.
    pub approx: Complex64,
}

/// Both sides of the cyclic sieving identity for every `c` in `[0, n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CspReport {
    pub n: u64,
    pub size: usize,
    pub rows: Vec<CspRow>,
}

#[derive(Serialize)]
struct JsonRow {
    c: u64,
    fixed: u64,
    #[serde(rename = "match")]
    matches: bool,
}

#[derive(Serialize)]
struct JsonReport {
    n: u64,
    rows: Vec<JsonRow>,
}

impl CspReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }

    pub fn mismatches(&self) -> Vec<u64> {
        self.rows
            .iter()
            .filter(|r| !r.matches)
            .map(|r| r.c)
            .collect()
    }

    /// `{n, rows: [{c, fixed, match}]}`.
    pub fn to_json(&self) -> String {
        let report = JsonReport {
            n: self.n,
            rows: self
                .rows
                .iter()
                .map(|r| JsonRow {
                    c: r.c,
                    fixed: r.fixed,
                    matches: r.matches,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&report).expect("report serializes")
    }

    /// Aligned text table, one line per rotation amount.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:>4}  {:>10}  {:>26}  {:>5}",
            "c", "fixed", "p(w^c)", "match"
        )
        .unwrap();
        for r in &self.rows {
            // -0.000 is noise
            let re = if r.approx.re.abs() < 5e-7 {
                0.0
            } else {
                r.approx.re
            };
            let im = if r.approx.im.abs() < 5e-7 {
                0.0
            } else {
                r.approx.im
            };
            let value = format!("{re:.6}{im:+.6}i");
            writeln!(
                out,
                "{:>4}  {:>10}  {:>26}  {:>5}",
                r.c,
                r.fixed,
                value,
                if r.matches { "yes" } else { "NO" }
            )
            .unwrap();
        }
        out
    }
}

/// Checks the cyclic sieving identity for `elements` under `action`, a map of
/// order dividing `n`, against the polynomial `p`.
///
/// The fixed-point counts are derived from each element's orbit period; the
/// per-element work is spread over the rayon pool and summed, so the result
/// does not depend on scheduling.
pub fn csp_check<T, F>(elements: &[T], action: F, n: u64, p: &IntPolynomial) -> Result<CspReport>
where
    T: PartialEq + Sync,
    F: Fn(&T) -> T + Sync,
{
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let periods: Vec<Option<u64>> = elements
        .par_iter()
        .map(|x| {
            let mut y = action(x);
            let mut s = 1;
            while y != *x {
                if s >= n {
                    return None;
                }
                y = action(&y);
                s += 1;
            }
            n.is_multiple_of(s).then_some(s)
        })
        .collect();
    if let Some(index) = periods.iter().position(Option::is_none) {
        return Err(Error::ActionOrder { n, index });
    }
    let mut by_period: BTreeMap<u64, u64> = BTreeMap::new();
    for s in periods.into_iter().flatten() {
        *by_period.entry(s).or_default() += 1;
    }

    let rows = (0..n)
        .map(|c| {
            let fixed: u64 = by_period
                .iter()
                .filter(|(&s, _)| c % s == 0)
                .map(|(_, &count)| count)
                .sum();
            let matches = equals_at_root(p, n, c, fixed as i64)?;
            let z = Complex64::from_polar(1.0, TAU * c as f64 / n as f64);
            Ok(CspRow {
                c,
                fixed,
                matches,
                approx: p.eval_complex(z),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CspReport {
        n,
        size: elements.len(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{enumerate_w, Word};

    #[test]
    fn w_poly_m4_k2() {
        // (1+q+q^2+q^3)(1+q^2+q^4+q^6), counted by hand
        let expected = IntPolynomial::from_i64(&[1, 1, 2, 2, 2, 2, 2, 2, 1, 1]);
        assert_eq!(w_poly(4, 2), expected);
        assert_eq!(w_poly(4, 2).eval_one(), BigInt::from(16));
    }

    #[test]
    fn w_poly_trivial() {
        assert_eq!(w_poly(7, 0), IntPolynomial::one());
        assert_eq!(w_poly(1, 5), IntPolynomial::one());
        for m in 1..=5u32 {
            for k in 0..=4usize {
                assert_eq!(w_poly(m, k).eval_one(), BigInt::from(m).pow(k as u32));
            }
        }
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(3), IntPolynomial::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(6), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), IntPolynomial::from_i64(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn equals_at_root_examples() {
        let p = w_poly(4, 2);
        assert!(equals_at_root(&p, 3, 0, 16).unwrap());
        assert!(equals_at_root(&p, 3, 1, 1).unwrap());
        assert!(!equals_at_root(&p, 3, 1, 2).unwrap());
        assert!(equals_at_root(&p, 3, 2, 1).unwrap());
        assert!(matches!(
            equals_at_root(&p, 3, 3, 1),
            Err(Error::RotationOutOfRange { c: 3, n: 3 })
        ));
    }

    #[test]
    fn csp_w42() {
        let ws = enumerate_w(4, 2).unwrap();
        let report = csp_check(&ws, Word::rotate_left, 3, &w_poly(4, 2)).unwrap();
        assert!(report.passed());
        assert_eq!(report.rows[0].fixed, 16);
        assert_eq!(report.rows[1].fixed, 1);
        assert_eq!(report.rows[2].fixed, 1);
    }

    #[test]
    fn csp_w24_against_brute_force() {
        let ws = enumerate_w(2, 4).unwrap();
        let report = csp_check(&ws, Word::rotate_left, 5, &w_poly(2, 4)).unwrap();
        assert!(report.passed());
        for row in &report.rows {
            let brute = ws
                .iter()
                .filter(|w| {
                    let mut x = (*w).clone();
                    for _ in 0..row.c {
                        x = x.rotate_left();
                    }
                    x == **w
                })
                .count() as u64;
            assert_eq!(row.fixed, brute);
        }
    }

    #[test]
    fn csp_detects_wrong_polynomial() {
        let ws = enumerate_w(4, 2).unwrap();
        let wrong = IntPolynomial::constant(16);
        let report = csp_check(&ws, Word::rotate_left, 3, &wrong).unwrap();
        assert_eq!(report.mismatches(), vec![1, 2]);
    }

    #[test]
    fn csp_rejects_bad_order() {
        let ws = enumerate_w(4, 2).unwrap();
        let err = csp_check(&ws, Word::rotate_left, 2, &w_poly(4, 2)).unwrap_err();
        assert!(matches!(err, Error::ActionOrder { n: 2, .. }));
    }

    #[test]
    fn json_schema() {
        let ws = enumerate_w(2, 1).unwrap();
        let report = csp_check(&ws, Word::rotate_left, 2, &w_poly(2, 1)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["rows"][0]["c"], 0);
        assert_eq!(v["rows"][0]["fixed"], 2);
        assert_eq!(v["rows"][1]["match"], true);
    }
}
