use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial in `q` with arbitrary-precision integer coefficients.
///
/// `coefficients()[j]` is the coefficient of `q^j`. Trailing zeros are always
/// trimmed, so the zero polynomial has no coefficients and no degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        IntPolynomial::new(vec![BigInt::from(c)])
    }

    /// `c * q^exp`.
    pub fn monomial(c: i64, exp: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = BigInt::from(c);
        IntPolynomial::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, exp: usize) -> BigInt {
        self.coeffs.get(exp).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Value at `q = 1`, i.e. the coefficient sum.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Floating-point evaluation by Horner's rule. Advisory only.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| {
            acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
        })
    }

    /// Division with remainder by a monic polynomial; exact over the integers.
    ///
    /// Panics if `divisor` is zero or not monic.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        assert!(
            divisor.coeffs[dd].is_one(),
            "div_rem_monic requires a monic divisor"
        );
        let Some(nd) = self.degree() else {
            return (IntPolynomial::zero(), IntPolynomial::zero());
        };
        if nd < dd {
            return (IntPolynomial::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for shift in (0..=nd - dd).rev() {
            let lead = rem[shift + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &lead * dc;
            }
            quot[shift] = lead;
        }
        rem.truncate(dd);
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }

    /// Reduces exponents modulo `d` under the map `j -> (j * mult) mod d`,
    /// summing colliding coefficients.
    pub fn fold_exponents(&self, mult: u64, d: u64) -> IntPolynomial {
        let mut out = vec![BigInt::zero(); d as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            let e = ((j as u128 * mult as u128) % d as u128) as usize;
            out[e] += c;
        }
        IntPolynomial::new(out)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|j| self.coefficient(j) + rhs.coefficient(j))
            .collect();
        IntPolynomial::new(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|j| self.coefficient(j) - rhs.coefficient(j))
            .collect();
        IntPolynomial::new(coeffs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (j, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{j}")?,
                (_, false) => write!(f, "{mag}q^{j}")?,
            }
        }
        Ok(())
    }
}
