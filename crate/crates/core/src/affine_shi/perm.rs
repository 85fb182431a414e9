use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An element of the affine symmetric group in window notation
/// `[f(1), ..., f(n)]`, extended by `f(i + n) = f(i) + n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

/// Splits `v` as `ρ + n q` with `ρ` in `[1, n]`.
fn split(v: i64, n: i64) -> (i64, i64) {
    let q = (v - 1).div_euclid(n);
    (v - n * q, q)
}

impl AffinePermutation {
    /// Checks that the window entries are distinct modulo `n` and that
    /// `Σ (f(i) - i) = 0`.
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len() as i64;
        if n == 0 {
            return Err(Error::RankTooSmall { n: 0, min: 1 });
        }
        let mut seen = vec![false; n as usize];
        for &v in &window {
            let r = split(v, n).0 as usize - 1;
            if std::mem::replace(&mut seen[r], true) {
                return Err(Error::InvalidWindow { window });
            }
        }
        let drift: i64 = window.iter().zip(1..).map(|(&v, i)| v - i).sum();
        if drift != 0 {
            return Err(Error::InvalidWindow { window });
        }
        Ok(AffinePermutation { window })
    }

    pub fn identity(n: usize) -> Self {
        AffinePermutation {
            window: (1..=n as i64).collect(),
        }
    }

    /// `s_i` for `1 <= i < n` swaps `i` and `i + 1`; `s_0` has window
    /// `[0, 2, ..., n-1, n+1]`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::RankTooSmall { n, min: 2 });
        }
        if i >= n {
            return Err(Error::GeneratorOutOfRange { i, n });
        }
        let mut window: Vec<i64> = (1..=n as i64).collect();
        if i == 0 {
            window[0] = 0;
            window[n - 1] = n as i64 + 1;
        } else {
            window.swap(i - 1, i);
        }
        Ok(AffinePermutation { window })
    }

    /// Translation by `t`, i.e. window `i + n t_i`. Needs `Σ t_i = 0`.
    pub fn translation(t: &[i64]) -> Result<Self> {
        let n = t.len() as i64;
        AffinePermutation::new(t.iter().zip(1..).map(|(&ti, i)| i + n * ti).collect())
    }

    pub fn rank(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().zip(1..).all(|(&v, i)| v == i)
    }

    /// `f(i)` for any integer `i`.
    pub fn eval(&self, i: i64) -> i64 {
        let n = self.rank() as i64;
        let (r, q) = split(i, n);
        self.window[r as usize - 1] + n * q
    }

    fn check_rank(&self, other: usize) -> Result<()> {
        if self.rank() != other {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other,
            });
        }
        Ok(())
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &AffinePermutation) -> Result<Self> {
        self.check_rank(other.rank())?;
        Ok(AffinePermutation {
            window: other.window.iter().map(|&v| self.eval(v)).collect(),
        })
    }

    pub fn invert(&self) -> Self {
        let n = self.rank() as i64;
        let mut window = vec![0; self.rank()];
        for (i, &v) in (1..).zip(&self.window) {
            let (r, q) = split(v, n);
            window[r as usize - 1] = i - n * q;
        }
        AffinePermutation { window }
    }

    /// Coxeter length: `Σ_{i<j} |⌊(f(j) - f(i)) / n⌋|`.
    pub fn length(&self) -> usize {
        let n = self.rank() as i64;
        let mut len = 0;
        for i in 0..self.window.len() {
            for j in i + 1..self.window.len() {
                len += (self.window[j] - self.window[i])
                    .div_euclid(n)
                    .unsigned_abs() as usize;
            }
        }
        len
    }

    /// The action on `R^n`: writing `f(i) = σ(i) + n r_i`, coordinate `σ(i)`
    /// of the image is `x_i + r_i`. So `s_i` swaps `x_i` and `x_{i+1}`, and
    /// `s_0` sends `x` to `(x_n + 1, x_2, ..., x_{n-1}, x_1 - 1)`.
    pub fn act(&self, pt: &RationalPoint) -> Result<RationalPoint> {
        self.check_rank(pt.dim())?;
        let n = self.rank() as i64;
        let mut out = vec![Rational64::zero(); self.rank()];
        for (x, &v) in pt.0.iter().zip(&self.window) {
            let (r, q) = split(v, n);
            out[r as usize - 1] = x + Rational64::from_integer(q);
        }
        Ok(RationalPoint(out))
    }

    /// An interior point of this alcove: the image of
    /// `((n-1)/n, ..., 1/n, 0)`, which sits inside the fundamental alcove.
    pub fn alcove_sample(&self) -> RationalPoint {
        self.act(&RationalPoint::fundamental_sample(self.rank()))
            .expect("ranks agree")
    }

    /// The alcove containing a generic point. Walks the point back into the
    /// fundamental alcove one wall at a time, collecting the reflections.
    pub fn alcove_of(pt: &RationalPoint) -> Result<Self> {
        let n = pt.dim();
        let mut u = AffinePermutation::identity(n);
        if n < 2 {
            return Ok(u);
        }
        let mut x = pt.clone();
        let gens: Vec<_> = (0..n)
            .map(|i| AffinePermutation::generator(n, i).expect("valid index"))
            .collect();
        loop {
            let wall = (1..n)
                .find(|&i| x.0[i - 1] <= x.0[i])
                .or_else(|| (x.0[0] - x.0[n - 1] >= Rational64::one()).then_some(0));
            let Some(i) = wall else {
                return Ok(u);
            };
            if i > 0 && x.0[i - 1] == x.0[i] {
                return Err(Error::DegeneratePoint { i, j: i + 1, s: 0 });
            }
            if i == 0 && x.0[0] - x.0[n - 1] == Rational64::one() {
                return Err(Error::DegeneratePoint { i: 1, j: n, s: 1 });
            }
            x = gens[i].act(&x)?;
            u = u.compose(&gens[i])?;
        }
    }
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self.window.iter().map(i64::to_string).collect();
        write!(f, "[{}]", entries.join(","))
    }
}

impl FromStr for AffinePermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let window = inner
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidWindow { window: Vec::new() })?;
        AffinePermutation::new(window)
    }
}

/// A point of `R^n` with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(pub Vec<Rational64>);

impl RationalPoint {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `((n-1)/n, (n-2)/n, ..., 0)`.
    pub fn fundamental_sample(n: usize) -> Self {
        let d = n as i64;
        RationalPoint((1..=d).map(|i| Rational64::new(d - i, d)).collect())
    }

    pub fn translate(&self, t: &[i64]) -> Self {
        RationalPoint(
            self.0
                .iter()
                .zip(t)
                .map(|(x, &ti)| x + Rational64::from_integer(ti))
                .collect(),
        )
    }

    /// `x_1 > x_2 > ... > x_n`.
    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", coords.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    fn perm(s: &str) -> AffinePermutation {
        s.parse().unwrap()
    }

    #[test]
    fn generators() {
        assert_eq!(AffinePermutation::generator(3, 1).unwrap(), perm("[2,1,3]"));
        assert_eq!(AffinePermutation::generator(3, 0).unwrap(), perm("[0,2,4]"));
        assert!(AffinePermutation::generator(3, 3).is_err());
        for n in 2..6 {
            for i in 0..n {
                let s = AffinePermutation::generator(n, i).unwrap();
                assert!(s.compose(&s).unwrap().is_identity());
                assert_eq!(s.length(), 1);
            }
        }
    }

    #[test]
    fn windows_are_validated() {
        assert!(AffinePermutation::new(vec![1, 4, 3]).is_err());
        assert!(AffinePermutation::new(vec![2, 2, 2]).is_err());
        assert!(AffinePermutation::new(vec![-1, 6, 1]).is_ok());
    }

    #[test]
    fn inverse_and_eval() {
        let u = perm("[-1,6,1]");
        assert!(u.compose(&u.invert()).unwrap().is_identity());
        assert!(u.invert().compose(&u).unwrap().is_identity());
        assert_eq!(u.eval(4), 2);
        assert_eq!(u.eval(0), -2);
        assert!(u.compose(&AffinePermutation::identity(4)).is_err());
    }

    #[test]
    fn act_examples() {
        let pt = RationalPoint(vec![r(1, 2), r(1, 3), r(1, 5)]);
        let s0 = AffinePermutation::generator(3, 0).unwrap();
        assert_eq!(
            s0.act(&pt).unwrap(),
            RationalPoint(vec![r(6, 5), r(1, 3), r(-1, 2)])
        );
        assert_eq!(AffinePermutation::identity(3).act(&pt).unwrap(), pt);
        let s1 = AffinePermutation::generator(3, 1).unwrap();
        assert_eq!(
            s1.alcove_sample(),
            RationalPoint(vec![r(1, 3), r(2, 3), r(0, 1)])
        );
    }

    #[test]
    fn alcove_of_recovers_the_alcove() {
        let u = perm("[-1,6,1]");
        assert_eq!(AffinePermutation::alcove_of(&u.alcove_sample()).unwrap(), u);
        let on_wall = RationalPoint(vec![r(1, 2), r(1, 2), r(0, 1)]);
        assert!(AffinePermutation::alcove_of(&on_wall).is_err());
    }
}
