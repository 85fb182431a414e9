use std::fmt;

use crate::error::{Error, Result};
use crate::words::Word;

/// An `m`-parking function of length `k`: sorted increasingly, the entries
/// satisfy `b_i <= m (i - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParkingFunction {
    m: u32,
    entries: Vec<u32>,
}

impl ParkingFunction {
    /// `None` unless `entries` is an `m`-parking function.
    pub fn new(entries: Vec<u32>, m: u32) -> Option<Self> {
        is_parking(&entries, m).then_some(ParkingFunction { m, entries })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// As a word over `Z/(km+1)Z`.
    pub fn to_word(&self) -> Word {
        let modulus = self.len() as u32 * self.m + 1;
        Word::new(modulus, self.entries.clone()).expect("entries are at most m(k-1)")
    }

    pub fn rotate_left(&self) -> Self {
        let mut entries = self.entries.clone();
        if !entries.is_empty() {
            entries.rotate_left(1);
        }
        ParkingFunction { m: self.m, entries }
    }
}

impl fmt::Display for ParkingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.iter().all(|&e| e < 10) {
            for e in &self.entries {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// Sorted increasingly, `b_i <= m (i - 1)` for every `i`.
pub fn is_parking(a: &[u32], m: u32) -> bool {
    let mut b = a.to_vec();
    b.sort_unstable();
    b.iter()
        .zip(0u64..)
        .all(|(&bi, i)| u64::from(bi) <= u64::from(m) * i)
}

/// Every `m`-parking function of length `k`, in lexicographic order.
pub fn all_parking_functions(k: usize, m: u32) -> Vec<ParkingFunction> {
    let top = m * k.saturating_sub(1) as u32;
    let mut out = Vec::new();
    let mut current = vec![0u32; k];
    loop {
        if let Some(pf) = ParkingFunction::new(current.clone(), m) {
            out.push(pf);
        }
        let Some(pos) = current.iter().rposition(|&e| e < top) else {
            return out;
        };
        current[pos] += 1;
        for e in &mut current[pos + 1..] {
            *e = 0;
        }
    }
}

/// The unique parking function in the coset `u + Z (1, ..., 1)` of
/// `(Z/(km+1)Z)^k`.
pub fn coset_parking(u: &Word, m: u32) -> Result<ParkingFunction> {
    let k = u.len() as u32;
    let n = k * m + 1;
    if u.modulus() != n {
        return Err(Error::ModulusMismatch {
            left: u.modulus(),
            right: n,
        });
    }
    let found: Vec<ParkingFunction> = (0..n)
        .filter_map(|c| {
            let shifted = u.letters().iter().map(|&x| (x + n - c) % n).collect();
            ParkingFunction::new(shifted, m)
        })
        .collect();
    match <[_; 1]>::try_from(found) {
        Ok([pf]) => Ok(pf),
        Err(found) => Err(Error::CosetParking {
            word: u.letters().to_vec(),
            found: found.len(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parking_examples() {
        assert!(is_parking(&[0, 0, 0], 1));
        assert!(is_parking(&[1, 1, 0], 1));
        assert!(!is_parking(&[0, 0, 3], 1));
        assert!(is_parking(&[2, 0], 2));
        assert!(!is_parking(&[1, 1], 2));
    }

    #[test]
    fn parking_counts() {
        // (km+1)^(k-1)
        for (k, m, count) in [
            (1, 3, 1),
            (2, 1, 3),
            (2, 2, 5),
            (3, 1, 16),
            (3, 2, 49),
            (4, 1, 125),
        ] {
            assert_eq!(all_parking_functions(k, m).len(), count, "k={k} m={m}");
        }
    }

    #[test]
    fn coset_examples() {
        let w = |s: &str, n| Word::parse(n, s).unwrap();
        assert_eq!(coset_parking(&w("003", 4), 1).unwrap().to_string(), "110");
        assert_eq!(coset_parking(&w("030", 4), 1).unwrap().to_string(), "101");
        assert_eq!(coset_parking(&w("20", 3), 1).unwrap().to_string(), "01");
        assert!(coset_parking(&w("20", 4), 1).is_err());
    }
}
