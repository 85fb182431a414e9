//! Words over `Z/mZ`, the set `W(m, k)` of words of length `k + 1` whose
//! letters sum to `m - 1`, and the rotation action on them.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A finite word over `Z/mZ`. Letters are always stored in `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    modulus: u32,
    letters: Vec<u32>,
}

impl Word {
    /// Builds a word, rejecting letters outside `[0, m)`.
    pub fn new(modulus: u32, letters: Vec<u32>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        if let Some((position, &letter)) = letters.iter().enumerate().find(|(_, &l)| l >= modulus) {
            return Err(Error::LetterOutOfRange {
                letter,
                position,
                modulus,
            });
        }
        Ok(Word { modulus, letters })
    }

    /// Builds a word from arbitrary integers, reducing each modulo `m`.
    pub fn from_residues(modulus: u32, values: impl IntoIterator<Item = i64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        let m = i64::from(modulus);
        let letters = values.into_iter().map(|v| v.rem_euclid(m) as u32).collect();
        Ok(Word { modulus, letters })
    }

    pub fn empty(modulus: u32) -> Result<Self> {
        Word::new(modulus, Vec::new())
    }

    /// The constant word `letter^len`.
    pub fn constant(modulus: u32, letter: u32, len: usize) -> Result<Self> {
        Word::new(modulus, vec![letter; len])
    }

    /// Parses the text format: a digit string when `m <= 10`, otherwise
    /// comma-separated integers. Commas are accepted for any modulus.
    pub fn parse(modulus: u32, input: &str) -> Result<Self> {
        let trimmed = input.trim();
        let fail = |reason: String| Error::ParseWord {
            input: input.to_string(),
            reason,
        };
        let letters = if trimmed.contains(',') {
            trimmed
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u32>()
                        .map_err(|e| fail(format!("{tok:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else if modulus > 10 && trimmed.len() > 1 {
            return Err(fail(format!(
                "letters must be comma-separated when m = {modulus} > 10"
            )));
        } else {
            trimmed
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| fail(format!("{c:?} is not a digit")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Word::new(modulus, letters)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<u32> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.letters.last().copied()
    }

    /// Letter sum reduced modulo `m`.
    pub fn residue_sum(&self) -> u32 {
        let m = u64::from(self.modulus);
        (self.letters.iter().map(|&l| u64::from(l)).sum::<u64>() % m) as u32
    }

    /// Letter sum as an integer (not reduced).
    pub fn integer_sum(&self) -> u64 {
        self.letters.iter().map(|&l| u64::from(l)).sum()
    }

    /// `w_1 w_2 ... w_n -> w_2 ... w_n w_1`.
    pub fn rotate_left(&self) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(1);
        }
        Word {
            modulus: self.modulus,
            letters,
        }
    }

    /// Subtracts `i` from every letter modulo `m`.
    pub fn shift(&self, i: u32) -> Word {
        let m = self.modulus;
        let i = i % m;
        Word {
            modulus: m,
            letters: self.letters.iter().map(|&l| (l + m - i) % m).collect(),
        }
    }

    /// The word with one extra letter appended (reduced modulo `m`).
    pub fn push(&self, letter: u32) -> Word {
        let mut letters = self.letters.clone();
        letters.push(letter % self.modulus);
        Word {
            modulus: self.modulus,
            letters,
        }
    }

    /// The prefix of length `len`.
    pub fn prefix(&self, len: usize) -> Word {
        Word {
            modulus: self.modulus,
            letters: self.letters[..len].to_vec(),
        }
    }

    /// Smallest `s >= 1` with `rotate_left^s(w) = w`.
    pub fn rotation_period(&self) -> usize {
        let n = self.letters.len();
        (1..=n)
            .find(|&s| n.is_multiple_of(s) && self.letters[s..] == self.letters[..n - s])
            .unwrap_or(1)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus <= 10 {
            for l in &self.letters {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// All words of length `len` over `Z/mZ` in lexicographic order.
pub fn all_words(modulus: u32, len: usize) -> Result<Vec<Word>> {
    if modulus == 0 {
        return Err(Error::ZeroModulus);
    }
    let total = (modulus as usize).pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut letters = vec![0u32; len];
    for _ in 0..total {
        out.push(Word {
            modulus,
            letters: letters.clone(),
        });
        // odometer increment, last letter fastest
        for slot in letters.iter_mut().rev() {
            *slot += 1;
            if *slot < modulus {
                break;
            }
            *slot = 0;
        }
    }
    Ok(out)
}

/// The set `W(m, k)`: words of length `k + 1` with letter sum `m - 1` mod `m`,
/// in lexicographic order. It has exactly `m^k` elements.
pub fn enumerate_w(modulus: u32, k: usize) -> Result<Vec<Word>> {
    let m = modulus;
    // the first k letters are free and force the last one, so lexicographic
    // order on prefixes is lexicographic order on the full words
    Ok(all_words(m, k)?
        .into_iter()
        .map(|prefix| {
            let s = prefix.residue_sum();
            let last = (m - 1 + m - s) % m;
            prefix.push(last)
        })
        .collect())
}

/// Orbits of `W(m, k)` under rotation. Each orbit starts at its
/// lexicographically smallest member and lists successive left rotations;
/// orbits are sorted by that smallest member.
pub fn rotation_orbits(modulus: u32, k: usize) -> Result<Vec<Vec<Word>>> {
    let words = enumerate_w(modulus, k)?;
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for w in words {
        if seen.contains(&w) {
            continue;
        }
        // lexicographic enumeration reaches the smallest member first
        let mut orbit = vec![w.clone()];
        seen.insert(w.clone());
        let mut next = w.rotate_left();
        while next != w {
            seen.insert(next.clone());
            orbit.push(next.clone());
            next = next.rotate_left();
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}
