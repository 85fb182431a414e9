use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Rational64;
use rayon::prelude::*;

use super::parking::ParkingFunction;
use super::perm::{AffinePermutation, RationalPoint};
use crate::error::{Error, Result};

/// The hyperplane `x_i - x_j = s` (1-indexed coordinates, `i < j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub i: usize,
    pub j: usize,
    pub s: i64,
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{} - x{} = {}", self.i, self.j, self.s)
    }
}

/// The `m`-Shi arrangement in `R^k`: `x_i - x_j = s` for `i < j` and
/// `-m < s <= m`, in lexicographic order of `(i, j, s)`.
pub fn shi_hyperplanes(k: usize, m: u32) -> Vec<Hyperplane> {
    let m = i64::from(m);
    let mut out = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            for s in 1 - m..=m {
                out.push(Hyperplane { i, j, s });
            }
        }
    }
    out
}

/// Which side of each hyperplane of [`shi_hyperplanes`] a point lies on;
/// `true` means `x_i - x_j > s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(pub Vec<bool>);

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &above in &self.0 {
            f.write_str(if above { "+" } else { "-" })?;
        }
        Ok(())
    }
}

pub fn shi_signature(pt: &RationalPoint, k: usize, m: u32) -> Result<Signature> {
    if pt.dim() != k {
        return Err(Error::RankMismatch {
            left: pt.dim(),
            right: k,
        });
    }
    shi_hyperplanes(k, m)
        .into_iter()
        .map(|h| {
            let diff = pt.0[h.i - 1] - pt.0[h.j - 1] - Rational64::from_integer(h.s);
            if diff == Rational64::from_integer(0) {
                Err(Error::DegeneratePoint {
                    i: h.i,
                    j: h.j,
                    s: h.s,
                })
            } else {
                Ok(diff > Rational64::from_integer(0))
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(Signature)
}

/// A region of the `m`-Shi arrangement and its minimal alcove.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiRegion {
    pub id: usize,
    pub signature: Signature,
    pub minimal_alcove: AffinePermutation,
    pub sample: RationalPoint,
    /// Length of the minimal alcove.
    pub length: usize,
}

/// `(km + 1)^(k - 1)`.
pub fn expected_region_count(k: usize, m: u32) -> usize {
    (k * m as usize + 1).pow(k.saturating_sub(1) as u32)
}

/// All regions of the `m`-Shi arrangement in `R^k`, numbered in order of
/// discovery.
///
/// Walks the affine symmetric group one length at a time; the first alcove
/// to land in a region is its minimal alcove. Stops once the expected count
/// is reached and two more layers bring nothing new.
pub fn enumerate_regions(k: usize, m: u32) -> Result<Vec<ShiRegion>> {
    if k == 0 {
        return Err(Error::RankTooSmall { n: 0, min: 1 });
    }
    let expected = expected_region_count(k, m);
    let gens: Vec<AffinePermutation> = if k >= 2 {
        (0..k)
            .map(|i| AffinePermutation::generator(k, i).expect("valid index"))
            .collect()
    } else {
        Vec::new()
    };
    // Minimal alcoves never need more steps than there are hyperplanes to
    // cross, times the width of the widest region.
    let max_length = shi_hyperplanes(k, m).len() * (k * m as usize + 1) + 4;

    let mut regions: Vec<ShiRegion> = Vec::new();
    let mut by_signature: BTreeMap<Signature, usize> = BTreeMap::new();
    let mut previous: BTreeSet<AffinePermutation> = BTreeSet::new();
    let mut layer = vec![AffinePermutation::identity(k)];
    let mut quiet_layers = 0;
    for length in 0.. {
        let signed: Vec<(AffinePermutation, RationalPoint, Signature)> = layer
            .par_iter()
            .map(|w| {
                let sample = w.alcove_sample();
                shi_signature(&sample, k, m).map(|sig| (w.clone(), sample, sig))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut new_here = 0;
        for (w, sample, signature) in signed {
            match by_signature.get(&signature) {
                Some(&id) if regions[id].length == length => {
                    return Err(Error::MinimalAlcoveTie { length });
                }
                Some(_) => {}
                None => {
                    by_signature.insert(signature.clone(), regions.len());
                    regions.push(ShiRegion {
                        id: regions.len(),
                        signature,
                        minimal_alcove: w,
                        sample,
                        length,
                    });
                    new_here += 1;
                }
            }
        }
        if regions.len() >= expected && new_here == 0 {
            quiet_layers += 1;
        } else if regions.len() >= expected {
            quiet_layers = 0;
        }
        if quiet_layers >= 2 || gens.is_empty() {
            break;
        }
        if length > max_length {
            return Err(Error::CountMismatch {
                what: "Shi regions",
                expected,
                found: regions.len(),
            });
        }
        let next: BTreeSet<AffinePermutation> = layer
            .par_iter()
            .flat_map_iter(|w| gens.iter().map(move |s| w.compose(s).expect("ranks agree")))
            .collect::<Vec<_>>()
            .into_iter()
            .filter(|v| !previous.contains(v))
            .collect();
        previous = layer.into_iter().collect();
        layer = next.into_iter().collect();
    }
    if regions.len() != expected {
        return Err(Error::CountMismatch {
            what: "Shi regions",
            expected,
            found: regions.len(),
        });
    }
    Ok(regions)
}

/// The Pak–Stanley label: each hyperplane `x_i - x_j = s` separating the
/// region from the fundamental one contributes `e_j` when `s <= 0` and
/// `e_i` otherwise.
pub fn pak_stanley(signature: &Signature, k: usize, m: u32) -> ParkingFunction {
    let base = shi_signature(&RationalPoint::fundamental_sample(k), k, m)
        .expect("the fundamental sample is generic");
    let mut label = vec![0u32; k];
    for ((h, a), b) in shi_hyperplanes(k, m).iter().zip(&signature.0).zip(&base.0) {
        if a != b {
            label[if h.s <= 0 { h.j } else { h.i } - 1] += 1;
        }
    }
    ParkingFunction::new(label, m).expect("Pak-Stanley labels are parking functions")
}
