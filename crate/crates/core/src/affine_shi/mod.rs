//! Alcoves as affine permutations, the `d`-fold dilation of the fundamental
//! alcove, the `m`-Shi arrangement, and two labelings of its regions by
//! `m`-parking functions.
//!
//! Points live in `R^n` with exact rational coordinates. Only coordinate
//! differences matter, so the line spanned by `(1, ..., 1)` is never
//! quotiented out explicitly.

mod parking;
mod perm;
mod shi;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::Rational64;
use serde::Serialize;

use crate::bijact::w_map;
use crate::cores::{apply_s, core_to_word, Partition};
use crate::error::{Error, Result};
use crate::hasse::{Edge, HasseDiagram};
use crate::sieve::{csp_check, w_poly, CspReport};
use crate::words::Word;

pub use parking::{all_parking_functions, coset_parking, is_parking, ParkingFunction};
pub use perm::{AffinePermutation, RationalPoint};
pub use shi::{
    enumerate_regions, expected_region_count, pak_stanley, shi_hyperplanes, shi_signature,
    Hyperplane, ShiRegion, Signature,
};

/// An alcove of the dilated fundamental alcove with its core and word labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DilationAlcove {
    pub perm: AffinePermutation,
    pub core: Partition,
    pub word: Word,
}

/// True iff the sample point of `perm` lies in the `d`-fold dilation:
/// `x_1 > ... > x_n` and `x_1 - x_n < d`.
fn in_dilation(perm: &AffinePermutation, d: u32) -> bool {
    let x = perm.alcove_sample();
    let n = x.dim();
    x.is_dominant() && x.0[0] - x.0[n - 1] < Rational64::from_integer(i64::from(d))
}

/// The `d^(n-1)` alcoves inside `d` times the fundamental alcove of rank `n`,
/// sorted by word. Crossing the wall `i` of an alcove multiplies its
/// permutation by `s_i` on the right and applies `s_i` to its core.
pub fn enumerate_dilation(n: usize, d: u32) -> Result<Vec<DilationAlcove>> {
    Ok(dilation_graph(n, d)?.0)
}

type DilationGraph = (Vec<DilationAlcove>, Vec<(usize, usize, usize)>);

/// Alcoves plus `(from, to, generator)` wall crossings between them.
fn dilation_graph(n: usize, d: u32) -> Result<DilationGraph> {
    if n == 0 {
        return Err(Error::RankTooSmall { n, min: 1 });
    }
    if d == 0 {
        return Err(Error::ZeroModulus);
    }
    let gens: Vec<AffinePermutation> = if n >= 2 {
        (0..n)
            .map(|i| AffinePermutation::generator(n, i).expect("valid index"))
            .collect()
    } else {
        Vec::new()
    };
    let expected = (d as usize).pow(n as u32 - 1);
    let start = AffinePermutation::identity(n);
    let mut index: HashMap<AffinePermutation, usize> = HashMap::from([(start.clone(), 0)]);
    let mut states = vec![(start, Partition::empty())];
    let mut crossings = Vec::new();
    let mut cursor = 0;
    while cursor < states.len() {
        let (perm, core) = states[cursor].clone();
        for (i, s) in gens.iter().enumerate() {
            let next = perm.compose(s)?;
            if !in_dilation(&next, d) {
                continue;
            }
            let target = match index.get(&next) {
                Some(&t) => t,
                None => {
                    let next_core = apply_s(&core, i as u32, n as u32)?;
                    index.insert(next.clone(), states.len());
                    states.push((next, next_core));
                    if states.len() > expected {
                        return Err(Error::CountMismatch {
                            what: "alcoves in the dilation",
                            expected,
                            found: states.len(),
                        });
                    }
                    states.len() - 1
                }
            };
            crossings.push((cursor, target, i));
        }
        cursor += 1;
    }
    if states.len() != expected {
        return Err(Error::CountMismatch {
            what: "alcoves in the dilation",
            expected,
            found: states.len(),
        });
    }
    let alcoves = states
        .into_iter()
        .map(|(perm, core)| {
            let word = core_to_word(&core, d, n - 1)?;
            Ok(DilationAlcove { perm, core, word })
        })
        .collect::<Result<Vec<_>>>()?;
    // sort by word, remapping crossing endpoints
    let mut order: Vec<usize> = (0..alcoves.len()).collect();
    order.sort_by(|&a, &b| alcoves[a].word.cmp(&alcoves[b].word));
    let mut rank = vec![0; order.len()];
    for (r, &old) in order.iter().enumerate() {
        rank[old] = r;
    }
    let crossings = crossings
        .into_iter()
        .map(|(a, b, i)| (rank[a], rank[b], i))
        .collect();
    let mut slots: Vec<Option<DilationAlcove>> = alcoves.into_iter().map(Some).collect();
    let sorted = order
        .iter()
        .map(|&old| slots[old].take().expect("each alcove moved once"))
        .collect();
    Ok((sorted, crossings))
}

/// Cover graph of the dilation: two alcoves sharing a wall, oriented from
/// the smaller core to the larger.
pub fn dilation_hasse(n: usize, d: u32) -> Result<HasseDiagram<AffinePermutation>> {
    let (alcoves, crossings) = dilation_graph(n, d)?;
    let edges = crossings.into_iter().filter_map(|(a, b, _)| {
        let (x, y) = (&alcoves[a], &alcoves[b]);
        (x.core.size() < y.core.size()).then(|| Edge::new(x.perm.clone(), y.perm.clone()))
    });
    Ok(HasseDiagram::new(
        alcoves.iter().map(|a| a.perm.clone()),
        edges.collect::<Vec<_>>(),
    ))
}

/// The alcoves of the dilation after translating by `t`.
pub fn translated_alcoves(
    dilation: &[DilationAlcove],
    t: &[i64],
) -> Result<Vec<AffinePermutation>> {
    dilation
        .iter()
        .map(|a| AffinePermutation::alcove_of(&a.perm.alcove_sample().translate(t)))
        .collect()
}

/// True iff the fundamental alcove and all of its neighbours are among
/// `alcoves`.
pub fn surrounds_fundamental(alcoves: &BTreeSet<AffinePermutation>, n: usize) -> bool {
    alcoves.contains(&AffinePermutation::identity(n))
        && (n < 2
            || (0..n).all(|i| {
                alcoves.contains(&AffinePermutation::generator(n, i).expect("valid index"))
            }))
}

/// Every integer `t` with `t_k = 0` and `|t_i| <= km + 1` for which the
/// inverses of the translated `(km+1)`-dilation are exactly the minimal
/// alcoves of the `m`-Shi regions.
///
/// The last coordinate is pinned because translating along `(1, ..., 1)` is
/// invisible to every wall.
pub fn translation_candidates(
    k: usize,
    m: u32,
    dilation: &[DilationAlcove],
    regions: &[ShiRegion],
) -> Result<Vec<Vec<i64>>> {
    let bound = (k * m as usize + 1) as i64;
    let minimal: BTreeSet<&AffinePermutation> = regions.iter().map(|r| &r.minimal_alcove).collect();
    let mut found = Vec::new();
    let mut t = vec![-bound; k];
    t[k - 1] = 0;
    loop {
        let hits = dilation.iter().all(|a| {
            AffinePermutation::alcove_of(&a.perm.alcove_sample().translate(&t))
                .is_ok_and(|u| minimal.contains(&u.invert()))
        });
        if hits && dilation.len() == minimal.len() {
            found.push(t.clone());
        }
        // odometer over the first k - 1 coordinates
        let Some(pos) = (0..k - 1).rev().find(|&i| t[i] < bound) else {
            return Ok(found);
        };
        t[pos] += 1;
        for x in &mut t[pos + 1..k - 1] {
            *x = -bound;
        }
    }
}

/// The translation carrying the `(km+1)`-dilation onto the inverses of the
/// minimal alcoves of the `m`-Shi regions.
pub fn sommers_translation(k: usize, m: u32) -> Result<Vec<i64>> {
    let dilation = enumerate_dilation(k, k as u32 * m + 1)?;
    let regions = enumerate_regions(k, m)?;
    translation_candidates(k, m, &dilation, &regions)?
        .into_iter()
        .next()
        .ok_or(Error::TranslationNotFound {
            bound: (k * m as usize + 1) as i64,
        })
}

/// Everything known about the regions of one `m`-Shi arrangement.
#[derive(Debug, Clone)]
pub struct ShiAnalysis {
    pub k: usize,
    pub m: u32,
    pub regions: Vec<ShiRegion>,
    pub translation: Vec<i64>,
    /// Pak–Stanley label of each region, by region id.
    pub pak_stanley: Vec<ParkingFunction>,
    /// Coset label of each region, by region id.
    pub coset: Vec<ParkingFunction>,
}

#[derive(Serialize)]
struct CsvRow {
    region_id: usize,
    signature: String,
    minimal_alcove: String,
    pak_stanley: String,
    coset_label: String,
}

impl ShiAnalysis {
    /// One row per region: id, signature, minimal alcove window, both labels.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for r in &self.regions {
            writer
                .serialize(CsvRow {
                    region_id: r.id,
                    signature: r.signature.to_string(),
                    minimal_alcove: r.minimal_alcove.to_string(),
                    pak_stanley: self.pak_stanley[r.id].to_string(),
                    coset_label: self.coset[r.id].to_string(),
                })
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

/// Enumerates the regions and labels each one twice: by Pak–Stanley, and by
/// the parking function in the coset of the word of the corresponding alcove
/// of the translated `(km+1)`-dilation.
pub fn analyze_shi(k: usize, m: u32) -> Result<ShiAnalysis> {
    let n = k as u32 * m + 1;
    let regions = enumerate_regions(k, m)?;
    let dilation = enumerate_dilation(k, n)?;
    let translation = translation_candidates(k, m, &dilation, &regions)?
        .into_iter()
        .next()
        .ok_or(Error::TranslationNotFound {
            bound: i64::from(n),
        })?;
    let by_alcove: BTreeMap<&AffinePermutation, usize> =
        regions.iter().map(|r| (&r.minimal_alcove, r.id)).collect();
    let mut coset: Vec<Option<ParkingFunction>> = vec![None; regions.len()];
    for (a, u) in dilation
        .iter()
        .zip(translated_alcoves(&dilation, &translation)?)
    {
        let id = by_alcove[&u.invert()];
        coset[id] = Some(coset_parking(&w_map(&a.word), m)?);
    }
    let coset = coset
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::CountMismatch {
            what: "labeled regions",
            expected: regions.len(),
            found: dilation.len(),
        })?;
    let pak_stanley = regions
        .iter()
        .map(|r| pak_stanley(&r.signature, k, m))
        .collect();
    Ok(ShiAnalysis {
        k,
        m,
        regions,
        translation,
        pak_stanley,
        coset,
    })
}

/// The coset labeling as a list indexed by region id.
pub fn new_labeling(k: usize, m: u32) -> Result<Vec<ParkingFunction>> {
    Ok(analyze_shi(k, m)?.coset)
}

/// Cyclic sieving for `m`-parking functions of length `k` under rotation,
/// against `[km+1]_q [km+1]_{q^2} ... [km+1]_{q^(k-1)}`.
pub fn parking_csp(k: usize, m: u32) -> Result<CspReport> {
    if k == 0 {
        return Err(Error::RankTooSmall { n: 0, min: 1 });
    }
    let n = k as u32 * m + 1;
    let words: Vec<Word> = all_parking_functions(k, m)
        .iter()
        .map(ParkingFunction::to_word)
        .collect();
    csp_check(&words, Word::rotate_left, k as u64, &w_poly(n, k - 1))
}
