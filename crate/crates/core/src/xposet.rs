//! The poset `X(m, k)` on words of length `k` over `Z/mZ`, extended words and
//! the cyclic action `phi`, which is a graph automorphism of the cover graph.
//!
//! Covers come in two kinds:
//!
//! * wrap: `y a < (a+1) y` for a last letter `a < m - 1`;
//! * swap: `y a b z < y b a z` for an adjacent pair with `b < a`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::Result;
use crate::hasse::{Edge, HasseDiagram};
use crate::words::{all_words, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoverType {
    /// Last letter `a` is removed and `a + 1` is put in front.
    Wrap,
    /// A descent `a b` (with `b < a`) becomes the ascent `b a`.
    Swap,
}

/// An upper cover of some word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cover {
    pub upper: Word,
    pub kind: CoverType,
    /// For swaps, the index of the first letter of the swapped pair; for wraps,
    /// the index of the last letter.
    pub position: usize,
}

/// All upper covers of `x` together with their kind.
pub fn upper_covers_typed(x: &Word) -> Vec<Cover> {
    let m = x.modulus();
    let letters = x.letters();
    let k = letters.len();
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let a = letters[k - 1];
    if a + 1 < m {
        let mut up = Vec::with_capacity(k);
        up.push(a + 1);
        up.extend_from_slice(&letters[..k - 1]);
        out.push(Cover {
            upper: Word::new(m, up).expect("letters stay in range"),
            kind: CoverType::Wrap,
            position: k - 1,
        });
    }
    for i in 0..k - 1 {
        if letters[i + 1] < letters[i] {
            let mut up = letters.to_vec();
            up.swap(i, i + 1);
            out.push(Cover {
                upper: Word::new(m, up).expect("letters stay in range"),
                kind: CoverType::Swap,
                position: i,
            });
        }
    }
    out
}

/// The set of words covering `x`, sorted.
pub fn upper_covers(x: &Word) -> Vec<Word> {
    let set: BTreeSet<Word> = upper_covers_typed(x).into_iter().map(|c| c.upper).collect();
    set.into_iter().collect()
}

/// How `upper` covers `lower`, if it does.
pub fn classify_cover(lower: &Word, upper: &Word) -> Option<Cover> {
    upper_covers_typed(lower)
        .into_iter()
        .find(|c| &c.upper == upper)
}

/// The word `(x)(m-1)(x-1)(m-2)...(x-m+1)(0)` of length `(k+1)m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedWord {
    base: Word,
    letters: Word,
}

impl ExtendedWord {
    pub fn base(&self) -> &Word {
        &self.base
    }

    pub fn letters(&self) -> &Word {
        &self.letters
    }

    /// Index of the leftmost zero.
    pub fn leftmost_zero(&self) -> usize {
        self.letters
            .letters()
            .iter()
            .position(|&l| l == 0)
            .expect("the final sentinel is zero")
    }

    /// Rotates left until the leftmost zero is the last letter.
    pub fn rotate_to_zero(&self) -> Word {
        let p = self.leftmost_zero();
        let mut letters = self.letters.letters().to_vec();
        letters.rotate_left(p + 1);
        Word::new(self.letters.modulus(), letters).expect("letters stay in range")
    }

    /// Blocks of length `k + 1` separated by spaces, e.g. `103 032 321 210`.
    pub fn grouped(&self) -> String {
        let width = self.base.len() + 1;
        let text = self.letters.to_string();
        if self.letters.modulus() > 10 {
            return text;
        }
        let chars: Vec<char> = text.chars().collect();
        chars
            .chunks(width)
            .map(|c| c.iter().collect::<String>())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn extended_word(x: &Word) -> ExtendedWord {
    let m = x.modulus();
    let mut letters = Vec::with_capacity((x.len() + 1) * m as usize);
    for j in 0..m {
        letters.extend(x.shift(j).letters());
        letters.push(m - 1 - j);
    }
    ExtendedWord {
        base: x.clone(),
        letters: Word::new(m, letters).expect("letters stay in range"),
    }
}

/// The cyclic action: rotate the extended word so its leftmost zero comes
/// last, then keep the first `k` letters.
pub fn phi(x: &Word) -> Word {
    extended_word(x).rotate_to_zero().prefix(x.len())
}

pub fn phi_pow(x: &Word, times: usize) -> Word {
    (0..times).fold(x.clone(), |acc, _| phi(&acc))
}

/// The `phi`-orbit of `x`, starting at `x`.
pub fn phi_orbit(x: &Word) -> Vec<Word> {
    let mut orbit = vec![x.clone()];
    let mut next = phi(x);
    while &next != x {
        orbit.push(next.clone());
        next = phi(&next);
    }
    orbit
}

/// `phi`-orbits of `X(m, k)`, each starting at its lexicographically smallest
/// member, sorted by that member.
pub fn phi_orbits(m: u32, k: usize) -> Result<Vec<Vec<Word>>> {
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for x in all_words(m, k)? {
        if seen.contains(&x) {
            continue;
        }
        let orbit = phi_orbit(&x);
        seen.extend(orbit.iter().cloned());
        orbits.push(orbit);
    }
    Ok(orbits)
}

/// The Hasse diagram of `X(m, k)`.
pub fn x_hasse(m: u32, k: usize) -> Result<HasseDiagram<Word>> {
    let nodes = all_words(m, k)?;
    let edges: Vec<Edge<Word>> = nodes
        .par_iter()
        .flat_map_iter(|x| {
            upper_covers(x)
                .into_iter()
                .map(move |up| Edge::new(x.clone(), up))
        })
        .collect();
    Ok(HasseDiagram::new(nodes, edges))
}

/// The four situations of the edge-by-edge argument that `phi` preserves
/// the cover graph, keyed by where the leftmost zero of the lower word's
/// extended word falls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProofCase {
    /// Wrap cover, leftmost zero not on the last letter.
    WrapElsewhere,
    /// Wrap cover, leftmost zero on the last letter.
    WrapOnLast,
    /// Swap cover, leftmost zero away from the swapped pair.
    SwapElsewhere,
    /// Swap cover, leftmost zero on one of the swapped letters.
    SwapOnPair,
}

impl ProofCase {
    pub fn classify(lower: &Word, cover: &Cover) -> ProofCase {
        let k = lower.len();
        let offset = extended_word(lower).leftmost_zero() % (k + 1);
        match cover.kind {
            CoverType::Wrap if offset == k - 1 => ProofCase::WrapOnLast,
            CoverType::Wrap => ProofCase::WrapElsewhere,
            CoverType::Swap if offset == cover.position || offset == cover.position + 1 => {
                ProofCase::SwapOnPair
            }
            CoverType::Swap => ProofCase::SwapElsewhere,
        }
    }

    /// The kind of the image edge under `phi` in this case.
    pub fn predicted_image(self) -> CoverType {
        match self {
            ProofCase::WrapElsewhere | ProofCase::SwapElsewhere => CoverType::Swap,
            ProofCase::WrapOnLast | ProofCase::SwapOnPair => CoverType::Wrap,
        }
    }
}

/// What happened to every cover of `X(m, k)` under `phi`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PhiSymmetryReport {
    pub edges: usize,
    /// Images that are covers with the same orientation.
    pub preserved: usize,
    /// Images that are covers with the orientation reversed.
    pub reversed: usize,
    /// Edges whose image is not a cover at all.
    pub broken: Vec<Edge<Word>>,
    pub cases: BTreeMap<ProofCase, usize>,
    /// Edges whose image kind disagrees with [`ProofCase::predicted_image`].
    pub mispredicted: Vec<(Edge<Word>, ProofCase)>,
}

impl PhiSymmetryReport {
    pub fn is_automorphism(&self) -> bool {
        self.broken.is_empty()
    }
}

pub fn phi_symmetry_report(m: u32, k: usize) -> Result<PhiSymmetryReport> {
    let words = all_words(m, k)?;
    let images: HashMap<Word, Word> = words.par_iter().map(|x| (x.clone(), phi(x))).collect();
    let per_word: Vec<PhiSymmetryReport> = words
        .par_iter()
        .map(|lower| {
            let mut local = PhiSymmetryReport::default();
            for cover in upper_covers_typed(lower) {
                local.edges += 1;
                let case = ProofCase::classify(lower, &cover);
                *local.cases.entry(case).or_default() += 1;
                let (pl, pu) = (&images[lower], &images[&cover.upper]);
                let image = if let Some(c) = classify_cover(pl, pu) {
                    local.preserved += 1;
                    c
                } else if let Some(c) = classify_cover(pu, pl) {
                    local.reversed += 1;
                    c
                } else {
                    local
                        .broken
                        .push(Edge::new(lower.clone(), cover.upper.clone()));
                    continue;
                };
                if image.kind != case.predicted_image() {
                    local
                        .mispredicted
                        .push((Edge::new(lower.clone(), cover.upper.clone()), case));
                }
            }
            local
        })
        .collect();
    Ok(per_word
        .into_iter()
        .fold(PhiSymmetryReport::default(), |mut acc, r| {
            acc.edges += r.edges;
            acc.preserved += r.preserved;
            acc.reversed += r.reversed;
            acc.broken.extend(r.broken);
            for (case, n) in r.cases {
                *acc.cases.entry(case).or_default() += n;
            }
            acc.mispredicted.extend(r.mispredicted);
            acc
        }))
}

/// True iff `phi` maps every cover of `X(m, k)` to a cover, ignoring
/// orientation.
pub fn check_phi_graph_automorphism(m: u32, k: usize) -> Result<bool> {
    Ok(phi_symmetry_report(m, k)?.is_automorphism())
}
