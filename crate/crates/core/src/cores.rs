//! `(k+1)`-cores, the affine symmetric group acting on them through contents,
//! boundary words and abacus displays, rectangle stacks, and the order ideal
//! `Y(m, k)` of cores that fit under some stack.
//!
//! The abacus turns a core of `Y(m, k)` into a word of `X(m, k)`: column `i`
//! (for `i = 1..=k`) of the display holds `x_i` beads flush against the top.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hasse::{Edge, HasseDiagram};
use crate::words::Word;
use crate::xposet::phi;

/// An integer partition, parts weakly decreasing and positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let decreasing = parts.windows(2).all(|w| w[0] >= w[1]);
        if !decreasing || parts.contains(&0) {
            return Err(Error::InvalidPartition { parts });
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of cells.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    fn row(&self, r: usize) -> u32 {
        self.parts.get(r).copied().unwrap_or(0)
    }

    /// Length of column `c` (0-indexed).
    pub fn column_len(&self, c: u32) -> usize {
        self.parts.iter().take_while(|&&p| p > c).count()
    }

    /// Cellwise containment of Ferrers diagrams.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }

    /// Hook length of the cell in row `r`, column `c` (both 0-indexed).
    pub fn hook(&self, r: usize, c: u32) -> u32 {
        let arm = self.parts[r] - c - 1;
        let leg = (self.column_len(c) - r - 1) as u32;
        arm + leg + 1
    }

    /// All cells as (row, column), row-major.
    pub fn cells(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (0..p).map(move |c| (r, c)))
    }

    /// Cells that can be added keeping a partition.
    pub fn addable_cells(&self) -> Vec<(usize, u32)> {
        (0..=self.len())
            .filter(|&r| r == 0 || self.row(r - 1) > self.row(r))
            .map(|r| (r, self.row(r)))
            .collect()
    }

    /// Cells that can be removed keeping a partition.
    pub fn removable_cells(&self) -> Vec<(usize, u32)> {
        (0..self.len())
            .filter(|&r| self.row(r + 1) < self.row(r))
            .map(|r| (r, self.row(r) - 1))
            .collect()
    }

    /// The boundary profile, starting with the down step at the right end of
    /// the first row: `0 1^(λ1-λ2) 0 1^(λ2-λ3) ... 0 1^(λℓ)`.
    fn profile(&self) -> Vec<u8> {
        let mut bits = Vec::new();
        for r in 0..self.len() {
            bits.push(0);
            bits.extend(std::iter::repeat_n(
                1,
                (self.row(r) - self.row(r + 1)) as usize,
            ));
        }
        bits
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `[4,2,1,1]`, `(4,2,1,1)`, `4,2,1,1`, and `[]` or `∅` for the
    /// empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .trim_start_matches(['[', '('])
            .trim_end_matches([']', ')'])
            .trim();
        if inner.is_empty() || inner == "∅" {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim().parse::<u32>().map_err(|e| Error::ParsePartition {
                    input: s.to_string(),
                    reason: format!("{t:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Content of a cell modulo `n`.
pub fn content(r: usize, c: u32, n: u32) -> u32 {
    (i64::from(c) - r as i64).rem_euclid(i64::from(n)) as u32
}

/// True iff no cell of `lambda` has hook length exactly `n`.
pub fn is_core(lambda: &Partition, n: u32) -> bool {
    lambda.cells().all(|(r, c)| lambda.hook(r, c) != n)
}

/// The generator `s_i` acting on an `n`-core: add every addable cell of
/// content `i`, or else remove every removable cell of content `i`, or else
/// leave the core alone.
pub fn apply_s(lambda: &Partition, i: u32, n: u32) -> Result<Partition> {
    if !is_core(lambda, n) {
        return Err(Error::NotACore {
            parts: lambda.parts.clone(),
            n,
        });
    }
    let i = i % n;
    let mut parts = lambda.parts.clone();
    let addable: Vec<_> = lambda
        .addable_cells()
        .into_iter()
        .filter(|&(r, c)| content(r, c, n) == i)
        .collect();
    if !addable.is_empty() {
        for (r, _) in addable {
            if r == parts.len() {
                parts.push(1);
            } else {
                parts[r] += 1;
            }
        }
    } else {
        for (r, _) in lambda
            .removable_cells()
            .into_iter()
            .filter(|&(r, c)| content(r, c, n) == i)
        {
            parts[r] -= 1;
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
    }
    let out = Partition::new(parts).expect("adding or removing corners keeps a partition");
    debug_assert!(is_core(&out, n));
    Ok(out)
}

/// A 0/1 word; `0` is a down step and `1` a left step of a partition profile.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryWord(pub Vec<u8>);

impl BoundaryWord {
    /// Runs of `width` letters separated by `|`, e.g. `011|010|000`.
    pub fn grouped(&self, width: usize) -> String {
        self.0
            .chunks(width)
            .map(|run| run.iter().map(|b| char::from(b'0' + b)).collect::<String>())
            .collect::<Vec<_>>()
            .join("|")
    }

    /// The partition whose profile this is; leading ones and trailing zeros
    /// are ignored. Row `r` is the number of ones after the `r`-th zero.
    pub fn to_partition(&self) -> Partition {
        let mut ones_after = 0u32;
        let mut parts = Vec::new();
        for &b in self.0.iter().rev() {
            if b == 1 {
                ones_after += 1;
            } else if ones_after > 0 {
                parts.push(ones_after);
            }
        }
        parts.reverse();
        Partition::new(parts).expect("profile rows are weakly decreasing")
    }
}

impl fmt::Display for BoundaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// The boundary word of a core of `Y(m, k)`, padded with zeros to length
/// `(m-1)(k+1)`.
pub fn boundary_word(lambda: &Partition, m: u32, k: usize) -> Result<BoundaryWord> {
    let budget = (m as usize).saturating_sub(1) * (k + 1);
    let mut bits = lambda.profile();
    if bits.len() > budget {
        return Err(Error::NotInY {
            parts: lambda.parts.clone(),
            m,
            k,
        });
    }
    bits.resize(budget, 0);
    Ok(BoundaryWord(bits))
}

/// An abacus display: a binary word cut into rows of equal width.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Abacus {
    rows: Vec<Vec<u8>>,
}

impl Abacus {
    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Number of ones in column `c` (0-indexed).
    pub fn column_count(&self, c: usize) -> usize {
        self.rows.iter().filter(|row| row[c] == 1).count()
    }
}

impl fmt::Display for Abacus {
    /// One row per line, no separators.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            for b in row {
                write!(f, "{b}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Cuts `bw` into consecutive runs of `k + 1` letters, stacked as rows.
pub fn abacus(bw: &BoundaryWord, k: usize) -> Result<Abacus> {
    let width = k + 1;
    if !bw.0.len().is_multiple_of(width) {
        return Err(Error::AbacusLength {
            len: bw.0.len(),
            width,
        });
    }
    Ok(Abacus {
        rows: bw.0.chunks(width).map(<[u8]>::to_vec).collect(),
    })
}

/// The rectangle `(i^(k-i+1))`: `k - i + 1` parts of size `i`.
pub fn rectangle(k: usize, i: u32) -> Partition {
    if i == 0 {
        return Partition::empty();
    }
    Partition::new(vec![i; k + 1 - i as usize]).expect("rectangle is a partition")
}

/// Stacks the rectangles `R(k, i_1), R(k, i_2), ...`, each new one placed at
/// the lower left corner of the shape built so far.
pub fn rectangle_stack(k: usize, indices: &[u32]) -> Result<Partition> {
    let decreasing = indices.windows(2).all(|w| w[0] >= w[1]);
    if !decreasing || indices.iter().any(|&i| i as usize > k) {
        return Err(Error::InvalidRectangleIndices {
            indices: indices.to_vec(),
            k,
        });
    }
    let mut parts: Vec<u32> = Vec::new();
    for &i in indices {
        for p in &mut parts {
            *p += i;
        }
        parts.extend(rectangle(k, i).parts());
    }
    Partition::new(parts)
}

/// Every weakly decreasing tuple of length `m - 1` over `[0, k]`.
pub fn rectangle_index_tuples(m: u32, k: usize) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, len: usize, max: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for i in (0..=max).rev() {
            prefix.push(i);
            extend(prefix, len, i, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(
        &mut Vec::new(),
        m.saturating_sub(1) as usize,
        k as u32,
        &mut out,
    );
    out
}

/// Membership in `Y(m, k)`, decided against all rectangle stacks at once.
#[derive(Debug, Clone)]
pub struct YMembership {
    m: u32,
    k: usize,
    stacks: Vec<Partition>,
}

impl YMembership {
    pub fn new(m: u32, k: usize) -> Self {
        let stacks = rectangle_index_tuples(m, k)
            .iter()
            .map(|idx| rectangle_stack(k, idx).expect("generated tuples are valid"))
            .collect();
        YMembership { m, k, stacks }
    }

    pub fn contains(&self, lambda: &Partition) -> bool {
        is_core(lambda, self.k as u32 + 1) && self.stacks.iter().any(|s| lambda.is_contained_in(s))
    }

    fn require(&self, lambda: &Partition) -> Result<()> {
        if !is_core(lambda, self.k as u32 + 1) {
            return Err(Error::NotACore {
                parts: lambda.parts.clone(),
                n: self.k as u32 + 1,
            });
        }
        if !self.contains(lambda) {
            return Err(Error::NotInY {
                parts: lambda.parts.clone(),
                m: self.m,
                k: self.k,
            });
        }
        Ok(())
    }
}

/// True iff `lambda` is a `(k+1)`-core contained in some rectangle stack
/// `R(k, {i_1 >= ... >= i_{m-1}})`.
pub fn in_y(lambda: &Partition, m: u32, k: usize) -> bool {
    YMembership::new(m, k).contains(lambda)
}

/// The word of `X(m, k)` read off the abacus of a core in `Y(m, k)`: letter
/// `i` counts the beads on runner `i`.
pub fn core_to_word(lambda: &Partition, m: u32, k: usize) -> Result<Word> {
    YMembership::new(m, k).require(lambda)?;
    Ok(core_to_word_unchecked(lambda, m, k))
}

fn core_to_word_unchecked(lambda: &Partition, m: u32, k: usize) -> Word {
    let bw = boundary_word(lambda, m, k).expect("cores of Y fit in (m-1)(k+1) steps");
    let display = abacus(&bw, k).expect("padded length is a multiple of k+1");
    assert_eq!(
        display.column_count(0),
        0,
        "runner 0 of {lambda} carries a bead"
    );
    let letters = (1..=k).map(|c| display.column_count(c) as u32).collect();
    Word::new(m, letters).expect("at most m-1 rows per runner")
}

/// Inverse of [`core_to_word`]: rebuild the flush abacus and read the
/// partition off its boundary word.
pub fn word_to_core(x: &Word, m: u32, k: usize) -> Result<Partition> {
    if x.modulus() != m {
        return Err(Error::ModulusMismatch {
            left: x.modulus(),
            right: m,
        });
    }
    if x.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            actual: x.len(),
        });
    }
    let mut bits = Vec::with_capacity((m as usize - 1) * (k + 1));
    for r in 0..m.saturating_sub(1) {
        bits.push(0);
        bits.extend(x.letters().iter().map(|&beads| u8::from(r < beads)));
    }
    Ok(BoundaryWord(bits).to_partition())
}

/// All of `Y(m, k)`, found by walking up from the empty core.
pub fn enumerate_y(m: u32, k: usize) -> Vec<Partition> {
    y_hasse(m, k).nodes
}

/// The Hasse diagram of `Y(m, k)`: `lambda` covers `mu` when
/// `lambda = s_i mu` is strictly larger.
pub fn y_hasse(m: u32, k: usize) -> HasseDiagram<Partition> {
    let member = YMembership::new(m, k);
    let n = k as u32 + 1;
    let mut seen = BTreeSet::from([Partition::empty()]);
    let mut queue = VecDeque::from([Partition::empty()]);
    let mut edges = Vec::new();
    while let Some(mu) = queue.pop_front() {
        for i in 0..n {
            let lambda = apply_s(&mu, i, n).expect("walk stays on cores");
            if lambda.size() <= mu.size() || !member.contains(&lambda) {
                continue;
            }
            edges.push(Edge::new(mu.clone(), lambda.clone()));
            if seen.insert(lambda.clone()) {
                queue.push_back(lambda);
            }
        }
    }
    HasseDiagram::new(seen, edges)
}

/// The action `phi` carried over to `Y(m, k)` through the abacus bijection.
pub fn core_phi(lambda: &Partition, m: u32, k: usize) -> Result<Partition> {
    let x = core_to_word(lambda, m, k)?;
    word_to_core(&phi(&x), m, k)
}
