//! The equivariant bijection `w: X(m, k) -> W(m, k)` and its inverse.
//!
//! The inverse runs through partitioned words: a word cut into `m` connected
//! blocks. With `σ` the letter sum, the blocks carry the labels
//! `σ+1, σ+2, ..., σ` from left to right. [`p_map`] and [`q_map`] move
//! between plain words and partitioned words using labels. The balancing
//! matrix, [`rightmost_equitable`] and [`successful_partition`] work with
//! positions `1..=m` instead.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::words::Word;
use crate::xposet::{extended_word, phi};

/// A word with `m - 1` weakly increasing divider positions.
///
/// Block `p` (0-indexed) is `word[b_{p-1}..b_p]` with `b_{-1} = 0` and
/// `b_{m-1} = len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionedWord {
    word: Word,
    dividers: Vec<usize>,
}

impl PartitionedWord {
    pub fn new(word: Word, dividers: Vec<usize>) -> Result<Self> {
        let blocks = word.modulus() as usize;
        let ok = dividers.len() + 1 == blocks
            && dividers.windows(2).all(|w| w[0] <= w[1])
            && dividers.iter().all(|&b| b <= word.len());
        if !ok {
            return Err(Error::InvalidDividers {
                dividers,
                len: word.len(),
                blocks,
            });
        }
        Ok(PartitionedWord { word, dividers })
    }

    /// All `m` blocks empty.
    pub fn empty(m: u32) -> Result<Self> {
        PartitionedWord::new(Word::empty(m)?, vec![0; m as usize - 1])
    }

    /// Concatenates `m` blocks given left to right.
    pub fn from_blocks(m: u32, blocks: &[Vec<u32>]) -> Result<Self> {
        let mut letters = Vec::new();
        let mut dividers = Vec::new();
        for (p, block) in blocks.iter().enumerate() {
            if p > 0 {
                dividers.push(letters.len());
            }
            letters.extend(block);
        }
        PartitionedWord::new(Word::new(m, letters)?, dividers)
    }

    /// The whole word in a single block.
    pub fn single_block(word: Word, position: usize) -> Result<Self> {
        let len = word.len();
        let dividers = (0..word.modulus() as usize - 1)
            .map(|p| if p < position { 0 } else { len })
            .collect();
        PartitionedWord::new(word, dividers)
    }

    /// Parses blocks joined by `|`, with `·` or `.` for an empty block.
    /// Letters inside a block are digits, or comma-separated when `m > 10`.
    pub fn parse(m: u32, input: &str) -> Result<Self> {
        let fail = |reason: String| Error::ParsePartitionedWord {
            input: input.to_string(),
            reason,
        };
        let pieces: Vec<&str> = input.trim().split('|').collect();
        if pieces.len() != m as usize {
            return Err(fail(format!("expected {m} blocks, found {}", pieces.len())));
        }
        let blocks = pieces
            .iter()
            .map(|piece| {
                let piece = piece.trim();
                if piece.is_empty() || piece == "·" || piece == "." {
                    Ok(Vec::new())
                } else {
                    Word::parse(m, piece)
                        .map(|w| w.letters().to_vec())
                        .map_err(|e| fail(e.to_string()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        PartitionedWord::from_blocks(m, &blocks)
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn dividers(&self) -> &[usize] {
        &self.dividers
    }

    pub fn modulus(&self) -> u32 {
        self.word.modulus()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Letter sum modulo `m`.
    pub fn sigma(&self) -> u32 {
        self.word.residue_sum()
    }

    fn bounds(&self, position: usize) -> (usize, usize) {
        let start = if position == 0 {
            0
        } else {
            self.dividers[position - 1]
        };
        let end = self
            .dividers
            .get(position)
            .copied()
            .unwrap_or(self.word.len());
        (start, end)
    }

    /// Block at 0-indexed `position`.
    pub fn block(&self, position: usize) -> &[u32] {
        let (start, end) = self.bounds(position);
        &self.word.letters()[start..end]
    }

    pub fn blocks(&self) -> Vec<&[u32]> {
        (0..self.modulus() as usize)
            .map(|p| self.block(p))
            .collect()
    }

    fn owned_blocks(&self) -> Vec<Vec<u32>> {
        self.blocks().into_iter().map(<[u32]>::to_vec).collect()
    }

    /// Label of the block at 0-indexed `position`.
    pub fn label_of(&self, position: usize) -> u32 {
        label_of(self.modulus(), self.sigma(), position)
    }

    /// 0-indexed position of the block labeled `label`.
    pub fn position_of(&self, label: u32) -> usize {
        position_of(self.modulus(), self.sigma(), label)
    }

    pub fn block_labeled(&self, label: u32) -> &[u32] {
        self.block(self.position_of(label))
    }

    /// The 0-indexed position of each letter's block.
    fn block_positions(&self) -> Vec<usize> {
        (0..self.modulus() as usize)
            .flat_map(|p| {
                let (s, e) = self.bounds(p);
                std::iter::repeat_n(p, e - s)
            })
            .collect()
    }

    /// The `m` partitioned words in the tree one rank below this one: child
    /// `i` prepends `-i mod m` to the block labeled `i`. Sorted by the
    /// prepended letter.
    pub fn children(&self) -> Vec<PartitionedWord> {
        let m = self.modulus();
        (0..m)
            .map(|letter| {
                let label = (m - letter) % m;
                let mut blocks = self.owned_blocks();
                blocks[self.position_of(label)].insert(0, letter);
                PartitionedWord::from_blocks(m, &blocks).expect("letters stay in range")
            })
            .collect()
    }
}

fn label_of(m: u32, sigma: u32, position: usize) -> u32 {
    ((u64::from(sigma) + 1 + position as u64) % u64::from(m)) as u32
}

fn position_of(m: u32, sigma: u32, label: u32) -> usize {
    ((2 * m + label - sigma - 1) % m) as usize
}

impl fmt::Display for PartitionedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.modulus() > 10;
        let rendered: Vec<String> = self
            .blocks()
            .into_iter()
            .map(|b| {
                if b.is_empty() {
                    "·".to_string()
                } else if wide {
                    b.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                } else {
                    b.iter().map(u32::to_string).collect()
                }
            })
            .collect();
        f.write_str(&rendered.join("|"))
    }
}

/// Forgets the dividers.
pub fn f_map(pw: &PartitionedWord) -> Word {
    pw.word().clone()
}

/// Inserts the differences `x_i - x_{i-1}` one at a time, each as the
/// rightmost letter of the block labeled `x_{i-1}`. The blocks are labeled
/// with `σ = x_last`.
pub fn p_map(x: &Word) -> PartitionedWord {
    let m = x.modulus();
    let sigma = x.last().unwrap_or(0);
    let mut blocks = vec![Vec::new(); m as usize];
    let mut prev = 0;
    for &xi in x.letters() {
        blocks[position_of(m, sigma, prev)].push((m + xi - prev) % m);
        prev = xi;
    }
    PartitionedWord::from_blocks(m, &blocks).expect("letters stay in range")
}

/// One step of [`q_map`]: the current label and the state before removal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QStep {
    pub label: u32,
    pub state: PartitionedWord,
    pub output: Word,
}

/// Output of [`q_map`]: the trace `x` and whatever was not consumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QOutput {
    pub x: Word,
    pub leftover: PartitionedWord,
}

fn q_run(pw: &PartitionedWord, mut on_step: impl FnMut(u32, &PartitionedWord, &[u32])) -> QOutput {
    let m = pw.modulus();
    let sigma = pw.sigma();
    let mut blocks = pw.owned_blocks();
    let mut cursor = vec![0usize; m as usize];
    let mut x = Vec::new();
    let mut t = 0;
    let snapshot = |blocks: &[Vec<u32>], cursor: &[usize]| {
        let rest: Vec<Vec<u32>> = blocks
            .iter()
            .zip(cursor)
            .map(|(b, &c)| b[c..].to_vec())
            .collect();
        PartitionedWord::from_blocks(m, &rest).expect("letters stay in range")
    };
    loop {
        let p = position_of(m, sigma, t);
        on_step(t, &snapshot(&blocks, &cursor), &x);
        let Some(&v) = blocks[p].get(cursor[p]) else {
            break;
        };
        cursor[p] += 1;
        t = (t + v) % m;
        x.push(t);
    }
    for (b, &c) in blocks.iter_mut().zip(&cursor) {
        b.drain(..c);
    }
    QOutput {
        x: Word::new(m, x).expect("letters stay in range"),
        leftover: PartitionedWord::from_blocks(m, &blocks).expect("letters stay in range"),
    }
}

/// Starting in the block labeled 0, repeatedly removes the leftmost letter
/// `v` of the current block, moves to label `t + v`, and records `t`. Stops
/// at the first empty block. Labels come from the input's `σ` throughout;
/// the leftover keeps the input's block positions.
pub fn q_map(pw: &PartitionedWord) -> QOutput {
    q_run(pw, |_, _, _| {})
}

/// [`q_map`] with every intermediate state, including the final one.
pub fn q_trace(pw: &PartitionedWord) -> (Vec<QStep>, QOutput) {
    let mut steps = Vec::new();
    let out = q_run(pw, |label, state, output| {
        steps.push(QStep {
            label,
            state: state.clone(),
            output: Word::new(pw.modulus(), output.to_vec()).expect("letters stay in range"),
        });
    });
    (steps, out)
}

/// True iff [`q_map`] consumes every letter.
pub fn is_successful(pw: &PartitionedWord) -> bool {
    q_map(pw).leftover.is_empty()
}

/// Row `i` has `w_i` ones in the cyclically consecutive columns starting at
/// the position of the block holding letter `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancingMatrix {
    letters: Vec<u32>,
    rows: Vec<Vec<u8>>,
}

impl BalancingMatrix {
    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Entry in row `i`, column `j`, both 1-indexed.
    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.rows[i - 1][j - 1]
    }

    pub fn column_sums(&self) -> Vec<usize> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width)
            .map(|j| self.rows.iter().filter(|r| r[j] == 1).count())
            .collect()
    }
}

impl fmt::Display for BalancingMatrix {
    /// `w_i | row` per line, `.` for zero entries.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (w, row) in self.letters.iter().zip(&self.rows) {
            let cells: String = row
                .iter()
                .map(|&b| if b == 1 { '1' } else { '.' })
                .collect();
            writeln!(f, "{w} | {cells}")?;
        }
        Ok(())
    }
}

pub fn balancing_matrix(pw: &PartitionedWord) -> BalancingMatrix {
    let m = pw.modulus() as usize;
    let rows = pw
        .word()
        .letters()
        .iter()
        .zip(pw.block_positions())
        .map(|(&w, p)| {
            let mut row = vec![0u8; m];
            for d in 0..w as usize {
                row[(p + d) % m] = 1;
            }
            row
        })
        .collect();
    BalancingMatrix {
        letters: pw.word().letters().to_vec(),
        rows,
    }
}

/// Target column sums: `⌊S/m⌋ + 1` on columns `m-σ ..= m-1` and `⌊S/m⌋`
/// elsewhere, for `S` the integer letter sum.
fn equitable_targets(word: &Word) -> Vec<usize> {
    let m = u64::from(word.modulus());
    let s = word.integer_sum();
    let (base, sigma) = (s / m, s % m);
    (1..=m)
        .map(|j| (base + u64::from(j >= m - sigma && j < m)) as usize)
        .collect()
}

/// 1-indexed first column whose sum is off target.
fn first_unbalanced_column(pw: &PartitionedWord) -> Option<usize> {
    let sums = balancing_matrix(pw).column_sums();
    let targets = equitable_targets(pw.word());
    sums.iter()
        .zip(&targets)
        .position(|(a, b)| a != b)
        .map(|j| j + 1)
}

pub fn is_equitable(pw: &PartitionedWord) -> bool {
    first_unbalanced_column(pw).is_none()
}

/// Starts with every letter in the first block and, while some column is
/// off target, pushes the rightmost letter of the block at the first such
/// column to the front of the next block.
pub fn rightmost_equitable(word: &Word) -> PartitionedWord {
    let m = word.modulus();
    let mut pw = PartitionedWord::single_block(word.clone(), 0).expect("valid dividers");
    while let Some(column) = first_unbalanced_column(&pw) {
        let p = column - 1;
        assert!(
            p + 1 < m as usize,
            "would push out of the last block of {pw}"
        );
        let (start, end) = pw.bounds(p);
        assert!(start < end, "would push from an empty block of {pw}");
        pw.dividers[p] -= 1;
    }
    pw
}

/// One round of [`successful_partition`]: the partition tried and what
/// [`q_map`] left of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionRound {
    pub current: PartitionedWord,
    pub leftover: PartitionedWord,
}

/// The unique partition of `word` on which [`q_map`] succeeds.
pub fn successful_partition(word: &Word) -> PartitionedWord {
    successful_partition_trace(word)
        .pop()
        .expect("at least one round")
        .current
}

/// Every round of the search, starting from [`rightmost_equitable`]; the last
/// round is the successful one.
///
/// After a failed round, for each position `t = 1..m-1` in turn, the letters
/// left in block `t` move to the front of block `t + 1`.
pub fn successful_partition_trace(word: &Word) -> Vec<PartitionRound> {
    let m = word.modulus() as usize;
    let mut current = rightmost_equitable(word);
    let mut seen = BTreeSet::new();
    let mut rounds = Vec::new();
    loop {
        assert!(
            seen.insert(current.dividers.clone()),
            "successful partition search revisited {current}"
        );
        let leftover = q_map(&current).leftover;
        let done = leftover.is_empty();
        rounds.push(PartitionRound {
            current: current.clone(),
            leftover: leftover.clone(),
        });
        if done {
            return rounds;
        }
        let mut blocks = current.owned_blocks();
        for t in 0..m - 1 {
            let moved = leftover.block(t);
            let keep = blocks[t].len() - moved.len();
            let tail = blocks[t].split_off(keep);
            assert_eq!(tail, moved, "leftover is not a suffix of its block");
            blocks[t + 1].splice(0..0, tail);
        }
        current = PartitionedWord::from_blocks(word.modulus(), &blocks).expect("same letters");
    }
}

/// Rank `r` of the tree of partitioned words, left to right.
pub fn tree_rank(m: u32, r: usize) -> Result<Vec<PartitionedWord>> {
    let mut rank = vec![PartitionedWord::empty(m)?];
    for _ in 0..r {
        rank = rank.iter().flat_map(PartitionedWord::children).collect();
    }
    Ok(rank)
}

/// Letter `j` is the first letter of the extended word of `phi^j(x)`, for
/// `j = 0..=k`.
pub fn w_map(x: &Word) -> Word {
    let m = x.modulus();
    let mut letters = Vec::with_capacity(x.len() + 1);
    let mut y = x.clone();
    for _ in 0..=x.len() {
        letters.push(extended_word(&y).letters().first().expect("never empty"));
        y = phi(&y);
    }
    Word::new(m, letters).expect("letters stay in range")
}

/// Inverse of [`w_map`]: read the successful partition of `u` back through
/// [`q_map`] and drop the final letter, which is always `m - 1`.
pub fn w_inverse(u: &Word) -> Result<Word> {
    let m = u.modulus();
    if u.residue_sum() != m - 1 {
        return Err(Error::WrongSum {
            sum: u.residue_sum(),
            expected: m - 1,
            modulus: m,
        });
    }
    let x = q_map(&successful_partition(u)).x;
    assert_eq!(x.len(), u.len(), "successful partition was not consumed");
    assert_eq!(x.last(), Some(m - 1), "trace of {u} does not end in m-1");
    Ok(x.prefix(u.len() - 1))
}
