//! Gel'fand–Tsetlin labels for class-1 representations and the truncated
//! double-pattern basis of the degenerate series.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An integer or half-integer, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub fn int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn as_int(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    /// Integer value; panics on half-integers. Only used where the
    /// surrounding structure guarantees integrality.
    pub(crate) fn int_value(self) -> i64 {
        debug_assert!(self.is_integer());
        self.0 / 2
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub fn offset(self, by: i64) -> Self {
        HalfInt(self.0 + 2 * by)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;

    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_int() {
            Some(n) => serializer.serialize_i64(n),
            None => serializer.serialize_f64(self.value()),
        }
    }
}

/// `|m_n, m_{n-1}, …, m_2⟩` with `m_n ≥ m_{n-1} ≥ … ≥ m_3 ≥ |m_2|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainPattern {
    pub n: usize,
    pub entries: Vec<HalfInt>,
}

impl ChainPattern {
    pub fn top(&self) -> HalfInt {
        self.entries[0]
    }

    /// `m_k` for `2 ≤ k ≤ n`.
    pub fn label(&self, k: usize) -> HalfInt {
        self.entries[self.n - k]
    }

    pub fn with_label(&self, k: usize, value: HalfInt) -> ChainPattern {
        let mut entries = self.entries.clone();
        entries[self.n - k] = value;
        ChainPattern { n: self.n, entries }
    }

    pub fn is_valid(&self) -> bool {
        if self.entries.len() != self.n - 1 {
            return false;
        }
        let last = self.entries.len() - 1;
        for i in 0..last {
            let bound = if i + 1 == last {
                self.entries[i + 1].abs()
            } else {
                self.entries[i + 1]
            };
            if self.entries[i] < bound {
                return false;
            }
        }
        self.entries.iter().all(|e| e.is_integer())
            || (self.n == 3 && !self.entries[0].is_integer() && !self.entries[1].is_integer())
    }
}

impl fmt::Display for ChainPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All chain patterns of the class-1 representation with top label `top`,
/// in ascending lexicographic order of `(m_{n-1}, …, m_2)`.
pub fn enumerate_chain(n: usize, top: HalfInt) -> Result<Vec<ChainPattern>> {
    if n < 3 {
        return Err(Error::RankTooSmall(n));
    }
    if top.twice() < 0 {
        return Err(Error::NegativeLabel(top.to_string()));
    }
    if !top.is_integer() && n > 3 {
        return Err(Error::HalfIntegerTop { n });
    }
    let mut out = Vec::new();
    let mut prefix = vec![top];
    extend_chain(n, &mut prefix, &mut out);
    Ok(out)
}

fn extend_chain(n: usize, prefix: &mut Vec<HalfInt>, out: &mut Vec<ChainPattern>) {
    let above = *prefix.last().expect("prefix holds the top label");
    if prefix.len() == n - 1 {
        out.push(ChainPattern {
            n,
            entries: prefix.clone(),
        });
        return;
    }
    let is_last = prefix.len() == n - 2;
    let lo = if is_last { -above.twice() } else { 0 };
    let start = if is_last { lo } else { above.twice() % 2 };
    let mut twice = start;
    while twice <= above.twice() {
        prefix.push(HalfInt::from_twice(twice));
        extend_chain(n, prefix, out);
        prefix.pop();
        twice += 2;
    }
}

/// Dimension of the class-1 representation with highest weight `(m, 0, …, 0)`
/// of so(n): `(2m+n-2)(m+n-3)! / (m!(n-2)!)`.
pub fn class1_dimension(n: usize, m: usize) -> usize {
    assert!(n >= 3);
    // (m+n-3)!/(m!(n-3)!) is a binomial; the rest is (2m+n-2)/(n-2)
    let binom = binomial(m + n - 3, m);
    binom * (2 * m + n - 2) / (n - 2)
}

fn binomial(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A basis label of the degenerate series: a so'_q(r) chain with top `m`
/// and a so'_q(s) chain with top `m'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoublePattern {
    pub left: ChainPattern,
    pub right: ChainPattern,
}

impl DoublePattern {
    pub fn m(&self) -> i64 {
        self.left.top().int_value()
    }

    pub fn m_prime(&self) -> i64 {
        self.right.top().int_value()
    }

    /// `m_{r-1}` of the left chain (signed when r = 3).
    pub fn k(&self) -> i64 {
        self.left.entries[1].int_value()
    }

    pub fn k_prime(&self) -> i64 {
        self.right.entries[1].int_value()
    }

    pub fn block(&self) -> Block {
        Block {
            m: self.m(),
            m_prime: self.m_prime(),
        }
    }

    /// Left chain then right chain, as plain integers.
    pub fn flat(&self) -> Vec<i64> {
        self.left
            .entries
            .iter()
            .chain(self.right.entries.iter())
            .map(|e| e.int_value())
            .collect()
    }
}

impl fmt::Display for DoublePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.left, self.right)
    }
}

/// A so'_q(r)×so'_q(s) isotypic block `V(m,0; m',0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Block {
    pub m: i64,
    pub m_prime: i64,
}

impl Block {
    pub fn new(m: i64, m_prime: i64) -> Self {
        Block { m, m_prime }
    }

    pub fn sum(&self) -> i64 {
        self.m + self.m_prime
    }

    pub fn diff(&self) -> i64 {
        self.m - self.m_prime
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.m_prime)
    }
}

/// Admissible blocks `m + m' ≡ ε (mod 2)`, `m + m' ≤ cutoff`, in basis order.
pub fn admissible_blocks(epsilon: u8, cutoff: i64) -> Vec<Block> {
    let mut out = Vec::new();
    for sum in (epsilon as i64..=cutoff).step_by(2) {
        for m in 0..=sum {
            out.push(Block::new(m, sum - m));
        }
    }
    out
}

/// Position range of one block inside the truncated basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockRange {
    pub block: Block,
    pub offset: usize,
    pub left_dim: usize,
    pub right_dim: usize,
}

impl BlockRange {
    pub fn len(&self) -> usize {
        self.left_dim * self.right_dim
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The degenerate-series carrier space truncated at `m + m' ≤ cutoff`.
///
/// Basis order: `(m+m', m)` ascending, then the left chain, then the right
/// chain, each in the order of [`enumerate_chain`].
#[derive(Debug, Clone)]
pub struct TruncatedSpace {
    r: usize,
    s: usize,
    epsilon: u8,
    cutoff: i64,
    basis: Vec<DoublePattern>,
    index: HashMap<DoublePattern, usize>,
    blocks: Vec<BlockRange>,
    block_index: HashMap<Block, usize>,
}

pub fn build_space(r: usize, s: usize, epsilon: u8, cutoff: i64) -> Result<TruncatedSpace> {
    if r <= 2 || s <= 2 {
        return Err(Error::UnsupportedRank { r, s });
    }
    if epsilon > 1 {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    if cutoff < 0 {
        return Err(Error::InvalidParameter(format!(
            "cutoff must be nonnegative, got {cutoff}"
        )));
    }
    let mut left_cache: HashMap<i64, Vec<ChainPattern>> = HashMap::new();
    let mut right_cache: HashMap<i64, Vec<ChainPattern>> = HashMap::new();
    let mut basis = Vec::new();
    let mut blocks = Vec::new();
    for block in admissible_blocks(epsilon, cutoff) {
        if let Entry::Vacant(e) = left_cache.entry(block.m) {
            e.insert(enumerate_chain(r, HalfInt::int(block.m))?);
        }
        if let Entry::Vacant(e) = right_cache.entry(block.m_prime) {
            e.insert(enumerate_chain(s, HalfInt::int(block.m_prime))?);
        }
        let left = &left_cache[&block.m];
        let right = &right_cache[&block.m_prime];
        blocks.push(BlockRange {
            block,
            offset: basis.len(),
            left_dim: left.len(),
            right_dim: right.len(),
        });
        for l in left {
            for rc in right {
                let pattern = DoublePattern {
                    left: l.clone(),
                    right: rc.clone(),
                };
                assert!(pattern.left.is_valid() && pattern.right.is_valid());
                basis.push(pattern);
            }
        }
    }
    let index = basis
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let block_index = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.block, i))
        .collect();
    Ok(TruncatedSpace {
        r,
        s,
        epsilon,
        cutoff,
        basis,
        index,
        blocks,
        block_index,
    })
}

impl TruncatedSpace {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn epsilon(&self) -> u8 {
        self.epsilon
    }

    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DoublePattern] {
        &self.basis
    }

    pub fn pattern(&self, i: usize) -> &DoublePattern {
        &self.basis[i]
    }

    pub fn blocks(&self) -> &[BlockRange] {
        &self.blocks
    }

    pub fn block_range(&self, block: Block) -> Option<&BlockRange> {
        self.block_index.get(&block).map(|&i| &self.blocks[i])
    }

    /// Position of `p`, or `None` when it lies outside the truncation.
    pub fn get(&self, p: &DoublePattern) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn pattern_index(&self, p: &DoublePattern) -> Result<usize> {
        self.get(p)
            .ok_or_else(|| Error::PatternNotFound(p.to_string()))
    }

    /// Patterns at least `depth` steps of `m+m'` below the cutoff.
    pub fn is_interior(&self, i: usize, depth: i64) -> bool {
        self.basis[i].block().sum() <= self.cutoff - depth
    }

    pub fn interior_mask(&self, depth: i64) -> Vec<bool> {
        (0..self.dim())
            .map(|i| self.is_interior(i, depth))
            .collect()
    }

    /// JSON-ready basis: left chain then right chain per pattern.
    pub fn basis_dump(&self) -> Vec<Vec<i64>> {
        self.basis.iter().map(|p| p.flat()).collect()
    }
}

/// Free-function form of [`TruncatedSpace::pattern_index`].
pub fn pattern_index(space: &TruncatedSpace, p: &DoublePattern) -> Result<usize> {
    space.pattern_index(p)
}
