//! Tangency sequences and the matrices recording them row by row.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::{Error, Result};

pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// A sequence (s_1, s_2, ...) of non-negative integers with finite support.
///
/// Stored densely from index 1 with trailing zeros removed, so derived
/// equality ignores trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TangencySequence {
    entries: Vec<u64>,
}

impl TangencySequence {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(mut entries: Vec<u64>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        Self { entries }
    }

    /// Sequence with a single non-zero entry `value` at `index`.
    pub fn unit(index: usize, value: u64) -> Self {
        let mut e = alloc::vec![0; index];
        e[index - 1] = value;
        Self::new(e)
    }

    /// Entry at 1-based `index`.
    pub fn get(&self, index: usize) -> u64 {
        if index == 0 {
            return 0;
        }
        self.entries.get(index - 1).copied().unwrap_or(0)
    }

    pub fn set(&mut self, index: usize, value: u64) {
        if self.entries.len() < index {
            self.entries.resize(index, 0);
        }
        self.entries[index - 1] = value;
        *self = Self::new(core::mem::take(&mut self.entries));
    }

    /// Largest index with a non-zero entry (0 for the zero sequence).
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Pairs (i, s_i) with s_i > 0.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0)
            .map(|(i, &v)| (i + 1, v))
    }

    /// |s| = s_1 + s_2 + ...
    pub fn norm(&self) -> u64 {
        self.entries.iter().sum()
    }

    /// s! = s_1! s_2! ...
    pub fn factorial(&self) -> BigUint {
        self.entries.iter().map(|&v| factorial(v)).product()
    }

    /// 1 s_1 + 2 s_2 + ...
    pub fn weighted(&self) -> u64 {
        self.iter().map(|(i, v)| i as u64 * v).sum()
    }

    /// 1^{s_1} 2^{s_2} ...
    pub fn weight_power(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (i, v) in self.iter() {
            acc *= BigUint::from(i).pow(v as u32);
        }
        acc
    }

    pub fn le(&self, other: &Self) -> bool {
        self.iter().all(|(i, v)| v <= other.get(i))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.entries.len().max(other.entries.len());
        Self::new((1..=n).map(|i| self.get(i) + other.get(i)).collect())
    }

    /// Component-wise difference, or the first index where it would go negative.
    pub fn checked_sub(&self, other: &Self) -> core::result::Result<Self, usize> {
        let n = self.entries.len().max(other.entries.len());
        let mut out = Vec::with_capacity(n);
        for i in 1..=n {
            let (a, b) = (self.get(i), other.get(i));
            if b > a {
                return Err(i);
            }
            out.push(a - b);
        }
        Ok(Self::new(out))
    }
}

impl From<Vec<u64>> for TangencySequence {
    fn from(v: Vec<u64>) -> Self {
        Self::new(v)
    }
}

impl From<&[u64]> for TangencySequence {
    fn from(v: &[u64]) -> Self {
        Self::new(v.to_vec())
    }
}

/// Comma-separated entries from index 1; the empty string is the zero sequence.
impl FromStr for TangencySequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Self::zero());
        }
        let mut v = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let x = part
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad sequence entry {part:?}")))?;
            v.push(x);
        }
        Ok(Self::new(v))
    }
}

impl fmt::Display for TangencySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|v| format!("{v}")).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Returns (|s|, s!, sum of i s_i).
pub fn seq_stats(s: &TangencySequence) -> (u64, BigUint, u64) {
    (s.norm(), s.factorial(), s.weighted())
}

/// s! / (t_1! t_2! ... (s - sum t)!) with sequence factorials.
pub fn seq_multinomial(s: &TangencySequence, parts: &[TangencySequence]) -> Result<BigUint> {
    let mut rest = s.clone();
    let mut denom = BigUint::one();
    for t in parts {
        rest = rest
            .checked_sub(t)
            .map_err(|index| Error::PartsExceed { index })?;
        denom *= t.factorial();
    }
    denom *= rest.factorial();
    Ok(s.factorial() / denom)
}

/// All pairs (alpha, beta) with sum of i (alpha_i + beta_i) equal to d, sorted.
pub fn tangency_pairs(d: u64) -> Vec<(TangencySequence, TangencySequence)> {
    // choose the multiplicity of each part size for alpha and beta, largest size first
    fn rec(size: u64, left: u64, a: &mut Vec<u64>, b: &mut Vec<u64>, out: &mut Vec<(TangencySequence, TangencySequence)>) {
        if left == 0 {
            out.push((TangencySequence::new(a.clone()), TangencySequence::new(b.clone())));
            return;
        }
        if size == 0 {
            return;
        }
        let i = size as usize - 1;
        for total in 0..=left / size {
            for x in 0..=total {
                a[i] = x;
                b[i] = total - x;
                rec(size - 1, left - total * size, a, b, out);
            }
        }
        a[i] = 0;
        b[i] = 0;
    }
    let mut out = Vec::new();
    let n = d as usize;
    rec(d, d, &mut alloc::vec![0; n], &mut alloc::vec![0; n], &mut out);
    out.sort();
    out
}

/// A matrix of non-negative integers with finite support, rows and columns from 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SupportMatrix {
    entries: BTreeMap<(usize, usize), u64>,
}

impl SupportMatrix {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds from dense rows; `rows[0]` is row 1.
    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let mut m = Self::zero();
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i + 1, j + 1, v);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        assert!(i >= 1 && j >= 1, "matrix indices start at 1");
        if v == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Non-zero entries ((i, j), a_ij) in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// l(A): largest row with a non-zero entry.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn width(&self) -> usize {
        self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// delta(A) = sum i j a_ij
    pub fn delta(&self) -> u64 {
        self.iter().map(|((i, j), v)| (i * j) as u64 * v).sum()
    }

    /// ||A||_1 = sum a_ij
    pub fn norm1(&self) -> u64 {
        self.entries.values().sum()
    }

    /// wls(A)_i = sum over rows i' >= i of j a_{i'j}.
    pub fn wls(&self, i: usize) -> u64 {
        self.iter()
            .filter(|&((r, _), _)| r >= i)
            .map(|((_, j), v)| j as u64 * v)
            .sum()
    }

    pub fn row(&self, i: usize) -> TangencySequence {
        let mut s = TangencySequence::zero();
        for ((r, j), v) in self.iter() {
            if r == i {
                s.set(j, v);
            }
        }
        s
    }

    /// The sum of all rows, i.e. the column sums as a sequence.
    pub fn col_sums(&self) -> TangencySequence {
        let mut v = alloc::vec![0u64; self.width()];
        for ((_, j), x) in self.iter() {
            v[j - 1] += x;
        }
        TangencySequence::new(v)
    }

    /// Rows 1..=length as sequences.
    pub fn rows(&self) -> Vec<TangencySequence> {
        (1..=self.length()).map(|i| self.row(i)).collect()
    }

    /// Dense rows 1..=length, each padded to the matrix width.
    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let w = self.width();
        (1..=self.length())
            .map(|i| (1..=w).map(|j| self.get(i, j)).collect())
            .collect()
    }
}
