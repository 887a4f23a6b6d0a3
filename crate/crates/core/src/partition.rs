//! Integer partitions and the structural operations wall-crossing is built
//! from: transpose, concatenation (multiset union of rows), the two ways of
//! scaling a partition by `e`, and the two decompositions that split off an
//! `e`-divisible or `e`-repeated block.
//!
//! A [`Partition`] keeps both the expanded row list and its run-length form
//! `(part, multiplicity)`; the two views are built together and never diverge.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default largest `n` accepted by [`enumerate_partitions`].
pub const DEFAULT_ENUMERATION_BOUND: usize = 40;

#[derive(Clone, Default)]
pub struct Partition {
    parts: Vec<usize>,
    runs: Vec<(usize, usize)>,
}

impl Partition {
    /// Builds a partition from weakly decreasing positive parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::Domain(format!("part {} is zero", pos + 1)));
        }
        if let Some(w) = parts.windows(2).find(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!(
                "parts not weakly decreasing: {} < {}",
                w[0], w[1]
            )));
        }
        Ok(Self::from_sorted(parts))
    }

    /// Builds a partition from rows in any order; zero rows are dropped.
    pub fn from_rows<I: IntoIterator<Item = usize>>(rows: I) -> Self {
        let mut parts: Vec<usize> = rows.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    /// Builds `(f_1^{g_1}, f_2^{g_2}, ...)` from `(part, multiplicity)` blocks
    /// given in any order. Blocks with a zero part or zero multiplicity are
    /// absent.
    pub fn from_runs<I: IntoIterator<Item = (usize, usize)>>(blocks: I) -> Self {
        let mut blocks: Vec<(usize, usize)> = blocks
            .into_iter()
            .filter(|&(part, mult)| part > 0 && mult > 0)
            .collect();
        blocks.sort_unstable_by_key(|b| std::cmp::Reverse(b.0));
        let mut runs: Vec<(usize, usize)> = Vec::with_capacity(blocks.len());
        for (part, mult) in blocks {
            match runs.last_mut() {
                Some(last) if last.0 == part => last.1 += mult,
                _ => runs.push((part, mult)),
            }
        }
        let parts = runs
            .iter()
            .flat_map(|&(part, mult)| std::iter::repeat_n(part, mult))
            .collect();
        Partition { parts, runs }
    }

    fn from_sorted(parts: Vec<usize>) -> Self {
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for &p in &parts {
            match runs.last_mut() {
                Some(last) if last.0 == p => last.1 += 1,
                _ => runs.push((p, 1)),
            }
        }
        Partition { parts, runs }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The single row `(n)`.
    pub fn row(n: usize) -> Self {
        Self::from_runs([(n, 1)])
    }

    /// The single column `(1^n)`.
    pub fn column(n: usize) -> Self {
        Self::from_runs([(1, n)])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Run-length view, largest part first.
    pub fn runs(&self) -> &[(usize, usize)] {
        &self.runs
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.runs.iter().map(|&(p, m)| p * m).sum()
    }

    /// Length of the first row, 0 for the empty partition.
    pub fn first_part(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Row `i` (0-indexed); 0 past the last row.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    pub fn distinct_parts(&self) -> usize {
        self.runs.len()
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.runs
            .iter()
            .find(|&&(p, _)| p == part)
            .map_or(0, |&(_, m)| m)
    }

    /// The conjugate partition: column `j` has `#{i : λ_i ≥ j}` boxes.
    pub fn transpose(&self) -> Self {
        // Walking runs from the smallest part up, each run contributes a block
        // of columns whose height is the number of rows reaching it.
        let mut blocks = Vec::with_capacity(self.runs.len());
        let mut rows_so_far = 0;
        for (idx, &(part, mult)) in self.runs.iter().enumerate() {
            rows_so_far += mult;
            let next_part = self.runs.get(idx + 1).map_or(0, |r| r.0);
            blocks.push((rows_so_far, part - next_part));
        }
        Self::from_runs(blocks)
    }

    /// Multiset union of rows.
    pub fn concat(&self, other: &Partition) -> Self {
        Self::from_runs(self.runs.iter().chain(other.runs.iter()).copied())
    }

    /// `eρ`: every row multiplied by `e`.
    pub fn scale(&self, e: usize) -> Self {
        Self::from_runs(self.runs.iter().map(|&(p, m)| (p * e, m)))
    }

    /// `e * ρ`: every row repeated `e` times.
    pub fn repeat(&self, e: usize) -> Self {
        Self::from_runs(self.runs.iter().map(|&(p, m)| (p, m * e)))
    }

    /// No part value occurs `e` or more times.
    pub fn is_regular(&self, e: usize) -> bool {
        self.runs.iter().all(|&(_, m)| m < e)
    }

    /// Splits `μ = ν ∪ e * ρ` with `ν` `e`-regular: a part of multiplicity
    /// `q·e + r` contributes `r` copies to `ν` and `q` copies to `ρ`.
    pub fn decompose_regular(&self, e: usize) -> (Partition, Partition) {
        assert!(e >= 1, "e must be positive");
        let nu = Self::from_runs(self.runs.iter().map(|&(p, m)| (p, m % e)));
        let rho = Self::from_runs(self.runs.iter().map(|&(p, m)| (p, m / e)));
        (nu, rho)
    }

    /// Splits `μ = ν ∪ eρ` with no row of `ν` divisible by `e`.
    pub fn decompose_divisible(&self, e: usize) -> (Partition, Partition) {
        assert!(e >= 1, "e must be positive");
        let (div, rest): (Vec<_>, Vec<_>) = self.runs.iter().partition(|&&(p, _)| p % e == 0);
        let nu = Self::from_runs(rest);
        let rho = Self::from_runs(div.into_iter().map(|(p, m)| (p / e, m)));
        (nu, rho)
    }

    /// Total number of boxes in rows whose length is divisible by `s`.
    pub fn stat_divisible(&self, s: usize) -> usize {
        assert!(s >= 1, "s must be positive");
        self.runs
            .iter()
            .filter(|&&(p, _)| p % s == 0)
            .map(|&(p, m)| p * m)
            .sum()
    }
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.parts == other.parts
    }
}

impl Eq for Partition {}

impl Hash for Partition {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parts.hash(state);
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on rows.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

/// Canonical form: `3^8,1^5`, `18,11`, `0` for the empty partition.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("0");
        }
        for (i, &(part, mult)) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if mult == 1 {
                write!(f, "{part}")?;
            } else {
                write!(f, "{part}^{mult}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts the canonical form as well as expanded (`3,3,1`) and mixed
    /// (`3^2,1`) forms, optionally wrapped in parentheses. `a^0` is an absent
    /// block.
    fn from_str(text: &str) -> Result<Self> {
        let body = text.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body)
            .trim();
        if body.is_empty() {
            return Err(Error::parse(text, "empty input"));
        }
        if body == "0" {
            return Ok(Partition::empty());
        }
        let mut parts: Vec<usize> = Vec::new();
        for token in body.split(',') {
            let token = token.trim();
            let (part, mult) = match token.split_once('^') {
                Some((p, m)) => (parse_number(text, p)?, parse_number(text, m)?),
                None => (parse_number(text, token)?, 1),
            };
            if part == 0 {
                return Err(Error::parse(text, "zero part"));
            }
            if mult == 0 {
                continue;
            }
            if let Some(&last) = parts.last() {
                if last < part {
                    return Err(Error::parse(
                        text,
                        format!("parts not weakly decreasing ({last} before {part})"),
                    ));
                }
            }
            parts.extend(std::iter::repeat_n(part, mult));
        }
        Ok(Partition::from_sorted(parts))
    }
}

fn parse_number(text: &str, token: &str) -> Result<usize> {
    let token = token.trim();
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(text, format!("bad number {token:?}")));
    }
    token
        .parse()
        .map_err(|_| Error::parse(text, format!("number {token:?} out of range")))
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in descending lexicographic order, `n ≤ 40`.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    enumerate_partitions_bounded(n, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_partitions_bounded(n: usize, bound: usize) -> Result<Vec<Partition>> {
    if n > bound {
        return Err(Error::Capacity {
            what: "partition enumeration",
            value: n,
            bound,
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fill(n, n, &mut current, &mut out);
    Ok(out)
}

fn fill(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition::from_sorted(current.clone()));
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}
