//! Farey sequences and wall queries. Walls are the reduced fractions strictly
//! inside `(0, 1)` with denominator at most `n`; all comparisons are exact
//! (cross-multiplication).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A reduced fraction `numerator/denominator` with `0 < numerator ≤ denominator`.
///
/// Walls satisfy the strict inequality; `1/1` is representable so it can be
/// used as the "all walls" bound of [`walls_below`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    numerator: u64,
    denominator: u64,
}

impl Fraction {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if numerator == 0 || denominator == 0 || numerator > denominator {
            return Err(Error::Domain(format!(
                "{numerator}/{denominator} is not in (0, 1]"
            )));
        }
        if gcd(numerator, denominator) != 1 {
            return Err(Error::Domain(format!(
                "{numerator}/{denominator} is not in lowest terms"
            )));
        }
        Ok(Fraction {
            numerator,
            denominator,
        })
    }

    /// Like [`Fraction::new`] but divides out common factors first.
    pub fn reduced(numerator: u64, denominator: u64) -> Result<Self> {
        let g = gcd(numerator, denominator).max(1);
        Self::new(numerator / g, denominator / g)
    }

    pub const ONE: Fraction = Fraction {
        numerator: 1,
        denominator: 1,
    };

    pub fn numerator(self) -> u64 {
        self.numerator
    }

    pub fn denominator(self) -> u64 {
        self.denominator
    }

    /// Strictly inside `(0, 1)`.
    pub fn is_wall(self) -> bool {
        self.numerator < self.denominator
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = u128::from(self.numerator) * u128::from(other.denominator);
        let rhs = u128::from(other.numerator) * u128::from(self.denominator);
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (num, den) = text
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::parse(text, "expected r/s"))?;
        let num: u64 = num
            .trim()
            .parse()
            .map_err(|_| Error::parse(text, "bad numerator"))?;
        let den: u64 = den
            .trim()
            .parse()
            .map_err(|_| Error::parse(text, "bad denominator"))?;
        Fraction::new(num, den).map_err(|e| Error::parse(text, e.to_string()))
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The terms of the `n`-th Farey sequence strictly between 0 and 1, in
/// increasing order.
pub fn farey_sequence(n: u64) -> Vec<Fraction> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    // Next-term recurrence: from neighbours a/b < c/d the successor is
    // (k·c − a)/(k·d − b) with k = ⌊(n + b)/d⌋.
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, n);
    while c < d {
        out.push(Fraction {
            numerator: c,
            denominator: d,
        });
        let k = (n + b) / d;
        (a, b, c, d) = (c, d, k * c - a, k * d - b);
    }
    out
}

/// Whether `f` is a wall of order `n`.
pub fn is_farey_term(n: u64, f: Fraction) -> bool {
    f.is_wall() && f.denominator <= n
}

fn check_term(n: u64, f: Fraction) -> Result<()> {
    if is_farey_term(n, f) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{f} is not a term of F_{n} inside (0, 1)"
        )))
    }
}

/// The walls `0 < r'_1/s'_1 < … < r'_k/s'_k < f` of order `n`. `f` may be
/// [`Fraction::ONE`], meaning every wall.
pub fn walls_below(n: u64, f: Fraction) -> Result<Vec<Fraction>> {
    if f != Fraction::ONE {
        check_term(n, f)?;
    }
    Ok(farey_sequence(n)
        .into_iter()
        .take_while(|&w| w < f)
        .collect())
}

/// Successor of `f` in the `n`-th Farey sequence; errors if that successor
/// is `1/1`.
pub fn next_right(n: u64, f: Fraction) -> Result<Fraction> {
    check_term(n, f)?;
    // The successor c/d is the solution of c·b − a·d = 1 with the largest
    // denominator d ≤ n.
    let (a, b) = (f.numerator, f.denominator);
    let inv = mod_inverse(a % b, b).expect("reduced fraction has invertible numerator");
    let d0 = (b - inv) % b; // a·d0 ≡ −1 (mod b)
    let d0 = if d0 == 0 { b } else { d0 };
    let d = d0 + b * ((n - d0) / b);
    let c = (1 + a * d) / b;
    if c >= d {
        return Err(Error::Range(format!(
            "no term of F_{n} right of {f} inside (0, 1)"
        )));
    }
    Ok(Fraction {
        numerator: c,
        denominator: d,
    })
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// The unique reduced `h/q` with `lo < h/q < hi`.
pub fn unique_with_denominator(q: u64, lo: Fraction, hi: Fraction) -> Result<Fraction> {
    if lo >= hi {
        return Err(Error::Domain(format!("empty interval ({lo}, {hi})")));
    }
    if q < 2 {
        return Err(Error::Domain(format!("denominator {q} has no wall")));
    }
    // h ranges over ⌊lo·q⌋ + 1 ..= ⌈hi·q⌉ − 1.
    let first = lo.numerator * q / lo.denominator + 1;
    let last = (hi.numerator * q).div_ceil(hi.denominator) - 1;
    let found: Vec<Fraction> = (first..=last)
        .filter(|&h| h > 0 && h < q && gcd(h, q) == 1)
        .map(|h| Fraction {
            numerator: h,
            denominator: q,
        })
        .collect();
    match found.as_slice() {
        [one] => Ok(*one),
        [] => Err(Error::Absent {
            denominator: q,
            lo,
            hi,
        }),
        _ => Err(Error::Ambiguous {
            denominator: q,
            lo,
            hi,
            found,
        }),
    }
}
