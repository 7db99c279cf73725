use std::fmt;
use std::ops::Index;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::WordError;

/// A letter of the alphabet `{1..N}`.
pub type Symbol = usize;

/// A finite multiindex `(j_1, …, j_k)`. The empty word is the unit index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(s: Symbol) -> Self {
        Word(vec![s])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Symbol] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.0.iter()
    }

    pub fn first(&self) -> Option<Symbol> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Symbol> {
        self.0.last().copied()
    }

    pub fn into_vec(self) -> Vec<Symbol> {
        self.0
    }

    /// `J₁ ∪ J₂`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `(i) ∪ J`.
    pub fn prepend(&self, s: Symbol) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(s);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// `J^p`; `p = 0` gives the empty word.
    pub fn power(&self, p: usize) -> Word {
        Word(self.0.repeat(p))
    }

    /// Cyclic rotation by `r` steps to the left: `rotate((1,2,3), 1) = (2,3,1)`.
    /// Negative `r` rotates right.
    pub fn rotate(&self, r: isize) -> Result<Word, WordError> {
        if self.is_empty() {
            return Err(WordError::EmptyWord);
        }
        let k = self.len() as isize;
        let shift = r.rem_euclid(k) as usize;
        let mut v = self.0.clone();
        v.rotate_left(shift);
        Ok(Word(v))
    }

    /// The suffix `J_l = (j_l, …, j_k)` for 1-based `l`.
    pub fn suffix_from(&self, l: usize) -> Word {
        Word(self.0[l - 1..].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// `J₁ ≺ J₂`: the weighted difference `Σ (j'_l − j_l) N^{k−l}` is
    /// nonnegative. Since letters lie in `1..N` this is lexicographic order.
    pub fn precedes(&self, other: &Word) -> Result<bool, WordError> {
        if self.len() != other.len() {
            return Err(WordError::LengthMismatch(self.len(), other.len()));
        }
        Ok(self.0 <= other.0)
    }

    /// `J = J₀^m` for some `m ≥ 2`.
    pub fn is_periodic(&self) -> Result<bool, WordError> {
        Ok(self.primitive_root()?.1 > 1)
    }

    /// Shortest `J₀` with `J = J₀^m`, together with `m`.
    pub fn primitive_root(&self) -> Result<(Word, usize), WordError> {
        if self.is_empty() {
            return Err(WordError::EmptyWord);
        }
        let n = self.len();
        let period = n - border_length(&self.0);
        if n.is_multiple_of(period) {
            Ok((Word(self.0[..period].to_vec()), n / period))
        } else {
            Ok((self.clone(), 1))
        }
    }

    /// The `≺`-least cyclic rotation.
    pub fn canonical_rotation(&self) -> Result<Word, WordError> {
        if self.is_empty() {
            return Err(WordError::EmptyWord);
        }
        let start = least_rotation(&self.0);
        let mut v = self.0.clone();
        v.rotate_left(start);
        Ok(Word(v))
    }

    /// Minimal in the sense of `≺` among its rotations.
    pub fn is_minimal(&self) -> Result<bool, WordError> {
        Ok(self.canonical_rotation()? == *self)
    }

    /// Literal rendering: digits when every letter is at most 9, otherwise
    /// comma-separated.
    pub fn literal(&self) -> String {
        self.literal_for(self.iter().copied().max().unwrap_or(0))
    }

    /// Literal rendering for an alphabet of size `n`.
    pub fn literal_for(&self, n: usize) -> String {
        if n <= 9 {
            self.0.iter().map(|s| s.to_string()).collect()
        } else {
            self.0
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Parses `"112"` (one digit per letter) or `"1,10,2"`. Zero is never a
    /// letter. An empty string or `"0"` is the unit word.
    pub fn parse(s: &str) -> Result<Word, WordError> {
        let s = s.trim();
        let err = || WordError::Parse {
            what: "word",
            input: s.to_string(),
        };
        if s.is_empty() || s == "0" {
            return Ok(Word::empty());
        }
        let symbols: Vec<Symbol> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<Symbol>().map_err(|_| err()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as Symbol).ok_or_else(err))
                .collect::<Result<_, _>>()?
        };
        if symbols.contains(&0) {
            return Err(err());
        }
        Ok(Word(symbols))
    }
}

impl Word {
    /// `J₁ ∼ J₂`: equal length and related by a cyclic rotation.
    pub fn equivalent(&self, other: &Word) -> Result<bool, WordError> {
        if self.is_empty() || other.is_empty() {
            return Err(WordError::EmptyWord);
        }
        Ok(
            self.len() == other.len()
                && self.canonical_rotation()? == other.canonical_rotation()?,
        )
    }
}

/// `J₁ ∼ J₂` as a free function; see [`Word::equivalent`].
pub fn words_equivalent_finite(j1: &Word, j2: &Word) -> Result<bool, WordError> {
    j1.equivalent(j2)
}

/// Length of the longest proper border (prefix that is also a suffix).
fn border_length(s: &[Symbol]) -> usize {
    let mut pi = vec![0usize; s.len()];
    for i in 1..s.len() {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi.last().copied().unwrap_or(0)
}

/// Start index of the lexicographically least rotation (Duval's
/// factorisation over the doubled string). Returns the first such index.
fn least_rotation(s: &[Symbol]) -> usize {
    let n = s.len();
    let at = |i: usize| s[i % n];
    let mut i = 0;
    let mut ans = 0;
    while i < n {
        ans = i;
        let mut j = i + 1;
        let mut k = i;
        while j < 2 * n && at(k) <= at(j) {
            if at(k) < at(j) {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            i += j - k;
        }
    }
    ans
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl<const K: usize> From<[Symbol; K]> for Word {
    fn from(v: [Symbol; K]) -> Self {
        Word(v.to_vec())
    }
}

impl Index<usize> for Word {
    type Output = Symbol;
    fn index(&self, i: usize) -> &Symbol {
        &self.0[i]
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Symbol;
    type IntoIter = std::slice::Iter<'a, Symbol>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl FromStr for Word {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&self.literal())
        }
    }
}
