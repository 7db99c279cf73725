use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Symbol, Word, WordError};

/// An `N×N` 0/1 matrix with no zero rows or columns, `N ≥ 2`.
///
/// Indices are 1-based in the public API.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u8>>", into = "Vec<Vec<u8>>")]
pub struct TransitionMatrix {
    n: usize,
    entries: Vec<bool>,
}

impl TransitionMatrix {
    /// Validates a square 0/1 array.
    pub fn new(rows: &[Vec<u8>]) -> Result<Self, WordError> {
        let n = rows.len();
        if n < 2 {
            return Err(WordError::TooSmall);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(WordError::NotSquare {
                    row: r + 1,
                    len: row.len(),
                    expected: n,
                });
            }
            for (c, &v) in row.iter().enumerate() {
                match v {
                    0 => entries.push(false),
                    1 => entries.push(true),
                    _ => {
                        return Err(WordError::NonBinaryEntry {
                            row: r + 1,
                            col: c + 1,
                        })
                    }
                }
            }
        }
        let m = TransitionMatrix { n, entries };
        for i in 1..=n {
            if !(1..=n).any(|j| m.get(i, j)) {
                return Err(WordError::ZeroRow(i));
            }
        }
        for j in 1..=n {
            if !(1..=n).any(|i| m.get(i, j)) {
                return Err(WordError::ZeroColumn(j));
            }
        }
        Ok(m)
    }

    /// The all-ones `n×n` matrix (the Cuntz algebra case).
    pub fn full(n: usize) -> Result<Self, WordError> {
        Self::new(&vec![vec![1; n]; n])
    }

    /// Parses the line format: one row per line of `0`/`1` characters.
    /// Whitespace inside a line and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let mut rows = Vec::new();
        for (r, line) in text.lines().enumerate() {
            let row: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
            if row.is_empty() {
                continue;
            }
            let mut out = Vec::with_capacity(row.len());
            for (c, ch) in row.into_iter().enumerate() {
                match ch {
                    '0' => out.push(0),
                    '1' => out.push(1),
                    _ => {
                        return Err(WordError::NonBinaryEntry {
                            row: r + 1,
                            col: c + 1,
                        })
                    }
                }
            }
            rows.push(out);
        }
        Self::new(&rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `a_ij` for 1-based `i`, `j`. Panics when out of range.
    #[inline]
    pub fn get(&self, i: Symbol, j: Symbol) -> bool {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "index out of range"
        );
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (1..=self.n)
            .map(|i| (1..=self.n).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    pub fn is_full(&self) -> bool {
        self.entries.iter().all(|&e| e)
    }

    pub fn check_symbol(&self, s: Symbol) -> Result<(), WordError> {
        if (1..=self.n).contains(&s) {
            Ok(())
        } else {
            Err(WordError::SymbolOutOfRange {
                symbol: s,
                n: self.n,
            })
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<(), WordError> {
        w.iter().try_for_each(|&s| self.check_symbol(s))
    }

    /// Consecutive letters satisfy `a_{j_{i-1} j_i} = 1`. Words of length
    /// 0 and 1 are admissible.
    pub fn is_admissible(&self, w: &Word) -> Result<bool, WordError> {
        self.check_word(w)?;
        Ok(w.as_slice().windows(2).all(|p| self.get(p[0], p[1])))
    }

    /// Admissible and the wrap-around entry `a_{j_k j_1}` is 1.
    pub fn is_cyclically_admissible(&self, w: &Word) -> Result<bool, WordError> {
        let (first, last) = match (w.first(), w.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return Err(WordError::EmptyWord),
        };
        Ok(self.is_admissible(w)? && self.get(last, first))
    }

    /// Successors `{j : a_ij = 1}` in increasing order.
    pub fn row_support(&self, i: Symbol) -> Vec<Symbol> {
        (1..=self.n).filter(|&j| self.get(i, j)).collect()
    }

    /// Predecessors `{i : a_ij = 1}` in increasing order.
    pub fn column_support(&self, j: Symbol) -> Vec<Symbol> {
        (1..=self.n).filter(|&i| self.get(i, j)).collect()
    }

    /// Every valid 2×2 matrix, in row-major binary order.
    pub fn all_2x2() -> Vec<TransitionMatrix> {
        (0u8..16)
            .filter_map(|bits| {
                let b = |k: u8| (bits >> (3 - k)) & 1;
                Self::new(&[vec![b(0), b(1)], vec![b(2), b(3)]]).ok()
            })
            .collect()
    }
}

impl TryFrom<Vec<Vec<u8>>> for TransitionMatrix {
    type Error = WordError;
    fn try_from(rows: Vec<Vec<u8>>) -> Result<Self, Self::Error> {
        Self::new(&rows)
    }
}

impl From<TransitionMatrix> for Vec<Vec<u8>> {
    fn from(m: TransitionMatrix) -> Self {
        m.rows()
    }
}

impl fmt::Display for TransitionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            for v in row {
                write!(f, "{v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
