use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Symbol, TransitionMatrix, Word, WordError};

/// An eventually periodic infinite word `J₀ ∪ J₁^∞`.
///
/// The period is always stored primitive. Two values are the same infinite
/// sequence iff their [`reduced`](TailWord::reduced) forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TailWord {
    preperiod: Word,
    period: Word,
}

impl TailWord {
    /// Builds `pre ∪ period^∞`, replacing the period by its primitive root.
    pub fn new(preperiod: Word, period: Word) -> Result<Self, WordError> {
        let (root, _) = period.primitive_root()?;
        Ok(TailWord {
            preperiod,
            period: root,
        })
    }

    /// `J^∞`.
    pub fn periodic(period: Word) -> Result<Self, WordError> {
        Self::new(Word::empty(), period)
    }

    pub fn preperiod(&self) -> &Word {
        &self.preperiod
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// The `n`-th letter, 0-based.
    pub fn symbol(&self, n: usize) -> Symbol {
        let pre = self.preperiod.len();
        if n < pre {
            self.preperiod[n]
        } else {
            self.period[(n - pre) % self.period.len()]
        }
    }

    /// The first `len` letters.
    pub fn prefix(&self, len: usize) -> Word {
        Word::new((0..len).map(|n| self.symbol(n)).collect())
    }

    /// Size of the finite description, `|J₀| + |J₁|`.
    pub fn description_len(&self) -> usize {
        self.preperiod.len() + self.period.len()
    }

    /// Admissible as an element of `{1..N}^∞_A`.
    pub fn is_admissible(&self, a: &TransitionMatrix) -> Result<bool, WordError> {
        Ok(a.is_admissible(&self.preperiod.concat(&self.period))?
            && a.is_cyclically_admissible(&self.period)?)
    }

    /// Same sequence with the shortest preperiod: the last preperiod letter is
    /// absorbed into the period while it equals the period's last letter.
    pub fn reduced(&self) -> TailWord {
        let mut pre = self.preperiod.clone().into_vec();
        let mut period = self.period.clone().into_vec();
        while let (Some(&p), Some(&q)) = (pre.last(), period.last()) {
            if p != q {
                break;
            }
            pre.pop();
            period.rotate_right(1);
        }
        TailWord {
            preperiod: Word::new(pre),
            period: Word::new(period),
        }
    }

    /// `(i) ∪ K`, in reduced form.
    pub fn prepend(&self, s: Symbol) -> TailWord {
        TailWord {
            preperiod: self.preperiod.prepend(s),
            period: self.period.clone(),
        }
        .reduced()
    }

    /// Drops the first letter, returning it with the remaining sequence.
    pub fn shift(&self) -> (Symbol, TailWord) {
        if let Some(first) = self.preperiod.first() {
            let rest = Word::new(self.preperiod.as_slice()[1..].to_vec());
            (
                first,
                TailWord {
                    preperiod: rest,
                    period: self.period.clone(),
                },
            )
        } else {
            let first = self.period[0];
            let mut p = self.period.clone().into_vec();
            p.rotate_left(1);
            (
                first,
                TailWord {
                    preperiod: Word::empty(),
                    period: Word::new(p),
                },
            )
        }
    }

    /// Literal `pre|(period)`, e.g. `1|(2)` or `|(12)`.
    pub fn literal(&self) -> String {
        let n = self
            .preperiod
            .iter()
            .chain(self.period.iter())
            .copied()
            .max()
            .unwrap_or(0);
        format!(
            "{}|({})",
            self.preperiod.literal_for(n),
            self.period.literal_for(n)
        )
    }

    /// Parses `pre|(period)`; the parentheses around the period are optional.
    pub fn parse(s: &str) -> Result<TailWord, WordError> {
        let s = s.trim();
        let err = || WordError::Parse {
            what: "tail word",
            input: s.to_string(),
        };
        let (pre, period) = s.split_once('|').ok_or_else(err)?;
        let period = period.trim();
        let period = period
            .strip_prefix('(')
            .and_then(|p| p.strip_suffix(')'))
            .unwrap_or(period);
        let pre = if pre.trim().is_empty() {
            Word::empty()
        } else {
            Word::parse(pre)?
        };
        let period = Word::parse(period)?;
        if period.is_empty() {
            return Err(err());
        }
        TailWord::new(pre, period)
    }
}

/// Canonical representative of the tail class of `k`: empty preperiod and
/// the least rotation of the primitive period.
pub fn tail_canonical(a: &TransitionMatrix, k: &TailWord) -> Result<TailWord, WordError> {
    if !k.is_admissible(a)? {
        return Err(WordError::NotAdmissible(k.literal()));
    }
    let reduced = k.reduced();
    Ok(TailWord {
        preperiod: Word::empty(),
        period: reduced.period.canonical_rotation()?,
    })
}

/// Tail equivalence: the two sequences agree after dropping finite prefixes.
pub fn words_equivalent_infinite(
    a: &TransitionMatrix,
    k1: &TailWord,
    k2: &TailWord,
) -> Result<bool, WordError> {
    Ok(tail_canonical(a, k1)? == tail_canonical(a, k2)?)
}

impl FromStr for TailWord {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TailWord::parse(s)
    }
}

impl fmt::Display for TailWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}
