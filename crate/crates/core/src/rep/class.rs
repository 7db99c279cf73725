use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Serialize, Serializer};

use super::{Phase, RepError};
use crate::words::{Symbol, TailWord, TransitionMatrix, Word};

/// An equivalence class of cyclic permutative representation, stored by its
/// canonical key.
#[derive(Clone, Debug, PartialEq)]
pub enum RepClass {
    /// `P(J; z)`: a cycle with word `J` (least rotation) and phase `z`.
    Finite { word: Word, phase: Phase },
    /// `P(K)` for an eventually periodic `K`, stored as its tail
    /// representative `(period)^∞`.
    Tail { tail: TailWord },
    /// The direct integral of `P(J; c)` over `c ∈ U(1)`.
    Integral { word: Word },
    /// `P(K)` for a word known only through a named generator.
    Aperiodic { name: String, prefix: Word },
}

impl RepClass {
    pub fn finite(word: Word, phase: Phase) -> Result<RepClass, RepError> {
        Ok(RepClass::Finite {
            word: word.canonical_rotation()?,
            phase,
        })
    }

    pub fn tail(tail: &TailWord) -> Result<RepClass, RepError> {
        let period = tail.reduced().period().canonical_rotation()?;
        Ok(RepClass::Tail {
            tail: TailWord::periodic(period)?,
        })
    }

    pub fn integral(word: Word) -> Result<RepClass, RepError> {
        Ok(RepClass::Integral {
            word: word.canonical_rotation()?,
        })
    }

    /// Checks the class's words against `A`.
    pub fn check(&self, a: &TransitionMatrix) -> Result<(), RepError> {
        let ok = match self {
            RepClass::Finite { word, .. } | RepClass::Integral { word } => {
                a.is_cyclically_admissible(word)?
            }
            RepClass::Tail { tail } => tail.is_admissible(a)?,
            RepClass::Aperiodic { prefix, .. } => a.is_admissible(prefix)?,
        };
        if ok {
            Ok(())
        } else {
            Err(RepError::NotAdmissible(self.to_string()))
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            RepClass::Finite { .. } => "finite",
            RepClass::Tail { .. } => "tail",
            RepClass::Integral { .. } => "integral",
            RepClass::Aperiodic { .. } => "aperiodic",
        }
    }

    fn kind_rank(&self) -> u8 {
        match self {
            RepClass::Finite { .. } => 0,
            RepClass::Tail { .. } => 1,
            RepClass::Integral { .. } => 2,
            RepClass::Aperiodic { .. } => 3,
        }
    }

    fn key_word(&self) -> Vec<Symbol> {
        match self {
            RepClass::Finite { word, .. } | RepClass::Integral { word } => word.as_slice().to_vec(),
            RepClass::Tail { tail } => tail.period().as_slice().to_vec(),
            RepClass::Aperiodic { prefix, .. } => prefix.as_slice().to_vec(),
        }
    }

    /// Deterministic report order: kind, then word, then phase.
    pub fn report_order(&self, other: &RepClass) -> Ordering {
        let phase = |c: &RepClass| match c {
            RepClass::Finite { phase, .. } => phase.order_key(),
            _ => (0, 0.0),
        };
        let name = |c: &RepClass| match c {
            RepClass::Aperiodic { name, .. } => name.clone(),
            _ => String::new(),
        };
        self.kind_rank()
            .cmp(&other.kind_rank())
            .then_with(|| self.key_word().len().cmp(&other.key_word().len()))
            .then_with(|| self.key_word().cmp(&other.key_word()))
            .then_with(|| {
                phase(self)
                    .partial_cmp(&phase(other))
                    .unwrap_or(Ordering::Equal)
            })
            .then_with(|| name(self).cmp(&name(other)))
    }

    /// Literal such as `P(12)`, `P(1;1/2)`, `P((2)^inf)`, `Int(12)` or
    /// `P(name:121...)`, with words rendered for an alphabet of size `n`.
    pub fn literal_for(&self, n: usize) -> String {
        match self {
            RepClass::Finite { word, phase } if phase.is_one() => {
                format!("P({})", word.literal_for(n))
            }
            RepClass::Finite { word, phase } => format!("P({};{phase})", word.literal_for(n)),
            RepClass::Tail { tail } if tail.preperiod().is_empty() => {
                format!("P(({})^inf)", tail.period().literal_for(n))
            }
            RepClass::Tail { tail } => format!(
                "P(({}|{})^inf)",
                tail.preperiod().literal_for(n),
                tail.period().literal_for(n)
            ),
            RepClass::Integral { word } => format!("Int({})", word.literal_for(n)),
            RepClass::Aperiodic { name, prefix } => {
                format!("P({name}:{}...)", prefix.literal_for(n))
            }
        }
    }

    fn max_symbol(&self) -> usize {
        self.key_word().into_iter().max().unwrap_or(0)
    }
}

impl fmt::Display for RepClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal_for(self.max_symbol()))
    }
}

/// Irreducibility: `P(J; z)` iff `J` is non-periodic; `P(K)` iff `K` is not
/// eventually periodic; direct integrals never.
pub fn is_irreducible(c: &RepClass) -> bool {
    match c {
        RepClass::Finite { word, .. } => !word.is_periodic().unwrap_or(true),
        RepClass::Tail { .. } | RepClass::Integral { .. } => false,
        RepClass::Aperiodic { .. } => true,
    }
}

/// Unitary equivalence of two classes. Classes are held in canonical form, so
/// this is equality of canonical keys (phases compared within tolerance when
/// either is approximate). Generated words are identified by name.
pub fn equivalent(c1: &RepClass, c2: &RepClass) -> bool {
    match (c1, c2) {
        (RepClass::Aperiodic { name: a, .. }, RepClass::Aperiodic { name: b, .. }) => a == b,
        _ => c1 == c2,
    }
}

/// `P(J; w) ∘ α_g ∼ P(J; w z_J)` with `z_J = g_{j_1} ⋯ g_{j_k}`; chain classes
/// are gauge invariant.
pub fn twist_by_gauge(c: &RepClass, g: &[Phase]) -> Result<RepClass, RepError> {
    match c {
        RepClass::Finite { word, phase } => {
            let mut z = *phase;
            for &s in word {
                let gs = g.get(s - 1).ok_or(RepError::GaugeLength {
                    needed: s,
                    got: g.len(),
                })?;
                z = z.mul(gs);
            }
            Ok(RepClass::Finite {
                word: word.clone(),
                phase: z,
            })
        }
        RepClass::Tail { .. } | RepClass::Aperiodic { .. } => Ok(c.clone()),
        RepClass::Integral { .. } => Err(RepError::IntegralClassUnsupported),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Add for Multiplicity {
    type Output = Multiplicity;
    fn add(self, rhs: Multiplicity) -> Multiplicity {
        match (self, rhs) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
            _ => Multiplicity::Infinite,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(n) => s.serialize_u64(*n),
            Multiplicity::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Classes `P(J; z)` / `P(K)` as read off the components.
    Cyclic,
    /// After splitting periodic words and tails into irreducibles.
    Irreducible,
}

/// A component the truncation could not classify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Unresolved {
    /// Label of the component's smallest point.
    pub first: String,
    /// Number of points in the component.
    pub size: usize,
}

/// A multiset of classes with multiplicities, kept merged and in report order.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub matrix: Option<TransitionMatrix>,
    pub level: Level,
    entries: Vec<(RepClass, Multiplicity)>,
    pub unresolved: Vec<Unresolved>,
    /// Set when classes of non-eventually-periodic words exist in addition to
    /// the listed ones.
    pub aperiodic_tails: bool,
}

impl Decomposition {
    pub fn new(matrix: Option<TransitionMatrix>, level: Level) -> Self {
        Decomposition {
            matrix,
            level,
            entries: Vec::new(),
            unresolved: Vec::new(),
            aperiodic_tails: false,
        }
    }

    pub fn entries(&self) -> &[(RepClass, Multiplicity)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds `mult` copies of `class`, merging with an equivalent entry.
    pub fn add(&mut self, class: RepClass, mult: Multiplicity) {
        if let Some(e) = self.entries.iter_mut().find(|(c, _)| equivalent(c, &class)) {
            e.1 = e.1 + mult;
            return;
        }
        let at = self
            .entries
            .iter()
            .position(|(c, _)| class.report_order(c) == Ordering::Less)
            .unwrap_or(self.entries.len());
        self.entries.insert(at, (class, mult));
    }

    pub fn multiplicity(&self, class: &RepClass) -> Option<Multiplicity> {
        self.entries
            .iter()
            .find(|(c, _)| equivalent(c, class))
            .map(|(_, m)| *m)
    }

    /// Direct sum of two decompositions.
    pub fn merge(&mut self, other: &Decomposition) {
        for (c, m) in &other.entries {
            self.add(c.clone(), *m);
        }
        self.unresolved.extend(other.unresolved.iter().cloned());
        self.aperiodic_tails |= other.aperiodic_tails;
    }

    /// Same classes with the same multiplicities, ignoring metadata.
    pub fn same_classes(&self, other: &Decomposition) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .all(|(c, m)| other.multiplicity(c) == Some(*m))
    }
}

/// Splits every class into irreducibles: `P(J₀^p; c)` becomes
/// `⊕_{j=1}^p P(J₀; c^{1/p} ξ^j)` with `ξ = e^{2πi/p}`, and a tail class
/// `P(J^∞)` becomes the direct integral over `P(J; c)`.
pub fn expand_irreducible(d: &Decomposition) -> Decomposition {
    let mut out = Decomposition::new(d.matrix.clone(), Level::Irreducible);
    out.unresolved = d.unresolved.clone();
    out.aperiodic_tails = d.aperiodic_tails;
    for (c, m) in &d.entries {
        match c {
            RepClass::Finite { word, phase } => {
                let (root, p) = word.primitive_root().expect("class words are non-empty");
                let base = phase.root(p as u64);
                for j in 1..=p {
                    let xi = Phase::rotation(j as i64, p as u64).expect("p >= 1");
                    let class = RepClass::finite(root.clone(), base.mul(&xi)).expect("non-empty");
                    out.add(class, *m);
                }
            }
            RepClass::Tail { tail } => {
                let class = RepClass::integral(tail.period().clone()).expect("non-empty");
                out.add(class, *m);
            }
            _ => out.add(c.clone(), *m),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(w: &str) -> RepClass {
        RepClass::finite(Word::parse(w).unwrap(), Phase::ONE).unwrap()
    }

    fn p_z(w: &str, num: i64, den: u64) -> RepClass {
        RepClass::finite(Word::parse(w).unwrap(), Phase::rotation(num, den).unwrap()).unwrap()
    }

    #[test]
    fn rotation_invariance_and_phase_sensitivity() {
        assert!(equivalent(&p("12"), &p("21")));
        assert!(!equivalent(&p("1"), &p_z("1", 1, 2)));
        let tail = RepClass::tail(&TailWord::periodic(Word::from([1])).unwrap()).unwrap();
        assert!(!equivalent(&p("1"), &tail));
        let shifted = RepClass::tail(&TailWord::parse("2|(1)").unwrap()).unwrap();
        assert!(equivalent(&tail, &shifted));
    }

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&p_z("12", 1, 3)));
        assert!(!is_irreducible(&p("1212")));
        let tail = RepClass::tail(&TailWord::periodic(Word::from([1, 2])).unwrap()).unwrap();
        assert!(!is_irreducible(&tail));
    }

    #[test]
    fn expansion_of_square() {
        let mut d = Decomposition::new(None, Level::Cyclic);
        d.add(p("11"), Multiplicity::Finite(1));
        let e = expand_irreducible(&d);
        assert_eq!(
            e.entries(),
            &[
                (p("1"), Multiplicity::Finite(1)),
                (p_z("1", 1, 2), Multiplicity::Finite(1))
            ]
        );
        assert_eq!(expand_irreducible(&e).entries(), e.entries());
    }

    #[test]
    fn expansion_of_tail_is_integral() {
        let mut d = Decomposition::new(None, Level::Cyclic);
        d.add(
            RepClass::tail(&TailWord::periodic(Word::from([2])).unwrap()).unwrap(),
            Multiplicity::Infinite,
        );
        let e = expand_irreducible(&d);
        assert_eq!(
            e.entries(),
            &[(
                RepClass::Integral {
                    word: Word::from([2])
                },
                Multiplicity::Infinite
            )]
        );
    }

    #[test]
    fn gauge_twist() {
        let i = Phase::rotation(1, 4).unwrap();
        assert_eq!(twist_by_gauge(&p("12"), &[i, i]).unwrap(), p_z("12", 1, 2));
        assert_eq!(twist_by_gauge(&p("12"), &[Phase::ONE; 2]).unwrap(), p("12"));
        let tail = RepClass::tail(&TailWord::periodic(Word::from([2])).unwrap()).unwrap();
        assert_eq!(twist_by_gauge(&tail, &[i, i]).unwrap(), tail);
        assert_eq!(
            twist_by_gauge(
                &RepClass::Integral {
                    word: Word::from([1])
                },
                &[i]
            ),
            Err(RepError::IntegralClassUnsupported)
        );
    }

    #[test]
    fn infinite_multiplicity_absorbs() {
        let mut d = Decomposition::new(None, Level::Cyclic);
        d.add(p("2"), Multiplicity::Finite(3));
        d.add(p("2"), Multiplicity::Infinite);
        d.add(p("1"), Multiplicity::Finite(1));
        assert_eq!(d.entries()[0], (p("1"), Multiplicity::Finite(1)));
        assert_eq!(d.multiplicity(&p("2")), Some(Multiplicity::Infinite));
    }

    #[test]
    fn literals() {
        assert_eq!(p("21").to_string(), "P(12)");
        assert_eq!(p_z("1", 1, 2).to_string(), "P(1;1/2)");
        let tail = RepClass::tail(&TailWord::parse("1|(2)").unwrap()).unwrap();
        assert_eq!(tail.to_string(), "P((2)^inf)");
    }
}
