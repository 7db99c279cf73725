use serde::Serialize;

use super::class::{Decomposition, Level, Multiplicity, RepClass, Unresolved};
use super::realize::{realize, MatrixRealization};
use super::{Phase, RepError};
use crate::bfs::{
    a_cycle_set, find_components, standard_bfs, BranchingSystem, ChainWord, ComponentKind,
    ComponentSkeleton,
};
use crate::words::{enumerate_cyclic_classes, pspec_summary, TransitionMatrix, Word};

/// Reads the class of one resolved component: a cycle gives `P(J; z)` with
/// `z` the product of the weights around the cycle, a chain gives `P(K)`.
pub fn classify_component(
    c: &ComponentSkeleton,
    m: &MatrixRealization,
) -> Result<RepClass, RepError> {
    match c.kind {
        ComponentKind::Cycle => {
            let k = c.points.len();
            let mut z = Phase::ONE;
            for l in 0..k {
                let w = m
                    .weight(c.word[l], c.points[(l + 1) % k])
                    .ok_or(RepError::UnresolvedComponent)?;
                z = z.mul(&w);
            }
            RepClass::finite(c.word.clone(), z)
        }
        ComponentKind::Chain => {
            match c
                .chain
                .and_then(|ix| m.chain_word(ix))
                .ok_or(RepError::UnresolvedComponent)?
            {
                ChainWord::Tail(t) => RepClass::tail(t),
                ChainWord::Generated(g) => Ok(RepClass::Aperiodic {
                    name: g.name().to_string(),
                    prefix: c.word.clone(),
                }),
            }
        }
        ComponentKind::Unresolved => Err(RepError::UnresolvedComponent),
    }
}

/// Cyclic-level decomposition of `π_f`. Components the truncation cannot
/// resolve are listed in `unresolved`.
pub fn decompose(
    f: &BranchingSystem,
    phases: &[(crate::words::Symbol, usize, Phase)],
) -> Result<Decomposition, RepError> {
    let m = realize(f, phases)?;
    let mut d = Decomposition::new(Some(f.matrix().clone()), Level::Cyclic);
    for c in find_components(f) {
        if c.kind == ComponentKind::Unresolved {
            d.unresolved.push(Unresolved {
                first: f.label(c.basin[0]).to_string(),
                size: c.basin.len(),
            });
            continue;
        }
        d.add(classify_component(&c, &m)?, Multiplicity::Finite(1));
    }
    Ok(d)
}

/// The standard representation, read from the cycles of `φ_A`:
/// `⊕_{J ∈ J_{A,1}} P(J) ⊕ (⊕_{J ∈ J_{A,∞}} P(J))^{⊕∞}`.
pub fn decompose_standard(a: &TransitionMatrix) -> Decomposition {
    let cycles = a_cycle_set(a);
    let mut d = Decomposition::new(Some(a.clone()), Level::Cyclic);
    for w in &cycles.multiplicity_one {
        d.add(
            RepClass::finite(w.clone(), Phase::ONE).expect("non-empty"),
            Multiplicity::Finite(1),
        );
    }
    for w in &cycles.multiplicity_infinite {
        d.add(
            RepClass::finite(w.clone(), Phase::ONE).expect("non-empty"),
            Multiplicity::Infinite,
        );
    }
    d
}

pub fn standard_is_multiplicity_free(a: &TransitionMatrix) -> bool {
    a_cycle_set(a).multiplicity_infinite.is_empty()
}

pub fn standard_is_irreducible(a: &TransitionMatrix) -> bool {
    let c = a_cycle_set(a);
    c.multiplicity_infinite.is_empty() && c.multiplicity_one.len() == 1
}

/// Cycle counts of the truncated standard system at one truncation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardCount {
    pub truncation: usize,
    /// `(word, number of cycles)` for each cycle word found.
    pub cycles: Vec<(String, usize)>,
    pub chains: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardCrossCheck {
    pub counts: Vec<StandardCount>,
    /// Multiplicity-one words appear exactly once at every truncation.
    pub single_cycles_once: bool,
    /// Infinite-multiplicity words appear, with counts nondecreasing in the
    /// truncation.
    pub repeated_cycles_grow: bool,
    /// No other cycle words and no chains.
    pub nothing_else: bool,
}

impl StandardCrossCheck {
    pub fn passed(&self) -> bool {
        self.single_cycles_once && self.repeated_cycles_grow && self.nothing_else
    }
}

/// Compares the symbolic standard decomposition with the cycles of the truncated
/// standard system at each truncation (given in increasing order).
pub fn cross_check_standard(
    a: &TransitionMatrix,
    truncations: &[usize],
) -> Result<StandardCrossCheck, RepError> {
    let cycles = a_cycle_set(a);
    let mut counts = Vec::new();
    let mut single_cycles_once = true;
    let mut repeated_cycles_grow = true;
    let mut nothing_else = true;
    let mut previous: Option<Vec<usize>> = None;
    for &b in truncations {
        let f = standard_bfs(a, b)?;
        let comps = find_components(&f);
        let mut found: Vec<(Word, usize)> = Vec::new();
        let mut chains = 0;
        for c in &comps {
            match c.kind {
                ComponentKind::Cycle => {
                    let w = c.word.canonical_rotation()?;
                    match found.iter_mut().find(|(x, _)| *x == w) {
                        Some(e) => e.1 += 1,
                        None => found.push((w, 1)),
                    }
                }
                ComponentKind::Chain => chains += 1,
                ComponentKind::Unresolved => {}
            }
        }
        found.sort();
        let count = |w: &Word| found.iter().find(|(x, _)| x == w).map_or(0, |e| e.1);
        single_cycles_once &= cycles.multiplicity_one.iter().all(|w| count(w) == 1);
        let now: Vec<usize> = cycles.multiplicity_infinite.iter().map(count).collect();
        repeated_cycles_grow &= now.iter().all(|&c| c >= 1);
        if let Some(prev) = &previous {
            repeated_cycles_grow &= prev.iter().zip(&now).all(|(p, q)| p <= q);
        }
        nothing_else &= chains == 0 && found.iter().all(|(w, _)| cycles.all.contains(w));
        previous = Some(now);
        counts.push(StandardCount {
            truncation: b,
            cycles: found
                .iter()
                .map(|(w, c)| (w.literal_for(a.n()), *c))
                .collect(),
            chains,
        });
    }
    Ok(StandardCrossCheck {
        counts,
        single_cycles_once,
        repeated_cycles_grow,
        nothing_else,
    })
}

/// The shift representation up to period `max_period`: every class of
/// `[1..N]*_A` once, plus the marker for non-eventually-periodic classes when
/// the permutative spectrum is infinite.
pub fn decompose_shift(a: &TransitionMatrix, max_period: usize) -> Result<Decomposition, RepError> {
    if max_period == 0 {
        return Err(RepError::InvalidParameter(
            "max period must be at least 1".into(),
        ));
    }
    let mut d = Decomposition::new(Some(a.clone()), Level::Cyclic);
    for c in enumerate_cyclic_classes(a, max_period)
        .into_iter()
        .filter(|c| !c.periodic)
    {
        d.add(
            RepClass::finite(c.word, Phase::ONE)?,
            Multiplicity::Finite(1),
        );
    }
    d.aperiodic_tails = !pspec_summary(a, max_period).finite;
    Ok(d)
}
