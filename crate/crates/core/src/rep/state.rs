use num_complex::Complex64;
use serde::Serialize;

use super::class::{
    expand_irreducible, is_irreducible, Decomposition, Level, Multiplicity, RepClass,
};
use super::decompose::decompose;
use super::{Phase, RepError};
use crate::bfs::{build_cycle_system, direct_sum_all};
use crate::cyclotomic::Cyclotomic;
use crate::words::{Symbol, TransitionMatrix, Word};

/// Whether `w` is a prefix of the periodic sequence `j j j …`.
fn runs_along(w: &Word, j: &Word) -> bool {
    w.iter().enumerate().all(|(t, &s)| s == j[t % j.len()])
}

/// `ω(s_{J'} s_{J''}^*)` for the state of the cyclic vector of `c`.
///
/// For `P(J)` with `|J| = k` this is 1 exactly when `J'` and `J''` lie in a
/// common `I_p(J) = {J^a ∪ (j_1, …, j_p) : a ≥ 0}`; for `P(K)` it is 1 exactly
/// when `J' = J''` is a prefix of `K`.
pub fn state_value(
    a: &TransitionMatrix,
    c: &RepClass,
    j1: &Word,
    j2: &Word,
) -> Result<Complex64, RepError> {
    a.check_word(j1)?;
    a.check_word(j2)?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    if !a.is_admissible(j1)? || !a.is_admissible(j2)? {
        return Ok(zero);
    }
    let hit = match c {
        RepClass::Finite { word, phase } => {
            if !phase.is_one() {
                return Err(RepError::PhaseUnsupported);
            }
            let k = word.len();
            let in_i = |w: &Word, p: usize| w.len() % k == p && runs_along(w, word);
            (0..k).any(|p| in_i(j1, p) && in_i(j2, p))
        }
        RepClass::Tail { tail } => j1 == j2 && *j1 == tail.prefix(j1.len()),
        RepClass::Aperiodic { prefix, .. } => {
            if j1.len() > prefix.len() || j2.len() > prefix.len() {
                return Err(RepError::PrefixTooShort {
                    needed: j1.len().max(j2.len()),
                    known: prefix.len(),
                });
            }
            j1 == j2 && *j1 == prefix.prefix(j1.len())
        }
        RepClass::Integral { .. } => return Err(RepError::IntegralClassUnsupported),
    };
    Ok(if hit { one } else { zero })
}

/// Purity of the state of `c`; same domain as [`state_value`].
pub fn is_pure(c: &RepClass) -> Result<bool, RepError> {
    match c {
        RepClass::Finite { phase, .. } if !phase.is_one() => Err(RepError::PhaseUnsupported),
        RepClass::Integral { .. } => Err(RepError::IntegralClassUnsupported),
        _ => Ok(is_irreducible(c)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GpReport {
    pub word: String,
    pub power: usize,
    /// `π(s_{J^p}) Ω = Ω`.
    pub fixed_vector: bool,
    pub family_size: usize,
    /// `{π(s_{j_l} ⋯ s_{j_k} s_{J^a}) Ω : 1 ≤ l ≤ k, 0 ≤ a < p}` is orthonormal.
    pub orthonormal: bool,
    /// The sum decomposes as `P(J^p)` expanded into irreducibles.
    pub decomposition_matches: bool,
}

impl GpReport {
    pub fn passed(&self) -> bool {
        self.fixed_vector && self.orthonormal && self.decomposition_matches
    }
}

/// Vectors with coefficients in `Z[ζ_p]`, as (point, coefficient) lists.
type CycloVec = Vec<(usize, Cyclotomic)>;

fn inner(u: &CycloVec, v: &CycloVec, order: usize) -> Cyclotomic {
    let mut s = Cyclotomic::zero(order);
    for (x, cu) in u {
        for (y, cv) in v {
            if x == y {
                s = s + &cu.conj() * cv;
            }
        }
    }
    s
}

/// Checks the vector `Ω = p^{-1/2} Σ_j Ω_j` in `⊕_{j=1}^p P(J; ξ^j)` exactly,
/// working with `p^{1/2} Ω` so that all coefficients lie in `Z[ζ_p]`.
pub fn gp_vector_check(a: &TransitionMatrix, j: &Word, p: usize) -> Result<GpReport, RepError> {
    if p == 0 {
        return Err(RepError::InvalidParameter(
            "power must be at least 1".into(),
        ));
    }
    if j.is_empty() || !a.is_cyclically_admissible(j)? || j.is_periodic()? {
        return Err(RepError::NotAdmissible(format!(
            "{} must be cyclically admissible and non-periodic",
            j.literal_for(a.n())
        )));
    }
    let k = j.len();
    let single = build_cycle_system(a, j, 1)?;
    let parts = vec![single.clone(); p];
    let sum = direct_sum_all(&parts)?;
    let offsets: Vec<usize> = (0..p).map(|c| c * single.len()).collect();
    let last: Symbol = j[k - 1];
    let phases: Vec<(Symbol, usize, Phase)> = offsets
        .iter()
        .enumerate()
        .map(|(c, &off)| {
            (
                last,
                off,
                Phase::rotation(c as i64 + 1, p as u64).expect("p >= 1"),
            )
        })
        .collect();
    let m = super::realize::realize(&sum, &phases)?;

    let to_cyclo = |z: Phase| match z {
        Phase::Exact { num, den } => Cyclotomic::root(p, (num * (p as u64 / den)) as i64),
        Phase::Approx { .. } => unreachable!("all weights here are exact"),
    };
    let act = |w: &Word, v: &CycloVec| -> CycloVec {
        v.iter()
            .filter_map(|(x, c)| m.apply_word(w, *x).map(|(y, z)| (y, &to_cyclo(z) * c)))
            .collect()
    };
    let omega: CycloVec = offsets
        .iter()
        .map(|&x| (x, Cyclotomic::integer(p, 1)))
        .collect();

    let jp = j.power(p);
    let moved = act(&jp, &omega);
    let diff_zero = {
        let mut ok = moved.len() == omega.len();
        for (x, c) in &omega {
            let got = moved.iter().find(|(y, _)| y == x).map(|(_, d)| d.clone());
            ok &= got.is_some_and(|d| d == *c);
        }
        ok
    };

    let mut family = Vec::new();
    for a_pow in 0..p {
        let base = act(&j.power(a_pow), &omega);
        for l in 1..=k {
            family.push(act(&j.suffix_from(l), &base));
        }
    }
    let mut orthonormal = true;
    for (s, u) in family.iter().enumerate() {
        for (t, v) in family.iter().enumerate() {
            let want = if s == t { p as i64 } else { 0 };
            orthonormal &= inner(u, v, p).equals_integer(want);
        }
    }

    let got = decompose(&sum, &phases)?;
    let mut target = Decomposition::new(Some(a.clone()), Level::Cyclic);
    target.add(RepClass::finite(jp, Phase::ONE)?, Multiplicity::Finite(1));
    let decomposition_matches = got.same_classes(&expand_irreducible(&target));

    Ok(GpReport {
        word: j.literal_for(a.n()),
        power: p,
        fixed_vector: diff_zero,
        family_size: family.len(),
        orthonormal,
        decomposition_matches,
    })
}
