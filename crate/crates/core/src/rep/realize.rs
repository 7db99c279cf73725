use serde::Serialize;

use super::{Phase, RepError};
use crate::bfs::{BranchingSystem, ChainWord};
use crate::par::{self, Strategy};
use crate::words::{Symbol, TransitionMatrix, Word};

/// `π_f(s_i) e_n = z_{i,n} e_{f_i(n)}` on the carrier of a branching system,
/// stored as one weighted partial map per symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixRealization {
    matrix: TransitionMatrix,
    labels: Vec<String>,
    images: Vec<Vec<Option<(usize, Phase)>>>,
    preimages: Vec<Vec<Vec<usize>>>,
    frontier: Vec<bool>,
    chains: Vec<ChainWord>,
}

/// Realizes `π_f`. Every weight is 1 except the listed `(i, n, z)`, which set
/// `z_{i,n} = z`.
pub fn realize(
    f: &BranchingSystem,
    phases: &[(Symbol, usize, Phase)],
) -> Result<MatrixRealization, RepError> {
    let n = f.matrix().n();
    let len = f.len();
    let mut images = vec![vec![None; len]; n];
    let mut preimages = vec![vec![Vec::new(); len]; n];
    for (i, x, y) in f.edges() {
        images[i - 1][x] = Some((y, Phase::ONE));
        preimages[i - 1][y].push(x);
    }
    for &(i, x, z) in phases {
        let slot = images
            .get_mut(i.wrapping_sub(1))
            .and_then(|m| m.get_mut(x))
            .and_then(|s| s.as_mut())
            .ok_or(RepError::PhaseOffDomain {
                symbol: i,
                point: x,
            })?;
        slot.1 = z;
    }
    Ok(MatrixRealization {
        matrix: f.matrix().clone(),
        labels: f.labels().to_vec(),
        images,
        preimages,
        frontier: (0..len).map(|x| f.is_frontier(x)).collect(),
        chains: f.declared_chains().iter().map(|c| c.word.clone()).collect(),
    })
}

impl MatrixRealization {
    pub fn matrix(&self) -> &TransitionMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn is_frontier(&self, x: usize) -> bool {
        self.frontier[x]
    }

    pub(crate) fn chain_word(&self, c: usize) -> Option<&ChainWord> {
        self.chains.get(c)
    }

    /// `s_i e_x`, or `None` when `x ∉ D(f_i)`.
    pub fn apply(&self, i: Symbol, x: usize) -> Option<(usize, Phase)> {
        self.images[i - 1][x]
    }

    /// `s_i^* e_y` for a realization with injective maps.
    pub fn apply_adjoint(&self, i: Symbol, y: usize) -> Option<(usize, Phase)> {
        let &x = self.preimages[i - 1][y].first()?;
        let (_, z) = self.images[i - 1][x].expect("recorded edge");
        Some((x, z.conj()))
    }

    /// `s_J e_x = s_{j_1} ⋯ s_{j_m} e_x`.
    pub fn apply_word(&self, w: &Word, x: usize) -> Option<(usize, Phase)> {
        w.iter().rev().try_fold((x, Phase::ONE), |(p, z), &i| {
            self.apply(i, p).map(|(q, zi)| (q, z.mul(&zi)))
        })
    }

    /// `s_J^* e_x = s_{j_m}^* ⋯ s_{j_1}^* e_x`.
    pub fn apply_word_adjoint(&self, w: &Word, x: usize) -> Option<(usize, Phase)> {
        w.iter().try_fold((x, Phase::ONE), |(p, z), &i| {
            self.apply_adjoint(i, p).map(|(q, zi)| (q, z.mul(&zi)))
        })
    }

    /// `⟨e_x, s_{J'} s_{J''}^* e_x⟩`.
    pub fn matrix_coefficient(&self, j1: &Word, j2: &Word, x: usize) -> Scalar {
        match self
            .apply_word_adjoint(j2, x)
            .and_then(|(y, z)| self.apply_word(j1, y).map(|(w, z1)| (w, z.mul(&z1))))
        {
            Some((w, z)) if w == x => Scalar::Unit(z),
            _ => Scalar::Zero,
        }
    }

    /// The edge weight `z_{i,x}`.
    pub fn weight(&self, i: Symbol, x: usize) -> Option<Phase> {
        self.apply(i, x).map(|(_, z)| z)
    }

    /// Deletes `s_i e_x`, for defect injection.
    pub fn remove_edge(&mut self, i: Symbol, x: usize) -> bool {
        match self.images[i - 1][x].take() {
            Some((y, _)) => {
                self.preimages[i - 1][y].retain(|&p| p != x);
                true
            }
            None => false,
        }
    }
}

/// A scalar that is either zero or a unit phase; values of `⟨e_x, s_μ e_x⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scalar {
    Zero,
    Unit(Phase),
}

impl Scalar {
    pub fn to_complex(self) -> num_complex::Complex64 {
        match self {
            Scalar::Zero => num_complex::Complex64::new(0.0, 0.0),
            Scalar::Unit(z) => z.to_complex(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RelationViolation {
    /// `s_i^* s_i e_n ≠ Σ_j a_ij s_j s_j^* e_n`.
    SourceProjectionFail { symbol: Symbol, point: usize },
    /// `Σ_i s_i s_i^* e_n ≠ e_n`.
    CompletenessFail { point: usize },
    /// A weight that is not a unit phase.
    NonUnitWeight { symbol: Symbol, point: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checked_points: usize,
    pub skipped_frontier: usize,
    pub source_projection_passes: usize,
    pub completeness_passes: usize,
    pub violations: Vec<RelationViolation>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `s_i^* s_i = Σ_j a_ij s_j s_j^*` and `Σ_i s_i s_i^* = I` on every
/// non-frontier basis vector.
pub fn verify_ck_relations(m: &MatrixRealization) -> RelationReport {
    verify_ck_relations_with(m, Strategy::default())
}

pub fn verify_ck_relations_with(m: &MatrixRealization, strategy: Strategy) -> RelationReport {
    let n = m.matrix.n();
    let per_point = par::map_range(strategy, m.dim(), |x| {
        let mut out = Vec::new();
        for i in 1..=n {
            if let Some((_, z)) = m.images[i - 1][x] {
                if (z.to_complex().norm() - 1.0).abs() > super::phase::PHASE_TOLERANCE {
                    out.push(RelationViolation::NonUnitWeight {
                        symbol: i,
                        point: x,
                    });
                }
            }
        }
        if m.frontier[x] {
            return (out, 0, 0);
        }
        // s_j s_j^* e_x = (#f_j-preimages of x) e_x, unit weights cancelling
        let range_count: Vec<usize> = (0..n).map(|j| m.preimages[j][x].len()).collect();
        let mut source_ok = 0;
        for i in 1..=n {
            // s_i^* s_i e_x = Σ_{x': f_i(x') = f_i(x)} z̄' z e_{x'}; diagonal iff alone
            let lhs = match m.images[i - 1][x] {
                Some((y, _)) if m.preimages[i - 1][y].len() == 1 => Some(1),
                Some(_) => None,
                None => Some(0),
            };
            let rhs: usize = (1..=n)
                .filter(|&j| m.matrix.get(i, j))
                .map(|j| range_count[j - 1])
                .sum();
            if lhs == Some(rhs) {
                source_ok += 1;
            } else {
                out.push(RelationViolation::SourceProjectionFail {
                    symbol: i,
                    point: x,
                });
            }
        }
        let complete = range_count.iter().sum::<usize>() == 1;
        if !complete {
            out.push(RelationViolation::CompletenessFail { point: x });
        }
        (out, source_ok, usize::from(complete))
    });
    let mut report = RelationReport {
        checked_points: 0,
        skipped_frontier: 0,
        source_projection_passes: 0,
        completeness_passes: 0,
        violations: Vec::new(),
    };
    for (x, (v, s, c)) in per_point.into_iter().enumerate() {
        if m.frontier[x] {
            report.skipped_frontier += 1;
        } else {
            report.checked_points += 1;
        }
        report.source_projection_passes += s;
        report.completeness_passes += c;
        report.violations.extend(v);
    }
    report.violations.sort();
    report
}
