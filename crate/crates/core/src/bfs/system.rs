use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

use super::construct::ChainWord;
use super::BfsError;
use crate::par::{self, Strategy};
use crate::words::{Symbol, TransitionMatrix};

/// A chain the system was built around, with its points `x_1, x_2, …` in
/// order (so `f_{j_{n-1}}(x_n) = x_{n-1}`).
#[derive(Clone, Debug, PartialEq)]
pub struct DeclaredChain {
    pub word: ChainWord,
    pub points: Vec<usize>,
}

/// An `A`-branching function system restricted to a finite carrier.
///
/// Points are indexed `0..len()` and carry deterministic labels. For each
/// symbol `i` the partial map `f_i` is stored densely.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchingSystem {
    matrix: TransitionMatrix,
    labels: Vec<String>,
    maps: Vec<Vec<Option<usize>>>,
    frontier: Vec<bool>,
    chains: Vec<DeclaredChain>,
}

/// Where a formula sends a point.
pub(crate) enum Image {
    Inside(usize),
    Outside,
}

impl BranchingSystem {
    /// Assembles a system from explicit edges `(i, x, f_i(x))`. Nothing is
    /// validated beyond index ranges and single-valuedness; run
    /// [`validate_bfs`] for the axioms.
    pub fn from_parts(
        matrix: TransitionMatrix,
        labels: Vec<String>,
        edges: &[(Symbol, usize, usize)],
        frontier: &[usize],
    ) -> Result<Self, BfsError> {
        let len = labels.len();
        let mut maps = vec![vec![None; len]; matrix.n()];
        for &(i, x, y) in edges {
            matrix.check_symbol(i)?;
            for p in [x, y] {
                if p >= len {
                    return Err(BfsError::PointOutOfRange { point: p, len });
                }
            }
            let slot = &mut maps[i - 1][x];
            if slot.is_some_and(|old| old != y) {
                return Err(BfsError::ConflictingEdge {
                    symbol: i,
                    point: x,
                });
            }
            *slot = Some(y);
        }
        let mut mask = vec![false; len];
        for &p in frontier {
            if p >= len {
                return Err(BfsError::PointOutOfRange { point: p, len });
            }
            mask[p] = true;
        }
        Ok(BranchingSystem {
            matrix,
            labels,
            maps,
            frontier: mask,
            chains: Vec::new(),
        })
    }

    /// Truncates a genuine system given by a formula on indices. A point is
    /// frontier when one of its images falls outside or no recorded edge
    /// reaches it.
    pub(crate) fn from_indexed<F>(matrix: TransitionMatrix, labels: Vec<String>, image: F) -> Self
    where
        F: Fn(Symbol, usize) -> Option<Image>,
    {
        let len = labels.len();
        let n = matrix.n();
        let mut maps = vec![vec![None; len]; n];
        let mut frontier = vec![false; len];
        let mut reached = vec![false; len];
        for x in 0..len {
            for i in 1..=n {
                match image(i, x) {
                    Some(Image::Inside(y)) => {
                        maps[i - 1][x] = Some(y);
                        reached[y] = true;
                    }
                    Some(Image::Outside) => frontier[x] = true,
                    None => {}
                }
            }
        }
        for (f, r) in frontier.iter_mut().zip(&reached) {
            *f |= !r;
        }
        BranchingSystem {
            matrix,
            labels,
            maps,
            frontier,
            chains: Vec::new(),
        }
    }

    /// [`from_indexed`](Self::from_indexed) over arbitrary point keys.
    pub(crate) fn from_formula<K, L, F>(
        matrix: TransitionMatrix,
        points: Vec<K>,
        label: L,
        image: F,
    ) -> Self
    where
        K: Eq + Hash + Clone,
        L: Fn(&K) -> String,
        F: Fn(Symbol, &K) -> Option<K>,
    {
        let index: HashMap<K, usize> = points
            .iter()
            .cloned()
            .enumerate()
            .map(|(ix, k)| (k, ix))
            .collect();
        let labels = points.iter().map(&label).collect();
        Self::from_indexed(matrix, labels, |i, x| {
            image(i, &points[x]).map(|y| match index.get(&y) {
                Some(&ix) => Image::Inside(ix),
                None => Image::Outside,
            })
        })
    }

    pub(crate) fn with_chain(mut self, chain: DeclaredChain) -> Self {
        self.chains.push(chain);
        self
    }

    pub fn matrix(&self) -> &TransitionMatrix {
        &self.matrix
    }

    /// Number of carrier points.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Index of the point with this label.
    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `f_i(x)` when recorded.
    #[inline]
    pub fn image(&self, i: Symbol, x: usize) -> Option<usize> {
        self.maps[i - 1][x]
    }

    pub fn is_frontier(&self, x: usize) -> bool {
        self.frontier[x]
    }

    pub fn frontier_count(&self) -> usize {
        self.frontier.iter().filter(|&&f| f).count()
    }

    pub fn declared_chains(&self) -> &[DeclaredChain] {
        &self.chains
    }

    /// All recorded edges `(i, x, f_i(x))`, by symbol then point.
    pub fn edges(&self) -> impl Iterator<Item = (Symbol, usize, usize)> + '_ {
        self.maps.iter().enumerate().flat_map(|(i, m)| {
            m.iter()
                .enumerate()
                .filter_map(move |(x, y)| y.map(|y| (i + 1, x, y)))
        })
    }

    /// Recorded preimages of every point: `(i, x)` with `f_i(x) = y`.
    pub fn preimages(&self) -> Vec<Vec<(Symbol, usize)>> {
        let mut pre = vec![Vec::new(); self.len()];
        for (i, x, y) in self.edges() {
            pre[y].push((i, x));
        }
        pre
    }

    /// Removes the edge `f_i(x)`, returning its image. Used to inject defects.
    pub fn remove_edge(&mut self, i: Symbol, x: usize) -> Option<usize> {
        self.maps[i - 1][x].take()
    }
}

/// One failed axiom, with witnesses. Points are carrier indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `f_i(x) = f_i(x') = y` with `x ≠ x'`.
    NonInjective {
        symbol: Symbol,
        first: usize,
        second: usize,
        image: usize,
    },
    /// `y ∈ R(f_i) ∩ R(f_j)`.
    RangeOverlap {
        first: Symbol,
        second: Symbol,
        point: usize,
    },
    /// A non-frontier point lies in no range.
    Uncovered { point: usize },
    /// `x ∈ D(f_i)` disagrees with `x ∈ ⊔_{j: a_ij = 1} R(f_j)`.
    DomainMismatch {
        symbol: Symbol,
        point: usize,
        in_domain: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checked_points: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the branching-function-system axioms. Injectivity and disjoint
/// ranges are checked on all recorded data; covering and the domain identity
/// on non-frontier points.
pub fn validate_bfs(f: &BranchingSystem) -> ValidationReport {
    validate_bfs_with(f, Strategy::default())
}

pub fn validate_bfs_with(f: &BranchingSystem, strategy: Strategy) -> ValidationReport {
    let pre = f.preimages();
    let a = f.matrix();
    let n = a.n();
    let per_point = par::map_range(strategy, f.len(), |y| {
        let mut out = Vec::new();
        let incoming = &pre[y];
        for (k, &(i, x)) in incoming.iter().enumerate() {
            for &(j, x2) in &incoming[k + 1..] {
                if i == j {
                    out.push(Violation::NonInjective {
                        symbol: i,
                        first: x.min(x2),
                        second: x.max(x2),
                        image: y,
                    });
                }
            }
        }
        let mut ranges: Vec<Symbol> = incoming.iter().map(|&(i, _)| i).collect();
        ranges.sort_unstable();
        ranges.dedup();
        for (k, &i) in ranges.iter().enumerate() {
            for &j in &ranges[k + 1..] {
                out.push(Violation::RangeOverlap {
                    first: i,
                    second: j,
                    point: y,
                });
            }
        }
        if f.is_frontier(y) {
            return (out, 0);
        }
        if ranges.is_empty() {
            out.push(Violation::Uncovered { point: y });
        }
        for i in 1..=n {
            let expected = ranges.iter().any(|&j| a.get(i, j));
            let in_domain = f.image(i, y).is_some();
            if expected != in_domain {
                out.push(Violation::DomainMismatch {
                    symbol: i,
                    point: y,
                    in_domain,
                });
            }
        }
        (out, 1)
    });
    let checked_points = per_point.iter().map(|(_, c)| c).sum();
    let mut violations: Vec<Violation> = per_point.into_iter().flat_map(|(v, _)| v).collect();
    violations.sort();
    ValidationReport {
        checked_points,
        violations,
    }
}

/// The coding map `F` on non-frontier points: `F(f_i(x)) = (i, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodingMap {
    entries: Vec<Option<(Symbol, usize)>>,
}

impl CodingMap {
    /// `(i, x)` with `f_i(x) = y`.
    pub fn get(&self, y: usize) -> Result<(Symbol, usize), BfsError> {
        self.entries
            .get(y)
            .copied()
            .flatten()
            .ok_or(BfsError::UnresolvedPoint(y))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn coding_map(f: &BranchingSystem) -> CodingMap {
    let pre = f.preimages();
    let entries = pre
        .into_iter()
        .enumerate()
        .map(|(y, p)| match p.as_slice() {
            [only] if !f.is_frontier(y) => Some(*only),
            _ => None,
        })
        .collect();
    CodingMap { entries }
}

/// `f ⊕ g` on the disjoint union of carriers.
pub fn direct_sum(f: &BranchingSystem, g: &BranchingSystem) -> Result<BranchingSystem, BfsError> {
    direct_sum_all(&[f.clone(), g.clone()])
}

/// Direct sum of several systems. Labels are prefixed `k#` by position.
pub fn direct_sum_all(parts: &[BranchingSystem]) -> Result<BranchingSystem, BfsError> {
    let first = parts
        .first()
        .ok_or_else(|| BfsError::InvalidParameter("empty direct sum".into()))?;
    let matrix = first.matrix.clone();
    if parts.iter().any(|p| p.matrix != matrix) {
        return Err(BfsError::MatrixMismatch);
    }
    let total: usize = parts.iter().map(|p| p.len()).sum();
    let mut labels = Vec::with_capacity(total);
    let mut maps = vec![Vec::with_capacity(total); matrix.n()];
    let mut frontier = Vec::with_capacity(total);
    let mut chains = Vec::new();
    let mut offset = 0;
    for (k, p) in parts.iter().enumerate() {
        labels.extend(p.labels.iter().map(|l| format!("{k}#{l}")));
        for (dst, src) in maps.iter_mut().zip(&p.maps) {
            dst.extend(src.iter().map(|y| y.map(|y| y + offset)));
        }
        frontier.extend_from_slice(&p.frontier);
        chains.extend(p.chains.iter().map(|c| DeclaredChain {
            word: c.word.clone(),
            points: c.points.iter().map(|x| x + offset).collect(),
        }));
        offset += p.len();
    }
    Ok(BranchingSystem {
        matrix,
        labels,
        maps,
        frontier,
        chains,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bfs::{build_cycle_system, standard_bfs};
    use crate::words::Word;

    fn full2() -> TransitionMatrix {
        TransitionMatrix::full(2).unwrap()
    }

    #[test]
    fn injected_range_overlap_is_reported() {
        // f_1: 0 -> 0, f_2: 1 -> 0, so point 0 lies in both ranges
        let labels = (0..2).map(|i| i.to_string()).collect();
        let f = BranchingSystem::from_parts(full2(), labels, &[(1, 0, 0), (2, 1, 0)], &[]).unwrap();
        let report = validate_bfs(&f);
        assert!(report.violations.contains(&Violation::RangeOverlap {
            first: 1,
            second: 2,
            point: 0
        }));
    }

    #[test]
    fn injected_non_injectivity_is_reported() {
        let labels = (0..3).map(|i| i.to_string()).collect();
        let f =
            BranchingSystem::from_parts(full2(), labels, &[(1, 0, 2), (1, 1, 2)], &[0, 1]).unwrap();
        let report = validate_bfs(&f);
        assert!(report.violations.contains(&Violation::NonInjective {
            symbol: 1,
            first: 0,
            second: 1,
            image: 2
        }));
    }

    #[test]
    fn from_parts_rejects_bad_indices() {
        let labels = vec!["a".to_string()];
        assert!(matches!(
            BranchingSystem::from_parts(full2(), labels.clone(), &[(1, 0, 3)], &[]),
            Err(BfsError::PointOutOfRange { .. })
        ));
        assert!(BranchingSystem::from_parts(full2(), labels, &[(1, 0, 0), (1, 0, 0)], &[]).is_ok());
    }

    #[test]
    fn coding_map_round_trip_on_standard_system() {
        let f = standard_bfs(&full2(), 16).unwrap();
        let cm = coding_map(&f);
        // f_1(1) = 1 in 1-based point names
        let one = f.find("1").unwrap();
        assert_eq!(cm.get(one).unwrap(), (1, one));
        for (i, x, y) in f.edges() {
            if !f.is_frontier(y) {
                assert_eq!(cm.get(y).unwrap(), (i, x));
            }
        }
        let frontier = (0..f.len()).find(|&x| f.is_frontier(x)).unwrap();
        assert_eq!(cm.get(frontier), Err(BfsError::UnresolvedPoint(frontier)));
    }

    #[test]
    fn direct_sum_requires_same_matrix() {
        let f = standard_bfs(&full2(), 8).unwrap();
        let g = standard_bfs(&TransitionMatrix::parse("11\n01").unwrap(), 8).unwrap();
        assert_eq!(direct_sum(&f, &g), Err(BfsError::MatrixMismatch));
        let s = direct_sum(&f, &f).unwrap();
        assert_eq!(s.len(), 16);
        assert_eq!(s.label(9), "1#2");
        assert!(validate_bfs(&s).is_valid());
    }

    #[test]
    fn strategies_give_identical_reports() {
        let a = TransitionMatrix::parse("011\n101\n110").unwrap();
        let f = build_cycle_system(&a, &Word::from([1, 2]), 4).unwrap();
        assert_eq!(
            validate_bfs_with(&f, Strategy::Sequential),
            validate_bfs_with(&f, Strategy::Parallel)
        );
    }
}
