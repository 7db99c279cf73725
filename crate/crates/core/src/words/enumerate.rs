use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use super::{Symbol, TransitionMatrix, Word, WordError};
use crate::par::{self, Strategy};

/// A minimal cyclically admissible word, flagged periodic or not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicClass {
    pub word: Word,
    pub periodic: bool,
}

/// All minimal cyclically admissible words of length `1..=max_len`, ordered by
/// (length, value). The non-periodic entries are `[1..N]*_A` up to `max_len`.
pub fn enumerate_cyclic_classes(a: &TransitionMatrix, max_len: usize) -> Vec<CyclicClass> {
    enumerate_cyclic_classes_with(a, max_len, Strategy::default())
}

pub fn enumerate_cyclic_classes_with(
    a: &TransitionMatrix,
    max_len: usize,
    strategy: Strategy,
) -> Vec<CyclicClass> {
    let n = a.n();
    // one task per (length, first letter); order of tasks is the output order
    par::flat_map_range(strategy, max_len * n, |task| {
        let len = task / n + 1;
        let first = task % n + 1;
        let mut out = Vec::new();
        let mut buf = vec![first];
        necklaces_from(a, len, first, &mut buf, &mut out);
        out
    })
}

/// Depth-first extension of `buf` by letters `≥ first` (a minimal rotation
/// starts with its least letter).
fn necklaces_from(
    a: &TransitionMatrix,
    len: usize,
    first: Symbol,
    buf: &mut Vec<Symbol>,
    out: &mut Vec<CyclicClass>,
) {
    if buf.len() == len {
        let last = *buf.last().unwrap();
        if !a.get(last, first) {
            return;
        }
        let w = Word::new(buf.clone());
        if w.is_minimal().unwrap() {
            let periodic = w.is_periodic().unwrap();
            out.push(CyclicClass { word: w, periodic });
        }
        return;
    }
    let last = *buf.last().unwrap();
    for s in first..=a.n() {
        if a.get(last, s) {
            buf.push(s);
            necklaces_from(a, len, first, buf, out);
            buf.pop();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TreeSide {
    /// `T(A;j)`: words whose last letter may precede `j`.
    In,
    /// `T(j;A)`: words whose first letter may follow `j`.
    Out,
}

/// The members of `T(A;j)` or `T(j;A)` up to a length bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeNodeSet {
    pub root: Symbol,
    pub depth: usize,
    pub side: TreeSide,
    pub members: Vec<Word>,
}

/// `T(A;j)` (side `In`: `a_{j_k j} = 1`) or `T(j;A)` (side `Out`:
/// `a_{j j_1} = 1`) truncated to words of length `≤ depth`, ordered by
/// (length, value).
pub fn tree(
    a: &TransitionMatrix,
    j: Symbol,
    depth: usize,
    side: TreeSide,
) -> Result<TreeNodeSet, WordError> {
    a.check_symbol(j)?;
    let mut members = Vec::new();
    for len in 1..=depth {
        let mut buf = Vec::with_capacity(len);
        admissible_words(a, len, &mut buf, &mut |w: &[Symbol]| {
            let keep = match side {
                TreeSide::In => a.get(w[w.len() - 1], j),
                TreeSide::Out => a.get(j, w[0]),
            };
            if keep {
                members.push(Word::new(w.to_vec()));
            }
        });
    }
    Ok(TreeNodeSet {
        root: j,
        depth,
        side,
        members,
    })
}

/// Visits every admissible word of length `len` in increasing order.
pub(crate) fn admissible_words(
    a: &TransitionMatrix,
    len: usize,
    buf: &mut Vec<Symbol>,
    visit: &mut dyn FnMut(&[Symbol]),
) {
    if buf.len() == len {
        visit(buf);
        return;
    }
    for s in 1..=a.n() {
        if buf.last().is_none_or(|&l| a.get(l, s)) {
            buf.push(s);
            admissible_words(a, len, buf, visit);
            buf.pop();
        }
    }
}

/// Size of the permutative spectrum: bounded enumeration of `[1..N]*_A` and a
/// structural finite/infinite verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PspecSummary {
    pub max_len: usize,
    /// Number of non-periodic minimal cyclic classes of each length `1..=max_len`.
    pub counts_by_length: Vec<usize>,
    pub total_up_to_max: usize,
    /// Every nontrivial strongly connected component of the graph of `A` is a
    /// simple cycle.
    pub finite: bool,
    /// `#PSpec O_A` when finite: one class per nontrivial component.
    pub class_count: Option<usize>,
    /// `[1..N]^∞_A` is nonempty.
    pub aperiodic_tails: bool,
    /// Whether the enumeration agrees with the verdict; `None` when
    /// `max_len` is too short to tell.
    pub corroborated: Option<bool>,
}

pub fn pspec_summary(a: &TransitionMatrix, max_len: usize) -> PspecSummary {
    let n = a.n();
    let mut counts_by_length = vec![0; max_len];
    for c in enumerate_cyclic_classes(a, max_len) {
        if !c.periodic {
            counts_by_length[c.word.len() - 1] += 1;
        }
    }
    let total_up_to_max = counts_by_length.iter().sum();

    let (finite, nontrivial) = scc_verdict(a);
    let class_count = finite.then_some(nontrivial);

    let longer_than_n: usize = counts_by_length.iter().skip(n).sum();
    let corroborated = if finite {
        (max_len >= n).then(|| longer_than_n == 0 && Some(total_up_to_max) == class_count)
    } else if longer_than_n > 0 {
        Some(true)
    } else if max_len >= 3 * n {
        // two distinct return loops at one vertex give a primitive class of
        // length in (N, 3N]
        Some(false)
    } else {
        None
    };

    PspecSummary {
        max_len,
        counts_by_length,
        total_up_to_max,
        finite,
        class_count,
        aperiodic_tails: !finite,
        corroborated,
    }
}

/// (all nontrivial SCCs are simple cycles, number of nontrivial SCCs)
fn scc_verdict(a: &TransitionMatrix) -> (bool, usize) {
    let n = a.n();
    let mut g = DiGraph::<Symbol, ()>::new();
    let nodes: Vec<_> = (1..=n).map(|i| g.add_node(i)).collect();
    for i in 1..=n {
        for j in 1..=n {
            if a.get(i, j) {
                g.add_edge(nodes[i - 1], nodes[j - 1], ());
            }
        }
    }
    let mut finite = true;
    let mut nontrivial = 0;
    for comp in tarjan_scc(&g) {
        let members: Vec<Symbol> = comp.iter().map(|&ix| g[ix]).collect();
        let edges = members
            .iter()
            .flat_map(|&i| members.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| a.get(i, j))
            .count();
        if edges > 0 {
            nontrivial += 1;
            if edges != members.len() {
                finite = false;
            }
        }
    }
    (finite, nontrivial)
}
