use serde::Serialize;

use crate::words::{Symbol, TransitionMatrix, Word};

/// Row data `(B_i, M_i, q_i)` of the matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowCoordinate {
    /// `B_i = {j : a_ij = 1}`, increasing.
    pub support: Vec<Symbol>,
}

impl RowCoordinate {
    /// `M_i = |B_i|`.
    pub fn size(&self) -> usize {
        self.support.len()
    }

    /// `q_i(j) = #{k ∈ B_i : k ≤ j}` for `j ∈ B_i`.
    pub fn rank(&self, j: Symbol) -> Option<usize> {
        self.support.binary_search(&j).ok().map(|p| p + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ACoordinate {
    pub rows: Vec<RowCoordinate>,
}

impl ACoordinate {
    pub fn row(&self, i: Symbol) -> &RowCoordinate {
        &self.rows[i - 1]
    }
}

pub fn a_coordinate(a: &TransitionMatrix) -> ACoordinate {
    ACoordinate {
        rows: (1..=a.n())
            .map(|i| RowCoordinate {
                support: a.row_support(i),
            })
            .collect(),
    }
}

/// `φ_A(i) = min{j : a_ij = 1}`; entry `i - 1` holds `φ_A(i)`.
pub fn phi_map(a: &TransitionMatrix) -> Vec<Symbol> {
    (1..=a.n()).map(|i| a.row_support(i)[0]).collect()
}

/// Cycles of `φ_A`, each written from its smallest element, split by whether
/// every row along the cycle is the delta row of the next letter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ACycleSet {
    pub all: Vec<Word>,
    pub multiplicity_one: Vec<Word>,
    pub multiplicity_infinite: Vec<Word>,
}

pub fn a_cycle_set(a: &TransitionMatrix) -> ACycleSet {
    let phi = phi_map(a);
    let n = a.n();
    let mut on_cycle = vec![false; n + 1];
    for i in 1..=n {
        let mut x = i;
        for _ in 0..n {
            x = phi[x - 1];
        }
        // after n steps x is on a cycle
        on_cycle[x] = true;
    }
    let mut all = Vec::new();
    let mut seen = vec![false; n + 1];
    for start in 1..=n {
        if !on_cycle[start] || seen[start] {
            continue;
        }
        let mut w = Vec::new();
        let mut x = start;
        loop {
            seen[x] = true;
            w.push(x);
            x = phi[x - 1];
            if x == start {
                break;
            }
        }
        // the cycle through start is found here first, so start is its minimum
        all.push(Word::new(w));
    }
    let (multiplicity_infinite, multiplicity_one) = all
        .iter()
        .cloned()
        .partition(|w: &Word| is_delta_cycle(a, w));
    ACycleSet {
        all,
        multiplicity_one,
        multiplicity_infinite,
    }
}

fn is_delta_cycle(a: &TransitionMatrix, w: &Word) -> bool {
    let k = w.len();
    (0..k).all(|c| a.row_support(w[c]) == [w[(c + 1) % k]])
}
