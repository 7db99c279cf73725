#![allow(dead_code)]

use ckrep::bfs::{build_chain_system, build_cycle_system, shift_bfs, standard_bfs, ChainWord};
use ckrep::words::enumerate_cyclic_classes;
use ckrep::{BranchingSystem, TailWord, TransitionMatrix, Word};

pub fn m(rows: &str) -> TransitionMatrix {
    TransitionMatrix::parse(rows).expect("corpus matrix")
}

pub fn w(s: &str) -> Word {
    Word::parse(s).expect("word literal")
}

/// `[[0,1,1],[1,0,1],[1,1,0]]`
pub fn a3() -> TransitionMatrix {
    m("011\n101\n110")
}

/// `[[1,0,1],[0,1,1],[1,1,1]]`
pub fn a4() -> TransitionMatrix {
    m("101\n011\n111")
}

/// The three 4×4 matrices whose standard representations are `P(2)`,
/// `P(123)` and `P(132)`.
pub fn four_by_four() -> [TransitionMatrix; 3] {
    [
        m("0101\n0101\n1101\n0111"),
        m("0101\n0011\n1101\n0111"),
        m("0011\n1011\n0101\n0111"),
    ]
}

/// The matrices of the two naive examples.
pub fn naive_matrices() -> [TransitionMatrix; 2] {
    [m("001\n101\n111"), m("011\n101\n111")]
}

/// All valid 2×2 matrices, the 3×3 examples and the 4×4 examples.
pub fn corpus() -> Vec<TransitionMatrix> {
    let mut out = TransitionMatrix::all_2x2();
    out.extend([a3(), a4()]);
    out.extend(naive_matrices());
    out.extend(four_by_four());
    out
}

/// Non-periodic cyclic class representatives of length `≤ max_len`.
pub fn cycle_words(a: &TransitionMatrix, max_len: usize) -> Vec<Word> {
    enumerate_cyclic_classes(a, max_len)
        .into_iter()
        .filter(|c| !c.periodic)
        .map(|c| c.word)
        .collect()
}

/// A purely periodic admissible tail for each cyclic class of length `≤ 2`.
pub fn tails(a: &TransitionMatrix) -> Vec<TailWord> {
    cycle_words(a, 2)
        .into_iter()
        .map(|p| TailWord::periodic(p).expect("non-empty"))
        .collect()
}

/// Every generated system over `a` at modest sizes.
pub fn systems(a: &TransitionMatrix) -> Vec<(String, BranchingSystem)> {
    let mut out = Vec::new();
    for b in [a.n(), 17, 64, 256] {
        out.push((format!("standard B={b}"), standard_bfs(a, b).unwrap()));
    }
    for j in cycle_words(a, 3) {
        for d in [0, 2, 5] {
            out.push((
                format!("cycle {j} d={d}"),
                build_cycle_system(a, &j, d).unwrap(),
            ));
        }
    }
    for t in tails(a) {
        for d in [0, 3] {
            let k = ChainWord::Tail(t.clone());
            out.push((
                format!("chain {t} d={d}"),
                build_chain_system(a, &k, 6, d).unwrap(),
            ));
        }
    }
    out.push(("shift L=4".into(), shift_bfs(a, 4).unwrap()));
    out
}
