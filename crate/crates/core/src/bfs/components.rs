use serde::Serialize;

use super::system::BranchingSystem;
use crate::words::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentKind {
    Cycle,
    Chain,
    Unresolved,
}

/// One orbit of the system as seen inside the truncation.
///
/// For a cycle, `points[l]` is `x_{l+1}` and `f_{word[l]}(x_{l+2}) = x_{l+1}`
/// (indices wrapping). For a chain, `word` has one letter fewer than
/// `points`. Unresolved components carry only their basin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSkeleton {
    pub kind: ComponentKind,
    pub word: Word,
    pub points: Vec<usize>,
    pub basin: Vec<usize>,
    /// Index into the system's declared chains, for chain components.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain: Option<usize>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Splits the carrier into orbits and classifies each one.
///
/// An orbit is a cycle only if the cycle closes inside the truncation. An
/// orbit holding a declared chain is a chain carrying that word; anything
/// else is unresolved. Components are ordered by their smallest point.
pub fn find_components(f: &BranchingSystem) -> Vec<ComponentSkeleton> {
    let len = f.len();
    let mut uf = UnionFind((0..len).collect());
    for (_, x, y) in f.edges() {
        uf.union(x, y);
    }
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    let mut piece_of = vec![usize::MAX; len];
    for x in 0..len {
        let r = uf.find(x);
        if piece_of[r] == usize::MAX {
            piece_of[r] = pieces.len();
            pieces.push(Vec::new());
        }
        pieces[piece_of[r]].push(x);
    }

    // Cycles of x -> recorded preimage. A recorded edge is an edge of the
    // untruncated system, so a closed walk is a genuine cycle even when some
    // of its points are frontier.
    let pre = f.preimages();
    let step = |x: usize| match pre[x].as_slice() {
        [only] => Some(*only),
        _ => None,
    };
    let mut cycles_by_piece: Vec<Vec<(Word, Vec<usize>)>> = vec![Vec::new(); pieces.len()];
    // 0 = unseen, 1 = on current walk, 2 = finished
    let mut state = vec![0u8; len];
    for start in 0..len {
        if state[start] != 0 {
            continue;
        }
        let mut walk = Vec::new();
        let mut x = start;
        loop {
            if state[x] == 2 {
                break;
            }
            if state[x] == 1 {
                let at = walk.iter().position(|&p| p == x).expect("on walk");
                let cyc = &walk[at..];
                let lo = (0..cyc.len()).min_by_key(|&k| cyc[k]).expect("non-empty");
                let points: Vec<usize> =
                    (0..cyc.len()).map(|k| cyc[(lo + k) % cyc.len()]).collect();
                let word: Word = points
                    .iter()
                    .map(|&p| step(p).expect("cycle point resolved").0)
                    .collect::<Vec<_>>()
                    .into();
                cycles_by_piece[piece_of[uf.find(x)]].push((word, points));
                break;
            }
            state[x] = 1;
            walk.push(x);
            match step(x) {
                Some((_, pre)) => x = pre,
                None => break,
            }
        }
        for p in walk {
            state[p] = 2;
        }
    }

    let mut chain_piece = vec![None; pieces.len()];
    for (c, chain) in f.declared_chains().iter().enumerate() {
        if let Some(&x1) = chain.points.first() {
            chain_piece[piece_of[uf.find(x1)]].get_or_insert(c);
        }
    }

    let mut out = Vec::new();
    for (ix, basin) in pieces.into_iter().enumerate() {
        let cycles = std::mem::take(&mut cycles_by_piece[ix]);
        if !cycles.is_empty() {
            for (word, points) in cycles {
                out.push(ComponentSkeleton {
                    kind: ComponentKind::Cycle,
                    word,
                    points,
                    basin: basin.clone(),
                    chain: None,
                });
            }
        } else if let Some(c) = chain_piece[ix] {
            let points = f.declared_chains()[c].points.clone();
            let word: Word = points[..points.len().saturating_sub(1)]
                .iter()
                .map(|&x| step(x).map_or(0, |(i, _)| i))
                .collect::<Vec<_>>()
                .into();
            out.push(ComponentSkeleton {
                kind: ComponentKind::Chain,
                word,
                points,
                basin,
                chain: Some(c),
            });
        } else {
            out.push(ComponentSkeleton {
                kind: ComponentKind::Unresolved,
                word: Word::empty(),
                points: Vec::new(),
                basin,
                chain: None,
            });
        }
    }
    out
}
