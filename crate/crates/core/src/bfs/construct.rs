use std::fmt;
use std::sync::Arc;

use super::standard::a_coordinate;
use super::system::{BranchingSystem, DeclaredChain, Image};
use super::BfsError;
use crate::words::enumerate::admissible_words;
use crate::words::{tree, Symbol, TailWord, TransitionMatrix, TreeSide, Word};

/// An infinite word given by a rule, known to the system only by name and by
/// the letters it produces.
#[derive(Clone)]
pub struct GeneratedWord {
    name: String,
    rule: Arc<dyn Fn(usize) -> Symbol + Send + Sync>,
}

impl GeneratedWord {
    pub fn new(
        name: impl Into<String>,
        rule: impl Fn(usize) -> Symbol + Send + Sync + 'static,
    ) -> Self {
        GeneratedWord {
            name: name.into(),
            rule: Arc::new(rule),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Letter at 0-based position `n`.
    pub fn symbol(&self, n: usize) -> Symbol {
        (self.rule)(n)
    }
}

impl fmt::Debug for GeneratedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratedWord")
            .field("name", &self.name)
            .finish()
    }
}

// Two generators are the same word only when they are the same named rule.
impl PartialEq for GeneratedWord {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

/// The infinite word carried by a chain.
#[derive(Clone, Debug, PartialEq)]
pub enum ChainWord {
    Tail(TailWord),
    Generated(GeneratedWord),
}

impl ChainWord {
    pub fn symbol(&self, n: usize) -> Symbol {
        match self {
            ChainWord::Tail(t) => t.symbol(n),
            ChainWord::Generated(g) => g.symbol(n),
        }
    }

    pub fn prefix(&self, len: usize) -> Word {
        (0..len).map(|n| self.symbol(n)).collect()
    }
}

impl fmt::Display for ChainWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainWord::Tail(t) => write!(f, "{t}"),
            ChainWord::Generated(g) => write!(f, "{}", g.name),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Spine(usize),
    Branch(Word, usize),
}

/// Side branches hanging off one spine point: every admissible `W` of length
/// `≤ depth + 1` whose last letter is an allowed side letter.
fn side_words(a: &TransitionMatrix, letters: &[Symbol], depth: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for &s in letters {
        out.push(Word::single(s));
        let t = tree(a, s, depth, TreeSide::In).expect("symbol in range");
        out.extend(t.members.iter().map(|x| x.concat(&Word::single(s))));
    }
    out
}

/// The cycle system on `Λ(A,J)`: the spine `J_l = (j_l, …, j_k)` plus all
/// admissible branches `W ∪ J_l` not running along the cycle, with trees cut
/// at `depth`. Point 0 is `J` itself.
pub fn build_cycle_system(
    a: &TransitionMatrix,
    j: &Word,
    depth: usize,
) -> Result<BranchingSystem, BfsError> {
    if j.is_empty() || !a.is_cyclically_admissible(j)? {
        return Err(BfsError::NotCyclicallyAdmissible(j.literal_for(a.n())));
    }
    let k = j.len();
    // 1-based letters j_l; previous letter wraps to j_k at l = 1
    let jl = |l: usize| j[l - 1];
    let prev = |l: usize| if l == 1 { jl(k) } else { jl(l - 1) };

    let mut points: Vec<Node> = (1..=k).map(Node::Spine).collect();
    for l in 1..=k {
        let letters: Vec<Symbol> = a
            .column_support(jl(l))
            .into_iter()
            .filter(|&s| s != prev(l))
            .collect();
        points.extend(
            side_words(a, &letters, depth)
                .into_iter()
                .map(|w| Node::Branch(w, l)),
        );
    }
    let n = a.n();
    let spine_label = |l: usize| j.suffix_from(l).literal_for(n);
    let f = BranchingSystem::from_formula(
        a.clone(),
        points,
        |p| match p {
            Node::Spine(l) => spine_label(*l),
            Node::Branch(w, l) => format!("{}/{}", w.literal_for(n), spine_label(*l)),
        },
        |i, p| match p {
            Node::Spine(l) if a.get(i, jl(*l)) => Some(if i == prev(*l) {
                Node::Spine(if *l == 1 { k } else { l - 1 })
            } else {
                Node::Branch(Word::single(i), *l)
            }),
            Node::Branch(w, l) if a.get(i, w[0]) => Some(Node::Branch(w.prepend(i), *l)),
            _ => None,
        },
    );
    Ok(f)
}

/// The chain system for `K = (k_1, k_2, …)`: spine points `1..=chain_len`
/// with `f_{k_{m-1}}(m) = m - 1`, plus side branches cut at `depth`.
pub fn build_chain_system(
    a: &TransitionMatrix,
    k: &ChainWord,
    chain_len: usize,
    depth: usize,
) -> Result<BranchingSystem, BfsError> {
    if chain_len < 2 {
        return Err(BfsError::InvalidParameter(format!(
            "chain length {chain_len} < 2"
        )));
    }
    let known = k.prefix(chain_len + 1);
    a.check_word(&known)?;
    let admissible = match k {
        ChainWord::Tail(t) => t.is_admissible(a)?,
        ChainWord::Generated(_) => a.is_admissible(&known)?,
    };
    if !admissible {
        return Err(BfsError::NotAdmissible(k.to_string()));
    }
    let km = |m: usize| known[m - 1];

    let mut points: Vec<Node> = (1..=chain_len).map(Node::Spine).collect();
    for m in 1..=chain_len {
        let letters: Vec<Symbol> = a
            .column_support(km(m))
            .into_iter()
            .filter(|&s| m == 1 || s != km(m - 1))
            .collect();
        points.extend(
            side_words(a, &letters, depth)
                .into_iter()
                .map(|w| Node::Branch(w, m)),
        );
    }
    let n = a.n();
    let f = BranchingSystem::from_formula(
        a.clone(),
        points,
        |p| match p {
            Node::Spine(m) => m.to_string(),
            Node::Branch(w, m) => format!("{}/{m}", w.literal_for(n)),
        },
        |i, p| match p {
            Node::Spine(m) if a.get(i, km(*m)) => Some(if *m >= 2 && i == km(m - 1) {
                Node::Spine(m - 1)
            } else {
                Node::Branch(Word::single(i), *m)
            }),
            Node::Branch(w, m) if a.get(i, w[0]) => Some(Node::Branch(w.prepend(i), *m)),
            _ => None,
        },
    );
    Ok(f.with_chain(DeclaredChain {
        word: k.clone(),
        points: (0..chain_len).collect(),
    }))
}

/// The standard system on `{1, …, B}`:
/// `f_i(N(m-1)+j) = N(M_i(m-1)+q_i(j)-1)+i` for `j ∈ B_i`.
/// Point `x` has index `x - 1` and label `x`.
pub fn standard_bfs(a: &TransitionMatrix, truncation: usize) -> Result<BranchingSystem, BfsError> {
    let n = a.n();
    if truncation < n {
        return Err(BfsError::InvalidParameter(format!(
            "truncation {truncation} < N = {n}"
        )));
    }
    let coord = a_coordinate(a);
    let labels = (1..=truncation).map(|x| x.to_string()).collect();
    Ok(BranchingSystem::from_indexed(a.clone(), labels, |i, ix| {
        let (m, j) = (ix / n + 1, ix % n + 1);
        let row = coord.row(i);
        let q = row.rank(j)?;
        let y = n * (row.size() * (m - 1) + q - 1) + i;
        Some(if y <= truncation {
            Image::Inside(y - 1)
        } else {
            Image::Outside
        })
    }))
}

/// Eventually periodic points of the one-sided shift space, each stored as a
/// reduced `pre ∪ period^∞` with `|pre| + |period| ≤ word_len`.
/// `f_i` prepends `i`; the coding map is the shift. Points whose image would
/// need a longer description are frontier.
pub fn shift_bfs(a: &TransitionMatrix, word_len: usize) -> Result<BranchingSystem, BfsError> {
    if word_len < 2 {
        return Err(BfsError::InvalidParameter(format!(
            "word length {word_len} < 2"
        )));
    }
    let mut by_len: Vec<Vec<Word>> = vec![Vec::new(); word_len + 1];
    by_len[0].push(Word::empty());
    for (len, slot) in by_len.iter_mut().enumerate().skip(1) {
        let mut buf = Vec::with_capacity(len);
        admissible_words(a, len, &mut buf, &mut |w| slot.push(Word::new(w.to_vec())));
    }
    let mut points = Vec::new();
    for total in 1..=word_len {
        for p in 1..=total {
            for period in &by_len[p] {
                if !a.get(period[p - 1], period[0]) || period.is_periodic().expect("non-empty") {
                    continue;
                }
                for pre in &by_len[total - p] {
                    let joins = pre
                        .last()
                        .is_none_or(|l| a.get(l, period[0]) && l != period[p - 1]);
                    if joins {
                        points.push(
                            TailWord::new(pre.clone(), period.clone()).expect("non-empty period"),
                        );
                    }
                }
            }
        }
    }
    Ok(BranchingSystem::from_formula(
        a.clone(),
        points,
        |t| t.literal(),
        |i, t| {
            if !a.get(i, t.symbol(0)) {
                return None;
            }
            let y = t.prepend(i);
            // an over-long image is simply absent from the carrier
            Some(y)
        },
    ))
}

fn naive_a(rows: &str) -> TransitionMatrix {
    TransitionMatrix::parse(rows).expect("fixed matrix")
}

/// A system on `{1, …, B}` over `[[0,0,1],[1,0,1],[1,1,1]]`:
/// `f_1(4n-2) = 4n-3`, `f_2(4n-3) = 4n`, `f_2(4n-2) = 4n-1`, `f_3(n) = 4n-2`.
pub fn naive_cycle_system(truncation: usize) -> BranchingSystem {
    let a = naive_a("001\n101\n111");
    let labels = (1..=truncation).map(|x| x.to_string()).collect();
    BranchingSystem::from_indexed(a, labels, |i, ix| {
        let x = ix + 1;
        let (q, r) = ((x - 1) / 4, (x - 1) % 4 + 1);
        let y = match (i, r) {
            (1, 2) => 4 * q + 1,
            (2, 1) => 4 * q + 4,
            (2, 2) => 4 * q + 3,
            (3, _) => 4 * x - 2,
            _ => return None,
        };
        Some(if y <= truncation {
            Image::Inside(y - 1)
        } else {
            Image::Outside
        })
    })
}

/// A system on `{1, …, T} × {1, 2}` over `[[0,1,1],[1,0,1],[1,1,1]]`, writing
/// `x = 5(n-1)+m`: `f_1(n,2) = (n,1)`, `f_2(x,1) = (5x-4,2)`,
/// `f_2(5(n-1)+4,2) = (5(n-1)+2,2)`, `f_2(5(n-1)+5,2) = (5(n-1)+3,2)`,
/// `f_3(n,1) = (5(n-1)+4,2)`, `f_3(n,2) = (5(n-1)+5,2)`.
pub fn naive_product_system(truncation: usize) -> BranchingSystem {
    let a = naive_a("011\n101\n111");
    let labels = (0..2 * truncation)
        .map(|ix| format!("({},{})", ix / 2 + 1, ix % 2 + 1))
        .collect();
    BranchingSystem::from_indexed(a, labels, |i, ix| {
        let (x, c) = (ix / 2 + 1, ix % 2 + 1);
        let (q, m) = ((x - 1) / 5, (x - 1) % 5 + 1);
        let (y, d) = match (i, c, m) {
            (1, 2, _) => (x, 1),
            (2, 1, _) => (5 * x - 4, 2),
            (2, 2, 4) => (5 * q + 2, 2),
            (2, 2, 5) => (5 * q + 3, 2),
            (3, 1, _) => (5 * (x - 1) + 4, 2),
            (3, 2, _) => (5 * (x - 1) + 5, 2),
            _ => return None,
        };
        Some(if y <= truncation {
            Image::Inside(2 * (y - 1) + d - 1)
        } else {
            Image::Outside
        })
    })
}
