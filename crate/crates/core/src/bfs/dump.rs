//! Line-oriented text form of a system: a header `N B`, then one line per
//! symbol `i: x->y, x->y, ...` with 1-based points. Frontier points carry a
//! `~` prefix wherever they appear; a point never mentioned is frontier.

use std::fmt::Write;

use super::system::BranchingSystem;
use super::BfsError;
use crate::words::TransitionMatrix;

impl BranchingSystem {
    pub fn to_dump(&self) -> String {
        let mark = |x: usize| {
            if self.is_frontier(x) {
                format!("~{}", x + 1)
            } else {
                (x + 1).to_string()
            }
        };
        let mut out = format!("{} {}\n", self.matrix().n(), self.len());
        for i in 1..=self.matrix().n() {
            let pairs: Vec<String> = (0..self.len())
                .filter_map(|x| {
                    self.image(i, x)
                        .map(|y| format!("{}->{}", mark(x), mark(y)))
                })
                .collect();
            writeln!(out, "{i}: {}", pairs.join(", ")).expect("write to string");
        }
        out
    }

    /// Reads the dump format. Labels become the 1-based point numbers.
    pub fn from_dump(matrix: &TransitionMatrix, text: &str) -> Result<Self, BfsError> {
        let err = |line: usize, message: String| BfsError::Dump { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| err(1, "missing header".into()))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| err(hline, format!("bad header token {t:?}")))
            })
            .collect::<Result<_, _>>()?;
        let [n, b] = nums[..] else {
            return Err(err(hline, "header must be `N B`".into()));
        };
        if n != matrix.n() {
            return Err(err(
                hline,
                format!("header has N = {n}, matrix has N = {}", matrix.n()),
            ));
        }
        let mut mentioned = vec![false; b];
        let mut frontier = Vec::new();
        let mut edges = Vec::new();
        let mut point = |line: usize, tok: &str, frontier: &mut Vec<usize>| {
            let (marked, digits) = match tok.strip_prefix('~') {
                Some(rest) => (true, rest),
                None => (false, tok),
            };
            let x: usize = digits
                .parse()
                .map_err(|_| err(line, format!("bad point {tok:?}")))?;
            if x == 0 || x > b {
                return Err(err(line, format!("point {x} outside 1..={b}")));
            }
            mentioned[x - 1] = true;
            if marked {
                frontier.push(x - 1);
            }
            Ok(x - 1)
        };
        for (line, body) in lines {
            let (sym, rest) = body
                .split_once(':')
                .ok_or_else(|| err(line, "expected `i: ...`".into()))?;
            let i: usize = sym
                .trim()
                .parse()
                .map_err(|_| err(line, format!("bad symbol {sym:?}")))?;
            if i == 0 || i > n {
                return Err(err(line, format!("symbol {i} outside 1..={n}")));
            }
            for pair in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let (x, y) = pair
                    .split_once("->")
                    .ok_or_else(|| err(line, format!("bad edge {pair:?}")))?;
                let x = point(line, x.trim(), &mut frontier)?;
                let y = point(line, y.trim(), &mut frontier)?;
                edges.push((i, x, y));
            }
        }
        frontier.extend(
            mentioned
                .iter()
                .enumerate()
                .filter(|(_, m)| !**m)
                .map(|(x, _)| x),
        );
        let labels = (1..=b).map(|x| x.to_string()).collect();
        BranchingSystem::from_parts(matrix.clone(), labels, &edges, &frontier)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bfs::{standard_bfs, validate_bfs};

    #[test]
    fn round_trip_standard() {
        let a = TransitionMatrix::parse("011\n101\n111").unwrap();
        let f = standard_bfs(&a, 20).unwrap();
        let text = f.to_dump();
        assert!(text.starts_with("3 20\n1: 2->1, "));
        let g = BranchingSystem::from_dump(&a, &text).unwrap();
        assert_eq!(g, f);
        assert!(validate_bfs(&g).is_valid());
    }

    #[test]
    fn unmentioned_points_are_frontier() {
        let a = TransitionMatrix::full(2).unwrap();
        let g = BranchingSystem::from_dump(&a, "2 3\n1: 1->1\n2: 1->2\n").unwrap();
        assert!(g.is_frontier(2));
        assert!(!g.is_frontier(0));
    }

    #[test]
    fn malformed_dumps_are_rejected() {
        let a = TransitionMatrix::full(2).unwrap();
        for bad in [
            "",
            "3 4\n",
            "2 4\n1: 1=>2",
            "2 4\n3: 1->2",
            "2 4\n1: 1->9",
            "2\n",
        ] {
            assert!(BranchingSystem::from_dump(&a, bad).is_err(), "{bad:?}");
        }
    }
}
