//! Node colorings, the greedy rule and the DSatur baseline.

use std::collections::HashSet;
use std::fmt::Write as _;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm;
use crate::rng;

/// A color per node; colors are positive integers.
///
/// Properness is not part of the type, see [`verify_coloring`]. A `0` entry
/// marks a node that has no color yet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring { colors }
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors used.
    pub fn color_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c > 0).collect::<HashSet<_>>().len()
    }

    /// `v node color` lines sorted by node, 1-based.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for (v, &c) in self.colors.iter().enumerate() {
            writeln!(out, "v {} {}", v + 1, c).unwrap();
        }
        out
    }

    /// Reads `v node color` lines for a graph on `n` nodes. Unlisted nodes stay uncolored.
    pub fn parse_dimacs(text: &str, n: usize) -> Result<Self> {
        let mut colors = vec![0; n];
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                [] | ["c", ..] => {}
                ["v", node, color] => {
                    let node: usize = node.parse().map_err(|_| err("bad node"))?;
                    let color: usize = color.parse().map_err(|_| err("bad color"))?;
                    if node == 0 || node > n {
                        return Err(err("node out of range"));
                    }
                    if color == 0 {
                        return Err(err("colors start at 1"));
                    }
                    colors[node - 1] = color;
                }
                _ => return Err(err("expected `v node color`")),
            }
        }
        Ok(Coloring { colors })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoringReport {
    pub proper: bool,
    pub colors: usize,
}

pub fn verify_coloring(g: &Graph, col: &Coloring) -> Result<ColoringReport> {
    let assigned = col.colors.iter().filter(|&&c| c > 0).count();
    if col.len() != g.n() || assigned != g.n() {
        return Err(Error::IncompleteColoring { expected: g.n(), got: assigned });
    }
    let proper = g.edges().all(|(u, v)| col.colors[u] != col.colors[v]);
    Ok(ColoringReport { proper, colors: col.color_count() })
}

/// Like [`verify_coloring`] but names an offending edge.
pub fn require_proper(g: &Graph, col: &Coloring) -> Result<usize> {
    let report = verify_coloring(g, col)?;
    if !report.proper {
        let (u, v) = g.edges().find(|&(u, v)| col.colors[u] == col.colors[v]).unwrap();
        return Err(Error::ImproperColoring(u + 1, v + 1));
    }
    Ok(report.colors)
}

/// Colors nodes in `order`, each with the smallest color absent from its colored neighbors.
pub fn greedy_color(g: &Graph, order: &[usize]) -> Result<Coloring> {
    perm::check_permutation(order, g.n())?;
    Ok(greedy_unchecked(g, order))
}

pub(crate) fn greedy_unchecked(g: &Graph, order: &[usize]) -> Coloring {
    let n = g.n();
    let mut colors = vec![0usize; n];
    // taken[c] == stamp marks color c as used by a neighbor of the current node
    let mut taken = vec![usize::MAX; n + 2];
    for (stamp, &v) in order.iter().enumerate() {
        for &u in g.neighbors(v) {
            taken[colors[u]] = stamp;
        }
        let c = (1..).find(|&c| taken[c] != stamp).unwrap();
        colors[v] = c;
    }
    Coloring { colors }
}

/// Number of colors the greedy rule uses along `order`, without allocating a [`Coloring`].
pub(crate) fn greedy_count(g: &Graph, order: impl Iterator<Item = usize>, scratch: &mut Vec<usize>) -> usize {
    let n = g.n();
    scratch.clear();
    scratch.resize(2 * n + 2, usize::MAX);
    let (colors, taken) = scratch.split_at_mut(n);
    let mut used = 0;
    for (stamp, v) in order.enumerate() {
        for &u in g.neighbors(v) {
            if colors[u] != usize::MAX {
                taken[colors[u]] = stamp;
            }
        }
        let c = (1..).find(|&c| taken[c] != stamp).unwrap();
        colors[v] = c;
        used = used.max(c);
    }
    used
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieMode {
    /// Remaining ties go to the smallest node id.
    #[default]
    Deterministic,
    /// Remaining ties are drawn uniformly from a stream seeded with this value.
    Random(u64),
}

/// DSatur: repeatedly color the uncolored node with the most distinct neighbor colors.
///
/// Ties go to the node with most uncolored neighbors, then by `tie_mode`.
pub fn dsatur(g: &Graph, tie_mode: TieMode) -> Coloring {
    let n = g.n();
    let mut rng = match tie_mode {
        TieMode::Random(seed) => Some(rng::from_seed(seed)),
        TieMode::Deterministic => None,
    };
    let mut colors = vec![0usize; n];
    let mut neighbor_colors: Vec<HashSet<usize>> = vec![HashSet::new(); n];
    let mut uncolored_degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut taken = vec![usize::MAX; n + 2];
    let mut tied = Vec::new();

    for step in 0..n {
        let mut best: Option<(usize, usize)> = None;
        tied.clear();
        for v in (0..n).filter(|&v| colors[v] == 0) {
            let key = (neighbor_colors[v].len(), uncolored_degree[v]);
            match best {
                Some(b) if key < b => {}
                Some(b) if key == b => tied.push(v),
                _ => {
                    best = Some(key);
                    tied.clear();
                    tied.push(v);
                }
            }
        }
        let v = match rng.as_mut() {
            Some(r) if tied.len() > 1 => tied[r.gen_range(0..tied.len())],
            _ => tied[0],
        };

        for &u in g.neighbors(v) {
            taken[colors[u]] = step;
        }
        let c = (1..).find(|&c| taken[c] != step).unwrap();
        colors[v] = c;
        for &u in g.neighbors(v) {
            neighbor_colors[u].insert(c);
            uncolored_degree[u] -= 1;
        }
    }
    Coloring { colors }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_gnp;
    use proptest::prelude::*;

    #[test]
    fn verify_examples() {
        let k3 = Graph::complete(3);
        let r = verify_coloring(&k3, &Coloring::new(vec![1, 2, 3])).unwrap();
        assert_eq!(r, ColoringReport { proper: true, colors: 3 });
        assert!(!verify_coloring(&k3, &Coloring::new(vec![1, 1, 2])).unwrap().proper);
        let e5 = Graph::empty(5);
        let r = verify_coloring(&e5, &Coloring::new(vec![1; 5])).unwrap();
        assert_eq!(r, ColoringReport { proper: true, colors: 1 });
    }

    #[test]
    fn verify_rejects_incomplete() {
        let k3 = Graph::complete(3);
        assert!(matches!(
            verify_coloring(&k3, &Coloring::new(vec![1, 2])),
            Err(Error::IncompleteColoring { expected: 3, got: 2 })
        ));
        assert!(verify_coloring(&k3, &Coloring::new(vec![1, 0, 2])).is_err());
        assert_eq!(require_proper(&k3, &Coloring::new(vec![1, 1, 2])), Err(Error::ImproperColoring(1, 2)));
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_color(&Graph::complete(3), &[2, 0, 1]).unwrap().color_count(), 3);
        assert_eq!(greedy_color(&Graph::empty(4), &[3, 1, 0, 2]).unwrap().color_count(), 1);
        // a1 b1 a2 b2 a3 b3
        let crown = Graph::crown(3);
        let c = greedy_color(&crown, &[0, 3, 1, 4, 2, 5]).unwrap();
        assert_eq!(c.as_slice(), &[1, 2, 3, 1, 2, 3]);
        assert_eq!(greedy_color(&crown, &[0, 1, 2, 3, 4, 5]).unwrap().color_count(), 2);
    }

    #[test]
    fn greedy_rejects_non_permutation() {
        assert!(greedy_color(&Graph::complete(3), &[0, 0, 1]).is_err());
        assert!(greedy_color(&Graph::complete(3), &[0, 1]).is_err());
    }

    #[test]
    fn dsatur_examples() {
        assert_eq!(dsatur(&Graph::complete(3), TieMode::Deterministic).color_count(), 3);
        let c6 = Graph::cycle(6);
        let c = dsatur(&c6, TieMode::Deterministic);
        assert_eq!(c.as_slice(), &[1, 2, 1, 2, 1, 2]);
        assert_eq!(dsatur(&c6, TieMode::Random(5)).color_count(), 2);
        assert_eq!(dsatur(&Graph::complete(4), TieMode::Deterministic).color_count(), 4);
    }

    #[test]
    fn coloring_file_round_trip() {
        let c = Coloring::new(vec![2, 1, 3]);
        assert_eq!(c.to_dimacs(), "v 1 2\nv 2 1\nv 3 3\n");
        assert_eq!(Coloring::parse_dimacs(&c.to_dimacs(), 3).unwrap(), c);
        let partial = Coloring::parse_dimacs("v 1 1\n", 2).unwrap();
        assert!(verify_coloring(&Graph::empty(2), &partial).is_err());
    }

    proptest! {
        #[test]
        fn greedy_is_proper_and_bounded(
            n in 1usize..40, p in 0.0f64..=1.0, seed in any::<u64>(), order in any::<u64>(),
        ) {
            let g = gen_gnp(n, p, seed);
            let ord = perm::random_permutation(n, &mut rng::from_seed(order));
            let c = greedy_color(&g, &ord).unwrap();
            let rep = verify_coloring(&g, &c).unwrap();
            prop_assert!(rep.proper);
            prop_assert!(rep.colors <= g.max_degree() + 1);
            prop_assert_eq!(*c.as_slice().iter().max().unwrap(), rep.colors);
            prop_assert_eq!(greedy_count(&g, ord.iter().copied(), &mut Vec::new()), rep.colors);
        }

        #[test]
        fn dsatur_is_proper_and_deterministic(n in 1usize..40, p in 0.0f64..=1.0, seed in any::<u64>()) {
            let g = gen_gnp(n, p, seed);
            let c = dsatur(&g, TieMode::Deterministic);
            let rep = verify_coloring(&g, &c).unwrap();
            prop_assert!(rep.proper);
            prop_assert!(rep.colors <= g.max_degree() + 1);
            prop_assert_eq!(&c, &dsatur(&g, TieMode::Deterministic));
            let r = dsatur(&g, TieMode::Random(seed));
            prop_assert!(verify_coloring(&g, &r).unwrap().proper);
        }
    }
}
