//! Simple undirected graphs, DIMACS `.col` ingestion and random generators.

use std::fmt::Write as _;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::rng;

/// An immutable simple undirected graph on nodes `0..n`.
///
/// Neighbor lists are sorted and symmetric; there are no self-loops and no
/// parallel edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list, collapsing duplicates and reversed duplicates.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({}, {}) outside 1..={n}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at node {}", u + 1)));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph { adj, m })
    }

    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|i| (0..n).filter(|&j| j != i).collect()).collect();
        Graph { adj, m: n * n.saturating_sub(1) / 2 }
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`. Needs `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 nodes");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    /// Star with `leaves` leaves on nodes `0..leaves` and the center last.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (0..leaves).map(|i| (i, leaves))).unwrap()
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Self::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    /// Crown graph on `2k` nodes: `a_i = i`, `b_i = k + i`, with `a_i ~ b_j` for `i != j`.
    pub fn crown(k: usize) -> Self {
        let edges = (0..k).flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, k + j)));
        Self::from_edges(2 * k, edges).unwrap()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    /// `p edge n m` followed by one sorted `e i j` line per edge, 1-based.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        out
    }
}

/// A parsed graph plus any non-fatal remarks about the input.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub warnings: Vec<String>,
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    parse_dimacs_verbose(text).map(|p| p.graph)
}

/// Parses DIMACS `.col` text.
///
/// Accepts `\n` or `\r\n` line endings and blank lines. `p col` is accepted as a
/// synonym for `p edge`. A declared edge count that differs from the number of
/// distinct edges is reported as a warning.
pub fn parse_dimacs_verbose(text: &str) -> Result<ParsedGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut warnings = Vec::new();

    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let mut toks = line.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(err("second problem line".into()));
                }
                let fmt = toks.next().ok_or_else(|| err("problem line lacks a format".into()))?;
                if fmt != "edge" && fmt != "col" {
                    return Err(err(format!("unsupported problem format `{fmt}`")));
                }
                let n = parse_count(toks.next(), line_no)?;
                let m = parse_count(toks.next(), line_no)?;
                if toks.next().is_some() {
                    return Err(err("trailing tokens on problem line".into()));
                }
                header = Some((n, m));
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| err("edge line before problem line".into()))?;
                let u = parse_count(toks.next(), line_no)?;
                let v = parse_count(toks.next(), line_no)?;
                if toks.next().is_some() {
                    return Err(err("trailing tokens on edge line".into()));
                }
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(err(format!("node index outside 1..={n}")));
                }
                if u == v {
                    return Err(err(format!("self-loop at node {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            other => return Err(err(format!("unknown line type `{other}`"))),
        }
    }

    let (n, declared_m) =
        header.ok_or_else(|| Error::Parse { line: 0, msg: "missing problem line".into() })?;
    let graph = Graph::from_edges(n, edges)?;
    if graph.m() != declared_m {
        warnings.push(format!(
            "problem line declares {declared_m} edges, found {} distinct",
            graph.m()
        ));
    }
    Ok(ParsedGraph { graph, warnings })
}

fn parse_count(tok: Option<&str>, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse { line, msg: "missing field".into() })?;
    tok.parse()
        .map_err(|_| Error::Parse { line, msg: format!("expected a nonnegative integer, found `{tok}`") })
}

/// Erdős–Rényi graph: each of the `n(n-1)/2` pairs is an edge with probability `prob`.
///
/// Panics if `prob` is outside `[0, 1]`.
pub fn gen_gnp(n: usize, prob: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&prob), "edge probability {prob} outside [0, 1]");
    let mut rng = rng::from_seed(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            // gen::<f64>() is in [0, 1), so prob = 1 always accepts and prob = 0 never does.
            if rng.gen::<f64>() < prob {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random geometric graph in the unit square, returning the sampled points as well.
///
/// Nodes are joined iff their Euclidean distance is at most `radius`.
pub fn gen_geometric_with_points(n: usize, radius: f64, seed: u64) -> (Graph, Vec<(f64, f64)>) {
    assert!(radius >= 0.0, "negative radius {radius}");
    let mut rng = rng::from_seed(seed);
    let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
    let r2 = radius * radius;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let dx = points[u].0 - points[v].0;
            let dy = points[u].1 - points[v].1;
            if dx * dx + dy * dy <= r2 {
                edges.push((u, v));
            }
        }
    }
    (Graph::from_edges(n, edges).unwrap(), points)
}

pub fn gen_geometric(n: usize, radius: f64, seed: u64) -> Graph {
    gen_geometric_with_points(n, radius, seed).0
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            let mut nbrs = g.neighbors(u).iter().peekable();
            (0..n)
                .filter(|&v| {
                    if nbrs.peek() == Some(&&v) {
                        nbrs.next();
                        return false;
                    }
                    v != u
                })
                .collect()
        })
        .collect();
    let m = n * n.saturating_sub(1) / 2 - g.m();
    Graph { adj, m }
}

/// `2m / (n(n-1))`, a single correctly rounded division of two exact integers.
pub fn density(g: &Graph) -> Result<f64> {
    let n = g.n();
    if n < 2 {
        return Err(Error::UndefinedDensity(n));
    }
    Ok((2 * g.m()) as f64 / (n * (n - 1)) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn assert_simple(g: &Graph) {
        for u in 0..g.n() {
            for &v in g.neighbors(u) {
                assert_ne!(u, v);
                assert!(g.has_edge(v, u));
            }
            assert!(g.neighbors(u).windows(2).all(|w| w[0] < w[1]));
        }
        assert_eq!(g.edges().count(), g.m());
    }

    #[test]
    fn parse_triangle() {
        let g = parse_dimacs("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert_eq!(g, Graph::complete(3));
    }

    #[test]
    fn parse_edgeless() {
        let g = parse_dimacs("p edge 2 0").unwrap();
        assert_eq!((g.n(), g.m()), (2, 0));
    }

    #[test]
    fn parse_collapses_duplicates_with_warning() {
        let p = parse_dimacs_verbose("p edge 3 2\ne 1 2\ne 2 1\n").unwrap();
        assert_eq!((p.graph.n(), p.graph.m()), (3, 1));
        assert_eq!(p.warnings.len(), 1);
    }

    #[test]
    fn parse_tolerates_crlf_comments_and_blanks() {
        let g = parse_dimacs("c hello\r\n\r\np edge 3 1\r\n\r\ne 1 3\r\n").unwrap();
        assert!(g.has_edge(0, 2));
    }

    #[test]
    fn parse_errors_name_the_line() {
        assert!(matches!(parse_dimacs("e 1 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_dimacs("c x\n"), Err(Error::Parse { line: 0, .. })));
        assert!(matches!(parse_dimacs("p edge 3 1\ne 1 4\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_dimacs("p edge 3 1\n\ne 2 2\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_dimacs("p edge 3 1\ne 1 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_dimacs("p edge 3 1\np edge 3 1\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn dump_parses_back() {
        let g = gen_gnp(20, 0.3, 7);
        let text = g.to_dimacs();
        assert!(text.starts_with(&format!("p edge 20 {}\n", g.m())));
        assert_eq!(parse_dimacs(&text).unwrap(), g);
    }

    #[test]
    fn gnp_extremes() {
        assert_eq!(gen_gnp(10, 0.0, 1).m(), 0);
        assert_eq!(gen_gnp(10, 1.0, 1).m(), 45);
    }

    #[test]
    fn gnp_mean_edge_count() {
        let mean = (0..100).map(|s| gen_gnp(125, 0.5, s).m() as f64).sum::<f64>() / 100.0;
        let expected = 125.0 * 124.0 / 2.0 * 0.5;
        assert!((mean - expected).abs() / expected < 0.03, "mean {mean}");
    }

    #[test]
    fn geometric_extremes() {
        assert_eq!(gen_geometric(8, 0.0, 4).m(), 0);
        assert_eq!(gen_geometric(8, 2f64.sqrt(), 4).m(), 28);
    }

    #[test]
    fn geometric_matches_recomputation_from_points() {
        let (g, pts) = gen_geometric_with_points(50, 0.5, 11);
        let mut m = 0;
        for i in 0..50 {
            for j in i + 1..50 {
                let d = ((pts[i].0 - pts[j].0).powi(2) + (pts[i].1 - pts[j].1).powi(2)).sqrt();
                let want = d <= 0.5;
                assert_eq!(g.has_edge(i, j), want);
                m += want as usize;
            }
        }
        assert_eq!(g.m(), m);
    }

    #[test]
    fn generators_are_reproducible() {
        assert_eq!(gen_gnp(40, 0.3, 99), gen_gnp(40, 0.3, 99));
        assert_eq!(gen_geometric(40, 0.3, 99), gen_geometric(40, 0.3, 99));
        assert_ne!(gen_gnp(40, 0.3, 99), gen_gnp(40, 0.3, 100));
    }

    #[test]
    fn complement_basics() {
        assert_eq!(complement(&Graph::complete(3)), Graph::empty(3));
    }

    #[test]
    fn density_values() {
        assert_eq!(density(&Graph::complete(4)).unwrap(), 1.0);
        assert_eq!(density(&Graph::empty(7)).unwrap(), 0.0);
        assert_eq!(density(&Graph::cycle(5)).unwrap(), 0.5);
        assert_eq!(density(&Graph::empty(1)), Err(Error::UndefinedDensity(1)));
    }

    #[test]
    fn named_graphs() {
        assert_eq!(Graph::petersen().m(), 15);
        assert!((0..10).all(|v| Graph::petersen().degree(v) == 3));
        assert_eq!(Graph::crown(3).m(), 6);
        assert_eq!(Graph::star(3).degree(3), 3);
    }

    proptest! {
        #[test]
        fn complement_laws(n in 2usize..25, p in 0.0f64..=1.0, seed in any::<u64>()) {
            let g = gen_gnp(n, p, seed);
            let c = complement(&g);
            assert_simple(&g);
            assert_simple(&c);
            prop_assert_eq!(g.m() + c.m(), n * (n - 1) / 2);
            prop_assert_eq!(&complement(&c), &g);
            let sum = density(&g).unwrap() + density(&c).unwrap();
            prop_assert!((sum - 1.0).abs() < 1e-12);
        }
    }
}
