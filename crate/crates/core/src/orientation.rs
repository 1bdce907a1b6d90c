//! Acyclic orientations and the operators that evolve them.
//!
//! An orientation is stored as its canonical linear extension: the
//! topological order in which incomparable nodes appear by ascending id. Any
//! permutation of the nodes induces an acyclic orientation (each edge points
//! from the earlier endpoint to the later one), so crossover and mutation are
//! plain sequence operations followed by re-canonicalization.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use rand::Rng as _;

use crate::coloring::{self, Coloring};
use crate::error::{Error, Result};
use crate::evolution::Problem;
use crate::graph::Graph;
use crate::perm;
use crate::rng::Rng;

#[derive(Clone)]
pub struct Orientation<'g> {
    graph: &'g Graph,
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl PartialEq for Orientation<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.graph, other.graph) && self.order == other.order
    }
}

impl Eq for Orientation<'_> {}

impl fmt::Debug for Orientation<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Orientation").field(&self.order).finish()
    }
}

impl<'g> Orientation<'g> {
    /// The orientation induced by `seq`: every edge points from its earlier endpoint to the later one.
    pub fn from_order(graph: &'g Graph, seq: &[usize]) -> Result<Self> {
        perm::check_permutation(seq, graph.n())?;
        Ok(Self::from_order_unchecked(graph, seq))
    }

    pub(crate) fn from_order_unchecked(graph: &'g Graph, seq: &[usize]) -> Self {
        let pos = perm::positions(seq);
        Self::from_directions(graph, |u, v| pos[u] < pos[v]).expect("a total order induces no cycle")
    }

    /// Canonicalizes an orientation given edge by edge.
    ///
    /// `points_to(u, v)` is queried for each edge `{u, v}` and must say whether
    /// the edge is directed `u -> v`; it has to be consistent for `(v, u)`.
    /// Returns `None` if the orientation has a directed cycle.
    pub fn from_directions<F>(graph: &'g Graph, points_to: F) -> Option<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = graph.n();
        let mut indeg = vec![0usize; n];
        for (u, v) in graph.edges() {
            if points_to(u, v) {
                indeg[v] += 1;
            } else {
                indeg[u] += 1;
            }
        }
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(u)) = ready.pop() {
            order.push(u);
            for &v in graph.neighbors(u) {
                if points_to(u, v) {
                    indeg[v] -= 1;
                    if indeg[v] == 0 {
                        ready.push(Reverse(v));
                    }
                }
            }
        }
        if order.len() < n {
            return None;
        }
        let pos = perm::positions(&order);
        Some(Orientation { graph, order, pos })
    }

    /// Orients every edge from the higher color to the lower one.
    pub fn from_coloring(graph: &'g Graph, col: &Coloring) -> Result<Self> {
        coloring::require_proper(graph, col)?;
        Ok(Self::from_directions(graph, |u, v| col.color(u) > col.color(v))
            .expect("colors strictly decrease along every edge"))
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    /// The canonical linear extension.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    /// Whether the edge `{u, v}` is directed `u -> v`.
    #[inline]
    pub fn points_to(&self, u: usize, v: usize) -> bool {
        self.pos[u] < self.pos[v]
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let p = self.pos[v];
        self.graph.neighbors(v).iter().copied().filter(move |&u| self.pos[u] > p)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.graph.neighbors(v).iter().all(|&u| self.points_to(v, u))
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.graph.neighbors(v).iter().all(|&u| self.points_to(u, v))
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| self.is_source(v)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| self.is_sink(v)).collect()
    }

    /// Number of nodes on a longest directed path.
    ///
    /// Depth-first search from every source, memoizing for each node the
    /// number of nodes on the longest path starting there. Each edge is
    /// inspected a constant number of times.
    pub fn longest_path_nodes(&self) -> usize {
        self.path_lengths().into_iter().max().unwrap_or(0)
    }

    /// For each node, the number of nodes on the longest directed path starting at it.
    pub fn path_lengths(&self) -> Vec<usize> {
        let g = self.graph;
        let n = g.n();
        // 0 doubles as "not reached yet"
        let mut len = vec![0usize; n];
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for root in (0..n).filter(|&v| self.is_source(v)) {
            stack.push((root, 0));
            while let Some((v, next)) = stack.last_mut() {
                let v = *v;
                let nbrs = g.neighbors(v);
                let mut child = None;
                while *next < nbrs.len() {
                    let u = nbrs[*next];
                    *next += 1;
                    if self.points_to(v, u) && len[u] == 0 {
                        child = Some(u);
                        break;
                    }
                }
                match child {
                    Some(u) => stack.push((u, 0)),
                    None => {
                        len[v] = 1 + self.out_neighbors(v).map(|u| len[u]).max().unwrap_or(0);
                        stack.pop();
                    }
                }
            }
        }
        len
    }

    /// `n` minus the number of nodes on a longest directed path.
    pub fn fitness(&self) -> usize {
        self.graph.n() - self.longest_path_nodes()
    }

    /// Colors sinks with 1, removes them, colors the new sinks with 2, and so on.
    pub fn sink_decomposition_coloring(&self) -> Coloring {
        let g = self.graph;
        let n = g.n();
        let mut outdeg: Vec<usize> = (0..n).map(|v| self.out_neighbors(v).count()).collect();
        let mut colors = vec![0usize; n];
        let mut layer: Vec<usize> = (0..n).filter(|&v| outdeg[v] == 0).collect();
        let mut round = 0;
        while !layer.is_empty() {
            round += 1;
            let mut next = Vec::new();
            for &s in &layer {
                colors[s] = round;
            }
            for &s in &layer {
                for &u in g.neighbors(s) {
                    if self.points_to(u, s) {
                        outdeg[u] -= 1;
                        if outdeg[u] == 0 {
                            next.push(u);
                        }
                    }
                }
            }
            layer = next;
        }
        Coloring::new(colors)
    }

    /// Turns `v` into a source: every edge at `v` is directed away from it, all others are kept.
    pub fn turn_into_source(&self, v: usize) -> Self {
        let mut seq = Vec::with_capacity(self.order.len());
        seq.push(v);
        seq.extend(self.order.iter().copied().filter(|&u| u != v));
        Self::from_order_unchecked(self.graph, &seq)
    }

    /// Subsequence-completion crossover on the linear representations. Requires `1 <= z < n`.
    pub fn crossover(&self, other: &Self, z: usize) -> Result<(Self, Self)> {
        if !std::ptr::eq(self.graph, other.graph) {
            return Err(Error::GraphMismatch);
        }
        let (a, b) = perm::completion_crossover(&self.order, &other.order, z)?;
        Ok((Self::from_order_unchecked(self.graph, &a), Self::from_order_unchecked(self.graph, &b)))
    }

    /// A sequence of source turns that transforms `self` into `target`.
    pub fn mutation_sequence(&self, target: &Self) -> Result<MutationPlan> {
        if !std::ptr::eq(self.graph, target.graph) {
            return Err(Error::GraphMismatch);
        }
        Ok(MutationPlan::build(self, target))
    }

    pub fn to_line(&self) -> String {
        perm::format_line(&self.order)
    }

    pub fn parse_line(graph: &'g Graph, text: &str) -> Result<Self> {
        let seq = perm::parse_line(text)?;
        Self::from_order(graph, &seq)
    }
}

/// Source turns leading from one acyclic orientation to another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationPlan {
    /// How many times each node is turned into a source (including no-op turns of nodes that already are one).
    pub targets: Vec<usize>,
    /// Effective source turns, in application order.
    pub sequence: Vec<usize>,
    /// Number of edges the two orientations direct differently.
    pub changed_edges: usize,
    /// Nodes from which a node incident to a changed edge can be reached, those nodes included.
    pub upstream_nodes: usize,
}

impl MutationPlan {
    fn build(from: &Orientation<'_>, to: &Orientation<'_>) -> Self {
        let g = from.graph;
        let n = g.n();
        let differs = |u: usize, v: usize| from.points_to(u, v) != to.points_to(u, v);

        let mut changed_edges = 0;
        let mut upstream = vec![false; n];
        let mut stack = Vec::new();
        for (u, v) in g.edges().filter(|&(u, v)| differs(u, v)) {
            changed_edges += 1;
            for w in [u, v] {
                if !upstream[w] {
                    upstream[w] = true;
                    stack.push(w);
                }
            }
        }
        // everything that reaches a changed edge under `from`
        while let Some(v) = stack.pop() {
            for &u in g.neighbors(v) {
                if from.points_to(u, v) && !upstream[u] {
                    upstream[u] = true;
                    stack.push(u);
                }
            }
        }
        let upstream_nodes = upstream.iter().filter(|&&b| b).count();

        // Smallest counts with t[j] >= t[i] + 1 on changed edges i -> j and
        // t[i] >= t[j] on unchanged edges i -> j (directions under `from`).
        // Those constraints point along the reverse of `to`, which is acyclic,
        // so one sweep over `to`'s order from the back settles them.
        let mut targets = vec![0usize; n];
        for &a in to.order.iter().rev() {
            targets[a] = to
                .out_neighbors(a)
                .map(|b| targets[b] + differs(a, b) as usize)
                .max()
                .unwrap_or(0);
        }

        // Replay: always turn a node of greatest remaining count; among those,
        // one no other candidate points to (smallest id first).
        let mut t = targets.clone();
        // key[u] < key[v] iff u -> v in the current orientation
        let mut key: Vec<i64> = (0..n).map(|v| from.pos[v] as i64).collect();
        let mut front = 0i64;
        let mut sequence = Vec::new();
        loop {
            let top = t.iter().copied().max().unwrap_or(0);
            if top == 0 {
                break;
            }
            let pick = (0..n)
                .filter(|&v| t[v] == top)
                .find(|&v| g.neighbors(v).iter().all(|&u| t[u] != top || key[u] < key[v]))
                .expect("candidates induce an acyclic orientation");
            t[pick] -= 1;
            if g.neighbors(pick).iter().any(|&u| key[u] < key[pick]) {
                front -= 1;
                key[pick] = front;
                sequence.push(pick);
            }
        }

        MutationPlan { targets, sequence, changed_edges, upstream_nodes }
    }

    pub fn apply<'g>(&self, from: &Orientation<'g>) -> Orientation<'g> {
        self.sequence.iter().fold(from.clone(), |o, &v| o.turn_into_source(v))
    }
}

/// Evolution over acyclic orientations of one fixed graph.
pub struct AoProblem<'g> {
    pub graph: &'g Graph,
}

impl<'g> AoProblem<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        AoProblem { graph }
    }
}

impl<'g> Problem for AoProblem<'g> {
    type Individual = Orientation<'g>;

    fn genome_len(&self) -> usize {
        self.graph.n()
    }

    fn from_permutation(&self, perm: Vec<usize>) -> Orientation<'g> {
        Orientation::from_order_unchecked(self.graph, &perm)
    }

    fn genome<'a>(&self, ind: &'a Orientation<'g>) -> &'a [usize] {
        ind.order()
    }

    fn fitness(&self, ind: &Orientation<'g>) -> f64 {
        ind.fitness() as f64
    }

    fn crossover(&self, a: &Orientation<'g>, b: &Orientation<'g>, z: usize) -> (Orientation<'g>, Orientation<'g>) {
        a.crossover(b, z).expect("cut drawn in range")
    }

    fn mutate(&self, ind: &Orientation<'g>, rng: &mut Rng) -> Orientation<'g> {
        let v = rng.gen_range(0..self.graph.n());
        ind.turn_into_source(v)
    }
}
