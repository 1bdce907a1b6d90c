//! Exact answers for small graphs.
//!
//! These back the tests and the `oracle` subcommand: chromatic number by
//! branch and bound, chromatic polynomial by deletion-contraction, and the
//! full set of acyclic orientations, from which the chromatic number is
//! recovered a second way as the minimum, over all acyclic orientations, of
//! the longest directed path.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::coloring::{dsatur, TieMode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::orientation::Orientation;

pub const CHROMATIC_NUMBER_CAP: usize = 16;
pub const POLYNOMIAL_CAP: usize = 12;
pub const ENUMERATION_CAP: usize = 8;

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        Err(Error::CapExceeded { n: g.n(), cap })
    } else {
        Ok(())
    }
}

pub fn chromatic_number_exact(g: &Graph) -> Result<usize> {
    chromatic_number_capped(g, CHROMATIC_NUMBER_CAP)
}

/// Branch and bound over color assignments, seeded with the DSatur count.
pub fn chromatic_number_capped(g: &Graph, cap: usize) -> Result<usize> {
    check_cap(g, cap.min(64))?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut search = ColorSearch {
        g,
        order,
        colors: vec![usize::MAX; n],
        best: dsatur(g, TieMode::Deterministic).color_count(),
    };
    search.descend(0, 0);
    Ok(search.best)
}

struct ColorSearch<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    colors: Vec<usize>,
    best: usize,
}

impl ColorSearch<'_> {
    fn descend(&mut self, depth: usize, used: usize) {
        if used >= self.best {
            return;
        }
        if depth == self.order.len() {
            self.best = used;
            return;
        }
        let v = self.order[depth];
        let mut blocked = 0u64;
        for &u in self.g.neighbors(v) {
            if self.colors[u] != usize::MAX {
                blocked |= 1 << self.colors[u];
            }
        }
        // a fresh color is interchangeable with any other fresh color
        for c in 0..=used {
            if c + 1 >= self.best {
                break;
            }
            if blocked & (1 << c) == 0 {
                self.colors[v] = c;
                self.descend(depth + 1, used.max(c + 1));
                self.colors[v] = usize::MAX;
            }
        }
    }
}

/// A polynomial in the number of available colors, with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticPolynomial {
    /// `coeffs[k]` multiplies `c^k`.
    coeffs: Vec<i128>,
}

impl ChromaticPolynomial {
    pub fn coefficients(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, c: i128) -> i128 {
        self.coeffs.iter().rev().fold(0, |acc, &a| acc * c + a)
    }

    /// Smallest positive integer `c` with a positive value.
    pub fn smallest_positive(&self) -> usize {
        (1..).find(|&c| self.eval(c as i128) > 0).unwrap()
    }
}

impl fmt::Display for ChromaticPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &a) in self.coeffs.iter().enumerate().rev().filter(|(_, &a)| a != 0) {
            let sign = if a < 0 { "-" } else if first { "" } else { "+" };
            let mag = a.unsigned_abs();
            if !first {
                f.write_str(" ")?;
            }
            f.write_str(sign)?;
            if !first {
                f.write_str(" ")?;
            }
            match (k, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => f.write_str("c")?,
                (1, m) => write!(f, "{m}c")?,
                (k, 1) => write!(f, "c^{k}")?,
                (k, m) => write!(f, "{m}c^{k}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub fn chromatic_polynomial(g: &Graph) -> Result<ChromaticPolynomial> {
    chromatic_polynomial_capped(g, POLYNOMIAL_CAP)
}

/// Deletion-contraction with memoization.
///
/// Sparse graphs delete an edge (`P(G) = P(G - e) - P(G / e)`); dense ones
/// add a missing edge (`P(G) = P(G + e) + P(G / e)`), so the recursion
/// bottoms out at edgeless or complete graphs either way.
pub fn chromatic_polynomial_capped(g: &Graph, cap: usize) -> Result<ChromaticPolynomial> {
    check_cap(g, cap.min(64))?;
    let adj: Vec<u64> = (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let mut memo = HashMap::new();
    Ok(ChromaticPolynomial { coeffs: deletion_contraction(adj, &mut memo) })
}

type Poly = Vec<i128>;

fn deletion_contraction(adj: Vec<u64>, memo: &mut HashMap<Vec<u64>, Poly>) -> Poly {
    let k = adj.len();
    let m = adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2;
    if m == 0 {
        let mut p = vec![0; k + 1];
        p[k] = 1;
        return p;
    }
    if m == k * (k - 1) / 2 {
        // c (c - 1) ... (c - k + 1)
        return (0..k as i128).fold(vec![1], |p, j| poly_mul_linear(&p, -j));
    }
    if let Some(p) = memo.get(&adj) {
        return p.clone();
    }
    let result = if let Some(v) = adj.iter().position(|&a| a == 0) {
        let rest = deletion_contraction(remove_vertex(&adj, v), memo);
        poly_mul_linear(&rest, 0)
    } else if 4 * m <= k * (k - 1) {
        let u = (0..k).min_by_key(|&v| adj[v].count_ones()).unwrap();
        let v = adj[u].trailing_zeros() as usize;
        let mut deleted = adj.clone();
        deleted[u] &= !(1 << v);
        deleted[v] &= !(1 << u);
        let a = deletion_contraction(deleted, memo);
        let b = deletion_contraction(contract(&adj, u, v), memo);
        poly_sub(&a, &b)
    } else {
        let full = (1u64 << k) - 1;
        let u = (0..k).find(|&v| adj[v] | (1 << v) != full).unwrap();
        let v = (!(adj[u] | (1 << u)) & full).trailing_zeros() as usize;
        let mut added = adj.clone();
        added[u] |= 1 << v;
        added[v] |= 1 << u;
        let a = deletion_contraction(added, memo);
        let b = deletion_contraction(contract(&adj, u, v), memo);
        poly_add(&a, &b)
    };
    memo.insert(adj, result.clone());
    result
}

fn squeeze(mask: u64, v: usize) -> u64 {
    let low = (1u64 << v) - 1;
    (mask & low) | ((mask >> 1) & !low)
}

fn remove_vertex(adj: &[u64], v: usize) -> Vec<u64> {
    adj.iter()
        .enumerate()
        .filter(|&(w, _)| w != v)
        .map(|(_, &a)| squeeze(a, v))
        .collect()
}

/// Merges `v` into `u`.
fn contract(adj: &[u64], u: usize, v: usize) -> Vec<u64> {
    let mut merged = adj.to_vec();
    merged[u] = (adj[u] | adj[v]) & !(1 << u) & !(1 << v);
    for w in 0..adj.len() {
        if merged[u] & (1 << w) != 0 {
            merged[w] |= 1 << u;
        }
    }
    remove_vertex(&merged, v)
}

/// `p * (c + a)`.
fn poly_mul_linear(p: &[i128], a: i128) -> Poly {
    let mut out = vec![0; p.len() + 1];
    for (k, &x) in p.iter().enumerate() {
        out[k + 1] += x;
        out[k] += a * x;
    }
    out
}

fn poly_add(a: &[i128], b: &[i128]) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (k, &x) in a.iter().enumerate() {
        out[k] += x;
    }
    for (k, &x) in b.iter().enumerate() {
        out[k] += x;
    }
    out
}

fn poly_sub(a: &[i128], b: &[i128]) -> Poly {
    poly_add(a, &b.iter().map(|&x| -x).collect::<Vec<_>>())
}

pub fn enumerate_acyclic_orientations(g: &Graph) -> Result<Vec<Orientation<'_>>> {
    enumerate_capped(g, ENUMERATION_CAP)
}

/// Every acyclic orientation, via the orientations induced by all `n!` node orders.
pub fn enumerate_capped(g: &Graph, cap: usize) -> Result<Vec<Orientation<'_>>> {
    check_cap(g, cap)?;
    let n = g.n();
    let mut seen = BTreeSet::new();
    let mut seq: Vec<usize> = (0..n).collect();
    // Heap's algorithm, iterative form
    let mut counters = vec![0usize; n];
    seen.insert(Orientation::from_order_unchecked(g, &seq).order().to_vec());
    let mut i = 1;
    while i < n {
        if counters[i] < i {
            let j = if i % 2 == 0 { 0 } else { counters[i] };
            seq.swap(j, i);
            seen.insert(Orientation::from_order_unchecked(g, &seq).order().to_vec());
            counters[i] += 1;
            i = 1;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(seen.into_iter().map(|order| Orientation::from_order_unchecked(g, &order)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StanleyCheck {
    pub orientations: usize,
    /// `(-1)^n * P(-1)`.
    pub polynomial_value: i128,
    pub equal: bool,
}

/// Compares the number of acyclic orientations with `(-1)^n` times the chromatic polynomial at `-1`.
pub fn verify_stanley(g: &Graph) -> Result<StanleyCheck> {
    let orientations = enumerate_acyclic_orientations(g)?.len();
    let p = chromatic_polynomial(g)?;
    let sign = if g.n().is_multiple_of(2) { 1 } else { -1 };
    let polynomial_value = sign * p.eval(-1);
    Ok(StanleyCheck { orientations, polynomial_value, equal: orientations as i128 == polynomial_value })
}

/// Minimum over all acyclic orientations of the longest directed path.
pub fn chi_via_orientations(g: &Graph) -> Result<usize> {
    Ok(enumerate_acyclic_orientations(g)?
        .iter()
        .map(Orientation::longest_path_nodes)
        .min()
        .unwrap_or(0))
}
