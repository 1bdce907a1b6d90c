//! Helpers for permutations of `0..n`, the genome shared by both formulations.

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::rng::Rng;

pub fn is_permutation(seq: &[usize], n: usize) -> bool {
    if seq.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in seq {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

pub fn check_permutation(seq: &[usize], n: usize) -> Result<()> {
    if is_permutation(seq, n) {
        Ok(())
    } else {
        Err(Error::NotPermutation(n))
    }
}

/// `pos[seq[x]] == x`.
pub fn positions(seq: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; seq.len()];
    for (x, &v) in seq.iter().enumerate() {
        pos[v] = x;
    }
    pos
}

pub fn random_permutation(n: usize, rng: &mut Rng) -> Vec<usize> {
    let mut seq: Vec<usize> = (0..n).collect();
    seq.shuffle(rng);
    seq
}

/// Subsequence-completion crossover.
///
/// The first child keeps `a[..z]` and appends the remaining elements in the
/// order they appear in `b`; the second child is the mirror image. Requires
/// `1 <= z < n`.
pub fn completion_crossover(a: &[usize], b: &[usize], z: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = a.len();
    if b.len() != n {
        return Err(Error::SizeMismatch { expected: n, got: b.len() });
    }
    if z == 0 || z >= n {
        return Err(Error::CutOutOfRange { z, n });
    }
    Ok((complete(a, b, z), complete(b, a, z)))
}

fn complete(head: &[usize], tail: &[usize], z: usize) -> Vec<usize> {
    let n = head.len();
    let mut taken = vec![false; n];
    let mut child = Vec::with_capacity(n);
    for &x in &head[..z] {
        taken[x] = true;
        child.push(x);
    }
    child.extend(tail.iter().copied().filter(|&x| !taken[x]));
    child
}

/// Parses one line of whitespace-separated 1-based integers into a 0-based permutation.
pub fn parse_line(text: &str) -> Result<Vec<usize>> {
    let mut seq = Vec::new();
    for tok in text.split_whitespace() {
        let v: usize = tok.parse().map_err(|_| Error::Parse {
            line: 1,
            msg: format!("expected a positive integer, found `{tok}`"),
        })?;
        if v == 0 {
            return Err(Error::Parse { line: 1, msg: "indices start at 1".into() });
        }
        seq.push(v - 1);
    }
    check_permutation(&seq, seq.len())?;
    Ok(seq)
}

pub fn format_line(seq: &[usize]) -> String {
    let mut out = String::new();
    for (i, &v) in seq.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&(v + 1).to_string());
    }
    out
}
