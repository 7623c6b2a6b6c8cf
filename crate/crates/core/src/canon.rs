//! Canonical forms of square-matrix tuples under simultaneous basis permutation.
//!
//! Vertices are colored by degree-type invariants, the coloring is refined to an equitable
//! partition, and ties are broken by individualizing each vertex of the first non-singleton
//! cell in turn. Every leaf of that search is a full relabeling; the lexicographically
//! smallest relabeled tuple is the canonical form.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::matrix::IntMatrix;

#[derive(Clone, Debug)]
pub struct Canonical {
    /// `perm[v]` is the canonical position of input basis vector `v`.
    pub perm: Vec<usize>,
    pub matrices: Vec<IntMatrix>,
}

pub fn canonical_form(mats: &[IntMatrix]) -> Canonical {
    let n = mats.first().map_or(0, IntMatrix::rows);
    assert!(mats.iter().all(|m| m.rows() == n && m.cols() == n), "canonical_form needs equal square matrices");
    if n == 0 {
        return Canonical { perm: Vec::new(), matrices: mats.to_vec() };
    }
    let initial = initial_colors(mats, n);
    let mut best: Option<Canonical> = None;
    search(mats, n, initial, &mut best);
    best.expect("at least one leaf")
}

/// Isomorphism witness: `phi[a]` is the index in `b` matched with index `a` of `a`.
pub fn isomorphism(a: &[IntMatrix], b: &[IntMatrix]) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let na = a.first().map_or(0, IntMatrix::rows);
    let nb = b.first().map_or(0, IntMatrix::rows);
    if na != nb {
        return None;
    }
    let ca = canonical_form(a);
    let cb = canonical_form(b);
    if ca.matrices != cb.matrices {
        return None;
    }
    let mut inv_b = vec![0; nb];
    for (v, &p) in cb.perm.iter().enumerate() {
        inv_b[p] = v;
    }
    Some(ca.perm.iter().map(|&p| inv_b[p]).collect())
}

fn initial_colors(mats: &[IntMatrix], n: usize) -> Vec<usize> {
    let keys: Vec<Vec<Vec<BigInt>>> = (0..n)
        .map(|v| {
            let mut key = Vec::new();
            for m in mats {
                let mut row: Vec<BigInt> = m.row(v).to_vec();
                let mut col: Vec<BigInt> = (0..n).map(|u| m.get(u, v).clone()).collect();
                row.sort();
                col.sort();
                key.push(vec![m.get(v, v).clone()]);
                key.push(row);
                key.push(col);
            }
            key
        })
        .collect();
    rank_keys(&keys)
}

fn rank_keys<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap()).collect()
}

type Signature = (usize, Vec<Vec<(usize, BigInt)>>);

fn refine(mats: &[IntMatrix], n: usize, mut colors: Vec<usize>) -> Vec<usize> {
    let mut classes = count_classes(&colors);
    loop {
        let sigs: Vec<Signature> = (0..n)
            .map(|v| {
                let mut parts = Vec::with_capacity(2 * mats.len());
                for m in mats {
                    let mut out: Vec<(usize, BigInt)> = (0..n)
                        .filter(|&u| !m.get(v, u).is_zero())
                        .map(|u| (colors[u], m.get(v, u).clone()))
                        .collect();
                    let mut inc: Vec<(usize, BigInt)> = (0..n)
                        .filter(|&u| !m.get(u, v).is_zero())
                        .map(|u| (colors[u], m.get(u, v).clone()))
                        .collect();
                    out.sort();
                    inc.sort();
                    parts.push(out);
                    parts.push(inc);
                }
                (colors[v], parts)
            })
            .collect();
        let next = rank_keys(&sigs);
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(mats: &[IntMatrix], n: usize, colors: Vec<usize>, best: &mut Option<Canonical>) {
    let colors = refine(mats, n, colors);
    let mut cell_size = vec![0usize; n];
    for &c in &colors {
        cell_size[c] += 1;
    }
    match (0..n).find(|&c| cell_size[c] > 1) {
        None => {
            let relabeled: Vec<IntMatrix> = mats.iter().map(|m| m.permuted(&colors)).collect();
            let better = best.as_ref().is_none_or(|b| relabeled < b.matrices);
            if better {
                *best = Some(Canonical { perm: colors, matrices: relabeled });
            }
        }
        Some(target) => {
            for v in (0..n).filter(|&v| colors[v] == target) {
                let split: Vec<usize> = (0..n)
                    .map(|u| 2 * colors[u] + usize::from(colors[u] == target && u != v))
                    .collect();
                search(mats, n, split, best);
            }
        }
    }
}
