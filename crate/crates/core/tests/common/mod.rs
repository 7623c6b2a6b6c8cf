//! Independent oracles shared by the integration tests. Nothing here calls the library's
//! solvers; only the exact cyclotomic arithmetic and the basic types are reused.

#![allow(dead_code)]

use zplus::cyclotomic::CyclotomicNumber;
use zplus::dynkin::{DynkinType, Family};

/// Closed-form list of types with Coxeter number `l + 2`.
pub fn ade_closed_form(l: u32) -> Vec<DynkinType> {
    let l = l as usize;
    let mut out = vec![DynkinType::new(Family::A, l + 1).unwrap()];
    if l.is_multiple_of(2) {
        out.push(DynkinType::canonical(Family::D, l / 2 + 2).unwrap());
    } else {
        out.push(DynkinType::new(Family::T, l.div_ceil(2)).unwrap());
    }
    match l {
        10 => out.push(DynkinType::new(Family::E, 6).unwrap()),
        16 => out.push(DynkinType::new(Family::E, 7).unwrap()),
        28 => out.push(DynkinType::new(Family::E, 8).unwrap()),
        _ => {}
    }
    out.sort();
    out.dedup();
    out
}

fn zeta(n: u64, k: i64) -> CyclotomicNumber {
    CyclotomicNumber::zeta(n, k).unwrap()
}

/// Plain backtracking over the entries of `Z` allowed by the `T` classes, each in
/// `0..=bound`, with `Z[0][0] = 1`. An entry `(a, b)` of `ŜZ − ZŜ` is tested as soon as every
/// unknown it involves is fixed.
pub fn brute_force_invariants(l: u32, bound: i64) -> Vec<Vec<Vec<i64>>> {
    let r = l as usize + 1;
    let h = l as i64 + 2;
    let n = 2 * h as u64;
    let s: Vec<Vec<CyclotomicNumber>> = (0..r)
        .map(|i| (0..r).map(|j| {
            let e = ((i + 1) * (j + 1)) as i64;
            &zeta(n, e) - &zeta(n, -e)
        }).collect())
        .collect();
    let t: Vec<i64> = (0..r).map(|j| ((j as i64 + 1).pow(2)) % (4 * h)).collect();
    let cells: Vec<(usize, usize)> =
        (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).filter(|&(i, j)| t[i] == t[j]).collect();
    // Entry (a, b) of ŜZ − ZŜ involves Z[k][b] and Z[a][k] for all k.
    let mut ready_after: Vec<Vec<(usize, usize)>> = vec![Vec::new(); cells.len()];
    for a in 0..r {
        for b in 0..r {
            let last = cells
                .iter()
                .enumerate()
                .filter(|(_, &(i, j))| j == b || i == a)
                .map(|(idx, _)| idx)
                .max();
            if let Some(last) = last {
                ready_after[last].push((a, b));
            }
        }
    }
    let mut z = vec![vec![0i64; r]; r];
    let mut out = Vec::new();
    fn go(
        idx: usize,
        cells: &[(usize, usize)],
        ready_after: &[Vec<(usize, usize)>],
        s: &[Vec<CyclotomicNumber>],
        bound: i64,
        z: &mut Vec<Vec<i64>>,
        out: &mut Vec<Vec<Vec<i64>>>,
    ) {
        if idx == cells.len() {
            out.push(z.clone());
            return;
        }
        let (i, j) = cells[idx];
        let range = if (i, j) == (0, 0) { 1..=1 } else { 0..=bound };
        for v in range {
            z[i][j] = v;
            let ok = ready_after[idx].iter().all(|&(a, b)| {
                let mut acc = CyclotomicNumber::zero();
                for k in 0..z.len() {
                    if z[k][b] != 0 {
                        acc = &acc + &s[a][k].scale(&num_rational::BigRational::from_integer(z[k][b].into()));
                    }
                    if z[a][k] != 0 {
                        acc = &acc - &s[k][b].scale(&num_rational::BigRational::from_integer(z[a][k].into()));
                    }
                }
                acc.is_zero()
            });
            if ok {
                go(idx + 1, cells, ready_after, s, bound, z, out);
            }
        }
        z[i][j] = 0;
    }
    go(0, &cells, &ready_after, &s, bound, &mut z, &mut out);
    out.sort();
    out
}

pub type Mat = Vec<Vec<i64>>;

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn ident(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// `p_0 = I, p_1 = X, p_{i+1} = X p_i − p_{i−1}`, returned up to `p_{count−1}`.
pub fn chebyshev(x: &Mat, count: usize) -> Vec<Mat> {
    let n = x.len();
    let mut out = vec![ident(n), x.clone()];
    while out.len() < count {
        let k = out.len();
        let prod = mat_mul(x, &out[k - 1]);
        let next = (0..n).map(|i| (0..n).map(|j| prod[i][j] - out[k - 2][i][j]).collect()).collect();
        out.push(next);
    }
    out.truncate(count);
    out
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically smallest relabelling of a family of matrices, over all permutations.
pub fn brute_canonical(mats: &[Mat]) -> Vec<Mat> {
    let n = mats[0].len();
    all_permutations(n)
        .into_iter()
        .map(|p| {
            mats.iter()
                .map(|m| (0..n).map(|a| (0..n).map(|b| m[p[a]][p[b]]).collect()).collect())
                .collect::<Vec<Mat>>()
        })
        .min()
        .unwrap()
}

fn strongly_connected(mats: &[Mat]) -> bool {
    let n = mats[0].len();
    let reach = |rev: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                let edge = mats.iter().any(|m| if rev { m[w][v] > 0 } else { m[v][w] > 0 });
                if edge && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    };
    reach(false) && reach(true)
}

/// Irreducible modules over the level-`l` fusion ring with rank ≤ `max_rank` and all entries
/// of every `M_i = p_i(M_1)` in `0..=max_entry`, found by searching `M_1` alone. Returned as
/// canonical `M_1` matrices.
pub fn oracle_sl2_modules(l: u32, max_rank: usize, max_entry: i64) -> Vec<Mat> {
    let mut found = std::collections::BTreeSet::new();
    for n in 1..=max_rank {
        let mut x = vec![vec![0i64; n]; n];
        search(0, n, l, max_entry, &mut x, &mut found);
    }
    found.into_iter().collect()
}

fn search(pos: usize, n: usize, l: u32, max_entry: i64, x: &mut Mat, found: &mut std::collections::BTreeSet<Mat>) {
    if pos == n * n {
        let ps = chebyshev(x, l as usize + 2);
        let ok = ps[..=l as usize].iter().all(|p| p.iter().flatten().all(|&v| (0..=max_entry).contains(&v)))
            && ps[l as usize + 1].iter().flatten().all(|&v| v == 0)
            && strongly_connected(&ps[..=l as usize]);
        if ok {
            found.insert(brute_canonical(std::slice::from_ref(x)).remove(0));
        }
        return;
    }
    let (a, b) = (pos / n, pos % n);
    for v in 0..=max_entry {
        x[a][b] = v;
        // p_2 = X² − I must have entries ≤ max_entry; check row a of X² against completed rows.
        let ok = l < 2 || (0..n).all(|c| {
            let partial: i64 = (0..n)
                .filter(|&k| a * n + k <= pos && k * n + c <= pos)
                .map(|k| x[a][k] * x[k][c])
                .sum();
            partial <= max_entry + i64::from(a == c)
        });
        let ok = ok && (l != 1 || (0..n).all(|c| {
            let partial: i64 = (0..n)
                .filter(|&k| a * n + k <= pos && k * n + c <= pos)
                .map(|k| x[a][k] * x[k][c])
                .sum();
            partial <= i64::from(a == c)
        }));
        if ok {
            search(pos + 1, n, l, max_entry, x, found);
        }
    }
    x[a][b] = 0;
}
