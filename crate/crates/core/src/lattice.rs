//! Integer lattices cut out by linear equations: row-space reduction, integer kernels, and
//! Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Incrementally maintained echelon basis of the rational row space, rows kept primitive.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    ncols: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl RowSpace {
    pub fn new(ncols: usize) -> Self {
        RowSpace { ncols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn insert(&mut self, mut row: Vec<BigInt>) -> bool {
        assert_eq!(row.len(), self.ncols);
        for (pivot, basis) in &self.rows {
            if row[*pivot].is_zero() {
                continue;
            }
            let a = basis[*pivot].clone();
            let b = row[*pivot].clone();
            for (x, y) in row.iter_mut().zip(basis) {
                *x = &a * &*x - &b * y;
            }
            make_primitive(&mut row);
        }
        match row.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                make_primitive(&mut row);
                if row[p].is_negative() {
                    row.iter_mut().for_each(|x| *x = -&*x);
                }
                self.rows.push((p, row));
                true
            }
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vec<BigInt>> {
        self.rows.iter().map(|(_, r)| r)
    }
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        row.iter_mut().for_each(|x| *x = &*x / &g);
    }
}

/// A Z-basis of `{x ∈ Zⁿ : E x = 0}` computed by unimodular column operations.
pub fn integer_kernel<'a>(equations: impl IntoIterator<Item = &'a Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut work: Vec<Vec<BigInt>> = equations.into_iter().cloned().collect();
    // Columns of `u` track the column operations.
    let mut u: Vec<Vec<BigInt>> = (0..ncols)
        .map(|c| (0..ncols).map(|r| if r == c { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut cols: Vec<Vec<BigInt>> = (0..ncols).map(|c| work.iter().map(|row| row[c].clone()).collect()).collect();
    work.clear();
    let nrows = cols.first().map_or(0, Vec::len);
    let mut done = 0;
    for r in 0..nrows {
        loop {
            let mut best: Option<usize> = None;
            for c in done..ncols {
                if !cols[c][r].is_zero() && best.is_none_or(|b| cols[c][r].abs() < cols[b][r].abs()) {
                    best = Some(c);
                }
            }
            let Some(p) = best else { break };
            let mut reduced_any = false;
            for c in done..ncols {
                if c == p || cols[c][r].is_zero() {
                    continue;
                }
                let q = cols[c][r].div_floor(&cols[p][r]);
                let (src_col, src_u) = (cols[p].clone(), u[p].clone());
                for (x, y) in cols[c].iter_mut().zip(&src_col) {
                    *x -= &q * y;
                }
                for (x, y) in u[c].iter_mut().zip(&src_u) {
                    *x -= &q * y;
                }
                reduced_any = true;
            }
            if !reduced_any {
                cols.swap(done, p);
                u.swap(done, p);
                done += 1;
                break;
            }
        }
    }
    u.drain(done..).collect()
}

/// Row-style Hermite normal form of the lattice spanned by `basis`: echelon rows with
/// positive pivots and entries above each pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(mut basis: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = basis.first().map_or(0, Vec::len);
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut col = 0;
    while col < ncols && !basis.is_empty() {
        loop {
            let nonzero: Vec<usize> = (0..basis.len()).filter(|&i| !basis[i][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| basis[i][col].abs()).unwrap();
            let pivot_row = basis[p].clone();
            for &i in &nonzero {
                if i == p {
                    continue;
                }
                let q = basis[i][col].div_floor(&pivot_row[col]);
                for (x, y) in basis[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
        if let Some(i) = (0..basis.len()).find(|&i| !basis[i][col].is_zero()) {
            let mut row = basis.swap_remove(i);
            if row[col].is_negative() {
                row.iter_mut().for_each(|x| *x = -&*x);
            }
            for prev in out.iter_mut() {
                let q = prev[col].div_floor(&row[col]);
                if !q.is_zero() {
                    for (x, y) in prev.iter_mut().zip(&row) {
                        *x -= &q * y;
                    }
                }
            }
            out.push(row);
        }
        basis.retain(|r| r.iter().any(|x| !x.is_zero()));
        col += 1;
    }
    out
}

pub fn pivot(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}
