//! Simply laced Dynkin diagrams with loops (types A, D, E, T): construction, Coxeter data,
//! recognition, and exhaustive enumeration of connected graphs with spectral radius below 2.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::poly::{characteristic_polynomial, cos_exponents};

/// Symmetric non-negative integer adjacency matrix; diagonal entries count loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LoopyGraph {
    adjacency: IntMatrix,
}

impl LoopyGraph {
    pub fn new(adjacency: IntMatrix) -> Result<Self> {
        if !adjacency.is_square() || adjacency.rows() == 0 {
            return Err(Error::Dimension("adjacency must be a nonempty square matrix".into()));
        }
        if !adjacency.is_symmetric() {
            return Err(Error::Precondition("adjacency is not symmetric".into()));
        }
        if !adjacency.is_nonnegative() {
            return Err(Error::Precondition("adjacency has negative entries".into()));
        }
        Ok(LoopyGraph { adjacency })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let m = IntMatrix::try_from_rows(rows).ok_or_else(|| Error::Dimension("ragged adjacency".into()))?;
        Self::new(m)
    }

    pub fn size(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn adjacency(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn is_connected(&self) -> bool {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if !seen[w] && !self.adjacency.get(v, w).is_zero() {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        LoopyGraph { adjacency: self.adjacency.permuted(perm) }
    }

    pub fn canonical(&self) -> Self {
        LoopyGraph { adjacency: canonical_form(std::slice::from_ref(&self.adjacency)).matrices.remove(0) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

impl DynkinType {
    /// Admissible types only: `A_n, T_n` (n ≥ 1), `D_n` (n ≥ 4), `E_6, E_7, E_8`.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A | Family::T => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(Error::Inadmissible(format!("{family:?}{rank}")))
        }
    }

    /// Like [`DynkinType::new`] but folds `D_3` onto `A_3`.
    pub fn canonical(family: Family, rank: usize) -> Result<Self> {
        match (family, rank) {
            (Family::D, 3) => Self::new(Family::A, 3),
            _ => Self::new(family, rank),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// All admissible types of the given rank, in family order.
    pub fn all_of_rank(rank: usize) -> Vec<DynkinType> {
        [Family::A, Family::D, Family::E, Family::T]
            .into_iter()
            .filter_map(|f| DynkinType::new(f, rank).ok())
            .collect()
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('T') => Family::T,
            _ => return Err(Error::Parse(format!("unknown Dynkin type {s:?}"))),
        };
        let digits = chars.as_str().trim_start_matches('_');
        let rank = digits.parse().map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        Self::canonical(family, rank)
    }
}

/// Standard adjacency matrix of an admissible type.
pub fn build(ty: DynkinType) -> Result<LoopyGraph> {
    let ty = DynkinType::new(ty.family, ty.rank)?;
    let n = ty.rank;
    let mut a = IntMatrix::zeros(n, n);
    let mut edge = |i: usize, j: usize| {
        a.set(i, j, BigInt::one());
        a.set(j, i, BigInt::one());
    };
    match ty.family {
        Family::A | Family::T => (1..n).for_each(|i| edge(i - 1, i)),
        Family::D => {
            (1..n - 1).for_each(|i| edge(i - 1, i));
            edge(n - 3, n - 1);
        }
        Family::E => {
            (1..n - 1).for_each(|i| edge(i - 1, i));
            edge(2, n - 1);
        }
    }
    if ty.family == Family::T {
        a.set(n - 1, n - 1, BigInt::one());
    }
    LoopyGraph::new(a)
}

pub fn coxeter_number(ty: DynkinType) -> u64 {
    let n = ty.rank as u64;
    match (ty.family, n) {
        (Family::A, _) => n + 1,
        (Family::D, _) => 2 * n - 2,
        (Family::T, _) => 2 * n + 1,
        (Family::E, 6) => 12,
        (Family::E, 7) => 18,
        (Family::E, _) => 30,
    }
}

/// Multiset of `m ∈ [1, h−1]` with `2cos(πm/h)` an eigenvalue of the adjacency matrix.
pub fn coxeter_exponents(ty: DynkinType) -> Result<Vec<u64>> {
    let g = build(ty)?;
    graph_exponents(&g, coxeter_number(ty)).map_err(|_| Error::Precondition(format!("{ty} spectrum mismatch")))
}

/// Exponents of an arbitrary graph relative to `h`, or the unmatched characteristic factor.
pub fn graph_exponents(g: &LoopyGraph, h: u64) -> std::result::Result<Vec<u64>, Vec<BigInt>> {
    cos_exponents(&characteristic_polynomial(g.adjacency()), h)
}

/// Sylvester test: `2I − A` positive definite over the rationals, i.e. all eigenvalues of
/// the symmetric matrix `A` lie below 2.
pub fn is_norm_lt_2(g: &LoopyGraph) -> bool {
    let n = g.size();
    let two = BigInt::from(2);
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = if i == j { two.clone() } else { BigInt::zero() };
                    BigRational::from_integer(d - g.adjacency().get(i, j))
                })
                .collect()
        })
        .collect();
    // Pivots of elimination without row exchanges are ratios of consecutive leading minors.
    for k in 0..n {
        if !m[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let t = &f * &m[k][j];
                m[i][j] -= t;
            }
        }
    }
    true
}

/// The type whose standard diagram is isomorphic to `g`, if any.
pub fn recognize(g: &LoopyGraph) -> Result<Option<DynkinType>> {
    if !g.is_connected() {
        return Err(Error::Precondition("recognize needs a connected graph".into()));
    }
    let canon = g.canonical();
    for ty in DynkinType::all_of_rank(g.size()) {
        if build(ty)?.canonical() == canon {
            return Ok(Some(ty));
        }
    }
    Ok(None)
}

/// All connected loopy graphs on at most `max_size` vertices with spectral radius < 2, one
/// per isomorphism class, each in canonical form, sorted by size then adjacency.
///
/// Graphs grow one vertex at a time: every such graph has a non-cut vertex whose removal
/// leaves a smaller graph of the same kind. A new vertex has at most three neighbours (a
/// fourth would contain the star `K_{1,4}` of norm 2) and all entries stay in `{0, 1}`.
/// Positivity of the grown `2I − A` reduces to the sign of one Schur complement.
pub fn enumerate_norm_lt_2(max_size: usize) -> Vec<LoopyGraph> {
    let mut all = Vec::new();
    if max_size == 0 {
        return all;
    }
    let mut layer: Vec<LoopyGraph> = vec![
        LoopyGraph::from_rows(&[vec![0]]).unwrap(),
        LoopyGraph::from_rows(&[vec![1]]).unwrap(),
    ];
    layer.sort();
    for _ in 1..max_size {
        let mut next: HashSet<LoopyGraph> = HashSet::new();
        for parent in &layer {
            extend_parent(parent, &mut next);
        }
        all.append(&mut layer);
        layer = next.into_iter().collect();
        layer.sort();
    }
    all.append(&mut layer);
    all
}

fn extend_parent(parent: &LoopyGraph, out: &mut HashSet<LoopyGraph>) {
    let n = parent.size();
    let (inv, det) = scaled_inverse(parent);
    let subsets = neighbour_sets(n);
    for s in &subsets {
        let mut quad = BigInt::zero();
        for &a in s {
            for &b in s {
                quad += &inv[a][b];
            }
        }
        for lp in 0..2i64 {
            // Schur complement of the new diagonal entry, scaled by det > 0.
            let schur = BigInt::from(2 - lp) * &det - &quad;
            if !schur.is_positive() {
                continue;
            }
            let mut adj = IntMatrix::zeros(n + 1, n + 1);
            for i in 0..n {
                for j in 0..n {
                    adj.set(i, j, parent.adjacency().get(i, j).clone());
                }
            }
            for &a in s {
                adj.set(a, n, BigInt::one());
                adj.set(n, a, BigInt::one());
            }
            adj.set(n, n, BigInt::from(lp));
            let g = LoopyGraph { adjacency: adj };
            out.insert(g.canonical());
        }
    }
}

fn neighbour_sets(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..n {
        out.push(vec![a]);
        for b in a + 1..n {
            out.push(vec![a, b]);
            for c in b + 1..n {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

/// `(det · (2I − A)⁻¹, det)` for a positive definite `2I − A`.
fn scaled_inverse(g: &LoopyGraph) -> (Vec<Vec<BigInt>>, BigInt) {
    let n = g.size();
    let two = BigInt::from(2);
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n)
                .map(|j| {
                    let d = if i == j { two.clone() } else { BigInt::zero() };
                    BigRational::from_integer(d - g.adjacency().get(i, j))
                })
                .collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    let mut det = BigRational::one();
    for k in 0..n {
        let p = m[k][k].clone();
        assert!(p.is_positive(), "parent graph must have norm < 2");
        det *= &p;
        for j in 0..2 * n {
            m[k][j] = &m[k][j] / &p;
        }
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].clone();
            for j in 0..2 * n {
                let t = &f * &m[k][j];
                m[i][j] -= t;
            }
        }
    }
    debug_assert!(det.is_integer());
    let det = det.to_integer();
    let inv = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = &m[i][n + j] * BigRational::from_integer(det.clone());
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    (inv, det)
}

/// The Coxeter number read off the spectrum: the unique `h` with every eigenvalue of the
/// form `2cos(πm/h)` and the largest equal to `2cos(π/h)`.
pub fn spectral_coxeter_number(g: &LoopyGraph) -> Option<u64> {
    let max_h = (2 * g.size() as u64 + 2).max(30);
    let hits: Vec<u64> = (2..=max_h)
        .filter(|&h| graph_exponents(g, h).is_ok_and(|e| e.first() == Some(&1)))
        .collect();
    match hits.as_slice() {
        [h] => Some(*h),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> DynkinType {
        s.parse().unwrap()
    }

    #[test]
    fn builds() {
        assert_eq!(build(ty("A3")).unwrap(), LoopyGraph::from_rows(&[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]).unwrap());
        assert_eq!(build(ty("T2")).unwrap(), LoopyGraph::from_rows(&[vec![0, 1], vec![1, 1]]).unwrap());
        let d4 = build(ty("D4")).unwrap();
        let degrees: Vec<BigInt> = (0..4).map(|i| d4.adjacency().row(i).iter().sum()).collect();
        assert_eq!(degrees.iter().filter(|d| **d == BigInt::from(3)).count(), 1);
        assert_eq!(degrees.iter().filter(|d| d.is_one()).count(), 3);
    }

    #[test]
    fn inadmissible_types_rejected() {
        assert!(DynkinType::new(Family::D, 3).is_err());
        assert!(DynkinType::new(Family::E, 9).is_err());
        assert!(DynkinType::new(Family::A, 0).is_err());
        assert_eq!(ty("D3"), ty("A3"));
        assert!("X4".parse::<DynkinType>().is_err());
    }

    #[test]
    fn coxeter_numbers() {
        assert_eq!(coxeter_number(ty("A11")), 12);
        assert_eq!(coxeter_number(ty("T5")), 11);
        assert_eq!(coxeter_number(ty("E8")), 30);
        assert_eq!(coxeter_number(ty("D7")), 12);
    }

    #[test]
    fn exponents() {
        assert_eq!(coxeter_exponents(ty("A3")).unwrap(), vec![1, 2, 3]);
        assert_eq!(coxeter_exponents(ty("E6")).unwrap(), vec![1, 4, 5, 7, 8, 11]);
        assert_eq!(coxeter_exponents(ty("T2")).unwrap(), vec![1, 3]);
        assert_eq!(coxeter_exponents(ty("E7")).unwrap(), vec![1, 5, 7, 9, 11, 13, 17]);
        assert_eq!(coxeter_exponents(ty("E8")).unwrap(), vec![1, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(coxeter_exponents(ty("D4")).unwrap(), vec![1, 3, 3, 5]);
    }

    #[test]
    fn recognition() {
        let p5 = LoopyGraph::new(IntMatrix::from_fn(5, 5, |i, j| BigInt::from(u8::from(i.abs_diff(j) == 1)))).unwrap();
        assert_eq!(recognize(&p5).unwrap(), Some(ty("A5")));
        let tri = LoopyGraph::from_rows(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        assert_eq!(recognize(&tri).unwrap(), None);
        let e7 = build(ty("E7")).unwrap().permuted(&[4, 6, 0, 2, 5, 1, 3]);
        assert_eq!(recognize(&e7).unwrap(), Some(ty("E7")));
        let split = LoopyGraph::from_rows(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert!(recognize(&split).is_err());
    }

    #[test]
    fn sylvester_positivity() {
        assert!(is_norm_lt_2(&build(ty("E8")).unwrap()));
        let tri = LoopyGraph::from_rows(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        assert!(!is_norm_lt_2(&tri));
        assert!(!is_norm_lt_2(&LoopyGraph::from_rows(&[vec![2]]).unwrap()));
    }

    #[test]
    fn enumerate_tiny() {
        let one: Vec<_> = enumerate_norm_lt_2(1).iter().map(|g| recognize(g).unwrap().unwrap()).collect();
        assert_eq!(one.len(), 2);
        assert!(one.contains(&ty("A1")) && one.contains(&ty("T1")));
    }

    #[test]
    fn spectral_coxeter_matches_catalog() {
        for name in ["A1", "A6", "D5", "E6", "E7", "T1", "T4"] {
            let t = ty(name);
            assert_eq!(spectral_coxeter_number(&build(t).unwrap()), Some(coxeter_number(t)), "{name}");
        }
    }
}
