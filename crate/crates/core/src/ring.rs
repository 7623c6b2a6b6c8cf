//! Z₊-rings and based rings given by dense structure constants.
//!
//! A ring of rank `r` has basis `b_0..b_{r-1}` with products
//! `b_i b_j = Σ_k c[i][j][k] b_k`. The unit is `Σ_{i ∈ I₀} b_i`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// A single failed axiom, located by its indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NegativeConstant { i: usize, j: usize, k: usize },
    Associativity { i: usize, j: usize, k: usize, n: usize },
    LeftUnit { j: usize, k: usize },
    RightUnit { j: usize, k: usize },
    InvolutionNotInvolutive { i: usize },
    NegativeAction { generator: usize, row: usize, col: usize },
    Compatibility { i: usize, j: usize, row: usize, col: usize },
    ModuleUnit { row: usize, col: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NegativeConstant { i, j, k } => write!(f, "negative structure constant c[{i}][{j}][{k}]"),
            Violation::Associativity { i, j, k, n } => {
                write!(f, "associativity fails: coefficient of b_{n} in (b_{i} b_{j}) b_{k} vs b_{i} (b_{j} b_{k})")
            }
            Violation::LeftUnit { j, k } => write!(f, "left unit fails at ({j},{k})"),
            Violation::RightUnit { j, k } => write!(f, "right unit fails at ({j},{k})"),
            Violation::InvolutionNotInvolutive { i } => write!(f, "involution is not involutive at {i}"),
            Violation::NegativeAction { generator, row, col } => {
                write!(f, "negative action entry M_{generator}[{row}][{col}]")
            }
            Violation::Compatibility { i, j, row, col } => {
                write!(f, "compatibility fails: (M_{i} M_{j})[{row}][{col}] != (sum_k c[{i}][{j}][k] M_k)[{row}][{col}]")
            }
            Violation::ModuleUnit { row, col } => write!(f, "unit does not act as identity at ({row},{col})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct ZPlusRing {
    rank: usize,
    labels: Vec<String>,
    constants: Vec<BigInt>,
    unit_set: Vec<usize>,
    involution: Option<Vec<usize>>,
}

impl ZPlusRing {
    /// Structural construction; axioms are checked separately by [`ZPlusRing::verify`].
    pub fn new(
        labels: Vec<String>,
        constants: Vec<Vec<Vec<BigInt>>>,
        unit_set: Vec<usize>,
        involution: Option<Vec<usize>>,
    ) -> Result<Self> {
        let rank = constants.len();
        if rank == 0 {
            return Err(Error::Dimension("ring rank must be positive".into()));
        }
        if labels.len() != rank {
            return Err(Error::Dimension(format!("{} labels for rank {rank}", labels.len())));
        }
        let mut flat = Vec::with_capacity(rank * rank * rank);
        for (i, plane) in constants.into_iter().enumerate() {
            if plane.len() != rank {
                return Err(Error::Dimension(format!("c[{i}] has {} rows, expected {rank}", plane.len())));
            }
            for (j, row) in plane.into_iter().enumerate() {
                if row.len() != rank {
                    return Err(Error::Dimension(format!("c[{i}][{j}] has length {}, expected {rank}", row.len())));
                }
                flat.extend(row);
            }
        }
        let mut unit_set = unit_set;
        unit_set.sort_unstable();
        unit_set.dedup();
        if unit_set.is_empty() || unit_set.iter().any(|&u| u >= rank) {
            return Err(Error::Dimension(format!("unit set {unit_set:?} not a nonempty subset of 0..{rank}")));
        }
        if let Some(inv) = &involution {
            check_permutation(inv, rank)?;
        }
        Ok(ZPlusRing { rank, labels, constants: flat, unit_set, involution })
    }

    /// Convenience constructor with labels `b0, b1, …`.
    pub fn from_constants(constants: Vec<Vec<Vec<BigInt>>>, unit_set: Vec<usize>) -> Result<Self> {
        let labels = (0..constants.len()).map(|i| format!("b{i}")).collect();
        Self::new(labels, constants, unit_set, None)
    }

    /// The ring of integers: rank 1, `b_0² = b_0`.
    pub fn integers() -> Self {
        Self::new(vec!["1".into()], vec![vec![vec![BigInt::one()]]], vec![0], Some(vec![0])).unwrap()
    }

    /// Group ring of a finite group given by its multiplication table.
    pub fn group_ring(table: &[Vec<usize>], identity: usize) -> Result<Self> {
        let n = table.len();
        let mut c = vec![vec![vec![BigInt::zero(); n]; n]; n];
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Dimension("multiplication table is not square".into()));
            }
            for (j, &k) in row.iter().enumerate() {
                if k >= n {
                    return Err(Error::Dimension(format!("table entry {k} out of range")));
                }
                c[i][j][k] = BigInt::one();
            }
        }
        Self::from_constants(c, vec![identity])
    }

    pub fn cyclic_group_ring(n: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::group_ring(&table, 0).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit_set(&self) -> &[usize] {
        &self.unit_set
    }

    pub fn involution(&self) -> Option<&[usize]> {
        self.involution.as_deref()
    }

    pub fn with_involution(mut self, involution: Option<Vec<usize>>) -> Result<Self> {
        if let Some(inv) = &involution {
            check_permutation(inv, self.rank)?;
        }
        self.involution = involution;
        Ok(self)
    }

    /// Coefficient of `b_k` in `b_i b_j`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.constants[(i * self.rank + j) * self.rank + k]
    }

    pub fn constants_nested(&self) -> Vec<Vec<Vec<BigInt>>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| (0..self.rank).map(|k| self.c(i, j, k).clone()).collect()).collect())
            .collect()
    }

    /// Product `b_i b_j` as a coefficient vector.
    pub fn product(&self, i: usize, j: usize) -> Vec<BigInt> {
        (0..self.rank).map(|k| self.c(i, j, k).clone()).collect()
    }

    /// Checks non-negativity, associativity and the unit axioms (and involutivity of a
    /// stored involution). An empty list means the ring is a valid Z₊-ring.
    pub fn verify(&self) -> Vec<Violation> {
        let r = self.rank;
        let mut out = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    if self.c(i, j, k).is_negative() {
                        out.push(Violation::NegativeConstant { i, j, k });
                    }
                }
            }
        }
        // (b_i b_j) b_k and b_i (b_j b_k), accumulated sparsely.
        for i in 0..r {
            for j in 0..r {
                let mut left = vec![BigInt::zero(); r * r];
                let mut right = vec![BigInt::zero(); r * r];
                for m in 0..r {
                    let cij = self.c(i, j, m);
                    if cij.is_zero() {
                        continue;
                    }
                    for k in 0..r {
                        for n in 0..r {
                            let v = self.c(m, k, n);
                            if !v.is_zero() {
                                left[k * r + n] += cij * v;
                            }
                        }
                    }
                }
                for k in 0..r {
                    for m in 0..r {
                        let cjk = self.c(j, k, m);
                        if cjk.is_zero() {
                            continue;
                        }
                        for n in 0..r {
                            let v = self.c(i, m, n);
                            if !v.is_zero() {
                                right[k * r + n] += cjk * v;
                            }
                        }
                    }
                }
                for k in 0..r {
                    for n in 0..r {
                        if left[k * r + n] != right[k * r + n] {
                            out.push(Violation::Associativity { i, j, k, n });
                        }
                    }
                }
            }
        }
        for j in 0..r {
            for k in 0..r {
                let delta = if j == k { BigInt::one() } else { BigInt::zero() };
                let left: BigInt = self.unit_set.iter().map(|&u| self.c(u, j, k)).sum();
                let right: BigInt = self.unit_set.iter().map(|&u| self.c(j, u, k)).sum();
                if left != delta {
                    out.push(Violation::LeftUnit { j, k });
                }
                if right != delta {
                    out.push(Violation::RightUnit { j, k });
                }
            }
        }
        if let Some(inv) = &self.involution {
            for (i, &j) in inv.iter().enumerate() {
                if inv[j] != i {
                    out.push(Violation::InvolutionNotInvolutive { i });
                }
            }
        }
        out
    }

    /// `τ(b_i b_j)`: the sum of the unit-set coefficients of the product.
    pub fn tau_of_product(&self, i: usize, j: usize) -> BigInt {
        self.unit_set.iter().map(|&u| self.c(i, j, u)).sum()
    }

    /// Finds the duality involution making this a based ring, if one exists.
    ///
    /// The pairing table `τ(b_i b_j)` determines the candidate: `ī` must be the unique `j`
    /// with `τ(b_i b_j) = 1`. The candidate is then checked to be an involution whose linear
    /// extension reverses products. Basedness is a property, so the answer is unique.
    pub fn find_based_structure(&self) -> Result<Option<Vec<usize>>> {
        let violations = self.verify();
        if !violations.is_empty() {
            return Err(Error::Precondition(format!(
                "not a Z+-ring ({} axiom violations, first: {})",
                violations.len(),
                violations[0]
            )));
        }
        let r = self.rank;
        let mut candidate = Vec::with_capacity(r);
        for i in 0..r {
            let mut dual = None;
            for j in 0..r {
                let t = self.tau_of_product(i, j);
                if t.is_one() {
                    if dual.is_some() {
                        return Ok(None);
                    }
                    dual = Some(j);
                } else if !t.is_zero() {
                    return Ok(None);
                }
            }
            match dual {
                Some(j) => candidate.push(j),
                None => return Ok(None),
            }
        }
        Ok(self.is_anti_involution(&candidate).then_some(candidate))
    }

    /// Whether `perm` satisfies the based-ring conditions: it is an involution, the pairing
    /// `τ(b_i b_j)` is `δ_{i, j̄}`, and `c[i][j][k] = c[j̄][ī][k̄]`.
    pub fn is_anti_involution(&self, perm: &[usize]) -> bool {
        let r = self.rank;
        if perm.len() != r || check_permutation(perm, r).is_err() {
            return false;
        }
        if (0..r).any(|i| perm[perm[i]] != i) {
            return false;
        }
        for i in 0..r {
            for j in 0..r {
                let expected = if i == perm[j] { BigInt::one() } else { BigInt::zero() };
                if self.tau_of_product(i, j) != expected {
                    return false;
                }
                for k in 0..r {
                    if self.c(i, j, k) != self.c(perm[j], perm[i], perm[k]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Left-multiplication matrices: `(N_i)[k][j] = c[i][j][k]`.
    pub fn fusion_matrices(&self) -> Vec<IntMatrix> {
        (0..self.rank)
            .map(|i| IntMatrix::from_fn(self.rank, self.rank, |k, j| self.c(i, j, k).clone()))
            .collect()
    }

    /// Largest coefficient of `b²` for `b = Σ_i b_i`; the finiteness bound on the minimal
    /// out-degree of an irreducible Z₊-module.
    pub fn prop1_bound(&self) -> BigInt {
        let r = self.rank;
        (0..r)
            .map(|k| {
                let mut s = BigInt::zero();
                for i in 0..r {
                    for j in 0..r {
                        s += self.c(i, j, k);
                    }
                }
                s
            })
            .max()
            .unwrap_or_default()
    }
}

impl fmt::Debug for ZPlusRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ZPlusRing")
            .field("rank", &self.rank)
            .field("labels", &self.labels)
            .field("unit_set", &self.unit_set)
            .field("involution", &self.involution)
            .finish_non_exhaustive()
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::Dimension(format!("permutation of length {} for rank {n}", perm.len())));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::Dimension(format!("{perm:?} is not a permutation of 0..{n}")));
        }
        seen[p] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::{fusion_ring, Sl2Level};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rank2(c11: [i64; 2], c10: [i64; 2]) -> ZPlusRing {
        let c = vec![
            vec![vec![big(1), big(0)], vec![big(0), big(1)]],
            vec![c10.iter().map(|&x| big(x)).collect(), c11.iter().map(|&x| big(x)).collect()],
        ];
        ZPlusRing::from_constants(c, vec![0]).unwrap()
    }

    #[test]
    fn integers_are_a_based_ring() {
        let z = ZPlusRing::integers();
        assert!(z.verify().is_empty());
        assert_eq!(z.find_based_structure().unwrap(), Some(vec![0]));
        assert_eq!(z.prop1_bound(), big(1));
    }

    #[test]
    fn level_two_ring_is_valid_and_self_dual() {
        let ring = fusion_ring(Sl2Level::new(2).unwrap());
        assert!(ring.verify().is_empty());
        assert_eq!(ring.find_based_structure().unwrap(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn cyclic_group_ring_dual_is_inverse() {
        let ring = ZPlusRing::cyclic_group_ring(3);
        assert!(ring.verify().is_empty());
        assert_eq!(ring.find_based_structure().unwrap(), Some(vec![0, 2, 1]));
    }

    #[test]
    fn broken_unit_is_reported() {
        // b1·b0 = 0 instead of b1.
        let ring = rank2([1, 0], [0, 0]);
        let report = ring.verify();
        assert!(report.iter().any(|v| matches!(v, Violation::RightUnit { .. })));
    }

    #[test]
    fn missing_dual_gives_none() {
        // b1 b1 = 0: nothing pairs with b1.
        let c = vec![
            vec![vec![big(1), big(0)], vec![big(0), big(1)]],
            vec![vec![big(0), big(1)], vec![big(0), big(0)]],
        ];
        let ring = ZPlusRing::from_constants(c, vec![0]).unwrap();
        assert!(ring.verify().is_empty());
        assert_eq!(ring.find_based_structure().unwrap(), None);
    }

    #[test]
    fn invalid_ring_rejected_before_search() {
        let ring = rank2([1, 0], [0, 0]);
        assert!(matches!(ring.find_based_structure(), Err(Error::Precondition(_))));
    }

    #[test]
    fn dimension_errors_are_structural() {
        let c = vec![vec![vec![big(1)], vec![big(0)]]];
        assert!(matches!(ZPlusRing::from_constants(c, vec![0]), Err(Error::Dimension(_))));
        assert!(matches!(
            ZPlusRing::from_constants(vec![vec![vec![big(1)]]], vec![3]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn negative_constant_reported() {
        let ring = rank2([-1, 0], [0, 1]);
        assert!(ring.verify().contains(&Violation::NegativeConstant { i: 1, j: 1, k: 0 }));
    }

    #[test]
    fn fusion_matrix_of_unit_is_identity() {
        let ring = ZPlusRing::cyclic_group_ring(4);
        assert_eq!(ring.fusion_matrices()[0], IntMatrix::identity(4));
    }

    #[test]
    fn prop1_bounds_for_small_levels() {
        assert_eq!(fusion_ring(Sl2Level::new(1).unwrap()).prop1_bound(), big(2));
        assert_eq!(fusion_ring(Sl2Level::new(2).unwrap()).prop1_bound(), big(4));
    }
}
