//! Z₊-modules and based modules (NIM-reps) over a Z₊-ring.
//!
//! The action of `b_i` is stored as a matrix `M_i` with `(M_i)[k][j] = d[i][j][k]`, i.e.
//! column `j` holds the expansion of `b_i m_j`.

use std::collections::VecDeque;
use std::ops::Deref;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::canon;
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::ring::{Violation, ZPlusRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZPlusModule {
    ring_rank: usize,
    module_rank: usize,
    action: Vec<IntMatrix>,
}

impl ZPlusModule {
    pub fn new(action: Vec<IntMatrix>) -> Result<Self> {
        let ring_rank = action.len();
        if ring_rank == 0 {
            return Err(Error::Dimension("action needs one matrix per ring basis element".into()));
        }
        let module_rank = action[0].rows();
        for (i, m) in action.iter().enumerate() {
            if m.rows() != module_rank || m.cols() != module_rank {
                return Err(Error::Dimension(format!(
                    "M_{i} is {}x{}, expected {module_rank}x{module_rank}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(ZPlusModule { ring_rank, module_rank, action })
    }

    /// The rank-0 module.
    pub fn zero(ring_rank: usize) -> Self {
        ZPlusModule { ring_rank, module_rank: 0, action: vec![IntMatrix::zeros(0, 0); ring_rank] }
    }

    /// The ring acting on itself by left multiplication.
    pub fn regular(ring: &ZPlusRing) -> Self {
        Self::new(ring.fusion_matrices()).expect("fusion matrices are square")
    }

    pub fn ring_rank(&self) -> usize {
        self.ring_rank
    }

    pub fn module_rank(&self) -> usize {
        self.module_rank
    }

    pub fn action(&self) -> &[IntMatrix] {
        &self.action
    }

    pub fn matrix(&self, i: usize) -> &IntMatrix {
        &self.action[i]
    }

    /// `d[i][j][k]`: coefficient of `m_k` in `b_i m_j`.
    pub fn d(&self, i: usize, j: usize, k: usize) -> &BigInt {
        self.action[i].get(k, j)
    }

    /// Same module with basis vector `v` moved to position `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        ZPlusModule {
            ring_rank: self.ring_rank,
            module_rank: self.module_rank,
            action: self.action.iter().map(|m| m.permuted(perm)).collect(),
        }
    }

    fn support_edges(&self) -> Vec<Vec<usize>> {
        let n = self.module_rank;
        let mut adj = vec![Vec::new(); n];
        for j in 0..n {
            for k in 0..n {
                if self.action.iter().any(|m| m.get(k, j).is_positive()) {
                    adj[j].push(k);
                }
            }
        }
        adj
    }
}

/// A Z₊-module whose action satisfies `M_ī = M_iᵀ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedModule(ZPlusModule);

impl BasedModule {
    /// Checks validity over `ring` and the based condition.
    pub fn new(ring: &ZPlusRing, module: ZPlusModule) -> Result<Self> {
        let report = verify_module(ring, &module)?;
        if let Some(v) = report.first() {
            return Err(Error::Precondition(format!("module is not a Z+-module: {v}")));
        }
        if !is_based(ring, &module)? {
            return Err(Error::Precondition("module is not based".into()));
        }
        Ok(BasedModule(module))
    }

    pub(crate) fn new_unchecked(module: ZPlusModule) -> Self {
        BasedModule(module)
    }

    pub fn into_inner(self) -> ZPlusModule {
        self.0
    }
}

impl Deref for BasedModule {
    type Target = ZPlusModule;
    fn deref(&self) -> &ZPlusModule {
        &self.0
    }
}

/// Compatibility `M_i M_j = Σ_k c[i][j][k] M_k`, non-negativity and `Σ_{i∈I₀} M_i = I`.
pub fn verify_module(ring: &ZPlusRing, module: &ZPlusModule) -> Result<Vec<Violation>> {
    if ring.rank() != module.ring_rank() {
        return Err(Error::Dimension(format!(
            "module has {} action matrices, ring has rank {}",
            module.ring_rank(),
            ring.rank()
        )));
    }
    let r = ring.rank();
    let n = module.module_rank();
    let mut out = Vec::new();
    for (generator, m) in module.action().iter().enumerate() {
        if let Some((row, col)) = m.first_negative() {
            out.push(Violation::NegativeAction { generator, row, col });
        }
    }
    for i in 0..r {
        for j in 0..r {
            let lhs = module.matrix(i) * module.matrix(j);
            let mut rhs = IntMatrix::zeros(n, n);
            for k in 0..r {
                let c = ring.c(i, j, k);
                if !c.is_zero() {
                    rhs = &rhs + &module.matrix(k).scale(c);
                }
            }
            for row in 0..n {
                for col in 0..n {
                    if lhs.get(row, col) != rhs.get(row, col) {
                        out.push(Violation::Compatibility { i, j, row, col });
                    }
                }
            }
        }
    }
    let mut unit = IntMatrix::zeros(n, n);
    for &u in ring.unit_set() {
        unit = &unit + module.matrix(u);
    }
    for row in 0..n {
        for col in 0..n {
            let expected = if row == col { BigInt::one() } else { BigInt::zero() };
            if unit.get(row, col) != &expected {
                out.push(Violation::ModuleUnit { row, col });
            }
        }
    }
    Ok(out)
}

/// `M_ī = M_iᵀ` for all `i`, using the ring's duality involution.
pub fn is_based(ring: &ZPlusRing, module: &ZPlusModule) -> Result<bool> {
    let inv = ring
        .involution()
        .ok_or_else(|| Error::Precondition("ring has no duality involution".into()))?;
    if inv.len() != module.ring_rank() {
        return Err(Error::Dimension("involution length differs from module action".into()));
    }
    Ok((0..inv.len()).all(|i| module.matrix(inv[i]) == &module.matrix(i).transpose()))
}

/// Connectivity of the undirected support graph.
pub fn is_indecomposable(module: &ZPlusModule) -> bool {
    let n = module.module_rank();
    if n == 0 {
        return false;
    }
    let directed = module.support_edges();
    let mut adj = vec![Vec::new(); n];
    for (j, targets) in directed.iter().enumerate() {
        for &k in targets {
            adj[j].push(k);
            adj[k].push(j);
        }
    }
    reachable(&adj, 0).iter().all(|&r| r)
}

/// No proper nonempty action-closed subset of the basis, i.e. the directed support graph is
/// strongly connected.
pub fn is_irreducible(module: &ZPlusModule) -> bool {
    let n = module.module_rank();
    if n == 0 {
        return false;
    }
    let forward = module.support_edges();
    let mut backward = vec![Vec::new(); n];
    for (j, targets) in forward.iter().enumerate() {
        for &k in targets {
            backward[k].push(j);
        }
    }
    reachable(&forward, 0).iter().all(|&r| r) && reachable(&backward, 0).iter().all(|&r| r)
}

/// Whether `subset` (as indicator) spans a Z₊-submodule.
pub fn is_action_closed(module: &ZPlusModule, subset: &[bool]) -> bool {
    let n = module.module_rank();
    module.action().iter().all(|m| {
        (0..n).filter(|&j| subset[j]).all(|j| (0..n).all(|k| subset[k] || m.get(k, j).is_zero()))
    })
}

fn reachable(adj: &[Vec<usize>], start: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Returns a basis bijection `φ` with `φ(m¹_a) = m²_{φ[a]}` intertwining the actions, if any.
pub fn are_equivalent(m1: &ZPlusModule, m2: &ZPlusModule) -> Option<Vec<usize>> {
    if m1.ring_rank() != m2.ring_rank() || m1.module_rank() != m2.module_rank() {
        return None;
    }
    if m1.module_rank() == 0 {
        return Some(Vec::new());
    }
    canon::isomorphism(m1.action(), m2.action())
}

/// Canonical representative of the equivalence class.
pub fn canonical_module(module: &ZPlusModule) -> ZPlusModule {
    if module.module_rank() == 0 {
        return module.clone();
    }
    let c = canon::canonical_form(module.action());
    ZPlusModule { ring_rank: module.ring_rank, module_rank: module.module_rank, action: c.matrices }
}

pub fn direct_sum(m1: &ZPlusModule, m2: &ZPlusModule) -> Result<ZPlusModule> {
    if m1.ring_rank() != m2.ring_rank() {
        return Err(Error::Dimension("direct sum of modules over rings of different rank".into()));
    }
    Ok(ZPlusModule {
        ring_rank: m1.ring_rank,
        module_rank: m1.module_rank + m2.module_rank,
        action: m1.action.iter().zip(&m2.action).map(|(a, b)| a.block_diag(b)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{build, DynkinType, Family};
    use crate::sl2::{fusion_ring, nimrep_from_graph, Sl2Level};

    fn level(l: u32) -> Sl2Level {
        Sl2Level::new(l).unwrap()
    }

    fn graph_module(family: Family, rank: usize, l: u32) -> BasedModule {
        let g = build(DynkinType::new(family, rank).unwrap()).unwrap();
        nimrep_from_graph(&g, level(l)).unwrap()
    }

    #[test]
    fn regular_module_is_valid_based_and_irreducible() {
        let ring = fusion_ring(level(2));
        let reg = ZPlusModule::regular(&ring);
        assert!(verify_module(&ring, &reg).unwrap().is_empty());
        assert!(is_based(&ring, &reg).unwrap());
        assert!(is_irreducible(&reg));
    }

    #[test]
    fn perturbed_module_fails_compatibility() {
        let ring = fusion_ring(level(3));
        let m = graph_module(Family::A, 4, 3);
        assert!(verify_module(&ring, &m).unwrap().is_empty());
        let mut action = m.action().to_vec();
        *action[1].entry_mut(0, 0) += 1;
        let bad = ZPlusModule::new(action).unwrap();
        let report = verify_module(&ring, &bad).unwrap();
        assert!(report.iter().any(|v| matches!(v, Violation::Compatibility { .. })));
    }

    #[test]
    fn dimension_mismatch_is_structural() {
        let ring = fusion_ring(level(3));
        let m = graph_module(Family::A, 3, 2);
        assert!(matches!(verify_module(&ring, &m), Err(Error::Dimension(_))));
    }

    #[test]
    fn tadpole_module_is_based() {
        let ring = fusion_ring(level(5));
        let m = graph_module(Family::T, 3, 5);
        assert!(is_based(&ring, &m).unwrap());
    }

    #[test]
    fn wrong_pairing_is_not_based() {
        // Z/3 group ring: 1̄ = 2, but M_2 is not the transpose of M_1.
        let ring = ZPlusRing::cyclic_group_ring(3);
        let inv = ring.find_based_structure().unwrap();
        let ring = ring.with_involution(inv).unwrap();
        let m1 = IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]]);
        let action = vec![IntMatrix::identity(2), m1.clone(), m1];
        let module = ZPlusModule::new(action).unwrap();
        assert!(!is_based(&ring, &module).unwrap());
    }

    #[test]
    fn based_check_needs_involution() {
        let ring = ZPlusRing::cyclic_group_ring(2);
        let module = ZPlusModule::regular(&ring);
        assert!(matches!(is_based(&ring, &module), Err(Error::Precondition(_))));
    }

    #[test]
    fn decomposition_and_irreducibility() {
        assert!(is_indecomposable(&graph_module(Family::D, 5, 6)));
        let a2 = graph_module(Family::A, 2, 1);
        let sum = direct_sum(&a2, &a2).unwrap();
        assert_eq!(sum.module_rank(), 4);
        assert_eq!(
            sum.matrix(1),
            &IntMatrix::from_rows(&[vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]])
        );
        assert!(!is_indecomposable(&sum));
        let t1 = graph_module(Family::T, 1, 1);
        assert!(is_indecomposable(&t1));
        assert_eq!(direct_sum(&t1, &ZPlusModule::zero(2)).unwrap(), *t1);
    }

    #[test]
    fn identity_action_over_integers_is_reducible() {
        let m = ZPlusModule::new(vec![IntMatrix::identity(2)]).unwrap();
        assert!(verify_module(&ZPlusRing::integers(), &m).unwrap().is_empty());
        assert!(!is_irreducible(&m));
    }

    #[test]
    fn equivalence_under_reversal() {
        let m = graph_module(Family::E, 6, 10);
        let rev: Vec<usize> = (0..6).rev().collect();
        let p = m.permuted(&rev);
        let phi = are_equivalent(&m, &p).unwrap();
        assert_eq!(m.permuted(&phi), p);
        let a4 = graph_module(Family::A, 4, 3);
        let t2 = graph_module(Family::T, 2, 3);
        assert!(are_equivalent(&a4, &t2).is_none());
    }

    #[test]
    fn complement_of_closed_subset_is_closed_for_based() {
        let m = direct_sum(&graph_module(Family::A, 3, 2), &graph_module(Family::A, 3, 2)).unwrap();
        let subset = [true, true, true, false, false, false];
        assert!(is_action_closed(&m, &subset));
        let complement: Vec<bool> = subset.iter().map(|b| !b).collect();
        assert!(is_action_closed(&m, &complement));
    }
}
