//! Modular invariants of the sl(2) level-`l` modular data: the integer commutant lattice,
//! bounded enumeration of physical invariants, and the trace/exponent cross-checks against
//! NIM-reps.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::lattice::{hermite_normal_form, integer_kernel, pivot, RowSpace};
use crate::matrix::IntMatrix;
use crate::module::ZPlusModule;
use crate::sl2::{fusion_ring, modular_data, module_exponents, ModularData, Sl2Level};

pub const DEFAULT_ENTRY_BOUND: u32 = 4;
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ModularInvariant {
    level: Sl2Level,
    z: IntMatrix,
}

impl ModularInvariant {
    /// Checks `Z ≥ 0`, `Z₀₀ = 1` and exact commutation with `S` and `T`.
    pub fn new(level: Sl2Level, z: IntMatrix) -> Result<Self> {
        let r = level.rank();
        if z.rows() != r || z.cols() != r {
            return Err(Error::Dimension(format!("Z must be {r}x{r} at level {}", level.l())));
        }
        if !z.is_nonnegative() {
            return Err(Error::Precondition("Z has negative entries".into()));
        }
        if !z.get(0, 0).is_one() {
            return Err(Error::Precondition("Z[0][0] must be 1".into()));
        }
        if !commutes_with_modular_data(&modular_data(level), &z) {
            return Err(Error::Precondition("Z does not commute with S and T".into()));
        }
        Ok(ModularInvariant { level, z })
    }

    pub fn level(&self) -> Sl2Level {
        self.level
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.z
    }

    pub fn trace(&self) -> BigInt {
        self.z.trace()
    }

    /// `Σ Z_{λμ}²`.
    pub fn square_sum(&self) -> BigInt {
        self.z.entries().map(|x| x * x).sum()
    }
}

/// Direct check of `ŜZ = ZŜ` in the cyclotomic field plus the `T` zero pattern.
pub fn commutes_with_modular_data(md: &ModularData, z: &IntMatrix) -> bool {
    let r = md.t_class.len();
    for i in 0..r {
        for j in 0..r {
            if !z.get(i, j).is_zero() && !md.t_compatible(i, j) {
                return false;
            }
        }
    }
    for a in 0..r {
        for b in 0..r {
            let mut acc = CyclotomicNumber::zero();
            for k in 0..r {
                let zkb = z.get(k, b);
                if !zkb.is_zero() {
                    acc = &acc + &md.s_hat[a][k].scale(&int_q(zkb));
                }
                let zak = z.get(a, k);
                if !zak.is_zero() {
                    acc = &acc - &md.s_hat[k][b].scale(&int_q(zak));
                }
            }
            if !acc.is_zero() {
                return false;
            }
        }
    }
    true
}

fn int_q(x: &BigInt) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(x.clone())
}

/// Integer matrices commuting with `Ŝ` and `T`, as a lattice in the `T`-allowed positions.
#[derive(Clone, Debug)]
pub struct CommutantLattice {
    pub level: Sl2Level,
    /// Matrix positions carrying coordinates; all other entries are forced to zero by `T`.
    pub positions: Vec<(usize, usize)>,
    /// Hermite-normal-form basis, one coordinate vector per generator.
    pub basis: Vec<Vec<BigInt>>,
}

impl CommutantLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn to_matrix(&self, coords: &[BigInt]) -> IntMatrix {
        let r = self.level.rank();
        let mut z = IntMatrix::zeros(r, r);
        for (&(i, j), v) in self.positions.iter().zip(coords) {
            z.set(i, j, v.clone());
        }
        z
    }

    pub fn basis_matrices(&self) -> Vec<IntMatrix> {
        self.basis.iter().map(|b| self.to_matrix(b)).collect()
    }
}

/// Expands `ŜZ − ZŜ` in the power basis of `Q(ζ_{2h})`; each coordinate is one integer linear
/// equation in the `T`-allowed entries. The solution lattice is the saturated integer kernel.
pub fn commutant_lattice(level: Sl2Level) -> CommutantLattice {
    let md = modular_data(level);
    let r = level.rank();
    let positions: Vec<(usize, usize)> =
        (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).filter(|&(i, j)| md.t_compatible(i, j)).collect();
    let index = |i: usize, j: usize| positions.iter().position(|&p| p == (i, j));
    let ncols = positions.len();
    let dim = md.s_hat[0][0].coords().len();
    let mut rows = RowSpace::new(ncols);
    for a in 0..r {
        for b in 0..r {
            let mut eq: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); ncols]; dim];
            for k in 0..r {
                if let Some(c) = index(k, b) {
                    add_coords(&mut eq, c, &md.s_hat[a][k], 1);
                }
                if let Some(c) = index(a, k) {
                    add_coords(&mut eq, c, &md.s_hat[k][b], -1);
                }
            }
            for row in eq {
                if row.iter().any(|x| !x.is_zero()) {
                    rows.insert(row);
                }
            }
        }
    }
    let equations: Vec<Vec<BigInt>> = rows.rows().cloned().collect();
    let kernel = integer_kernel(equations.iter(), ncols);
    CommutantLattice { level, positions, basis: hermite_normal_form(kernel) }
}

fn add_coords(eq: &mut [Vec<BigInt>], col: usize, x: &CyclotomicNumber, sign: i64) {
    for (t, q) in x.coords().iter().enumerate() {
        assert!(q.is_integer(), "modular data entries have integral power-basis coordinates");
        eq[t][col] += q.to_integer() * sign;
    }
}

/// All invariants with entries in `[0, entry_bound]` and `Z₀₀ = 1`, sorted.
pub fn enumerate_invariants(level: Sl2Level, entry_bound: u32) -> Result<Vec<ModularInvariant>> {
    enumerate_invariants_with(&commutant_lattice(level), entry_bound, DEFAULT_NODE_BUDGET, 1)
}

/// Bounded search over lattice coordinates. Because the basis is in echelon form, the entry at
/// each pivot is fixed once the coordinates up to that generator are chosen, which bounds every
/// coordinate; entries strictly between consecutive pivots are checked as soon as they are
/// determined.
pub fn enumerate_invariants_with(
    lattice: &CommutantLattice,
    entry_bound: u32,
    node_budget: u64,
    jobs: usize,
) -> Result<Vec<ModularInvariant>> {
    if entry_bound == 0 {
        return Err(Error::Precondition("entry bound must be at least 1".into()));
    }
    let search = CoordinateSearch::new(lattice, entry_bound, node_budget);
    let prefixes = search.prefixes(2.min(lattice.rank()))?;
    let run = |prefix: &Vec<i64>| search.complete(prefix.clone());
    let results: Vec<Result<Vec<Vec<i64>>>> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?;
        pool.install(|| prefixes.par_iter().map(run).collect())
    } else {
        prefixes.iter().map(run).collect()
    };
    let mut out = Vec::new();
    for found in results {
        for coords in found? {
            let big: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
            let z = lattice.to_matrix(&search.combine(&big));
            out.push(ModularInvariant { level: lattice.level, z });
        }
    }
    out.sort();
    Ok(out)
}

struct CoordinateSearch<'a> {
    lattice: &'a CommutantLattice,
    bound: BigInt,
    pivots: Vec<usize>,
    unit_col: Option<usize>,
    budget: u64,
    nodes: AtomicU64,
}

impl<'a> CoordinateSearch<'a> {
    fn new(lattice: &'a CommutantLattice, bound: u32, budget: u64) -> Self {
        let pivots = lattice.basis.iter().map(|b| pivot(b).expect("nonzero basis row")).collect();
        let unit_col = lattice.positions.iter().position(|&p| p == (0, 0));
        CoordinateSearch { lattice, bound: BigInt::from(bound), pivots, unit_col, budget, nodes: AtomicU64::new(0) }
    }

    fn combine(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let n = self.lattice.positions.len();
        let mut v = vec![BigInt::zero(); n];
        for (c, row) in coords.iter().zip(&self.lattice.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(row) {
                *x += c * y;
            }
        }
        v
    }

    fn entry_ok(&self, col: usize, value: &BigInt) -> bool {
        if Some(col) == self.unit_col {
            return value.is_one();
        }
        !value.is_negative() && value <= &self.bound
    }

    /// Admissible values of coordinate `t` given the partial sum vector.
    fn candidates(&self, t: usize, partial: &[BigInt]) -> Vec<i64> {
        let col = self.pivots[t];
        let piv = &self.lattice.basis[t][col];
        let (lo, hi) = if Some(col) == self.unit_col {
            (BigInt::one(), BigInt::one())
        } else {
            (BigInt::zero(), self.bound.clone())
        };
        let from = num_integer::Integer::div_ceil(&(&lo - &partial[col]), piv);
        let to = num_integer::Integer::div_floor(&(&hi - &partial[col]), piv);
        let mut out = Vec::new();
        let mut c = from;
        while c <= to {
            out.push(c.to_i64().expect("coordinate fits in i64"));
            c += 1;
        }
        out
    }

    /// Whether the columns fixed once coordinate `t` is chosen are in range.
    fn settled_ok(&self, t: usize, partial: &[BigInt]) -> bool {
        let start = self.pivots[t];
        let end = self.pivots.get(t + 1).copied().unwrap_or(partial.len());
        (start..end).all(|col| self.entry_ok(col, &partial[col]))
    }

    fn tick(&self) -> Result<()> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget {
            Err(Error::BudgetExceeded { nodes: n })
        } else {
            Ok(())
        }
    }

    fn partial(&self, coords: &[i64]) -> Vec<BigInt> {
        let big: Vec<BigInt> = coords.iter().map(|&c| BigInt::from(c)).collect();
        self.combine(&big)
    }

    fn leading_ok(&self, partial: &[BigInt]) -> bool {
        let first = self.pivots.first().copied().unwrap_or(partial.len());
        (0..first).all(|col| self.entry_ok(col, &partial[col]))
    }

    fn prefixes(&self, depth: usize) -> Result<Vec<Vec<i64>>> {
        let mut level = vec![Vec::new()];
        if !self.leading_ok(&self.partial(&[])) {
            return Ok(Vec::new());
        }
        for t in 0..depth {
            let mut next = Vec::new();
            for prefix in &level {
                let partial = self.partial(prefix);
                for c in self.candidates(t, &partial) {
                    self.tick()?;
                    let mut p = prefix.clone();
                    p.push(c);
                    if self.settled_ok(t, &self.partial(&p)) {
                        next.push(p);
                    }
                }
            }
            level = next;
        }
        Ok(level)
    }

    fn complete(&self, prefix: Vec<i64>) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        let partial = self.partial(&prefix);
        self.dfs(prefix, partial, &mut out)?;
        Ok(out)
    }

    fn dfs(&self, coords: Vec<i64>, partial: Vec<BigInt>, out: &mut Vec<Vec<i64>>) -> Result<()> {
        let t = coords.len();
        if t == self.lattice.rank() {
            out.push(coords);
            return Ok(());
        }
        for c in self.candidates(t, &partial) {
            self.tick()?;
            let mut next = partial.clone();
            if c != 0 {
                let cb = BigInt::from(c);
                for (x, y) in next.iter_mut().zip(&self.lattice.basis[t]) {
                    *x += &cb * y;
                }
            }
            if self.settled_ok(t, &next) {
                let mut nc = coords.clone();
                nc.push(c);
                self.dfs(nc, next, out)?;
            }
        }
        Ok(())
    }
}

/// Multiset containing `λ` with multiplicity `Z_{λλ}`.
pub fn invariant_exponents(inv: &ModularInvariant) -> Vec<u32> {
    let mut out = Vec::new();
    for l in 0..inv.z.rows() {
        let m = inv.z.get(l, l).to_usize().expect("diagonal entry fits");
        out.extend(std::iter::repeat_n(l as u32, m));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimReport {
    pub trace: BigInt,
    pub module_rank: usize,
    pub trace_ok: bool,
    pub exponents_ok: bool,
    /// `Σ Z²`, the predicted number of simple objects of the dual category; reported only.
    pub cstar_simple_count: BigInt,
}

/// Compares `Tr Z` with the module rank and the two exponent multisets.
pub fn check_claims(inv: &ModularInvariant, module: &ZPlusModule) -> Result<ClaimReport> {
    if module.ring_rank() != inv.level.rank() {
        return Err(Error::Precondition(format!(
            "module is over a ring of rank {}, invariant is at level {}",
            module.ring_rank(),
            inv.level.l()
        )));
    }
    let trace = inv.trace();
    let trace_ok = trace == BigInt::from(module.module_rank());
    let exponents_ok = match module_exponents(module, inv.level) {
        Ok(e) => e == invariant_exponents(inv),
        Err(_) => false,
    };
    Ok(ClaimReport {
        trace,
        module_rank: module.module_rank(),
        trace_ok,
        exponents_ok,
        cstar_simple_count: inv.square_sum(),
    })
}

/// `Z_{λμ} = δ_{λ, μ̄}` from the fusion ring's duality; the flag records whether it equals
/// the diagonal invariant.
pub fn charge_conjugation(level: Sl2Level) -> Result<(ModularInvariant, bool)> {
    let ring = fusion_ring(level);
    let dual = ring
        .find_based_structure()?
        .ok_or_else(|| Error::Precondition("fusion ring is not based".into()))?;
    let r = level.rank();
    let z = IntMatrix::from_fn(r, r, |l, m| BigInt::from(u8::from(l == dual[m])));
    let diagonal = z == IntMatrix::identity(r);
    Ok((ModularInvariant::new(level, z)?, diagonal))
}

/// Human-readable block form: connected groups of labels whose block is constant become
/// `c|χa+χb+…|²`, everything else is listed term by term. Best effort only.
pub fn describe_blocks(inv: &ModularInvariant) -> String {
    let z = &inv.z;
    let n = z.rows();
    let mut comp = vec![usize::MAX; n];
    let mut parts = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX || (0..n).all(|j| z.get(start, j).is_zero() && z.get(j, start).is_zero()) {
            continue;
        }
        let mut members = vec![start];
        comp[start] = start;
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            for w in 0..n {
                if comp[w] == usize::MAX && (!z.get(v, w).is_zero() || !z.get(w, v).is_zero()) {
                    comp[w] = start;
                    members.push(w);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        let c = z.get(members[0], members[0]).clone();
        let uniform = !c.is_zero() && members.iter().all(|&a| members.iter().all(|&b| z.get(a, b) == &c));
        if uniform {
            let sum: Vec<String> = members.iter().map(|m| format!("χ{m}")).collect();
            let coef = if c.is_one() { String::new() } else { c.to_string() };
            parts.push(format!("{coef}|{}|^2", sum.join("+")));
        } else {
            for &a in &members {
                for &b in &members {
                    let v = z.get(a, b);
                    if !v.is_zero() {
                        let coef = if v.is_one() { String::new() } else { v.to_string() };
                        parts.push(format!("{coef}χ{a}χ̄{b}"));
                    }
                }
            }
        }
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(l: u32) -> Sl2Level {
        Sl2Level::new(l).unwrap()
    }

    #[test]
    fn level_one_lattice_is_identity() {
        let lat = commutant_lattice(lv(1));
        assert_eq!(lat.rank(), 1);
        assert_eq!(lat.basis_matrices(), vec![IntMatrix::identity(2)]);
    }

    #[test]
    fn lattice_basis_commutes() {
        for l in [4, 6, 10] {
            let md = modular_data(lv(l));
            for b in commutant_lattice(lv(l)).basis_matrices() {
                assert!(commutes_with_modular_data(&md, &b));
            }
        }
    }

    #[test]
    fn level_four_invariants() {
        let invs = enumerate_invariants(lv(4), 4).unwrap();
        assert_eq!(invs.len(), 2);
        assert!(invs.iter().any(|z| z.matrix() == &IntMatrix::identity(5)));
        let d4 = invs.iter().find(|z| z.matrix() != &IntMatrix::identity(5)).unwrap();
        assert_eq!(invariant_exponents(d4), vec![0, 2, 2, 4]);
    }

    #[test]
    fn odd_level_has_only_diagonal() {
        let invs = enumerate_invariants(lv(3), 4).unwrap();
        assert_eq!(invs.len(), 1);
        assert_eq!(invariant_exponents(&invs[0]), vec![0, 1, 2, 3]);
    }

    #[test]
    fn rejects_non_commuting_matrix() {
        let mut z = IntMatrix::identity(5);
        z.set(1, 1, BigInt::from(2));
        assert!(ModularInvariant::new(lv(4), z).is_err());
    }

    #[test]
    fn charge_conjugation_is_diagonal_for_sl2() {
        let (inv, diag) = charge_conjugation(lv(5)).unwrap();
        assert!(diag);
        assert_eq!(inv.matrix(), &IntMatrix::identity(6));
    }

    #[test]
    fn budget_is_enforced() {
        let lat = commutant_lattice(lv(10));
        assert!(matches!(enumerate_invariants_with(&lat, 4, 3, 1), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn block_description() {
        let invs = enumerate_invariants(lv(4), 4).unwrap();
        let d4 = invs.iter().find(|z| z.matrix() != &IntMatrix::identity(5)).unwrap();
        assert_eq!(describe_blocks(d4), "|χ0+χ4|^2 + 2|χ2|^2");
    }
}
