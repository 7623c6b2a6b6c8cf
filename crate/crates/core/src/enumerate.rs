//! Bounded exhaustive search for irreducible Z₊-modules over a finite-rank Z₊-ring.
//!
//! One pass per module rank `n`. The action matrices are filled in principal-growth order: all
//! positions `(a, b)` with `max(a, b) = s` come after those with `max(a, b) < s`. Every equation
//! `(M_i M_j)[x][y] = Σ_k c_ij^k M_k[x][y]` is checked two-sided against the interval of values
//! its unassigned entries still allow.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::module::{canonical_module, is_irreducible, ZPlusModule};
use crate::ring::ZPlusRing;

pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_rank: usize,
    pub max_entry: u32,
}

impl SearchBounds {
    /// Both bounds set to [`ZPlusRing::prop1_bound`].
    pub fn from_ring(ring: &ZPlusRing) -> Result<Self> {
        let n = ring
            .prop1_bound()
            .to_u32()
            .ok_or_else(|| Error::Overflow("search bound does not fit in u32".into()))?;
        Ok(SearchBounds { max_rank: n as usize, max_entry: n })
    }
}

pub fn enumerate_irreducible_modules(ring: &ZPlusRing, max_rank: usize, max_entry: u32) -> Result<Vec<ZPlusModule>> {
    enumerate_with(ring, SearchBounds { max_rank, max_entry }, DEFAULT_NODE_BUDGET, 1)
}

/// Pairwise inequivalent irreducible modules within `bounds`, as canonical forms in sorted
/// order. The output does not depend on `jobs`.
pub fn enumerate_with(ring: &ZPlusRing, bounds: SearchBounds, node_budget: u64, jobs: usize) -> Result<Vec<ZPlusModule>> {
    if bounds.max_rank == 0 || bounds.max_entry == 0 {
        return Err(Error::Precondition("search bounds must be at least 1".into()));
    }
    let nodes = AtomicU64::new(0);
    let pool = if jobs > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::Precondition(e.to_string()))?,
        )
    } else {
        None
    };
    let mut all = Vec::new();
    for n in 1..=bounds.max_rank {
        let search = Search::new(ring, n, bounds.max_entry, node_budget, &nodes)?;
        let prefixes = search.prefixes()?;
        let run = |state: &State| -> Result<Vec<ZPlusModule>> {
            let mut st = state.clone();
            let mut found = Vec::new();
            search.dfs(&mut st, &mut found)?;
            Ok(found)
        };
        let parts: Vec<Result<Vec<ZPlusModule>>> = match &pool {
            Some(pool) => pool.install(|| prefixes.par_iter().map(run).collect()),
            None => prefixes.iter().map(run).collect(),
        };
        for p in parts {
            all.extend(p?);
        }
    }
    all.sort();
    all.dedup();
    Ok(all)
}

/// One scalar unknown: entry `(a, b)` of the action matrix of basis element `gen`.
#[derive(Clone, Copy, Debug)]
struct Step {
    gen: usize,
    a: usize,
    b: usize,
}

#[derive(Clone, Debug)]
struct State {
    /// `values[gen][a][b]`, meaningful where `order[a][b]` says it is assigned.
    values: Vec<Vec<Vec<i64>>>,
    next: usize,
}

struct Search<'a> {
    rank: usize,
    n: usize,
    bound: i64,
    /// Sparse structure constants: for each `(i, j)` the pairs `(k, c_ij^k)` with `c > 0`.
    products: Vec<Vec<(usize, i64)>>,
    /// For each `k`, the `(i, j)` pairs whose product involves `b_k`.
    appears_in: Vec<Vec<(usize, usize)>>,
    is_unit: Vec<bool>,
    last_unit: Option<usize>,
    steps: Vec<Step>,
    /// Index of the step assigning `(gen, a, b)`.
    step_of: Vec<Vec<Vec<usize>>>,
    /// Step index after which the leading `(s+1)×(s+1)` block is complete.
    layer_end: Vec<usize>,
    budget: u64,
    nodes: &'a AtomicU64,
}

impl<'a> Search<'a> {
    fn new(ring: &ZPlusRing, n: usize, max_entry: u32, budget: u64, nodes: &'a AtomicU64) -> Result<Self> {
        let r = ring.rank();
        let mut products = vec![Vec::new(); r * r];
        let mut appears_in = vec![Vec::new(); r];
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let c = ring.c(i, j, k);
                    if c.is_positive() {
                        let c = c.to_i64().ok_or_else(|| Error::Overflow("structure constant too large".into()))?;
                        products[i * r + j].push((k, c));
                        appears_in[k].push((i, j));
                    }
                }
            }
        }
        let mut is_unit = vec![false; r];
        for &u in ring.unit_set() {
            is_unit[u] = true;
        }
        // Unit-set generators first so that the identity constraint pins them early.
        let mut gens: Vec<usize> = ring.unit_set().to_vec();
        gens.sort_unstable();
        gens.extend((0..r).filter(|g| !is_unit[*g]));
        let last_unit = ring.unit_set().iter().copied().max_by_key(|u| gens.iter().position(|g| g == u));
        let mut steps = Vec::new();
        let mut step_of = vec![vec![vec![usize::MAX; n]; n]; r];
        let mut layer_end = Vec::new();
        for s in 0..n {
            let mut cells = Vec::new();
            for t in 0..s {
                cells.push((s, t));
                cells.push((t, s));
            }
            cells.push((s, s));
            for (a, b) in cells {
                for &gen in &gens {
                    step_of[gen][a][b] = steps.len();
                    steps.push(Step { gen, a, b });
                }
            }
            layer_end.push(steps.len());
        }
        Ok(Search {
            rank: r,
            n,
            bound: i64::from(max_entry),
            products,
            appears_in,
            is_unit,
            last_unit,
            steps,
            step_of,
            layer_end,
            budget,
            nodes,
        })
    }

    fn assigned(&self, st: &State, gen: usize, a: usize, b: usize) -> bool {
        self.step_of[gen][a][b] < st.next
    }

    fn tick(&self) -> Result<()> {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.budget {
            Err(Error::BudgetExceeded { nodes: n })
        } else {
            Ok(())
        }
    }

    fn range(&self, st: &State, step: Step) -> (i64, i64) {
        if !self.is_unit[step.gen] {
            return (self.lower_bound(st, step), self.bound);
        }
        let target = i64::from(step.a == step.b);
        let used: i64 = (0..self.rank)
            .filter(|&g| self.is_unit[g] && g != step.gen && self.assigned(st, g, step.a, step.b))
            .map(|g| st.values[g][step.a][step.b])
            .sum();
        let rest = target - used;
        if Some(step.gen) == self.last_unit {
            (rest, rest)
        } else {
            (0, rest)
        }
    }

    /// Smallest value of `M_k[a][b]` leaving room for the products already accumulated in
    /// every equation where `b_k` appears on the right.
    fn lower_bound(&self, st: &State, step: Step) -> i64 {
        let Step { gen: k, a, b } = step;
        let mut lo = 0;
        for &(i, j) in &self.appears_in[k] {
            let lhs = self.partial_product(st, i, j, a, b);
            if lhs == 0 {
                continue;
            }
            let mut others = 0;
            let mut own = 0;
            for &(k2, c) in &self.products[i * self.rank + j] {
                if k2 == k {
                    own = c;
                } else {
                    others += c * self.interval(st, k2, a, b).1;
                }
            }
            let need = lhs - others;
            if need > 0 {
                lo = lo.max((need + own - 1) / own);
            }
        }
        lo
    }

    fn partial_product(&self, st: &State, i: usize, j: usize, x: usize, y: usize) -> i64 {
        let mut lhs = 0;
        for b in 0..self.n {
            if self.assigned(st, i, x, b) && self.assigned(st, j, b, y) {
                lhs += st.values[i][x][b] * st.values[j][b][y];
            }
        }
        lhs
    }

    /// Value interval of an entry: exact once assigned, `[0, bound]` before.
    fn interval(&self, st: &State, gen: usize, x: usize, y: usize) -> (i64, i64) {
        if self.assigned(st, gen, x, y) {
            let v = st.values[gen][x][y];
            (v, v)
        } else {
            (0, self.bound)
        }
    }

    /// The intervals of both sides of `(M_i M_j)[x][y] = Σ_k c_ij^k M_k[x][y]` intersect.
    fn cell_ok(&self, st: &State, i: usize, j: usize, x: usize, y: usize) -> bool {
        let (mut lhs_lo, mut lhs_hi) = (0, 0);
        for b in 0..self.n {
            let (p, q) = self.interval(st, i, x, b);
            let (r, t) = self.interval(st, j, b, y);
            lhs_lo += p * r;
            lhs_hi += q * t;
        }
        let (mut rhs_lo, mut rhs_hi) = (0, 0);
        for &(k, c) in &self.products[i * self.rank + j] {
            let (p, q) = self.interval(st, k, x, y);
            rhs_lo += c * p;
            rhs_hi += c * q;
        }
        lhs_lo <= rhs_hi && rhs_lo <= lhs_hi
    }

    fn consistent_after(&self, st: &State, step: Step) -> bool {
        let Step { gen, a, b } = step;
        let n = self.n;
        for j in 0..self.rank {
            for y in 0..n {
                if !self.cell_ok(st, gen, j, a, y) || !self.cell_ok(st, j, gen, y, b) {
                    return false;
                }
            }
        }
        self.appears_in[gen].iter().all(|&(i, j)| self.cell_ok(st, i, j, a, b))
    }

    /// Exact compatibility on the leading `size × size` block.
    fn is_module(&self, st: &State, size: usize) -> bool {
        for i in 0..self.rank {
            for j in 0..self.rank {
                for x in 0..size {
                    for y in 0..size {
                        let lhs: i64 = (0..size).map(|b| st.values[i][x][b] * st.values[j][b][y]).sum();
                        let rhs: i64 = self.products[i * self.rank + j].iter().map(|&(k, c)| c * st.values[k][x][y]).sum();
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Some ordering of any irreducible module has every new basis vector linked to an
    /// earlier one, so other branches are redundant.
    fn linked(&self, st: &State, s: usize) -> bool {
        s == 0 || (0..self.rank).any(|g| (0..s).any(|t| st.values[g][s][t] > 0 || st.values[g][t][s] > 0))
    }

    fn module_of(&self, st: &State, size: usize) -> ZPlusModule {
        let action = (0..self.rank)
            .map(|g| IntMatrix::from_fn(size, size, |a, b| BigInt::from(st.values[g][a][b])))
            .collect();
        ZPlusModule::new(action).expect("consistent shapes")
    }

    fn empty_state(&self) -> State {
        State { values: vec![vec![vec![0; self.n]; self.n]; self.rank], next: 0 }
    }

    /// Partial assignments at the end of the first layer that admits more than one branch,
    /// used to split work across threads.
    fn prefixes(&self) -> Result<Vec<State>> {
        let mut states = vec![self.empty_state()];
        let depth = self.layer_end[0];
        for _ in 0..depth {
            let mut next = Vec::new();
            for st in states {
                let step = self.steps[st.next];
                let (lo, hi) = self.range(&st, step);
                for v in lo..=hi {
                    self.tick()?;
                    let mut s2 = st.clone();
                    s2.values[step.gen][step.a][step.b] = v;
                    s2.next += 1;
                    if self.consistent_after(&s2, step) {
                        next.push(s2);
                    }
                }
            }
            states = next;
        }
        Ok(states)
    }

    fn dfs(&self, st: &mut State, out: &mut Vec<ZPlusModule>) -> Result<()> {
        if let Some(s) = self.layer_end.iter().position(|&e| e == st.next) {
            if !self.linked(st, s) {
                return Ok(());
            }
        }
        if st.next == self.steps.len() {
            if self.is_module(st, self.n) {
                let m = self.module_of(st, self.n);
                if is_irreducible(&m) {
                    out.push(canonical_module(&m));
                }
            }
            return Ok(());
        }
        let step = self.steps[st.next];
        let (lo, hi) = self.range(st, step);
        for v in lo..=hi {
            self.tick()?;
            st.values[step.gen][step.a][step.b] = v;
            st.next += 1;
            if self.consistent_after(st, step) {
                self.dfs(st, out)?;
            }
            st.next -= 1;
        }
        st.values[step.gen][step.a][step.b] = 0;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::{fusion_ring, Sl2Level};

    fn m1_rows(m: &ZPlusModule) -> Vec<Vec<i64>> {
        m.matrix(1).to_i64_rows().unwrap()
    }

    #[test]
    fn integers_have_one_module() {
        let mods = enumerate_irreducible_modules(&ZPlusRing::integers(), 3, 3).unwrap();
        assert_eq!(mods.len(), 1);
        assert_eq!(mods[0].module_rank(), 1);
    }

    #[test]
    fn level_one() {
        let ring = fusion_ring(Sl2Level::new(1).unwrap());
        let b = SearchBounds::from_ring(&ring).unwrap();
        assert_eq!(b, SearchBounds { max_rank: 2, max_entry: 2 });
        let mods = enumerate_with(&ring, b, DEFAULT_NODE_BUDGET, 1).unwrap();
        let shapes: Vec<Vec<Vec<i64>>> = mods.iter().map(m1_rows).collect();
        assert_eq!(mods.len(), 2);
        assert!(shapes.contains(&vec![vec![1]]));
        assert!(shapes.iter().any(|s| s.len() == 2));
    }

    #[test]
    fn budget_error() {
        let ring = fusion_ring(Sl2Level::new(2).unwrap());
        let r = enumerate_with(&ring, SearchBounds { max_rank: 4, max_entry: 4 }, 10, 1);
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn jobs_do_not_change_output() {
        let ring = fusion_ring(Sl2Level::new(2).unwrap());
        let b = SearchBounds { max_rank: 3, max_entry: 2 };
        assert_eq!(enumerate_with(&ring, b, DEFAULT_NODE_BUDGET, 1).unwrap(), enumerate_with(&ring, b, DEFAULT_NODE_BUDGET, 3).unwrap());
    }
}
