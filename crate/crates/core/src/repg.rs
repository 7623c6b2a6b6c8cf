//! Subgroup data for small finite groups: conjugacy classes of subgroups with isomorphism
//! types and Schur multipliers, counts of module categories over `Rep(G)` and of fiber functors.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 16;

/// A finite group of order at most 16 given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGroup {
    table: Vec<Vec<usize>>,
    labels: Vec<String>,
    identity: usize,
}

impl SmallGroup {
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OutOfScope(format!("group order {n} outside 1..={MAX_ORDER}")));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::Dimension(format!("multiplication table must be {n}x{n} with entries < {n}")));
        }
        let labels = match labels {
            Some(l) if l.len() != n => return Err(Error::Dimension(format!("{} labels for order {n}", l.len()))),
            Some(l) => l,
            None => (0..n).map(|i| format!("g{i}")).collect(),
        };
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::Precondition("no identity element".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == identity) {
                return Err(Error::Precondition(format!("element {a} has no inverse")));
            }
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Precondition(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(SmallGroup { table, labels, identity })
    }

    fn from_mul(n: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        SmallGroup::from_table(table, None).expect("constructed group is valid")
    }

    pub fn cyclic(n: usize) -> Self {
        SmallGroup::from_mul(n, |a, b| (a + b) % n)
    }

    pub fn direct_product(g: &SmallGroup, h: &SmallGroup) -> Self {
        let m = h.order();
        SmallGroup::from_mul(g.order() * m, |a, b| g.mul(a / m, b / m) * m + h.mul(a % m, b % m))
    }

    /// `(Z_{n_1} × … × Z_{n_r}) ⋊ C_k`, where the generator of `C_k` acts by `act`.
    pub fn semidirect(moduli: &[usize], k: usize, act: impl Fn(&[usize]) -> Vec<usize>) -> Self {
        let size: usize = moduli.iter().product();
        let decode = |mut x: usize| {
            let mut v = vec![0; moduli.len()];
            for (slot, &m) in v.iter_mut().zip(moduli).rev() {
                *slot = x % m;
                x /= m;
            }
            v
        };
        let encode = |v: &[usize]| v.iter().zip(moduli).fold(0, |acc, (&x, &m)| acc * m + x % m);
        let power = |v: Vec<usize>, t: usize| (0..t).fold(v, |w, _| act(&w));
        SmallGroup::from_mul(size * k, |a, b| {
            let (na, ta) = (decode(a / k), a % k);
            let (nb, tb) = (decode(b / k), b % k);
            let moved = power(nb, ta);
            let sum: Vec<usize> = na.iter().zip(&moved).map(|(x, y)| x + y).collect();
            encode(&sum) * k + (ta + tb) % k
        })
    }

    /// `Z_n ⋊ C_2` acting by `x ↦ r·x`.
    fn metacyclic(n: usize, r: usize) -> Self {
        SmallGroup::semidirect(&[n], 2, |v| vec![v[0] * r % n])
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Self {
        SmallGroup::metacyclic(n, n - 1)
    }

    /// Dicyclic group of order `4n`: `⟨a, x | a^{2n} = 1, x² = a^n, x a x⁻¹ = a⁻¹⟩`.
    pub fn dicyclic(n: usize) -> Self {
        let m = 2 * n;
        // Element a^i x^j is encoded as 2i + j.
        SmallGroup::from_mul(2 * m, |p, q| {
            let (i, j, k, l) = (p / 2, p % 2, q / 2, q % 2);
            let k = if j == 1 { (m - k) % m } else { k };
            let extra = if j == 1 && l == 1 { n } else { 0 };
            ((i + k + extra) % m) * 2 + (j + l) % 2
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == self.identity).expect("group has inverses")
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn conjugate_set(&self, g: usize, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let gi = self.inverse(g);
        set.iter().map(|&h| self.mul(self.mul(g, h), gi)).collect()
    }

    /// Smallest subgroup containing `gens`.
    pub fn closure(&self, gens: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut frontier: Vec<usize> = gens.clone();
        while let Some(x) = frontier.pop() {
            if set.insert(x) {
                for &g in &gens {
                    frontier.push(self.mul(x, g));
                }
            }
        }
        set
    }

    /// Every subgroup, each as a sorted element set.
    pub fn subgroups(&self) -> Vec<BTreeSet<usize>> {
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut queue = vec![BTreeSet::from([self.identity])];
        while let Some(h) = queue.pop() {
            if !seen.insert(h.clone()) {
                continue;
            }
            for g in 0..self.order() {
                if !h.contains(&g) {
                    let bigger = self.closure(h.iter().copied().chain([g]));
                    if !seen.contains(&bigger) {
                        queue.push(bigger);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    /// The subgroup `h` as a group in its own right.
    pub fn restrict(&self, h: &BTreeSet<usize>) -> SmallGroup {
        let elems: Vec<usize> = h.iter().copied().collect();
        let index: BTreeMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let table = elems.iter().map(|&a| elems.iter().map(|&b| index[&self.mul(a, b)]).collect()).collect();
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        SmallGroup::from_table(table, Some(labels)).expect("subgroup of a valid group")
    }

    fn center_size(&self) -> usize {
        (0..self.order()).filter(|&a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a))).count()
    }

    fn derived_size(&self) -> usize {
        let n = self.order();
        let comms = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| {
            self.mul(self.mul(a, b), self.mul(self.inverse(a), self.inverse(b)))
        });
        self.closure(comms).len()
    }

    fn class_count(&self) -> usize {
        let mut seen = vec![false; self.order()];
        let mut classes = 0;
        for a in 0..self.order() {
            if !seen[a] {
                classes += 1;
                for g in 0..self.order() {
                    seen[self.mul(self.mul(g, a), self.inverse(g))] = true;
                }
            }
        }
        classes
    }

    /// Isomorphism invariants; distinct for all groups of order at most 16.
    fn signature(&self) -> Signature {
        let n = self.order();
        let mut orders = vec![0; n + 1];
        for a in 0..n {
            orders[self.element_order(a)] += 1;
        }
        let subs = self.subgroups();
        let mut subgroup_orders = vec![0; n + 1];
        let mut normal_orders = vec![0; n + 1];
        let mut abelian_orders = vec![0; n + 1];
        for h in &subs {
            subgroup_orders[h.len()] += 1;
            if (0..n).all(|g| &self.conjugate_set(g, h) == h) {
                normal_orders[h.len()] += 1;
            }
            if self.restrict(h).is_abelian() {
                abelian_orders[h.len()] += 1;
            }
        }
        let squares: BTreeSet<usize> = (0..n).map(|a| self.mul(a, a)).collect();
        Signature {
            order: n,
            center: self.center_size(),
            derived: self.derived_size(),
            classes: self.class_count(),
            squares: squares.len(),
            orders,
            subgroup_orders,
            normal_orders,
            abelian_orders,
        }
    }

    /// Catalog name of the isomorphism type.
    pub fn isomorphism_type(&self) -> &'static str {
        identify(self).name
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Signature {
    order: usize,
    center: usize,
    derived: usize,
    classes: usize,
    squares: usize,
    orders: Vec<usize>,
    subgroup_orders: Vec<usize>,
    normal_orders: Vec<usize>,
    abelian_orders: Vec<usize>,
}

struct CatalogEntry {
    name: &'static str,
    multiplier: u32,
    group: SmallGroup,
    signature: Signature,
}

fn build_catalog() -> Vec<CatalogEntry> {
    let c = SmallGroup::cyclic;
    let x = |a: &SmallGroup, b: &SmallGroup| SmallGroup::direct_product(a, b);
    let mut groups: Vec<(&'static str, u32, SmallGroup)> = vec![
        ("1", 1, c(1)),
        ("C2", 1, c(2)),
        ("C3", 1, c(3)),
        ("C4", 1, c(4)),
        ("C2xC2", 2, x(&c(2), &c(2))),
        ("C5", 1, c(5)),
        ("C6", 1, c(6)),
        ("S3", 1, SmallGroup::dihedral(3)),
        ("C7", 1, c(7)),
        ("C8", 1, c(8)),
        ("C4xC2", 2, x(&c(4), &c(2))),
        ("C2xC2xC2", 8, x(&x(&c(2), &c(2)), &c(2))),
        ("D8", 2, SmallGroup::dihedral(4)),
        ("Q8", 1, SmallGroup::dicyclic(2)),
        ("C9", 1, c(9)),
        ("C3xC3", 3, x(&c(3), &c(3))),
        ("C10", 1, c(10)),
        ("D10", 1, SmallGroup::dihedral(5)),
        ("C11", 1, c(11)),
        ("C12", 1, c(12)),
        ("C6xC2", 2, x(&c(6), &c(2))),
        ("A4", 2, SmallGroup::semidirect(&[2, 2], 3, |v| vec![v[1], v[0] + v[1]])),
        ("D12", 2, SmallGroup::dihedral(6)),
        ("Dic12", 1, SmallGroup::dicyclic(3)),
        ("C13", 1, c(13)),
        ("C14", 1, c(14)),
        ("D14", 1, SmallGroup::dihedral(7)),
        ("C15", 1, c(15)),
        ("C16", 1, c(16)),
        ("C4xC4", 4, x(&c(4), &c(4))),
        ("C2^2:C4", 4, SmallGroup::semidirect(&[4, 2], 2, |v| vec![v[0], v[1] + v[0]])),
        ("C4:C4", 2, SmallGroup::semidirect(&[4], 4, |v| vec![3 * v[0]])),
        ("C8xC2", 2, x(&c(8), &c(2))),
        ("M16", 1, SmallGroup::metacyclic(8, 5)),
        ("D16", 2, SmallGroup::dihedral(8)),
        ("SD16", 1, SmallGroup::metacyclic(8, 3)),
        ("Q16", 1, SmallGroup::dicyclic(4)),
        ("C4xC2xC2", 8, x(&x(&c(4), &c(2)), &c(2))),
        ("C2xD8", 8, x(&c(2), &SmallGroup::dihedral(4))),
        ("C2xQ8", 4, x(&c(2), &SmallGroup::dicyclic(2))),
        ("C4oD8", 4, SmallGroup::semidirect(&[4, 2], 2, |v| vec![v[0] + 2 * v[1], v[1]])),
        ("C2^4", 64, x(&x(&c(2), &c(2)), &x(&c(2), &c(2)))),
    ];
    groups
        .drain(..)
        .map(|(name, multiplier, group)| {
            let signature = group.signature();
            CatalogEntry { name, multiplier, group, signature }
        })
        .collect()
}

fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build_catalog)
}

fn identify(g: &SmallGroup) -> &'static CatalogEntry {
    let sig = g.signature();
    catalog()
        .iter()
        .find(|e| e.signature == sig)
        .expect("every group of order at most 16 is in the catalog")
}

/// Names accepted by [`builtin`].
pub fn builtin_names() -> Vec<&'static str> {
    catalog().iter().map(|e| e.name).collect()
}

/// A catalog group by name; `Z` may be used for `C` (`"Z2xZ2"`).
pub fn builtin(name: &str) -> Result<SmallGroup> {
    let key = name.replace('Z', "C");
    catalog()
        .iter()
        .find(|e| e.name == key)
        .map(|e| e.group.clone())
        .ok_or_else(|| Error::Parse(format!("unknown group {name:?}")))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    pub representative: Vec<usize>,
    pub class_size: usize,
    pub isomorphism_type: &'static str,
    pub schur_multiplier_order: u32,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.len()
    }
}

/// Subgroups up to conjugacy, ordered by subgroup order then representative.
pub fn subgroup_classes(g: &SmallGroup) -> Vec<SubgroupClass> {
    let mut remaining: BTreeSet<BTreeSet<usize>> = g.subgroups().into_iter().collect();
    let mut out = Vec::new();
    while let Some(h) = remaining.pop_first() {
        let class: BTreeSet<BTreeSet<usize>> = (0..g.order()).map(|x| g.conjugate_set(x, &h)).collect();
        for k in &class {
            remaining.remove(k);
        }
        let rep = class.iter().next().expect("nonempty class").clone();
        let entry = identify(&g.restrict(&rep));
        out.push(SubgroupClass {
            representative: rep.into_iter().collect(),
            class_size: class.len(),
            isomorphism_type: entry.name,
            schur_multiplier_order: entry.multiplier,
        });
    }
    out.sort_by(|a, b| (a.order(), &a.representative).cmp(&(b.order(), &b.representative)));
    out
}

/// Number of pairs `(H, ω)` up to conjugacy, `ω ∈ H²(H, k*)`. Only computed when every
/// multiplier has order at most 2, where conjugation cannot act on `H²` nontrivially.
pub fn module_category_count(g: &SmallGroup) -> Result<u64> {
    let classes = subgroup_classes(g);
    if let Some(bad) = classes.iter().find(|c| c.schur_multiplier_order > 2) {
        return Err(Error::OutOfScope(format!(
            "subgroup {} has Schur multiplier of order {}; conjugation action on H^2 not handled",
            bad.isomorphism_type, bad.schur_multiplier_order
        )));
    }
    Ok(classes.iter().map(|c| u64::from(c.schur_multiplier_order)).sum())
}

/// Fiber functors on `Rep(G)`: the trivial subgroup plus one per conjugacy class of Klein-four
/// subgroups with their nondegenerate cocycle.
pub fn fiber_functor_count(g: &SmallGroup) -> Result<u64> {
    if g.order() > 8 {
        return Err(Error::OutOfScope(format!("fiber functor count validated for |G| <= 8, got {}", g.order())));
    }
    let klein = subgroup_classes(g).iter().filter(|c| c.isomorphism_type == "C2xC2").count();
    Ok(1 + klein as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_signatures_are_distinct() {
        let sigs: BTreeSet<&Signature> = catalog().iter().map(|e| &e.signature).collect();
        assert_eq!(sigs.len(), catalog().len());
        assert_eq!(catalog().len(), 42);
    }

    #[test]
    fn catalog_orders() {
        let mut by_order = BTreeMap::new();
        for e in catalog() {
            *by_order.entry(e.group.order()).or_insert(0) += 1;
        }
        assert_eq!(by_order[&8], 5);
        assert_eq!(by_order[&12], 5);
        assert_eq!(by_order[&16], 14);
    }

    #[test]
    fn quaternion_classes() {
        let q8 = builtin("Q8").unwrap();
        let types: Vec<&str> = subgroup_classes(&q8).iter().map(|c| c.isomorphism_type).collect();
        assert_eq!(types, vec!["1", "C2", "C4", "C4", "C4", "Q8"]);
        assert_eq!(fiber_functor_count(&q8).unwrap(), 1);
    }

    #[test]
    fn dihedral_has_two_klein_classes() {
        let d8 = builtin("D8").unwrap();
        let klein = subgroup_classes(&d8).iter().filter(|c| c.isomorphism_type == "C2xC2").count();
        assert_eq!(klein, 2);
        assert_eq!(fiber_functor_count(&d8).unwrap(), 3);
    }

    #[test]
    fn klein_four_counts() {
        let v = builtin("Z2xZ2").unwrap();
        assert_eq!(module_category_count(&v).unwrap(), 6);
        assert_eq!(fiber_functor_count(&v).unwrap(), 2);
        assert_eq!(module_category_count(&SmallGroup::cyclic(2)).unwrap(), 2);
        assert_eq!(module_category_count(&SmallGroup::cyclic(1)).unwrap(), 1);
    }

    #[test]
    fn scope_errors() {
        assert!(matches!(fiber_functor_count(&builtin("C4xC4").unwrap()), Err(Error::OutOfScope(_))));
        assert!(matches!(module_category_count(&builtin("C2xC2xC2").unwrap()), Err(Error::OutOfScope(_))));
        assert!(SmallGroup::from_table(vec![vec![0; 17]; 17], None).is_err());
    }

    #[test]
    fn rejects_non_associative_table() {
        // Loop of order 3 without associativity: identity 0, but 1·(1·2) ≠ (1·1)·2.
        let t = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 2]];
        assert!(SmallGroup::from_table(t, None).is_err());
    }
}
