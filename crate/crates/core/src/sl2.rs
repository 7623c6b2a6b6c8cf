//! The level-`l` sl(2) fusion ring, its NIM-reps, and its (unnormalized) modular data.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cyclotomic::CyclotomicNumber;
use crate::dynkin::{enumerate_norm_lt_2, recognize, DynkinType, Family, LoopyGraph};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::module::{BasedModule, ZPlusModule};
use crate::poly::{characteristic_polynomial, cos_exponents};
use crate::ring::ZPlusRing;

/// Level `l ≥ 1`; the Coxeter number is `h = l + 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2Level(u32);

impl Sl2Level {
    pub fn new(l: u32) -> Result<Self> {
        if l == 0 {
            return Err(Error::Precondition("level must be at least 1".into()));
        }
        Ok(Sl2Level(l))
    }

    pub fn l(self) -> u32 {
        self.0
    }

    pub fn h(self) -> u32 {
        self.0 + 2
    }

    /// Number of simple objects `V_0..V_l`.
    pub fn rank(self) -> usize {
        self.0 as usize + 1
    }
}

/// Chebyshev family `p_0(A) = I`, `p_1(A) = A`, `p_{i+1}(A) = A p_i(A) − p_{i−1}(A)` for
/// `0 ≤ i ≤ count − 1`.
pub fn chebyshev_family(a: &IntMatrix, count: usize) -> Vec<IntMatrix> {
    let n = a.rows();
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(IntMatrix::identity(n));
    if count > 1 {
        out.push(a.clone());
    }
    while out.len() < count {
        let k = out.len();
        let next = &(a * &out[k - 1]) - &out[k - 2];
        out.push(next);
    }
    out
}

/// The fusion ring generated by `[V_1]`, with `N_1` the path adjacency on `l + 1` vertices.
pub fn fusion_ring(level: Sl2Level) -> ZPlusRing {
    let r = level.rank();
    let path = IntMatrix::from_fn(r, r, |i, j| BigInt::from(u8::from(i.abs_diff(j) == 1)));
    let n = chebyshev_family(&path, r);
    let constants = (0..r)
        .map(|i| (0..r).map(|j| (0..r).map(|k| n[i].get(k, j).clone()).collect()).collect())
        .collect();
    let labels = (0..r).map(|i| format!("V{i}")).collect();
    ZPlusRing::new(labels, constants, vec![0], Some((0..r).collect())).expect("well-formed fusion ring")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimpleCurrentKind {
    /// `V_0, V_l` generate `Rep(Z/2)`.
    Plain,
    /// `V_0, V_l` generate the twisted `Rep(Z/2)`.
    Twisted,
}

/// The braiding scalar of `V_l ⊗ V_l`, `e^{3πil/2} = ζ₄^{3l}`, and the resulting type of the
/// pointed subcategory.
pub fn simple_current_braiding(level: Sl2Level) -> (CyclotomicNumber, SimpleCurrentKind) {
    let l = level.l() as i64;
    let scalar = CyclotomicNumber::zeta(4, (3 * l) % 4).unwrap();
    let kind = if l % 2 == 0 { SimpleCurrentKind::Plain } else { SimpleCurrentKind::Twisted };
    (scalar, kind)
}

/// Lets `[V_1]` act by the adjacency matrix and `[V_i]` by `p_i(A)`. Accepted iff every
/// `p_i(A)` (`i ≤ l`) is non-negative and `p_{l+1}(A) = 0`.
pub fn nimrep_from_graph(g: &LoopyGraph, level: Sl2Level) -> Result<BasedModule> {
    let l = level.l();
    if !g.is_connected() {
        return Err(Error::Precondition("graph must be connected".into()));
    }
    let family = chebyshev_family(g.adjacency(), level.rank() + 1);
    for (i, p) in family.iter().enumerate().take(level.rank()) {
        if let Some((r, c)) = p.first_negative() {
            return Err(Error::NotNimRep { level: l, reason: format!("p_{i}(A) has a negative entry at ({r},{c})") });
        }
    }
    if !family[level.rank()].is_zero() {
        return Err(Error::NotNimRep { level: l, reason: format!("p_{}(A) is nonzero", l + 1) });
    }
    let mut action = family;
    action.pop();
    Ok(BasedModule::new_unchecked(ZPlusModule::new(action)?))
}

/// Indecomposable NIM-reps of the level-`l` fusion ring, as Dynkin types, sorted.
pub fn classify_nimreps(level: Sl2Level) -> Vec<DynkinType> {
    classify_among(&enumerate_norm_lt_2(level.rank()), level)
}

/// Classification restricted to a precomputed list of candidate graphs.
pub fn classify_among(graphs: &[LoopyGraph], level: Sl2Level) -> Vec<DynkinType> {
    let mut out: Vec<DynkinType> = graphs
        .iter()
        .filter(|g| g.size() <= level.rank())
        .filter(|g| nimrep_from_graph(g, level).is_ok())
        .map(|g| recognize(g).expect("connected").expect("norm < 2 graphs are ADET"))
        .collect();
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraObject {
    pub exists: bool,
    pub level: u32,
    /// Weights `λ` with `A = ⊕ V_λ`.
    pub weights: Vec<u32>,
}

/// Existence of a module category of the given type over `C_{h−2}` together with the
/// internal-End algebra of the end of the longest leg.
pub fn module_category_exists(ty: DynkinType) -> AlgebraObject {
    let level = crate::dynkin::coxeter_number(ty) as u32 - 2;
    let (exists, weights) = match (ty.family(), ty.rank()) {
        (Family::A, _) => (true, vec![0]),
        (Family::D, _) => (true, vec![0, level]),
        (Family::T, _) => (false, vec![0, level]),
        (Family::E, 6) => (true, vec![0, 6]),
        (Family::E, 7) => (true, vec![0, 8, 16]),
        (Family::E, _) => (true, vec![0, 10, 18, 28]),
    };
    AlgebraObject { exists, level, weights }
}

/// One row of the existence table: type, level, algebra object, existence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedRow {
    pub ty: String,
    pub level: String,
    pub algebra: String,
    pub exists: bool,
}

/// The existence table with the infinite families written in terms of `n` and `l`.
///
/// Family rows are read off [`module_category_exists`] at two consecutive ranks: the level is
/// affine in `n`, and a weight equal to the level is written `V_l`.
pub fn seed_catalog() -> Vec<SeedRow> {
    let mut rows = Vec::new();
    for (family, letter, n0) in [(Family::A, 'A', 3), (Family::D, 'D', 5), (Family::T, 'T', 3)] {
        let at = |n: usize| module_category_exists(DynkinType::new(family, n).expect("admissible"));
        let (a, b) = (at(n0), at(n0 + 1));
        let slope = i64::from(b.level) - i64::from(a.level);
        let offset = i64::from(a.level) - slope * n0 as i64;
        let symbolic = |w: &AlgebraObject| -> Vec<String> {
            w.weights.iter().map(|&x| if x == w.level { "V_l".to_string() } else { format!("V_{x}") }).collect()
        };
        debug_assert_eq!(symbolic(&a), symbolic(&b));
        rows.push(SeedRow {
            ty: format!("{letter}_n"),
            level: affine(slope, offset),
            algebra: symbolic(&a).join("+"),
            exists: a.exists,
        });
    }
    for n in [6, 7, 8] {
        let obj = module_category_exists(DynkinType::new(Family::E, n).expect("admissible"));
        rows.push(SeedRow {
            ty: format!("E_{n}"),
            level: obj.level.to_string(),
            algebra: obj.weights.iter().map(|w| format!("V_{w}")).collect::<Vec<_>>().join("+"),
            exists: obj.exists,
        });
    }
    rows.sort_by_key(|r| if r.ty.starts_with('T') { 1 } else { 0 });
    rows
}

fn affine(slope: i64, offset: i64) -> String {
    let lead = if slope == 1 { "n".to_string() } else { format!("{slope}n") };
    match offset.cmp(&0) {
        std::cmp::Ordering::Less => format!("{lead}-{}", -offset),
        std::cmp::Ordering::Equal => lead,
        std::cmp::Ordering::Greater => format!("{lead}+{offset}"),
    }
}

/// Tab-separated rendering of [`seed_catalog`] with a header line.
pub fn render_seed_catalog() -> String {
    let mut out = String::from("type\tlevel\talgebra_object\texists\n");
    for r in seed_catalog() {
        let exists = if r.exists { "yes" } else { "no" };
        out.push_str(&format!("{}\t{}\t{}\t{}\n", r.ty, r.level, r.algebra, exists));
    }
    out
}

/// Weights `λ` such that `2cos(π(λ+1)/h)` is an eigenvalue of `M_1`, with multiplicity.
pub fn module_exponents(module: &ZPlusModule, level: Sl2Level) -> Result<Vec<u32>> {
    if module.ring_rank() != level.rank() {
        return Err(Error::Dimension(format!(
            "module over a ring of rank {}, level {} needs {}",
            module.ring_rank(),
            level.l(),
            level.rank()
        )));
    }
    if level.rank() < 2 {
        return Err(Error::Precondition("no generator V_1".into()));
    }
    let cp = characteristic_polynomial(module.matrix(1));
    cos_exponents(&cp, level.h() as u64)
        .map(|ms| ms.into_iter().map(|m| m as u32 - 1).collect())
        .map_err(|_| Error::NotNimRep {
            level: level.l(),
            reason: "an eigenvalue of M_1 is not of the form 2cos(pi m / h)".into(),
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialPaths {
    /// `grades[i][a][b] = dim Hom(V_i ⊗ M_a, M_b)`.
    pub grades: Vec<IntMatrix>,
    pub grade_totals: Vec<BigInt>,
    pub total: BigInt,
}

pub fn essential_path_dims(g: &LoopyGraph, level: Sl2Level) -> Result<EssentialPaths> {
    let module = nimrep_from_graph(g, level)?;
    let grades: Vec<IntMatrix> = module.action().to_vec();
    let grade_totals: Vec<BigInt> = grades.iter().map(IntMatrix::sum).collect();
    let total = grade_totals.iter().fold(BigInt::zero(), |acc, x| acc + x);
    Ok(EssentialPaths { grades, grade_totals, total })
}

/// Modular data up to overall scalars: `Ŝ[i][j] = ζ^{(i+1)(j+1)} − ζ^{−(i+1)(j+1)}` with
/// `ζ = ζ_{2h}`, proportional to `sin(π(i+1)(j+1)/h)`, and the classes `(j+1)² mod 4h`
/// labelling the eigenvalues of `T`.
#[derive(Clone, Debug)]
pub struct ModularData {
    pub level: Sl2Level,
    pub s_hat: Vec<Vec<CyclotomicNumber>>,
    pub t_class: Vec<u64>,
}

impl ModularData {
    /// Whether `T` commutation allows a nonzero entry at `(i, j)`.
    pub fn t_compatible(&self, i: usize, j: usize) -> bool {
        self.t_class[i] == self.t_class[j]
    }
}

pub fn s_hat_entry(level: Sl2Level, i: usize, j: usize) -> CyclotomicNumber {
    let n = 2 * level.h() as u64;
    let e = ((i + 1) * (j + 1)) as i64;
    &CyclotomicNumber::zeta(n, e).unwrap() - &CyclotomicNumber::zeta(n, -e).unwrap()
}

pub fn modular_data(level: Sl2Level) -> ModularData {
    let r = level.rank();
    let s_hat = (0..r).map(|i| (0..r).map(|j| s_hat_entry(level, i, j)).collect()).collect();
    let four_h = 4 * level.h() as u64;
    let t_class = (1..=r as u64).map(|j| (j * j) % four_h).collect();
    ModularData { level, s_hat, t_class }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::build;
    use crate::module::{is_based, verify_module};

    fn lv(l: u32) -> Sl2Level {
        Sl2Level::new(l).unwrap()
    }

    fn ty(s: &str) -> DynkinType {
        s.parse().unwrap()
    }

    fn antidiagonal(n: usize) -> IntMatrix {
        IntMatrix::from_fn(n, n, |i, j| BigInt::from(u8::from(i + j == n - 1)))
    }

    #[test]
    fn level_zero_rejected() {
        assert!(Sl2Level::new(0).is_err());
    }

    #[test]
    fn level_one_and_two_rings() {
        let r1 = fusion_ring(lv(1));
        assert_eq!(r1.product(1, 1), vec![BigInt::from(1), BigInt::from(0)]);
        let n = fusion_ring(lv(2)).fusion_matrices();
        assert_eq!(n[1], IntMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]));
        assert_eq!(n[2], antidiagonal(3));
    }

    #[test]
    fn top_object_is_invertible() {
        for l in 1..=9 {
            let ring = fusion_ring(lv(l));
            let top = l as usize;
            assert_eq!(ring.c(top, top, 0), &BigInt::from(1));
            assert_eq!(ring.fusion_matrices()[top], antidiagonal(top + 1));
        }
    }

    #[test]
    fn braiding_scalar() {
        let (s, k) = simple_current_braiding(lv(2));
        assert_eq!(s, CyclotomicNumber::from_integer(-1));
        assert_eq!(k, SimpleCurrentKind::Plain);
        let (s, k) = simple_current_braiding(lv(1));
        assert_eq!(s, -&CyclotomicNumber::zeta(4, 1).unwrap());
        assert_eq!(k, SimpleCurrentKind::Twisted);
        assert_eq!(simple_current_braiding(lv(10)).0, CyclotomicNumber::from_integer(-1));
    }

    #[test]
    fn nimrep_acceptance_and_rejection() {
        let a3 = build(ty("A3")).unwrap();
        let m = nimrep_from_graph(&a3, lv(2)).unwrap();
        assert_eq!(m.matrix(2), &antidiagonal(3));
        assert!(matches!(nimrep_from_graph(&a3, lv(3)), Err(Error::NotNimRep { .. })));
        let t1 = build(ty("T1")).unwrap();
        let m = nimrep_from_graph(&t1, lv(1)).unwrap();
        assert_eq!(m.matrix(1), &IntMatrix::from_rows(&[vec![1]]));
        let ring = fusion_ring(lv(1));
        assert!(verify_module(&ring, &m).unwrap().is_empty());
        assert!(is_based(&ring, &m).unwrap());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_nimreps(lv(10)), vec![ty("A11"), ty("D7"), ty("E6")]);
        assert_eq!(classify_nimreps(lv(9)), vec![ty("A10"), ty("T5")]);
        assert_eq!(classify_nimreps(lv(2)), vec![ty("A3")]);
    }

    #[test]
    fn algebra_objects() {
        assert_eq!(module_category_exists(ty("E7")), AlgebraObject { exists: true, level: 16, weights: vec![0, 8, 16] });
        assert_eq!(module_category_exists(ty("T5")), AlgebraObject { exists: false, level: 9, weights: vec![0, 9] });
        assert_eq!(module_category_exists(ty("A4")), AlgebraObject { exists: true, level: 3, weights: vec![0] });
        assert_eq!(module_category_exists(ty("D6")).weights, vec![0, 8]);
    }

    #[test]
    fn exponents_of_modules() {
        let e6 = nimrep_from_graph(&build(ty("E6")).unwrap(), lv(10)).unwrap();
        assert_eq!(module_exponents(&e6, lv(10)).unwrap(), vec![0, 3, 4, 6, 7, 10]);
        let t2 = nimrep_from_graph(&build(ty("T2")).unwrap(), lv(3)).unwrap();
        assert_eq!(module_exponents(&t2, lv(3)).unwrap(), vec![0, 2]);
        let a = nimrep_from_graph(&build(ty("A8")).unwrap(), lv(7)).unwrap();
        assert_eq!(module_exponents(&a, lv(7)).unwrap(), (0..=7).collect::<Vec<_>>());
    }

    #[test]
    fn essential_paths() {
        let p = essential_path_dims(&build(ty("A2")).unwrap(), lv(1)).unwrap();
        assert_eq!(p.grades[1], IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
        assert_eq!(p.total, BigInt::from(4));
        let p = essential_path_dims(&build(ty("A3")).unwrap(), lv(2)).unwrap();
        assert_eq!(p.grade_totals, vec![BigInt::from(3), BigInt::from(4), BigInt::from(3)]);
        assert_eq!(p.total, BigInt::from(10));
        let p = essential_path_dims(&build(ty("T1")).unwrap(), lv(1)).unwrap();
        assert_eq!(p.total, BigInt::from(2));
        assert!(essential_path_dims(&build(ty("A3")).unwrap(), lv(5)).is_err());
    }

    #[test]
    fn modular_data_basics() {
        let md = modular_data(lv(2));
        assert_eq!(md.t_class, vec![1, 4, 9]);
        let md = modular_data(lv(1));
        let z6 = |k| CyclotomicNumber::zeta(6, k).unwrap();
        assert_eq!(md.s_hat[0][0], &z6(1) - &z6(-1));
        assert_eq!(md.s_hat[0][1], &z6(2) - &z6(-2));
        // sin(4π/3) = −sin(π/3).
        assert_eq!(md.s_hat[1][1], -&md.s_hat[0][0]);
        for l in 1..=6 {
            let md = modular_data(lv(l));
            for i in 0..md.s_hat.len() {
                for j in 0..i {
                    assert_eq!(md.s_hat[i][j], md.s_hat[j][i]);
                }
            }
        }
    }
}
