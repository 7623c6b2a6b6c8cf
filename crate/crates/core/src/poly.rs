//! Dense integer polynomials: cyclotomic polynomials, minimal polynomials of `2cos(2π/n)`,
//! characteristic polynomials, and exact eigenvalue-to-exponent matching.
//!
//! Coefficients are stored lowest degree first with no trailing zeros.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::matrix::IntMatrix;

pub type Poly = Vec<BigInt>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder by a monic divisor.
pub fn divrem_monic(a: &[BigInt], divisor: &[BigInt]) -> (Poly, Poly) {
    let d = degree(divisor).expect("nonzero divisor");
    assert!(divisor[d].is_one(), "divisor must be monic");
    let mut rem = trim(a.to_vec());
    if rem.len() <= d {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - d];
    while rem.len() > d {
        let top = rem.len() - 1;
        let coef = rem[top].clone();
        let shift = top - d;
        for (i, c) in divisor.iter().enumerate().take(d + 1) {
            rem[shift + i] -= &coef * c;
        }
        quot[shift] = coef;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn cache() -> &'static RwLock<HashMap<u64, Arc<Poly>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Poly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial, computed by dividing `xⁿ − 1` by `Φ_d` for the proper
/// divisors `d` of `n`. Results are cached process-wide.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Poly> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = cache().read().unwrap().get(&n) {
        return Arc::clone(p);
    }
    let mut p: Poly = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = divrem_monic(&p, &cyclotomic_polynomial(d));
        debug_assert!(r.is_empty());
        p = q;
    }
    let p = Arc::new(p);
    cache().write().unwrap().entry(n).or_insert_with(|| Arc::clone(&p));
    p
}

/// Minimal polynomial over Q of `2cos(2π/n)`.
pub fn cos_minimal_polynomial(n: u64) -> Poly {
    match n {
        0 => panic!("order 0"),
        1 => vec![BigInt::from(-2), BigInt::one()],
        2 => vec![BigInt::from(2), BigInt::one()],
        _ => {
            // Φ_n(z) = z^d · (a_d + Σ_{k≥1} a_{d+k} (z^k + z^{-k})), and z^k + z^{-k} = C_k(z + 1/z)
            // with C_0 = 2, C_1 = x, C_{k+1} = x C_k − C_{k−1}.
            let phi = cyclotomic_polynomial(n);
            let d = (phi.len() - 1) / 2;
            let mut out: Poly = vec![phi[d].clone()];
            let mut prev: Poly = vec![BigInt::from(2)];
            let mut cur: Poly = vec![BigInt::zero(), BigInt::one()];
            for k in 1..=d {
                out = add(&out, &scale(&cur, &phi[d + k]));
                let next = sub(&mul(&[BigInt::zero(), BigInt::one()], &cur), &prev);
                prev = cur;
                cur = next;
            }
            trim(out)
        }
    }
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> Poly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).collect())
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> Poly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect())
}

pub fn scale(a: &[BigInt], k: &BigInt) -> Poly {
    trim(a.iter().map(|x| x * k).collect())
}

/// `det(xI − A)` by the Faddeev–LeVerrier recursion; all divisions are exact.
pub fn characteristic_polynomial(a: &IntMatrix) -> Poly {
    assert!(a.is_square());
    let n = a.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = a * &m;
        for i in 0..n {
            *next.entry_mut(i, i) += &coeffs[n - k + 1];
        }
        m = next;
        let tr = (a * &m).trace();
        let (q, r) = tr.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = -q;
    }
    coeffs
}

/// Splits a monic integer polynomial into roots `2cos(πm/h)` with `1 ≤ m ≤ h−1`, returning
/// the sorted multiset of such `m`. Returns the unmatched cofactor on failure.
pub fn cos_exponents(charpoly: &[BigInt], h: u64) -> std::result::Result<Vec<u64>, Poly> {
    let mut rest = trim(charpoly.to_vec());
    let mut exps = Vec::new();
    // 2cos(πm/h) = 2cos(2π k/n) with n = 2h / gcd(m, 2h).
    for n in (3..=2 * h).filter(|n| (2 * h).is_multiple_of(*n)) {
        let psi = cos_minimal_polynomial(n);
        loop {
            let (q, r) = divrem_monic(&rest, &psi);
            if !r.is_empty() || degree(&rest).unwrap_or(0) == 0 {
                break;
            }
            rest = q;
            exps.extend((1..h).filter(|&m| 2 * h / m.gcd(&(2 * h)) == n));
        }
    }
    if rest.len() == 1 && rest[0].is_one() {
        exps.sort_unstable();
        Ok(exps)
    } else {
        Err(rest)
    }
}
