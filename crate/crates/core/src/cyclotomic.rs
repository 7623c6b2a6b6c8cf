//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! Elements are kept in the power basis `1, ζ_n, …, ζ_n^{φ(n)−1}`, fully reduced modulo the
//! `n`-th cyclotomic polynomial, so equality is coefficient-wise once two operands share an
//! order. Mixed-order operations embed both sides into the field of the lcm order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::cyclotomic_polynomial;

#[derive(Clone)]
pub struct CyclotomicNumber {
    order: u64,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn from_rational(q: BigRational) -> Self {
        CyclotomicNumber { order: 1, coeffs: vec![q] }
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `ζ_nᵏ`; negative exponents are taken modulo `n`.
    pub fn zeta(n: u64, k: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("root of unity of order 0".into()));
        }
        let e = k.rem_euclid(n as i64) as usize;
        let mut raw = vec![BigRational::zero(); e + 1];
        raw[e] = BigRational::one();
        Ok(Self::reduce(n, raw))
    }

    /// Builds `Σ_i c_i ζ_nⁱ` from an unreduced coefficient list.
    pub fn from_power_coeffs(n: u64, coeffs: Vec<BigRational>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("root of unity of order 0".into()));
        }
        Ok(Self::reduce(n, coeffs))
    }

    fn reduce(n: u64, mut raw: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let d = phi.len() - 1;
        while raw.len() > d {
            let top = raw.len() - 1;
            let lead = raw.pop().unwrap();
            if !lead.is_zero() {
                let shift = top - d;
                for (i, c) in phi.iter().enumerate().take(d) {
                    if !c.is_zero() {
                        raw[shift + i] -= &lead * BigRational::from_integer(c.clone());
                    }
                }
            }
        }
        raw.resize(d, BigRational::zero());
        CyclotomicNumber { order: n, coeffs: raw }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Power-basis coordinates, length `φ(order)`.
    pub fn coords(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    /// Value-preserving map into `Q(ζ_m)` via `ζ_n ↦ ζ_m^{m/n}`.
    pub fn embed(&self, m: u64) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(self.order) {
            return Err(Error::Precondition(format!("order {} does not divide {m}", self.order)));
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let k = (m / self.order) as usize;
        let mut raw = vec![BigRational::zero(); k * self.coeffs.len().saturating_sub(1) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[k * i] += c;
            }
        }
        Ok(Self::reduce(m, raw))
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹`.
    pub fn conjugate(&self) -> Self {
        let n = self.order as usize;
        let mut raw = vec![BigRational::zero(); n.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(n - i) % n] += c;
            }
        }
        Self::reduce(self.order, raw)
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.order.lcm(&b.order);
        (a.embed(m).unwrap(), b.embed(m).unwrap())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CyclotomicNumber { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for CyclotomicNumber {}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::common(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CyclotomicNumber { order: a.order, coeffs }
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::common(self, rhs);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        CyclotomicNumber { order: a.order, coeffs }
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        let (a, b) = CyclotomicNumber::common(self, rhs);
        let mut raw = vec![BigRational::zero(); (a.coeffs.len() + b.coeffs.len()).saturating_sub(1)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        CyclotomicNumber::reduce(a.order, raw)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*z{}", self.order),
                _ => format!("({c})*z{}^{i}", self.order),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, k: i64) -> CyclotomicNumber {
        CyclotomicNumber::zeta(n, k).unwrap()
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(z(4, 2), CyclotomicNumber::from_integer(-1));
        assert!(z(4, 2).is_rational());
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = &(&z(3, 0) + &z(3, 1)) + &z(3, 2);
        assert!(s.is_zero());
    }

    #[test]
    fn zeta_is_periodic() {
        assert_eq!(z(7, 9), z(7, 2));
        assert_eq!(z(7, -1), z(7, 6));
        assert!(CyclotomicNumber::zeta(0, 1).is_err());
    }

    #[test]
    fn embeddings() {
        assert_eq!(z(12, 3), z(4, 1));
        assert_eq!(z(2, 1).embed(4).unwrap(), CyclotomicNumber::from_integer(-1));
        assert_eq!(CyclotomicNumber::from_integer(3).embed(10).unwrap(), CyclotomicNumber::from_integer(3));
        let prod = &z(3, 1).embed(12).unwrap() * &z(4, 1).embed(12).unwrap();
        assert_eq!(prod.order(), 12);
        assert_eq!(prod, z(12, 7));
        assert!(z(3, 1).embed(10).is_err());
    }

    #[test]
    fn field_identities() {
        let s = &z(8, 1) + &z(8, -1);
        assert_eq!(&s * &s, CyclotomicNumber::from_integer(2));
        assert_eq!(&z(5, 1).conjugate() * &z(5, 1), CyclotomicNumber::one());
        assert!((&z(6, 1) - &z(6, 1)).is_zero());
        assert_eq!(-&z(4, 1), z(4, 3));
    }
}
