//! Exact arithmetic in the cyclotomic field Q(ζ_p), p prime.
//!
//! Elements are stored as `p` rational coefficients of `1, ζ, …, ζ^{p-1}`.
//! Internally any representative modulo the relation `1 + ζ + … + ζ^{p-1} = 0`
//! is allowed, which keeps powers of ζ sparse during long products. The
//! canonical form, with the coefficient of `ζ^{p-1}` equal to zero, is what
//! [`CyclotomicScalar::coeffs`], equality and hashing observe.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `p` unchanged when it is prime, otherwise an invalid-input error.
pub fn ensure_prime(p: u32) -> Result<u32> {
    if is_prime(p as u64) {
        Ok(p)
    } else {
        Err(Error::InvalidInput(format!("p must be prime, got {p}")))
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone)]
pub struct CyclotomicScalar {
    p: u32,
    raw: Vec<Rational>,
}

impl CyclotomicScalar {
    pub fn zero(p: u32) -> Self {
        assert!(p >= 2, "cyclotomic scalars need p >= 2");
        Self { p, raw: vec![Rational::zero(); p as usize] }
    }

    pub fn one(p: u32) -> Self {
        Self::from_rational(p, Rational::one())
    }

    pub fn from_rational(p: u32, r: Rational) -> Self {
        let mut out = Self::zero(p);
        out.raw[0] = r;
        out
    }

    pub fn from_integer(p: u32, n: i64) -> Self {
        Self::from_rational(p, Rational::from_integer(BigInt::from(n)))
    }

    /// `ζ^k` for a prime `p`; `k` may be any integer.
    pub fn root_of_unity(p: u32, k: i64) -> Result<Self> {
        ensure_prime(p)?;
        Ok(Self::zeta_pow(p, k))
    }

    /// `ζ^k` without the primality check.
    pub(crate) fn zeta_pow(p: u32, k: i64) -> Self {
        let mut out = Self::zero(p);
        out.raw[k.rem_euclid(p as i64) as usize] = Rational::one();
        out
    }

    /// Builds a scalar from coefficients of `ζ^0 … ζ^{len-1}`; indices wrap mod p.
    pub fn from_coeffs(p: u32, coeffs: &[Rational]) -> Self {
        let mut out = Self::zero(p);
        for (i, c) in coeffs.iter().enumerate() {
            out.raw[i % p as usize] += c;
        }
        out
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Canonical coefficients: `coeffs()[p-1]` is always zero.
    pub fn coeffs(&self) -> Vec<Rational> {
        let last = &self.raw[self.p as usize - 1];
        if last.is_zero() {
            return self.raw.clone();
        }
        self.raw.iter().map(|c| c - last).collect()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        &self.raw[i] - &self.raw[self.p as usize - 1]
    }

    pub fn is_zero(&self) -> bool {
        let first = &self.raw[0];
        self.raw.iter().all(|c| c == first)
    }

    pub fn is_one(&self) -> bool {
        self.phase_exponent() == Some(0)
    }

    fn check_prime_match(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("mismatched cyclotomic fields: Q(ζ_{}) vs Q(ζ_{})", self.p, other.p)))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_prime_match(other)?;
        let raw = self.raw.iter().zip(&other.raw).map(|(a, b)| a + b).collect();
        Ok(Self { p: self.p, raw })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_prime_match(other)?;
        let raw = self.raw.iter().zip(&other.raw).map(|(a, b)| a - b).collect();
        Ok(Self { p: self.p, raw })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_prime_match(other)?;
        let p = self.p as usize;
        let mut raw = vec![Rational::zero(); p];
        for (i, a) in self.raw.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.raw.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                raw[(i + j) % p] += a * b;
            }
        }
        Ok(Self { p: self.p, raw })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    /// Galois conjugate `ζ ↦ ζ^j`; `j` must be a unit mod p.
    pub fn galois(&self, j: u32) -> Self {
        let p = self.p as usize;
        let mut raw = vec![Rational::zero(); p];
        for (i, c) in self.raw.iter().enumerate() {
            raw[(i * j as usize) % p] += c;
        }
        Self { p: self.p, raw }
    }

    /// Field norm down to Q: the product of all Galois conjugates.
    pub fn norm(&self) -> Rational {
        let all = (1..self.p).fold(Self::one(self.p), |acc, j| &acc * &self.galois(j));
        all.as_rational().expect("field norm is rational")
    }

    /// Multiplicative inverse, computed as the product of the nontrivial
    /// conjugates divided by the norm.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let others = (2..self.p).fold(Self::one(self.p), |acc, j| &acc * &self.galois(j));
        let norm = (self * &others).as_rational().expect("field norm is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { p: self.p, raw: self.raw.iter().map(|c| c * r).collect() }
    }

    /// Multiplication by `ζ^k`, a rotation of the coefficients.
    pub fn mul_zeta(&self, k: i64) -> Self {
        let p = self.p as usize;
        let shift = k.rem_euclid(p as i64) as usize;
        let mut raw = vec![Rational::zero(); p];
        for (i, c) in self.raw.iter().enumerate() {
            raw[(i + shift) % p] = c.clone();
        }
        Self { p: self.p, raw }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `Some(r)` when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        let c = self.coeffs();
        if c[1..].iter().all(Zero::is_zero) {
            Some(c[0].clone())
        } else {
            None
        }
    }

    /// Returns `k` in `[0, p)` when the element equals `ζ^k` exactly.
    pub fn phase_exponent(&self) -> Option<u32> {
        let p = self.p as usize;
        let c = self.coeffs();
        let head = &c[..p - 1];
        let nonzero: Vec<usize> = (0..p - 1).filter(|&i| !head[i].is_zero()).collect();
        if nonzero.len() == 1 && head[nonzero[0]].is_one() {
            return Some(nonzero[0] as u32);
        }
        let minus_one = -Rational::one();
        if head.iter().all(|x| *x == minus_one) {
            return Some(self.p - 1);
        }
        None
    }
}

impl PartialEq for CyclotomicScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        let d0 = &self.raw[0] - &other.raw[0];
        self.raw.iter().zip(&other.raw).skip(1).all(|(a, b)| a - b == d0)
    }
}

impl Eq for CyclotomicScalar {}

impl Hash for CyclotomicScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.coeffs().hash(state);
    }
}

impl fmt::Debug for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coeffs();
        let mut wrote = false;
        for (i, x) in c.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let sign = if x.is_negative() { "-" } else { "+" };
            let mag = x.abs();
            if wrote {
                write!(f, " {sign} ")?;
            } else if x.is_negative() {
                write!(f, "-")?;
            }
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "ζ^{i}")?,
                (_, false) => write!(f, "{mag}·ζ^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Operator sugar. Mixing fields is a programming error here, so these panic;
// the `checked_*` methods report it as a value instead.
macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CyclotomicScalar> for &CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $method(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
                self.$checked(rhs).expect("cyclotomic operands from different fields")
            }
        }
        impl $trait<CyclotomicScalar> for CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $method(self, rhs: CyclotomicScalar) -> CyclotomicScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CyclotomicScalar> for CyclotomicScalar {
            type Output = CyclotomicScalar;
            fn $method(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&CyclotomicScalar> for CyclotomicScalar {
    fn add_assign(&mut self, rhs: &CyclotomicScalar) {
        assert_eq!(self.p, rhs.p, "cyclotomic operands from different fields");
        for (a, b) in self.raw.iter_mut().zip(&rhs.raw) {
            *a += b;
        }
    }
}

impl Neg for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        CyclotomicScalar { p: self.p, raw: self.raw.iter().map(|c| -c).collect() }
    }
}

impl Neg for CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u32, k: i64) -> CyclotomicScalar {
        CyclotomicScalar::root_of_unity(p, k).unwrap()
    }

    #[test]
    fn roots_reduce_mod_p() {
        assert!(z(5, 0).is_one());
        assert_eq!(z(5, 7), z(5, 2));
        assert!((z(3, 1) * z(3, 2)).is_one());
        assert_eq!(z(5, -1), z(5, 4));
    }

    #[test]
    fn non_prime_rejected() {
        assert!(matches!(CyclotomicScalar::root_of_unity(4, 1), Err(Error::InvalidInput(_))));
        assert!(matches!(CyclotomicScalar::root_of_unity(1, 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn cyclotomic_relation_sums_to_zero() {
        for p in [2u32, 3, 5, 7] {
            let sum = (0..p as i64).fold(CyclotomicScalar::zero(p), |acc, k| acc + z(p, k));
            assert!(sum.is_zero(), "p={p}");
        }
    }

    #[test]
    fn canonical_form_drops_last_coefficient() {
        let x = z(5, 4);
        let c = x.coeffs();
        assert!(c[4].is_zero());
        assert!(c[..4].iter().all(|v| *v == -Rational::one()));
    }

    #[test]
    fn inverse_of_root() {
        assert_eq!(z(7, 3).inv().unwrap(), z(7, 4));
        assert_eq!(CyclotomicScalar::zero(7).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_of_dense_element() {
        let x = CyclotomicScalar::from_coeffs(5, &[rational(2, 1), rational(-1, 3), rational(0, 1), rational(5, 7)]);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn z3_trivial_character_projector_is_idempotent() {
        // Inside Q(ζ_3) the weighted sum collapses to 0, so v·v = v holds as 0·0 = 0.
        let third = rational(1, 3);
        let v = (z(3, 0) + z(3, 1) + z(3, 2)).scale(&third);
        assert_eq!(&v * &v, v);
        assert!(v.is_zero());
    }

    #[test]
    fn mismatched_fields_error() {
        let r = z(3, 1).checked_add(&z(5, 1));
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn phase_exponent_reads_roots() {
        assert_eq!(z(5, 3).phase_exponent(), Some(3));
        assert_eq!(z(5, 1).scale(&rational(2, 1)).phase_exponent(), None);
        assert_eq!((z(7, 5) * z(7, 4)).phase_exponent(), Some(2));
        assert_eq!(z(2, 1).phase_exponent(), Some(1));
        assert_eq!(CyclotomicScalar::zero(3).phase_exponent(), None);
    }

    #[test]
    fn norm_of_one_minus_zeta_is_p() {
        for p in [2u32, 3, 5, 7] {
            let x = z(p, 0) - z(p, 1);
            assert_eq!(x.norm(), rational(p as i64, 1));
        }
    }

    #[test]
    fn display() {
        assert_eq!(z(5, 0).to_string(), "1");
        assert_eq!(z(5, 2).to_string(), "ζ^2");
        assert_eq!(CyclotomicScalar::zero(3).to_string(), "0");
        assert_eq!(z(3, 2).to_string(), "-1 - ζ^1");
    }
}
