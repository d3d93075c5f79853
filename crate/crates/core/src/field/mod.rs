//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! A [`FieldElement`] is a residue in Q[x]/(Phi_N) where Phi_N is the N-th
//! cyclotomic polynomial, stored as a coefficient vector of big rationals of
//! length phi(N). Equality is decidable (coefficient-wise after reduction),
//! which is what lets every verification in this crate assert exact zeroes.
//!
//! Elements of Q(zeta_a) embed canonically into Q(zeta_b) whenever a | b;
//! mixed-conductor arithmetic performs that embedding automatically and
//! refuses anything else (see [`Error::ConductorMismatch`]).

pub mod roots;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with positive
/// denominator by `num`.
pub type Rational = num::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Euler totient.
pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

pub fn divisors(n: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

pub fn lcm_u32(a: u32, b: u32) -> u32 {
    (a as u64).lcm(&(b as u64)) as u32
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials
// ---------------------------------------------------------------------------

fn phi_cache() -> &'static Mutex<HashMap<u32, std::sync::Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, std::sync::Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Monic integer coefficients of Phi_N, index = degree. Computed by exact
/// division of x^N - 1 by the proper-divisor cyclotomics, memoized.
pub fn cyclotomic_polynomial(n: u32) -> std::sync::Arc<Vec<BigInt>> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // x^n - 1
        let mut num = vec![BigInt::zero(); n as usize + 1];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        for d in divisors(n) {
            if d < n {
                let phi_d = cyclotomic_polynomial(d);
                num = int_poly_div_exact(&num, &phi_d);
            }
        }
        num
    };
    debug_assert_eq!(poly.len(), euler_phi(n) + 1);
    let arc = std::sync::Arc::new(poly);
    phi_cache().lock().unwrap().insert(n, arc.clone());
    arc
}

/// Exact division of integer polynomials, divisor monic.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            for (i, dc) in den.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    quot
}

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

/// An exact element of Q(zeta_N).
///
/// Invariants: `coeffs.len() == phi(N)` and the vector is the fully reduced
/// residue modulo Phi_N. Rationals are in lowest terms with positive
/// denominator (maintained by `BigRational` itself).
#[derive(Clone)]
pub struct FieldElement {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl FieldElement {
    /// Build from an arbitrary coefficient vector (any length); reduces
    /// modulo Phi_N.
    pub fn new(conductor: u32, mut coeffs: Vec<Rational>) -> Self {
        assert!(conductor >= 1);
        reduce_mod_phi(&mut coeffs, conductor);
        FieldElement { conductor, coeffs }
    }

    pub fn zero(conductor: u32) -> Self {
        FieldElement {
            conductor,
            coeffs: vec![Rational::zero(); euler_phi(conductor)],
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational_in(conductor, Rational::one())
    }

    /// A rational constant viewed in Q(zeta_N).
    pub fn from_rational_in(conductor: u32, r: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); euler_phi(conductor)];
        coeffs[0] = r;
        // phi(N) >= 1 always; the constant never needs reduction
        FieldElement { conductor, coeffs }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_rational_in(1, r)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat_int(n))
    }

    /// zeta_N^k, k taken modulo N.
    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        assert!(conductor >= 1);
        let k = k.rem_euclid(conductor as i64) as usize;
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Self::new(conductor, coeffs)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Canonical embedding into Q(zeta_M); requires conductor | M.
    pub fn lift(&self, m: u32) -> Result<FieldElement> {
        if self.conductor == m {
            return Ok(self.clone());
        }
        if m % self.conductor != 0 {
            return Err(Error::ConductorMismatch(self.conductor, m));
        }
        let scale = (m / self.conductor) as usize;
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() * scale + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * scale] = c.clone();
            }
        }
        Ok(FieldElement::new(m, coeffs))
    }

    /// Lift both operands into the smaller field containing both, which must
    /// be one of the two (divisibility).
    pub fn unify(a: &FieldElement, b: &FieldElement) -> Result<(FieldElement, FieldElement)> {
        if a.conductor == b.conductor {
            Ok((a.clone(), b.clone()))
        } else if b.conductor % a.conductor == 0 {
            Ok((a.lift(b.conductor)?, b.clone()))
        } else if a.conductor % b.conductor == 0 {
            Ok((a.clone(), b.lift(a.conductor)?))
        } else {
            Err(Error::ConductorMismatch(a.conductor, b.conductor))
        }
    }

    fn unify_panic(a: &FieldElement, b: &FieldElement) -> (FieldElement, FieldElement) {
        Self::unify(a, b).expect("incompatible conductors; lift operands first")
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        let (a, b) = Self::unify(self, other)?;
        Ok(a.add_same(&b))
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        let (a, b) = Self::unify(self, other)?;
        Ok(a.sub_same(&b))
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        let (a, b) = Self::unify(self, other)?;
        Ok(a.mul_same(&b))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        let (a, b) = Self::unify(self, other)?;
        Ok(a.mul_same(&b.inverse()?))
    }

    fn add_same(&self, other: &FieldElement) -> FieldElement {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        FieldElement {
            conductor: self.conductor,
            coeffs,
        }
    }

    fn sub_same(&self, other: &FieldElement) -> FieldElement {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        FieldElement {
            conductor: self.conductor,
            coeffs,
        }
    }

    fn mul_same(&self, other: &FieldElement) -> FieldElement {
        if self.is_zero() || other.is_zero() {
            return FieldElement::zero(self.conductor);
        }
        let mut prod = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        FieldElement::new(self.conductor, prod)
    }

    pub fn scale(&self, r: &Rational) -> FieldElement {
        FieldElement {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// (self, Phi_N) over Q[x]; Phi_N is irreducible so any nonzero residue
    /// is a unit.
    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            let r = self.coeffs[0].recip();
            return Ok(FieldElement::from_rational_in(self.conductor, r));
        }
        let phi = cyclotomic_polynomial(self.conductor);
        let modulus: Vec<Rational> = phi.iter().map(|c| Rational::from(c.clone())).collect();
        let inv = poly_mod_inverse(&self.coeffs, &modulus).ok_or(Error::DivisionByZero)?;
        let out = FieldElement::new(self.conductor, inv);
        debug_assert!(out.mul_same(self).is_one());
        Ok(out)
    }

    pub fn pow(&self, exp: i64) -> Result<FieldElement> {
        if exp == 0 {
            return Ok(FieldElement::one(self.conductor));
        }
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = FieldElement::one(self.conductor);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&sq);
            }
            sq = sq.mul_same(&sq);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative order, or None if not a root of unity (bounded scan).
    pub fn multiplicative_order(&self, bound: u32) -> Option<u32> {
        let one = FieldElement::one(self.conductor);
        let mut p = self.clone();
        for k in 1..=bound {
            if p == one {
                return Some(k);
            }
            p = p.mul_same(self);
        }
        None
    }
}

fn reduce_mod_phi(coeffs: &mut Vec<Rational>, n: u32) {
    let deg = euler_phi(n);
    if coeffs.len() > deg {
        let phi = cyclotomic_polynomial(n);
        // remainder by the monic Phi_N
        for k in (deg..coeffs.len()).rev() {
            let c = coeffs[k].clone();
            if !c.is_zero() {
                coeffs[k] = Rational::zero();
                for (i, pc) in phi.iter().enumerate().take(deg) {
                    if !pc.is_zero() {
                        coeffs[k - deg + i] -= &c * &Rational::from(pc.clone());
                    }
                }
            }
        }
    }
    coeffs.resize(deg, Rational::zero());
}

/// Inverse of `a` modulo the monic polynomial `m` over Q, or None when
/// gcd(a, m) != 1.
fn poly_mod_inverse(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    // extended Euclid: r0 = m, r1 = a; track s with s*a = r (mod m)
    let mut r0: Vec<Rational> = m.to_vec();
    let mut r1: Vec<Rational> = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<Rational> = vec![];
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    // r0 = gcd (nonzero); invertible iff deg r0 == 0
    if r0.len() != 1 {
        return None;
    }
    let lead = r0[0].recip();
    Some(s0.iter().map(|c| c * &lead).collect())
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!den.is_empty());
    let mut rem: Vec<Rational> = num.to_vec();
    trim(&mut rem);
    if rem.len() < den.len() {
        return (vec![], rem);
    }
    let dd = den.len() - 1;
    let lead = den[dd].recip();
    let mut quot = vec![Rational::zero(); rem.len() - dd];
    for k in (0..=rem.len() - 1 - dd).rev() {
        let c = &rem[k + dd] * &lead;
        if !c.is_zero() {
            for (i, dc) in den.iter().enumerate() {
                let t = &c * dc;
                rem[k + i] -= t;
            }
        }
        quot[k] = c;
    }
    trim(&mut rem);
    (quot, rem)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        // compare inside the compositum
        let m = lcm_u32(self.conductor, other.conductor);
        match (self.lift(m), other.lift(m)) {
            (Ok(a), Ok(b)) => a.coeffs == b.coeffs,
            _ => false,
        }
    }
}

impl Eq for FieldElement {}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        let (a, b) = FieldElement::unify_panic(self, rhs);
        a.add_same(&b)
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        let (a, b) = FieldElement::unify_panic(self, rhs);
        a.sub_same(&b)
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let (a, b) = FieldElement::unify_panic(self, rhs);
        a.mul_same(&b)
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl std::ops::SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        if self.conductor == rhs.conductor {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                if k == 1 {
                    write!(f, "z{}", self.conductor)?;
                } else {
                    write!(f, "z{}^{}", self.conductor, k)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        let p = cyclotomic_polynomial(1);
        assert_eq!(*p, vec![BigInt::from(-1), BigInt::from(1)]);
        let p = cyclotomic_polynomial(4);
        assert_eq!(*p, vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]);
        let p = cyclotomic_polynomial(6);
        assert_eq!(*p, vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]);
        let p = cyclotomic_polynomial(12);
        assert_eq!(
            *p,
            vec![
                BigInt::from(1),
                BigInt::from(0),
                BigInt::from(-1),
                BigInt::from(0),
                BigInt::from(1)
            ]
        );
    }

    #[test]
    fn roots_of_unity() {
        // zeta_4^2 = -1
        let z = FieldElement::root_of_unity(4, 2);
        assert_eq!(z, FieldElement::from_int(-1));
        // conductor 1: everything is 1
        assert_eq!(FieldElement::root_of_unity(1, 5), FieldElement::from_int(1));
        // 1 + zeta_3 + zeta_3^2 = 0
        let a = FieldElement::root_of_unity(3, 1);
        let b = FieldElement::root_of_unity(3, 2);
        assert!((&(&a + &b) + &FieldElement::one(3)).is_zero());
        // zeta_3^1 + zeta_3^2 = -1 (the spec's add example)
        assert_eq!(&a + &b, FieldElement::from_int(-1));
    }

    #[test]
    fn order_of_primitive_root() {
        for n in [1u32, 2, 3, 4, 6, 8, 12] {
            let z = FieldElement::root_of_unity(n, 1);
            assert_eq!(z.multiplicative_order(2 * n + 1), Some(n.max(1)));
        }
    }

    #[test]
    fn mul_and_div() {
        let z8 = FieldElement::root_of_unity(8, 1);
        let z87 = FieldElement::root_of_unity(8, 7);
        assert!((&z8 * &z87).is_one());

        let half = FieldElement::from_int(1)
            .checked_div(&FieldElement::from_int(2))
            .unwrap();
        assert_eq!(half, FieldElement::from_rational(rat(1, 2)));

        // 1/(1 - zeta_3) = (2 + zeta_3)/3, checked by multiplying back
        let z3 = FieldElement::root_of_unity(3, 1);
        let d = &FieldElement::one(3) - &z3;
        let inv = d.inverse().unwrap();
        assert!((&inv * &d).is_one());
        let expected = FieldElement::new(3, vec![rat(2, 3), rat(1, 3)]);
        assert_eq!(inv, expected);
    }

    #[test]
    fn conductor_embedding() {
        let z3 = FieldElement::root_of_unity(3, 1);
        let z6 = FieldElement::root_of_unity(6, 1);
        // zeta_6^2 = zeta_3
        assert_eq!(z6.pow(2).unwrap(), z3.lift(6).unwrap());
        // mixed arithmetic embeds 3 | 6
        let s = z3.checked_add(&z6).unwrap();
        assert_eq!(s.conductor(), 6);
        // incompatible conductors refuse
        let z4 = FieldElement::root_of_unity(4, 1);
        assert!(matches!(
            z3.checked_add(&z4),
            Err(Error::ConductorMismatch(_, _))
        ));
        // but equality still decides through the compositum
        assert_ne!(z3, z4);
        assert_eq!(
            FieldElement::one(3).lift(3).unwrap(),
            FieldElement::one(4).lift(4).unwrap()
        );
    }

    #[test]
    fn zero_division() {
        let z = FieldElement::zero(5);
        assert!(matches!(z.inverse(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn phi_vanishes_on_root() {
        // Phi_N(zeta_N) = 0 under the arithmetic
        for n in [2u32, 3, 4, 5, 6, 8, 9, 12] {
            let z = FieldElement::root_of_unity(n, 1);
            let phi = cyclotomic_polynomial(n);
            let mut acc = FieldElement::zero(n);
            for (k, c) in phi.iter().enumerate() {
                let term = z
                    .pow(k as i64)
                    .unwrap()
                    .scale(&Rational::from(c.clone()));
                acc += &term;
            }
            assert!(acc.is_zero());
            // and zeta_N^N = 1
            assert!(z.pow(n as i64).unwrap().is_one());
        }
    }
}
