//! Root extraction in Q(zeta_N) by modular lifting.
//!
//! `roots_in_field` takes a squarefree monic polynomial with coefficients in
//! Q(zeta_N) and returns the roots that lie in the field. The search works
//! modulo a prime l = 1 (mod N): the field splits completely there, so each
//! of the phi(N) embeddings sends a field root to a residue root. Candidate
//! residue tuples are Hensel-lifted, reconstructed to rational coordinates,
//! and then verified by exact evaluation — a wrong guess can only cost time,
//! never correctness.

use num::bigint::BigInt;
use num::integer::Integer;
use num::traits::{One, Signed, Zero};

use super::{cyclotomic_polynomial, euler_phi, FieldElement, Rational};
use crate::error::{Error, Result};

/// Cap on residue-tuple combinations; beyond this the caller should treat
/// the polynomial as unsplit and report it.
const TUPLE_CAP: u64 = 100_000;

/// All roots of `p` (coefficients in Q(zeta_N), highest degree last, leading
/// coefficient nonzero) that lie in Q(zeta_N). `p` must be squarefree.
pub fn roots_in_field(p: &[FieldElement], conductor: u32) -> Result<Vec<FieldElement>> {
    let mut p: Vec<FieldElement> = p
        .iter()
        .map(|c| c.lift(conductor))
        .collect::<Result<_>>()?;
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    if p.len() < 2 {
        return Ok(vec![]);
    }
    // normalize monic
    let lead_inv = p.last().unwrap().inverse()?;
    for c in p.iter_mut() {
        *c = &*c * &lead_inv;
    }
    let deg = p.len() - 1;
    if deg == 1 {
        return Ok(vec![-&p[0]]);
    }

    let phi_deg = euler_phi(conductor);
    let ell = find_prime(conductor, &p)?;

    // roots of Phi_N mod l (all phi(N) of them; l = 1 mod N splits)
    let phi_poly: Vec<BigInt> = cyclotomic_polynomial(conductor).to_vec();
    let mut omegas: Vec<BigInt> = Vec::new();
    for t in 0..ell {
        let tv = BigInt::from(t);
        if eval_int_poly_mod(&phi_poly, &tv, &BigInt::from(ell)).is_zero() {
            omegas.push(tv);
        }
    }
    if omegas.len() != phi_deg {
        return Err(Error::SplitFailed(format!(
            "Phi_{conductor} did not split mod {ell}"
        )));
    }

    // residue roots of p under each embedding, at precision l
    let lb = BigInt::from(ell);
    let mut root_sets: Vec<Vec<BigInt>> = Vec::with_capacity(phi_deg);
    for w in &omegas {
        let pc = embed_poly(&p, w, &lb);
        let mut rs = Vec::new();
        for t in 0..ell {
            let tv = BigInt::from(t);
            if eval_int_poly_mod(&pc, &tv, &lb).is_zero() {
                rs.push(tv);
            }
        }
        root_sets.push(rs);
    }
    let combos: u64 = root_sets
        .iter()
        .map(|r| r.len() as u64)
        .try_fold(1u64, |a, b| a.checked_mul(b))
        .unwrap_or(u64::MAX);
    if combos == 0 {
        return Ok(vec![]);
    }
    if combos > TUPLE_CAP {
        return Err(Error::SplitFailed(format!(
            "{combos} residue combinations exceed the search cap"
        )));
    }

    // Hensel ladder. Two escalating precision targets; reconstruction of the
    // desk-scale coefficients in this crate succeeds at the first.
    let mut found: Vec<FieldElement> = Vec::new();
    for target_bits in [640u64, 2560] {
        let mut k = 1u32;
        let mut modulus = lb.clone();
        let mut ws = omegas.clone();
        let mut rs = root_sets.clone();
        while modulus.bits() < target_bits {
            let next = &modulus * &modulus;
            k *= 2;
            for w in ws.iter_mut() {
                *w = newton_step_int(&phi_poly, w, &next)?;
            }
            for (a, w) in ws.iter().enumerate() {
                let pc = embed_poly(&p, w, &next);
                for r in rs[a].iter_mut() {
                    *r = newton_step_embedded(&pc, r, &next)?;
                }
            }
            modulus = next;
        }
        let _ = k;

        // Vandermonde (w_a^j) over Z/modulus, inverted once.
        let vinv = invert_vandermonde(&ws, &modulus)?;

        let mut idx = vec![0usize; phi_deg];
        'tuples: loop {
            let tuple: Vec<BigInt> = idx
                .iter()
                .enumerate()
                .map(|(a, &i)| rs[a][i].clone())
                .collect();
            if let Some(cand) = reconstruct_candidate(&vinv, &tuple, &modulus, conductor) {
                if eval_field_poly(&p, &cand).is_zero() && !found.contains(&cand) {
                    found.push(cand);
                }
            }
            // advance mixed-radix counter
            for a in 0..phi_deg {
                idx[a] += 1;
                if idx[a] < rs[a].len() {
                    continue 'tuples;
                }
                idx[a] = 0;
            }
            break;
        }
        if found.len() == deg {
            break;
        }
    }
    Ok(found)
}

fn find_prime(conductor: u32, p: &[FieldElement]) -> Result<u64> {
    let n = conductor as u64;
    let mut ell = n + 1;
    let mut tries = 0;
    loop {
        if ell % n == 1 % n && is_prime(ell) && prime_is_good(ell, p) {
            return Ok(ell);
        }
        ell += 1;
        tries += 1;
        if tries > 2_000_000 {
            return Err(Error::SplitFailed("no usable prime found".into()));
        }
    }
}

/// The prime must not divide any coefficient denominator, and p must stay
/// squarefree under every embedding (checked later implicitly by Newton,
/// but cheap to pre-screen via the first embedding's derivative gcd).
fn prime_is_good(ell: u64, p: &[FieldElement]) -> bool {
    let lb = BigInt::from(ell);
    for c in p {
        for r in c.coeffs() {
            if (r.denom() % &lb).is_zero() {
                return false;
            }
        }
    }
    true
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn modp(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

fn mod_inv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(modp(&e.x, m))
    } else {
        None
    }
}

fn eval_int_poly_mod(p: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = modp(&(&acc * x + c), m);
    }
    acc
}

fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// One Newton refinement of a simple root, valid when the previous value was
/// correct modulo the square root of `m`.
fn newton_step_int(p: &[BigInt], x: &BigInt, m: &BigInt) -> Result<BigInt> {
    let fx = eval_int_poly_mod(p, x, m);
    let dfx = eval_int_poly_mod(&derivative(p), x, m);
    let inv = mod_inv(&dfx, m)
        .ok_or_else(|| Error::SplitFailed("derivative not invertible during lift".into()))?;
    Ok(modp(&(x - fx * inv), m))
}

fn newton_step_embedded(p: &[BigInt], x: &BigInt, m: &BigInt) -> Result<BigInt> {
    newton_step_int(p, x, m)
}

/// Coefficients of p pushed through zeta |-> w, as residues mod m.
fn embed_poly(p: &[FieldElement], w: &BigInt, m: &BigInt) -> Vec<BigInt> {
    p.iter().map(|c| embed_coeff(c, w, m)).collect()
}

fn embed_coeff(c: &FieldElement, w: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut wp = BigInt::one();
    for r in c.coeffs() {
        if !r.numer().is_zero() {
            let dinv = mod_inv(&modp(r.denom(), m), m).expect("prime divides a denominator");
            acc += modp(&(modp(r.numer(), m) * dinv), m) * &wp;
            acc = modp(&acc, m);
        }
        wp = modp(&(&wp * w), m);
    }
    acc
}

/// Inverse of the phi(N) x phi(N) matrix (w_a^j) modulo m; invertible since
/// the w_a stay distinct mod l.
fn invert_vandermonde(ws: &[BigInt], m: &BigInt) -> Result<Vec<Vec<BigInt>>> {
    let n = ws.len();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = Vec::with_capacity(2 * n);
            let mut wp = BigInt::one();
            for _ in 0..n {
                row.push(wp.clone());
                wp = modp(&(&wp * &ws[i]), m);
            }
            for j in 0..n {
                row.push(if i == j { BigInt::one() } else { BigInt::zero() });
            }
            row
        })
        .collect();
    for col in 0..n {
        // pivot on a unit
        let piv = (col..n)
            .find(|&r| mod_inv(&a[r][col], m).is_some())
            .ok_or_else(|| Error::SplitFailed("Vandermonde not invertible".into()))?;
        a.swap(col, piv);
        let inv = mod_inv(&a[col][col], m).unwrap();
        for j in 0..2 * n {
            a[col][j] = modp(&(&a[col][j] * &inv), m);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..2 * n {
                    let t = &a[r][j] - &f * &a[col][j];
                    a[r][j] = modp(&t, m);
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[ws.len()..].to_vec()).collect())
}

fn reconstruct_candidate(
    vinv: &[Vec<BigInt>],
    tuple: &[BigInt],
    m: &BigInt,
    conductor: u32,
) -> Option<FieldElement> {
    let n = tuple.len();
    let mut coords = Vec::with_capacity(n);
    for row in vinv {
        let mut acc = BigInt::zero();
        for (c, t) in row.iter().zip(tuple) {
            acc += c * t;
        }
        coords.push(modp(&acc, m));
    }
    let mut rat_coords: Vec<Rational> = Vec::with_capacity(n);
    for u in &coords {
        rat_coords.push(rational_reconstruct(u, m)?);
    }
    Some(FieldElement::new(conductor, rat_coords))
}

/// Recover p/q from its residue mod m with |p|, |q| <= sqrt(m/2), by the
/// usual half-extended Euclid on (m, u).
fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let mut r0 = m.clone();
    let mut r1 = modp(u, m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r);
        let t = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let (num, den) = if t1.is_negative() {
        (-r1, -t1)
    } else {
        (r1, t1)
    };
    // sanity: den * u = num (mod m)
    if !modp(&(&den * u - &num), m).is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

fn eval_field_poly(p: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = FieldElement::zero(x.conductor());
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn rational_roots() {
        // t^2 - t over Q: roots 0, 1
        let p = vec![fe(0), fe(-1), fe(1)];
        let mut r = roots_in_field(&p, 1).unwrap();
        r.sort_by_key(|x| x.to_rational().unwrap());
        assert_eq!(r, vec![fe(0), fe(1)]);

        // t^2 - 1/4: roots +-1/2
        let p = vec![
            FieldElement::from_rational(rat(-1, 4)),
            fe(0),
            fe(1),
        ];
        let r = roots_in_field(&p, 1).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&FieldElement::from_rational(rat(1, 2))));
    }

    #[test]
    fn cyclotomic_roots() {
        // t^3 - 1 over Q(zeta_3): all three cube roots of unity
        let p = vec![fe(-1), fe(0), fe(0), fe(1)];
        let r = roots_in_field(&p, 3).unwrap();
        assert_eq!(r.len(), 3);
        for k in 0..3 {
            assert!(r.contains(&FieldElement::root_of_unity(3, k)));
        }
        // t^2 + 1 has no roots over Q(zeta_3)...
        let p = vec![fe(1), fe(0), fe(1)];
        assert!(roots_in_field(&p, 3).unwrap().is_empty());
        // ...but splits over Q(zeta_4)
        let r = roots_in_field(&p, 4).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&FieldElement::root_of_unity(4, 1)));
    }

    #[test]
    fn sqrt_two_in_q8() {
        // t^2 - 2 splits over Q(zeta_8): sqrt(2) = zeta_8 + zeta_8^-1
        let p = vec![fe(-2), fe(0), fe(1)];
        assert!(roots_in_field(&p, 4).unwrap().is_empty());
        let r = roots_in_field(&p, 8).unwrap();
        assert_eq!(r.len(), 2);
        let z = FieldElement::root_of_unity(8, 1);
        let s = &z + &z.pow(-1).unwrap();
        assert!(r.contains(&s));
    }

    #[test]
    fn nonmonic_and_field_coefficients() {
        // (t - zeta_4)(t + 2) * 3 over Q(zeta_4)
        let z = FieldElement::root_of_unity(4, 1);
        let three = fe(3);
        let c0 = &(&-&z * &fe(2)) * &three;
        let c1 = &(&fe(2) - &z) * &three;
        let p = vec![c0, c1, three];
        let r = roots_in_field(&p, 4).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&z));
        assert!(r.contains(&fe(-2)));
    }
}
