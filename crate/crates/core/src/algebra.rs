//! Finite-dimensional associative algebras presented by structure constants,
//! and elements of A, A (x) B, A (x) B (x) C as dense coefficient tensors.
//!
//! The structure-constant tensor is stored flat with row-major index
//! (i, j, k) -> (i*d + j)*d + k, meaning e_i * e_j = sum_k m[i][j][k] e_k.
//! Tensor coefficients use the same convention, so index arithmetic is one
//! shared idiom across the crate.

use crate::check::Check;
use crate::error::{Error, Result};
use crate::field::{lcm_u32, FieldElement};
use crate::linalg::{vec_is_zero, Matrix, Vector};

/// Coefficient vector of an algebra element in the algebra's basis.
pub type Element = Vector;

#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    dim: usize,
    conductor: u32,
    labels: Vec<String>,
    unit: Element,
    /// flat d^3 structure constants
    mul: Vec<FieldElement>,
}

impl FiniteAlgebra {
    pub fn new(
        dim: usize,
        conductor: u32,
        labels: Vec<String>,
        unit: Element,
        mul: Vec<FieldElement>,
    ) -> Self {
        assert_eq!(unit.len(), dim);
        assert_eq!(mul.len(), dim * dim * dim);
        assert_eq!(labels.len(), dim);
        let conductor = mul
            .iter()
            .chain(unit.iter())
            .fold(conductor, |c, e| lcm_u32(c, e.conductor()));
        let unit = unit.into_iter().map(|e| e.lift(conductor).unwrap()).collect();
        let mul = mul.into_iter().map(|e| e.lift(conductor).unwrap()).collect();
        FiniteAlgebra {
            dim,
            conductor,
            labels,
            unit,
            mul,
        }
    }

    pub fn default_labels(dim: usize) -> Vec<String> {
        (0..dim).map(|i| format!("e{i}")).collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Element {
        &self.unit
    }

    pub fn mul_table(&self) -> &[FieldElement] {
        &self.mul
    }

    /// The coefficient vector of e_i * e_j.
    pub fn basis_product(&self, i: usize, j: usize) -> &[FieldElement] {
        let d = self.dim;
        &self.mul[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn zero(&self) -> Element {
        vec![FieldElement::zero(self.conductor); self.dim]
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = self.zero();
        v[i] = FieldElement::one(self.conductor);
        v
    }

    pub fn scalar(&self, c: &FieldElement) -> Element {
        let mut v = self.zero();
        for (o, u) in v.iter_mut().zip(&self.unit) {
            *o = c * u;
        }
        v
    }

    pub fn multiply(&self, u: &Element, v: &Element) -> Element {
        assert_eq!(u.len(), self.dim, "element does not belong to this algebra");
        assert_eq!(v.len(), self.dim, "element does not belong to this algebra");
        let mut out = self.zero();
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, m) in self.basis_product(i, j).iter().enumerate() {
                    if !m.is_zero() {
                        out[k] += &(&ab * m);
                    }
                }
            }
        }
        out
    }

    pub fn power(&self, u: &Element, n: usize) -> Element {
        let mut acc = self.unit.clone();
        for _ in 0..n {
            acc = self.multiply(&acc, u);
        }
        acc
    }

    /// Matrix of left multiplication by u (columns are u * e_j).
    pub fn left_mult_matrix(&self, u: &Element) -> Matrix {
        let mut m = Matrix::zero(self.dim, self.dim, self.conductor);
        for j in 0..self.dim {
            let col = self.multiply(u, &self.basis_element(j));
            for (i, c) in col.into_iter().enumerate() {
                if !c.is_zero() {
                    m.set(i, j, c);
                }
            }
        }
        m
    }

    /// Matrix of right multiplication by u (columns are e_j * u).
    pub fn right_mult_matrix(&self, u: &Element) -> Matrix {
        let mut m = Matrix::zero(self.dim, self.dim, self.conductor);
        for j in 0..self.dim {
            let col = self.multiply(&self.basis_element(j), u);
            for (i, c) in col.into_iter().enumerate() {
                if !c.is_zero() {
                    m.set(i, j, c);
                }
            }
        }
        m
    }

    /// Two-sided inverse, found by solving L_u x = 1 and verifying the right
    /// inverse explicitly.
    pub fn invert(&self, u: &Element) -> Result<Element> {
        let lu = self.left_mult_matrix(u);
        let rhs = Matrix::from_rows(vec![self.unit.clone()]).transpose();
        let sol = lu.solve(&rhs).map_err(|_| Error::NotInvertible)?;
        let inv = sol.particular.col_vec(0);
        let left = self.multiply(u, &inv);
        let right = self.multiply(&inv, u);
        if left != self.unit || right != self.unit {
            return Err(Error::NotInvertible);
        }
        Ok(inv)
    }

    pub fn is_commutative(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..i {
                if self.basis_product(i, j) != self.basis_product(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Associativity on all basis triples plus the unit law.
    pub fn check_algebra(&self) -> Vec<Check> {
        let mut checks = Vec::new();
        let mut assoc_fail = None;
        'outer: for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..self.dim {
                    let jk = self.basis_product(j, k).to_vec();
                    let lhs = self.multiply(&ij, &self.basis_element(k));
                    let rhs = self.multiply(&self.basis_element(i), &jk);
                    if lhs != rhs {
                        assoc_fail = Some(format!(
                            "({}*{})*{} != {}*({}*{})",
                            self.labels[i],
                            self.labels[j],
                            self.labels[k],
                            self.labels[i],
                            self.labels[j],
                            self.labels[k]
                        ));
                        break 'outer;
                    }
                }
            }
        }
        checks.push(Check::of("associativity", "assoc", assoc_fail.is_none(), || {
            assoc_fail.unwrap()
        }));
        let unit_ok = (0..self.dim).all(|i| {
            let e = self.basis_element(i);
            self.multiply(&self.unit, &e) == e && self.multiply(&e, &self.unit) == e
        });
        checks.push(Check::of("unit-law", "unit", unit_ok, || {
            "unit * e_i != e_i for some basis element".into()
        }));
        checks
    }

    /// Lift every coefficient into Q(zeta_M); conductor must divide M.
    pub fn lift(&self, m: u32) -> Result<FiniteAlgebra> {
        Ok(FiniteAlgebra {
            dim: self.dim,
            conductor: m,
            labels: self.labels.clone(),
            unit: self.unit.iter().map(|e| e.lift(m)).collect::<Result<_>>()?,
            mul: self.mul.iter().map(|e| e.lift(m)).collect::<Result<_>>()?,
        })
    }

    pub fn display_element(&self, u: &Element) -> String {
        let mut parts = Vec::new();
        for (i, c) in u.iter().enumerate() {
            if !c.is_zero() {
                if c.is_one() {
                    parts.push(self.labels[i].clone());
                } else {
                    parts.push(format!("({})*{}", c, self.labels[i]));
                }
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

// ---------------------------------------------------------------------------
// Tensors
// ---------------------------------------------------------------------------

/// Element of A (x) B as a dense d1 x d2 coefficient array, index i*d2 + j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor2 {
    pub d1: usize,
    pub d2: usize,
    pub c: Vec<FieldElement>,
}

/// Element of A (x) B (x) C, flat index (i*d2 + j)*d3 + k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor3 {
    pub d1: usize,
    pub d2: usize,
    pub d3: usize,
    pub c: Vec<FieldElement>,
}

impl Tensor2 {
    pub fn zero(d1: usize, d2: usize, conductor: u32) -> Self {
        Tensor2 {
            d1,
            d2,
            c: vec![FieldElement::zero(conductor); d1 * d2],
        }
    }

    pub fn from_flat(d1: usize, d2: usize, c: Vec<FieldElement>) -> Self {
        assert_eq!(c.len(), d1 * d2);
        Tensor2 { d1, d2, c }
    }

    /// u (x) v.
    pub fn outer(u: &[FieldElement], v: &[FieldElement]) -> Self {
        let conductor = u
            .iter()
            .chain(v.iter())
            .fold(1, |c, e| lcm_u32(c, e.conductor()));
        let mut t = Self::zero(u.len(), v.len(), conductor);
        for (i, a) in u.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if !b.is_zero() {
                    t.c[i * v.len() + j] = a * b;
                }
            }
        }
        t
    }

    pub fn unit(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Self {
        Self::outer(a.unit(), b.unit())
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.c[i * self.d2 + j]
    }

    pub fn add(&self, other: &Tensor2) -> Tensor2 {
        assert_eq!((self.d1, self.d2), (other.d1, other.d2));
        let mut out = self.clone();
        for (a, b) in out.c.iter_mut().zip(&other.c) {
            *a = &*a + b;
        }
        out
    }

    pub fn sub(&self, other: &Tensor2) -> Tensor2 {
        assert_eq!((self.d1, self.d2), (other.d1, other.d2));
        let mut out = self.clone();
        for (a, b) in out.c.iter_mut().zip(&other.c) {
            *a = &*a - b;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|e| e.is_zero())
    }

    /// Product in A (x) B.
    pub fn mul(&self, other: &Tensor2, a: &FiniteAlgebra, b: &FiniteAlgebra) -> Tensor2 {
        assert_eq!((self.d1, self.d2), (a.dim(), b.dim()));
        assert_eq!((other.d1, other.d2), (a.dim(), b.dim()));
        let conductor = lcm_u32(a.conductor(), b.conductor());
        let mut out = Tensor2::zero(self.d1, self.d2, conductor);
        for i1 in 0..self.d1 {
            for i2 in 0..self.d2 {
                let u = self.get(i1, i2);
                if u.is_zero() {
                    continue;
                }
                for j1 in 0..other.d1 {
                    let m1 = a.basis_product(i1, j1);
                    if m1.iter().all(|e| e.is_zero()) {
                        continue;
                    }
                    for j2 in 0..other.d2 {
                        let v = other.get(j1, j2);
                        if v.is_zero() {
                            continue;
                        }
                        let uv = u * v;
                        let m2 = b.basis_product(i2, j2);
                        for (k1, c1) in m1.iter().enumerate() {
                            if c1.is_zero() {
                                continue;
                            }
                            let uvc1 = &uv * c1;
                            for (k2, c2) in m2.iter().enumerate() {
                                if !c2.is_zero() {
                                    out.c[k1 * self.d2 + k2] += &(&uvc1 * c2);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Inverse in A (x) B, verified on both sides.
    pub fn invert(&self, a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Tensor2> {
        let n = self.d1 * self.d2;
        let conductor = lcm_u32(a.conductor(), b.conductor());
        // left-multiplication matrix of self on the tensor square
        let mut lm = Matrix::zero(n, n, conductor);
        for j1 in 0..self.d1 {
            for j2 in 0..self.d2 {
                // column (j1, j2) = self * (e_j1 (x) e_j2)
                for i1 in 0..self.d1 {
                    for i2 in 0..self.d2 {
                        let u = self.get(i1, i2);
                        if u.is_zero() {
                            continue;
                        }
                        let m1 = a.basis_product(i1, j1);
                        let m2 = b.basis_product(i2, j2);
                        for (k1, c1) in m1.iter().enumerate() {
                            if c1.is_zero() {
                                continue;
                            }
                            let uc1 = u * c1;
                            for (k2, c2) in m2.iter().enumerate() {
                                if !c2.is_zero() {
                                    let idx = k1 * self.d2 + k2;
                                    let cur = lm.get(idx, j1 * self.d2 + j2).clone();
                                    lm.set(idx, j1 * self.d2 + j2, &cur + &(&uc1 * c2));
                                }
                            }
                        }
                    }
                }
            }
        }
        let unit = Tensor2::unit(a, b);
        let rhs = Matrix::from_rows(vec![unit.c.clone()]).transpose();
        let sol = lm.solve(&rhs).map_err(|_| Error::NotInvertible)?;
        let inv = Tensor2::from_flat(self.d1, self.d2, sol.particular.col_vec(0));
        if inv.mul(self, a, b) != unit || self.mul(&inv, a, b) != unit {
            return Err(Error::NotInvertible);
        }
        Ok(inv)
    }

    /// First nonzero coordinate, for failure reports.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &FieldElement)> {
        self.c
            .iter()
            .enumerate()
            .find(|(_, e)| !e.is_zero())
            .map(|(idx, e)| (idx / self.d2, idx % self.d2, e))
    }
}

impl Tensor3 {
    pub fn zero(d1: usize, d2: usize, d3: usize, conductor: u32) -> Self {
        Tensor3 {
            d1,
            d2,
            d3,
            c: vec![FieldElement::zero(conductor); d1 * d2 * d3],
        }
    }

    pub fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.d2 + j) * self.d3 + k
    }

    pub fn add_assign(&mut self, other: &Tensor3) {
        assert_eq!((self.d1, self.d2, self.d3), (other.d1, other.d2, other.d3));
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            *a += b;
        }
    }

    pub fn sub(&self, other: &Tensor3) -> Tensor3 {
        assert_eq!((self.d1, self.d2, self.d3), (other.d1, other.d2, other.d3));
        let mut out = self.clone();
        for (a, b) in out.c.iter_mut().zip(&other.c) {
            *a = &*a - b;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|e| e.is_zero())
    }

    /// Product in A (x) B (x) C.
    pub fn mul(
        &self,
        other: &Tensor3,
        a: &FiniteAlgebra,
        b: &FiniteAlgebra,
        c3: &FiniteAlgebra,
    ) -> Tensor3 {
        let conductor = lcm_u32(lcm_u32(a.conductor(), b.conductor()), c3.conductor());
        let mut out = Tensor3::zero(self.d1, self.d2, self.d3, conductor);
        let nz_self: Vec<(usize, usize, usize)> = iter_nonzero3(self);
        let nz_other: Vec<(usize, usize, usize)> = iter_nonzero3(other);
        for &(i1, i2, i3) in &nz_self {
            let u = &self.c[self.idx(i1, i2, i3)];
            for &(j1, j2, j3) in &nz_other {
                let v = &other.c[other.idx(j1, j2, j3)];
                let uv = u * v;
                let m1 = a.basis_product(i1, j1);
                let m2 = b.basis_product(i2, j2);
                let m3 = c3.basis_product(i3, j3);
                for (k1, c1) in m1.iter().enumerate() {
                    if c1.is_zero() {
                        continue;
                    }
                    let s1 = &uv * c1;
                    for (k2, c2) in m2.iter().enumerate() {
                        if c2.is_zero() {
                            continue;
                        }
                        let s2 = &s1 * c2;
                        for (k3, cc) in m3.iter().enumerate() {
                            if !cc.is_zero() {
                                let idx = out.idx(k1, k2, k3);
                                out.c[idx] += &(&s2 * cc);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize, usize, &FieldElement)> {
        self.c.iter().enumerate().find(|(_, e)| !e.is_zero()).map(|(idx, e)| {
            let k = idx % self.d3;
            let j = (idx / self.d3) % self.d2;
            let i = idx / (self.d2 * self.d3);
            (i, j, k, e)
        })
    }
}

fn iter_nonzero3(t: &Tensor3) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..t.d1 {
        for j in 0..t.d2 {
            for k in 0..t.d3 {
                if !t.c[t.idx(i, j, k)].is_zero() {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

/// (Delta (x) id): expand the first leg of a Tensor2 with the comultiplication
/// matrix (d^2 x d) of the algebra owning that leg.
pub fn comult_leg1(t: &Tensor2, delta: &Matrix) -> Tensor3 {
    let d = t.d1;
    assert_eq!(delta.cols(), d);
    assert_eq!(delta.rows(), d * d);
    let conductor = lcm_u32(delta.conductor(), 1);
    let mut out = Tensor3::zero(d, d, t.d2, conductor);
    for i in 0..t.d1 {
        for j in 0..t.d2 {
            let v = t.get(i, j);
            if v.is_zero() {
                continue;
            }
            for a in 0..d {
                for b in 0..d {
                    let dc = delta.get(a * d + b, i);
                    if !dc.is_zero() {
                        let idx = out.idx(a, b, j);
                        out.c[idx] += &(dc * v);
                    }
                }
            }
        }
    }
    out
}

/// (id (x) Delta): expand the second leg.
pub fn comult_leg2(t: &Tensor2, delta: &Matrix) -> Tensor3 {
    let d = t.d2;
    assert_eq!(delta.cols(), d);
    assert_eq!(delta.rows(), d * d);
    let mut out = Tensor3::zero(t.d1, d, d, delta.conductor());
    for i in 0..t.d1 {
        for j in 0..t.d2 {
            let v = t.get(i, j);
            if v.is_zero() {
                continue;
            }
            for a in 0..d {
                for b in 0..d {
                    let dc = delta.get(a * d + b, j);
                    if !dc.is_zero() {
                        let idx = out.idx(i, a, b);
                        out.c[idx] += &(dc * v);
                    }
                }
            }
        }
    }
    out
}

/// (eps (x) id): contract the first leg with the counit row vector (1 x d).
pub fn counit_leg1(t: &Tensor2, eps: &Matrix) -> Vector {
    assert_eq!(eps.rows(), 1);
    assert_eq!(eps.cols(), t.d1);
    let mut out = vec![FieldElement::zero(eps.conductor()); t.d2];
    for i in 0..t.d1 {
        let e = eps.get(0, i);
        if e.is_zero() {
            continue;
        }
        for j in 0..t.d2 {
            let v = t.get(i, j);
            if !v.is_zero() {
                out[j] += &(e * v);
            }
        }
    }
    out
}

/// (id (x) eps): contract the second leg.
pub fn counit_leg2(t: &Tensor2, eps: &Matrix) -> Vector {
    assert_eq!(eps.rows(), 1);
    assert_eq!(eps.cols(), t.d2);
    let mut out = vec![FieldElement::zero(eps.conductor()); t.d1];
    for j in 0..t.d2 {
        let e = eps.get(0, j);
        if e.is_zero() {
            continue;
        }
        for i in 0..t.d1 {
            let v = t.get(i, j);
            if !v.is_zero() {
                out[i] += &(e * v);
            }
        }
    }
    out
}

/// Tensor2 (x) Element -> Tensor3 (used for J (x) P_mu).
pub fn t2_outer_element(t: &Tensor2, u: &[FieldElement]) -> Tensor3 {
    let conductor = u.iter().fold(1, |c, e| lcm_u32(c, e.conductor()));
    let mut out = Tensor3::zero(t.d1, t.d2, u.len(), conductor);
    for i in 0..t.d1 {
        for j in 0..t.d2 {
            let v = t.get(i, j);
            if v.is_zero() {
                continue;
            }
            for (k, c) in u.iter().enumerate() {
                if !c.is_zero() {
                    let idx = out.idx(i, j, k);
                    out.c[idx] = v * c;
                }
            }
        }
    }
    out
}

/// Element (x) Tensor2 -> Tensor3 (used for 1 (x) J).
pub fn element_outer_t2(u: &[FieldElement], t: &Tensor2) -> Tensor3 {
    let conductor = u.iter().fold(1, |c, e| lcm_u32(c, e.conductor()));
    let mut out = Tensor3::zero(u.len(), t.d1, t.d2, conductor);
    for (i, c) in u.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for j in 0..t.d1 {
            for k in 0..t.d2 {
                let v = t.get(j, k);
                if !v.is_zero() {
                    let idx = out.idx(i, j, k);
                    out.c[idx] = c * v;
                }
            }
        }
    }
    out
}

/// Apply a matrix to an element coefficient vector (alias for readability
/// where the matrix is a structural map like Delta or S).
pub fn apply_map(m: &Matrix, v: &[FieldElement]) -> Vector {
    m.mul_vec(v)
}

/// Element -> Tensor2 through the comultiplication matrix.
pub fn delta_of(delta: &Matrix, v: &[FieldElement], d: usize) -> Tensor2 {
    let out = delta.mul_vec(v);
    Tensor2::from_flat(d, d, out)
}

pub fn element_eq(a: &[FieldElement], b: &[FieldElement]) -> bool {
    a.len() == b.len() && vec_is_zero(&crate::linalg::vec_sub(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat_int;

    /// k[Z_2]: basis {1, a}, a^2 = 1.
    fn kz2() -> FiniteAlgebra {
        let one = FieldElement::one(1);
        let zero = FieldElement::zero(1);
        let mut mul = vec![zero.clone(); 8];
        // (i*2+j)*2+k
        mul[0] = one.clone(); // 1*1 = 1
        mul[(1) * 2 + 1] = one.clone(); // 1*a = a
        mul[(2) * 2 + 1] = one.clone(); // a*1 = a
        mul[(3) * 2] = one.clone(); // a*a = 1
        FiniteAlgebra::new(
            2,
            1,
            vec!["1".into(), "a".into()],
            vec![one, zero],
            mul,
        )
    }

    #[test]
    fn unit_and_assoc() {
        let a = kz2();
        crate::check::assert_all_pass(&a.check_algebra());
        let x = a.basis_element(1);
        assert_eq!(a.multiply(&a.unit().clone(), &x), x);
    }

    #[test]
    fn invert_in_group_algebra() {
        let a = kz2();
        // (1 + a)/2 is idempotent, not invertible; 1 + a/2 is invertible
        let u = vec![
            FieldElement::one(1),
            FieldElement::from_rational(crate::field::rat(1, 2)),
        ];
        let inv = a.invert(&u).unwrap();
        assert_eq!(a.multiply(&u, &inv), *a.unit());
        let p = vec![
            FieldElement::from_rational(crate::field::rat(1, 2)),
            FieldElement::from_rational(crate::field::rat(1, 2)),
        ];
        assert!(matches!(a.invert(&p), Err(Error::NotInvertible)));
    }

    #[test]
    fn tensor_square_products() {
        let a = kz2();
        let unit = Tensor2::unit(&a, &a);
        let t = Tensor2::outer(&a.basis_element(1), &a.basis_element(0));
        assert_eq!(unit.mul(&t, &a, &a), t);
        // (a (x) a)^2 = 1 (x) 1
        let aa = Tensor2::outer(&a.basis_element(1), &a.basis_element(1));
        assert_eq!(aa.mul(&aa, &a, &a), unit);
        let inv = aa.invert(&a, &a).unwrap();
        assert_eq!(inv, aa);
    }

    #[test]
    fn scalar_embeds_via_unit() {
        let a = kz2();
        let two = a.scalar(&FieldElement::from_rational(rat_int(2)));
        assert_eq!(a.multiply(&two, &a.basis_element(1)), {
            let mut v = a.zero();
            v[1] = FieldElement::from_int(2);
            v
        });
    }
}
