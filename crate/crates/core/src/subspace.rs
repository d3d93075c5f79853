//! Subspaces of a coordinate space, kept in reduced echelon form so that
//! equality of subspaces is equality of basis matrices.

use crate::field::{lcm_u32, FieldElement};
use crate::linalg::{vec_is_zero, Matrix, Vector};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    /// RREF basis, one vector per row, no zero rows.
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize, conductor: u32) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zero(0, ambient, conductor),
        }
    }

    pub fn full(ambient: usize, conductor: u32) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient, conductor),
        }
    }

    pub fn from_rows(ambient: usize, rows: Vec<Vector>) -> Self {
        let conductor = rows
            .iter()
            .flatten()
            .fold(1, |c, e| lcm_u32(c, e.conductor()));
        let nonzero: Vec<Vector> = rows.into_iter().filter(|r| !vec_is_zero(r)).collect();
        if nonzero.is_empty() {
            return Self::zero(ambient, conductor);
        }
        for r in &nonzero {
            assert_eq!(r.len(), ambient, "spanning vector has wrong length");
        }
        let (r, pivots) = Matrix::from_rows(nonzero).rref();
        let basis = Matrix::from_fn(pivots.len(), ambient, r.conductor(), |i, j| {
            r.get(i, j).clone()
        });
        Subspace { ambient, basis }
    }

    pub fn from_matrix_rows(m: &Matrix) -> Self {
        Self::from_rows(m.cols(), (0..m.rows()).map(|i| m.row_vec(i)).collect())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vector> {
        (0..self.dim()).map(|i| self.basis.row_vec(i)).collect()
    }

    /// Residual of v after eliminating along the basis; zero iff v lies in
    /// the subspace.
    pub fn reduce(&self, v: &[FieldElement]) -> Vector {
        assert_eq!(v.len(), self.ambient);
        let mut out: Vector = v.to_vec();
        for i in 0..self.dim() {
            let pivot = (0..self.ambient)
                .find(|&j| self.basis.get(i, j).is_one())
                .expect("rref row has a leading one");
            let c = out[pivot].clone();
            if !c.is_zero() {
                for j in 0..self.ambient {
                    let b = self.basis.get(i, j);
                    if !b.is_zero() {
                        out[j] -= &(&c * b);
                    }
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        vec_is_zero(&self.reduce(v))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Coordinates of v in the basis, or None if v is outside.
    pub fn coords(&self, v: &[FieldElement]) -> Option<Vector> {
        if self.dim() == 0 {
            return vec_is_zero(v).then_some(vec![]);
        }
        let bt = self.basis.transpose();
        let rhs = Matrix::from_rows(vec![v.to_vec()]).transpose();
        let sol = bt.solve(&rhs).ok()?;
        Some(sol.particular.col_vec(0))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Subspace::from_rows(self.ambient, rows)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient, self.basis.conductor());
        }
        // kernel of [A^T | -B^T]: coefficients x on A-rows and y on B-rows
        // with x^T A = y^T B
        let at = self.basis.transpose();
        let bt = other.basis.transpose().scale(&FieldElement::from_int(-1));
        let stacked = at.hstack(&bt);
        let mut rows = Vec::new();
        for k in stacked.kernel() {
            let mut v = vec![FieldElement::zero(self.basis.conductor()); self.ambient];
            for (i, c) in k.iter().take(self.dim()).enumerate() {
                if !c.is_zero() {
                    crate::linalg::vec_add_scaled(&mut v, self.basis.row(i), c);
                }
            }
            rows.push(v);
        }
        Subspace::from_rows(self.ambient, rows)
    }

    /// Image of this subspace under the linear map given by `m` (acting on
    /// column vectors).
    pub fn image(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        let rows = (0..self.dim())
            .map(|i| m.mul_vec(self.basis.row(i)))
            .collect();
        Subspace::from_rows(m.rows(), rows)
    }

    /// Preimage {v : m v in self} under the linear map `m`.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient);
        let src = m.cols();
        if self.dim() == 0 {
            return Subspace::from_rows(src, m.kernel());
        }
        // kernel of [m | -basis^T]: (v, c) with m v = basis^T c
        let bt = self.basis.transpose().scale(&FieldElement::from_int(-1));
        let stacked = m.hstack(&bt);
        let rows = stacked
            .kernel()
            .into_iter()
            .map(|k| k[..src].to_vec())
            .collect();
        Subspace::from_rows(src, rows)
    }

    /// Indices of the pivot coordinates of the basis.
    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| {
                (0..self.ambient)
                    .find(|&j| self.basis.get(i, j).is_one())
                    .expect("rref row has a leading one")
            })
            .collect()
    }

    /// Coordinates not hit by a pivot; the standard vectors at these indices
    /// form a complement (used as a section of the quotient by this space).
    pub fn free_columns(&self) -> Vec<usize> {
        let pivots = self.pivot_columns();
        (0..self.ambient).filter(|j| !pivots.contains(j)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    fn e(i: usize, n: usize) -> Vector {
        let mut v = vec![FieldElement::zero(1); n];
        v[i] = FieldElement::one(1);
        v
    }

    #[test]
    fn intersect_basics() {
        let v = Subspace::from_rows(3, vec![e(0, 3), e(1, 3)]);
        assert_eq!(v.intersect(&v), v);
        let a = Subspace::from_rows(3, vec![e(0, 3)]);
        let b = Subspace::from_rows(3, vec![e(1, 3)]);
        assert_eq!(a.intersect(&b).dim(), 0);
    }

    #[test]
    fn dim_formula() {
        // dim(a ∩ b) + dim(a + b) = dim a + dim b
        let a = Subspace::from_rows(4, vec![e(0, 4), vec![fe(1), fe(1), fe(0), fe(0)]]);
        let b = Subspace::from_rows(4, vec![vec![fe(0), fe(1), fe(1), fe(0)], e(3, 4)]);
        let inter = a.intersect(&b);
        let sum = a.sum(&b);
        assert_eq!(inter.dim() + sum.dim(), a.dim() + b.dim());
        for row in inter.basis_rows() {
            assert!(a.contains(&row) && b.contains(&row));
        }
    }

    #[test]
    fn canonical_by_route() {
        let a = Subspace::from_rows(3, vec![vec![fe(2), fe(2), fe(0)], vec![fe(0), fe(0), fe(5)]]);
        let b = Subspace::from_rows(3, vec![vec![fe(1), fe(1), fe(1)], vec![fe(0), fe(0), fe(-3)]]);
        assert_eq!(a, b);
    }

    #[test]
    fn preimage_and_image() {
        // projection (x,y,z) -> (x,y)
        let m = Matrix::from_rows(vec![e(0, 3), e(1, 3)]);
        let target = Subspace::from_rows(2, vec![e(0, 2)]);
        let pre = target.preimage(&m);
        // preimage = span{e0, e2}
        assert_eq!(pre.dim(), 2);
        assert!(pre.contains(&e(0, 3)));
        assert!(pre.contains(&e(2, 3)));
        let img = pre.image(&m);
        assert_eq!(img, target);
    }
}
