//! Dense exact linear algebra over Q(zeta_N).
//!
//! Elimination is fraction-free in the Bareiss sense (each update divides by
//! the previous pivot, which is exact and keeps entries at minor size), with
//! a final normalization pass to reduced row echelon form so that results
//! are canonical. Solver outputs are always re-checked by back-substitution.

use crate::error::{Error, Result};
use crate::field::{lcm_u32, FieldElement};

pub type Vector = Vec<FieldElement>;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, conductor: u32) -> Self {
        Matrix {
            rows,
            cols,
            conductor,
            data: vec![FieldElement::zero(conductor); rows * cols],
        }
    }

    pub fn identity(n: usize, conductor: u32) -> Self {
        let mut m = Self::zero(n, n, conductor);
        for i in 0..n {
            m.set(i, i, FieldElement::one(conductor));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Self {
        assert!(!rows.is_empty(), "use Matrix::zero for empty matrices");
        let cols = rows[0].len();
        let mut conductor = 1;
        for r in &rows {
            assert_eq!(r.len(), cols, "ragged rows");
            for e in r {
                conductor = lcm_u32(conductor, e.conductor());
            }
        }
        let data = rows
            .into_iter()
            .flatten()
            .map(|e| e.lift(conductor).unwrap())
            .collect();
        Matrix {
            rows: 0,
            cols,
            conductor,
            data,
        }
        .with_rows_fixed(cols)
    }

    fn with_rows_fixed(mut self, cols: usize) -> Self {
        self.rows = if cols == 0 { 0 } else { self.data.len() / cols };
        self
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        conductor: u32,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut m = Self::zero(rows, cols, conductor);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        if v.conductor() != self.conductor {
            if self.conductor % v.conductor() == 0 {
                self.data[r * self.cols + c] = v.lift(self.conductor).unwrap();
                return;
            }
            // enlarge the whole matrix
            let m = lcm_u32(self.conductor, v.conductor());
            for e in self.data.iter_mut() {
                *e = e.lift(m).unwrap();
            }
            self.conductor = m;
            self.data[r * self.cols + c] = v.lift(m).unwrap();
            return;
        }
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vector {
        self.row(r).to_vec()
    }

    pub fn col_vec(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.conductor, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = &*a + b;
        }
        out.renormalize()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = &*a - b;
        }
        out.renormalize()
    }

    pub fn scale(&self, s: &FieldElement) -> Matrix {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = &*a * s;
        }
        out.renormalize()
    }

    fn renormalize(mut self) -> Matrix {
        let mut c = self.conductor;
        for e in &self.data {
            c = lcm_u32(c, e.conductor());
        }
        if c != self.conductor {
            for e in self.data.iter_mut() {
                *e = e.lift(c).unwrap();
            }
            self.conductor = c;
        }
        self
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let conductor = lcm_u32(self.conductor, other.conductor);
        let mut out = Matrix::zero(self.rows, other.cols, conductor);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let t = a * b;
                        let cur = out.get(i, j).clone();
                        out.set(i, j, &cur + &t);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vector {
        assert_eq!(self.cols, v.len());
        let conductor = v
            .iter()
            .fold(self.conductor, |c, e| lcm_u32(c, e.conductor()));
        let mut out = vec![FieldElement::zero(conductor); self.rows];
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for i in 0..self.rows {
                let a = self.get(i, k);
                if !a.is_zero() {
                    out[i] += &(a * x);
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let conductor = lcm_u32(self.conductor, other.conductor);
        Matrix::from_fn(self.rows, self.cols + other.cols, conductor, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let conductor = lcm_u32(self.conductor, other.conductor);
        Matrix::from_fn(self.rows + other.rows, self.cols, conductor, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    /// Kronecker product, row-major index convention
    /// (i1, i2) -> i1 * other.rows + i2.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let conductor = lcm_u32(self.conductor, other.conductor);
        let mut out = Matrix::zero(self.rows * other.rows, self.cols * other.cols, conductor);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        let b = other.get(i2, j2);
                        if !b.is_zero() {
                            out.set(i1 * other.rows + i2, j1 * other.cols + j2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form plus pivot columns. Fraction-free Jordan
    /// elimination, then pivot normalization, so the output is canonical.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut prev = FieldElement::one(m.conductor);
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(pr, j).clone();
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let p = m.get(r, c).clone();
            let prev_inv = prev.inverse().expect("pivot was nonzero");
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let num = &(&p * m.get(i, j)) - &(&f * m.get(r, j));
                    m.set(i, j, &num * &prev_inv);
                }
            }
            prev = p;
            pivots.push(c);
            r += 1;
        }
        for (k, &c) in pivots.iter().enumerate() {
            let inv = m.get(k, c).inverse().expect("pivot nonzero");
            for j in 0..m.cols {
                let v = m.get(k, j) * &inv;
                m.set(k, j, v);
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical kernel basis (one vector per free column of the RREF).
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots, self.cols)
    }

    /// Solve self * x = rhs (rhs may have several columns). Returns one
    /// particular solution together with a kernel basis; `Inconsistent` when
    /// no solution exists. Outputs are verified exactly.
    pub fn solve(&self, rhs: &Matrix) -> Result<Solution> {
        assert_eq!(self.rows, rhs.rows, "solve: rhs height mismatch");
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::Inconsistent);
        }
        let conductor = r.conductor();
        let mut particular = Matrix::zero(self.cols, rhs.cols, conductor);
        for (k, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                particular.set(c, j, r.get(k, self.cols + j).clone());
            }
        }
        let kernel = kernel_from_rref(&r, &pivots, self.cols);
        // back-substitution check: exact residuals only
        let resid = self.mul(&particular).sub(rhs);
        assert!(resid.is_zero(), "solver residual must be exactly zero");
        for v in &kernel {
            assert!(
                self.mul_vec(v).iter().all(|e| e.is_zero()),
                "kernel residual must be exactly zero"
            );
        }
        Ok(Solution { particular, kernel })
    }
}

pub struct Solution {
    pub particular: Matrix,
    pub kernel: Vec<Vector>,
}

fn kernel_from_rref(r: &Matrix, pivots: &[usize], cols: usize) -> Vec<Vector> {
    let conductor = r.conductor();
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; cols];
        for &c in pivots {
            v[c] = true;
        }
        v
    };
    let mut out = Vec::new();
    for f in 0..cols {
        if pivot_set[f] {
            continue;
        }
        let mut v = vec![FieldElement::zero(conductor); cols];
        v[f] = FieldElement::one(conductor);
        for (k, &c) in pivots.iter().enumerate() {
            if c < cols {
                v[c] = -r.get(k, f);
            }
        }
        out.push(v);
    }
    out
}

// vector helpers

pub fn vec_is_zero(v: &[FieldElement]) -> bool {
    v.iter().all(|e| e.is_zero())
}

pub fn vec_add_scaled(dst: &mut [FieldElement], src: &[FieldElement], s: &FieldElement) {
    for (d, x) in dst.iter_mut().zip(src) {
        if !x.is_zero() {
            *d += &(x * s);
        }
    }
}

pub fn vec_sub(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(v: &[FieldElement], s: &FieldElement) -> Vector {
    v.iter().map(|x| x * s).collect()
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} (conductor {}) [", self.rows, self.cols, self.conductor)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{}", self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn fe(n: i64) -> FieldElement {
        FieldElement::from_int(n)
    }

    #[test]
    fn identity_solve() {
        let id = Matrix::identity(3, 1);
        let rhs = Matrix::from_rows(vec![
            vec![fe(1), fe(2)],
            vec![fe(3), fe(4)],
            vec![fe(5), fe(6)],
        ]);
        let sol = id.solve(&rhs).unwrap();
        assert_eq!(sol.particular, rhs);
        assert!(sol.kernel.is_empty());
    }

    #[test]
    fn zero_matrix_nullspace() {
        let z = Matrix::zero(2, 2, 1);
        let rhs = Matrix::zero(2, 1, 1);
        let sol = z.solve(&rhs).unwrap();
        assert_eq!(sol.kernel.len(), 2);
    }

    #[test]
    fn inconsistent_detected() {
        // x + y = 1, x + y = 2
        let m = Matrix::from_rows(vec![vec![fe(1), fe(1)], vec![fe(1), fe(1)]]);
        let rhs = Matrix::from_rows(vec![vec![fe(1)], vec![fe(2)]]);
        assert!(matches!(m.solve(&rhs), Err(Error::Inconsistent)));
    }

    #[test]
    fn rref_is_canonical() {
        // two different spanning presentations of the same row space
        let a = Matrix::from_rows(vec![vec![fe(2), fe(4), fe(2)], vec![fe(1), fe(1), fe(0)]]);
        let b = Matrix::from_rows(vec![vec![fe(3), fe(5), fe(2)], vec![fe(1), fe(3), fe(2)]]);
        assert_eq!(a.rref().0, b.rref().0);
    }

    #[test]
    fn kernel_exact_over_cyclotomic() {
        // (x - zeta_3 * y) has kernel spanned by (zeta_3, 1)
        let z = FieldElement::root_of_unity(3, 1);
        let m = Matrix::from_rows(vec![vec![fe(1), -&z]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(vec_is_zero(&m.mul_vec(&k[0])));
    }

    #[test]
    fn rational_entries() {
        let m = Matrix::from_rows(vec![vec![
            FieldElement::from_rational(rat(1, 2)),
            FieldElement::from_rational(rat(1, 3)),
        ]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.kernel().len(), 1);
    }
}
