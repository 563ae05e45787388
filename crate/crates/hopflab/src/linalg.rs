//! Dense exact linear algebra over a [`FieldSpec`].
//!
//! Row reduction uses leftmost-nonzero pivoting with the first nonzero row,
//! so echelon forms, solutions, and kernel bases are deterministic. Kernel
//! vectors are ordered by free column and scaled so the leading entry is 1.

use crate::error::{Error, Result};
use crate::scalar::{FieldSpec, Scalar};
use std::fmt;

/// Coordinate vector over a fixed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vector {
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn zero(field: FieldSpec, dim: usize) -> Vector {
        Vector {
            field,
            entries: vec![field.zero(); dim],
        }
    }

    pub fn basis(field: FieldSpec, dim: usize, i: usize) -> Vector {
        assert!(i < dim, "basis index {i} out of range for dim {dim}");
        let mut v = Vector::zero(field, dim);
        v.entries[i] = field.one();
        v
    }

    pub fn from_entries(field: FieldSpec, entries: Vec<Scalar>) -> Result<Vector> {
        for e in &entries {
            if e.field() != field {
                return Err(Error::FieldMismatch(format!(
                    "entry in {} inside vector over {}",
                    e.field(),
                    field
                )));
            }
        }
        Ok(Vector { field, entries })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64s(field: FieldSpec, entries: &[i64]) -> Vector {
        Vector {
            field,
            entries: entries.iter().map(|&n| field.from_i64(n)).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }

    pub fn set(&mut self, i: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "field mismatch in Vector::set");
        self.entries[i] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn iter_nonzero(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "vector dim mismatch");
        Vector {
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.dim(), other.dim(), "vector dim mismatch");
        Vector {
            field: self.field,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector {
            field: self.field,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Vector) {
        assert_eq!(self.dim(), other.dim(), "vector dim mismatch");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a = &*a + &(c * b);
        }
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        assert_eq!(self.dim(), other.dim(), "vector dim mismatch");
        let mut acc = self.field.zero();
        for (i, a) in self.iter_nonzero() {
            acc = &acc + &(a * other.get(i));
        }
        acc
    }

    /// Flattened tensor product: index of `e_i (x) e_j` is `i * other.dim() + j`.
    pub fn tensor(&self, other: &Vector) -> Vector {
        let mut out = Vector::zero(self.field, self.dim() * other.dim());
        for (i, a) in self.iter_nonzero() {
            for (j, b) in other.iter_nonzero() {
                out.entries[i * other.dim() + j] = a * b;
            }
        }
        out
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// Dense row-major matrix over a fixed field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vector>) -> Result<Matrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vector::dim);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.dim() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row of dim {} in matrix with {} columns",
                    r.dim(),
                    ncols
                )));
            }
            if r.field() != field {
                return Err(Error::FieldMismatch("matrix row field".into()));
            }
            entries.extend(r.entries);
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "field mismatch in Matrix::set");
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vector(&self, r: usize) -> Vector {
        Vector {
            field: self.field,
            entries: self.row(r).to_vec(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zero(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c) + &(a * b);
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    /// Column-convention application `self * x`.
    pub fn mul_vec(&self, x: &Vector) -> Vector {
        assert_eq!(self.cols, x.dim(), "matrix-vector shape mismatch");
        let mut out = Vector::zero(self.field, self.rows);
        for r in 0..self.rows {
            let mut acc = self.field.zero();
            for (c, xv) in x.iter_nonzero() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    acc = &acc + &(a * xv);
                }
            }
            out.entries[r] = acc;
        }
        out
    }

    /// Row-as-image application: the image of `v` under the map sending
    /// `e_r` to row `r`, i.e. `sum_r v[r] * row(r)`.
    pub fn apply_rows(&self, v: &Vector) -> Vector {
        assert_eq!(self.rows, v.dim(), "row-apply shape mismatch");
        let mut out = Vector::zero(self.field, self.cols);
        for (r, coeff) in v.iter_nonzero() {
            for c in 0..self.cols {
                let a = self.get(r, c);
                if !a.is_zero() {
                    out.entries[c] = &out.entries[c] + &(coeff * a);
                }
            }
        }
        out
    }

    /// Reduced row echelon form with the fixed pivot rule: scan columns left
    /// to right, pick the first unresolved row with a nonzero entry.
    /// Returns the reduced matrix and the pivot columns in order.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            if next_row >= m.rows {
                break;
            }
            let Some(pr) = (next_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            // Swap pivot row up.
            if pr != next_row {
                for c in 0..m.cols {
                    let a = m.get(next_row, c).clone();
                    let b = m.get(pr, c).clone();
                    m.set(next_row, c, b);
                    m.set(pr, c, a);
                }
            }
            // Scale pivot to 1.
            let inv = m.get(next_row, col).inv().expect("pivot nonzero");
            if !inv.is_one() {
                for c in col..m.cols {
                    let v = m.get(next_row, c) * &inv;
                    m.set(next_row, c, v);
                }
            }
            // Eliminate everywhere else.
            for r in 0..m.rows {
                if r == next_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &(&factor * m.get(next_row, c));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            next_row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Inverse of a square matrix, or `NotInvertible`.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("inverse of non-square".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zero(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(Error::NotInvertible(format!(
                "matrix of rank {} and size {n}",
                pivots.len()
            )));
        }
        let mut inv = Matrix::zero(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }
}

/// Solves `a * x = b`; free variables are set to zero. `None` if inconsistent.
pub fn solve_linear(a: &Matrix, b: &Vector) -> Option<Vector> {
    assert_eq!(a.rows(), b.dim(), "system shape mismatch");
    let field = a.field();
    let mut aug = Matrix::zero(field, a.rows(), a.cols() + 1);
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, a.cols(), b.get(r).clone());
    }
    let (red, pivots) = aug.rref();
    if pivots.contains(&a.cols()) {
        return None;
    }
    let mut x = Vector::zero(field, a.cols());
    for (r, &c) in pivots.iter().enumerate() {
        x.set(c, red.get(r, a.cols()).clone());
    }
    Some(x)
}

/// Basis of the null space of `a`, one vector per free column in ascending
/// order, each scaled so its leading nonzero entry is 1.
pub fn kernel_basis(a: &Matrix) -> Vec<Vector> {
    let field = a.field();
    let (red, pivots) = a.rref();
    let mut basis = Vec::new();
    for free in 0..a.cols() {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = Vector::zero(field, a.cols());
        v.set(free, field.one());
        for (r, &pc) in pivots.iter().enumerate() {
            let coeff = red.get(r, free);
            if !coeff.is_zero() {
                v.set(pc, coeff.neg());
            }
        }
        let lead = v
            .iter_nonzero()
            .next()
            .map(|(_, s)| s.clone())
            .expect("kernel vector nonzero");
        if !lead.is_one() {
            v = v.scale(&lead.inv().expect("leading entry nonzero"));
        }
        basis.push(v);
    }
    basis
}

/// Flat index of `e_i (x) e_j` inside an `m (x) n` tensor space.
pub fn tensor_index(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(j < n, "second tensor index {j} out of range {n}");
    i * n + j
}

/// Inverse of [`tensor_index`].
pub fn tensor_unindex(flat: usize, n: usize) -> (usize, usize) {
    (flat / n, flat % n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const F3: FieldSpec = FieldSpec::Fp(3);
    const F5: FieldSpec = FieldSpec::Fp(5);

    #[test]
    fn kernel_of_sum_functional() {
        let a = Matrix::from_rows(F3, vec![Vector::from_i64s(F3, &[1, 1])]).unwrap();
        let basis = kernel_basis(&a);
        assert_eq!(basis, vec![Vector::from_i64s(F3, &[1, 2])]);
    }

    #[test]
    fn solve_unique() {
        // x + y = 1, x - y = 1 over fp:5 -> x = 1, y = 0.
        let a = Matrix::from_rows(
            F5,
            vec![
                Vector::from_i64s(F5, &[1, 1]),
                Vector::from_i64s(F5, &[1, -1]),
            ],
        )
        .unwrap();
        let b = Vector::from_i64s(F5, &[1, 1]);
        assert_eq!(solve_linear(&a, &b).unwrap(), Vector::from_i64s(F5, &[1, 0]));
    }

    #[test]
    fn solve_inconsistent() {
        let a = Matrix::from_rows(
            F5,
            vec![
                Vector::from_i64s(F5, &[1, 1]),
                Vector::from_i64s(F5, &[2, 2]),
            ],
        )
        .unwrap();
        let b = Vector::from_i64s(F5, &[1, 3]);
        assert!(solve_linear(&a, &b).is_none());
    }

    #[test]
    fn solve_underdetermined_zeroes_free_vars() {
        let a = Matrix::from_rows(F5, vec![Vector::from_i64s(F5, &[1, 1])]).unwrap();
        let b = Vector::from_i64s(F5, &[4]);
        assert_eq!(solve_linear(&a, &b).unwrap(), Vector::from_i64s(F5, &[4, 0]));
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(
            F5,
            vec![
                Vector::from_i64s(F5, &[1, 2]),
                Vector::from_i64s(F5, &[3, 4]),
            ],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(F5, 2));
        assert_eq!(inv.mul(&m), Matrix::identity(F5, 2));

        let singular =
            Matrix::from_rows(F5, vec![Vector::from_i64s(F5, &[1, 2]), Vector::from_i64s(F5, &[2, 4])])
                .unwrap();
        assert!(matches!(singular.inverse(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn tensor_index_layout() {
        assert_eq!(tensor_index(1, 0, 2), 2);
        assert_eq!(tensor_unindex(2, 2), (1, 0));
        let u = Vector::from_i64s(F3, &[1, 2]);
        let v = Vector::from_i64s(F3, &[0, 1, 1]);
        let t = u.tensor(&v);
        assert_eq!(t, Vector::from_i64s(F3, &[0, 1, 1, 0, 2, 2]));
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(0i64..5, r * c).prop_map(move |vals| {
                let mut m = Matrix::zero(F5, r, c);
                for (k, v) in vals.into_iter().enumerate() {
                    m.set(k / c, k % c, F5.from_i64(v));
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(m in arb_matrix()) {
            let (r1, p1) = m.rref();
            let (r2, p2) = r1.rref();
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(p1, p2);
        }

        #[test]
        fn kernel_vectors_annihilate(m in arb_matrix()) {
            for v in kernel_basis(&m) {
                prop_assert!(m.mul_vec(&v).is_zero());
                let lead = v.iter_nonzero().next().unwrap().1;
                prop_assert!(lead.is_one());
            }
            // rank-nullity
            prop_assert_eq!(kernel_basis(&m).len() + m.rank(), m.cols());
        }

        #[test]
        fn solutions_satisfy_system(m in arb_matrix(), bvals in proptest::collection::vec(0i64..5, 1usize..5)) {
            prop_assume!(bvals.len() == m.rows());
            let b = Vector::from_i64s(F5, &bvals);
            if let Some(x) = solve_linear(&m, &b) {
                prop_assert_eq!(m.mul_vec(&x), b);
            }
        }
    }
}
