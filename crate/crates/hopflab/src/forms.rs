//! Linear and bilinear forms on a Hopf algebra, with convolution.
//!
//! Forms are tied to the algebra they evaluate on. Convolution inverses are
//! found by solving the defining linear system exactly and are verified on
//! both sides before being returned.

use crate::error::{Error, Result};
use crate::hopf::AlgRef;
use crate::linalg::{solve_linear, tensor_index, Matrix, Vector};
use crate::scalar::Scalar;

/// A functional `H -> k`, stored by its values on the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearForm {
    algebra: AlgRef,
    coeffs: Vector,
}

impl LinearForm {
    pub fn new(algebra: AlgRef, coeffs: Vector) -> Result<LinearForm> {
        if coeffs.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "form of dim {} on algebra of dim {}",
                coeffs.dim(),
                algebra.dim()
            )));
        }
        if coeffs.field() != algebra.field() {
            return Err(Error::FieldMismatch("form field vs algebra field".into()));
        }
        Ok(LinearForm { algebra, coeffs })
    }

    /// The counit as a form; the unit of the convolution algebra `Reg^1`.
    pub fn counit(algebra: &AlgRef) -> LinearForm {
        LinearForm {
            algebra: algebra.clone(),
            coeffs: algebra.counit_vector().clone(),
        }
    }

    pub fn algebra(&self) -> &AlgRef {
        &self.algebra
    }

    pub fn coeffs(&self) -> &Vector {
        &self.coeffs
    }

    pub fn eval_basis(&self, i: usize) -> &Scalar {
        self.coeffs.get(i)
    }

    pub fn eval(&self, v: &Vector) -> Scalar {
        let mut acc = self.coeffs.field().zero();
        for (i, c) in v.iter_nonzero() {
            acc = &acc + &(c * self.coeffs.get(i));
        }
        acc
    }

    /// Normalization `gamma(1) = 1`.
    pub fn is_normalized(&self) -> bool {
        self.eval(self.algebra.one()).is_one()
    }

    fn same_algebra(&self, other: &LinearForm) -> Result<()> {
        if self.algebra.same_structure(&other.algebra) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                "convolution of forms on different algebras".into(),
            ))
        }
    }

    /// Convolution `(f * g)(h) = f(h_1) g(h_2)`.
    pub fn convolve(&self, other: &LinearForm) -> Result<LinearForm> {
        self.same_algebra(other)?;
        let field = self.algebra.field();
        let mut out = Vector::zero(field, self.algebra.dim());
        for i in 0..self.algebra.dim() {
            let mut acc = field.zero();
            for (a, b, c) in self.algebra.comult_basis(i) {
                acc = &acc + &(&(c * self.eval_basis(*a)) * other.eval_basis(*b));
            }
            out.set(i, acc);
        }
        LinearForm::new(self.algebra.clone(), out)
    }

    /// Convolution inverse by exact linear solve, verified two-sided.
    pub fn convolution_inverse(&self) -> Result<LinearForm> {
        let field = self.algebra.field();
        let n = self.algebra.dim();
        // (self * x)(e_i) = eps(e_i) is linear in x.
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            for (a, b, c) in self.algebra.comult_basis(i) {
                let cur = m.get(i, *b) + &(c * self.eval_basis(*a));
                m.set(i, *b, cur);
            }
        }
        let rhs = self.algebra.counit_vector().clone();
        let x = solve_linear(&m, &rhs).ok_or_else(|| {
            Error::NotInvertible("linear form has no convolution inverse".into())
        })?;
        let inv = LinearForm::new(self.algebra.clone(), x)?;
        let eps = LinearForm::counit(&self.algebra);
        if self.convolve(&inv)? != eps || inv.convolve(self)? != eps {
            return Err(Error::NotInvertible(
                "one-sided convolution solution is not two-sided".into(),
            ));
        }
        Ok(inv)
    }
}

/// A functional `H (x) H -> k`, stored as its value matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearForm {
    algebra: AlgRef,
    coeffs: Matrix,
}

impl BilinearForm {
    pub fn new(algebra: AlgRef, coeffs: Matrix) -> Result<BilinearForm> {
        if coeffs.rows() != algebra.dim() || coeffs.cols() != algebra.dim() {
            return Err(Error::DimensionMismatch("bilinear form shape".into()));
        }
        if coeffs.field() != algebra.field() {
            return Err(Error::FieldMismatch("form field vs algebra field".into()));
        }
        Ok(BilinearForm { algebra, coeffs })
    }

    /// `eps (x) eps`, the unit of the convolution algebra `Reg^2`.
    pub fn counit_pair(algebra: &AlgRef) -> BilinearForm {
        let eps = algebra.counit_vector();
        let n = algebra.dim();
        let mut m = Matrix::zero(algebra.field(), n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, eps.get(i) * eps.get(j));
            }
        }
        BilinearForm {
            algebra: algebra.clone(),
            coeffs: m,
        }
    }

    pub fn algebra(&self) -> &AlgRef {
        &self.algebra
    }

    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    pub fn eval_basis(&self, i: usize, j: usize) -> &Scalar {
        self.coeffs.get(i, j)
    }

    pub fn eval(&self, u: &Vector, v: &Vector) -> Scalar {
        let mut acc = self.coeffs.field().zero();
        for (i, a) in u.iter_nonzero() {
            for (j, b) in v.iter_nonzero() {
                let s = self.coeffs.get(i, j);
                if !s.is_zero() {
                    acc = &acc + &(&(a * b) * s);
                }
            }
        }
        acc
    }

    pub fn eval_vec_basis(&self, u: &Vector, j: usize) -> Scalar {
        let mut acc = self.coeffs.field().zero();
        for (i, a) in u.iter_nonzero() {
            let s = self.coeffs.get(i, j);
            if !s.is_zero() {
                acc = &acc + &(a * s);
            }
        }
        acc
    }

    pub fn eval_basis_vec(&self, i: usize, v: &Vector) -> Scalar {
        let mut acc = self.coeffs.field().zero();
        for (j, b) in v.iter_nonzero() {
            let s = self.coeffs.get(i, j);
            if !s.is_zero() {
                acc = &acc + &(b * s);
            }
        }
        acc
    }

    /// Normalization `sigma(1, h) = sigma(h, 1) = eps(h)`.
    pub fn is_normalized(&self) -> bool {
        let one = self.algebra.one();
        for j in 0..self.algebra.dim() {
            if self.eval_vec_basis(one, j) != *self.algebra.counit_basis(j) {
                return false;
            }
            if self.eval_basis_vec(j, one) != *self.algebra.counit_basis(j) {
                return false;
            }
        }
        true
    }

    fn same_algebra(&self, other: &BilinearForm) -> Result<()> {
        if self.algebra.same_structure(&other.algebra) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(
                "convolution of forms on different algebras".into(),
            ))
        }
    }

    /// Convolution `(s * t)(h, h') = s(h_1, h'_1) t(h_2, h'_2)`.
    pub fn convolve(&self, other: &BilinearForm) -> Result<BilinearForm> {
        self.same_algebra(other)?;
        let field = self.algebra.field();
        let n = self.algebra.dim();
        let mut out = Matrix::zero(field, n, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = field.zero();
                for (a1, a2, c) in self.algebra.comult_basis(i) {
                    for (b1, b2, d) in self.algebra.comult_basis(j) {
                        let s = self.eval_basis(*a1, *b1);
                        if s.is_zero() {
                            continue;
                        }
                        let t = other.eval_basis(*a2, *b2);
                        if t.is_zero() {
                            continue;
                        }
                        acc = &acc + &(&(&(c * d) * s) * t);
                    }
                }
                out.set(i, j, acc);
            }
        }
        BilinearForm::new(self.algebra.clone(), out)
    }

    /// Convolution inverse by exact linear solve, verified two-sided.
    pub fn convolution_inverse(&self) -> Result<BilinearForm> {
        let field = self.algebra.field();
        let n = self.algebra.dim();
        let nn = n * n;
        let mut m = Matrix::zero(field, nn, nn);
        let mut rhs = Vector::zero(field, nn);
        for i in 0..n {
            for j in 0..n {
                let row = tensor_index(i, j, n);
                rhs.set(row, self.algebra.counit_basis(i) * self.algebra.counit_basis(j));
                for (a1, a2, c) in self.algebra.comult_basis(i) {
                    for (b1, b2, d) in self.algebra.comult_basis(j) {
                        let s = self.eval_basis(*a1, *b1);
                        if s.is_zero() {
                            continue;
                        }
                        let col = tensor_index(*a2, *b2, n);
                        let cur = m.get(row, col) + &(&(c * d) * s);
                        m.set(row, col, cur);
                    }
                }
            }
        }
        let x = solve_linear(&m, &rhs).ok_or_else(|| {
            Error::NotInvertible("bilinear form has no convolution inverse".into())
        })?;
        let mut coeffs = Matrix::zero(field, n, n);
        for i in 0..n {
            for j in 0..n {
                coeffs.set(i, j, x.get(tensor_index(i, j, n)).clone());
            }
        }
        let inv = BilinearForm::new(self.algebra.clone(), coeffs)?;
        let eps = BilinearForm::counit_pair(&self.algebra);
        if self.convolve(&inv)? != eps || inv.convolve(self)? != eps {
            return Err(Error::NotInvertible(
                "one-sided convolution solution is not two-sided".into(),
            ));
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.convolution_inverse().is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::FieldSpec;
    use proptest::prelude::*;

    const F5: FieldSpec = FieldSpec::Fp(5);

    fn kz2_form(beta: i64, field: FieldSpec) -> BilinearForm {
        let h = catalog::builtin("kz2", field).unwrap();
        let mut m = Matrix::zero(field, 2, 2);
        m.set(0, 0, field.one());
        m.set(0, 1, field.one());
        m.set(1, 0, field.one());
        m.set(1, 1, field.from_i64(beta));
        BilinearForm::new(h, m).unwrap()
    }

    #[test]
    fn counit_is_convolution_unit() {
        let h = catalog::builtin("h4", F5).unwrap();
        let eps = LinearForm::counit(&h);
        let mut gamma = Vector::from_i64s(F5, &[1, 3, 2, 0]);
        gamma.set(0, F5.one());
        let gamma = LinearForm::new(h.clone(), gamma).unwrap();
        assert_eq!(gamma.convolve(&eps).unwrap(), gamma);
        assert_eq!(eps.convolve(&gamma).unwrap(), gamma);

        let eps2 = BilinearForm::counit_pair(&h);
        let sigma = kz2_form(2, F5);
        let eps2_kz2 = BilinearForm::counit_pair(sigma.algebra());
        assert_eq!(sigma.convolve(&eps2_kz2).unwrap(), sigma);
        assert!(eps2.is_normalized());
    }

    #[test]
    fn grouplike_convolution_multiplies_values() {
        let s2 = kz2_form(2, F5);
        let s3 = kz2_form(3, F5);
        let prod = s2.convolve(&s3).unwrap();
        assert_eq!(*prod.eval_basis(1, 1), F5.from_i64(6));
    }

    #[test]
    fn bilinear_inverse_on_kz2() {
        let s2 = kz2_form(2, F5);
        let inv = s2.convolution_inverse().unwrap();
        assert_eq!(*inv.eval_basis(1, 1), F5.from_i64(3));

        let degenerate = kz2_form(0, F5);
        assert!(degenerate.convolution_inverse().is_err());
    }

    #[test]
    fn linear_inverse_on_kz2() {
        let h = catalog::builtin("kz2", F5).unwrap();
        let gamma = LinearForm::new(h, Vector::from_i64s(F5, &[1, 2])).unwrap();
        let inv = gamma.convolution_inverse().unwrap();
        assert_eq!(*inv.eval_basis(1), F5.from_i64(3));
    }

    proptest! {
        #[test]
        fn convolution_is_associative_on_h4(
            a in proptest::collection::vec(0i64..5, 16),
            b in proptest::collection::vec(0i64..5, 16),
            c in proptest::collection::vec(0i64..5, 16),
        ) {
            let h = catalog::builtin("h4", F5).unwrap();
            let mk = |vals: &[i64]| {
                let mut m = Matrix::zero(F5, 4, 4);
                for (k, v) in vals.iter().enumerate() {
                    m.set(k / 4, k % 4, F5.from_i64(*v));
                }
                BilinearForm::new(h.clone(), m).unwrap()
            };
            let (fa, fb, fc) = (mk(&a), mk(&b), mk(&c));
            let lhs = fa.convolve(&fb).unwrap().convolve(&fc).unwrap();
            let rhs = fa.convolve(&fb.convolve(&fc).unwrap()).unwrap();
            prop_assert_eq!(lhs.coeffs().clone(), rhs.coeffs().clone());
        }

        #[test]
        fn linear_convolution_associative_on_kz3(
            a in proptest::collection::vec(0i64..5, 3),
            b in proptest::collection::vec(0i64..5, 3),
            c in proptest::collection::vec(0i64..5, 3),
        ) {
            let h = catalog::builtin("kz3", F5).unwrap();
            let mk = |vals: &[i64]| LinearForm::new(h.clone(), Vector::from_i64s(F5, vals)).unwrap();
            let (fa, fb, fc) = (mk(&a), mk(&b), mk(&c));
            let lhs = fa.convolve(&fb).unwrap().convolve(&fc).unwrap();
            let rhs = fa.convolve(&fb.convolve(&fc).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
