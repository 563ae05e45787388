//! Finite-dimensional Hopf algebras as explicit structure constants.
//!
//! A [`HopfAlgebra`] stores the multiplication table densely, the
//! comultiplication sparsely as `(left, right, coeff)` triples, and the
//! antipode as a matrix whose row `j` holds the coordinates of `S(e_j)`.
//! Construction validates shapes only; [`HopfAlgebra::verify`] checks the
//! axioms exhaustively and reports the first violation with a witness.

use crate::error::{Error, Result};
use crate::linalg::{tensor_index, tensor_unindex, Matrix, Vector};
use crate::report::{first_failure, CheckReport};
use crate::scalar::{FieldSpec, Scalar};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::Arc;

pub type AlgRef = Arc<HopfAlgebra>;

/// One term of an iterated coproduct: coefficient and basis-index legs.
pub type SweedlerTerm = (Scalar, Vec<usize>);

#[derive(Debug, Clone)]
pub struct HopfAlgebra {
    name: String,
    field: FieldSpec,
    dim: usize,
    basis: Vec<String>,
    mult: Vec<Vec<Vector>>,
    mult_sparse: Vec<Vec<Vec<(usize, Scalar)>>>,
    unit: Vector,
    comult: Vec<Vec<(usize, usize, Scalar)>>,
    counit: Vector,
    antipode: Matrix,
    antipode_inv: Option<Matrix>,
}

impl PartialEq for HopfAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.mult == other.mult
            && self.unit == other.unit
            && self.comult == other.comult
            && self.counit == other.counit
            && self.antipode == other.antipode
    }
}

impl HopfAlgebra {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        field: FieldSpec,
        basis: Vec<String>,
        mult: Vec<Vec<Vector>>,
        unit: Vector,
        comult: Vec<Vec<(usize, usize, Scalar)>>,
        counit: Vector,
        antipode: Matrix,
    ) -> Result<HopfAlgebra> {
        let dim = basis.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch("empty basis".into()));
        }
        if mult.len() != dim || mult.iter().any(|row| row.len() != dim) {
            return Err(Error::DimensionMismatch("mult table shape".into()));
        }
        for row in &mult {
            for v in row {
                if v.dim() != dim {
                    return Err(Error::DimensionMismatch("mult entry dim".into()));
                }
                if v.field() != field {
                    return Err(Error::FieldMismatch("mult entry field".into()));
                }
            }
        }
        if unit.dim() != dim || counit.dim() != dim {
            return Err(Error::DimensionMismatch("unit or counit dim".into()));
        }
        if unit.field() != field || counit.field() != field {
            return Err(Error::FieldMismatch("unit or counit field".into()));
        }
        if comult.len() != dim {
            return Err(Error::DimensionMismatch("comult table length".into()));
        }
        for terms in &comult {
            for (a, b, c) in terms {
                if *a >= dim || *b >= dim {
                    return Err(Error::OutOfRange("comult term index".into()));
                }
                if c.field() != field {
                    return Err(Error::FieldMismatch("comult coefficient".into()));
                }
            }
        }
        if antipode.rows() != dim || antipode.cols() != dim {
            return Err(Error::DimensionMismatch("antipode shape".into()));
        }
        if antipode.field() != field {
            return Err(Error::FieldMismatch("antipode field".into()));
        }
        let mult_sparse = mult
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter_nonzero().map(|(k, c)| (k, c.clone())).collect())
                    .collect()
            })
            .collect();
        // Canonical comult representation: terms sorted by index pair, merged,
        // zero coefficients dropped. Structural equality then ignores how the
        // caller happened to order the terms.
        let comult: Vec<Vec<(usize, usize, Scalar)>> = comult
            .into_iter()
            .map(|terms| {
                let mut merged: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
                for (a, b, c) in terms {
                    match merged.entry((a, b)) {
                        Entry::Occupied(mut e) => {
                            let s = e.get() + &c;
                            if s.is_zero() {
                                e.remove();
                            } else {
                                *e.get_mut() = s;
                            }
                        }
                        Entry::Vacant(e) => {
                            if !c.is_zero() {
                                e.insert(c);
                            }
                        }
                    }
                }
                merged.into_iter().map(|((a, b), c)| (a, b, c)).collect()
            })
            .collect();
        let antipode_inv = antipode.inverse().ok();
        Ok(HopfAlgebra {
            name: name.into(),
            field,
            dim,
            basis,
            mult,
            mult_sparse,
            unit,
            comult,
            counit,
            antipode,
            antipode_inv,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis
    }

    pub fn one(&self) -> &Vector {
        &self.unit
    }

    pub fn counit_vector(&self) -> &Vector {
        &self.counit
    }

    pub fn antipode_matrix(&self) -> &Matrix {
        &self.antipode
    }

    /// Inverse antipode, cached from construction. Absent when the antipode
    /// matrix is singular; [`verify`](Self::verify) reports that case.
    pub fn antipode_inv_matrix(&self) -> Option<&Matrix> {
        self.antipode_inv.as_ref()
    }

    pub fn mult_table(&self) -> &Vec<Vec<Vector>> {
        &self.mult
    }

    pub fn comult_table(&self) -> &Vec<Vec<(usize, usize, Scalar)>> {
        &self.comult
    }

    /// Structural identity: same field and same structure constants.
    pub fn same_structure(&self, other: &HopfAlgebra) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Vector {
        &self.mult[i][j]
    }

    pub fn mul_basis_sparse(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.mult_sparse[i][j]
    }

    pub fn mul_vec(&self, u: &Vector, v: &Vector) -> Vector {
        let mut out = Vector::zero(self.field, self.dim);
        for (i, a) in u.iter_nonzero() {
            for (j, b) in v.iter_nonzero() {
                out.add_scaled(&(a * b), &self.mult[i][j]);
            }
        }
        out
    }

    pub fn mul_basis_vec(&self, i: usize, v: &Vector) -> Vector {
        let mut out = Vector::zero(self.field, self.dim);
        for (j, b) in v.iter_nonzero() {
            out.add_scaled(b, &self.mult[i][j]);
        }
        out
    }

    pub fn mul_vec_basis(&self, u: &Vector, j: usize) -> Vector {
        let mut out = Vector::zero(self.field, self.dim);
        for (i, a) in u.iter_nonzero() {
            out.add_scaled(a, &self.mult[i][j]);
        }
        out
    }

    pub fn comult_basis(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.comult[i]
    }

    /// Coproduct of a basis element as a dense vector over the tensor square.
    pub fn comult_basis_dense(&self, i: usize) -> Vector {
        let mut out = Vector::zero(self.field, self.dim * self.dim);
        for (a, b, c) in &self.comult[i] {
            let idx = tensor_index(*a, *b, self.dim);
            out.set(idx, out.get(idx) + c);
        }
        out
    }

    pub fn comult_vec_dense(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero(self.field, self.dim * self.dim);
        for (i, coeff) in v.iter_nonzero() {
            for (a, b, c) in &self.comult[i] {
                let idx = tensor_index(*a, *b, self.dim);
                out.set(idx, out.get(idx) + &(coeff * c));
            }
        }
        out
    }

    pub fn counit_basis(&self, i: usize) -> &Scalar {
        self.counit.get(i)
    }

    pub fn counit_vec(&self, v: &Vector) -> Scalar {
        let mut acc = self.field.zero();
        for (i, coeff) in v.iter_nonzero() {
            acc = &acc + &(coeff * self.counit.get(i));
        }
        acc
    }

    pub fn antipode_basis(&self, j: usize) -> Vector {
        self.antipode.row_vector(j)
    }

    pub fn antipode_vec(&self, v: &Vector) -> Vector {
        self.antipode.apply_rows(v)
    }

    pub fn antipode_inv_vec(&self, v: &Vector) -> Result<Vector> {
        match &self.antipode_inv {
            Some(m) => Ok(m.apply_rows(v)),
            None => Err(Error::NotInvertible(format!(
                "antipode of {} is singular",
                self.name
            ))),
        }
    }

    /// Terms of the iterated coproduct with `r` output legs applied to `e_i`;
    /// `r = 1` is the identity, `r = 2` the coproduct. Terms with equal index
    /// tuples are merged and zero terms dropped.
    pub fn sweedler_basis(&self, i: usize, r: usize) -> Vec<SweedlerTerm> {
        assert!(r >= 1, "sweedler power needs at least one leg");
        let mut terms: Vec<SweedlerTerm> = vec![(self.field.one(), vec![i])];
        for _ in 1..r {
            // Expand the leftmost leg, merging duplicate tuples.
            let mut acc: std::collections::BTreeMap<Vec<usize>, Scalar> =
                std::collections::BTreeMap::new();
            for (coeff, legs) in &terms {
                for (a, b, c) in &self.comult[legs[0]] {
                    let mut new_legs = Vec::with_capacity(legs.len() + 1);
                    new_legs.push(*a);
                    new_legs.push(*b);
                    new_legs.extend_from_slice(&legs[1..]);
                    let add = coeff * c;
                    acc.entry(new_legs)
                        .and_modify(|s| *s = &*s + &add)
                        .or_insert(add);
                }
            }
            terms = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(legs, c)| (c, legs))
                .collect();
        }
        terms
    }

    /// Sweedler terms of an arbitrary element.
    pub fn sweedler_vec(&self, v: &Vector, r: usize) -> Vec<SweedlerTerm> {
        let mut acc: std::collections::BTreeMap<Vec<usize>, Scalar> =
            std::collections::BTreeMap::new();
        for (i, coeff) in v.iter_nonzero() {
            for (c, legs) in self.sweedler_basis(i, r) {
                let add = coeff * &c;
                acc.entry(legs)
                    .and_modify(|s| *s = &*s + &add)
                    .or_insert(add);
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(legs, c)| (c, legs))
            .collect()
    }

    /// Table of sweedler terms for every basis element.
    pub fn sweedler_table(&self, r: usize) -> Vec<Vec<SweedlerTerm>> {
        (0..self.dim).map(|i| self.sweedler_basis(i, r)).collect()
    }

    /// Checks every Hopf axiom on all basis tuples, in a fixed order:
    /// algebra, coalgebra, bialgebra compatibilities, antipode, antipode
    /// invertibility. Returns the first failure with a witness.
    pub fn verify(&self) -> CheckReport {
        first_failure(
            "hopf-axioms",
            [
                self.check_unit_law(),
                self.check_associativity(),
                self.check_counit_law(),
                self.check_coassociativity(),
                self.check_comult_multiplicative(),
                self.check_comult_unit(),
                self.check_counit_multiplicative(),
                self.check_antipode(),
                self.check_antipode_invertible(),
            ],
        )
    }

    fn check_unit_law(&self) -> CheckReport {
        for i in 0..self.dim {
            let e = Vector::basis(self.field, self.dim, i);
            let left = self.mul_vec(&self.unit, &e);
            if left != e {
                return CheckReport::fail_vectors("unit-law", vec![i], left, e);
            }
            let right = self.mul_vec(&e, &self.unit);
            if right != e {
                return CheckReport::fail_vectors("unit-law", vec![i], right, e);
            }
        }
        CheckReport::pass("unit-law")
    }

    fn check_associativity(&self) -> CheckReport {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = &self.mult[i][j];
                for k in 0..self.dim {
                    let lhs = self.mul_vec_basis(ij, k);
                    let rhs = self.mul_basis_vec(i, &self.mult[j][k]);
                    if lhs != rhs {
                        return CheckReport::fail_vectors(
                            "associativity",
                            vec![i, j, k],
                            lhs,
                            rhs,
                        );
                    }
                }
            }
        }
        CheckReport::pass("associativity")
    }

    fn check_counit_law(&self) -> CheckReport {
        for i in 0..self.dim {
            let mut left = Vector::zero(self.field, self.dim);
            let mut right = Vector::zero(self.field, self.dim);
            for (a, b, c) in &self.comult[i] {
                left.set(*b, left.get(*b) + &(c * self.counit.get(*a)));
                right.set(*a, right.get(*a) + &(c * self.counit.get(*b)));
            }
            let e = Vector::basis(self.field, self.dim, i);
            if left != e {
                return CheckReport::fail_vectors("counit-law", vec![i], left, e);
            }
            if right != e {
                return CheckReport::fail_vectors("counit-law", vec![i], right, e);
            }
        }
        CheckReport::pass("counit-law")
    }

    fn check_coassociativity(&self) -> CheckReport {
        let n = self.dim;
        for i in 0..n {
            let mut lhs = Vector::zero(self.field, n * n * n);
            let mut rhs = Vector::zero(self.field, n * n * n);
            for (a, b, c) in &self.comult[i] {
                for (x, y, d) in &self.comult[*a] {
                    let idx = (x * n + y) * n + b;
                    lhs.set(idx, lhs.get(idx) + &(c * d));
                }
                for (x, y, d) in &self.comult[*b] {
                    let idx = (a * n + x) * n + y;
                    rhs.set(idx, rhs.get(idx) + &(c * d));
                }
            }
            if lhs != rhs {
                return CheckReport::fail_vectors("coassociativity", vec![i], lhs, rhs);
            }
        }
        CheckReport::pass("coassociativity")
    }

    fn check_comult_multiplicative(&self) -> CheckReport {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let lhs = self.comult_vec_dense(&self.mult[i][j]);
                // delta(e_i) delta(e_j) in the tensor-square algebra
                let mut rhs = Vector::zero(self.field, n * n);
                for (a1, a2, c) in &self.comult[i] {
                    for (b1, b2, d) in &self.comult[j] {
                        let coeff = c * d;
                        for (u, cu) in &self.mult_sparse[*a1][*b1] {
                            for (v, cv) in &self.mult_sparse[*a2][*b2] {
                                let idx = tensor_index(*u, *v, n);
                                rhs.set(idx, rhs.get(idx) + &(&(&coeff * cu) * cv));
                            }
                        }
                    }
                }
                if lhs != rhs {
                    return CheckReport::fail_vectors(
                        "comult-multiplicative",
                        vec![i, j],
                        lhs,
                        rhs,
                    );
                }
            }
        }
        CheckReport::pass("comult-multiplicative")
    }

    fn check_comult_unit(&self) -> CheckReport {
        let lhs = self.comult_vec_dense(&self.unit);
        let rhs = self.unit.tensor(&self.unit);
        if lhs != rhs {
            return CheckReport::fail_vectors("comult-unit", vec![], lhs, rhs);
        }
        let eps_one = self.counit_vec(&self.unit);
        if !eps_one.is_one() {
            return CheckReport::fail_scalars("counit-unit", vec![], eps_one, self.field.one());
        }
        CheckReport::pass("comult-unit")
    }

    fn check_counit_multiplicative(&self) -> CheckReport {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = self.counit_vec(&self.mult[i][j]);
                let rhs = self.counit.get(i) * self.counit.get(j);
                if lhs != rhs {
                    return CheckReport::fail_scalars("counit-multiplicative", vec![i, j], lhs, rhs);
                }
            }
        }
        CheckReport::pass("counit-multiplicative")
    }

    fn check_antipode(&self) -> CheckReport {
        for i in 0..self.dim {
            let expected = self.unit.scale(self.counit.get(i));
            let mut left = Vector::zero(self.field, self.dim);
            let mut right = Vector::zero(self.field, self.dim);
            for (a, b, c) in &self.comult[i] {
                left.add_scaled(c, &self.mul_vec_basis(&self.antipode_basis(*a), *b));
                right.add_scaled(c, &self.mul_basis_vec(*a, &self.antipode_basis(*b)));
            }
            if left != expected {
                return CheckReport::fail_vectors("antipode", vec![i], left, expected);
            }
            if right != expected {
                return CheckReport::fail_vectors("antipode", vec![i], right, expected);
            }
        }
        CheckReport::pass("antipode")
    }

    fn check_antipode_invertible(&self) -> CheckReport {
        match &self.antipode_inv {
            Some(_) => CheckReport::pass("antipode-invertible"),
            None => {
                // Witness: a nonzero kernel vector mapped to zero.
                let ker = crate::linalg::kernel_basis(&self.antipode.transpose());
                let w = ker
                    .into_iter()
                    .next()
                    .unwrap_or_else(|| Vector::zero(self.field, self.dim));
                CheckReport::fail_vectors(
                    "antipode-invertible",
                    vec![],
                    Vector::zero(self.field, self.dim),
                    w,
                )
            }
        }
    }

    /// The dual Hopf algebra on the dual basis; with `cop` set, the
    /// comultiplication is reversed and the antipode inverted (used as the
    /// first tensor factor of the Drinfeld double).
    pub fn dual(&self, cop: bool) -> Result<HopfAlgebra> {
        let n = self.dim;
        let field = self.field;
        // (p_i p_j)(e_k) = coefficient of e_i (x) e_j in delta(e_k)
        let mut mult = vec![vec![Vector::zero(field, n); n]; n];
        for k in 0..n {
            for (a, b, c) in &self.comult[k] {
                let cur = mult[*a][*b].get(k) + c;
                mult[*a][*b].set(k, cur);
            }
        }
        let unit = self.counit.clone();
        let mut comult: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                for (k, c) in &self.mult_sparse[i][j] {
                    if cop {
                        comult[*k].push((j, i, c.clone()));
                    } else {
                        comult[*k].push((i, j, c.clone()));
                    }
                }
            }
        }
        // Merge duplicate (a, b) terms per basis element.
        for terms in comult.iter_mut() {
            let mut merged: std::collections::BTreeMap<(usize, usize), Scalar> =
                std::collections::BTreeMap::new();
            for (a, b, c) in terms.drain(..) {
                merged
                    .entry((a, b))
                    .and_modify(|s| *s = &*s + &c)
                    .or_insert(c);
            }
            *terms = merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((a, b), c)| (a, b, c))
                .collect();
        }
        let counit = self.unit.clone();
        let antipode = if cop {
            match &self.antipode_inv {
                Some(inv) => inv.transpose(),
                None => {
                    return Err(Error::NotInvertible(format!(
                        "antipode of {} is singular; co-opposite dual needs its inverse",
                        self.name
                    )))
                }
            }
        } else {
            self.antipode.transpose()
        };
        let basis = self.basis.iter().map(|l| format!("{l}*")).collect();
        let name = if cop {
            format!("dual_cop({})", self.name)
        } else {
            format!("dual({})", self.name)
        };
        HopfAlgebra::new(name, field, basis, mult, unit, comult, counit, antipode)
    }

    /// Rewrites all structure constants in the basis f_r = sum_m p[r][m] e_m.
    /// `p` must be invertible; the result is the same Hopf algebra presented
    /// in the new basis, so structural comparisons against an independently
    /// built table become meaningful.
    pub fn change_basis(
        &self,
        name: impl Into<String>,
        basis: Vec<String>,
        p: &Matrix,
    ) -> Result<HopfAlgebra> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch("change of basis shape".into()));
        }
        if p.field() != self.field {
            return Err(Error::FieldMismatch("change of basis field".into()));
        }
        if basis.len() != n {
            return Err(Error::DimensionMismatch("basis label count".into()));
        }
        let q = p.inverse()?;
        let to_new = |x: &Vector| q.apply_rows(x);
        let mut mult = vec![vec![Vector::zero(self.field, n); n]; n];
        for r in 0..n {
            let fr = p.row_vector(r);
            for (s, cell) in mult[r].iter_mut().enumerate() {
                let fs = p.row_vector(s);
                *cell = to_new(&self.mul_vec(&fr, &fs));
            }
        }
        let mut comult: Vec<Vec<(usize, usize, Scalar)>> = vec![Vec::new(); n];
        for (r, terms) in comult.iter_mut().enumerate() {
            let dense = self.comult_vec_dense(&p.row_vector(r));
            for (flat, c) in dense.iter_nonzero() {
                let (i, j) = tensor_unindex(flat, n);
                for a in 0..n {
                    let qa = q.get(i, a);
                    if qa.is_zero() {
                        continue;
                    }
                    for b in 0..n {
                        let qb = q.get(j, b);
                        if qb.is_zero() {
                            continue;
                        }
                        terms.push((a, b, &(c * qa) * qb));
                    }
                }
            }
        }
        let mut counit = Vector::zero(self.field, n);
        let mut antipode_rows = Vec::with_capacity(n);
        for r in 0..n {
            let fr = p.row_vector(r);
            counit.set(r, self.counit_vec(&fr));
            antipode_rows.push(to_new(&self.antipode_vec(&fr)));
        }
        let unit = to_new(&self.unit);
        let antipode = Matrix::from_rows(self.field, antipode_rows)?;
        HopfAlgebra::new(name, self.field, basis, mult, unit, comult, counit, antipode)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::report::Verdict;

    #[test]
    fn catalog_algebras_verify_over_q_and_f5() {
        for field in [FieldSpec::Rational, FieldSpec::Fp(5)] {
            for name in ["k", "kz2", "kz3", "kz4", "ks3", "h4"] {
                let h = catalog::builtin(name, field).unwrap();
                let rep = h.verify();
                assert!(rep.passed(), "{name} over {field}: {rep}");
            }
        }
    }

    #[test]
    fn sweedler_group_like_and_skew_primitive() {
        let h4 = catalog::builtin("h4", FieldSpec::Rational).unwrap();
        // basis order [1, g, x, xg]
        let g3 = h4.sweedler_basis(1, 3);
        assert_eq!(g3, vec![(FieldSpec::Rational.one(), vec![1, 1, 1])]);
        let x2 = h4.sweedler_basis(2, 2);
        // delta(x) = x (x) 1 + g (x) x
        assert_eq!(
            x2,
            vec![
                (FieldSpec::Rational.one(), vec![1, 2]),
                (FieldSpec::Rational.one(), vec![2, 0]),
            ]
        );
        let x1 = h4.sweedler_basis(2, 1);
        assert_eq!(x1, vec![(FieldSpec::Rational.one(), vec![2])]);
    }

    #[test]
    fn corrupted_antipode_fails_at_x() {
        let h4 = catalog::builtin("h4", FieldSpec::Rational).unwrap();
        let mut s = h4.antipode_matrix().clone();
        // S(x) corrupted from xg to x: row 2 becomes e_2.
        for c in 0..4 {
            s.set(2, c, FieldSpec::Rational.from_i64(if c == 2 { 1 } else { 0 }));
        }
        let bad = HopfAlgebra::new(
            "h4-bad-antipode",
            h4.field(),
            h4.basis_labels().to_vec(),
            h4.mult_table().clone(),
            h4.one().clone(),
            h4.comult_table().clone(),
            h4.counit_vector().clone(),
            s,
        )
        .unwrap();
        let rep = bad.verify();
        assert_eq!(rep.verdict, Verdict::Fail);
        assert_eq!(rep.condition, "antipode");
        assert_eq!(rep.witness.as_ref().unwrap().indices, vec![2]);
    }

    #[test]
    fn dual_is_an_involution_on_tables() {
        for name in ["kz3", "ks3", "h4"] {
            let h = catalog::builtin(name, FieldSpec::Fp(5)).unwrap();
            let d = h.dual(false).unwrap();
            assert!(d.verify().passed(), "dual({name}) fails axioms");
            let dd = d.dual(false).unwrap();
            assert!(h.same_structure(&dd), "double dual of {name} differs");
        }
    }

    #[test]
    fn cop_dual_verifies() {
        let h4 = catalog::builtin("h4", FieldSpec::Fp(3)).unwrap();
        let d = h4.dual(true).unwrap();
        assert!(d.verify().passed(), "co-opposite dual of h4 fails");
    }

    #[test]
    fn change_basis_round_trips() {
        let field = FieldSpec::Fp(5);
        let h4 = catalog::builtin("h4", field).unwrap();
        // Mix the nilpotent part into the group part: f2 = x + 2*g, rest fixed.
        let mut p = Matrix::identity(field, 4);
        p.set(2, 1, field.from_i64(2));
        let labels = |h: &HopfAlgebra| h.basis_labels().to_vec();
        let moved = h4.change_basis("h4-mixed", labels(&h4), &p).unwrap();
        assert!(moved.verify().passed(), "mixed basis fails axioms");
        assert!(!h4.same_structure(&moved), "tables should differ in the mixed basis");
        let back = moved
            .change_basis("h4-back", labels(&h4), &p.inverse().unwrap())
            .unwrap();
        assert!(h4.same_structure(&back), "round trip changed the tables");
    }

    #[test]
    fn change_basis_rejects_singular_matrix() {
        let field = FieldSpec::Fp(5);
        let kz2 = catalog::builtin("kz2", field).unwrap();
        let p = Matrix::zero(field, 2, 2);
        assert!(kz2.change_basis("junk", kz2.basis_labels().to_vec(), &p).is_err());
    }
}
