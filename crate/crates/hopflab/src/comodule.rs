//! Right comodules over a Hopf algebra, as explicit coaction tables.
//!
//! The coaction of basis vector `e_i` is stored sparsely as triples
//! `(j, k, c)` meaning a summand `c * e_j (x) h_k`. Triples are kept sorted
//! and merged, so structural equality is representation independent.

use crate::error::{Error, Result};
use crate::hopf::AlgRef;
use crate::linalg::{tensor_index, Matrix, Vector};
use crate::report::{first_failure, CheckReport};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct Comodule {
    algebra: AlgRef,
    name: String,
    dim: usize,
    /// coaction[i] lists (j, k, c): rho(e_i) has the summand c * e_j (x) h_k.
    coaction: Vec<Vec<(usize, usize, Scalar)>>,
}

impl PartialEq for Comodule {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_structure(&other.algebra)
            && self.dim == other.dim
            && self.coaction == other.coaction
    }
}

fn canonicalize(
    terms: Vec<(usize, usize, Scalar)>,
) -> Vec<(usize, usize, Scalar)> {
    let mut merged: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for (j, k, c) in terms {
        if c.is_zero() {
            continue;
        }
        match merged.get_mut(&(j, k)) {
            Some(s) => {
                *s = &*s + &c;
            }
            None => {
                merged.insert((j, k), c);
            }
        }
    }
    merged
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((j, k), c)| (j, k, c))
        .collect()
}

impl Comodule {
    pub fn new(
        algebra: AlgRef,
        name: impl Into<String>,
        dim: usize,
        coaction: Vec<Vec<(usize, usize, Scalar)>>,
    ) -> Result<Comodule> {
        if dim == 0 {
            return Err(Error::DimensionMismatch("empty comodule".into()));
        }
        if coaction.len() != dim {
            return Err(Error::DimensionMismatch("coaction table length".into()));
        }
        for terms in &coaction {
            for (j, k, c) in terms {
                if *j >= dim || *k >= algebra.dim() {
                    return Err(Error::OutOfRange("coaction term index".into()));
                }
                if c.field() != algebra.field() {
                    return Err(Error::FieldMismatch("coaction coefficient".into()));
                }
            }
        }
        let coaction = coaction.into_iter().map(canonicalize).collect();
        Ok(Comodule {
            algebra,
            name: name.into(),
            dim,
            coaction,
        })
    }

    /// The one-dimensional comodule with coaction m -> m (x) 1.
    pub fn trivial(algebra: &AlgRef) -> Comodule {
        let terms = algebra
            .one()
            .iter_nonzero()
            .map(|(k, c)| (0usize, k, c.clone()))
            .collect();
        Comodule::new(algebra.clone(), "trivial", 1, vec![terms]).expect("trivial comodule")
    }

    /// H coacting on itself by comultiplication.
    pub fn regular(algebra: &AlgRef) -> Comodule {
        let coaction = (0..algebra.dim())
            .map(|i| algebra.comult_basis(i).to_vec())
            .collect();
        Comodule::new(algebra.clone(), "regular", algebra.dim(), coaction)
            .expect("regular comodule")
    }

    /// Tensor product comodule: rho(m (x) n) = m0 (x) n0 (x) m1 n1.
    pub fn tensor(&self, other: &Comodule) -> Result<Comodule> {
        if !self.algebra.same_structure(&other.algebra) {
            return Err(Error::FieldMismatch(
                "tensor of comodules over different algebras".into(),
            ));
        }
        let dim = self.dim * other.dim;
        let mut coaction = Vec::with_capacity(dim);
        for i in 0..self.dim {
            for j in 0..other.dim {
                let mut terms = Vec::new();
                for (i2, a, c) in &self.coaction[i] {
                    for (j2, b, d) in &other.coaction[j] {
                        let cd = c * d;
                        for (k, m) in self.algebra.mul_basis_sparse(*a, *b) {
                            terms.push((
                                tensor_index(*i2, *j2, other.dim),
                                *k,
                                &cd * m,
                            ));
                        }
                    }
                }
                coaction.push(terms);
            }
        }
        Comodule::new(
            self.algebra.clone(),
            format!("{}(x){}", self.name, other.name),
            dim,
            coaction,
        )
    }

    pub fn algebra(&self) -> &AlgRef {
        &self.algebra
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coaction_basis(&self, i: usize) -> &[(usize, usize, Scalar)] {
        &self.coaction[i]
    }

    /// Counit law and coassociativity of the coaction.
    pub fn verify(&self) -> CheckReport {
        let field = self.algebra.field();
        let n = self.algebra.dim();
        for i in 0..self.dim {
            // (id (x) eps) rho = id
            let mut img = Vector::zero(field, self.dim);
            for (j, k, c) in &self.coaction[i] {
                let t = c * self.algebra.counit_basis(*k);
                img.set(*j, img.get(*j) + &t);
            }
            let expected = Vector::basis(field, self.dim, i);
            if img != expected {
                return CheckReport::fail_vectors("comodule-counit", vec![i], img, expected);
            }
        }
        for i in 0..self.dim {
            // (rho (x) id) rho vs (id (x) comult) rho, flattened in M (x) H (x) H.
            let mut lhs = Vector::zero(field, self.dim * n * n);
            let mut rhs = Vector::zero(field, self.dim * n * n);
            for (j, k, c) in &self.coaction[i] {
                for (j2, k2, c2) in &self.coaction[*j] {
                    let at = (*j2 * n + *k2) * n + *k;
                    lhs.set(at, lhs.get(at) + &(c * c2));
                }
                for (a, b, d) in self.algebra.comult_basis(*k) {
                    let at = (*j * n + *a) * n + *b;
                    rhs.set(at, rhs.get(at) + &(c * d));
                }
            }
            if lhs != rhs {
                return CheckReport::fail_vectors(
                    "comodule-coassociativity",
                    vec![i],
                    lhs,
                    rhs,
                );
            }
        }
        first_failure("comodule", vec![])
    }

    /// Whether `f` (row `i` = image of `e_i`) intertwines the coactions.
    pub fn is_morphism_to(&self, other: &Comodule, f: &Matrix) -> bool {
        if f.rows() != self.dim || f.cols() != other.dim {
            return false;
        }
        for i in 0..self.dim {
            // rho_N(f(e_i))
            let mut lhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for r in 0..other.dim {
                let w = f.get(i, r);
                if w.is_zero() {
                    continue;
                }
                for (j, k, c) in &other.coaction[r] {
                    let key = (*j, *k);
                    let t = w * c;
                    match lhs.get_mut(&key) {
                        Some(s) => *s = &*s + &t,
                        None => {
                            lhs.insert(key, t);
                        }
                    }
                }
            }
            // (f (x) id) rho_M(e_i)
            let mut rhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (j, k, c) in &self.coaction[i] {
                for r in 0..other.dim {
                    let w = f.get(*j, r);
                    if w.is_zero() {
                        continue;
                    }
                    let key = (r, *k);
                    let t = c * w;
                    match rhs.get_mut(&key) {
                        Some(s) => *s = &*s + &t,
                        None => {
                            rhs.insert(key, t);
                        }
                    }
                }
            }
            lhs.retain(|_, c| !c.is_zero());
            rhs.retain(|_, c| !c.is_zero());
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}
