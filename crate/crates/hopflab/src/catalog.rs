//! Built-in algebras and pairs used by the test corpus and the CLI.
//!
//! Every entry is available over any supported field. The four-dimensional
//! algebra `h4` (grouplike g, skew-primitive x, relations g^2 = 1, x^2 = 0,
//! xg = -gx) uses the basis order [1, g, x, xg]; in characteristic 2 its sign
//! relations collapse and the entry carries a warning.

use crate::error::{Error, Result};
use crate::hopf::{AlgRef, HopfAlgebra};
use crate::linalg::{Matrix, Vector};
use crate::scalar::{FieldSpec, Scalar};
use std::sync::Arc;

/// Names accepted by [`builtin`], in catalog order.
pub const ALGEBRA_NAMES: [&str; 8] = [
    "k", "kz2", "kz3", "kz4", "ks3", "dual-ks3", "h4", "dual-h4",
];

/// Builds a catalog algebra over the given field.
pub fn builtin(name: &str, field: FieldSpec) -> Result<AlgRef> {
    Ok(builtin_with_warnings(name, field)?.0)
}

/// Same as [`builtin`] but also returns degeneracy warnings.
pub fn builtin_with_warnings(name: &str, field: FieldSpec) -> Result<(AlgRef, Vec<String>)> {
    let mut warnings = Vec::new();
    let alg = match name {
        "k" => trivial(field),
        "kz2" => cyclic_group_algebra(2, field),
        "kz3" => cyclic_group_algebra(3, field),
        "kz4" => cyclic_group_algebra(4, field),
        "ks3" => s3_group_algebra(field),
        "dual-ks3" => s3_group_algebra(field)?.dual(false).map(Arc::new),
        "h4" => {
            if field.characteristic() == 2 {
                warnings.push(
                    "h4 over characteristic 2: the sign relation xg = -gx degenerates to \
                     commutativity; tables stay consistent but no longer model the \
                     noncommutative algebra"
                        .to_string(),
                );
            }
            h4(field)
        }
        "dual-h4" => {
            if field.characteristic() == 2 {
                warnings.push("dual-h4 inherits the characteristic-2 degeneracy of h4".to_string());
            }
            h4(field)?.dual(false).map(Arc::new)
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown catalog algebra {other:?}; known: {}",
                ALGEBRA_NAMES.join(", ")
            )))
        }
    }?;
    Ok((alg, warnings))
}

fn trivial(field: FieldSpec) -> Result<AlgRef> {
    let one = Vector::from_i64s(field, &[1]);
    HopfAlgebra::new(
        "k",
        field,
        vec!["1".into()],
        vec![vec![one.clone()]],
        one.clone(),
        vec![vec![(0, 0, field.one())]],
        one,
        Matrix::identity(field, 1),
    )
    .map(Arc::new)
}

/// Group algebra from a multiplication table `prod[i][j] = index of g_i g_j`
/// and inverse list. Grouplike coproduct, counit 1, antipode g -> g^{-1}.
fn group_algebra(
    name: &str,
    field: FieldSpec,
    labels: Vec<String>,
    prod: &[Vec<usize>],
    inv: &[usize],
) -> Result<AlgRef> {
    let n = labels.len();
    let mut mult = vec![vec![Vector::zero(field, n); n]; n];
    for i in 0..n {
        for j in 0..n {
            mult[i][j] = Vector::basis(field, n, prod[i][j]);
        }
    }
    let unit = Vector::basis(field, n, 0);
    let comult = (0..n).map(|i| vec![(i, i, field.one())]).collect();
    let counit = Vector::from_entries(field, vec![field.one(); n])?;
    let mut antipode = Matrix::zero(field, n, n);
    for (i, &v) in inv.iter().enumerate() {
        antipode.set(i, v, field.one());
    }
    HopfAlgebra::new(name, field, labels, mult, unit, comult, counit, antipode).map(Arc::new)
}

fn cyclic_group_algebra(n: usize, field: FieldSpec) -> Result<AlgRef> {
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g{i}"),
        })
        .collect();
    let prod: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    let inv: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    group_algebra(&format!("kz{n}"), field, labels, &prod, &inv)
}

fn s3_group_algebra(field: FieldSpec) -> Result<AlgRef> {
    // Permutations of {0,1,2} as image arrays, identity first.
    let elems: [[usize; 3]; 6] = [
        [0, 1, 2], // e
        [1, 0, 2], // (12)
        [2, 1, 0], // (13)
        [0, 2, 1], // (23)
        [1, 2, 0], // (123)
        [2, 0, 1], // (132)
    ];
    let labels = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"]
        .map(String::from)
        .to_vec();
    let index_of = |p: [usize; 3]| elems.iter().position(|e| *e == p).expect("closed table");
    let mut prod = vec![vec![0usize; 6]; 6];
    let mut inv = vec![0usize; 6];
    for (i, p) in elems.iter().enumerate() {
        for (j, q) in elems.iter().enumerate() {
            // (p q)(x) = p(q(x))
            prod[i][j] = index_of([p[q[0]], p[q[1]], p[q[2]]]);
        }
        let mut pi = [0usize; 3];
        for (x, &px) in p.iter().enumerate() {
            pi[px] = x;
        }
        inv[i] = index_of(pi);
    }
    group_algebra("ks3", field, labels, &prod, &inv)
}

/// The four-dimensional algebra on [1, g, x, xg].
fn h4(field: FieldSpec) -> Result<AlgRef> {
    let n = 4;
    let one = field.one();
    let from = |entries: &[i64]| Vector::from_i64s(field, entries);
    // Rows: left factor; columns: right factor.
    let z = [0i64, 0, 0, 0];
    let e = |i: usize| {
        let mut v = z;
        v[i] = 1;
        v
    };
    let neg = |i: usize| {
        let mut v = z;
        v[i] = -1;
        v
    };
    let table: [[Vec<i64>; 4]; 4] = [
        [e(0).to_vec(), e(1).to_vec(), e(2).to_vec(), e(3).to_vec()],
        [e(1).to_vec(), e(0).to_vec(), neg(3).to_vec(), neg(2).to_vec()],
        [e(2).to_vec(), e(3).to_vec(), z.to_vec(), z.to_vec()],
        [e(3).to_vec(), e(2).to_vec(), z.to_vec(), z.to_vec()],
    ];
    let mult: Vec<Vec<Vector>> = table
        .iter()
        .map(|row| row.iter().map(|v| from(v)).collect())
        .collect();
    let unit = Vector::basis(field, n, 0);
    let comult: Vec<Vec<(usize, usize, Scalar)>> = vec![
        vec![(0, 0, one.clone())],
        vec![(1, 1, one.clone())],
        vec![(2, 0, one.clone()), (1, 2, one.clone())],
        vec![(3, 1, one.clone()), (0, 3, one.clone())],
    ];
    let counit = Vector::from_i64s(field, &[1, 1, 0, 0]);
    // S(1) = 1, S(g) = g, S(x) = xg, S(xg) = -x.
    let mut antipode = Matrix::zero(field, n, n);
    antipode.set(0, 0, one.clone());
    antipode.set(1, 1, one.clone());
    antipode.set(2, 3, one.clone());
    antipode.set(3, 2, field.from_i64(-1));
    HopfAlgebra::new(
        "h4",
        field,
        vec!["1".into(), "g".into(), "x".into(), "xg".into()],
        mult,
        unit,
        comult,
        counit,
        antipode,
    )
    .map(Arc::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h4_relations() {
        let h = builtin("h4", FieldSpec::Rational).unwrap();
        let f = FieldSpec::Rational;
        // g^2 = 1, x^2 = 0, (xg)(xg) = 0, g x = -(xg), x g = xg
        assert_eq!(*h.mul_basis(1, 1), Vector::from_i64s(f, &[1, 0, 0, 0]));
        assert!(h.mul_basis(2, 2).is_zero());
        assert!(h.mul_basis(3, 3).is_zero());
        assert_eq!(*h.mul_basis(1, 2), Vector::from_i64s(f, &[0, 0, 0, -1]));
        assert_eq!(*h.mul_basis(2, 1), Vector::from_i64s(f, &[0, 0, 0, 1]));
    }

    #[test]
    fn h4_char2_warns_but_builds() {
        let (h, warnings) = builtin_with_warnings("h4", FieldSpec::Fp(2)).unwrap();
        assert!(!warnings.is_empty());
        assert!(h.verify().passed());
    }

    #[test]
    fn s3_is_a_group() {
        let h = builtin("ks3", FieldSpec::Rational).unwrap();
        assert!(h.verify().passed());
        // noncommutative: (12)(13) != (13)(12)
        assert_ne!(h.mul_basis(1, 2), h.mul_basis(2, 1));
    }

    #[test]
    fn unknown_name_is_an_error() {
        assert!(builtin("kz5", FieldSpec::Rational).is_err());
    }
}
