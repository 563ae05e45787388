//! Operator families on right comodules and their coherence laws.
//!
//! A convolution-invertible normalized lazy bilinear form `sigma` acts on
//! every pair of right comodules through
//!
//! ```text
//!     T[M,N](m (x) n) = m0 (x) n0 * sigma(m1, n1),
//! ```
//!
//! and this module decides which coherence laws such a family satisfies:
//! the twine laws (db0), (db1), (db2) with the unit consequence (re1) and
//! the commutations (lac1), (lac2); the strong laws (st1)-(st3); the
//! pure-braided laws (a1), (a2), (baba), (b2), (cab), (t1t) with the unit
//! consequences (t1a), (t1b) for a pair of triple-indexed families; and
//! the exchange law (dstr) for object-indexed families R[M](m) = m0 *
//! gamma(m1). Families may instead be given as explicit matrices keyed by
//! comodule names; those are checked literally, and every index pattern an
//! instance needs must be stored (no interpolation). The unit object is
//! the one-dimensional comodule named `trivial`, and tensor objects are
//! named `left(x)right`.
//!
//! Instances whose ambient tensor space would exceed
//! [`INSTANCE_DIM_CAP`] dimensions are skipped; for the built-in algebras
//! every all-atomic pattern stays well below the cap, and those patterns
//! already determine the generated families. Witness indices list the
//! registered-object positions of the instance followed by the flat basis
//! index where the two sides differ.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::cocycles;
use crate::comodule::Comodule;
use crate::error::{Error, Result};
use crate::forms::{BilinearForm, LinearForm};
use crate::hopf::AlgRef;
use crate::linalg::{tensor_index, tensor_unindex, Matrix, Vector};
use crate::report::CheckReport;
use crate::scalar::{FieldSpec, Scalar};

/// Largest flat dimension of an axiom instance that is still checked.
pub const INSTANCE_DIM_CAP: usize = 4096;

/// Explicit matrices up to this size get an exact rank check when stored;
/// larger ones only fail once an inverse of theirs is requested.
const RANK_CHECK_CAP: usize = 256;

/// Dense materialization (`pair_matrix`, `triple_matrix`, ...) refuses
/// operators above this flat dimension; compare sparsely instead.
const DENSE_CAP: usize = 1024;

/// Basis loops at least this long run on the rayon pool.
const PAR_CUTOFF: usize = 512;

/// Rows of an endomorphism in sparse form: row `i` lists the nonzero
/// `(column, coefficient)` pairs of the image of basis vector `i`.
type SparseRows = Vec<Vec<(usize, Scalar)>>;

fn bump(acc: &mut BTreeMap<usize, Scalar>, at: usize, w: Scalar) {
    match acc.entry(at) {
        Entry::Occupied(mut e) => {
            let s = &*e.get() + &w;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
        Entry::Vacant(v) => {
            if !w.is_zero() {
                v.insert(w);
            }
        }
    }
}

fn sparsify(m: &Matrix) -> SparseRows {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(c, s)| (c, s.clone()))
                .collect()
        })
        .collect()
}

fn densify(field: FieldSpec, rows: &SparseRows) -> Matrix {
    let n = rows.len();
    let mut m = Matrix::zero(field, n, n);
    for (r, row) in rows.iter().enumerate() {
        for (c, w) in row {
            m.set(r, *c, w.clone());
        }
    }
    m
}

/// Rows of `T[A,B]` generated by a bilinear form.
fn form_rows(form: &BilinearForm, a: &Comodule, b: &Comodule) -> SparseRows {
    let db = b.dim();
    let mut out = Vec::with_capacity(a.dim() * db);
    for i in 0..a.dim() {
        for j in 0..db {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for &(i0, i1, ref c) in a.coaction_basis(i) {
                for &(j0, j1, ref c2) in b.coaction_basis(j) {
                    let w = &(c * c2) * form.eval_basis(i1, j1);
                    bump(&mut acc, tensor_index(i0, j0, db), w);
                }
            }
            out.push(acc.into_iter().collect());
        }
    }
    out
}

fn rows_compose_is_identity(first: &SparseRows, second: &SparseRows) -> bool {
    for (i, row) in first.iter().enumerate() {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (t, w) in row {
            for (u, w2) in &second[*t] {
                bump(&mut acc, *u, w * w2);
            }
        }
        let mut it = acc.iter();
        match (it.next(), it.next()) {
            (Some((k, v)), None) if *k == i && v.is_one() => {}
            _ => return false,
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Pair-indexed families

#[derive(Clone)]
struct StoredMap {
    dim: usize,
    rows: Arc<SparseRows>,
}

#[derive(Clone)]
enum Generator {
    Form {
        sigma: BilinearForm,
        sigma_inv: BilinearForm,
    },
    Explicit(BTreeMap<(String, String), StoredMap>),
}

/// A family of invertible operators `T[M,N]` on tensor squares of
/// registered comodules, either generated by a bilinear form or stored as
/// explicit matrices keyed by comodule names.
pub struct PairMapFamily {
    algebra: AlgRef,
    objects: Vec<Comodule>,
    gen: Generator,
}

fn validate_objects(algebra: &AlgRef, comodules: &[Comodule]) -> Result<Vec<Comodule>> {
    if comodules.is_empty() {
        return Err(Error::PrereqViolated(
            "a family needs at least one registered comodule".into(),
        ));
    }
    let mut names = BTreeSet::new();
    for c in comodules {
        if !c.algebra().same_structure(algebra) {
            return Err(Error::FieldMismatch(format!(
                "comodule {} lives over a different algebra",
                c.name()
            )));
        }
        let rep = c.verify();
        if !rep.passed() {
            return Err(Error::PrereqViolated(format!(
                "comodule {} fails its axioms: {rep}",
                c.name()
            )));
        }
        if !names.insert(c.name().to_string()) {
            return Err(Error::PrereqViolated(format!(
                "two registered comodules share the name {}",
                c.name()
            )));
        }
    }
    Ok(comodules.to_vec())
}

fn store_matrix(
    maps: &mut BTreeMap<(String, String), StoredMap>,
    key: (String, String),
    m: &Matrix,
    field: FieldSpec,
) -> Result<()> {
    if m.field() != field {
        return Err(Error::FieldMismatch(format!(
            "the matrix for ({}, {}) is over the wrong field",
            key.0, key.1
        )));
    }
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "the matrix for ({}, {}) is not square",
            key.0, key.1
        )));
    }
    if m.rows() <= RANK_CHECK_CAP && m.rank() != m.rows() {
        return Err(Error::NotInvertible(format!(
            "the stored matrix for ({}, {}) is singular",
            key.0, key.1
        )));
    }
    if maps
        .insert(
            key.clone(),
            StoredMap {
                dim: m.rows(),
                rows: Arc::new(sparsify(m)),
            },
        )
        .is_some()
    {
        return Err(Error::PrereqViolated(format!(
            "two matrices stored for the pair ({}, {})",
            key.0, key.1
        )));
    }
    Ok(())
}

impl PairMapFamily {
    pub fn algebra(&self) -> &AlgRef {
        &self.algebra
    }

    pub fn objects(&self) -> &[Comodule] {
        &self.objects
    }

    /// Family with explicit matrices keyed by `(left name, right name)`.
    pub fn explicit(
        algebra: &AlgRef,
        comodules: &[Comodule],
        maps: Vec<((String, String), Matrix)>,
    ) -> Result<PairMapFamily> {
        let objects = validate_objects(algebra, comodules)?;
        let mut stored = BTreeMap::new();
        for (key, m) in &maps {
            store_matrix(&mut stored, key.clone(), m, algebra.field())?;
        }
        Ok(PairMapFamily {
            algebra: algebra.clone(),
            objects,
            gen: Generator::Explicit(stored),
        })
    }

    /// Dense matrix of `T[A,B]`; rows act on row vectors, row `i` is the
    /// image of the `i`-th basis vector of `A (x) B`.
    pub fn pair_matrix(&self, a: &Comodule, b: &Comodule) -> Result<Matrix> {
        let flat = a.dim() * b.dim();
        if flat > DENSE_CAP {
            return Err(Error::DimensionMismatch(format!(
                "dense materialization is limited to flat dimension {DENSE_CAP}, got {flat}"
            )));
        }
        let mut cache = OpCache::new(self);
        let rows = cache.rows(a, b, false)?;
        Ok(densify(self.algebra.field(), &rows))
    }
}

/// Whether two families assign the same operator to the pair `(a, b)`.
pub fn pair_maps_agree(
    x: &PairMapFamily,
    y: &PairMapFamily,
    a: &Comodule,
    b: &Comodule,
) -> Result<bool> {
    let rx = OpCache::new(x).rows(a, b, false)?;
    let ry = OpCache::new(y).rows(a, b, false)?;
    Ok(*rx == *ry)
}

fn generator_rows(
    gen: &Generator,
    field: FieldSpec,
    cache: &mut BTreeMap<(String, String, bool), Arc<SparseRows>>,
    a: &Comodule,
    b: &Comodule,
    inv: bool,
) -> Result<Arc<SparseRows>> {
    let key = (a.name().to_string(), b.name().to_string(), inv);
    if let Some(r) = cache.get(&key) {
        return Ok(r.clone());
    }
    let built = match gen {
        Generator::Form { sigma, sigma_inv } => Arc::new(form_rows(
            if inv { sigma_inv } else { sigma },
            a,
            b,
        )),
        Generator::Explicit(maps) => {
            let name_key = (key.0.clone(), key.1.clone());
            let stored = maps.get(&name_key).ok_or_else(|| {
                Error::MissingMatrix(format!(
                    "no stored matrix for the pair ({}, {})",
                    key.0, key.1
                ))
            })?;
            let want = a.dim() * b.dim();
            if stored.dim != want {
                return Err(Error::DimensionMismatch(format!(
                    "the stored matrix for ({}, {}) has dimension {}, the pair has {want}",
                    key.0, key.1, stored.dim
                )));
            }
            if inv {
                let dense = densify(field, &stored.rows);
                let inverse = dense.inverse().map_err(|_| {
                    Error::NotInvertible(format!(
                        "the stored matrix for ({}, {}) is singular",
                        key.0, key.1
                    ))
                })?;
                Arc::new(sparsify(&inverse))
            } else {
                stored.rows.clone()
            }
        }
    };
    cache.insert(key, built.clone());
    Ok(built)
}

struct OpCache<'f> {
    family: &'f PairMapFamily,
    rows: BTreeMap<(String, String, bool), Arc<SparseRows>>,
}

impl<'f> OpCache<'f> {
    fn new(family: &'f PairMapFamily) -> OpCache<'f> {
        OpCache {
            family,
            rows: BTreeMap::new(),
        }
    }

    fn rows(&mut self, a: &Comodule, b: &Comodule, inv: bool) -> Result<Arc<SparseRows>> {
        generator_rows(
            &self.family.gen,
            self.family.algebra.field(),
            &mut self.rows,
            a,
            b,
            inv,
        )
    }
}

/// The family generated by a normalized convolution-invertible lazy form.
///
/// Matrices for every ordered pair of registered comodules are built
/// eagerly and verified invertible; singularity cannot occur for an
/// invertible generator and is reported as an internal error.
pub fn twine_from_cocycle(sigma: &BilinearForm, comodules: &[Comodule]) -> Result<PairMapFamily> {
    let algebra = sigma.algebra().clone();
    if !sigma.is_normalized() {
        return Err(Error::PrereqViolated(
            "the form is not normalized on the unit".into(),
        ));
    }
    let lazy = cocycles::is_lazy_cocycle_condition(sigma);
    if !lazy.passed() {
        return Err(Error::PrereqViolated(format!("the form is not lazy: {lazy}")));
    }
    let sigma_inv = sigma
        .convolution_inverse()
        .map_err(|_| Error::PrereqViolated("the form has no convolution inverse".into()))?;
    let objects = validate_objects(&algebra, comodules)?;
    for a in &objects {
        for b in &objects {
            let fwd = form_rows(sigma, a, b);
            let bwd = form_rows(&sigma_inv, a, b);
            if !rows_compose_is_identity(&fwd, &bwd) || !rows_compose_is_identity(&bwd, &fwd) {
                return Err(Error::NotInvertible(format!(
                    "internal: the generated matrix for ({}, {}) is singular",
                    a.name(),
                    b.name()
                )));
            }
        }
    }
    Ok(PairMapFamily {
        algebra,
        objects,
        gen: Generator::Form {
            sigma: sigma.clone(),
            sigma_inv,
        },
    })
}

/// The identity family, generated by the counit pair.
pub fn trivial_twine(algebra: &AlgRef, comodules: &[Comodule]) -> Result<PairMapFamily> {
    twine_from_cocycle(&BilinearForm::counit_pair(algebra), comodules)
}

/// The default instance set: trivial, regular, and the tensor square of
/// the regular comodule.
pub fn default_comodules(algebra: &AlgRef) -> Result<Vec<Comodule>> {
    let reg = Comodule::regular(algebra);
    let square = reg.tensor(&reg)?;
    Ok(vec![Comodule::trivial(algebra), reg, square])
}

// ---------------------------------------------------------------------------
// The instance engine

/// One operator in application order, acting on the legs `[lo, hi)` of a
/// flat tensor space and leaving the other legs alone.
#[derive(Clone)]
struct ResolvedOp {
    lo: usize,
    hi: usize,
    rows: Arc<SparseRows>,
}

fn apply_ops(
    field: FieldSpec,
    dims: &[usize],
    ops: &[ResolvedOp],
    start: usize,
) -> BTreeMap<usize, Scalar> {
    let mut cur = BTreeMap::new();
    cur.insert(start, field.one());
    for op in ops {
        let tail: usize = dims[op.hi..].iter().product();
        let span: usize = dims[op.lo..op.hi].iter().product();
        let mut next = BTreeMap::new();
        for (idx, coeff) in &cur {
            let lo = idx % tail;
            let mid = (idx / tail) % span;
            let head = idx / (tail * span);
            for (t, w) in &op.rows[mid] {
                bump(&mut next, (head * span + t) * tail + lo, coeff * w);
            }
        }
        cur = next;
    }
    cur
}

fn dense_vec(field: FieldSpec, dim: usize, terms: &BTreeMap<usize, Scalar>) -> Vector {
    let mut v = Vector::zero(field, dim);
    for (i, c) in terms {
        v.set(*i, c.clone());
    }
    v
}

/// Compares two operator composites on every basis vector; `None` means
/// they agree, otherwise the report carries `indices ++ [basis index]`.
fn instance_report(
    field: FieldSpec,
    tag: &str,
    indices: &[usize],
    dims: &[usize],
    lhs: &[ResolvedOp],
    rhs: &[ResolvedOp],
) -> Option<CheckReport> {
    let total: usize = dims.iter().product();
    let differ = |e: usize| {
        let lv = apply_ops(field, dims, lhs, e);
        let rv = apply_ops(field, dims, rhs, e);
        if lv == rv {
            None
        } else {
            Some((e, dense_vec(field, total, &lv), dense_vec(field, total, &rv)))
        }
    };
    let found = if total >= PAR_CUTOFF {
        (0..total).into_par_iter().find_map_first(differ)
    } else {
        (0..total).find_map(differ)
    };
    found.map(|(e, lv, rv)| {
        let mut w = indices.to_vec();
        w.push(e);
        CheckReport::fail_vectors(tag, w, lv, rv)
    })
}

fn tensor_range(legs: &[&Comodule], lo: usize, hi: usize) -> Result<Comodule> {
    let mut cur = legs[lo].clone();
    for leg in &legs[lo + 1..hi] {
        cur = cur.tensor(leg)?;
    }
    Ok(cur)
}

/// A pair operator `T[legs[lo..mid], legs[mid..hi]]` in an instance.
#[derive(Clone, Copy)]
struct Span {
    lo: usize,
    mid: usize,
    hi: usize,
    inv: bool,
}

fn sp(lo: usize, mid: usize, hi: usize) -> Span {
    Span { lo, mid, hi, inv: false }
}

fn spi(lo: usize, mid: usize, hi: usize) -> Span {
    Span { lo, mid, hi, inv: true }
}

fn resolve_spans(
    cache: &mut OpCache<'_>,
    legs: &[&Comodule],
    spans: &[Span],
) -> Result<Vec<ResolvedOp>> {
    spans
        .iter()
        .map(|s| {
            let left = tensor_range(legs, s.lo, s.mid)?;
            let right = tensor_range(legs, s.mid, s.hi)?;
            Ok(ResolvedOp {
                lo: s.lo,
                hi: s.hi,
                rows: cache.rows(&left, &right, s.inv)?,
            })
        })
        .collect()
}

fn pair_instance(
    cache: &mut OpCache<'_>,
    tag: &str,
    indices: &[usize],
    legs: &[&Comodule],
    lhs: &[Span],
    rhs: &[Span],
) -> Result<Option<CheckReport>> {
    let field = cache.family.algebra.field();
    let dims: Vec<usize> = legs.iter().map(|c| c.dim()).collect();
    let l = resolve_spans(cache, legs, lhs)?;
    let r = resolve_spans(cache, legs, rhs)?;
    Ok(instance_report(field, tag, indices, &dims, &l, &r))
}

fn flat_dim(legs: &[&Comodule]) -> usize {
    legs.iter().map(|c| c.dim()).product()
}

/// All ordered triples of registered object indices, in lexicographic
/// order.
pub fn all_triples(family: &PairMapFamily) -> Vec<[usize; 3]> {
    let n = family.objects.len();
    let mut out = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                out.push([x, y, z]);
            }
        }
    }
    out
}

fn used_indices(family: &PairMapFamily, triples: &[[usize; 3]]) -> Result<Vec<usize>> {
    let n = family.objects.len();
    let mut used = BTreeSet::new();
    for t in triples {
        for &i in t {
            if i >= n {
                return Err(Error::OutOfRange(format!(
                    "object index {i} exceeds the {n} registered comodules"
                )));
            }
            used.insert(i);
        }
    }
    Ok(used.into_iter().collect())
}

/// Checks the twine laws on the registered instances: (db0), the unit
/// consequence (re1), (db1) with the commutations (lac1) and (lac2) per
/// triple, and (db2) on the quadruples drawn from the triple indices.
pub fn check_twine(family: &PairMapFamily, triples: &[[usize; 3]]) -> Result<CheckReport> {
    let unit = Comodule::trivial(&family.algebra);
    let used = used_indices(family, triples)?;
    let mut cache = OpCache::new(family);

    if let Some(rep) = pair_instance(&mut cache, "db0", &[], &[&unit, &unit], &[sp(0, 1, 2)], &[])?
    {
        return Ok(rep);
    }
    for &x in &used {
        let ob = &family.objects[x];
        if let Some(rep) = pair_instance(&mut cache, "re1", &[x], &[ob, &unit], &[sp(0, 1, 2)], &[])?
        {
            return Ok(rep);
        }
        if let Some(rep) = pair_instance(&mut cache, "re1", &[x], &[&unit, ob], &[sp(0, 1, 2)], &[])?
        {
            return Ok(rep);
        }
    }
    for t in triples {
        let legs = [
            &family.objects[t[0]],
            &family.objects[t[1]],
            &family.objects[t[2]],
        ];
        if flat_dim(&legs) > INSTANCE_DIM_CAP {
            continue;
        }
        // (D[X,Y] (x) id) D[X(x)Y, Z]  =  (id (x) D[Y,Z]) D[X, Y(x)Z]
        if let Some(rep) = pair_instance(
            &mut cache,
            "db1",
            t,
            &legs,
            &[sp(0, 2, 3), sp(0, 1, 2)],
            &[sp(0, 1, 3), sp(1, 2, 3)],
        )? {
            return Ok(rep);
        }
        if let Some(rep) = pair_instance(
            &mut cache,
            "lac1",
            t,
            &legs,
            &[sp(0, 2, 3), sp(0, 1, 2)],
            &[sp(0, 1, 2), sp(0, 2, 3)],
        )? {
            return Ok(rep);
        }
        if let Some(rep) = pair_instance(
            &mut cache,
            "lac2",
            t,
            &legs,
            &[sp(0, 1, 3), sp(1, 2, 3)],
            &[sp(1, 2, 3), sp(0, 1, 3)],
        )? {
            return Ok(rep);
        }
    }
    for &x in &used {
        for &y in &used {
            for &z in &used {
                for &w in &used {
                    let legs = [
                        &family.objects[x],
                        &family.objects[y],
                        &family.objects[z],
                        &family.objects[w],
                    ];
                    if flat_dim(&legs) > INSTANCE_DIM_CAP {
                        continue;
                    }
                    // (D[X(x)Y,Z] (x) id)(id (x) Dinv[Y,Z] (x) id)(id (x) D[Y,Z(x)T])
                    //   = (id (x) D[Y,Z(x)T])(id (x) Dinv[Y,Z] (x) id)(D[X(x)Y,Z] (x) id)
                    if let Some(rep) = pair_instance(
                        &mut cache,
                        "db2",
                        &[x, y, z, w],
                        &legs,
                        &[sp(1, 2, 4), spi(1, 2, 3), sp(0, 2, 3)],
                        &[sp(0, 2, 3), spi(1, 2, 3), sp(1, 2, 4)],
                    )? {
                        return Ok(rep);
                    }
                }
            }
        }
    }
    Ok(CheckReport::pass("twine"))
}

/// Checks (st1)-(st3) on all registered triples.
pub fn check_strong_twine(family: &PairMapFamily) -> Result<CheckReport> {
    let unit = Comodule::trivial(&family.algebra);
    let mut cache = OpCache::new(family);
    if let Some(rep) = pair_instance(&mut cache, "st1", &[], &[&unit, &unit], &[sp(0, 1, 2)], &[])?
    {
        return Ok(rep);
    }
    for t in &all_triples(family) {
        let legs = [
            &family.objects[t[0]],
            &family.objects[t[1]],
            &family.objects[t[2]],
        ];
        if flat_dim(&legs) > INSTANCE_DIM_CAP {
            continue;
        }
        if let Some(rep) = pair_instance(
            &mut cache,
            "st2",
            t,
            &legs,
            &[sp(0, 2, 3), sp(0, 1, 2)],
            &[sp(0, 1, 3), sp(1, 2, 3)],
        )? {
            return Ok(rep);
        }
        // (T[U,V] (x) id)(id (x) T[V,W])  =  (id (x) T[V,W])(T[U,V] (x) id)
        if let Some(rep) = pair_instance(
            &mut cache,
            "st3",
            t,
            &legs,
            &[sp(1, 2, 3), sp(0, 1, 2)],
            &[sp(0, 1, 2), sp(1, 2, 3)],
        )? {
            return Ok(rep);
        }
    }
    Ok(CheckReport::pass("strong-twine"))
}

// ---------------------------------------------------------------------------
// Naturality against explicit comodule morphisms

fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let field = a.field();
    let mut out = Matrix::zero(field, a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for k in 0..a.cols() {
            let av = a.get(i, k);
            if av.is_zero() {
                continue;
            }
            for j in 0..b.rows() {
                for l in 0..b.cols() {
                    let bv = b.get(j, l);
                    if bv.is_zero() {
                        continue;
                    }
                    out.set(i * b.rows() + j, k * b.cols() + l, av * bv);
                }
            }
        }
    }
    out
}

fn first_mismatch(a: &Matrix, b: &Matrix) -> Option<(usize, usize)> {
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            if a.get(r, c) != b.get(r, c) {
                return Some((r, c));
            }
        }
    }
    None
}

/// The canonical coaction-respecting maps among the default comodules:
/// the unit into the regular comodule and the multiplication from its
/// tensor square, whichever endpoints are registered.
pub fn default_morphisms(family: &PairMapFamily) -> Vec<(usize, usize, Matrix)> {
    let field = family.algebra.field();
    let find = |n: &str| family.objects.iter().position(|c| c.name() == n);
    let mut out = Vec::new();
    if let (Some(t), Some(r)) = (find("trivial"), find("regular")) {
        let unit = Matrix::from_rows(field, vec![family.algebra.one().clone()])
            .expect("unit row");
        out.push((t, r, unit));
    }
    if let (Some(rr), Some(r)) = (find("regular(x)regular"), find("regular")) {
        let n = family.algebra.dim();
        let rows = (0..n * n)
            .map(|f| {
                let (i, j) = tensor_unindex(f, n);
                family.algebra.mul_basis(i, j).clone()
            })
            .collect();
        out.push((rr, r, Matrix::from_rows(field, rows).expect("mult rows")));
    }
    out
}

/// Naturality of the family in both slots against the given comodule
/// morphisms `(from, to, matrix)`, with matrix rows acting on row vectors.
pub fn check_naturality(
    family: &PairMapFamily,
    morphisms: &[(usize, usize, Matrix)],
) -> Result<CheckReport> {
    let field = family.algebra.field();
    let n = family.objects.len();
    for (k, (from, to, f)) in morphisms.iter().enumerate() {
        if *from >= n || *to >= n {
            return Err(Error::OutOfRange(format!(
                "morphism {k} refers past the {n} registered comodules"
            )));
        }
        let m = &family.objects[*from];
        let m2 = &family.objects[*to];
        if !m.is_morphism_to(m2, f) {
            return Err(Error::PrereqViolated(format!(
                "map {k} is not a comodule morphism from {} to {}",
                m.name(),
                m2.name()
            )));
        }
        for (nidx, nob) in family.objects.iter().enumerate() {
            let id_n = Matrix::identity(field, nob.dim());
            // first slot: apply (f (x) id) then T[to, N] == T[from, N] then (f (x) id)
            let fi = kron(f, &id_n);
            let lhs = fi.mul(&family.pair_matrix(m2, nob)?);
            let rhs = family.pair_matrix(m, nob)?.mul(&fi);
            if let Some((r, c)) = first_mismatch(&lhs, &rhs) {
                return Ok(CheckReport::fail_scalars(
                    "nat1",
                    vec![k, nidx, r, c],
                    lhs.get(r, c).clone(),
                    rhs.get(r, c).clone(),
                ));
            }
            // second slot
            let idf = kron(&id_n, f);
            let lhs = idf.mul(&family.pair_matrix(nob, m2)?);
            let rhs = family.pair_matrix(nob, m)?.mul(&idf);
            if let Some((r, c)) = first_mismatch(&lhs, &rhs) {
                return Ok(CheckReport::fail_scalars(
                    "nat2",
                    vec![k, nidx, r, c],
                    lhs.get(r, c).clone(),
                    rhs.get(r, c).clone(),
                ));
            }
        }
    }
    Ok(CheckReport::pass("naturality"))
}

// ---------------------------------------------------------------------------
// Materialization

fn materialize_rows(field: FieldSpec, dims: &[usize], ops: &[ResolvedOp]) -> SparseRows {
    let total: usize = dims.iter().product();
    (0..total)
        .map(|e| apply_ops(field, dims, ops, e).into_iter().collect())
        .collect()
}

/// Every pair of comodules the twine checks over `objects` can ask for:
/// unit pairs, atomic pairs, and the one-step tensor patterns, capped like
/// the instances themselves.
fn pair_patterns(algebra: &AlgRef, objects: &[Comodule]) -> Result<Vec<(Comodule, Comodule)>> {
    let unit = Comodule::trivial(algebra);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |a: Comodule, b: Comodule, out: &mut Vec<(Comodule, Comodule)>| {
        if seen.insert((a.name().to_string(), b.name().to_string())) {
            out.push((a, b));
        }
    };
    push(unit.clone(), unit.clone(), &mut out);
    for x in objects {
        push(x.clone(), unit.clone(), &mut out);
        push(unit.clone(), x.clone(), &mut out);
    }
    for x in objects {
        for y in objects {
            push(x.clone(), y.clone(), &mut out);
        }
    }
    for x in objects {
        for y in objects {
            for z in objects {
                if x.dim() * y.dim() * z.dim() > INSTANCE_DIM_CAP {
                    continue;
                }
                push(x.tensor(y)?, z.clone(), &mut out);
                push(x.clone(), y.tensor(z)?, &mut out);
            }
        }
    }
    Ok(out)
}

/// Dense copies of every pair matrix the checks over the registered
/// objects use, for building explicit families; keys above the dense
/// materialization cap are skipped.
pub fn materialized_pair_maps(family: &PairMapFamily) -> Result<Vec<((String, String), Matrix)>> {
    let field = family.algebra.field();
    let mut cache = OpCache::new(family);
    let mut out = Vec::new();
    for (a, b) in pair_patterns(&family.algebra, &family.objects)? {
        if a.dim() * b.dim() > DENSE_CAP {
            continue;
        }
        let rows = cache.rows(&a, &b, false)?;
        out.push((
            (a.name().to_string(), b.name().to_string()),
            densify(field, &rows),
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Triple-indexed families

/// Which of the two triple families an operator belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    A,
    B,
}

#[derive(Clone)]
enum TripleGen {
    /// Both triple families induced by a pair family:
    /// A[P,Q,R] = D[P(x)Q, R] (id (x) Dinv[Q,R]) and
    /// B[P,Q,R] = (id (x) Dinv[Q,R]) D[P(x)Q, R].
    Twine(Generator),
    Explicit {
        a: BTreeMap<(String, String, String), StoredMap>,
        b: BTreeMap<(String, String, String), StoredMap>,
    },
}

/// Two families of invertible operators indexed by ordered triples of
/// registered comodules.
pub struct TripleMapFamily {
    algebra: AlgRef,
    objects: Vec<Comodule>,
    gen: TripleGen,
}

/// A triple operator on legs `[lo, l1) (x) [l1, l2) (x) [l2, hi)`.
#[derive(Clone, Copy)]
struct TSpan {
    lo: usize,
    l1: usize,
    l2: usize,
    hi: usize,
    side: Side,
}

fn ta(lo: usize, l1: usize, l2: usize, hi: usize) -> TSpan {
    TSpan { lo, l1, l2, hi, side: Side::A }
}

fn tb(lo: usize, l1: usize, l2: usize, hi: usize) -> TSpan {
    TSpan { lo, l1, l2, hi, side: Side::B }
}

struct TriCache<'f> {
    family: &'f TripleMapFamily,
    pair: BTreeMap<(String, String, bool), Arc<SparseRows>>,
    tri: BTreeMap<(String, String, String, bool), Arc<SparseRows>>,
}

impl<'f> TriCache<'f> {
    fn new(family: &'f TripleMapFamily) -> TriCache<'f> {
        TriCache {
            family,
            pair: BTreeMap::new(),
            tri: BTreeMap::new(),
        }
    }

    /// The operators realizing one triple map, in application order.
    fn triple_ops(&mut self, legs: &[&Comodule], t: &TSpan) -> Result<Vec<ResolvedOp>> {
        let field = self.family.algebra.field();
        let p = tensor_range(legs, t.lo, t.l1)?;
        let q = tensor_range(legs, t.l1, t.l2)?;
        let r = tensor_range(legs, t.l2, t.hi)?;
        match &self.family.gen {
            TripleGen::Twine(gen) => {
                let pq = p.tensor(&q)?;
                let d_qr_inv = generator_rows(gen, field, &mut self.pair, &q, &r, true)?;
                let d_pq_r = generator_rows(gen, field, &mut self.pair, &pq, &r, false)?;
                Ok(match t.side {
                    Side::A => vec![
                        ResolvedOp { lo: t.l1, hi: t.hi, rows: d_qr_inv },
                        ResolvedOp { lo: t.lo, hi: t.hi, rows: d_pq_r },
                    ],
                    Side::B => vec![
                        ResolvedOp { lo: t.lo, hi: t.hi, rows: d_pq_r },
                        ResolvedOp { lo: t.l1, hi: t.hi, rows: d_qr_inv },
                    ],
                })
            }
            TripleGen::Explicit { a, b } => {
                let key = (
                    p.name().to_string(),
                    q.name().to_string(),
                    r.name().to_string(),
                    t.side == Side::A,
                );
                if let Some(rows) = self.tri.get(&key) {
                    return Ok(vec![ResolvedOp { lo: t.lo, hi: t.hi, rows: rows.clone() }]);
                }
                let maps = if t.side == Side::A { a } else { b };
                let stored = maps
                    .get(&(key.0.clone(), key.1.clone(), key.2.clone()))
                    .ok_or_else(|| {
                        Error::MissingMatrix(format!(
                            "no stored matrix for the triple ({}, {}, {}) on side {:?}",
                            key.0, key.1, key.2, t.side
                        ))
                    })?;
                let want = p.dim() * q.dim() * r.dim();
                if stored.dim != want {
                    return Err(Error::DimensionMismatch(format!(
                        "the stored matrix for ({}, {}, {}) has dimension {}, the triple has {want}",
                        key.0, key.1, key.2, stored.dim
                    )));
                }
                self.tri.insert(key, stored.rows.clone());
                Ok(vec![ResolvedOp { lo: t.lo, hi: t.hi, rows: stored.rows.clone() }])
            }
        }
    }
}

fn tri_instance(
    cache: &mut TriCache<'_>,
    tag: &str,
    indices: &[usize],
    legs: &[&Comodule],
    lhs: &[TSpan],
    rhs: &[TSpan],
) -> Result<Option<CheckReport>> {
    let field = cache.family.algebra.field();
    let dims: Vec<usize> = legs.iter().map(|c| c.dim()).collect();
    let mut l = Vec::new();
    for t in lhs {
        l.extend(cache.triple_ops(legs, t)?);
    }
    let mut r = Vec::new();
    for t in rhs {
        r.extend(cache.triple_ops(legs, t)?);
    }
    Ok(instance_report(field, tag, indices, &dims, &l, &r))
}

impl TripleMapFamily {
    pub fn algebra(&self) -> &AlgRef {
        &self.algebra
    }

    pub fn objects(&self) -> &[Comodule] {
        &self.objects
    }

    /// Family with explicit matrices for both sides, keyed by comodule
    /// name triples.
    pub fn explicit(
        algebra: &AlgRef,
        comodules: &[Comodule],
        a_maps: Vec<((String, String, String), Matrix)>,
        b_maps: Vec<((String, String, String), Matrix)>,
    ) -> Result<TripleMapFamily> {
        let objects = validate_objects(algebra, comodules)?;
        let store3 = |maps: Vec<((String, String, String), Matrix)>| -> Result<BTreeMap<(String, String, String), StoredMap>> {
            let mut stored = BTreeMap::new();
            for (key, m) in &maps {
                if m.field() != algebra.field() {
                    return Err(Error::FieldMismatch(format!(
                        "the matrix for ({}, {}, {}) is over the wrong field",
                        key.0, key.1, key.2
                    )));
                }
                if m.rows() != m.cols() {
                    return Err(Error::DimensionMismatch(format!(
                        "the matrix for ({}, {}, {}) is not square",
                        key.0, key.1, key.2
                    )));
                }
                if m.rows() <= RANK_CHECK_CAP && m.rank() != m.rows() {
                    return Err(Error::NotInvertible(format!(
                        "the stored matrix for ({}, {}, {}) is singular",
                        key.0, key.1, key.2
                    )));
                }
                if stored
                    .insert(
                        key.clone(),
                        StoredMap { dim: m.rows(), rows: Arc::new(sparsify(m)) },
                    )
                    .is_some()
                {
                    return Err(Error::PrereqViolated(format!(
                        "two matrices stored for the triple ({}, {}, {})",
                        key.0, key.1, key.2
                    )));
                }
            }
            Ok(stored)
        };
        let a = store3(a_maps)?;
        let b = store3(b_maps)?;
        Ok(TripleMapFamily {
            algebra: algebra.clone(),
            objects,
            gen: TripleGen::Explicit { a, b },
        })
    }

    /// Dense matrix of one triple operator, rows acting on row vectors.
    pub fn triple_matrix(
        &self,
        p: &Comodule,
        q: &Comodule,
        r: &Comodule,
        side: Side,
    ) -> Result<Matrix> {
        let flat = p.dim() * q.dim() * r.dim();
        if flat > DENSE_CAP {
            return Err(Error::DimensionMismatch(format!(
                "dense materialization is limited to flat dimension {DENSE_CAP}, got {flat}"
            )));
        }
        let legs = [p, q, r];
        let dims = [p.dim(), q.dim(), r.dim()];
        let mut cache = TriCache::new(self);
        let tspan = TSpan { lo: 0, l1: 1, l2: 2, hi: 3, side };
        let ops = cache.triple_ops(&legs, &tspan)?;
        let rows = materialize_rows(self.algebra.field(), &dims, &ops);
        Ok(densify(self.algebra.field(), &rows))
    }
}

/// Whether two triple families assign the same operator to `(p, q, r)` on
/// the given side.
pub fn triple_maps_agree(
    x: &TripleMapFamily,
    y: &TripleMapFamily,
    p: &Comodule,
    q: &Comodule,
    r: &Comodule,
    side: Side,
) -> Result<bool> {
    let legs = [p, q, r];
    let dims = [p.dim(), q.dim(), r.dim()];
    let tspan = TSpan { lo: 0, l1: 1, l2: 2, hi: 3, side };
    let ox = TriCache::new(x).triple_ops(&legs, &tspan)?;
    let oy = TriCache::new(y).triple_ops(&legs, &tspan)?;
    let rx = materialize_rows(x.algebra.field(), &dims, &ox);
    let ry = materialize_rows(y.algebra.field(), &dims, &oy);
    Ok(rx == ry)
}

/// Checks the pure-braided laws: (t1t), (t1a), (t1b) on ordered pairs and
/// (a1), (a2), (baba), (b2), (cab) on the quadruples of registered
/// objects.
pub fn check_pure_braided(family: &TripleMapFamily) -> Result<CheckReport> {
    let unit = Comodule::trivial(&family.algebra);
    let n = family.objects.len();
    let mut cache = TriCache::new(family);
    for u in 0..n {
        for v in 0..n {
            let ou = &family.objects[u];
            let ov = &family.objects[v];
            if let Some(rep) = tri_instance(
                &mut cache,
                "t1t",
                &[u, v],
                &[ou, &unit, ov],
                &[ta(0, 1, 2, 3)],
                &[tb(0, 1, 2, 3)],
            )? {
                return Ok(rep);
            }
            for (legs, tag) in [
                ([&unit, ou, ov], "t1a"),
                ([ou, ov, &unit], "t1a"),
            ] {
                if let Some(rep) =
                    tri_instance(&mut cache, tag, &[u, v], &legs, &[ta(0, 1, 2, 3)], &[])?
                {
                    return Ok(rep);
                }
            }
            for (legs, tag) in [
                ([&unit, ou, ov], "t1b"),
                ([ou, ov, &unit], "t1b"),
            ] {
                if let Some(rep) =
                    tri_instance(&mut cache, tag, &[u, v], &legs, &[tb(0, 1, 2, 3)], &[])?
                {
                    return Ok(rep);
                }
            }
        }
    }
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                for x in 0..n {
                    let legs = [
                        &family.objects[u],
                        &family.objects[v],
                        &family.objects[w],
                        &family.objects[x],
                    ];
                    if flat_dim(&legs) > INSTANCE_DIM_CAP {
                        continue;
                    }
                    let idx = [u, v, w, x];
                    // A[U(x)V, W, X] = A[U, V(x)W, X] (id (x) A[V,W,X])
                    if let Some(rep) = tri_instance(
                        &mut cache,
                        "a1",
                        &idx,
                        &legs,
                        &[ta(0, 2, 3, 4)],
                        &[ta(1, 2, 3, 4), ta(0, 1, 3, 4)],
                    )? {
                        return Ok(rep);
                    }
                    // A[U, V, W(x)X] = (A[U,V,W] (x) id) A[U, V(x)W, X]
                    if let Some(rep) = tri_instance(
                        &mut cache,
                        "a2",
                        &idx,
                        &legs,
                        &[ta(0, 1, 2, 4)],
                        &[ta(0, 1, 3, 4), ta(0, 1, 2, 3)],
                    )? {
                        return Ok(rep);
                    }
                    // B[U(x)V, W, X] = (id (x) B[V,W,X]) B[U, V(x)W, X]
                    if let Some(rep) = tri_instance(
                        &mut cache,
                        "baba",
                        &idx,
                        &legs,
                        &[tb(0, 2, 3, 4)],
                        &[tb(0, 1, 3, 4), tb(1, 2, 3, 4)],
                    )? {
                        return Ok(rep);
                    }
                    // B[U, V, W(x)X] = B[U, V(x)W, X] (B[U,V,W] (x) id)
                    if let Some(rep) = tri_instance(
                        &mut cache,
                        "b2",
                        &idx,
                        &legs,
                        &[tb(0, 1, 2, 4)],
                        &[tb(0, 1, 2, 3), tb(0, 1, 3, 4)],
                    )? {
                        return Ok(rep);
                    }
                    // (A[U,V,W] (x) id)(id (x) B[V,W,X])
                    //   = (id (x) B[V,W,X])(A[U,V,W] (x) id)
                    if let Some(rep) = tri_instance(
                        &mut cache,
                        "cab",
                        &idx,
                        &legs,
                        &[tb(1, 2, 3, 4), ta(0, 1, 2, 3)],
                        &[ta(0, 1, 2, 3), tb(1, 2, 3, 4)],
                    )? {
                        return Ok(rep);
                    }
                }
            }
        }
    }
    Ok(CheckReport::pass("pure-braided"))
}

/// The pure-braided pair induced by a twine. The input is verified to be
/// a twine first, and both factorizations of each triple operator are
/// asserted to agree on the registered triples.
pub fn pure_braided_from_twine(family: &PairMapFamily) -> Result<TripleMapFamily> {
    let rep = check_twine(family, &all_triples(family))?;
    if !rep.passed() {
        return Err(Error::AxiomViolation(format!(
            "the family is not a twine: {rep}"
        )));
    }
    let mut cache = OpCache::new(family);
    for t in &all_triples(family) {
        let legs = [
            &family.objects[t[0]],
            &family.objects[t[1]],
            &family.objects[t[2]],
        ];
        if flat_dim(&legs) > INSTANCE_DIM_CAP {
            continue;
        }
        // D[X(x)Y, Z] (id (x) Dinv[Y,Z])  =  (Dinv[X,Y] (x) id) D[X, Y(x)Z]
        if let Some(rep) = pair_instance(
            &mut cache,
            "auri",
            t,
            &legs,
            &[spi(1, 2, 3), sp(0, 2, 3)],
            &[sp(0, 1, 3), spi(0, 1, 2)],
        )? {
            return Err(Error::AxiomViolation(format!(
                "internal: the two factorizations of the first triple operator disagree: {rep}"
            )));
        }
        // (id (x) Dinv[Y,Z]) D[X(x)Y, Z]  =  D[X, Y(x)Z] (Dinv[X,Y] (x) id)
        if let Some(rep) = pair_instance(
            &mut cache,
            "buri",
            t,
            &legs,
            &[sp(0, 2, 3), spi(1, 2, 3)],
            &[spi(0, 1, 2), sp(0, 1, 3)],
        )? {
            return Err(Error::AxiomViolation(format!(
                "internal: the two factorizations of the second triple operator disagree: {rep}"
            )));
        }
    }
    Ok(TripleMapFamily {
        algebra: family.algebra.clone(),
        objects: family.objects.clone(),
        gen: TripleGen::Twine(family.gen.clone()),
    })
}

/// Recovers a pair family from a pure-braided one as `D[U,V] = A[U,I,V]`,
/// after verifying the input laws; the produced family is materialized
/// explicitly and checked to satisfy the unit and interchange identities.
pub fn twine_from_pure_braided(family: &TripleMapFamily) -> Result<PairMapFamily> {
    let rep = check_pure_braided(family)?;
    if !rep.passed() {
        return Err(Error::AxiomViolation(format!(
            "the family is not pure-braided: {rep}"
        )));
    }
    let field = family.algebra.field();
    let unit = Comodule::trivial(&family.algebra);
    let mut tri_cache = TriCache::new(family);
    let mut maps = BTreeMap::new();
    for (p, q) in pair_patterns(&family.algebra, &family.objects)? {
        let legs = [&p, &unit, &q];
        let dims = [p.dim(), 1, q.dim()];
        let ops = tri_cache.triple_ops(&legs, &ta(0, 1, 2, 3))?;
        let rows = materialize_rows(field, &dims, &ops);
        maps.insert(
            (p.name().to_string(), q.name().to_string()),
            StoredMap {
                dim: p.dim() * q.dim(),
                rows: Arc::new(rows),
            },
        );
    }
    let produced = PairMapFamily {
        algebra: family.algebra.clone(),
        objects: family.objects.clone(),
        gen: Generator::Explicit(maps),
    };
    let mut cache = OpCache::new(&produced);
    // (inter1)
    for (x, ob) in family.objects.iter().enumerate() {
        for legs in [[ob, &unit], [&unit, ob]] {
            if let Some(rep) =
                pair_instance(&mut cache, "inter1", &[x], &legs, &[sp(0, 1, 2)], &[])?
            {
                return Err(Error::AxiomViolation(format!(
                    "internal: the induced pair family misses the unit law: {rep}"
                )));
            }
        }
    }
    // (inter2)
    let n = family.objects.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let legs = [
                        &family.objects[x],
                        &family.objects[y],
                        &family.objects[z],
                        &family.objects[w],
                    ];
                    if flat_dim(&legs) > INSTANCE_DIM_CAP {
                        continue;
                    }
                    // (D[X,Y] (x) id (x) id)(id (x) D[Y(x)Z, T])(D[X(x)Y, Z] (x) id)
                    //   = (id (x) id (x) D[Z,T])(D[X, Y(x)Z] (x) id)(id (x) D[Y, Z(x)T])
                    if let Some(rep) = pair_instance(
                        &mut cache,
                        "inter2",
                        &[x, y, z, w],
                        &legs,
                        &[sp(0, 2, 3), sp(1, 3, 4), sp(0, 1, 2)],
                        &[sp(1, 2, 4), sp(0, 1, 3), sp(2, 3, 4)],
                    )? {
                        return Err(Error::AxiomViolation(format!(
                            "internal: the induced pair family misses the interchange law: {rep}"
                        )));
                    }
                }
            }
        }
    }
    Ok(produced)
}

/// Dense copies of every triple matrix the pure-braided checks use, for
/// building explicit triple families; keys above the dense cap are
/// skipped. Returns the two sides separately.
#[allow(clippy::type_complexity)]
pub fn materialized_triple_maps(
    family: &TripleMapFamily,
) -> Result<(
    Vec<((String, String, String), Matrix)>,
    Vec<((String, String, String), Matrix)>,
)> {
    let unit = Comodule::trivial(&family.algebra);
    let mut patterns: Vec<(Comodule, Comodule, Comodule)> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |p: Comodule, q: Comodule, r: Comodule,
                    patterns: &mut Vec<(Comodule, Comodule, Comodule)>| {
        let key = (
            p.name().to_string(),
            q.name().to_string(),
            r.name().to_string(),
        );
        if p.dim() * q.dim() * r.dim() <= DENSE_CAP && seen.insert(key) {
            patterns.push((p, q, r));
        }
    };
    for u in &family.objects {
        for v in &family.objects {
            push(u.clone(), unit.clone(), v.clone(), &mut patterns);
            push(unit.clone(), u.clone(), v.clone(), &mut patterns);
            push(u.clone(), v.clone(), unit.clone(), &mut patterns);
            for w in &family.objects {
                push(u.clone(), v.clone(), w.clone(), &mut patterns);
                for x in &family.objects {
                    if u.dim() * v.dim() * w.dim() * x.dim() > INSTANCE_DIM_CAP {
                        continue;
                    }
                    push(u.tensor(v)?, w.clone(), x.clone(), &mut patterns);
                    push(u.clone(), v.tensor(w)?, x.clone(), &mut patterns);
                    push(u.clone(), v.clone(), w.tensor(x)?, &mut patterns);
                }
            }
        }
    }
    let mut a_maps = Vec::new();
    let mut b_maps = Vec::new();
    for (p, q, r) in &patterns {
        let key = (
            p.name().to_string(),
            q.name().to_string(),
            r.name().to_string(),
        );
        a_maps.push((key.clone(), family.triple_matrix(p, q, r, Side::A)?));
        b_maps.push((key, family.triple_matrix(p, q, r, Side::B)?));
    }
    Ok((a_maps, b_maps))
}

// ---------------------------------------------------------------------------
// Object-indexed families

#[derive(Clone)]
enum ObjGen {
    Element {
        gamma: LinearForm,
        gamma_inv: LinearForm,
    },
    Explicit(BTreeMap<String, StoredMap>),
}

/// A family of invertible operators `R[M]`, one per comodule, either
/// generated by a lazy element through `R[M](m) = m0 * gamma(m1)` or
/// stored as explicit matrices keyed by comodule names.
pub struct ObjectMapFamily {
    algebra: AlgRef,
    objects: Vec<Comodule>,
    gen: ObjGen,
}

fn element_rows(gamma: &LinearForm, m: &Comodule) -> SparseRows {
    (0..m.dim())
        .map(|i| {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for &(j, k, ref c) in m.coaction_basis(i) {
                bump(&mut acc, j, c * gamma.eval_basis(k));
            }
            acc.into_iter().collect()
        })
        .collect()
}

struct ObjCache<'f> {
    family: &'f ObjectMapFamily,
    rows: BTreeMap<(String, bool), Arc<SparseRows>>,
}

impl<'f> ObjCache<'f> {
    fn new(family: &'f ObjectMapFamily) -> ObjCache<'f> {
        ObjCache {
            family,
            rows: BTreeMap::new(),
        }
    }

    fn rows(&mut self, m: &Comodule, inv: bool) -> Result<Arc<SparseRows>> {
        let key = (m.name().to_string(), inv);
        if let Some(r) = self.rows.get(&key) {
            return Ok(r.clone());
        }
        let built = match &self.family.gen {
            ObjGen::Element { gamma, gamma_inv } => {
                Arc::new(element_rows(if inv { gamma_inv } else { gamma }, m))
            }
            ObjGen::Explicit(maps) => {
                let stored = maps.get(m.name()).ok_or_else(|| {
                    Error::MissingMatrix(format!("no stored matrix for the object {}", m.name()))
                })?;
                if stored.dim != m.dim() {
                    return Err(Error::DimensionMismatch(format!(
                        "the stored matrix for {} has dimension {}, the object has {}",
                        m.name(),
                        stored.dim,
                        m.dim()
                    )));
                }
                if inv {
                    let dense = densify(self.family.algebra.field(), &stored.rows);
                    let inverse = dense.inverse().map_err(|_| {
                        Error::NotInvertible(format!(
                            "the stored matrix for {} is singular",
                            m.name()
                        ))
                    })?;
                    Arc::new(sparsify(&inverse))
                } else {
                    stored.rows.clone()
                }
            }
        };
        self.rows.insert(key, built.clone());
        Ok(built)
    }
}

impl ObjectMapFamily {
    pub fn algebra(&self) -> &AlgRef {
        &self.algebra
    }

    pub fn objects(&self) -> &[Comodule] {
        &self.objects
    }

    /// Family with explicit matrices keyed by comodule names.
    pub fn explicit(
        algebra: &AlgRef,
        comodules: &[Comodule],
        maps: Vec<(String, Matrix)>,
    ) -> Result<ObjectMapFamily> {
        let objects = validate_objects(algebra, comodules)?;
        let mut stored = BTreeMap::new();
        for (name, m) in &maps {
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch(format!(
                    "the matrix for {name} is over the wrong field"
                )));
            }
            if m.rows() != m.cols() {
                return Err(Error::DimensionMismatch(format!(
                    "the matrix for {name} is not square"
                )));
            }
            if m.rows() <= RANK_CHECK_CAP && m.rank() != m.rows() {
                return Err(Error::NotInvertible(format!(
                    "the stored matrix for {name} is singular"
                )));
            }
            if stored
                .insert(
                    name.clone(),
                    StoredMap { dim: m.rows(), rows: Arc::new(sparsify(m)) },
                )
                .is_some()
            {
                return Err(Error::PrereqViolated(format!(
                    "two matrices stored for the object {name}"
                )));
            }
        }
        Ok(ObjectMapFamily {
            algebra: algebra.clone(),
            objects,
            gen: ObjGen::Explicit(stored),
        })
    }

    /// Dense matrix of `R[M]`, rows acting on row vectors.
    pub fn object_matrix(&self, m: &Comodule) -> Result<Matrix> {
        if m.dim() > DENSE_CAP {
            return Err(Error::DimensionMismatch(format!(
                "dense materialization is limited to flat dimension {DENSE_CAP}, got {}",
                m.dim()
            )));
        }
        let rows = ObjCache::new(self).rows(m, false)?;
        Ok(densify(self.algebra.field(), &rows))
    }
}

/// An object operator on legs `[lo, hi)`.
#[derive(Clone, Copy)]
struct OSpan {
    lo: usize,
    hi: usize,
    inv: bool,
}

fn ro(lo: usize, hi: usize) -> OSpan {
    OSpan { lo, hi, inv: false }
}

fn roi(lo: usize, hi: usize) -> OSpan {
    OSpan { lo, hi, inv: true }
}

fn resolve_ospans(
    cache: &mut ObjCache<'_>,
    legs: &[&Comodule],
    spans: &[OSpan],
) -> Result<Vec<ResolvedOp>> {
    spans
        .iter()
        .map(|s| {
            let ob = tensor_range(legs, s.lo, s.hi)?;
            Ok(ResolvedOp {
                lo: s.lo,
                hi: s.hi,
                rows: cache.rows(&ob, s.inv)?,
            })
        })
        .collect()
}

fn obj_instance(
    cache: &mut ObjCache<'_>,
    tag: &str,
    indices: &[usize],
    legs: &[&Comodule],
    lhs: &[OSpan],
    rhs: &[OSpan],
) -> Result<Option<CheckReport>> {
    let field = cache.family.algebra.field();
    let dims: Vec<usize> = legs.iter().map(|c| c.dim()).collect();
    let l = resolve_ospans(cache, legs, lhs)?;
    let r = resolve_ospans(cache, legs, rhs)?;
    Ok(instance_report(field, tag, indices, &dims, &l, &r))
}

/// The family generated by a normalized convolution-invertible lazy
/// element: `R[M](m) = m0 * gamma(m1)`.
pub fn d_structure_from_element(
    gamma: &LinearForm,
    comodules: &[Comodule],
) -> Result<ObjectMapFamily> {
    let algebra = gamma.algebra().clone();
    if !gamma.is_normalized() {
        return Err(Error::PrereqViolated(
            "the element is not normalized on the unit".into(),
        ));
    }
    let lazy = cocycles::is_lazy_element(gamma);
    if !lazy.passed() {
        return Err(Error::PrereqViolated(format!(
            "the element is not lazy: {lazy}"
        )));
    }
    let gamma_inv = gamma
        .convolution_inverse()
        .map_err(|_| Error::PrereqViolated("the element has no convolution inverse".into()))?;
    let objects = validate_objects(&algebra, comodules)?;
    Ok(ObjectMapFamily {
        algebra,
        objects,
        gen: ObjGen::Element {
            gamma: gamma.clone(),
            gamma_inv,
        },
    })
}

/// Checks the unit law and the exchange law (dstr) on all registered
/// triples: `(R[X(x)Y] (x) id)(id (x) R[Y(x)Z])` commutes.
pub fn check_d_structure(family: &ObjectMapFamily) -> Result<CheckReport> {
    let unit = Comodule::trivial(&family.algebra);
    let n = family.objects.len();
    let mut cache = ObjCache::new(family);
    if let Some(rep) = obj_instance(&mut cache, "object-map-unit", &[], &[&unit], &[ro(0, 1)], &[])?
    {
        return Ok(rep);
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let legs = [
                    &family.objects[x],
                    &family.objects[y],
                    &family.objects[z],
                ];
                if flat_dim(&legs) > INSTANCE_DIM_CAP {
                    continue;
                }
                if let Some(rep) = obj_instance(
                    &mut cache,
                    "dstr",
                    &[x, y, z],
                    &legs,
                    &[ro(1, 3), ro(0, 2)],
                    &[ro(0, 2), ro(1, 3)],
                )? {
                    return Ok(rep);
                }
            }
        }
    }
    Ok(CheckReport::pass("d-structure"))
}

/// The pair family `(R[X] (x) R[Y]) Rinv[X(x)Y]`, asserted equal to its
/// reversed composite on every pair pattern; the result must pass the
/// strong-twine laws. A generated family comes back as the family of the
/// element's coboundary, with the matrix identity verified.
pub fn d1_of_r(family: &ObjectMapFamily) -> Result<PairMapFamily> {
    let field = family.algebra.field();
    let mut ocache = ObjCache::new(family);
    match &family.gen {
        ObjGen::Element { gamma, .. } => {
            let sigma = cocycles::d1(gamma)?;
            let twine = twine_from_cocycle(&sigma, &family.objects)?;
            let mut pcache = OpCache::new(&twine);
            for a in &family.objects {
                for b in &family.objects {
                    let legs = [a, b];
                    let dims = [a.dim(), b.dim()];
                    let one_way =
                        resolve_ospans(&mut ocache, &legs, &[roi(0, 2), ro(0, 1), ro(1, 2)])?;
                    let other_way =
                        resolve_ospans(&mut ocache, &legs, &[ro(0, 1), ro(1, 2), roi(0, 2)])?;
                    if let Some(rep) =
                        instance_report(field, "d1-two-sided", &[], &dims, &one_way, &other_way)
                    {
                        return Err(Error::AxiomViolation(format!(
                            "internal: the two composites for the induced pair operator differ at ({}, {}): {rep}",
                            a.name(),
                            b.name()
                        )));
                    }
                    let generated = resolve_spans(&mut pcache, &legs, &[sp(0, 1, 2)])?;
                    if let Some(rep) =
                        instance_report(field, "d1-matches", &[], &dims, &one_way, &generated)
                    {
                        return Err(Error::AxiomViolation(format!(
                            "internal: the induced pair operator does not match the coboundary of the element at ({}, {}): {rep}",
                            a.name(),
                            b.name()
                        )));
                    }
                }
            }
            let rep = check_strong_twine(&twine)?;
            if !rep.passed() {
                return Err(Error::AxiomViolation(format!(
                    "the induced family is not a strong twine: {rep}"
                )));
            }
            Ok(twine)
        }
        ObjGen::Explicit(_) => {
            let mut maps = BTreeMap::new();
            for (a, b) in pair_patterns(&family.algebra, &family.objects)? {
                let legs = [&a, &b];
                let dims = [a.dim(), b.dim()];
                let one_way =
                    resolve_ospans(&mut ocache, &legs, &[roi(0, 2), ro(0, 1), ro(1, 2)])?;
                let other_way =
                    resolve_ospans(&mut ocache, &legs, &[ro(0, 1), ro(1, 2), roi(0, 2)])?;
                if let Some(rep) =
                    instance_report(field, "d1-two-sided", &[], &dims, &one_way, &other_way)
                {
                    return Err(Error::AxiomViolation(format!(
                        "the stored maps do not commute with their tensor composite at ({}, {}): {rep}",
                        a.name(),
                        b.name()
                    )));
                }
                let rows = materialize_rows(field, &dims, &one_way);
                maps.insert(
                    (a.name().to_string(), b.name().to_string()),
                    StoredMap {
                        dim: a.dim() * b.dim(),
                        rows: Arc::new(rows),
                    },
                );
            }
            let produced = PairMapFamily {
                algebra: family.algebra.clone(),
                objects: family.objects.clone(),
                gen: Generator::Explicit(maps),
            };
            let rep = check_strong_twine(&produced)?;
            if !rep.passed() {
                return Err(Error::AxiomViolation(format!(
                    "the induced family is not a strong twine: {rep}"
                )));
            }
            Ok(produced)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::enumeration::{enumerate_lazy_cocycles, EnumLimits};

    fn h4(p: u64) -> AlgRef {
        catalog::builtin("h4", FieldSpec::Fp(p)).unwrap()
    }

    fn kz2(p: u64) -> AlgRef {
        catalog::builtin("kz2", FieldSpec::Fp(p)).unwrap()
    }

    #[test]
    fn the_counit_generates_the_identity_family() {
        let h = h4(3);
        let objs = default_comodules(&h).unwrap();
        let fam = trivial_twine(&h, &objs).unwrap();
        for a in &objs {
            for b in &objs {
                let m = fam.pair_matrix(a, b).unwrap();
                assert_eq!(m, Matrix::identity(h.field(), a.dim() * b.dim()));
            }
        }
        assert!(check_twine(&fam, &all_triples(&fam)).unwrap().passed());
        assert!(check_strong_twine(&fam).unwrap().passed());
        assert!(check_naturality(&fam, &default_morphisms(&fam))
            .unwrap()
            .passed());
    }

    #[test]
    fn the_group_cocycle_rescales_the_top_basis_pair() {
        let h = kz2(5);
        let field = h.field();
        let mut coeffs = Matrix::identity(field, 2);
        coeffs.set(0, 1, field.one());
        coeffs.set(1, 0, field.one());
        coeffs.set(1, 1, field.from_i64(2));
        let sigma = BilinearForm::new(h.clone(), coeffs).unwrap();
        let objs = vec![Comodule::trivial(&h), Comodule::regular(&h)];
        let fam = twine_from_cocycle(&sigma, &objs).unwrap();
        let m = fam.pair_matrix(&objs[1], &objs[1]).unwrap();
        let mut expect = Matrix::identity(field, 4);
        expect.set(3, 3, field.from_i64(2));
        assert_eq!(m, expect);
        assert!(check_twine(&fam, &all_triples(&fam)).unwrap().passed());
        assert!(check_strong_twine(&fam).unwrap().passed());
    }

    #[test]
    fn scaling_one_stored_matrix_breaks_fusion() {
        let h = kz2(5);
        let field = h.field();
        let objs = vec![Comodule::trivial(&h), Comodule::regular(&h)];
        let fam = trivial_twine(&h, &objs).unwrap();
        let mut maps = materialized_pair_maps(&fam).unwrap();
        let key = ("regular".to_string(), "regular".to_string());
        for (k, m) in &mut maps {
            if *k == key {
                let mut scaled = Matrix::zero(field, m.rows(), m.cols());
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        scaled.set(r, c, &field.from_i64(2) * m.get(r, c));
                    }
                }
                *m = scaled;
            }
        }
        let tampered = PairMapFamily::explicit(&h, &objs, maps).unwrap();
        let rep = check_twine(&tampered, &all_triples(&tampered)).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.condition, "db1");
        let w = rep.witness.expect("witness");
        assert_eq!(&w.indices[..3], &[0, 1, 1]);
    }

    #[test]
    fn element_families_from_the_counit_are_identities() {
        let h = h4(3);
        let objs = default_comodules(&h).unwrap();
        let gamma = LinearForm::counit(&h);
        let fam = d_structure_from_element(&gamma, &objs).unwrap();
        for m in &objs {
            assert_eq!(
                fam.object_matrix(m).unwrap(),
                Matrix::identity(h.field(), m.dim())
            );
        }
        assert!(check_d_structure(&fam).unwrap().passed());
        let induced = d1_of_r(&fam).unwrap();
        for a in &objs {
            for b in &objs {
                assert_eq!(
                    induced.pair_matrix(a, b).unwrap(),
                    Matrix::identity(h.field(), a.dim() * b.dim())
                );
            }
        }
    }

    #[test]
    fn explicit_families_reject_singular_matrices() {
        let h = kz2(5);
        let objs = vec![Comodule::trivial(&h)];
        let zero = Matrix::zero(h.field(), 1, 1);
        let key = ("trivial".to_string(), "trivial".to_string());
        match PairMapFamily::explicit(&h, &objs, vec![(key, zero)]) {
            Err(Error::NotInvertible(_)) => {}
            Err(other) => panic!("expected a singularity error, got {other}"),
            Ok(_) => panic!("a singular matrix was accepted"),
        }
    }

    #[test]
    fn missing_matrices_surface_by_name() {
        let h = kz2(5);
        let objs = vec![Comodule::trivial(&h), Comodule::regular(&h)];
        let key = ("trivial".to_string(), "trivial".to_string());
        let id1 = Matrix::identity(h.field(), 1);
        let fam = PairMapFamily::explicit(&h, &objs, vec![(key, id1)]).unwrap();
        let err = check_twine(&fam, &all_triples(&fam)).unwrap_err();
        match err {
            Error::MissingMatrix(msg) => assert!(msg.contains("regular"), "got {msg}"),
            other => panic!("expected a missing matrix error, got {other}"),
        }
    }

    #[test]
    fn lazy_cocycles_on_h4_give_twines_both_ways() {
        let h = h4(3);
        let objs = vec![Comodule::trivial(&h), Comodule::regular(&h)];
        let sigmas = enumerate_lazy_cocycles(&h, &EnumLimits::default()).unwrap();
        assert_eq!(sigmas.len(), 3);
        for sigma in &sigmas {
            let fam = twine_from_cocycle(sigma, &objs).unwrap();
            assert!(check_twine(&fam, &all_triples(&fam)).unwrap().passed());
            assert!(check_strong_twine(&fam).unwrap().passed());
        }
    }
}
