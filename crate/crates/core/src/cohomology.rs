//! The Lichnerowicz-Poisson cochain complex on homogeneous slices.
//!
//! For a structure whose entries are homogeneous of degree `r`, the
//! coboundary maps values of degree `d` to values of degree `d + r - 1`, so
//! each `(k, d)` slice is a finite-dimensional space and the cohomology is
//! computed slice by slice with exact ranks.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::exterior::{shuffles, ExteriorForm, IndexTuple};
use crate::linalg::{Echelon, SparseMatrix};
use crate::multivector::MultiDerivation;
use crate::poisson::PoissonStructure;
use crate::poly::{monomial_basis, Monomial, Polynomial, Rational, WeightVector};
use crate::{Error, Result};

/// `delta^k phi` on increasing coordinate tuples `J = (j_0, ..., j_k)`:
///
/// `sum_a (-1)^a {X_{j_a}, phi(J \ a)}
///  + sum_{a<b} (-1)^{a+b} phi({X_{j_a}, X_{j_b}}, J \ {a, b})`.
pub fn delta(s: &PoissonStructure, phi: &MultiDerivation) -> Result<MultiDerivation> {
    if !s.is_verified() {
        return Err(Error::Unverified);
    }
    coboundary(s, phi)
}

fn coboundary(s: &PoissonStructure, phi: &MultiDerivation) -> Result<MultiDerivation> {
    let n = s.nvars();
    if phi.nvars() != n {
        return Err(Error::VariableCountMismatch {
            left: n,
            right: phi.nvars(),
        });
    }
    let k = phi.arity();
    let mut out = MultiDerivation::zero(n, k + 1);
    if k >= n || phi.is_zero() {
        return Ok(out);
    }
    let b = s.bivector();
    // d_r P_ab for a < b
    let mut dp: BTreeMap<(usize, usize), Vec<(usize, Polynomial)>> = BTreeMap::new();
    for (t, p) in b.values() {
        let parts = (0..n)
            .map(|r| (r, p.partial(r)))
            .filter(|(_, q)| !q.is_zero())
            .collect();
        dp.insert((t.slots()[0], t.slots()[1]), parts);
    }
    for j in IndexTuple::all(n, k + 1) {
        let js = j.slots();
        let mut acc = Polynomial::zero(n);
        for a in 0..=k {
            let v = phi.value(&j.remove_at(a));
            if v.is_zero() {
                continue;
            }
            let term = b.bracket_coordinate(js[a], &v);
            if a % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        for a in 0..=k {
            for bb in a + 1..=k {
                let Some(parts) = dp.get(&(js[a], js[bb])) else {
                    continue;
                };
                let mut slots: Vec<usize> = Vec::with_capacity(k);
                slots.push(0);
                slots.extend(
                    js.iter()
                        .enumerate()
                        .filter(|(i, _)| *i != a && *i != bb)
                        .map(|(_, s)| *s),
                );
                let mut inner = Polynomial::zero(n);
                for (r, dpr) in parts {
                    slots[0] = *r;
                    let v = phi.value_at(&slots);
                    if !v.is_zero() {
                        inner += &(dpr * &v);
                    }
                }
                if (a + bb) % 2 == 0 {
                    acc += &inner;
                } else {
                    acc -= &inner;
                }
            }
        }
        out.set(j, acc);
    }
    Ok(out)
}

/// Global sign `c(n, k) = -(-1)^(n(n-1)/2 + k(n-k))` with
/// `Phi(delta phi) = c(n, k) * T(phi)`, where `T` is [`forms_shuffle_sum`].
fn forms_sign(n: usize, k: usize) -> i8 {
    if (n * (n - 1) / 2 + k * (n - k)) % 2 == 0 {
        -1
    } else {
        1
    }
}

/// `sum over (k+1, n-k-1)-shuffles sigma` of `sign(sigma) *
/// i(d_head)[ Phi(phi) ^ d(i(d_tail) Omega) + Omega ^ d(i(d_tail) Phi(phi)) ]`.
pub(crate) fn forms_shuffle_sum(s: &PoissonStructure, phi: &MultiDerivation) -> ExteriorForm {
    let n = s.nvars();
    let k = phi.arity();
    let omega = s.bivector().omega();
    let form = phi.phi_map();
    let mut out = ExteriorForm::zero(n, n - k - 1);
    for sh in shuffles(k + 1, n - k - 1) {
        let tail = sh.tail();
        let first = form.wedge(&omega.contract_coordinates(tail).d());
        let second = omega.wedge(&form.contract_coordinates(tail).d());
        let bracket = &first + &second;
        if bracket.is_zero() {
            continue;
        }
        let term = bracket.contract_coordinates(sh.head());
        out = if sh.sign() > 0 {
            &out + &term
        } else {
            &out - &term
        };
    }
    out
}

/// `delta^k phi` computed through exterior calculus on `Omega` and
/// `Phi(phi)`; agrees with [`delta`].
pub fn delta_via_forms(s: &PoissonStructure, phi: &MultiDerivation) -> Result<MultiDerivation> {
    if !s.is_verified() {
        return Err(Error::Unverified);
    }
    let n = s.nvars();
    if n < 3 {
        return Err(Error::UnsupportedDimension {
            what: "coboundary through forms",
            nvars: n,
        });
    }
    if phi.nvars() != n {
        return Err(Error::VariableCountMismatch {
            left: n,
            right: phi.nvars(),
        });
    }
    let k = phi.arity();
    if k >= n {
        return Ok(MultiDerivation::zero(n, k + 1));
    }
    let sum = forms_shuffle_sum(s, phi);
    let signed = if forms_sign(n, k) > 0 { sum } else { -&sum };
    let mut out = MultiDerivation::phi_inverse(&signed);
    if out.is_zero() {
        out = MultiDerivation::zero(n, k + 1);
    }
    Ok(out)
}

/// Restrictions defining a subcomplex of cochains.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SliceFilter {
    /// Keep only basis elements whose value weight equals the sum of the
    /// argument weights.
    pub weights: Option<WeightVector>,
    /// Variables banned from values.
    pub exclude_values: Vec<usize>,
    /// Variables banned from arguments.
    pub exclude_args: Vec<usize>,
}

impl SliceFilter {
    pub fn none() -> Self {
        Self::default()
    }

    /// Torus-invariant cochains with the torus coordinate `slot` removed
    /// from both arguments and values.
    pub fn torus_relative(weights: WeightVector, slot: usize) -> Self {
        SliceFilter {
            weights: Some(weights),
            exclude_values: alloc::vec![slot],
            exclude_args: alloc::vec![slot],
        }
    }

    fn keeps_tuple(&self, t: &IndexTuple) -> bool {
        !t.slots().iter().any(|s| self.exclude_args.contains(s))
    }

    fn keeps(&self, t: &IndexTuple, m: &Monomial) -> bool {
        if self.exclude_values.iter().any(|&v| m.contains(v)) {
            return false;
        }
        match &self.weights {
            None => true,
            Some(w) => m.weight(w) == t.slots().iter().map(|&s| w.of(s)).sum::<i64>(),
        }
    }
}

/// The space of `k`-cochains whose values are homogeneous of degree `d`,
/// with a fixed ordered basis of elementary cochains `X^m` on `X_I`.
#[derive(Clone, Debug)]
pub struct GradedSlice {
    nvars: usize,
    arity: usize,
    degree: u32,
    filter: SliceFilter,
    basis: Vec<(IndexTuple, Monomial)>,
    index: BTreeMap<(IndexTuple, Monomial), usize>,
}

impl GradedSlice {
    pub fn new(nvars: usize, arity: usize, degree: u32, filter: &SliceFilter) -> Self {
        let monomials = monomial_basis(nvars, degree, None);
        let mut basis = Vec::new();
        for t in IndexTuple::all(nvars, arity) {
            if !filter.keeps_tuple(&t) {
                continue;
            }
            for m in &monomials {
                if filter.keeps(&t, m) {
                    basis.push((t.clone(), m.clone()));
                }
            }
        }
        let index = basis
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i))
            .collect();
        GradedSlice {
            nvars,
            arity,
            degree,
            filter: filter.clone(),
            basis,
            index,
        }
    }

    /// A slice with no elements, used for negative degrees.
    fn empty(nvars: usize, arity: usize, filter: &SliceFilter) -> Self {
        GradedSlice {
            nvars,
            arity,
            degree: 0,
            filter: filter.clone(),
            basis: Vec::new(),
            index: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn filter(&self) -> &SliceFilter {
        &self.filter
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[(IndexTuple, Monomial)] {
        &self.basis
    }

    pub fn position(&self, t: &IndexTuple, m: &Monomial) -> Option<usize> {
        self.index.get(&(t.clone(), m.clone())).copied()
    }

    pub fn element(&self, i: usize) -> MultiDerivation {
        let (t, m) = &self.basis[i];
        MultiDerivation::from_values(
            self.nvars,
            self.arity,
            [(
                t.clone(),
                Polynomial::term(m.clone(), Rational::from_integer(1.into())),
            )],
        )
    }

    /// Coordinates of `phi`, or an error if `phi` leaves the slice.
    pub fn coordinates(&self, phi: &MultiDerivation) -> Result<Vec<Rational>> {
        let mut out = alloc::vec![Rational::zero(); self.dim()];
        for (i, c) in self.sparse_coordinates(phi)? {
            out[i] = c;
        }
        Ok(out)
    }

    fn sparse_coordinates(&self, phi: &MultiDerivation) -> Result<Vec<(usize, Rational)>> {
        if phi.arity() != self.arity || phi.nvars() != self.nvars {
            return Err(Error::Arity {
                expected: self.arity,
                got: phi.arity(),
            });
        }
        let mut out = Vec::new();
        for (t, v) in phi.values() {
            for (m, c) in v.terms() {
                match self.position(t, m) {
                    Some(i) => out.push((i, c.clone())),
                    None => {
                        return Err(Error::Constraint(format!(
                            "cochain term {} on {} lies outside the slice",
                            Polynomial::term(m.clone(), c.clone()),
                            t.display(1)
                        )))
                    }
                }
            }
        }
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }

    pub fn cochain(&self, coords: &[Rational]) -> MultiDerivation {
        assert_eq!(coords.len(), self.dim());
        let mut values: BTreeMap<IndexTuple, Polynomial> = BTreeMap::new();
        for (c, (t, m)) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            values
                .entry(t.clone())
                .or_insert_with(|| Polynomial::zero(self.nvars))
                .add_term(m.clone(), c.clone());
        }
        MultiDerivation::from_values(self.nvars, self.arity, values)
    }
}

/// The matrix of `delta` between two slices; columns follow the source
/// basis and rows the target basis.
#[derive(Clone, Debug)]
pub struct DeltaMatrix {
    pub source: GradedSlice,
    pub target: GradedSlice,
    pub matrix: SparseMatrix,
}

impl DeltaMatrix {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// Degree `r` of a structure whose entries are all homogeneous of degree
/// `r`. The zero structure counts as linear.
pub fn structure_degree(s: &PoissonStructure) -> Result<u32> {
    Ok(s.bivector().homogeneous_degree()?.unwrap_or(1))
}

/// Target degree of `delta` on degree-`d` values, if nonnegative.
fn shifted(d: u32, r: u32) -> Option<u32> {
    (i64::from(d) + i64::from(r) - 1).try_into().ok()
}

pub fn delta_matrix(s: &PoissonStructure, source: &GradedSlice) -> Result<DeltaMatrix> {
    if !s.is_verified() {
        return Err(Error::Unverified);
    }
    let r = structure_degree(s)?;
    let n = s.nvars();
    let target = match shifted(source.degree, r) {
        Some(d) => GradedSlice::new(n, source.arity + 1, d, &source.filter),
        None => GradedSlice::empty(n, source.arity + 1, &source.filter),
    };
    let mut matrix = SparseMatrix::zero(target.dim(), 0);
    for i in 0..source.dim() {
        let image = coboundary(s, &source.element(i))?;
        let coords = target.sparse_coordinates(&image).map_err(|_| {
            Error::Constraint(String::from("the coboundary leaves the filtered slice"))
        })?;
        matrix.push_column(coords);
    }
    Ok(DeltaMatrix {
        source: source.clone(),
        target,
        matrix,
    })
}

/// Dimensions of one `(k, d)` slice of the complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SliceDims {
    pub k: usize,
    pub d: u32,
    pub dim_chi: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
}

/// The incoming slice: `(k-1)`-cochains whose coboundary has degree `d`.
fn incoming_slice(
    s: &PoissonStructure,
    k: usize,
    d: u32,
    filter: &SliceFilter,
) -> Result<Option<GradedSlice>> {
    if k == 0 {
        return Ok(None);
    }
    let r = structure_degree(s)?;
    let dprev = i64::from(d) - i64::from(r) + 1;
    Ok(u32::try_from(dprev)
        .ok()
        .map(|dp| GradedSlice::new(s.nvars(), k - 1, dp, filter)))
}

pub fn slice_dims(
    s: &PoissonStructure,
    k: usize,
    d: u32,
    filter: &SliceFilter,
) -> Result<SliceDims> {
    let source = GradedSlice::new(s.nvars(), k, d, filter);
    let out = delta_matrix(s, &source)?;
    let rank_out = out.rank();
    let dim_chi = source.dim();
    let dim_z = dim_chi - rank_out;
    let dim_b = match incoming_slice(s, k, d, filter)? {
        Some(src) => delta_matrix(s, &src)?.rank(),
        None => 0,
    };
    assert!(dim_b <= dim_z, "image exceeds kernel: delta o delta != 0");
    Ok(SliceDims {
        k,
        d,
        dim_chi,
        dim_z,
        dim_b,
        dim_h: dim_z - dim_b,
    })
}

/// Per-slice dimensions over `ks x ds`, ordered by `(k, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub rows: Vec<SliceDims>,
}

impl CohomologyReport {
    /// `sum_d dim H` for arity `k`.
    pub fn total_h(&self, k: usize) -> usize {
        self.rows.iter().filter(|r| r.k == k).map(|r| r.dim_h).sum()
    }

    pub fn get(&self, k: usize, d: u32) -> Option<&SliceDims> {
        self.rows.iter().find(|r| r.k == k && r.d == d)
    }
}

pub fn cohomology_dims(
    s: &PoissonStructure,
    ks: impl IntoIterator<Item = usize>,
    ds: impl IntoIterator<Item = u32> + Clone,
    filter: &SliceFilter,
) -> Result<CohomologyReport> {
    let mut rows = Vec::new();
    for k in ks {
        for d in ds.clone() {
            rows.push(slice_dims(s, k, d, filter)?);
        }
    }
    rows.sort_by_key(|r| (r.k, r.d));
    Ok(CohomologyReport { rows })
}

/// The coboundaries landing in slice `(k, d)` as an echelon basis.
fn coboundary_span(
    s: &PoissonStructure,
    k: usize,
    d: u32,
    filter: &SliceFilter,
) -> Result<Echelon> {
    let mut span = Echelon::default();
    if let Some(src) = incoming_slice(s, k, d, filter)? {
        let m = delta_matrix(s, &src)?;
        for c in 0..m.matrix.ncols() {
            span.insert(m.matrix.column(c).map(|(r, v)| (r, v.clone())).collect());
        }
    }
    Ok(span)
}

/// Cocycles in slice `(k, d)` whose classes form a basis of `H`.
pub fn cocycle_representatives(
    s: &PoissonStructure,
    k: usize,
    d: u32,
    filter: &SliceFilter,
) -> Result<Vec<MultiDerivation>> {
    let slice = GradedSlice::new(s.nvars(), k, d, filter);
    let kernel = delta_matrix(s, &slice)?.matrix.kernel();
    let mut span = coboundary_span(s, k, d, filter)?;
    let mut out = Vec::new();
    for v in kernel {
        if span.insert_dense(&v) {
            out.push(slice.cochain(&v));
        }
    }
    Ok(out)
}

/// Number of independent classes among the given cochains of slice
/// `(k, d)`, i.e. the rank of their span modulo coboundaries. The caller
/// is responsible for checking that they are cocycles.
pub fn class_rank(
    s: &PoissonStructure,
    cochains: &[MultiDerivation],
    d: u32,
    filter: &SliceFilter,
) -> Result<usize> {
    let Some(first) = cochains.first() else {
        return Ok(0);
    };
    let k = first.arity();
    let slice = GradedSlice::new(s.nvars(), k, d, filter);
    let mut span = coboundary_span(s, k, d, filter)?;
    let base = span.rank();
    for c in cochains {
        span.insert(slice.sparse_coordinates(c)?);
    }
    Ok(span.rank() - base)
}

/// Whether `phi`, homogeneous of degree `d`, is a coboundary.
pub fn is_coboundary(
    s: &PoissonStructure,
    phi: &MultiDerivation,
    d: u32,
    filter: &SliceFilter,
) -> Result<bool> {
    Ok(phi.is_zero() || class_rank(s, core::slice::from_ref(phi), d, filter)? == 0)
}

/// Subtracts a coboundary `delta f` from the degree-`d` cocycle `phi` so
/// that its values on `slots` vanish. `f` ranges over the filtered
/// `(k-1)`-slice mapping into degree `d`.
pub fn normalize_cocycle(
    s: &PoissonStructure,
    phi: &MultiDerivation,
    d: u32,
    slots: &[IndexTuple],
    filter: &SliceFilter,
) -> Result<MultiDerivation> {
    let k = phi.arity();
    if !coboundary(s, phi)?.is_zero() {
        return Err(Error::NormalizationInfeasible(String::from(
            "the input is not a cocycle",
        )));
    }
    let Some(src) = incoming_slice(s, k, d, filter)? else {
        return Err(Error::NormalizationInfeasible(String::from(
            "no cochains of lower arity",
        )));
    };
    let m = delta_matrix(s, &src)?;
    let target = &m.target;
    let rows: Vec<usize> = (0..target.dim())
        .filter(|&i| slots.contains(&target.basis()[i].0))
        .collect();
    let mut restricted = SparseMatrix::zero(rows.len(), src.dim());
    for c in 0..src.dim() {
        for (r, v) in m.matrix.column(c) {
            if let Ok(pos) = rows.binary_search(&r) {
                restricted.add(pos, c, v.clone());
            }
        }
    }
    let phi_coords = target.coordinates(phi)?;
    let rhs: Vec<Rational> = rows.iter().map(|&r| phi_coords[r].clone()).collect();
    let f = restricted.solve(&rhs).ok_or_else(|| {
        Error::NormalizationInfeasible(String::from(
            "no coboundary matches the cocycle on the requested slots",
        ))
    })?;
    let correction = coboundary(s, &src.cochain(&f))?;
    Ok(phi - &correction)
}
