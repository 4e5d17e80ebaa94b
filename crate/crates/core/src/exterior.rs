//! Exterior forms on affine space with polynomial coefficients.
//!
//! A k-form is stored on the canonical basis `dX_I = dX_{i1} ^ ... ^ dX_{ik}`
//! with `I` strictly increasing. Contractions follow
//! `i(Y)theta(Z1, ..., Z_{k-1}) = theta(Y, Z1, ..., Z_{k-1})`, and an
//! iterated contraction `i(Y1, ..., Ym)` means `i(Y1) o ... o i(Ym)`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::{One, Signed};

use crate::poly::{Polynomial, Rational};
use crate::{Error, Result};

/// A strictly increasing list of 0-based variable slots.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    pub fn new(slots: Vec<usize>) -> Result<Self> {
        if slots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Syntax {
                pos: 0,
                msg: String::from("index tuple must be strictly increasing"),
            });
        }
        Ok(IndexTuple(slots))
    }

    pub(crate) fn from_sorted(slots: Vec<usize>) -> Self {
        debug_assert!(slots.windows(2).all(|w| w[0] < w[1]));
        IndexTuple(slots)
    }

    pub fn empty() -> Self {
        IndexTuple(Vec::new())
    }

    pub fn slots(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, slot: usize) -> bool {
        self.0.binary_search(&slot).is_ok()
    }

    /// Slots of `0..nvars` not in the tuple, increasing.
    pub fn complement(&self, nvars: usize) -> IndexTuple {
        IndexTuple((0..nvars).filter(|s| !self.contains(*s)).collect())
    }

    /// The tuple without its `pos`-th entry.
    pub fn remove_at(&self, pos: usize) -> IndexTuple {
        let mut v = self.0.clone();
        v.remove(pos);
        IndexTuple(v)
    }

    /// `dX_slot ^ dX_self` rewritten on the sorted basis, with its sign.
    pub fn prepend(&self, slot: usize) -> Option<(IndexTuple, i8)> {
        match self.0.binary_search(&slot) {
            Ok(_) => None,
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, slot);
                Some((IndexTuple(v), if pos % 2 == 0 { 1 } else { -1 }))
            }
        }
    }

    /// All increasing `k`-subsets of `0..nvars` in lexicographic order.
    pub fn all(nvars: usize, k: usize) -> Vec<IndexTuple> {
        combinations(nvars, k).into_iter().map(IndexTuple).collect()
    }

    pub fn display(&self, base: usize) -> String {
        use alloc::format;
        let labels: Vec<String> = self.0.iter().map(|s| format!("{}", s + base)).collect();
        format!("({})", labels.join(","))
    }
}

pub(crate) fn combinations(nvars: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > nvars {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < nvars - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A `(p, q)`-shuffle: a permutation of `0..p+q` increasing on the first
/// `p` and on the last `q` positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    perm: Vec<usize>,
    p: usize,
    sign: i8,
}

impl Shuffle {
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn head(&self) -> &[usize] {
        &self.perm[..self.p]
    }

    pub fn tail(&self) -> &[usize] {
        &self.perm[self.p..]
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }
}

/// All `C(p+q, p)` shuffles, ordered by their head lexicographically.
pub fn shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    let n = p + q;
    combinations(n, p)
        .into_iter()
        .map(|head| {
            let head = IndexTuple(head);
            let tail = head.complement(n);
            let sign = shuffle_sign(&head, &tail);
            let mut perm = head.0;
            perm.extend_from_slice(&tail.0);
            Shuffle { perm, p, sign }
        })
        .collect()
}

/// Sign of the permutation `(head, tail)` for disjoint increasing tuples.
pub(crate) fn shuffle_sign(head: &IndexTuple, tail: &IndexTuple) -> i8 {
    let inversions: usize = head
        .0
        .iter()
        .map(|h| tail.0.iter().filter(|t| *t < h).count())
        .sum();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A polynomial vector field `sum Y_i d/dX_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    comps: Vec<Polynomial>,
}

impl VectorField {
    pub fn new(comps: Vec<Polynomial>) -> Self {
        let n = comps.len();
        assert!(comps.iter().all(|c| c.nvars() == n));
        VectorField { comps }
    }

    /// The coordinate field `d/dX_slot`.
    pub fn coordinate(nvars: usize, slot: usize) -> Self {
        let comps = (0..nvars)
            .map(|i| {
                if i == slot {
                    Polynomial::one(nvars)
                } else {
                    Polynomial::zero(nvars)
                }
            })
            .collect();
        VectorField { comps }
    }

    pub fn nvars(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.comps[i]
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.comps
    }
}

/// A differential form of fixed degree with polynomial coefficients.
///
/// Zero forms compare equal regardless of their nominal degree, and a sum
/// with a zero operand of another degree is allowed.
#[derive(Clone, Debug)]
pub struct ExteriorForm {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<IndexTuple, Polynomial>,
}

impl PartialEq for ExteriorForm {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.terms == other.terms
            && (self.degree == other.degree || self.terms.is_empty())
    }
}

impl Eq for ExteriorForm {}

impl ExteriorForm {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        ExteriorForm {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A polynomial viewed as a 0-form.
    pub fn from_poly(p: Polynomial) -> Self {
        let nvars = p.nvars();
        let mut f = Self::zero(nvars, 0);
        f.add_term(IndexTuple::empty(), p);
        f
    }

    /// `dX_slot`.
    pub fn differential(nvars: usize, slot: usize) -> Self {
        Self::monomial(nvars, IndexTuple(alloc::vec![slot]), Polynomial::one(nvars))
    }

    /// `coeff * dX_tuple`.
    pub fn monomial(nvars: usize, tuple: IndexTuple, coeff: Polynomial) -> Self {
        let mut f = Self::zero(nvars, tuple.len());
        f.add_term(tuple, coeff);
        f
    }

    pub fn from_terms(
        nvars: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (IndexTuple, Polynomial)>,
    ) -> Self {
        let mut f = Self::zero(nvars, degree);
        for (t, c) in terms {
            assert_eq!(t.len(), degree);
            f.add_term(t, c);
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&IndexTuple, &Polynomial)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, tuple: &IndexTuple) -> Polynomial {
        self.terms
            .get(tuple)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    /// The coefficient of a 0-form (or of the top form `dX_1 ^ ... ^ dX_n`).
    pub fn scalar(&self) -> Polynomial {
        match self.degree {
            0 => self.coefficient(&IndexTuple::empty()),
            d if d == self.nvars => self.coefficient(&IndexTuple((0..d).collect())),
            _ => panic!(
                "scalar() of a {}-form in {} variables",
                self.degree, self.nvars
            ),
        }
    }

    pub fn add_term(&mut self, tuple: IndexTuple, coeff: Polynomial) {
        debug_assert_eq!(tuple.len(), self.degree);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(tuple) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_scaled_term(&mut self, tuple: IndexTuple, coeff: &Polynomial, sign: i8) {
        if sign > 0 {
            self.add_term(tuple, coeff.clone());
        } else {
            self.add_term(tuple, -coeff);
        }
    }

    /// Multiplies every coefficient by `p`.
    pub fn mul_poly(&self, p: &Polynomial) -> ExteriorForm {
        let mut out = Self::zero(self.nvars, self.degree);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c * p);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> ExteriorForm {
        let mut out = Self::zero(self.nvars, self.degree);
        for (t, v) in &self.terms {
            out.add_term(t.clone(), v.scale(c));
        }
        out
    }

    /// Part whose coefficients are homogeneous of total degree `d`.
    pub fn coefficient_component(&self, d: u32) -> ExteriorForm {
        let mut out = Self::zero(self.nvars, self.degree);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), c.homogeneous_component(d));
        }
        out
    }

    /// Largest total degree among the coefficients.
    pub fn coefficient_degree(&self) -> Option<u32> {
        self.terms
            .values()
            .filter_map(Polynomial::total_degree)
            .max()
    }

    pub fn wedge(&self, other: &ExteriorForm) -> ExteriorForm {
        assert_eq!(
            self.nvars, other.nvars,
            "forms over different variable counts"
        );
        let degree = self.degree + other.degree;
        let mut out = Self::zero(self.nvars, degree);
        if degree > self.nvars {
            return out;
        }
        for (ta, ca) in &self.terms {
            for (tb, cb) in &other.terms {
                if ta.0.iter().any(|s| tb.contains(*s)) {
                    continue;
                }
                let sign = shuffle_sign(ta, tb);
                let mut merged: Vec<usize> = ta.0.iter().chain(&tb.0).copied().collect();
                merged.sort_unstable();
                out.add_scaled_term(IndexTuple(merged), &(ca * cb), sign);
            }
        }
        out
    }

    pub fn checked_wedge(&self, other: &ExteriorForm) -> Result<ExteriorForm> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(self.wedge(other))
    }

    /// Exterior derivative.
    pub fn d(&self) -> ExteriorForm {
        let mut out = Self::zero(self.nvars, self.degree + 1);
        if self.degree >= self.nvars {
            return out;
        }
        for (t, c) in &self.terms {
            for r in 0..self.nvars {
                let dc = c.partial(r);
                if dc.is_zero() {
                    continue;
                }
                if let Some((tuple, sign)) = t.prepend(r) {
                    out.add_scaled_term(tuple, &dc, sign);
                }
            }
        }
        out
    }

    /// `i(d/dX_slot)`; a 0-form contracts to zero.
    pub fn contract_coordinate(&self, slot: usize) -> ExteriorForm {
        let degree = self.degree.saturating_sub(1);
        let mut out = Self::zero(self.nvars, degree);
        if self.degree == 0 {
            return out;
        }
        for (t, c) in &self.terms {
            if let Ok(pos) = t.0.binary_search(&slot) {
                out.add_scaled_term(t.remove_at(pos), c, if pos % 2 == 0 { 1 } else { -1 });
            }
        }
        out
    }

    /// `i(d/dX_{s1}, ..., d/dX_{sm}) = i(d/dX_{s1}) o ... o i(d/dX_{sm})`.
    ///
    /// Contracting more fields than the degree yields the zero form.
    pub fn contract_coordinates(&self, slots: &[usize]) -> ExteriorForm {
        if slots.len() > self.degree {
            return Self::zero(self.nvars, 0);
        }
        slots
            .iter()
            .rev()
            .fold(self.clone(), |acc, &s| acc.contract_coordinate(s))
    }

    /// Interior product `i(Y)`.
    pub fn interior(&self, field: &VectorField) -> Result<ExteriorForm> {
        if field.nvars() != self.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: field.nvars(),
            });
        }
        if self.degree == 0 {
            return Err(Error::ZeroFormContraction);
        }
        let mut out = Self::zero(self.nvars, self.degree - 1);
        for (t, c) in &self.terms {
            for (pos, &slot) in t.0.iter().enumerate() {
                let y = field.component(slot);
                if y.is_zero() {
                    continue;
                }
                out.add_scaled_term(
                    t.remove_at(pos),
                    &(c * y),
                    if pos % 2 == 0 { 1 } else { -1 },
                );
            }
        }
        Ok(out)
    }

    /// Alternating multilinear evaluation `theta(Y1, ..., Yk)`.
    pub fn evaluate(&self, fields: &[VectorField]) -> Result<Polynomial> {
        if fields.len() != self.degree {
            return Err(Error::Arity {
                expected: self.degree,
                got: fields.len(),
            });
        }
        let mut acc = self.clone();
        for f in fields {
            acc = acc.interior(f)?;
        }
        Ok(acc.scalar())
    }

    pub fn display(&self, base: usize) -> FormDisplay<'_> {
        FormDisplay { form: self, base }
    }

    pub fn to_text(&self, base: usize) -> String {
        use alloc::string::ToString;
        self.display(base).to_string()
    }

    /// Parses text such as `X2*dX3 - 2*X3*dX2`. With `degree = None` the
    /// degree is inferred; a zero form then gets degree 0.
    pub fn parse(text: &str, nvars: usize, base: usize, degree: Option<usize>) -> Result<Self> {
        let raw = crate::text::parse_raw_form(text, nvars, base)?;
        let inferred = match raw.keys().next() {
            Some(t) => t.len(),
            None => degree.unwrap_or(0),
        };
        if let Some(t) = raw.keys().find(|t| t.len() != inferred) {
            return Err(Error::FormDegree {
                expected: inferred,
                got: t.len(),
            });
        }
        if let Some(d) = degree {
            if d != inferred {
                return Err(Error::FormDegree {
                    expected: d,
                    got: inferred,
                });
            }
        }
        Ok(Self::from_terms(
            nvars,
            inferred,
            raw.into_iter().map(|(t, c)| (IndexTuple(t), c)),
        ))
    }

    fn combine(&self, other: &ExteriorForm, sign: i8) -> ExteriorForm {
        assert_eq!(
            self.nvars, other.nvars,
            "forms over different variable counts"
        );
        if other.is_zero() {
            return self.clone();
        }
        let mut out = if self.is_zero() {
            Self::zero(self.nvars, other.degree)
        } else {
            assert_eq!(
                self.degree, other.degree,
                "adding forms of different degree"
            );
            self.clone()
        };
        for (t, c) in &other.terms {
            out.add_scaled_term(t.clone(), c, sign);
        }
        out
    }
}

impl Add<&ExteriorForm> for &ExteriorForm {
    type Output = ExteriorForm;
    fn add(self, rhs: &ExteriorForm) -> ExteriorForm {
        self.combine(rhs, 1)
    }
}

impl Sub<&ExteriorForm> for &ExteriorForm {
    type Output = ExteriorForm;
    fn sub(self, rhs: &ExteriorForm) -> ExteriorForm {
        self.combine(rhs, -1)
    }
}

impl Neg for &ExteriorForm {
    type Output = ExteriorForm;
    fn neg(self) -> ExteriorForm {
        self.scale(&-Rational::one())
    }
}

pub struct FormDisplay<'a> {
    form: &'a ExteriorForm,
    base: usize,
}

impl fmt::Display for FormDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use alloc::string::ToString;
        if self.form.is_zero() {
            return f.write_str("0");
        }
        // Descending tuple order lists Omega as P12*dX3 - P13*dX2 + P23*dX1.
        for (idx, (t, c)) in self.form.terms.iter().rev().enumerate() {
            let single_negative =
                c.len() == 1 && c.terms().next().is_some_and(|(_, v)| v.is_negative());
            let (sep, coeff) = if single_negative && idx > 0 {
                (" - ", -c)
            } else if idx > 0 {
                (" + ", c.clone())
            } else {
                ("", c.clone())
            };
            f.write_str(sep)?;
            let diffs: Vec<String> =
                t.0.iter()
                    .map(|s| alloc::format!("dX{}", s + self.base))
                    .collect();
            let diffs = diffs.join("^");
            let text = coeff.display(self.base).to_string();
            if t.is_empty() {
                if coeff.len() > 1 && idx > 0 {
                    write!(f, "({text})")?;
                } else {
                    f.write_str(&text)?;
                }
            } else if coeff.len() > 1 {
                write!(f, "({text})*{diffs}")?;
            } else if coeff
                .terms()
                .next()
                .is_some_and(|(m, v)| m.is_one() && v.abs().is_one())
            {
                if text.starts_with('-') {
                    write!(f, "-{diffs}")?;
                } else {
                    f.write_str(&diffs)?;
                }
            } else {
                write!(f, "{text}*{diffs}")?;
            }
        }
        Ok(())
    }
}
