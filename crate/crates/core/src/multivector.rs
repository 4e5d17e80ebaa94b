//! Skew multiderivations of the polynomial algebra and the correspondence
//! with exterior forms.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::{Add, Deref, Neg, Sub};

use num_traits::One;

use crate::exterior::{shuffle_sign, ExteriorForm, IndexTuple};
use crate::poly::{Polynomial, Rational};
use crate::{Error, Result};

/// A skew `k`-derivation, stored by its values on increasing coordinate
/// tuples. For `k > n` only the zero derivation exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiDerivation {
    nvars: usize,
    arity: usize,
    values: BTreeMap<IndexTuple, Polynomial>,
}

impl MultiDerivation {
    pub fn zero(nvars: usize, arity: usize) -> Self {
        MultiDerivation {
            nvars,
            arity,
            values: BTreeMap::new(),
        }
    }

    /// A 0-cochain.
    pub fn scalar(p: Polynomial) -> Self {
        let mut out = Self::zero(p.nvars(), 0);
        out.set(IndexTuple::empty(), p);
        out
    }

    pub fn from_values(
        nvars: usize,
        arity: usize,
        values: impl IntoIterator<Item = (IndexTuple, Polynomial)>,
    ) -> Self {
        let mut out = Self::zero(nvars, arity);
        for (t, p) in values {
            out.set(t, p);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero values in increasing tuple order.
    pub fn values(&self) -> impl Iterator<Item = (&IndexTuple, &Polynomial)> + '_ {
        self.values.iter()
    }

    /// Overwrites the value on `tuple`.
    pub fn set(&mut self, tuple: IndexTuple, p: Polynomial) {
        assert_eq!(tuple.len(), self.arity, "tuple length differs from arity");
        assert!(tuple.slots().iter().all(|&s| s < self.nvars));
        assert_eq!(p.nvars(), self.nvars);
        if p.is_zero() {
            self.values.remove(&tuple);
        } else {
            self.values.insert(tuple, p);
        }
    }

    pub fn value(&self, tuple: &IndexTuple) -> Polynomial {
        self.values
            .get(tuple)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    /// `phi(X_{s1}, ..., X_{sk})` for arbitrary slots, using skew-symmetry.
    pub fn value_at(&self, slots: &[usize]) -> Polynomial {
        match crate::text::sort_with_sign(slots) {
            None => Polynomial::zero(self.nvars),
            Some((sorted, sign)) => {
                let v = self.value(&IndexTuple::from_sorted(sorted));
                if sign > 0 {
                    v
                } else {
                    -v
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiDerivation {
        MultiDerivation::from_values(
            self.nvars,
            self.arity,
            self.values.iter().map(|(t, v)| (t.clone(), v.scale(c))),
        )
    }

    /// The part whose values are homogeneous of degree `d`.
    pub fn homogeneous_component(&self, d: u32) -> MultiDerivation {
        MultiDerivation::from_values(
            self.nvars,
            self.arity,
            self.values
                .iter()
                .map(|(t, v)| (t.clone(), v.homogeneous_component(d))),
        )
    }

    /// Largest total degree among the values.
    pub fn max_degree(&self) -> Option<u32> {
        self.values
            .values()
            .filter_map(Polynomial::total_degree)
            .max()
    }

    /// The common degree of all values; `Ok(None)` for the zero derivation.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut deg = None;
        for v in self.values.values() {
            if !v.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            let d = v.total_degree().expect("nonzero value");
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return Err(Error::NotHomogeneous),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Evaluates the unique `k`-derivation extension on `args`.
    ///
    /// Each slot is expanded by the Leibniz rule, giving
    /// `sum phi(X_{r1}, ..., X_{rk}) d_{r1}P_1 ... d_{rk}P_k` over tuples of
    /// distinct coordinates.
    pub fn evaluate(&self, args: &[Polynomial]) -> Result<Polynomial> {
        if args.len() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                got: args.len(),
            });
        }
        if let Some(a) = args.iter().find(|a| a.nvars() != self.nvars) {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: a.nvars(),
            });
        }
        if self.arity == 0 {
            return Ok(self.value(&IndexTuple::empty()));
        }
        let partials: Vec<Vec<Polynomial>> = args
            .iter()
            .map(|a| (0..self.nvars).map(|r| a.partial(r)).collect())
            .collect();
        let mut out = Polynomial::zero(self.nvars);
        let mut slots = Vec::with_capacity(self.arity);
        self.expand(&partials, &mut slots, Polynomial::one(self.nvars), &mut out);
        Ok(out)
    }

    fn expand(
        &self,
        partials: &[Vec<Polynomial>],
        slots: &mut Vec<usize>,
        coeff: Polynomial,
        out: &mut Polynomial,
    ) {
        let a = slots.len();
        if a == self.arity {
            let v = self.value_at(slots);
            if !v.is_zero() {
                *out += &(&v * &coeff);
            }
            return;
        }
        for r in 0..self.nvars {
            if slots.contains(&r) || partials[a][r].is_zero() {
                continue;
            }
            slots.push(r);
            self.expand(partials, slots, &coeff * &partials[a][r], out);
            slots.pop();
        }
    }

    /// The `(n-k)`-form `sum sign(I, J) phi(X_I) dX_J`, `J` the complement
    /// of `I`.
    pub fn phi_map(&self) -> ExteriorForm {
        if self.arity > self.nvars {
            return ExteriorForm::zero(self.nvars, 0);
        }
        let degree = self.nvars - self.arity;
        let mut out = ExteriorForm::zero(self.nvars, degree);
        for (t, v) in &self.values {
            let comp = t.complement(self.nvars);
            let term = if shuffle_sign(t, &comp) > 0 {
                v.clone()
            } else {
                -v
            };
            out.add_term(comp, term);
        }
        out
    }

    /// Inverse of [`phi_map`](Self::phi_map).
    pub fn phi_inverse(form: &ExteriorForm) -> MultiDerivation {
        let n = form.nvars();
        let arity = n - form.degree().min(n);
        let mut out = Self::zero(n, arity);
        for (t, c) in form.terms() {
            let comp = t.complement(n);
            let v = if shuffle_sign(&comp, t) > 0 {
                c.clone()
            } else {
                -c
            };
            out.set(comp, v);
        }
        out
    }

    pub fn to_text(&self, base: usize) -> String {
        use alloc::format;
        if self.values.is_empty() {
            return String::from("0");
        }
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(t, v)| format!("{} -> {}", t.display(base), v.display(base)))
            .collect();
        parts.join("; ")
    }

    fn combine(&self, other: &MultiDerivation, sign: i8) -> MultiDerivation {
        assert_eq!(self.nvars, other.nvars);
        assert_eq!(self.arity, other.arity);
        let mut out = self.clone();
        for (t, v) in &other.values {
            let cur = out.value(t);
            let next = if sign > 0 { &cur + v } else { &cur - v };
            out.set(t.clone(), next);
        }
        out
    }
}

impl Add<&MultiDerivation> for &MultiDerivation {
    type Output = MultiDerivation;
    fn add(self, rhs: &MultiDerivation) -> MultiDerivation {
        self.combine(rhs, 1)
    }
}

impl Sub<&MultiDerivation> for &MultiDerivation {
    type Output = MultiDerivation;
    fn sub(self, rhs: &MultiDerivation) -> MultiDerivation {
        self.combine(rhs, -1)
    }
}

impl Neg for &MultiDerivation {
    type Output = MultiDerivation;
    fn neg(self) -> MultiDerivation {
        self.scale(&-Rational::one())
    }
}

/// A skew 2-derivation `sum_{i<j} P_ij d_i ^ d_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bivector(MultiDerivation);

impl Deref for Bivector {
    type Target = MultiDerivation;
    fn deref(&self) -> &MultiDerivation {
        &self.0
    }
}

impl Bivector {
    pub fn zero(nvars: usize) -> Self {
        Bivector(MultiDerivation::zero(nvars, 2))
    }

    /// Builds from `(i, j, P_ij)` with 0-based slots. Entries with `i > j`
    /// are stored as `P_ji = -P_ij`; repeated pairs accumulate.
    pub fn from_entries(
        nvars: usize,
        entries: impl IntoIterator<Item = (usize, usize, Polynomial)>,
    ) -> Result<Self> {
        let mut out = Self::zero(nvars);
        for (i, j, p) in entries {
            for s in [i, j] {
                if s >= nvars {
                    return Err(Error::IndexOutOfRange { index: s, nvars });
                }
            }
            if p.nvars() != nvars {
                return Err(Error::VariableCountMismatch {
                    left: nvars,
                    right: p.nvars(),
                });
            }
            if i == j {
                if p.is_zero() {
                    continue;
                }
                return Err(Error::Constraint(String::from(
                    "diagonal bivector entries must vanish",
                )));
            }
            let (t, v) = if i < j {
                (IndexTuple::from_sorted(alloc::vec![i, j]), p)
            } else {
                (IndexTuple::from_sorted(alloc::vec![j, i]), -p)
            };
            let cur = out.0.value(&t);
            out.0.set(t, &cur + &v);
        }
        Ok(out)
    }

    pub fn from_multiderivation(m: MultiDerivation) -> Self {
        assert_eq!(m.arity(), 2, "a bivector has arity 2");
        Bivector(m)
    }

    /// Reads a bivector back from its `(n-2)`-form.
    pub fn from_omega(omega: &ExteriorForm) -> Result<Self> {
        let n = omega.nvars();
        if n < 2 || omega.degree() + 2 != n && !omega.is_zero() {
            return Err(Error::FormDegree {
                expected: n.saturating_sub(2),
                got: omega.degree(),
            });
        }
        let mut m = MultiDerivation::phi_inverse(omega);
        m.arity = 2;
        Ok(Bivector(m))
    }

    pub fn as_multiderivation(&self) -> &MultiDerivation {
        &self.0
    }

    /// `P_ij` with `P_ji = -P_ij` and `P_ii = 0`.
    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        self.0.value_at(&[i, j])
    }

    /// `{p, q}`.
    pub fn bracket(&self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
        self.0.evaluate(&[p.clone(), q.clone()])
    }

    /// `{X_i, g} = sum_j P_ij d_j g`.
    pub fn bracket_coordinate(&self, i: usize, g: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars());
        for j in 0..self.nvars() {
            if j == i {
                continue;
            }
            let pij = self.entry(i, j);
            if pij.is_zero() {
                continue;
            }
            let dg = g.partial(j);
            if !dg.is_zero() {
                out += &(&pij * &dg);
            }
        }
        out
    }

    /// The `(n-2)`-form associated with the bivector.
    pub fn omega(&self) -> ExteriorForm {
        self.0.phi_map()
    }

    /// For every `i < j < k`, the cyclic sum
    /// `sum_r P_ri d_r P_jk + P_rj d_r P_ki + P_rk d_r P_ij`.
    pub fn jacobi_trisum(&self) -> Vec<([usize; 3], Polynomial)> {
        let n = self.nvars();
        let entries: Vec<Vec<Polynomial>> = (0..n)
            .map(|a| (0..n).map(|b| self.entry(a, b)).collect())
            .collect();
        let mut out = Vec::new();
        for t in IndexTuple::all(n, 3) {
            let (i, j, k) = (t.slots()[0], t.slots()[1], t.slots()[2]);
            let mut sum = Polynomial::zero(n);
            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                for r in 0..n {
                    let pra = &entries[r][a];
                    if pra.is_zero() {
                        continue;
                    }
                    let d = entries[b][c].partial(r);
                    if !d.is_zero() {
                        sum += &(pra * &d);
                    }
                }
            }
            out.push(([i, j, k], sum));
        }
        out
    }

    /// The first nonzero trisum, if any.
    pub fn jacobi_witness(&self) -> Option<([usize; 3], Polynomial)> {
        self.jacobi_trisum().into_iter().find(|(_, p)| !p.is_zero())
    }

    /// Integrability through the form `Omega`: `Omega ^ dOmega = 0` for
    /// three variables, `d(alpha_I) ^ Omega = 0` for every increasing
    /// `(n-3)`-tuple `I` otherwise, where `alpha_I(Y) = Omega(d_I, Y)`.
    pub fn integrability_via_forms(&self) -> Result<bool> {
        let n = self.nvars();
        if n < 3 {
            return Err(Error::UnsupportedDimension {
                what: "form integrability criterion",
                nvars: n,
            });
        }
        let omega = self.omega();
        if n == 3 {
            let d_omega = omega.d();
            let left = omega.wedge(&d_omega);
            let right = d_omega.wedge(&omega);
            if left != right {
                return Err(Error::CriteriaDisagree);
            }
            return Ok(left.is_zero());
        }
        for t in IndexTuple::all(n, n - 3) {
            let reversed: Vec<usize> = t.slots().iter().rev().copied().collect();
            let alpha = omega.contract_coordinates(&reversed);
            if !alpha.d().wedge(&omega).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::p;
    use alloc::vec;

    fn t(slots: &[usize]) -> IndexTuple {
        IndexTuple::new(slots.to_vec()).unwrap()
    }

    fn p1() -> Bivector {
        Bivector::from_entries(3, [(0, 1, p("X2", 3)), (0, 2, p("2*X3", 3))]).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let phi = MultiDerivation::from_values(2, 2, [(t(&[0, 1]), Polynomial::one(2))]);
        assert_eq!(
            phi.evaluate(&[p("X1^2", 2), p("X2", 2)]).unwrap(),
            p("2*X1", 2)
        );
        let q = p("X1*X2 + X2^3", 2);
        assert!(phi.evaluate(&[q.clone(), q]).unwrap().is_zero());
        assert_eq!(
            p1().bracket(&p("X1", 3), &p("X2*X3", 3)).unwrap(),
            p("3*X2*X3", 3)
        );
        assert!(matches!(
            phi.evaluate(&[p("X1", 2)]),
            Err(Error::Arity {
                expected: 2,
                got: 1
            })
        ));
    }

    #[test]
    fn phi_map_examples() {
        let phi = MultiDerivation::from_values(3, 1, [(t(&[0]), p("X2", 3))]);
        assert_eq!(
            phi.phi_map(),
            ExteriorForm::parse("X2*dX2^dX3", 3, 1, None).unwrap()
        );
        let top = MultiDerivation::scalar(p("X1 + X3", 3)).phi_map();
        assert_eq!(
            top,
            ExteriorForm::parse("(X1 + X3)*dX1^dX2^dX3", 3, 1, None).unwrap()
        );
        let omega = p1().omega();
        assert_eq!(omega.to_text(1), "X2*dX3 - 2*X3*dX2");
    }

    #[test]
    fn phi_inverse_examples() {
        let form = ExteriorForm::parse("X3*dX2", 3, 1, None).unwrap();
        let phi = MultiDerivation::phi_inverse(&form);
        assert_eq!(phi.arity(), 2);
        assert_eq!(phi.value(&t(&[0, 2])), p("-X3", 3));
        assert_eq!(phi.values().count(), 1);
        assert!(MultiDerivation::phi_inverse(&ExteriorForm::zero(3, 1)).is_zero());
    }

    #[test]
    fn trisum_examples() {
        let so3 = Bivector::from_entries(
            3,
            [(0, 1, p("X3", 3)), (0, 2, p("-X2", 3)), (1, 2, p("X1", 3))],
        )
        .unwrap();
        assert!(so3.jacobi_witness().is_none());
        assert!(so3.integrability_via_forms().unwrap());

        let bad = Bivector::from_entries(
            3,
            [(0, 1, p("X2", 3)), (0, 2, p("X3", 3)), (1, 2, p("X1", 3))],
        )
        .unwrap();
        assert_eq!(bad.jacobi_witness(), Some(([0, 1, 2], p("2*X1", 3))));
        assert!(!bad.integrability_via_forms().unwrap());
        assert!(Bivector::zero(4).jacobi_witness().is_none());
        assert!(p1().integrability_via_forms().unwrap());
    }

    #[test]
    fn skew_entries() {
        let b = Bivector::from_entries(3, [(2, 0, p("X2", 3))]).unwrap();
        assert_eq!(b.entry(0, 2), p("-X2", 3));
        assert_eq!(b.entry(2, 0), p("X2", 3));
        assert!(b.entry(1, 1).is_zero());
        assert_eq!(b.bracket_coordinate(0, &p("X3^2", 3)), p("-2*X2*X3", 3));
        let v = vec![p("X3", 3)];
        assert!(b.evaluate(&v).is_err());
    }
}
