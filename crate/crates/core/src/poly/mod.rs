//! Sparse multivariate polynomials with exact rational coefficients.

mod monomial;

use alloc::collections::BTreeMap;
use alloc::string::String;

use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use monomial::{monomial_basis, Monomial, WeightVector};

use crate::{Error, Result};

/// The coefficient field.
pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Result of [`Polynomial::weight`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    /// The zero polynomial is homogeneous of every weight.
    Zero,
    Homogeneous(i64),
    NotHomogeneous,
}

/// An element of `Q[X_1, ..., X_n]`.
///
/// Variables are addressed by 0-based slot; the textual label of slot `i`
/// is `X{i + base}` where `base` is 1 by default and 0 for rings that
/// carry a torus coordinate `X0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    /// The coordinate function in slot `i`.
    ///
    /// # Panics
    /// If `i >= nvars`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(
            i < nvars,
            "variable slot {i} out of range for {nvars} variables"
        );
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Largest total degree of a term, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, degree: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn weight(&self, w: &WeightVector) -> Weight {
        let mut ws = self.terms.keys().map(|m| m.weight(w));
        match ws.next() {
            None => Weight::Zero,
            Some(first) if ws.all(|x| x == first) => Weight::Homogeneous(first),
            Some(_) => Weight::NotHomogeneous,
        }
    }

    pub fn contains_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.contains(i))
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        self.check_same(other);
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(n, v)| (n.mul(m), v * c)).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(self * other)
    }

    /// Formal partial derivative with respect to slot `i`.
    ///
    /// # Panics
    /// If `i` is out of range; see [`Polynomial::checked_partial`].
    pub fn partial(&self, i: usize) -> Polynomial {
        assert!(
            i < self.nvars,
            "variable slot {i} out of range for {} variables",
            self.nvars
        );
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.lower(i) {
                out.add_term(lowered, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    pub fn checked_partial(&self, i: usize) -> Result<Polynomial> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        Ok(self.partial(i))
    }

    /// Evaluates at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Text form with variable labels starting at `base`.
    pub fn display(&self, base: usize) -> PolyDisplay<'_> {
        PolyDisplay { poly: self, base }
    }

    pub fn to_text(&self, base: usize) -> String {
        use alloc::string::ToString;
        self.display(base).to_string()
    }

    /// Parses the textual grammar
    /// `term := [sign] [rational "*"] factor ("*" factor)*`,
    /// `factor := "X" index ["^" exponent]`.
    pub fn parse(text: &str, nvars: usize, base: usize) -> Result<Polynomial> {
        crate::text::parse_polynomial(text, nvars, base)
    }

    fn check_same(&self, other: &Polynomial) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials over different variable counts"
        );
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    base: usize,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.fmt_with_base(f, self.base)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(1).fmt(f)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        self.check_same(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        self.check_same(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_same(rhs);
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

/// Shorthand used throughout the tests: parse with labels starting at 1.
#[cfg(test)]
pub(crate) fn p(text: &str, nvars: usize) -> Polynomial {
    Polynomial::parse(text, nvars, 1).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn parse_examples() {
        let x2 = p("X2", 3);
        assert_eq!(x2, Polynomial::var(3, 1));
        let two = p("2*X1^2*X3 - 1/2*X2", 3);
        assert_eq!(two.len(), 2);
        assert_eq!(
            two.coefficient(&Monomial::from_exponents(vec![2, 0, 1])),
            integer(2)
        );
        assert_eq!(two.coefficient(&Monomial::var(3, 1)), rational(-1, 2));
        assert!(p("X1*X2 - X2*X1", 2).is_zero());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Polynomial::parse("X4", 3, 1),
            Err(Error::VariableOutOfRange { label: 4 })
        ));
        assert!(matches!(
            Polynomial::parse("X0", 3, 1),
            Err(Error::VariableOutOfRange { label: 0 })
        ));
        assert!(matches!(
            Polynomial::parse("2*+X1", 3, 1),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(Polynomial::parse("X1^0", 3, 1).is_err());
        assert!(Polynomial::parse("1/0", 3, 1).is_err());
        assert!(Polynomial::parse("", 3, 1).is_err());
    }

    #[test]
    fn x0_labels() {
        let q = Polynomial::parse("X0*X3 + 2", 4, 0).unwrap();
        assert_eq!(q.to_text(0), "X0*X3 + 2");
        assert_eq!(q.to_text(1), "X1*X4 + 2");
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(p("X2^2 - X1^2", 2).to_string(), "-X1^2 + X2^2");
        assert_eq!(
            p("-1/2*X2 + 2*X3*X1^2", 3).to_string(),
            "2*X1^2*X3 - 1/2*X2"
        );
        assert_eq!(p("1 - X1", 1).to_string(), "-X1 + 1");
        assert_eq!(p("0", 2).to_string(), "0");
        assert_eq!(p("-3/4", 2).to_string(), "-3/4");
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(p("(X1 + X2)*(X1 - X2)", 2), p("X1^2 - X2^2", 2));
        assert_eq!(&p("X1 + 3", 2) * &Polynomial::zero(2), Polynomial::zero(2));
        assert_eq!(&p("1/2*X2", 3) * &p("2*X3", 3), p("X2*X3", 3));
        assert!(p("X1", 2).checked_mul(&p("X1", 3)).is_err());
    }

    #[test]
    fn partial_examples() {
        assert_eq!(p("X1^2*X2", 3).partial(0), p("2*X1*X2", 3));
        assert!(p("X1^2*X2", 3).partial(2).is_zero());
        assert_eq!(p("X2^2 + X2*X3", 3).partial(1), p("2*X2 + X3", 3));
        assert!(p("X1", 3).checked_partial(3).is_err());
    }

    #[test]
    fn components_and_weights() {
        let q = p("X1 + X2^2", 2);
        assert_eq!(q.homogeneous_component(2), p("X2^2", 2));
        assert!(q.homogeneous_component(0).is_zero());
        assert!(Polynomial::zero(2).homogeneous_component(3).is_zero());

        let w = WeightVector::sequential(4, 0);
        assert_eq!(
            Polynomial::parse("X2*X3", 4, 0).unwrap().weight(&w),
            Weight::Homogeneous(5)
        );
        assert_eq!(
            Polynomial::parse("X0", 4, 0).unwrap().weight(&w),
            Weight::Homogeneous(0)
        );
        assert_eq!(
            Polynomial::parse("X1 + X2", 4, 0).unwrap().weight(&w),
            Weight::NotHomogeneous
        );
    }
}
