//! Named structures with their parameters and known properties.
//!
//! Three-variable entries are stored as the 1-form `Omega` in the printed
//! notation and decoded through `Phi`, i.e. `P12`, `-P13` and `P23` are the
//! coefficients of `dX3`, `dX2` and `dX1`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exterior::ExteriorForm;
use crate::multivector::{Bivector, MultiDerivation};
use crate::poisson::PoissonStructure;
use crate::poly::{integer, Polynomial, Rational};
use crate::{Error, IndexTuple, Result};

pub type Params = BTreeMap<String, Rational>;

/// Admissible values of a parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    Any,
    NonZero,
    /// Neither 0 nor -1.
    NonZeroNorMinusOne,
}

impl Constraint {
    pub fn admits(self, v: &Rational) -> bool {
        match self {
            Constraint::Any => true,
            Constraint::NonZero => !v.is_zero(),
            Constraint::NonZeroNorMinusOne => !v.is_zero() && *v != -Rational::one(),
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Constraint::Any => "any",
            Constraint::NonZero => "nonzero",
            Constraint::NonZeroNorMinusOne => "not 0 or -1",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub constraint: Constraint,
}

const fn any(name: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        constraint: Constraint::Any,
    }
}

const fn nonzero(name: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        constraint: Constraint::NonZero,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Fixed three-variable 1-form with parameters.
    Omega {
        printed: &'static str,
        /// Integrable variant when the printed form fails the check.
        corrected: Option<&'static str>,
    },
    P1,
    P2,
    Rigid,
    DeformedMu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Example,
    LinearNormalForm,
    AffineNormalForm,
    Quadratic,
    Deformation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub kind: Kind,
    pub family: Family,
    pub params: &'static [ParamSpec],
    /// Whether the entry takes a size `n`.
    pub sized: bool,
    pub note: Option<&'static str>,
}

impl CatalogEntry {
    pub fn is_degree_at_most_two(&self) -> bool {
        matches!(self.family, Family::Omega { .. } | Family::P1)
    }

    /// The printed form with placeholders, for three-variable entries.
    pub fn printed(&self) -> Option<&'static str> {
        match self.family {
            Family::Omega { printed, .. } => Some(printed),
            _ => None,
        }
    }

    pub fn param_summary(&self) -> String {
        let mut parts: Vec<String> = self
            .params
            .iter()
            .map(|p| format!("{} ({})", p.name, p.constraint.describe()))
            .collect();
        if self.sized {
            parts.insert(0, String::from("n"));
        }
        if parts.is_empty() {
            String::from("-")
        } else {
            parts.join(", ")
        }
    }
}

macro_rules! omega {
    ($name:expr, $kind:expr, $desc:expr, $params:expr, $printed:expr) => {
        CatalogEntry {
            name: $name,
            description: $desc,
            kind: $kind,
            family: Family::Omega {
                printed: $printed,
                corrected: None,
            },
            params: $params,
            sized: false,
            note: None,
        }
    };
}

const ALPHA: &[ParamSpec] = &[any("alpha")];
const ABCE: &[ParamSpec] = &[any("a"), any("b"), any("c"), any("e")];
const ABC: &[ParamSpec] = &[any("a"), any("b"), any("c")];
const A: &[ParamSpec] = &[any("a")];
const NZA_B: &[ParamSpec] = &[nonzero("a"), any("b")];
const ABCEFG: &[ParamSpec] = &[any("a"), any("b"), any("c"), any("e"), any("f"), any("g")];
const A_ALPHA: &[ParamSpec] = &[
    any("a"),
    ParamSpec {
        name: "alpha",
        constraint: Constraint::NonZeroNorMinusOne,
    },
];

/// Every entry, in listing order.
pub fn entries() -> Vec<CatalogEntry> {
    use Kind::*;
    alloc::vec![
        CatalogEntry {
            name: "P1",
            description: "linear structure {X1,X2}=X2, {X1,X3}=2*X3, {X2,X3}=0",
            kind: Example,
            family: Family::P1,
            params: &[],
            sized: false,
            note: None,
        },
        CatalogEntry {
            name: "P2",
            description: "linear structure {X1,Xi}=(i-1)*Xi for i=2..n",
            kind: Example,
            family: Family::P2,
            params: &[],
            sized: true,
            note: None,
        },
        CatalogEntry {
            name: "rigid",
            description: "rigid solvable algebra on X0..Xn: {X0,Xi}=i*Xi, {X1,Xi}=X(i+1), {X2,Xi}=X(i+2)",
            kind: Example,
            family: Family::Rigid,
            params: &[],
            sized: true,
            note: None,
        },
        CatalogEntry {
            name: "deformed-mu",
            description: "non-Lie deformation of the rigid bracket along the degree-1 class",
            kind: Deformation,
            family: Family::DeformedMu,
            params: &[],
            sized: true,
            note: Some("satisfies the Jacobi identity for n <= 8 and fails it from n = 9 on"),
        },
        omega!("L1", LinearNormalForm, "linear normal form (Heisenberg)", &[], "X3*dX3"),
        omega!("L2", LinearNormalForm, "linear normal form", &[], "X2*dX3 + X3*dX2 + X1*dX1"),
        omega!("L3", LinearNormalForm, "linear normal form with parameter", ALPHA, "X2*dX3 - {alpha}*X3*dX2"),
        omega!("L4", LinearNormalForm, "linear normal form", &[], "(X2 + X3)*dX3 - X3*dX2"),
        omega!("Affine1", AffineNormalForm, "constant plus linear normal form", &[], "dX3 - X3*dX2"),
        omega!("Affine2", AffineNormalForm, "constant plus linear normal form", &[], "X3*dX3 - dX2"),
        omega!("Affine3", AffineNormalForm, "constant plus linear normal form", &[], "X2*dX3 + X3*dX2 + dX1"),
        omega!(
            "Omega1",
            Quadratic,
            "closed quadratic part over the Heisenberg form",
            ABCE,
            "({a}*X1^2 - 1/2*{b}*X2^2 - 2*{c}*X1*X2)*dX1 - ({c}*X1^2 + {e}*X2^2 + {b}*X1*X2)*dX2 + X3*dX3"
        ),
        CatalogEntry {
            name: "Omega2",
            description: "closed quadratic part over the second linear form",
            kind: Quadratic,
            family: Family::Omega {
                printed: "(X1 + {a}*X1^2 - 1/2*{b}*X2^2 - 2*{c}*X1*X2)*dX1 + (X3 - {c}*X1^2 - {e}*X2^2 - {b}*X1*X2)*dX2 + X3*dX3",
                corrected: Some(
                    "(X1 + {a}*X1^2 - 1/2*{b}*X2^2 - 2*{c}*X1*X2)*dX1 + (X3 - {c}*X1^2 - {e}*X2^2 - {b}*X1*X2)*dX2 + X2*dX3",
                ),
            },
            params: ABCE,
            sized: false,
            note: Some("printed last term X3*dX3 fails Jacobi; X2*dX3 matches the linear part X2*dX3 + X3*dX2 + X1*dX1"),
        },
        omega!(
            "Omega3",
            Quadratic,
            "non-closed quadratic part over the Heisenberg form",
            ABC,
            "({a}*X1*X3 + {b}*X2*X3)*dX1 + ({b}*X1*X3 + {c}*X2*X3)*dX2 + X3*dX3"
        ),
        CatalogEntry {
            name: "Omega4",
            description: "non-closed quadratic part over the second linear form",
            kind: Quadratic,
            family: Family::Omega {
                printed: "X1*dX1 + (X3 - {a}*X1*X3)*dX2 + (X2 + {a}*X1*X2)*dX3",
                corrected: Some("X1*dX1 + (X3 + {a}*X1*X3)*dX2 + (X2 + {a}*X1*X2)*dX3"),
            },
            params: A,
            sized: false,
            note: Some("printed signs fail Jacobi unless a = 0; equal signs give X1*dX1 + (1 + a*X1)*(X3*dX2 + X2*dX3)"),
        },
        omega!(
            "Omega5",
            Quadratic,
            "non-closed quadratic part over the second linear form",
            A,
            "X1*dX1 + (X3 - {a}*X1^2 - 2*{a}*X2*X3)*dX2 + X2*dX3"
        ),
        CatalogEntry {
            name: "Omega6",
            description: "quadratic part over the linear form with parameter",
            kind: Quadratic,
            family: Family::Omega {
                printed: "{a}*X1*X3*dX1 - {alpha}*X3*dX2 + (X2 - {a/(2*alpha)}*X1^2)*dX3",
                corrected: None,
            },
            params: A_ALPHA,
            sized: false,
            note: None,
        },
        omega!(
            "Omega7",
            Quadratic,
            "quadratic part over the fourth linear form",
            NZA_B,
            "{a}*X3^2*dX1 - (X3 + {b}*X3^2)*dX2 + (X2 + X3)*dX3"
        ),
        omega!(
            "Omega8",
            Quadratic,
            "quadratic part over dX3 - X3*dX2",
            NZA_B,
            "{a}*X2*X3*dX1 - (X3 - {a}*X1*X3 + {b}*X2*X3)*dX2 + dX3"
        ),
        omega!(
            "Omega9",
            Quadratic,
            "quadratic part over X3*dX3 - dX2",
            ABCEFG,
            "-(X2 + {a}*X2^2 + {b}*X1*X2)*dX2 + (1 + {c}*X1^2 + {e}*X3^2 + {f}*X1*X3)*dX3 + ({g}*X1^2 - 1/2*{b}*X2^2 + 1/2*{f}*X3^2 + 2*{c}*X1*X3)*dX1"
        ),
        omega!(
            "Omega10",
            Quadratic,
            "quadratic part over X2*dX3 + X3*dX2 + dX1",
            A,
            "(1 + {a}*X1^2)*dX1 + X3*dX2 + X2*dX3"
        ),
        omega!(
            "Omega11",
            Quadratic,
            "quadratic part over X2*dX3 + X3*dX2 + dX1",
            ABC,
            "(1 + {a}*X1^2)*dX1 + (X3 + {b}*X3^2 + {c}*X2*X3)*dX2 + (X2 + 1/2*{c}*X2^2 + 2*{b}*X2*X3)*dX3"
        ),
    ]
}

pub fn entry(name: &str) -> Result<CatalogEntry> {
    entries()
        .into_iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

fn check_params(e: &CatalogEntry, params: &Params) -> Result<()> {
    for key in params.keys() {
        if !e.params.iter().any(|p| p.name == key) {
            return Err(Error::Constraint(format!(
                "{} takes no parameter `{key}`",
                e.name
            )));
        }
    }
    for spec in e.params {
        let v = params
            .get(spec.name)
            .ok_or_else(|| Error::MissingParameter(spec.name.to_string()))?;
        if !spec.constraint.admits(v) {
            return Err(Error::Constraint(format!(
                "{} requires {} {}",
                e.name,
                spec.name,
                spec.constraint.describe()
            )));
        }
    }
    Ok(())
}

/// Replaces `{name}` placeholders by parenthesized values. The only
/// compound placeholder is `{a/(2*alpha)}`.
fn substitute(template: &str, params: &Params) -> Result<String> {
    let mut out = String::new();
    let mut rest = template;
    while let Some(start) = rest.find('{') {
        out.push_str(&rest[..start]);
        let end = rest[start..].find('}').expect("closed placeholder") + start;
        let key = &rest[start + 1..end];
        let value = if key == "a/(2*alpha)" {
            let a = lookup(params, "a")?;
            let alpha = lookup(params, "alpha")?;
            a / (alpha * integer(2))
        } else {
            lookup(params, key)?
        };
        out.push_str(&format!("({value})"));
        rest = &rest[end + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

fn lookup(params: &Params, key: &str) -> Result<Rational> {
    params
        .get(key)
        .cloned()
        .ok_or_else(|| Error::MissingParameter(key.to_string()))
}

fn omega_text(name: &str, params: &Params, use_correction: bool) -> Result<String> {
    let e = entry(name)?;
    let Family::Omega { printed, corrected } = e.family else {
        return Err(Error::Constraint(format!(
            "{} is not a three-variable form",
            e.name
        )));
    };
    check_params(&e, params)?;
    let template = if use_correction {
        corrected.unwrap_or(printed)
    } else {
        printed
    };
    substitute(template, params)
}

/// The printed 1-form of a three-variable entry with parameters bound.
pub fn printed_form(name: &str, params: &Params) -> Result<ExteriorForm> {
    ExteriorForm::parse(&omega_text(name, params, false)?, 3, 1, Some(1))
}

/// The 1-form the entry's bivector is decoded from: the printed form, or
/// its correction where one is recorded.
pub fn stored_form(name: &str, params: &Params) -> Result<ExteriorForm> {
    ExteriorForm::parse(&omega_text(name, params, true)?, 3, 1, Some(1))
}

/// The bivector of an entry, not yet verified, and its label base.
///
/// Entries whose printed form fails the Jacobi identity yield the
/// corrected form recorded with them; see [`printed_form`].
pub fn bivector(name: &str, params: &Params, n: Option<usize>) -> Result<(Bivector, usize)> {
    let e = entry(name)?;
    check_params(&e, params)?;
    let size = |min: usize| -> Result<usize> {
        let n = n.ok_or_else(|| Error::MissingParameter(String::from("n")))?;
        if n < min {
            return Err(Error::Constraint(format!("{} requires n >= {min}", e.name)));
        }
        Ok(n)
    };
    match e.family {
        Family::Omega { .. } => Ok((Bivector::from_omega(&stored_form(name, params)?)?, 1)),
        Family::P1 => {
            let v = |s: &str| Polynomial::parse(s, 3, 1).expect("static text");
            Ok((
                Bivector::from_entries(3, [(0, 1, v("X2")), (0, 2, v("2*X3"))])?,
                1,
            ))
        }
        Family::P2 => {
            let n = size(2)?;
            let entries = (1..n).map(|i| (0, i, Polynomial::var(n, i).scale(&integer(i as i64))));
            Ok((Bivector::from_entries(n, entries)?, 1))
        }
        Family::Rigid => {
            let n = size(2)?;
            Ok((Bivector::from_entries(n + 1, rigid_entries(n))?, 0))
        }
        Family::DeformedMu => {
            let n = size(2)?;
            let mut entries = rigid_entries(n);
            entries.extend(degree_one_cocycle_entries(n));
            Ok((Bivector::from_entries(n + 1, entries)?, 0))
        }
    }
}

/// `{X0,Xi} = i*Xi`, `{X1,Xi} = X(i+1)` for `2 <= i <= n-1`,
/// `{X2,Xi} = X(i+2)` for `3 <= i <= n-2`; slot `i` is `Xi`.
fn rigid_entries(n: usize) -> Vec<(usize, usize, Polynomial)> {
    let nv = n + 1;
    let x = |i: usize| Polynomial::var(nv, i);
    let mut out = Vec::new();
    for i in 1..=n {
        out.push((0, i, x(i).scale(&integer(i as i64))));
    }
    for i in 2..n {
        out.push((1, i, x(i + 1)));
    }
    for i in 3..n.saturating_sub(1) {
        out.push((2, i, x(i + 2)));
    }
    out
}

/// `phi(X2,Xi) = (4-i)*X(2+i)` for `5 <= i <= n-2` and
/// `phi(X3,Xi) = X(3+i)` for `4 <= i <= n-3` on `X0..Xn`.
fn degree_one_cocycle_entries(n: usize) -> Vec<(usize, usize, Polynomial)> {
    let nv = n + 1;
    let mut out = Vec::new();
    for i in 5..n.saturating_sub(1) {
        out.push((
            2,
            i,
            Polynomial::var(nv, 2 + i).scale(&integer(4 - i as i64)),
        ));
    }
    for i in 4..n.saturating_sub(2) {
        out.push((3, i, Polynomial::var(nv, 3 + i)));
    }
    out
}

/// The degree-1 2-cochain on the rigid algebra of size `n` spanning its
/// torus-invariant cohomology for `n >= 7`.
pub fn rigid_degree_one_cochain(n: usize) -> MultiDerivation {
    let b = Bivector::from_entries(n + 1, degree_one_cocycle_entries(n)).expect("valid slots");
    b.as_multiderivation().clone()
}

/// Slots `(X1, Xi)`, `2 <= i <= n-1`, cleared by the normalization of
/// rigid 2-cocycles.
pub fn rigid_normalized_slots(n: usize) -> Vec<IndexTuple> {
    (2..n)
        .map(|i| IndexTuple::new(alloc::vec![1, i]).expect("increasing"))
        .collect()
}

/// Looks up, instantiates and verifies an entry.
pub fn get(name: &str, params: &Params, n: Option<usize>) -> Result<PoissonStructure> {
    let (b, base) = bivector(name, params, n)?;
    PoissonStructure::verify_labeled(b, base)
}

/// Known values an entry is checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expected {
    /// Totals of `dim H^k` for `k = 0, 1, 2, 3`.
    CohomologyTotals([usize; 4]),
    /// `dim H^2` and `dim B^2` on degree-2 values, by `n`.
    P2 {
        h22: Vec<(usize, usize)>,
        b22: Vec<(usize, usize)>,
    },
    /// Torus-invariant `dim H^2` in degree 1 (for `n >= 7`) and degree 2.
    Rigid {
        h21_from_7: usize,
        h22: Vec<(usize, usize)>,
    },
    Integrable(bool),
    /// Lie for small `n`, non-Lie from `fails_from` on.
    DeformedMu {
        fails_from: usize,
    },
}

/// The closed form for `dim B^2` on degree-2 values of `P2(n)`.
pub fn p2_b22_formula(n: usize) -> usize {
    if n % 2 == 0 {
        n * (2 * n * n - 3 * n + 2) / 8
    } else {
        (n * n - 1) * (2 * n - 1) / 8
    }
}

pub fn expected(name: &str) -> Result<Expected> {
    let e = entry(name)?;
    Ok(match e.family {
        Family::P1 => Expected::CohomologyTotals([1, 3, 2, 0]),
        Family::P2 => Expected::P2 {
            h22: alloc::vec![(2, 1), (3, 3), (4, 8), (5, 16)],
            b22: (2..=8).map(|n| (n, p2_b22_formula(n))).collect(),
        },
        Family::Rigid => Expected::Rigid {
            h21_from_7: 1,
            h22: alloc::vec![(5, 2), (6, 0), (7, 0), (8, 0), (9, 0), (10, 0)],
        },
        Family::DeformedMu => Expected::DeformedMu { fails_from: 9 },
        Family::Omega { .. } => Expected::Integrable(true),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poisson::graded_integrability;
    use crate::poly::{p, rational};

    fn params(kv: &[(&str, Rational)]) -> Params {
        kv.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn p1_entries() {
        let s = get("P1", &Params::new(), None).unwrap();
        assert_eq!(s.bivector().entry(0, 1), p("X2", 3));
        assert_eq!(s.bivector().omega().to_text(1), "X2*dX3 - 2*X3*dX2");
    }

    #[test]
    fn p2_brackets() {
        let s = get("P2", &Params::new(), Some(5)).unwrap();
        assert_eq!(s.bivector().entry(0, 4), p("4*X5", 5));
        assert!(s.bivector().entry(1, 2).is_zero());
    }

    #[test]
    fn rigid_brackets() {
        let s = get("rigid", &Params::new(), Some(7)).unwrap();
        let b = s.bivector();
        let x = |i| Polynomial::var(8, i);
        assert_eq!(b.entry(0, 3), x(3).scale(&integer(3)));
        assert_eq!(b.entry(1, 6), x(7));
        assert_eq!(b.entry(2, 5), x(7));
        assert!(b.entry(1, 7).is_zero());
        assert!(b.entry(2, 6).is_zero());
    }

    #[test]
    fn deformed_mu_fails() {
        for n in 5..=8 {
            assert!(get("deformed-mu", &Params::new(), Some(n)).is_ok());
        }
        for n in 9..=12 {
            let err = get("deformed-mu", &Params::new(), Some(n)).unwrap_err();
            assert_eq!(
                err,
                Error::NotIntegrable {
                    triple: [2, 3, 4],
                    witness: String::from("3*X9")
                }
            );
        }
    }

    #[test]
    fn printed_errata() {
        let pr = params(&[
            ("a", integer(1)),
            ("b", integer(2)),
            ("c", integer(3)),
            ("e", integer(5)),
        ]);
        let form = printed_form("Omega2", &pr).unwrap();
        let printed = Bivector::from_omega(&form).unwrap();
        assert!(printed.jacobi_witness().is_some());
        assert!(get("Omega2", &pr, None).is_ok());
        let pa = params(&[("a", rational(2, 3))]);
        assert!(Bivector::from_omega(&printed_form("Omega4", &pa).unwrap())
            .unwrap()
            .jacobi_witness()
            .is_some());
        assert!(get("Omega4", &pa, None).is_ok());
    }

    #[test]
    fn constraints() {
        let bad = params(&[("a", integer(1)), ("alpha", integer(-1))]);
        assert!(matches!(
            get("Omega6", &bad, None),
            Err(Error::Constraint(_))
        ));
        assert!(matches!(
            get("Omega7", &params(&[("b", integer(1))]), None),
            Err(Error::MissingParameter(_))
        ));
        assert!(matches!(
            get("nope", &Params::new(), None),
            Err(Error::UnknownEntry(_))
        ));
        let ok = params(&[("a", integer(1)), ("alpha", rational(1, 2))]);
        let s = get("Omega6", &ok, None).unwrap();
        assert!(graded_integrability(s.bivector()).unwrap().all());
    }

    #[test]
    fn expectations() {
        assert_eq!(
            expected("P1").unwrap(),
            Expected::CohomologyTotals([1, 3, 2, 0])
        );
        assert_eq!(p2_b22_formula(4), 11);
        assert_eq!(p2_b22_formula(3), 5);
    }
}
