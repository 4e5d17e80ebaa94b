//! Poisson structures: verification, the bracket, graded integrability of
//! degree-2 structures in three variables, and order-2 equivalences.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::exterior::ExteriorForm;
use crate::linalg;
use crate::multivector::Bivector;
use crate::poly::{Polynomial, Rational};
use crate::{Error, Result};

/// A bivector together with the outcome of its integrability check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    bivector: Bivector,
    base: usize,
    verified: bool,
}

impl PoissonStructure {
    /// Checks `[P, P] = 0` with variables labelled from 1.
    pub fn verify(bivector: Bivector) -> Result<Self> {
        Self::verify_labeled(bivector, 1)
    }

    /// Runs the Jacobi trisum and, for three or more variables, the form
    /// criterion. Disagreement between them is reported as
    /// [`Error::CriteriaDisagree`]. `base` is the label of slot 0 and is
    /// only used for messages and output.
    pub fn verify_labeled(bivector: Bivector, base: usize) -> Result<Self> {
        let witness = bivector.jacobi_witness();
        if bivector.nvars() >= 3 {
            let by_forms = bivector.integrability_via_forms()?;
            if by_forms != witness.is_none() {
                return Err(Error::CriteriaDisagree);
            }
        }
        if let Some((t, p)) = witness {
            return Err(Error::NotIntegrable {
                triple: [t[0] + base, t[1] + base, t[2] + base],
                witness: p.to_text(base),
            });
        }
        Ok(PoissonStructure {
            bivector,
            base,
            verified: true,
        })
    }

    /// Wraps a bivector without checking it. Such a structure refuses to
    /// compute brackets but can still be fed to cocycle tests.
    pub fn unverified(bivector: Bivector, base: usize) -> Self {
        PoissonStructure {
            bivector,
            base,
            verified: false,
        }
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn bivector(&self) -> &Bivector {
        &self.bivector
    }

    pub fn nvars(&self) -> usize {
        self.bivector.nvars()
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn bracket(&self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
        if !self.verified {
            return Err(Error::Unverified);
        }
        self.bivector.bracket(p, q)
    }
}

/// Outcome of the four equations obtained by splitting `Omega ^ dOmega = 0`
/// along the coefficient degree of `Omega = Omega0 + Omega1 + Omega2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedReport {
    /// `Omega2 ^ dOmega2 = 0`
    pub top: bool,
    /// `Omega0 ^ dOmega1 + Omega1 ^ dOmega0 = 0`
    pub degree0: bool,
    /// `Omega0 ^ dOmega2 + Omega2 ^ dOmega0 + Omega1 ^ dOmega1 = 0`
    pub degree1: bool,
    /// `Omega1 ^ dOmega2 + Omega2 ^ dOmega1 = 0`
    pub degree2: bool,
}

impl GradedReport {
    pub fn all(&self) -> bool {
        self.top && self.degree0 && self.degree1 && self.degree2
    }

    pub fn equations(&self) -> [(&'static str, bool); 4] {
        [
            ("O2^dO2 = 0", self.top),
            ("O0^dO1 + O1^dO0 = 0", self.degree0),
            ("O0^dO2 + O2^dO0 + O1^dO1 = 0", self.degree1),
            ("O1^dO2 + O2^dO1 = 0", self.degree2),
        ]
    }
}

/// Splits the integrability of a three-variable bivector with entries of
/// degree at most 2 into its graded pieces.
pub fn graded_integrability(p: &Bivector) -> Result<GradedReport> {
    if p.nvars() != 3 {
        return Err(Error::UnsupportedDimension {
            what: "graded integrability",
            nvars: p.nvars(),
        });
    }
    if let Some(d) = p.max_degree().filter(|&d| d > 2) {
        return Err(Error::DegreeTooHigh(d as usize));
    }
    let omega = p.omega();
    let parts: Vec<ExteriorForm> = (0..3).map(|d| omega.coefficient_component(d)).collect();
    let ds: Vec<ExteriorForm> = parts.iter().map(ExteriorForm::d).collect();
    let w = |a: usize, b: usize| parts[a].wedge(&ds[b]);
    Ok(GradedReport {
        top: w(2, 2).is_zero(),
        degree0: (&w(0, 1) + &w(1, 0)).is_zero(),
        degree1: (&(&w(0, 2) + &w(2, 0)) + &w(1, 1)).is_zero(),
        degree2: (&w(1, 2) + &w(2, 1)).is_zero(),
    })
}

/// A linear bijection of the polynomial space with
/// `f(X_i) = sum_j a_ij X_j + Q_i`, `Q_i` quadratic, acting as the identity
/// on constants and on every monomial of degree at least 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order2Equivalence {
    linear: Vec<Vec<Rational>>,
    quad: Vec<Polynomial>,
}

impl Order2Equivalence {
    pub fn new(linear: Vec<Vec<Rational>>, quad: Vec<Polynomial>) -> Result<Self> {
        let n = linear.len();
        if linear.iter().any(|r| r.len() != n) || quad.len() != n {
            return Err(Error::Constraint(format!(
                "equivalence needs an {n}x{n} linear part and {n} quadratic parts"
            )));
        }
        for q in &quad {
            if q.nvars() != n {
                return Err(Error::VariableCountMismatch {
                    left: n,
                    right: q.nvars(),
                });
            }
            if !q.is_zero() && !(q.is_homogeneous() && q.total_degree() == Some(2)) {
                return Err(Error::NotHomogeneous);
            }
        }
        if linalg::invert(&linear).is_none() {
            return Err(Error::SingularLinearPart);
        }
        Ok(Order2Equivalence { linear, quad })
    }

    pub fn identity(n: usize) -> Self {
        Order2Equivalence {
            linear: identity_matrix(n),
            quad: (0..n).map(|_| Polynomial::zero(n)).collect(),
        }
    }

    /// `Y_i = X_i + Q_i`, identity linear part.
    pub fn shear(quad: Vec<Polynomial>) -> Result<Self> {
        let n = quad.len();
        Self::new(identity_matrix(n), quad)
    }

    pub fn nvars(&self) -> usize {
        self.linear.len()
    }

    pub fn linear(&self) -> &[Vec<Rational>] {
        &self.linear
    }

    pub fn quad(&self) -> &[Polynomial] {
        &self.quad
    }

    pub fn image_of_variable(&self, i: usize) -> Polynomial {
        let n = self.nvars();
        let mut out = self.quad[i].clone();
        for (j, a) in self.linear[i].iter().enumerate() {
            out.add_scaled(&Polynomial::var(n, j), a);
        }
        out
    }

    /// `f(g)`.
    pub fn apply(&self, g: &Polynomial) -> Polynomial {
        let n = self.nvars();
        let mut out = Polynomial::zero(n);
        for (m, c) in g.terms() {
            if m.degree() == 1 {
                let i = (0..n).find(|&i| m.contains(i)).expect("linear monomial");
                out.add_scaled(&self.image_of_variable(i), c);
            } else {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// `f^{-1}(g)`: invert the linear block, then remove the quadratic
    /// image of the recovered linear part.
    pub fn apply_inverse(&self, g: &Polynomial) -> Polynomial {
        let n = self.nvars();
        let c: Vec<Rational> = (0..n)
            .map(|j| g.coefficient(&crate::poly::Monomial::var(n, j)))
            .collect();
        // u solves A^T u = c
        let inv = linalg::invert(&self.linear).expect("checked at construction");
        let u: Vec<Rational> = (0..n)
            .map(|i| (0..n).fold(Rational::zero(), |acc, j| acc + &inv[j][i] * &c[j]))
            .collect();
        let mut out = Polynomial::zero(n);
        for (m, coeff) in g.terms() {
            if m.degree() != 1 {
                out.add_term(m.clone(), coeff.clone());
            }
        }
        for (i, ui) in u.iter().enumerate() {
            out.add_term(crate::poly::Monomial::var(n, i), ui.clone());
            out.add_scaled(&self.quad[i], &-ui.clone());
        }
        out
    }

    /// `self o other`.
    pub fn compose(&self, other: &Order2Equivalence) -> Order2Equivalence {
        let n = self.nvars();
        assert_eq!(n, other.nvars());
        let linear = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| {
                        (0..n).fold(Rational::zero(), |acc, j| {
                            acc + &other.linear[i][j] * &self.linear[j][k]
                        })
                    })
                    .collect()
            })
            .collect();
        let quad = (0..n)
            .map(|i| {
                let mut q = other.quad[i].clone();
                for j in 0..n {
                    q.add_scaled(&self.quad[j], &other.linear[i][j]);
                }
                q
            })
            .collect();
        Order2Equivalence { linear, quad }
    }

    pub fn inverse(&self) -> Order2Equivalence {
        let n = self.nvars();
        let inv = linalg::invert(&self.linear).expect("checked at construction");
        let quad = (0..n)
            .map(|i| {
                let mut q = Polynomial::zero(n);
                for j in 0..n {
                    q.add_scaled(&self.quad[j], &-inv[i][j].clone());
                }
                q
            })
            .collect();
        Order2Equivalence { linear: inv, quad }
    }
}

fn identity_matrix(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// The structure `{Y_i, Y_j} = f^{-1}({f(X_i), f(X_j)})`.
///
/// For a linear input the linear part of `f` must be a Lie automorphism.
/// Entries of the result above degree 2 are reported as
/// [`Error::DegreeTooHigh`]; the result is re-verified.
pub fn apply_equivalence(s: &PoissonStructure, f: &Order2Equivalence) -> Result<PoissonStructure> {
    let n = s.nvars();
    if f.nvars() != n {
        return Err(Error::VariableCountMismatch {
            left: n,
            right: f.nvars(),
        });
    }
    let b = s.bivector();
    if let Some(d) = b.max_degree().filter(|&d| d > 2) {
        return Err(Error::DegreeTooHigh(d as usize));
    }
    if b.homogeneous_degree() == Ok(Some(1)) && !linear_part_is_automorphism(b, f) {
        return Err(Error::NotLieAutomorphism);
    }
    let images: Vec<Polynomial> = (0..n).map(|i| f.image_of_variable(i)).collect();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let v = f.apply_inverse(&b.bracket(&images[i], &images[j])?);
            if let Some(d) = v.total_degree().filter(|&d| d > 2) {
                return Err(Error::DegreeTooHigh(d as usize));
            }
            entries.push((i, j, v));
        }
    }
    PoissonStructure::verify_labeled(Bivector::from_entries(n, entries)?, s.base())
}

/// Whether `L(X_i) = sum_j a_ij X_j` satisfies `L{X_i, X_j} = {L X_i, L X_j}`
/// for a linear bivector.
fn linear_part_is_automorphism(b: &Bivector, f: &Order2Equivalence) -> bool {
    let n = b.nvars();
    let lin = Order2Equivalence {
        linear: f.linear.clone(),
        quad: (0..n).map(|_| Polynomial::zero(n)).collect(),
    };
    let l: Vec<Polynomial> = (0..n).map(|i| lin.image_of_variable(i)).collect();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let lhs = lin.apply(&b.entry(i, j));
            let rhs = b.bracket(&l[i], &l[j]).expect("arity 2");
            lhs == rhs
        })
    })
}
