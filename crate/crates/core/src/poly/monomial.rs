use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// A monomial `X^e` stored as its exponent vector.
///
/// The ordering is graded lexicographic with the first variable largest, so
/// `X1 > X2 > ... > Xn` and every degree-`d` monomial is below every
/// degree-`d+1` monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    /// The monomial `X_i` (0-based slot).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.exps[i] > 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Divides out one factor of `X_i`, returning the old exponent.
    pub(crate) fn lower(&self, i: usize) -> Option<(u32, Monomial)> {
        let e = self.exps[i];
        if e == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some((e, Monomial { exps }))
    }

    pub fn weight(&self, w: &WeightVector) -> i64 {
        self.exps
            .iter()
            .zip(w.weights())
            .map(|(&e, &wi)| i64::from(e) * wi)
            .sum()
    }

    pub(crate) fn fmt_with_base(&self, f: &mut fmt::Formatter<'_>, base: usize) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "X{}", i + base)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integer weights of the variables; monomial weights are additive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    weights: Vec<i64>,
}

impl WeightVector {
    pub fn new(weights: Vec<i64>) -> Self {
        WeightVector { weights }
    }

    /// Weights `offset, offset + 1, ...` for `nvars` variables.
    pub fn sequential(nvars: usize, offset: i64) -> Self {
        WeightVector {
            weights: (0..nvars as i64).map(|i| i + offset).collect(),
        }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn of(&self, i: usize) -> i64 {
        self.weights[i]
    }
}

/// All monomials of total degree `degree` in `nvars` variables, in
/// increasing graded-lex order. With `weight = Some((w, target))` only
/// monomials of weight exactly `target` are kept.
pub fn monomial_basis(
    nvars: usize,
    degree: u32,
    weight: Option<(&WeightVector, i64)>,
) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    compositions(&mut exps, 0, degree, &mut |e| {
        let m = Monomial::from_exponents(e.to_vec());
        match weight {
            Some((w, target)) if m.weight(w) != target => {}
            _ => out.push(m),
        }
    });
    out.sort();
    out
}

fn compositions(exps: &mut [u32], at: usize, remaining: u32, emit: &mut impl FnMut(&[u32])) {
    if exps.is_empty() {
        if remaining == 0 {
            emit(exps);
        }
        return;
    }
    if at + 1 == exps.len() {
        exps[at] = remaining;
        emit(exps);
        exps[at] = 0;
        return;
    }
    for e in 0..=remaining {
        exps[at] = e;
        compositions(exps, at + 1, remaining - e, emit);
    }
    exps[at] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
    }

    #[test]
    fn grlex_puts_first_variable_highest() {
        assert!(Monomial::var(3, 0) > Monomial::var(3, 1));
        assert!(Monomial::var(3, 2) > Monomial::one(3));
        let x3sq = Monomial::from_exponents(vec![0, 0, 2]);
        assert!(x3sq > Monomial::var(3, 0));
    }

    #[test]
    fn basis_counts() {
        assert_eq!(monomial_basis(3, 2, None).len(), 6);
        assert_eq!(monomial_basis(2, 0, None), vec![Monomial::one(2)]);
        for n in 1..6u64 {
            for d in 0..5u64 {
                let b = monomial_basis(n as usize, d as u32, None);
                assert_eq!(b.len() as u64, binom(n + d - 1, d));
                assert!(b.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn weighted_basis_matches_enumeration() {
        // Oracle: filter the full degree-2 list by hand-computed weights.
        let w = WeightVector::new(vec![1, 2, 3]);
        let got = monomial_basis(3, 2, Some((&w, 4)));
        let expected = vec![
            Monomial::from_exponents(vec![0, 2, 0]),
            Monomial::from_exponents(vec![1, 0, 1]),
        ];
        assert_eq!(got, expected);
    }
}
