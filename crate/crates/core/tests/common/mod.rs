#![allow(dead_code)]

use poisson_core::catalog::{self, Params};
use poisson_core::cohomology::{GradedSlice, SliceFilter};
use poisson_core::poly::{integer, rational};
use poisson_core::{
    Bivector, ExteriorForm, IndexTuple, Monomial, MultiDerivation, Polynomial, Rational,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn small_rational(rng: &mut StdRng) -> Rational {
    let num = rng.gen_range(-6i64..=6);
    let den = *[1i64, 1, 1, 2, 3].get(rng.gen_range(0..5)).unwrap();
    rational(num, den)
}

pub fn nonzero_rational(rng: &mut StdRng) -> Rational {
    loop {
        let v = small_rational(rng);
        if v != integer(0) {
            return v;
        }
    }
}

/// A polynomial with up to `terms` random terms of degree `<= max_degree`.
pub fn random_poly(rng: &mut StdRng, n: usize, max_degree: u32, terms: usize) -> Polynomial {
    let mut p = Polynomial::zero(n);
    for _ in 0..rng.gen_range(0..=terms) {
        let d = rng.gen_range(0..=max_degree);
        let mut exps = vec![0u32; n];
        for _ in 0..d {
            exps[rng.gen_range(0..n)] += 1;
        }
        p.add_term(Monomial::from_exponents(exps), nonzero_rational(rng));
    }
    p
}

/// A random element of the `(k, d)` slice with a few nonzero coordinates.
pub fn random_cochain(
    rng: &mut StdRng,
    n: usize,
    k: usize,
    d: u32,
    nonzero: usize,
) -> MultiDerivation {
    let slice = GradedSlice::new(n, k, d, &SliceFilter::none());
    let mut coords = vec![integer(0); slice.dim()];
    if slice.dim() > 0 {
        for _ in 0..nonzero {
            coords[rng.gen_range(0..slice.dim())] = nonzero_rational(rng);
        }
    }
    slice.cochain(&coords)
}

/// Random admissible parameters for a catalog entry.
pub fn random_params(rng: &mut StdRng, name: &str) -> Params {
    let entry = catalog::entry(name).unwrap();
    entry
        .params
        .iter()
        .map(|spec| {
            let v = loop {
                let v = small_rational(rng);
                if spec.constraint.admits(&v) {
                    break v;
                }
            };
            (spec.name.to_string(), v)
        })
        .collect()
}

pub fn random_form(rng: &mut StdRng, n: usize, p: usize, coeff_degree: u32) -> ExteriorForm {
    let tuples = IndexTuple::all(n, p);
    let terms: Vec<_> = (0..rng.gen_range(0..=3))
        .map(|_| {
            let t = tuples[rng.gen_range(0..tuples.len())].clone();
            (t, random_poly(rng, n, coeff_degree, 2))
        })
        .collect();
    ExteriorForm::from_terms(n, p, terms)
}

pub fn random_bivector(rng: &mut StdRng, n: usize, max_degree: u32, terms: usize) -> Bivector {
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            entries.push((i, j, random_poly(rng, n, max_degree, terms)));
        }
    }
    Bivector::from_entries(n, entries).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
