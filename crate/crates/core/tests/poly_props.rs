mod common;

use common::{random_poly, rng};
use num_integer::binomial;
use poisson_core::poly::{monomial_basis, Weight};
use poisson_core::{Polynomial, WeightVector};
use proptest::prelude::*;
use rand::Rng;

fn triple(seed: u64) -> (usize, [Polynomial; 3]) {
    let mut r = rng(seed);
    let n = r.gen_range(1..=4);
    let ps = [0; 3].map(|_| random_poly(&mut r, n, 4, 4));
    (n, ps)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let (_, [p, q, r]) = triple(seed);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) - &q, p);
    }

    #[test]
    fn partials_commute(seed in any::<u64>()) {
        let (n, [p, _, _]) = triple(seed);
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(p.partial(i).partial(j), p.partial(j).partial(i));
            }
        }
    }

    #[test]
    fn partial_leibniz(seed in any::<u64>()) {
        let (n, [p, q, _]) = triple(seed);
        for i in 0..n {
            prop_assert_eq!((&p * &q).partial(i), &(&p * &q.partial(i)) + &(&q * &p.partial(i)));
        }
    }

    #[test]
    fn weights_add(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let w = WeightVector::new((0..n).map(|_| r.gen_range(-2..=3)).collect());
        let pick = |r: &mut rand::rngs::StdRng| {
            let target = r.gen_range(-2..=6);
            let d = r.gen_range(0..=3);
            let basis = monomial_basis(n, d, Some((&w, target)));
            let mut p = Polynomial::zero(n);
            for m in basis.into_iter().take(3) {
                p.add_term(m, common::nonzero_rational(r));
            }
            p
        };
        let p = pick(&mut r);
        let q = pick(&mut r);
        match (p.weight(&w), q.weight(&w)) {
            (Weight::Homogeneous(a), Weight::Homogeneous(b)) => {
                prop_assert_eq!((&p * &q).weight(&w), Weight::Homogeneous(a + b));
            }
            (Weight::Zero, _) | (_, Weight::Zero) => prop_assert!((&p * &q).is_zero()),
            other => prop_assert!(false, "unexpected weights {:?}", other),
        }
    }

    #[test]
    fn parse_round_trip(seed in any::<u64>()) {
        let (n, [p, _, _]) = triple(seed);
        prop_assert_eq!(Polynomial::parse(&p.to_text(1), n, 1).unwrap(), p.clone());
        prop_assert_eq!(Polynomial::parse(&p.to_text(0), n, 0).unwrap(), p);
    }
}

#[test]
fn basis_sizes_and_order() {
    for n in 1..=5usize {
        for d in 0..=5u32 {
            let basis = monomial_basis(n, d, None);
            assert_eq!(
                basis.len() as u64,
                binomial((n + d as usize - 1) as u64, d as u64)
            );
            assert!(basis.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
