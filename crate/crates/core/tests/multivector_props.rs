mod common;

use common::{random_bivector, random_cochain, random_poly, rng};
use poisson_core::{IndexTuple, MultiDerivation, Polynomial};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn phi_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=5);
        let k = r.gen_range(0..=n);
        let d = r.gen_range(0..=2);
        let phi = random_cochain(&mut r, n, k, d, 4);
        prop_assert_eq!(MultiDerivation::phi_inverse(&phi.phi_map()), phi);
    }

    #[test]
    fn evaluate_on_coordinates(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=5);
        let k = r.gen_range(1..=n);
        let d = r.gen_range(0..=2);
        let phi = random_cochain(&mut r, n, k, d, 5);
        for t in IndexTuple::all(n, k) {
            let args: Vec<Polynomial> = t.slots().iter().map(|&s| Polynomial::var(n, s)).collect();
            prop_assert_eq!(phi.evaluate(&args).unwrap(), phi.value(&t));
        }
    }

    #[test]
    fn evaluate_alternates_and_derives(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4);
        let k = r.gen_range(1..=n);
        let d = r.gen_range(0..=2);
        let phi = random_cochain(&mut r, n, k, d, 4);
        let mut args: Vec<Polynomial> = (0..k).map(|_| random_poly(&mut r, n, 2, 3)).collect();
        let base = phi.evaluate(&args).unwrap();
        if k >= 2 {
            let mut swapped = args.clone();
            swapped.swap(0, k - 1);
            prop_assert_eq!(phi.evaluate(&swapped).unwrap(), -&base);
        }
        // Leibniz in the first slot
        let p = random_poly(&mut r, n, 2, 3);
        let q = args[0].clone();
        args[0] = &p * &q;
        let lhs = phi.evaluate(&args).unwrap();
        args[0] = q.clone();
        let with_q = phi.evaluate(&args).unwrap();
        args[0] = p.clone();
        let with_p = phi.evaluate(&args).unwrap();
        prop_assert_eq!(lhs, &(&p * &with_q) + &(&q * &with_p));
    }

    #[test]
    fn integrability_criteria_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(3..=5);
        let b = random_bivector(&mut r, n, 2, 1);
        let via_sums = b.jacobi_trisum().iter().all(|(_, p)| p.is_zero());
        prop_assert_eq!(b.integrability_via_forms().unwrap(), via_sums);
    }

    #[test]
    fn omega_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=5);
        let b = random_bivector(&mut r, n, 2, 2);
        prop_assert_eq!(poisson_core::Bivector::from_omega(&b.omega()).unwrap(), b);
    }
}

#[test]
fn integrable_samples_agree() {
    // random bivectors are rarely Poisson; check the positive side on
    // structures that are, including wedges of commuting fields
    let mut r = rng(11);
    for _ in 0..50 {
        let n = r.gen_range(3..=5);
        let f = random_poly(&mut r, n, 2, 2);
        let i = r.gen_range(0..n);
        let j = (i + 1 + r.gen_range(0..n - 1)) % n;
        let (i, j) = (i.min(j), i.max(j));
        let b = poisson_core::Bivector::from_entries(n, [(i, j, f)]).unwrap();
        let ok = b.jacobi_trisum().iter().all(|(_, p)| p.is_zero());
        assert_eq!(b.integrability_via_forms().unwrap(), ok);
    }
}
