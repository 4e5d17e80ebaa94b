mod common;

use common::{random_form, random_poly, rng};
use poisson_core::{ExteriorForm, VectorField};
use proptest::prelude::*;
use rand::Rng;

fn pair(seed: u64) -> (usize, usize, usize, ExteriorForm, ExteriorForm) {
    let mut r = rng(seed);
    let n = r.gen_range(1..=5);
    let p = r.gen_range(0..=n.min(3));
    let q = r.gen_range(0..=n - p);
    let a = random_form(&mut r, n, p, 3);
    let b = random_form(&mut r, n, q, 3);
    (n, p, q, a, b)
}

fn field(r: &mut rand::rngs::StdRng, n: usize) -> VectorField {
    VectorField::new((0..n).map(|_| random_poly(r, n, 2, 2)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn d_squared_vanishes(seed in any::<u64>()) {
        let (_, _, _, a, _) = pair(seed);
        prop_assert!(a.d().d().is_zero());
    }

    #[test]
    fn graded_commutativity(seed in any::<u64>()) {
        let (_, p, q, a, b) = pair(seed);
        let ab = a.wedge(&b);
        let ba = b.wedge(&a);
        if p * q % 2 == 0 {
            prop_assert_eq!(ab, ba);
        } else {
            prop_assert_eq!(ab, -&ba);
        }
    }

    #[test]
    fn graded_leibniz(seed in any::<u64>()) {
        let (_, p, _, a, b) = pair(seed);
        let lhs = a.wedge(&b).d();
        let second = a.wedge(&b.d());
        let rhs = if p % 2 == 0 {
            &a.d().wedge(&b) + &second
        } else {
            &a.d().wedge(&b) - &second
        };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_squared_vanishes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=5);
        let p = r.gen_range(2..=n);
        let a = random_form(&mut r, n, p, 2);
        let y = field(&mut r, n);
        prop_assert!(a.interior(&y).unwrap().interior(&y).unwrap().is_zero());
    }

    #[test]
    fn evaluation_alternates(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=4);
        let p = r.gen_range(2..=n);
        let a = random_form(&mut r, n, p, 1);
        let mut ys: Vec<VectorField> = (0..p).map(|_| field(&mut r, n)).collect();
        let before = a.evaluate(&ys).unwrap();
        let i = r.gen_range(0..p);
        let j = (i + 1 + r.gen_range(0..p - 1)) % p;
        ys.swap(i, j);
        prop_assert_eq!(a.evaluate(&ys).unwrap(), -&before);
    }

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let (n, p, _, a, _) = pair(seed);
        prop_assert_eq!(ExteriorForm::parse(&a.to_text(1), n, 1, Some(p)).unwrap(), a);
    }
}
