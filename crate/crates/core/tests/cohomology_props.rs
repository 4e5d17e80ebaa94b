mod common;

use common::{random_cochain, random_params, random_poly, rng};
use poisson_core::catalog::{self, Params};
use poisson_core::cohomology::{
    cocycle_representatives, delta, delta_matrix, delta_via_forms, slice_dims, GradedSlice,
    SliceFilter,
};
use poisson_core::poly::Weight;
use poisson_core::{Bivector, PoissonStructure, WeightVector};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

fn structure(r: &mut StdRng) -> PoissonStructure {
    let names = [
        "P1", "P2", "rigid", "L1", "L2", "L3", "L4", "Affine1", "Affine2", "Affine3", "Omega1",
        "Omega3", "Omega5", "Omega6", "Omega8", "Omega9", "Omega11",
    ];
    let name = names[r.gen_range(0..names.len())];
    let n = match name {
        "P2" => Some(r.gen_range(2..=5)),
        "rigid" => Some(r.gen_range(3..=4)),
        _ => None,
    };
    catalog::get(name, &random_params(r, name), n).unwrap()
}

/// `f d_i ^ d_j` is Poisson for every `f`.
fn homogeneous_structure(r: &mut StdRng) -> PoissonStructure {
    if r.gen_bool(0.5) {
        let n = r.gen_range(3..=5);
        let i = r.gen_range(0..n - 1);
        let j = r.gen_range(i + 1..n);
        let f = random_poly(r, n, 2, 3).homogeneous_component(2);
        let f = if f.is_zero() {
            poisson_core::Polynomial::var(n, i) * poisson_core::Polynomial::var(n, j)
        } else {
            f
        };
        PoissonStructure::verify(Bivector::from_entries(n, [(i, j, f)]).unwrap()).unwrap()
    } else {
        let name = ["P1", "L1", "L2", "L4"][r.gen_range(0..4)];
        catalog::get(name, &Params::new(), None).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn delta_squared_vanishes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = structure(&mut r);
        let n = s.nvars();
        let k = r.gen_range(0..=n.min(3));
        let d = r.gen_range(0..=3);
        let phi = random_cochain(&mut r, n, k, d, 3);
        let once = delta(&s, &phi).unwrap();
        prop_assert!(delta(&s, &once).unwrap().is_zero());
    }

    #[test]
    fn forms_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = structure(&mut r);
        let n = s.nvars();
        prop_assume!(n >= 3);
        let k = r.gen_range(0..=n.min(3));
        let d = r.gen_range(0..=3);
        let phi = random_cochain(&mut r, n, k, d, 3);
        prop_assert_eq!(delta_via_forms(&s, &phi).unwrap(), delta(&s, &phi).unwrap());
    }

    #[test]
    fn degree_shift(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = homogeneous_structure(&mut r);
        let rdeg = s.bivector().homogeneous_degree().unwrap().unwrap();
        let n = s.nvars();
        let k = r.gen_range(0..n);
        let d = r.gen_range(0..=3);
        let out = delta(&s, &random_cochain(&mut r, n, k, d, 3)).unwrap();
        if !out.is_zero() {
            prop_assert_eq!(out.homogeneous_degree().unwrap(), Some(d + rdeg - 1));
        }
    }

    #[test]
    fn rank_nullity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = homogeneous_structure(&mut r);
        let n = s.nvars();
        let k = r.gen_range(0..=n.min(3));
        let d = r.gen_range(0..=2);
        let m = delta_matrix(&s, &GradedSlice::new(n, k, d, &SliceFilter::none())).unwrap();
        prop_assert_eq!(m.rank() + m.matrix.kernel().len(), m.source.dim());
        let dims = slice_dims(&s, k, d, &SliceFilter::none()).unwrap();
        prop_assert_eq!(dims.dim_z + m.rank(), dims.dim_chi);
        prop_assert!(dims.dim_b <= dims.dim_z);
    }
}

fn rigid_filter(n: usize) -> SliceFilter {
    SliceFilter::torus_relative(WeightVector::sequential(n + 1, 0), 0)
}

#[test]
fn invariant_subcomplex_is_closed() {
    for n in 4..=7 {
        let s = catalog::get("rigid", &Params::new(), Some(n)).unwrap();
        for k in 0..=3 {
            for d in 0..=2 {
                let src = GradedSlice::new(n + 1, k, d, &rigid_filter(n));
                assert!(delta_matrix(&s, &src).is_ok(), "n={n} k={k} d={d}");
            }
        }
    }
}

#[test]
fn invariant_cocycles_have_additive_weights() {
    for n in 5..=8 {
        let s = catalog::get("rigid", &Params::new(), Some(n)).unwrap();
        let w = WeightVector::sequential(n + 1, 0);
        for d in 1..=2 {
            for phi in cocycle_representatives(&s, 2, d, &rigid_filter(n)).unwrap() {
                for (t, v) in phi.values() {
                    let expected = (t.slots()[0] + t.slots()[1]) as i64;
                    assert_eq!(v.weight(&w), Weight::Homogeneous(expected));
                }
                let top = phi.value_at(&[1, n]);
                assert!(matches!(
                    top.weight(&w),
                    Weight::Zero | Weight::Homogeneous(_)
                ));
                if !top.is_zero() {
                    assert_eq!(top.weight(&w), Weight::Homogeneous(n as i64 + 1));
                }
            }
        }
    }
}
