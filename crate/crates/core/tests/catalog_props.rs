mod common;

use common::{random_params, rng};
use poisson_core::catalog::{self, Family, Params};
use poisson_core::poisson::graded_integrability;
use poisson_core::{Bivector, Error};

#[test]
fn entries_verify_on_random_parameters() {
    let mut r = rng(21);
    for e in catalog::entries() {
        if e.family == Family::DeformedMu {
            continue;
        }
        let sizes: Vec<Option<usize>> = if e.sized {
            (3..=8).map(Some).collect()
        } else {
            vec![None]
        };
        for n in sizes {
            for _ in 0..20 {
                let params = random_params(&mut r, e.name);
                let s = catalog::get(e.name, &params, n)
                    .unwrap_or_else(|err| panic!("{} {params:?}: {err}", e.name));
                if e.is_degree_at_most_two() {
                    assert!(
                        graded_integrability(s.bivector()).unwrap().all(),
                        "{}",
                        e.name
                    );
                }
            }
        }
    }
}

#[test]
fn omega_round_trips_to_stored_text() {
    let mut r = rng(22);
    for e in catalog::entries() {
        let Family::Omega { corrected, .. } = e.family else {
            continue;
        };
        let params = random_params(&mut r, e.name);
        let (b, _) = catalog::bivector(e.name, &params, None).unwrap();
        let form = catalog::stored_form(e.name, &params).unwrap();
        assert_eq!(b.omega(), form, "{}", e.name);
        if corrected.is_none() {
            assert_eq!(catalog::printed_form(e.name, &params).unwrap(), form);
        }
        assert_eq!(Bivector::from_omega(&form).unwrap(), b);
    }
}

#[test]
fn deformed_mu_threshold() {
    for n in 3..=8 {
        assert!(catalog::get("deformed-mu", &Params::new(), Some(n)).is_ok());
    }
    for n in 9..=11 {
        assert!(matches!(
            catalog::get("deformed-mu", &Params::new(), Some(n)),
            Err(Error::NotIntegrable { .. })
        ));
    }
}

#[test]
fn listing_is_complete() {
    let names: Vec<&str> = catalog::entries().iter().map(|e| e.name).collect();
    for want in [
        "P1",
        "P2",
        "rigid",
        "deformed-mu",
        "L1",
        "L4",
        "Affine3",
        "Omega1",
        "Omega11",
    ] {
        assert!(names.contains(&want), "{want}");
    }
    assert_eq!(names.iter().filter(|n| n.starts_with("Omega")).count(), 11);
}
