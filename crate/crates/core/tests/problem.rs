mod common;

use common::*;
use proptest::prelude::*;
use tstein_core::kernel::eigenvalues;
use tstein_core::{check_solvability, generate_problem, DenseMatrix, Profile, TsteinError};

fn spectral_radius(m: &DenseMatrix) -> f64 {
    eigenvalues(m).unwrap().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn scalar_minus_one_case() {
    for seed in [0, 1, 99] {
        let p = generate_problem(1, seed, Profile::MinusOneSimple).unwrap();
        assert_eq!((p.a, p.b), (scalar(-1.0), scalar(1.0)));
    }
}

#[test]
fn empty_order_is_rejected() {
    assert!(matches!(generate_problem(0, 1, Profile::Contractive), Err(TsteinError::Empty)));
}

#[test]
fn contractive_radius() {
    for seed in 0..10 {
        let p = generate_problem(4, seed, Profile::Contractive).unwrap();
        assert!(spectral_radius(&(&p.a * &p.b.transpose())) <= 0.5 * (1.0 + 1e-12));
    }
}

#[test]
fn near_singular_margin() {
    for n in 1..=6 {
        let p = generate_problem(n, 5, Profile::NearSingular).unwrap();
        let r = check_solvability(&p.a, &p.b).unwrap();
        assert!(r.uniquely_solvable);
        assert!((r.margin - 1e-6).abs() <= 1e-9, "n={n}: {:e}", r.margin);
    }
}

#[test]
fn profile_names_round_trip() {
    for p in Profile::ALL {
        assert_eq!(p.name().parse::<Profile>().unwrap(), p);
    }
    assert_eq!("wellSeparated".parse::<Profile>().unwrap(), Profile::WellSeparated);
    assert_eq!("minus_one_simple".parse::<Profile>().unwrap(), Profile::MinusOneSimple);
    assert!("bogus".parse::<Profile>().is_err());
}

proptest! {
    #![proptest_config(cases(64))]

    #[test]
    fn generation_is_deterministic(n in 1usize..=6, seed in any::<u64>(), k in 0usize..4) {
        let profile = Profile::ALL[k];
        let x = generate_problem(n, seed, profile).unwrap();
        let y = generate_problem(n, seed, profile).unwrap();
        prop_assert_eq!((&x.a, &x.b, &x.c), (&y.a, &y.b, &y.c));
        prop_assert_eq!(&x.name, &y.name);
        prop_assert_eq!(x.n(), n);
        prop_assert_eq!(x.c.shape(), (n, n));
    }

    #[test]
    fn planted_profiles_have_expected_verdicts(n in 1usize..=6, seed in any::<u64>()) {
        for profile in [Profile::WellSeparated, Profile::NearSingular, Profile::MinusOneSimple] {
            let p = generate_problem(n, seed, profile).unwrap();
            let r = check_solvability(&p.a, &p.b).unwrap();
            prop_assert!(r.uniquely_solvable, "{} n={}", profile, n);
            let expected = usize::from(profile == Profile::MinusOneSimple);
            prop_assert_eq!(r.minus_one_multiplicity, expected);
        }
    }
}
