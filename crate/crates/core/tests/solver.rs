use einstein_sp::algebra::rational::{frac, int};
use einstein_sp::geometry::FibrationSpec;
use einstein_sp::groebner::Budget;
use einstein_sp::interval::Interval;
use einstein_sp::solver::*;
use einstein_sp::Error;

#[test]
fn flag_4_3() {
    let spec = FibrationSpec::Flag { n: 4, p: 3 };
    let r = solve_einstein(&spec, &SolveOptions::default()).unwrap();
    assert!(r.uncertified.is_empty(), "{:?}", r.uncertified);
    let new: Vec<f64> = r.solutions.iter().filter(|s| s.class == Class::New).map(|s| s.approx()[1]).collect();
    assert_eq!(new.len(), 2);
    assert!(new.iter().any(|&u| u < 0.2) && new.iter().any(|&u| u > 0.2 && u < 1.0));
    let sys = assemble_system(&spec).unwrap();
    for s in &r.solutions {
        assert!(s.residual_bound < frac(1, 1_000_000_000));
        for res in system_residuals(&sys, s).unwrap() {
            assert!(res.contains_zero());
        }
        // Certified boxes are nested inside the requested width.
        for (_, iv) in &s.coords {
            assert!(iv.width() <= frac(1, 1_000_000_000_000));
        }
    }
}

#[test]
fn generic_eliminant_has_expected_degree() {
    let (e, stats) = branch_eliminant(&FibrationSpec::Flag { n: 3, p: 2 }, Branch::Generic, None, &Budget::default()).unwrap();
    assert_eq!(e.var(), "u1");
    assert_eq!(e.degree(), 8);
    assert!(stats.route.starts_with("modular") || stats.route == "fraction-free");
}

#[test]
fn certification_of_the_all_ones_metric_fails() {
    let spec = FibrationSpec::Wallach { k1: 1, k2: 1, k3: 1 };
    let ones = vec![Interval::point(int(1)); 5];
    let (bound, lambda) = certify(&spec, &ones).unwrap();
    assert!(bound >= frac(3, 32));
    assert!(lambda.is_none());
}

#[test]
fn classification_examples() {
    let w = FibrationSpec::Wallach { k1: 1, k2: 1, k3: 1 };
    assert_eq!(classify(&w, &[0.472797, 0.472797, 0.472797, 1.0, 1.0], 1e-5), Class::Jensen);
    assert_eq!(classify(&w, &[0.344889, 0.344889, 0.80019, 1.0, 1.0], 1e-5), Class::Adn);
    assert_eq!(classify(&w, &[0.276281, 0.251267, 0.460887, 0.568723, 1.0], 1e-5), Class::New);
    let f = FibrationSpec::Flag { n: 3, p: 2 };
    assert_eq!(classify(&f, &[0.5, 1.0, 0.7, 1.0], 1e-8), Class::Jensen);
}

#[test]
fn swap_is_an_involution() {
    let x = [0.276282, 0.251267, 0.460887, 0.568723, 1.0];
    let back = swap_renormalized(&swap_renormalized(&x));
    assert!(x.iter().zip(&back).all(|(a, b)| (a - b).abs() < 1e-12));
}

#[test]
fn census_families() {
    let f = CensusFamily::parse("n-2,1,1").unwrap();
    assert_eq!(f.spec(3), Some(FibrationSpec::Wallach { k1: 1, k2: 1, k3: 1 }));
    assert_eq!(f.conjectured(10), Some((2, 8)));
    assert!(matches!(CensusFamily::parse("n-4,2,2"), Err(Error::SpecError(_))));
}
