use einstein_sp::groebner::Budget;
use einstein_sp::proofs::*;
use einstein_sp::Error;

#[test]
fn identities_hold() {
    let checks = identity_checks().unwrap();
    for c in &checks {
        assert!(c.passed(), "{}: {:?}", c.claim, c.outcome);
    }
    let exact = checks.iter().filter(|c| c.outcome == Match::Exact).count();
    assert_eq!(exact, 4);
    // The grouped form of U1(1) is off by the constant 64.
    let grouped = checks.iter().find(|c| c.claim.contains("grouped in n-p")).unwrap();
    assert_eq!(grouped.outcome, Match::Multiple { ratio: "64".into() });
}

#[test]
fn expansion_coefficients_certified() {
    let r = u_expansion_certificate(50).unwrap();
    assert_eq!(r.coefficients.len(), 7);
    assert!(r.fully_certified(), "{:#?}", r.coefficients);
}

#[test]
fn endpoint_signs_at_examples() {
    for (n, p) in [(3, 2), (4, 3), (8, 6), (40, 30)] {
        let s = endpoint_signs(n, p).unwrap();
        assert!(s.brackets_two_roots() && s.matches_printed, "({n},{p}) {s:?}");
    }
    // U1(0) and U1(1) stay positive past 3n/4; only U1(1/5) flips.
    let s = endpoint_signs(4, 4).unwrap();
    assert_eq!((s.at_0, s.at_1), (1, 1));
    assert!(matches!(endpoint_signs(3, 4), Err(Error::SpecError(_))));
}

#[test]
fn grid_up_to_40() {
    let g = grid_check(40).unwrap();
    assert_eq!(g.len(), grid_points(40).len());
    let failed: Vec<_> = g.iter().filter(|x| !x.passed()).map(|x| (x.n, x.p)).collect();
    assert!(failed.is_empty(), "{failed:?}");
}

#[test]
fn grid_order_is_deterministic() {
    let a: Vec<_> = grid_check(12).unwrap().iter().map(|x| (x.n, x.p)).collect();
    assert_eq!(a, grid_points(12));
}

#[test]
fn u1_matches_groebner() {
    for (n, p) in [(3, 2), (4, 2), (4, 3), (5, 3)] {
        assert!(verify_u1_against_groebner(n, p, &Budget::default()).unwrap(), "({n},{p})");
    }
}

#[test]
fn u2_matches_groebner() {
    for (n, p) in [(3, 2), (4, 3)] {
        let a = cross_check(Certificate::U2, n, p, &Budget::default()).unwrap();
        assert!(a.is_positive_multiple(), "{a:?}");
    }
}

#[test]
fn u0_transcription_differs_only_in_b5_b8() {
    let a = cross_check(Certificate::U0, 4, 3, &Budget::default()).unwrap();
    assert_eq!(a.mismatched_degrees, vec![5, 8]);
    assert!(a.computed_alternates);
}
