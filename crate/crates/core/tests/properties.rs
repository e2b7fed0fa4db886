use std::collections::HashMap;

use einstein_sp::algebra::rational::{frac, int};
use einstein_sp::algebra::{BigRational, Monomial, MonomialOrder, MultiPoly, OrderKind, VarContext};
use einstein_sp::geometry::*;
use einstein_sp::groebner::{buchberger, is_reduced, s_polys_reduce_to_zero, Budget, IdealBasis};
use einstein_sp::univar::{SturmSequence, UniPoly};
use einstein_sp::Error;
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn ctx3() -> VarContext {
    VarContext::new(&["x", "y", "z"]).unwrap()
}

fn poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg, 0..=max_deg), -9i64..=9), 0..=max_terms).prop_map(|ts| {
        let ctx = ctx3();
        MultiPoly::from_terms(
            &ctx,
            ts.into_iter().map(|((a, b, c), k)| {
                let m = Monomial::var(3, 0, a).mul(&Monomial::var(3, 1, b)).mul(&Monomial::var(3, 2, c));
                (m, int(k))
            }),
        )
    })
}

fn point() -> impl Strategy<Value = HashMap<String, BigRational>> {
    prop::collection::vec((-20i64..=20, 1i64..=7), 3).prop_map(|v| {
        ["x", "y", "z"].iter().zip(v).map(|(n, (a, b))| (n.to_string(), frac(a, b))).collect()
    })
}

fn positive_rational() -> impl Strategy<Value = BigRational> {
    (1i64..=50, 1i64..=17).prop_map(|(a, b)| frac(a, b))
}

fn spec() -> impl Strategy<Value = FibrationSpec> {
    prop_oneof![
        (1u32..=6, 1u32..=6, 1u32..=6).prop_map(|(k1, k2, k3)| FibrationSpec::Wallach { k1, k2, k3 }),
        (3u32..=12).prop_flat_map(|n| (Just(n), 2..n)).prop_map(|(n, p)| FibrationSpec::Flag { n, p }),
    ]
}

proptest! {
    #[test]
    fn ring_laws(a in poly(3, 5), b in poly(3, 5), c in poly(3, 5)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(3, 5), b in poly(3, 5), x in point()) {
        let (ea, eb) = (a.eval(&x).unwrap(), b.eval(&x).unwrap());
        prop_assert_eq!((&a * &b).eval(&x).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).eval(&x).unwrap(), ea + eb);
    }

    #[test]
    fn sturm_counts_add(cs in prop::collection::vec(-6i64..=6, 2..9), a in -40i64..0, b in -20i64..20, c in 1i64..40) {
        let f = UniPoly::from_ints("t", &cs);
        prop_assume!(f.degree() > 0);
        let seq = SturmSequence::new(&f);
        let (a, c) = (frac(a, 3), frac(c, 3));
        let b = frac(b, 7);
        prop_assume!(a < b && b < c);
        prop_assert_eq!(seq.count(&a, &c), seq.count(&a, &b) + seq.count(&b, &c));
        let big = f.cauchy_bound();
        prop_assert_eq!(seq.count(&-big.clone(), &big), seq.count_all());
    }

    #[test]
    fn ricci_is_homogeneous_of_degree_minus_one(s in spec(), t in positive_rational(), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let x: Vec<BigRational> = (0..s.summand_count()).map(|_| frac(rng.gen_range(1..60), rng.gen_range(1..13))).collect();
        let tx: Vec<BigRational> = x.iter().map(|v| v * &t).collect();
        let r = ricci_at(&s, &x).unwrap();
        let rt = ricci_at(&s, &tx).unwrap();
        for (a, b) in r.iter().zip(&rt) {
            prop_assert_eq!(a / &t, b.clone());
        }
    }

    #[test]
    fn wallach_swap_symmetry(k in 1u32..=6, m in 1u32..=6, x in prop::collection::vec(positive_rational(), 5)) {
        let s = FibrationSpec::Wallach { k1: k, k2: k, k3: m };
        let r = ricci_at(&s, &x).unwrap();
        prop_assert_eq!(ricci_at(&s, &wallach_swap(&x)).unwrap(), wallach_swap(&r));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn groebner_bases_are_reduced(gens in prop::collection::vec(poly(2, 3), 1..=3), lex in any::<bool>()) {
        let ctx = ctx3();
        let gens: Vec<MultiPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let kind = if lex { OrderKind::Lex } else { OrderKind::GrevLex };
        let order = MonomialOrder::natural(kind, 3);
        let ideal = IdealBasis::new(&ctx, gens.clone()).unwrap();
        let budget = Budget { max_seconds: Some(10.0), ..Default::default() };
        let gb = match buchberger(&ideal, &order, &budget) {
            Err(Error::BudgetExceeded(_)) => return Ok(()),
            r => r.unwrap(),
        };
        prop_assert!(is_reduced(&gb));
        prop_assert!(s_polys_reduce_to_zero(&gb));
        for g in &gens {
            prop_assert!(gb.reduces_to_zero(g).unwrap());
        }
    }
}

fn all_small_specs() -> Vec<FibrationSpec> {
    let mut out = Vec::new();
    for k1 in 1..=6 {
        for k2 in 1..=6 {
            for k3 in 1..=6 {
                out.push(FibrationSpec::Wallach { k1, k2, k3 });
            }
        }
    }
    for n in 3..=6 {
        for p in 2..n {
            out.push(FibrationSpec::Flag { n, p });
        }
    }
    out
}

/// The general Ricci formula on the structure constants agrees exactly with
/// the closed forms, 20 random rational points per spec.
#[test]
fn general_formula_matches_closed_forms() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for s in all_small_specs() {
        let dims = summand_dims(&s).unwrap();
        let a = structure_constants(&s).unwrap();
        for _ in 0..20 {
            let x: Vec<BigRational> =
                (0..s.summand_count()).map(|_| frac(rng.gen_range(1..200), rng.gen_range(1..50))).collect();
            assert_eq!(ricci_general(&dims, &a, &x).unwrap(), ricci_at(&s, &x).unwrap(), "{s} at {x:?}");
        }
    }
}

#[test]
fn all_ones_is_not_einstein() {
    let s = FibrationSpec::Wallach { k1: 1, k2: 1, k3: 1 };
    let r = ricci_at(&s, &[int(1), int(1), int(1), int(1), int(1)]).unwrap();
    let spread = r.iter().max().unwrap() - r.iter().min().unwrap();
    assert_eq!(spread, frac(3, 32));
}

#[test]
fn nonpositive_metric_is_rejected() {
    let s = FibrationSpec::Flag { n: 4, p: 2 };
    let x = [int(1), int(0), int(1), int(1)];
    assert!(matches!(ricci_at(&s, &x), Err(Error::DomainError(_))));
    let dims = summand_dims(&s).unwrap();
    assert!(matches!(ricci_general(&dims, &structure_constants(&s).unwrap(), &x), Err(Error::DomainError(_))));
}
