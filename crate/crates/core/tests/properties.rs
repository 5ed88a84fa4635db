use std::collections::BTreeSet;

use cavepoly::algorithms::{stalactite_polynomial, LexOrder};
use cavepoly::error::Axiom;
use cavepoly::generate::{random_polymatroid, GeneratorConfig, Strategy as Family};
use cavepoly::geometry::{downward_closure, in_independence, independence_points, truncate};
use cavepoly::io::{parse_instance, serialize_instance, PolynomialDocument};
use cavepoly::polymatroid::{
    homogenize, is_generalized_polymatroid, is_m_convex, points_from_rank, rank_from_points,
    validate_rank_function,
};
use cavepoly::subset::full_mask;
use cavepoly::{verify_instance, BinomialBasisPoly, Error, LatticePoint, MultiPoly, Polymatroid};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn instance(max_p: usize) -> impl Strategy<Value = Polymatroid> {
    (any::<u64>(), 1..=max_p, 0..3usize).prop_map(|(seed, p, s)| {
        let cfg = GeneratorConfig::new(seed, p, Family::ALL[s]);
        random_polymatroid(&cfg).unwrap()
    })
}

fn point_set(p: usize, max: u32) -> impl Strategy<Value = BTreeSet<LatticePoint>> {
    prop::collection::btree_set(
        prop::collection::vec(0..=max, p).prop_map(LatticePoint::new),
        1..8,
    )
}

fn multi_poly(p: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..4, p), -5i64..=5), 0..6).prop_map(move |terms| {
        MultiPoly::from_terms(p, terms.into_iter().map(|(e, c)| (LatticePoint::new(e), c))).unwrap()
    })
}

/// Every pair of subsets, straight from the axioms.
fn failing_axioms(p: usize, values: &[u32], cage: &[u32]) -> Vec<Axiom> {
    let rk = |m: u32| values[m as usize];
    let mut out = Vec::new();
    if rk(0) != 0 {
        out.push(Axiom::Normalized);
    }
    if (0..p).any(|i| rk(1 << i) > cage[i]) {
        out.push(Axiom::SingletonBound);
    }
    let all = 0..=full_mask(p);
    if all
        .clone()
        .any(|a| all.clone().any(|b| a & b == a && rk(a) > rk(b)))
    {
        out.push(Axiom::Monotone);
    }
    if all
        .clone()
        .any(|a| all.clone().any(|b| rk(a) + rk(b) < rk(a | b) + rk(a & b)))
    {
        out.push(Axiom::Submodular);
    }
    out
}

fn exchange_oracle(s: &BTreeSet<LatticePoint>) -> bool {
    let p = s.iter().next().unwrap().dim();
    let homogeneous = s.iter().all(|u| u.degree() == s.iter().next().unwrap().degree());
    homogeneous
        && s.iter().all(|u| {
            s.iter().all(|v| {
                (0..p).filter(|&i| u.coords()[i] > v.coords()[i]).all(|i| {
                    (0..p).any(|j| {
                        u.coords()[j] < v.coords()[j] && u.exchange(i, j).is_some_and(|w| s.contains(&w))
                    })
                })
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_and_points_round_trip(poly in instance(4)) {
        let rk = rank_from_points(&poly);
        prop_assert_eq!(&points_from_rank(&rk).unwrap(), &poly);
        prop_assert_eq!(rank_from_points(&points_from_rank(&rk).unwrap()), rk);
    }

    #[test]
    fn validation_matches_pairwise_oracle(
        p in 1usize..=3,
        raw in prop::collection::vec(0u32..5, 8),
        cage in prop::collection::vec(0u32..5, 3),
    ) {
        let values = raw[..1 << p].to_vec();
        let cage = cage[..p].to_vec();
        let expected = failing_axioms(p, &values, &cage);
        match validate_rank_function(p, values, LatticePoint::new(cage)) {
            Ok(_) => prop_assert!(expected.is_empty()),
            Err(Error::AxiomViolation(v)) => {
                let got: Vec<Axiom> = v.iter().map(|x| x.axiom).collect();
                prop_assert_eq!(got, expected);
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn m_convexity_matches_oracle(s in (1usize..=3).prop_flat_map(|p| point_set(p, 2))) {
        prop_assert_eq!(is_m_convex(&s).unwrap().is_ok(), exchange_oracle(&s));
    }

    #[test]
    fn generalized_polymatroids_homogenize(s in (1usize..=3).prop_flat_map(|p| point_set(p, 2))) {
        prop_assert_eq!(
            is_generalized_polymatroid(&s).unwrap().is_ok(),
            is_m_convex(&homogenize(&s).unwrap()).unwrap().is_ok()
        );
    }

    #[test]
    fn ring_axioms_and_evaluation(
        a in multi_poly(2),
        b in multi_poly(2),
        c in multi_poly(2),
        t in prop::collection::vec(-4i64..=4, 2),
    ) {
        prop_assert_eq!(a.checked_add(&b).unwrap(), b.checked_add(&a).unwrap());
        prop_assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());
        prop_assert_eq!(
            a.checked_mul(&b).unwrap().checked_mul(&c).unwrap(),
            a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.checked_mul(&b.checked_add(&c).unwrap()).unwrap(),
            a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.checked_sub(&a).unwrap().is_zero());
        prop_assert_eq!(
            a.checked_mul(&b).unwrap().eval(&t).unwrap(),
            a.eval(&t).unwrap() * b.eval(&t).unwrap()
        );
        prop_assert_eq!(
            a.checked_add(&b).unwrap().eval(&t).unwrap(),
            a.eval(&t).unwrap() + b.eval(&t).unwrap()
        );
    }

    #[test]
    fn canonical_strings_are_injective(a in multi_poly(2), b in multi_poly(2)) {
        prop_assert_eq!(a == b, a.to_string() == b.to_string());
    }

    #[test]
    fn polynomial_documents_round_trip(a in multi_poly(3)) {
        let text = serde_json::to_string(&PolynomialDocument::monomial(&a)).unwrap();
        let back: PolynomialDocument = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_multi().unwrap(), a);
    }

    #[test]
    fn binomial_expansion_agrees_with_evaluation(
        terms in prop::collection::vec((prop::collection::vec(0u32..4, 2), -3i64..=3), 1..5),
        offset in -1i64..=0,
        seed in any::<u64>(),
    ) {
        let q = BinomialBasisPoly::from_terms(
            2,
            offset,
            terms.into_iter().map(|(e, c)| (LatticePoint::new(e), c)),
        ).unwrap();
        let expanded = q.expand();
        // 200 integer points spread over [-10, 10]^2
        for k in 0..200u64 {
            let mix = seed.wrapping_add(k).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            let t = [(mix % 21) as i64 - 10, ((mix >> 20) % 21) as i64 - 10];
            prop_assert_eq!(expanded.eval(&t).unwrap(), BigRational::from_integer(q.eval(&t).unwrap()));
        }
    }

    #[test]
    fn independence_is_the_downward_closure(poly in instance(4)) {
        let ind = independence_points(&poly);
        prop_assert_eq!(ind.points(), &downward_closure(poly.points()));
        for n in ind.points() {
            prop_assert!(in_independence(&poly, n).unwrap());
        }
        for n in poly.points() {
            prop_assert!(!in_independence(&poly, &n.plus_unit(0)).unwrap());
        }
    }

    #[test]
    fn truncations_are_polymatroids(poly in instance(3)) {
        for n in independence_points(&poly).points() {
            let t = truncate(&poly, n).unwrap();
            prop_assert!(is_m_convex(t.points()).unwrap().is_ok());
            prop_assert_eq!(t.rank(), poly.rank());
        }
    }

    #[test]
    fn stalactite_polynomial_ignores_the_order(poly in instance(3)) {
        let base = stalactite_polynomial(&poly, &LexOrder::identity(poly.dim())).unwrap();
        for order in LexOrder::all(poly.dim()) {
            prop_assert_eq!(&stalactite_polynomial(&poly, &order).unwrap(), &base);
        }
    }

    #[test]
    fn instances_round_trip_through_json(poly in instance(4)) {
        prop_assert_eq!(parse_instance(&serialize_instance(&poly)).unwrap(), poly);
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>(), p in 1usize..=4, s in 0..3usize) {
        let cfg = GeneratorConfig::new(seed, p, Family::ALL[s]);
        let a = random_polymatroid(&cfg).unwrap();
        prop_assert_eq!(&a, &random_polymatroid(&cfg).unwrap());
        prop_assert_eq!(a.dim(), p);
        prop_assert!(a.rank() <= 6);
        prop_assert!(a.cage().coords().iter().all(|&m| m <= 5));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_check_passes(poly in instance(3)) {
        let report = verify_instance(&poly);
        let failures: Vec<_> = report.failures().collect();
        prop_assert!(failures.is_empty(), "{:?}", failures);
    }
}

#[test]
fn coefficient_sum_of_generated_instances_is_one() {
    for seed in 0..40 {
        let poly = random_polymatroid(&GeneratorConfig::new(seed, 3, Family::LatticePath)).unwrap();
        let cave = cavepoly::algorithms::cave_polynomial(&poly).unwrap();
        assert_eq!(cave.coefficient_sum(), BigInt::from(1));
    }
}
