use std::collections::BTreeMap;

use bredon::repring::*;
use proptest::prelude::*;

fn g(n: u64) -> GroupSpec {
    GroupSpec::new(n).unwrap()
}

fn rep(group: &GroupSpec, src: &str) -> VirtualRep {
    parse_grading(group, src).unwrap()
}

fn dims(v: &VirtualRep) -> Vec<i64> {
    v.fixed_dims().by_divisor().into_iter().map(|(_, x)| x).collect()
}

// Fixed dimensions straight from raw terms: C_d (generated by ρ^{n/d})
// rotates ξ^r by 2πr/d, so it fixes ξ^r exactly when d | r.
fn raw_fixed_dims(n: u64, a0: i64, terms: &[(i64, i64)]) -> BTreeMap<u64, i64> {
    (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| {
            let fixed: i64 = terms.iter().filter(|(r, _)| r.rem_euclid(d as i64) == 0).map(|(_, c)| 2 * c).sum();
            (d, a0 + fixed)
        })
        .collect()
}

#[test]
fn group_spec_validation() {
    let g15 = g(15);
    assert_eq!(g15.primes(), &[3, 5]);
    assert_eq!(g15.divisors(), vec![1, 3, 5, 15]);
    assert_eq!(g15.num_divisors(), 4);
    assert!(GroupSpec::new(9).is_err());
    assert!(GroupSpec::new(30).is_err());
    assert!(GroupSpec::new(0).is_err());
    assert_eq!(g(105).num_divisors(), 8);
}

#[test]
fn fixed_dims_examples() {
    let g15 = g(15);
    assert_eq!(dims(&rep(&g15, "xi + xi^3 - 2")), vec![2, 0, -2, -2]);
    assert_eq!(dims(&VirtualRep::zero(&g15)), vec![0, 0, 0, 0]);
    assert_eq!(dims(&rep(&g15, "xi^7")), vec![2, 0, 0, 0]);
    assert_eq!(rep(&g15, "xi^7").fixed_dims(), rep(&g15, "xi").fixed_dims());
}

#[test]
fn m_alpha_examples() {
    let g15 = g(15);
    assert_eq!(m_alpha(&rep(&g15, "xi").fixed_dims()), 15);
    assert_eq!(m_alpha(&rep(&g15, "2*xi^3 - 2*xi - 1").fixed_dims()), 3);
    assert_eq!(m_alpha(&rep(&g15, "xi + xi^5 + 1 - 5").fixed_dims()), 15);
}

#[test]
fn j_vector_examples() {
    let g15 = g(15);
    assert_eq!(j_vector(&rep(&g15, "2 - xi").fixed_dims()), PrimeSet::from_indices(&[0, 1]));
    assert_eq!(j_vector(&rep(&g15, "xi - 2").fixed_dims()), PrimeSet::EMPTY);
    assert_eq!(j_vector(&rep(&g15, "xi^3 - 2").fixed_dims()), PrimeSet::EMPTY);
}

#[test]
fn classify_examples() {
    let g15 = g(15);
    assert_eq!(classify(&rep(&g15, "xi^3 + xi^5 - 2").fixed_dims()), ZeroPattern::MostlyNonZero);
    let g21 = g(21);
    assert_eq!(classify(&rep(&g21, "xi^3 + xi^7 - 2").fixed_dims()), ZeroPattern::MostlyNonZero);
    assert_eq!(classify(&VirtualRep::zero(&g15).fixed_dims()), ZeroPattern::ManyZeros);
    assert_eq!(classify(&rep(&g15, "xi").fixed_dims()), ZeroPattern::ManyZeros);
    assert_eq!(classify(&rep(&g15, "xi + 1").fixed_dims()), ZeroPattern::NonZero);
}

#[test]
fn quotient_fixed_examples() {
    let g15 = g(15);
    let a = rep(&g15, "2*xi^3 - 2*xi - 1");
    let q = a.quotient_fixed(3).unwrap();
    assert_eq!(q.group().n(), 5);
    assert_eq!(dims(&q), vec![3, -1]);
    assert_eq!(q, rep(&g(5), "2*xi - 1"));
    assert_eq!(a.quotient_fixed(1).unwrap(), a);
    let top = a.quotient_fixed(15).unwrap();
    assert_eq!(top.group().n(), 1);
    assert_eq!(top.dim(), -1);
    assert!(a.quotient_fixed(7).is_err());
}

#[test]
fn zeta_examples() {
    let g15 = g(15);
    let fd = rep(&g15, "xi^3 + xi^5 - 2").fixed_dims();
    assert_eq!(dims(&rep(&g15, "xi^3 + xi^5 - 2")), vec![2, 0, 0, -2]);
    assert_eq!(zeta(&fd, PrimeSet::EMPTY), PrimeSet::from_indices(&[0, 1]));
    assert_eq!(zeta(&fd, PrimeSet::singleton(0)), PrimeSet::EMPTY);
    let fd = rep(&g15, "xi + 1").fixed_dims();
    for s in g15.all().subsets() {
        assert_eq!(zeta(&fd, s), PrimeSet::EMPTY);
    }
}

#[test]
fn nu_examples() {
    let g15 = g(15);
    let all = g15.all();
    assert_eq!(nu(&rep(&g15, "xi").fixed_dims(), 0, all), 0);
    assert_eq!(nu(&rep(&g15, "xi + xi^3 - 2").fixed_dims(), 1, all), 1);
    let neg = rep(&g15, "-xi - 2").fixed_dims();
    assert!((0..2).all(|i| nu(&neg, i, all) == 0));
}

#[test]
fn parser_accepts_the_grammar() {
    let g15 = g(15);
    assert_eq!(rep(&g15, "2*xi^3 - 2*xi^1 - 1"), VirtualRep::from_terms(&g15, -1, &[(3, 2), (1, -2)]));
    assert_eq!(rep(&g15, " -xi^-1+3 "), VirtualRep::from_terms(&g15, 3, &[(1, -1)]));
    assert_eq!(rep(&g15, "ξ^3 + 2ξ"), VirtualRep::from_terms(&g15, 0, &[(3, 1), (1, 2)]));
    assert_eq!(rep(&g15, "xi^15"), VirtualRep::trivial(&g15, 2));
    assert_eq!(rep(&g15, "xi^14"), rep(&g15, "xi"));
    assert_eq!(rep(&g15, "0"), VirtualRep::zero(&g15));
}

#[test]
fn parser_reports_positions() {
    let g15 = g(15);
    let e = parse_grading(&g15, "xi + ").unwrap_err();
    assert_eq!(e.position, 5);
    let e = parse_grading(&g15, "2 3").unwrap_err();
    assert_eq!(e.position, 2);
    assert_eq!(rep(&g15, "2 xi"), rep(&g15, "2*xi"));
    let e = parse_grading(&g15, "3*").unwrap_err();
    assert_eq!(e.position, 2);
    assert!(parse_grading(&g15, "").is_err());
    assert!(parse_grading(&g15, "99999999999999999999").is_err());
    assert!(parse_grading(&g15, "xi^").is_err());
}

#[test]
fn display_round_trips_through_parser() {
    let g15 = g(15);
    for src in ["2*xi^3 - 2*xi - 1", "xi + xi^3 - 2", "0", "-4", "-xi^5"] {
        let v = rep(&g15, src);
        let shown = v.to_string().replace('ξ', "xi");
        assert_eq!(rep(&g15, &shown), v, "{shown}");
    }
}

#[test]
fn reconstruct_rejects_bad_vectors() {
    let g15 = g(15);
    assert_eq!(FixedDims::checked(&g15, vec![2, 1, 0, 0]).unwrap_err(), RepError::MixedParity);
}

fn group_strategy() -> impl Strategy<Value = GroupSpec> {
    prop::sample::select(vec![3u64, 15, 21, 35, 105]).prop_map(g)
}

fn grading_strategy() -> impl Strategy<Value = (GroupSpec, i64, Vec<(i64, i64)>)> {
    group_strategy().prop_flat_map(|g| {
        let n = g.n() as i64;
        (Just(g), -6i64..7, prop::collection::vec((-n..2 * n, -3i64..4), 0..5))
    })
}

proptest! {
    #[test]
    fn fixed_dims_match_raw_count((group, a0, terms) in grading_strategy()) {
        let v = VirtualRep::from_terms(&group, a0, &terms);
        let want = raw_fixed_dims(group.n(), a0, &terms);
        let got: BTreeMap<u64, i64> = v.fixed_dims().by_divisor().into_iter().collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn reconstruct_inverts_fixed_dims((group, a0, terms) in grading_strategy()) {
        let v = VirtualRep::from_terms(&group, a0, &terms);
        let back = v.fixed_dims().reconstruct().unwrap();
        prop_assert_eq!(back.fixed_dims(), v.fixed_dims());
        prop_assert_eq!(back.to_reduced(), v.to_reduced());
        prop_assert_eq!(v.to_reduced().fixed_dims(), v.fixed_dims());
    }

    #[test]
    fn unit_twists_preserve_fixed_dims((group, a0, terms) in grading_strategy(), s in 1i64..200) {
        let n = group.n() as i64;
        prop_assume!(num_integer::gcd(s, n) == 1);
        let v = VirtualRep::from_terms(&group, a0, &terms);
        prop_assert_eq!(v.twist(s).fixed_dims(), v.fixed_dims());
    }

    #[test]
    fn m_alpha_of_reduced_sphere_is_n((group, terms) in group_strategy().prop_flat_map(|g| {
        let n = g.n() as i64;
        (Just(g), prop::collection::vec((1..n, 0i64..3), 0..4))
    }), a0 in 0i64..3) {
        let v = VirtualRep::from_terms(&group, a0, &terms);
        prop_assert!(v.is_actual());
        let alpha = &v - &VirtualRep::trivial(&group, v.dim());
        prop_assert_eq!(m_alpha(&alpha.fixed_dims()), group.n());
    }

    #[test]
    fn parity_is_uniform((group, a0, terms) in grading_strategy()) {
        let fd = VirtualRep::from_terms(&group, a0, &terms).fixed_dims();
        prop_assert!(fd.values().iter().all(|x| (x - a0).rem_euclid(2) == 0));
        let m = m_alpha(&fd);
        prop_assert_eq!(group.n() % m, 0);
    }

    #[test]
    fn parser_never_panics(s in "[-+*^0-9xi ξ]{0,24}") {
        let _ = parse_grading(&g(15), &s);
    }
}
