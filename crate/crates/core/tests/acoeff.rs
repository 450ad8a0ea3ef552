use bredon::abelian::FgAbelianGroup;
use bredon::acoeff::*;
use bredon::mackey::{concretize, Factor, MackeyAtom, MackeyExpr};
use bredon::repring::*;
use bredon::zcoeff::cohomology_z;
use proptest::prelude::*;

fn g(n: u64) -> GroupSpec {
    GroupSpec::new(n).unwrap()
}

fn rep(group: &GroupSpec, src: &str) -> VirtualRep {
    parse_grading(group, src).unwrap()
}

#[test]
fn nonzero_example() {
    let g15 = g(15);
    let a = cohomology_a_mackey(&rep(&g15, "2*xi^3 - 2*xi - 1"), &CoeffSystem::full_burnside(&g15));
    assert_eq!(a.case, ZeroPattern::NonZero);
    assert_eq!(a.mackey.known().unwrap(), &MackeyExpr::atom(&g15, MackeyAtom::k_torsion(&g15, 0)));
    assert_eq!(a.group_at_top, FgAbelianGroup::cyclic(3));
}

#[test]
fn mostly_nonzero_over_one_prime() {
    let g5 = g(5);
    let a = cohomology_a_mackey(&rep(&g5, "xi"), &CoeffSystem::full_burnside(&g5));
    assert_eq!(a.case, ZeroPattern::MostlyNonZero);
    let bracket = MackeyAtom::boxed(&g5, vec![Factor::Bracket(0)]).unwrap();
    assert_eq!(a.mackey.known().unwrap(), &MackeyExpr::atom(&g5, bracket));
    assert_eq!(a.group_at_top, FgAbelianGroup::free(1));
}

#[test]
fn many_zeros_refuses_the_functor() {
    let g15 = g(15);
    let a = cohomology_a_mackey(&rep(&g15, "xi"), &CoeffSystem::full_burnside(&g15));
    assert_eq!(a.case, ZeroPattern::ManyZeros);
    assert_eq!(a.mackey, MackeyValue::RepresentationDependent);
    assert_eq!(a.group_at_top, FgAbelianGroup::free(3));
}

#[test]
fn group_examples() {
    let g15 = g(15);
    let a = CoeffSystem::full_burnside(&g15);
    assert_eq!(cohomology_a_group(&VirtualRep::zero(&g15), &a), FgAbelianGroup::free(4));
    assert_eq!(cohomology_a_group(&rep(&g15, "xi"), &a), FgAbelianGroup::free(3));
    assert!(cohomology_a_group(&rep(&g15, "xi + xi^3 - 1"), &a).is_zero());
}

#[test]
fn coefficient_display() {
    let g105 = g(105);
    assert_eq!(CoeffSystem::constant(&g105).to_string(), "Z");
    assert_eq!(CoeffSystem::full_burnside(&g105).to_string(), "A");
    assert_eq!(CoeffSystem::new(&g105, PrimeSet::from_indices(&[0, 2])).to_string(), "A[3,7]");
}

#[test]
fn bz_reduction_examples() {
    let g15 = g(15);
    let c5 = g(5);
    let z5 = MackeyExpr::constant(&c5);
    let out = bz_reduction(&rep(&g15, "xi"), 3, &z5).unwrap();
    let want = MackeyAtom::boxed(&g15, vec![Factor::Bracket(0), Factor::ConstZ]).unwrap();
    assert_eq!(out.known().unwrap(), &MackeyExpr::atom(&g15, want));
    // α^{C_3} = 2ξ_5 + 1 is odd with all fixed dims positive over C_5.
    let out = bz_reduction(&rep(&g15, "2*xi^3 + 1"), 3, &z5).unwrap();
    assert!(out.known().unwrap().is_zero());
    assert!(bz_reduction(&rep(&g15, "xi"), 7, &z5).is_err());
    assert!(bz_reduction(&rep(&g15, "xi"), 3, &MackeyExpr::atom(&c5, MackeyAtom::uniform(&c5, Factor::DualZ))).is_err());
}

fn grading() -> impl Strategy<Value = VirtualRep> {
    prop::sample::select(vec![15u64, 21, 35, 105]).prop_flat_map(|n| {
        let group = g(n);
        let n = n as i64;
        (-6i64..7, prop::collection::vec((1..n, -2i64..3), 0..4))
            .prop_map(move |(a0, t)| VirtualRep::from_terms(&group, a0, &t))
    })
}

fn with_coeff() -> impl Strategy<Value = (VirtualRep, CoeffSystem)> {
    grading().prop_flat_map(|v| {
        let k = v.group().k();
        (Just(v), 0u32..(1 << k))
    })
    .prop_map(|(v, bits)| {
        let c = CoeffSystem::new(v.group(), PrimeSet(bits));
        (v, c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn torsion_is_squarefree_and_divides_n((alpha, c) in with_coeff()) {
        let n = alpha.group().n();
        let grp = cohomology_a_group(&alpha, &c);
        for &t in grp.torsion() {
            prop_assert_eq!(n % t, 0);
        }
        if let MackeyValue::Known(e) = cohomology_a_mackey(&alpha, &c).mackey {
            for (_, v) in concretize(&e).values_by_divisor() {
                prop_assert!(v.torsion().iter().all(|&t| n % t == 0));
            }
        }
    }

    #[test]
    fn odd_small_dimensions_vanish((alpha, c) in with_coeff()) {
        let fd = alpha.fixed_dims();
        if !fd.is_even() && fd.values().iter().all(|&x| x <= 1) {
            prop_assert!(cohomology_a_group(&alpha, &c).is_zero());
            if let MackeyValue::Known(e) = cohomology_a_mackey(&alpha, &c).mackey {
                prop_assert!(e.is_zero());
            }
        }
    }

    #[test]
    fn rank_is_additive_along_one_prime((alpha, c) in with_coeff()) {
        let fd = alpha.fixed_dims();
        let group = alpha.group();
        for j in c.burnside().indices() {
            let whole = a_group(&fd, c.burnside()).free_rank();
            let smaller = a_group(&fd, c.burnside().without(j)).free_rank();
            let rest = PrimeSet::singleton(j).complement(group.k());
            let quotient = fd.quotient(PrimeSet::singleton(j));
            let bracket_part = a_group(&quotient, group.project(rest, c.burnside().without(j))).free_rank();
            prop_assert_eq!(whole, smaller + bracket_part);
        }
    }

    #[test]
    fn bz_reduction_reproduces_bracket_summands((alpha, c) in with_coeff()) {
        let group = alpha.group();
        let answer = cohomology_a_mackey(&alpha, &c);
        prop_assume!(answer.case == ZeroPattern::NonZero);
        let total = answer.mackey.known().unwrap().clone();
        for j in c.burnside().indices() {
            let rest = PrimeSet::singleton(j).complement(group.k());
            let inner_group = group.sub(rest);
            let inner_coeff = CoeffSystem::new(&inner_group, group.project(rest, c.burnside().without(j)));
            let inner = MackeyExpr::atom(&inner_group, inner_coeff.atom());
            let reduced = bz_reduction(&alpha, group.primes()[j], &inner).unwrap();
            let want: Vec<MackeyAtom> =
                total.atoms().iter().filter(|a| a.factors()[j] == Factor::Bracket(0)).cloned().collect();
            prop_assert_eq!(reduced.known().unwrap(), &MackeyExpr::from_atoms(group, want));
        }
    }

    #[test]
    fn answers_depend_only_on_fixed_dims((alpha, c) in with_coeff(), s in 1i64..60) {
        let n = alpha.group().n() as i64;
        prop_assume!(num_integer::gcd(s, n) == 1);
        let other = alpha.twist(s);
        prop_assert_eq!(cohomology_a_group(&alpha, &c), cohomology_a_group(&other, &c));
        let (a, b) = (cohomology_a_mackey(&alpha, &c), cohomology_a_mackey(&other, &c));
        if a.case != ZeroPattern::ManyZeros {
            prop_assert_eq!(a.mackey, b.mackey);
        }
    }

    #[test]
    fn mackey_and_group_engines_agree((alpha, c) in with_coeff()) {
        let a = cohomology_a_mackey(&alpha, &c);
        if let MackeyValue::Known(e) = &a.mackey {
            prop_assert_eq!(&e.top_value(), &a.group_at_top);
            let t = concretize(e);
            for s in alpha.group().all().subsets() {
                prop_assert_eq!(t.value(s), &a_level_value(&a.fixed_dims, c.burnside(), s));
            }
        }
    }

    #[test]
    fn constant_endpoint_is_the_integral_answer(alpha in grading()) {
        let c = CoeffSystem::constant(alpha.group());
        let a = cohomology_a_mackey(&alpha, &c);
        let z = cohomology_z(&alpha);
        prop_assert_eq!(a.mackey.known().unwrap(), &z.mackey);
        prop_assert_eq!(a.group_at_top, z.group_at_top);
    }
}
