use bredon::abelian::FgAbelianGroup;
use bredon::acoeff::*;
use bredon::cellular::*;
use bredon::mackey::*;
use bredon::repring::*;
use bredon::zcoeff::cohomology_z;
use proptest::prelude::*;

fn g(n: u64) -> GroupSpec {
    GroupSpec::new(n).unwrap()
}

fn sphere_rep(group: &GroupSpec, exps: &[u64]) -> VirtualRep {
    let mut v = VirtualRep::zero(group);
    for &r in exps {
        v.add_xi(r as i64, 1);
    }
    v
}

fn z(group: &GroupSpec) -> MackeyTable {
    concretize(&MackeyExpr::constant(group))
}

fn a(group: &GroupSpec) -> MackeyTable {
    concretize(&MackeyExpr::burnside(group))
}

fn proper_divisors(group: &GroupSpec) -> Vec<u64> {
    group.divisors().into_iter().filter(|&d| d < group.n()).collect()
}

fn grid(group: &GroupSpec) -> Vec<Vec<u64>> {
    let props = proper_divisors(group);
    let mut out = vec![vec![]];
    for (i, &x) in props.iter().enumerate() {
        out.push(vec![x]);
        for &y in &props[i..] {
            out.push(vec![x, y]);
        }
    }
    out
}

#[test]
fn single_circle_is_the_two_cell_complex() {
    let g15 = g(15);
    for d in [1u64, 3, 5] {
        let c = sphere_complex(&g15, &[d]).unwrap();
        assert_eq!(c.cells(0), &[15]);
        assert_eq!(c.cells(1), &[d]);
        assert_eq!(c.cells(2), &[d]);
        let rho = c.boundary(2).unwrap().get(&(0, 0)).unwrap();
        let mut want = GMapCombo::single(1, 1);
        want.add_term(0, -1);
        assert_eq!(rho, &want);
        assert_eq!(rho.augmentation(), 0);
    }
}

#[test]
fn empty_sphere_is_a_point() {
    let g15 = g(15);
    let c = sphere_complex(&g15, &[]).unwrap();
    assert_eq!(c.top_degree(), 0);
    assert_eq!(c.cells(0), &[15]);
    for m in g15.divisors() {
        let hs = homology_all(&c, &z(&g15), m, Variance::Homology).unwrap();
        assert_eq!(hs[0], FgAbelianGroup::free(1));
        assert!(hs[1..].iter().all(FgAbelianGroup::is_zero));
        let want = a(&g15).value_at_divisor(m).unwrap().clone();
        assert_eq!(bredon_homology(&VirtualRep::zero(&g15), 0, &a(&g15), m).unwrap(), want);
    }
}

#[test]
fn two_circle_join_has_the_expected_orbits() {
    let g15 = g(15);
    let c = sphere_complex_unreduced(&g15, &[1, 3]).unwrap();
    assert_eq!(c.top_degree(), 4);
    assert_eq!(c.cells(0), &[15]);
    assert!(c.cells(1).iter().all(|&d| d == 1 || d == 3));
    assert_eq!(c.cells(4), &[1; 5]);
    assert!(c.boundary_squared_defects().is_empty());
    assert!(sphere_complex(&g15, &[1, 3]).unwrap().boundary_squared_defects().is_empty());
}

#[test]
fn bredon_homology_examples() {
    let g15 = g(15);
    let v = sphere_rep(&g15, &[1, 3]);
    assert_eq!(bredon_homology(&v, 2, &z(&g15), 15).unwrap(), FgAbelianGroup::cyclic(15));
    let v = sphere_rep(&g15, &[1]);
    assert_eq!(bredon_homology(&v, 0, &a(&g15), 15).unwrap(), FgAbelianGroup::free(3));
    // The one-cell orbit G/e maps to the point by the transfer, which is n.
    assert_eq!(bredon_homology(&v, 0, &z(&g15), 15).unwrap(), FgAbelianGroup::cyclic(15));
    assert_eq!(bredon_homology(&v, 1, &z(&g15), 15).unwrap(), FgAbelianGroup::zero());
    let v = sphere_rep(&g15, &[1, 3]);
    assert!(bredon_homology(&v, 1, &a(&g15), 15).unwrap().is_zero());
}

#[test]
fn bottom_level_sees_the_underlying_sphere() {
    for n in [15u64, 21] {
        let group = g(n);
        for v in grid(&group) {
            let dim = 2 * v.len();
            let hs = homology_all(&sphere_complex(&group, &v).unwrap(), &z(&group), 1, Variance::Homology).unwrap();
            for (k, h) in hs.iter().enumerate() {
                let want = if k == dim { FgAbelianGroup::free(1) } else { FgAbelianGroup::zero() };
                assert_eq!(h, &want, "n={n} V={v:?} k={k}");
            }
        }
    }
}

#[test]
fn euler_characteristic_per_level() {
    let g15 = g(15);
    for v in grid(&g15) {
        let c = sphere_complex(&g15, &v).unwrap();
        for coeff in [z(&g15), a(&g15)] {
            for m in g15.divisors() {
                for var in [Variance::Homology, Variance::Cohomology] {
                    let ev = evaluate(&c, &coeff, m, var).unwrap();
                    let sign = |q: usize| if q % 2 == 0 { 1i64 } else { -1 };
                    let chains: i64 = ev.chain_ranks().iter().enumerate().map(|(q, &r)| sign(q) * r as i64).sum();
                    let homology: i64 =
                        (0..=ev.top_degree()).map(|q| sign(q) * ev.group(q).unwrap().free_rank() as i64).sum();
                    assert_eq!(chains, homology, "V={v:?} m={m} {var:?}");
                }
            }
        }
    }
}

#[test]
fn assembled_table_for_two_circles() {
    let g15 = g(15);
    let c = sphere_complex(&g15, &[1, 3]).unwrap();
    let t = mackey_assemble(&c, 2, &z(&g15), Variance::Homology).unwrap();
    let want = MackeyExpr::from_atoms(&g15, vec![MackeyAtom::k_torsion(&g15, 0), MackeyAtom::k_torsion(&g15, 1)]);
    assert!(tables_match(&t, &concretize(&want)).unwrap());
    assert!(check_axioms(&t, true).is_ok());
}

#[test]
fn assembled_table_beyond_the_top_is_zero() {
    let g15 = g(15);
    let c = sphere_complex(&g15, &[3]).unwrap();
    let t = mackey_assemble(&c, 5, &z(&g15), Variance::Homology).unwrap();
    assert!(tables_match(&t, &MackeyTable::zero(&g15)).unwrap());
}

#[test]
fn assembled_single_circle_matches_the_engine() {
    let g15 = g(15);
    let c = sphere_complex(&g15, &[3]).unwrap();
    let v = sphere_rep(&g15, &[3]);
    for k in 0..=3usize {
        let alpha = &v - &VirtualRep::trivial(&g15, k as i64);
        let t = mackey_assemble(&c, k, &z(&g15), Variance::Homology).unwrap();
        assert!(tables_match(&t, &concretize(&cohomology_z(&alpha).mackey)).unwrap(), "k={k}");
    }
}

#[test]
fn nontrivial_conjugation_is_rejected() {
    let g15 = g(15);
    let c3 = g(3);
    let inner = concretize(&MackeyExpr::atom(&c3, MackeyAtom::k_torsion(&c3, 0)));
    let induced = induce_orbit(&g15, 3, &inner).unwrap();
    let c = sphere_complex(&g15, &[1]).unwrap();
    assert!(matches!(
        evaluate(&c, &induced, 15, Variance::Homology),
        Err(CellularError::ConjugationNontrivial)
    ));
}

#[test]
fn invalid_exponents_are_rejected() {
    let g15 = g(15);
    assert!(matches!(sphere_complex(&g15, &[0]), Err(CellularError::InvalidExponent(0))));
    assert!(matches!(sphere_complex(&g15, &[15]), Err(CellularError::InvalidExponent(15))));
    assert!(matches!(evaluate(&sphere_complex(&g15, &[1]).unwrap(), &z(&g15), 7, Variance::Homology), Err(_)));
}

#[test]
fn homology_does_not_depend_on_the_lift() {
    let g15 = g(15);
    for r in [1u64, 2, 3, 7, 10] {
        let plain = EquivChainComplex::circle(&g15, r).unwrap();
        let d = num_integer::gcd(r, 15);
        let lifts: Vec<u64> = (0..45).filter(|t| ((r / d) * t) % (15 / d) == 1 % (15 / d)).collect();
        assert!(lifts.len() >= 3);
        for t in lifts {
            let other = EquivChainComplex::circle_lifted(&g15, r, t).unwrap();
            assert!(other.boundary_squared_defects().is_empty());
            for m in g15.divisors() {
                for coeff in [z(&g15), a(&g15)] {
                    for var in [Variance::Homology, Variance::Cohomology] {
                        let x = homology_all(&plain, &coeff, m, var).unwrap();
                        let y = homology_all(&other, &coeff, m, var).unwrap();
                        assert_eq!(x, y, "r={r} t={t} m={m}");
                    }
                }
            }
        }
    }
    assert!(EquivChainComplex::circle_lifted(&g15, 2, 2).is_err());
}

#[test]
fn unit_twisted_exponents_agree() {
    for n in [15u64, 21, 35] {
        let group = g(n);
        for r in 1..n {
            let d = num_integer::gcd(r, n);
            let twisted = sphere_complex(&group, &[r, 1]).unwrap();
            let plain = sphere_complex(&group, &[d, 1]).unwrap();
            for m in group.divisors() {
                for var in [Variance::Homology, Variance::Cohomology] {
                    let x = homology_all(&twisted, &z(&group), m, var).unwrap();
                    let y = homology_all(&plain, &z(&group), m, var).unwrap();
                    assert_eq!(x, y, "n={n} r={r} m={m}");
                }
            }
        }
    }
}

#[test]
fn dual_induction_is_a_shifted_induction() {
    // Cohomology with Z* on the primes outside I in degree k equals cohomology
    // with Z there after adding ξ^d, d the product of the primes in I, and
    // raising the degree by two.
    for n in [15u64, 21] {
        let group = g(n);
        let k_all = group.k();
        for bits in 1..(1u32 << k_all) - 1 {
            let inside = PrimeSet(bits);
            let d: u64 = inside.indices().map(|i| group.primes()[i]).product();
            for inner in [Factor::ConstZ, Factor::Burnside] {
                let fac = |fill: Factor| {
                    let f = (0..k_all).map(|i| if inside.contains(i) { inner } else { fill }).collect();
                    concretize(&MackeyExpr::atom(&group, MackeyAtom::boxed(&group, f).unwrap()))
                };
                let (dual, plain) = (fac(Factor::DualZ), fac(Factor::ConstZ));
                for v in [vec![], vec![1], vec![d], vec![1, d]] {
                    let mut bigger = v.clone();
                    bigger.push(d);
                    let c1 = sphere_complex(&group, &v).unwrap();
                    let c2 = sphere_complex(&group, &bigger).unwrap();
                    for k in 0..=2 * v.len() + 1 {
                        let left = mackey_assemble(&c1, k, &dual, Variance::Cohomology).unwrap();
                        let right = mackey_assemble(&c2, k + 2, &plain, Variance::Cohomology).unwrap();
                        assert!(tables_match(&left, &right).unwrap(), "n={n} I={bits:b} V={v:?} k={k}");
                    }
                }
            }
        }
    }
}

#[test]
fn oracle_grid_for_fifteen() {
    let group = g(15);
    let (zt, at) = (z(&group), a(&group));
    let mut count = 0;
    for v in grid(&group) {
        let c = sphere_complex(&group, &v).unwrap();
        let rep = sphere_rep(&group, &v);
        for k in 0..=rep.dim() + 1 {
            let kv = VirtualRep::trivial(&group, k);
            for (var, alpha) in [(Variance::Homology, &rep - &kv), (Variance::Cohomology, &kv - &rep)] {
                let want_z = concretize(&cohomology_z(&alpha).mackey);
                let fd = alpha.fixed_dims();
                for m in group.divisors() {
                    count += 1;
                    let ev = evaluate(&c, &zt, m, var).unwrap();
                    assert_eq!(&ev.group(k as usize).unwrap(), want_z.value_at_divisor(m).unwrap());
                    let ev = evaluate(&c, &at, m, var).unwrap();
                    let want = a_level_value(&fd, group.all(), group.mask_of(m).unwrap());
                    assert_eq!(ev.group(k as usize).unwrap(), want, "V={v:?} k={k} m={m}");
                }
                let t = mackey_assemble(&c, k as usize, &zt, var).unwrap();
                assert!(tables_match(&t, &want_z).unwrap(), "V={v:?} k={k} {var:?}");
                let answer = cohomology_a_mackey(&alpha, &CoeffSystem::full_burnside(&group));
                if let MackeyValue::Known(e) = &answer.mackey {
                    let t = mackey_assemble(&c, k as usize, &at, var).unwrap();
                    assert!(tables_match(&t, &concretize(e)).unwrap(), "V={v:?} k={k} {var:?}");
                }
            }
        }
    }
    assert_eq!(count, 400);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn boundaries_square_to_zero(n in prop::sample::select(vec![15u64, 21, 35]), raw in prop::collection::vec(1u64..200, 0..4)) {
        let group = g(n);
        let exps: Vec<u64> = raw.iter().map(|r| 1 + r % (n - 1)).collect();
        let c = sphere_complex(&group, &exps).unwrap();
        prop_assert!(c.boundary_squared_defects().is_empty());
        for m in group.divisors() {
            for var in [Variance::Homology, Variance::Cohomology] {
                let ev = evaluate(&c, &a(&group), m, var).unwrap();
                for q in 0..=ev.top_degree() {
                    prop_assert!(ev.subquotient(q).is_ok());
                }
            }
        }
    }
}
