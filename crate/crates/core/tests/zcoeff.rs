use bredon::abelian::FgAbelianGroup;
use bredon::acoeff::CoeffSystem;
use bredon::cellular::{mackey_assemble, sphere_complex, EquivChainComplex, Entries, GMapCombo, Variance};
use bredon::mackey::{concretize, tables_match, MackeyAtom, MackeyExpr};
use bredon::repring::*;
use bredon::zcoeff::*;
use proptest::prelude::*;

fn g(n: u64) -> GroupSpec {
    GroupSpec::new(n).unwrap()
}

fn rep(group: &GroupSpec, src: &str) -> VirtualRep {
    parse_grading(group, src).unwrap()
}

fn k_sum(group: &GroupSpec, idx: &[usize]) -> MackeyExpr {
    MackeyExpr::from_atoms(group, idx.iter().map(|&i| MackeyAtom::k_torsion(group, i)).collect())
}

#[test]
fn cohomology_examples() {
    let g15 = g(15);
    let a = cohomology_z(&rep(&g15, "xi + xi^3 - 2"));
    assert_eq!(a.mackey, k_sum(&g15, &[0, 1]));
    assert_eq!(a.group_at_top, FgAbelianGroup::cyclic(15));
    let a = cohomology_z(&VirtualRep::zero(&g15));
    assert_eq!(a.mackey, MackeyExpr::constant(&g15));
    assert_eq!(a.group_at_top, FgAbelianGroup::free(1));
    let a = cohomology_z(&rep(&g15, "xi^3 + xi^5 - 2"));
    assert_eq!(a.mackey.to_string(), "K[3]<Z/3> (+) K[5]<Z/5>");
    assert_eq!(a.group_at_top, FgAbelianGroup::cyclic(15));
}

#[test]
fn degree_zero_uses_the_j_vector() {
    let g15 = g(15);
    let a = cohomology_z(&rep(&g15, "2 - xi"));
    assert_eq!(a.mackey, MackeyExpr::atom(&g15, MackeyAtom::z_j(&g15, g15.all())));
    assert_eq!(a.mackey.to_string(), "Z*");
    let a = cohomology_z(&rep(&g15, "xi^3 - xi^5"));
    assert_eq!(a.mackey, MackeyExpr::atom(&g15, MackeyAtom::z_j(&g15, PrimeSet::singleton(0))));
}

#[test]
fn homology_of_the_example_sphere() {
    let g15 = g(15);
    let v = rep(&g15, "xi + xi^3");
    assert_eq!(homology_of_rep_sphere(&v, 4).unwrap().mackey, MackeyExpr::constant(&g15));
    assert_eq!(homology_of_rep_sphere(&v, 0).unwrap().mackey, k_sum(&g15, &[1]));
    assert_eq!(homology_of_rep_sphere(&v, 2).unwrap().mackey, k_sum(&g15, &[0, 1]));
    for m in [1, 3, 5] {
        assert!(homology_of_rep_sphere(&v, m).unwrap().mackey.is_zero());
    }
    assert!(homology_of_rep_sphere(&rep(&g15, "xi - xi^3"), 0).is_err());
}

#[test]
fn duality_partner_examples() {
    let g15 = g(15);
    let a = rep(&g15, "2*xi^3 - 2*xi - 1");
    assert_eq!(duality_partner(&a), rep(&g15, "4 + xi - 2*xi^3"));
    let b = rep(&g15, "3 - xi");
    assert_eq!(duality_partner(&b), VirtualRep::zero(&g15));
    assert_eq!(duality_partner(&duality_partner(&a)), a);
}

#[test]
fn splitting_of_trivially_vanishing_parts() {
    let g15 = g(15);
    // Over C_3, ξ^3 - 3 restricts to -3 and -4: both vanish at the top and below.
    let s = sphere_boundary_splitting(&rep(&g15, "xi^3 + xi^5 - 5"), 5, &CoeffSystem::constant(&g15)).unwrap();
    assert!(s.c_part.is_zero() || s.k_part.is_zero());
    let s = sphere_boundary_splitting(&rep(&g15, "3"), 3, &CoeffSystem::constant(&g15)).unwrap();
    assert!(s.c_part.is_zero() && s.k_part.is_zero());
}

#[test]
fn splitting_of_xi_over_order_three() {
    let g15 = g(15);
    let s = sphere_boundary_splitting(&rep(&g15, "xi"), 3, &CoeffSystem::constant(&g15)).unwrap();
    assert!(s.c_part.is_zero());
    assert_eq!(s.k_part, k_sum(&g15, &[0]));
    // ξ^3 restricts to the trivial 2-dimensional representation of C_3.
    let s = sphere_boundary_splitting(&rep(&g15, "xi^3"), 3, &CoeffSystem::constant(&g15)).unwrap();
    assert!(s.total().is_zero());
    assert!(sphere_boundary_splitting(&rep(&g15, "xi"), 15, &CoeffSystem::constant(&g15)).is_err());
}

/// `S(ξ^r)_+` as an equivariant complex: `G/C_d ←(ρ^t - 1)− G/C_d`.
fn unit_circle(group: &GroupSpec, r: u64) -> EquivChainComplex {
    let circle = EquivChainComplex::circle(group, r).unwrap();
    let d = circle.cells(1)[0];
    let mut b1 = Entries::new();
    b1.insert((0, 0), circle.boundary(2).unwrap().get(&(0, 0)).cloned().unwrap_or_default());
    b1.retain(|_, c: &mut GMapCombo| !c.is_zero());
    EquivChainComplex::new(group, vec![vec![d], vec![d]], vec![Entries::new(), b1]).unwrap()
}

#[test]
fn splitting_matches_the_cellular_unit_circle() {
    // H^{k - V}(S(ξ^d)_+) = H̃^k(S^V ∧ S(ξ^d)_+), computed from cells.
    for n in [15u64, 21] {
        let group = g(n);
        let z = concretize(&MackeyExpr::constant(&group));
        let a = concretize(&MackeyExpr::burnside(&group));
        for d in group.divisors().into_iter().filter(|&d| d < n) {
            let circle = unit_circle(&group, d);
            for v in [vec![], vec![1], vec![d], vec![1, d]] {
                let x = sphere_complex(&group, &v).unwrap().tensor(&circle).reduced();
                let mut vrep = VirtualRep::zero(&group);
                for &r in &v {
                    vrep.add_xi(r as i64, 1);
                }
                for k in 0..=(vrep.dim() + 2) {
                    let alpha = &VirtualRep::trivial(&group, k) - &vrep;
                    for (coeff, table) in [(CoeffSystem::constant(&group), &z), (CoeffSystem::full_burnside(&group), &a)] {
                        let Ok(split) = sphere_boundary_splitting(&alpha, d, &coeff) else { continue };
                        let oracle = mackey_assemble(&x, k as usize, table, Variance::Cohomology).unwrap();
                        assert!(
                            tables_match(&oracle, &concretize(&split.total())).unwrap(),
                            "n={n} d={d} V={v:?} k={k} coeff={coeff}: {}",
                            split.total()
                        );
                    }
                }
            }
        }
    }
}

fn grading() -> impl Strategy<Value = VirtualRep> {
    prop::sample::select(vec![15u64, 21, 35, 105]).prop_flat_map(|n| {
        let group = g(n);
        let n = n as i64;
        (-8i64..9, prop::collection::vec((1..n, -3i64..4), 0..4))
            .prop_map(move |(a0, t)| VirtualRep::from_terms(&group, a0, &t))
    })
}

fn odd_negative() -> impl Strategy<Value = VirtualRep> {
    (grading(), 0i64..6).prop_map(|(v, j)| {
        let shift = -(2 * j + 1) - v.dim();
        &v + &VirtualRep::trivial(v.group(), shift)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn vanishing_by_dimension(alpha in grading()) {
        let a = cohomology_z(&alpha);
        let fd = &a.fixed_dims;
        let d = fd.total();
        if (d > 0 && d % 2 != 0) || (d < 0 && d % 2 == 0) {
            prop_assert!(a.mackey.is_zero());
        }
        if d < 0 && d % 2 != 0 && (0..alpha.group().k()).all(|i| fd.at_prime(i) <= 1) {
            prop_assert!(a.mackey.is_zero());
        }
        if fd.values().iter().all(|&x| x > 0) || fd.values().iter().all(|&x| x < 0) {
            prop_assert!(a.mackey.is_zero());
        }
    }

    #[test]
    fn odd_gradings_are_finite_and_torsion_divides_n(alpha in grading()) {
        let a = cohomology_z(&alpha);
        let n = alpha.group().n();
        if a.fixed_dims.total() % 2 != 0 {
            prop_assert!(a.group_at_top.is_finite());
        }
        let t = concretize(&a.mackey);
        for (_, v) in t.values_by_divisor() {
            prop_assert!(v.torsion().iter().all(|&q| n % q == 0));
        }
        prop_assert_eq!(t.value(alpha.group().all()), &a.group_at_top);
    }

    #[test]
    fn torsion_duality_on_odd_negative(alpha in odd_negative()) {
        prop_assert!(alpha.dim() < 0 && alpha.dim() % 2 != 0);
        let a = cohomology_z(&alpha).group_at_top;
        let b = cohomology_z(&duality_partner(&alpha)).group_at_top;
        prop_assert_eq!(a.order(), b.order());
    }

    #[test]
    fn depends_only_on_fixed_dims(alpha in grading(), s in 1i64..50) {
        let n = alpha.group().n() as i64;
        prop_assume!(num_integer::gcd(s, n) == 1);
        let twisted = alpha.twist(s);
        let (a, b) = (cohomology_z(&alpha), cohomology_z(&twisted));
        prop_assert_eq!(a.mackey, b.mackey.clone());
        prop_assert_eq!(a.group_at_top, b.group_at_top);
        let c = cohomology_z(&alpha.fixed_dims().reconstruct().unwrap());
        prop_assert_eq!(c.mackey, b.mackey);
    }
}
