use bredon::freeness::*;
use bredon::repring::*;
use proptest::prelude::*;

fn g(n: u64) -> GroupSpec {
    GroupSpec::new(n).unwrap()
}

fn rep(group: &GroupSpec, src: &str) -> VirtualRep {
    parse_grading(group, src).unwrap()
}

fn binomial(l: u64, m: u64) -> usize {
    (0..m).fold(1u64, |acc, i| acc * (l - i) / (i + 1)) as usize
}

#[test]
fn ll_examples() {
    let g15 = g(15);
    let cells = cp_cells(&g15, 3);
    assert!(ll_compare(&cells[2].cell.rep, &cells[3].cell.rep));
    assert_eq!(cells[2].dims_direct.values(), vec![4, 0, 0, 0]);
    assert_eq!(cells[3].dims_direct.values(), vec![6, 2, 0, 0]);
    let w = rep(&g15, "xi^3");
    let v = rep(&g15, "2*xi");
    assert!(!ll_compare(&w, &v));
    assert!(ll_compare(&v, &v));
}

#[test]
fn projective_space_is_even_type() {
    let g15 = g(15);
    let cells = cp_cells(&g15, 10);
    let report = check_cp(&cells);
    assert!(report.passes());
    assert_eq!(report.basis.len(), 11);
    for (r, b) in report.basis.iter().enumerate() {
        assert_eq!(b.grading.dim(), 2 * r as i64);
        assert_eq!(b.isotropy, 15);
    }
}

#[test]
fn projective_cell_examples() {
    let g15 = g(15);
    let cells = cp_cells(&g15, 15);
    assert_eq!(cells[3].cell.rep, rep(&g15, "xi^12 + xi^13 + xi^14"));
    assert_eq!(cells[3].dims_direct, cells[3].dims_floor);
    assert_eq!(cells[0].cell.rep, VirtualRep::zero(&g15));
    assert_eq!(cells[15].dims_direct.at(g15.all()), 2);
}

#[test]
fn single_cell_passes() {
    let g15 = g(15);
    let cell = CellSpec { isotropy: 15, rep: rep(&g15, "xi + xi^5") };
    let report = check_even_type(&[cell]);
    assert!(report.passes());
    assert_eq!(report.basis.len(), 1);
}

#[test]
fn reversed_projective_space() {
    // A larger cell attached first is vacuously below a smaller one: no fixed
    // dimension of the first is strictly smaller.
    let g15 = g(15);
    let mut cells: Vec<CellSpec> = cp_cells(&g15, 10).into_iter().map(|c| c.cell).collect();
    cells.reverse();
    assert!(check_even_type(&cells).passes());
    // Swapping two cells whose dimensions cross does fail at that pair.
    let crossing = vec![
        CellSpec { isotropy: 15, rep: rep(&g15, "xi^3") },
        CellSpec { isotropy: 15, rep: rep(&g15, "2*xi") },
    ];
    let report = check_even_type(&crossing);
    assert!(!report.passes());
    assert_eq!(report.first_offence(), Some((0, 1)));
    assert!(report.basis.is_empty());
}

#[test]
fn ll_chains_through_a_vacuous_step_can_break() {
    let g15 = g(15);
    let (u, v, w) = (rep(&g15, "xi^3"), VirtualRep::zero(&g15), rep(&g15, "2*xi"));
    assert!(ll_compare(&u, &v));
    assert!(ll_compare(&v, &w));
    assert!(!ll_compare(&u, &w));
}

#[test]
fn odd_cells_are_reported() {
    let g15 = g(15);
    let cells = vec![CellSpec { isotropy: 15, rep: rep(&g15, "1") }];
    assert_eq!(check_even_type(&cells).odd_cells, vec![0]);
}

#[test]
fn grassmannian_cells() {
    let g15 = g(15);
    let cells = grassmann_cells(&g15, 4, 2);
    assert_eq!(cells.len(), 6);
    assert_eq!(cells[0].symbol, vec![0, 0]);
    assert_eq!(cells[0].cell.rep, VirtualRep::zero(&g15));
    let bad = cells.iter().find(|c| c.symbol == vec![1, 2]).unwrap();
    assert_eq!(bad.cell.rep, rep(&g15, "2*xi^-1 + xi^-3"));
    assert_eq!(bad.dims_direct.at(PrimeSet::singleton(0)), 2);
    assert_eq!(bad.dims_floor.at(PrimeSet::singleton(0)), 0);
    assert!(bad.mismatch);
    let report = check_grassmann(&cells);
    assert!(report.passes());
    assert_eq!(report.basis.len(), 6);
    for c in &cells {
        let total: u64 = c.symbol.iter().sum();
        assert_eq!(c.dims_direct.total(), 2 * total as i64);
        assert_eq!(c.dims_floor.total(), 2 * total as i64);
    }
}

#[test]
fn projective_dims_agree_exhaustively() {
    for n in [3u64, 15, 21, 35, 105] {
        let group = g(n);
        for c in cp_cells(&group, 4 * n) {
            assert_eq!(c.dims_direct, c.dims_floor, "n={n} r={}", c.r);
        }
    }
}

fn actual() -> impl Strategy<Value = VirtualRep> {
    prop::collection::vec((1i64..15, 0i64..3), 0..5).prop_map(|t| VirtualRep::from_terms(&g(15), 0, &t))
}

proptest! {
    #[test]
    fn ll_is_reflexive_and_transitive(u in actual(), v in actual(), w in actual()) {
        prop_assert!(ll_compare(&u, &u));
        let strict_at_e = |x: &VirtualRep, y: &VirtualRep| x.dim() < y.dim() && ll_compare(x, y);
        if strict_at_e(&u, &v) && strict_at_e(&v, &w) {
            prop_assert!(ll_compare(&u, &w));
        }
    }

    #[test]
    fn grassmann_bases_are_complete(n in prop::sample::select(vec![15u64, 21, 35]), l in 1u64..7, m in 1u64..4) {
        prop_assume!(m <= l);
        let group = g(n);
        let cells = grassmann_cells(&group, l, m);
        prop_assert_eq!(cells.len(), binomial(l, m));
        let report = check_grassmann(&cells);
        if report.passes() {
            prop_assert_eq!(report.basis.len(), cells.len());
            let dims: Vec<i64> = report.basis.iter().map(|b| b.grading.dim()).collect();
            prop_assert!(dims.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn projective_bases_are_complete(n in prop::sample::select(vec![15u64, 21, 105]), m in 0u64..30) {
        let report = check_cp(&cp_cells(&g(n), m));
        prop_assert!(report.passes());
        prop_assert_eq!(report.basis.len() as u64, m + 1);
    }
}
