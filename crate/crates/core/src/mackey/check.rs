use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::abelian::IntegerMatrix;
use crate::repring::PrimeSet;

use super::table::{covers, MackeyTable};

/// One failed identity, with levels given as divisors of `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// `res^a_b ∘ tr^a_c` differs from the double-coset sum.
    DoubleCoset { a: u64, b: u64, c: u64 },
    /// `tr^a_b ∘ res^a_b ≠ (a/b)·id`.
    ZModule { a: u64, b: u64 },
    /// Two cover paths from `a` to `b` give different composites.
    PathDependence { a: u64, b: u64 },
    /// A map sends a relation to something nonzero.
    RelationsNotPreserved { from: u64, to: u64 },
    /// Conjugation fails to commute with a cover map or to have the right order.
    Conjugation { level: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has_double_coset(&self, a: u64, b: u64, c: u64) -> bool {
        self.violations.iter().any(|v| *v == Violation::DoubleCoset { a, b, c })
    }
}

fn maps_relations(t: &MackeyTable, m: &IntegerMatrix, from: PrimeSet, to: PrimeSet) -> bool {
    let rel = &t.level(from).relations;
    if rel.cols() == 0 || m.rows() == 0 {
        return true;
    }
    let img = m * rel;
    t.equal_mod(to, &img, &IntegerMatrix::zeros(img.rows(), img.cols()))
}

/// Verifies the Mackey axioms on every divisor triple. With `z_module` the
/// identity `tr ∘ res = index` is checked as well.
pub fn check_axioms(t: &MackeyTable, z_module: bool) -> AxiomReport {
    let g = t.group();
    let n = g.n();
    let div = |s: PrimeSet| g.divisor(s);
    let mut out = AxiomReport::default();

    for (s, i) in covers(g) {
        let hi = s.with(i);
        if !maps_relations(t, t.cover_res(s, i), hi, s) {
            out.violations.push(Violation::RelationsNotPreserved { from: div(hi), to: div(s) });
        }
        if !maps_relations(t, t.cover_tr(s, i), s, hi) {
            out.violations.push(Violation::RelationsNotPreserved { from: div(s), to: div(hi) });
        }
    }

    for s in g.all().subsets() {
        let free = g.all().minus(s);
        for i in free.indices() {
            for j in free.indices().filter(|&j| j > i) {
                let top = s.with(i).with(j);
                let r1 = t.res_along(top, s, &[i, j]);
                let r2 = t.res_along(top, s, &[j, i]);
                let t1 = t.tr_along(s, top, &[i, j]);
                let t2 = t.tr_along(s, top, &[j, i]);
                if !t.equal_mod(s, &r1, &r2) || !t.equal_mod(top, &t1, &t2) {
                    out.violations.push(Violation::PathDependence { a: div(top), b: div(s) });
                }
            }
        }
    }

    for s in g.all().subsets() {
        let Some(c) = t.conjugation(s) else { continue };
        let order = n / div(s);
        let ok_order = t.equal_mod(s, &t.conj_power(s, order), &IntegerMatrix::identity(c.rows()))
            && maps_relations(t, c, s, s);
        if !ok_order {
            out.violations.push(Violation::Conjugation { level: div(s) });
        }
    }
    for (s, i) in covers(g) {
        let hi = s.with(i);
        let (cl, ch) = (t.conj_power(s, 1), t.conj_power(hi, 1));
        let r = t.cover_res(s, i);
        let tr = t.cover_tr(s, i);
        if !t.equal_mod(s, &(&cl * r), &(r * &ch)) || !t.equal_mod(hi, &(&ch * tr), &(tr * &cl)) {
            out.violations.push(Violation::Conjugation { level: div(s) });
        }
    }

    for a in g.all().subsets() {
        let da = div(a);
        for b in a.subsets() {
            let db = div(b);
            for c in a.subsets() {
                let dc = div(c);
                let gmask = b.intersect(c);
                let lhs = &t.res(a, b) * &t.tr(c, a);
                let inner = &t.tr(gmask, b) * &t.res(c, gmask);
                let cosets = da / db.lcm(&dc);
                let mut rhs = IntegerMatrix::zeros(lhs.rows(), lhs.cols());
                for j in 0..cosets {
                    rhs = rhs.add(&(&t.conj_power(b, (n / da) * j) * &inner));
                }
                if !t.equal_mod(b, &lhs, &rhs) {
                    out.violations.push(Violation::DoubleCoset { a: da, b: db, c: dc });
                }
            }
            if z_module && b != a {
                let lhs = &t.tr(b, a) * &t.res(a, b);
                let rhs = IntegerMatrix::identity(lhs.rows()).scaled(&BigInt::from(da / db));
                if !t.equal_mod(a, &lhs, &rhs) {
                    out.violations.push(Violation::ZModule { a: da, b: db });
                }
            }
        }
    }
    out
}
