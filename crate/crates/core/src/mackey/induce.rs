use std::collections::BTreeMap;

use num_integer::Integer;

use crate::abelian::IntegerMatrix;
use crate::repring::{GroupSpec, PrimeSet};

use super::table::{covers, Level, MackeyTable};
use super::MackeyError;

/// Copies of the inner level making up level `m` of the induced functor:
/// the `C_d`-orbits of `G/C_m = Z/(n/m)` are indexed by `x mod n/lcm(d, m)`,
/// each isomorphic to `C_d/C_{gcd(d, m)}` with basepoint `x`.
fn copies(n: u64, d: u64, m: u64) -> u64 {
    n / d.lcm(&m)
}

/// Writes `point ∈ Z/modulus` as `base + j·(n/d)` with `base < copies`
/// and returns `(base, j)`.
fn locate(n: u64, d: u64, modulus: u64, copies: u64, point: u64) -> (u64, u64) {
    let base = point % copies;
    let step = n / d;
    let j = (0..d).find(|j| (base + j * step) % modulus == point % modulus).expect("point lies in its orbit");
    (base, j)
}

fn block_set(target: &mut IntegerMatrix, r0: usize, c0: usize, block: &IntegerMatrix) {
    for r in 0..block.rows() {
        for c in 0..block.cols() {
            target.set(r0 + r, c0 + c, block.get(r, c).clone());
        }
    }
}

/// `↑^G_{C_d} inner`, where `inner` is a table over `C_d`.
pub fn induce_orbit(group: &GroupSpec, d: u64, inner: &MackeyTable) -> Result<MackeyTable, MackeyError> {
    let dmask = group.mask_of(d).ok_or(crate::repring::RepError::NotADivisor(d, group.n()))?;
    if inner.group() != &group.sub(dmask) {
        return Err(MackeyError::Shape(format!("inner table is over {}, expected C_{}", inner.group(), d)));
    }
    let n = group.n();
    let inner_mask = |s: PrimeSet| group.project(dmask, s.intersect(dmask));
    let inner_level = |s: PrimeSet| inner.level(inner_mask(s));
    let num = |s: PrimeSet| copies(n, d, group.divisor(s)) as usize;
    // Inner conjugation order at the inner level of `s`.
    let weyl = |s: PrimeSet| d / inner.group().divisor(inner_mask(s));
    let inner_conj = |s: PrimeSet, j: u64| inner.conj_power(inner_mask(s), j % weyl(s));

    let mut levels = Vec::with_capacity(group.num_divisors());
    for m in 0..group.num_divisors() {
        let s = PrimeSet(m as u32);
        let lv = inner_level(s);
        let k = num(s);
        let mut rel = IntegerMatrix::zeros(0, 0);
        for _ in 0..k {
            rel = rel.direct_sum(&lv.relations);
        }
        if rel.rows() != lv.generators * k {
            rel = IntegerMatrix::zeros(lv.generators * k, 0);
        }
        levels.push(Level::new(lv.generators * k, rel)?);
    }

    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for (s, i) in covers(group) {
        let hi = s.with(i);
        let (lo_lv, hi_lv) = (inner_level(s), inner_level(hi));
        let (k_lo, k_hi) = (num(s), num(hi));
        let mut r = IntegerMatrix::zeros(lo_lv.generators * k_lo, hi_lv.generators * k_hi);
        let mut t = IntegerMatrix::zeros(hi_lv.generators * k_hi, lo_lv.generators * k_lo);
        let hi_modulus = n / group.divisor(hi);
        for x in 0..k_lo as u64 {
            let (xp, j) = locate(n, d, hi_modulus, k_hi as u64, x);
            let (rb, tb) = if dmask.contains(i) {
                let is = group.project(dmask, s.intersect(dmask));
                let ii = dmask.indices().position(|q| q == i).expect("prime of d");
                (inner.cover_res(is, ii).clone(), inner.cover_tr(is, ii).clone())
            } else {
                let w = weyl(s);
                (inner_conj(s, w - j % w), inner_conj(s, j))
            };
            block_set(&mut r, x as usize * lo_lv.generators, xp as usize * hi_lv.generators, &rb);
            let (cr, cc) = (xp as usize * hi_lv.generators, x as usize * lo_lv.generators);
            for a in 0..tb.rows() {
                for b in 0..tb.cols() {
                    t.add_to(cr + a, cc + b, tb.get(a, b));
                }
            }
        }
        res.insert((s, i), r);
        tr.insert((s, i), t);
    }

    let mut conj = BTreeMap::new();
    for m in 0..group.num_divisors() {
        let s = PrimeSet(m as u32);
        let g = inner_level(s).generators;
        let k = num(s);
        let modulus = n / group.divisor(s);
        let mut c = IntegerMatrix::zeros(g * k, g * k);
        for x in 0..k as u64 {
            let (xp, j) = locate(n, d, modulus, k as u64, (x + 1) % modulus);
            block_set(&mut c, xp as usize * g, x as usize * g, &inner_conj(s, j));
        }
        conj.insert(s, c);
    }
    MackeyTable::new(group, levels, res, tr, conj)
}
