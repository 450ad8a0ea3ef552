//! Products in `H^⋆_G(S⁰; Z)`. Every class in a grading `α` with `|α| ≥ 0`
//! even is stored by its value in `Z` or `Z/m(α)`; multiplying it by
//! `n/m(α)` gives its coordinate on the canonical monomial of `α` in the
//! ring `Z[u^±] ⊗ Z[a_ξ]/(n a_ξ)`, where products are computed.

mod monomial;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::FgAbelianGroup;
use crate::repring::{m_alpha, GroupSpec, VirtualRep};
use crate::zcoeff::z_group;

pub use monomial::{parse_monomial, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("{0} is not a class of the integral ring")]
    NotInSubring(String),
    #[error("classes live over different groups")]
    GroupMismatch,
}

/// Which part of the ring a grading belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    /// `|α| ≥ 0` even.
    Positive,
    /// `|α| < 0` odd.
    Negative,
    /// Every other grading has a zero group.
    Zero,
}

fn part(alpha: &VirtualRep) -> Part {
    let d = alpha.dim();
    if d >= 0 && d % 2 == 0 {
        Part::Positive
    } else if d < 0 && d.rem_euclid(2) == 1 {
        Part::Negative
    } else {
        Part::Zero
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingClass {
    grading: VirtualRep,
    value: BigInt,
}

impl RingClass {
    /// Normalizes `value` into the group of `grading`.
    pub fn new(grading: &VirtualRep, value: impl Into<BigInt>) -> Self {
        let grading = grading.to_reduced();
        let group = z_group(&grading.fixed_dims());
        let value = value.into();
        let value = if group.is_zero() {
            BigInt::zero()
        } else if group.free_rank() > 0 {
            value
        } else {
            value.mod_floor(&BigInt::from(group.exponent()))
        };
        RingClass { grading, value }
    }

    pub fn zero(grading: &VirtualRep) -> Self {
        Self::new(grading, 0)
    }

    pub fn one(group: &GroupSpec) -> Self {
        Self::new(&VirtualRep::zero(group), 1)
    }

    pub fn grading(&self) -> &VirtualRep {
        &self.grading
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn group(&self) -> FgAbelianGroup {
        z_group(&self.grading.fixed_dims())
    }

    pub fn m(&self) -> u64 {
        m_alpha(&self.grading.fixed_dims())
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Additive order; `None` for a nonzero element of `Z`.
    pub fn order(&self) -> Option<u64> {
        let g = self.group();
        if self.value.is_zero() {
            return Some(1);
        }
        if g.free_rank() > 0 {
            return None;
        }
        let m = BigInt::from(g.exponent());
        (&m / self.value.gcd(&m)).to_u64()
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        Self::new(&self.grading, &self.value * k.into())
    }

    pub fn add(&self, other: &RingClass) -> Result<Self, RingError> {
        if self.grading.group() != other.grading.group() {
            return Err(RingError::GroupMismatch);
        }
        assert_eq!(self.grading, other.grading, "sum of classes in different gradings");
        Ok(Self::new(&self.grading, &self.value + &other.value))
    }

    /// `(n/m(α))·value`, the coordinate on the canonical monomial. Only
    /// meaningful for `|α| ≥ 0` even.
    pub fn ambient(&self) -> BigInt {
        let n = self.grading.group().n();
        BigInt::from(n / self.m()) * &self.value
    }

    fn from_ambient(grading: &VirtualRep, ambient: &BigInt) -> Result<Self, RingError> {
        let g = grading.group();
        let fd = grading.fixed_dims();
        let index = BigInt::from(g.n() / m_alpha(&fd));
        let amb = if grading.dim() > 0 { ambient.mod_floor(&BigInt::from(g.n())) } else { ambient.clone() };
        if !amb.is_multiple_of(&index) {
            return Err(RingError::NotInSubring(format!("coordinate {amb} in grading {grading}")));
        }
        Ok(Self::new(grading, amb / index))
    }
}

impl fmt::Display for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.group();
        if g.is_zero() {
            write!(f, "grading {}: 0 (group vanishes)", self.grading)
        } else {
            write!(f, "grading {}: {}, value {}", self.grading, g, self.value)
        }
    }
}

/// The class of `coefficient · monomial`.
pub fn class_of_monomial(group: &GroupSpec, coeff: i64, m: &Monomial) -> Result<RingClass, RingError> {
    let grading = m.grading(group);
    let n = BigInt::from(group.n());
    let mut amb = BigInt::from(coeff);
    for (&d, &f) in &m.a {
        amb *= BigInt::from(d).modpow(&BigInt::from(f), &n);
    }
    RingClass::from_ambient(&grading, &amb).map_err(|_| RingError::NotInSubring(m.to_string()))
}

/// Product of two classes.
pub fn multiply(x: &RingClass, y: &RingClass) -> RingClass {
    assert_eq!(x.grading.group(), y.grading.group(), "product of classes over different groups");
    let grading = &x.grading + &y.grading;
    match (part(&x.grading), part(&y.grading)) {
        (Part::Positive, Part::Positive) => RingClass::from_ambient(&grading, &(x.ambient() * y.ambient()))
            .expect("products of integral classes are integral"),
        (Part::Positive, Part::Negative) => module_action(x, y, &grading),
        (Part::Negative, Part::Positive) => module_action(y, x, &grading),
        _ => RingClass::zero(&grading),
    }
}

/// `x ∈ H^β` with `|β| ≥ 0` even acting on `y ∈ H^α` with `|α| < 0` odd:
/// `w = x·y·(n/m(β)) mod m(α+β)`.
fn module_action(x: &RingClass, y: &RingClass, grading: &VirtualRep) -> RingClass {
    if part(grading) != Part::Negative {
        return RingClass::zero(grading);
    }
    RingClass::new(grading, x.ambient() * &y.value)
}

/// `gcd_{f_δ > 0} n/δ` for a monomial with `a`-degree at least one.
pub fn monomial_order(group: &GroupSpec, m: &Monomial) -> Option<u64> {
    if m.a_degree() == 0 || m.u.values().any(|&e| e < 0) {
        return None;
    }
    Some(m.a.keys().fold(0u64, |acc, &d| acc.gcd(&(group.n() / d))))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationsReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl RelationsReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn proper_divisors(group: &GroupSpec) -> Vec<u64> {
    group.divisors().into_iter().filter(|&d| d != group.n()).collect()
}

/// `(n/d)·a_{ξ^d} = 0`, the gold relation for every ordered pair of distinct
/// proper divisors, and additivity of `a_V`, `u_V` on small `V`, `W`.
pub fn relations_suite(group: &GroupSpec) -> RelationsReport {
    let mut report = RelationsReport::default();
    let class = |c: i64, m: &Monomial| class_of_monomial(group, c, m).expect("monomials with u-exponents ≥ 0");
    let divs = proper_divisors(group);
    for &d in &divs {
        report.checked += 1;
        let x = class((group.n() / d) as i64, &Monomial::a(d, 1));
        if !x.is_zero() {
            report.violations.push(format!("{}·a({d}) = {}", group.n() / d, x.value));
        }
    }
    for &d in &divs {
        for &s in divs.iter().filter(|&&s| s != d) {
            report.checked += 1;
            let g = d.gcd(&s);
            let lhs = class((d / g) as i64, &Monomial::a(s, 1).times(&Monomial::u(d, 1)));
            let rhs = class((s / g) as i64, &Monomial::u(s, 1).times(&Monomial::a(d, 1)));
            if lhs != rhs {
                report.violations.push(format!("gold relation for (d, s) = ({d}, {s}): {} vs {}", lhs.value, rhs.value));
            }
        }
    }
    let small = small_exponent_vectors(divs.len(), 2);
    for v in &small {
        for w in &small {
            report.checked += 2;
            let a_of = |e: &[u64]| {
                let mut m = Monomial::one();
                for (i, &k) in e.iter().enumerate() {
                    m.mul_a(divs[i], k);
                }
                m
            };
            let u_of = |e: &[u64]| {
                let mut m = Monomial::one();
                for (i, &k) in e.iter().enumerate() {
                    m.mul_u(divs[i], k as i64);
                }
                m
            };
            let sum: Vec<u64> = v.iter().zip(w).map(|(a, b)| a + b).collect();
            if multiply(&class(1, &a_of(v)), &class(1, &a_of(w))) != class(1, &a_of(&sum)) {
                report.violations.push(format!("a_V a_W != a_(V+W) for {v:?}, {w:?}"));
            }
            if multiply(&class(1, &u_of(v)), &class(1, &u_of(w))) != class(1, &u_of(&sum)) {
                report.violations.push(format!("u_V u_W != u_(V+W) for {v:?}, {w:?}"));
            }
        }
    }
    report
}

/// All vectors of length `len` with non-negative entries summing to at most `max`.
pub fn small_exponent_vectors(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for v in &out {
            let used: u64 = v.iter().sum();
            for k in 0..=(max - used) {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Checks that in every grading `Σ c_d ξ^d - 2μ` with `Σ c_d ≤ max_terms`,
/// `c_d ≥ 0` and positive dimension, the monomial classes generate the
/// group. Returns the gradings where they do not.
pub fn ringrep_failures(group: &GroupSpec, max_terms: u64) -> Vec<VirtualRep> {
    let divs = proper_divisors(group);
    let mut failures = Vec::new();
    for c in small_exponent_vectors(divs.len(), max_terms) {
        let total: u64 = c.iter().sum();
        for mu in 0..total {
            let mut gens: Vec<RingClass> = Vec::new();
            for e in small_exponent_vectors(divs.len(), mu) {
                if e.iter().sum::<u64>() != mu || e.iter().zip(&c).any(|(e, c)| e > c) {
                    continue;
                }
                let mut m = Monomial::one();
                for (i, &d) in divs.iter().enumerate() {
                    m.mul_u(d, e[i] as i64);
                    m.mul_a(d, c[i] - e[i]);
                }
                gens.push(class_of_monomial(group, 1, &m).expect("non-negative u-exponents"));
            }
            let grading = {
                let mut m = Monomial::one();
                for (i, &d) in divs.iter().enumerate() {
                    m.mul_a(d, c[i]);
                }
                &m.grading(group) - &VirtualRep::trivial(group, 2 * mu as i64)
            };
            let order = BigInt::from(m_alpha(&grading.fixed_dims()));
            let g = gens.iter().fold(order.clone(), |acc, x| acc.gcd(x.value()));
            if !g.is_one() && !order.is_one() {
                failures.push(grading);
            }
        }
    }
    failures
}

/// True when `x·y = 0` for a generator `y` of the negative-part grading
/// `alpha` exactly when `x` kills the dual map `H^{γ-β} → H^γ`,
/// `γ = 3 - ξ - α`. The duality pairs torsion only, so a torsion-free
/// source counts as killed.
pub fn annihilator_matches_dual(x: &RingClass, alpha: &VirtualRep) -> bool {
    let y = RingClass::new(alpha, 1);
    let kills_y = multiply(x, &y).is_zero();
    let gamma = crate::zcoeff::duality_partner(alpha);
    let source = &gamma - x.grading();
    let z = RingClass::new(&source, 1);
    let kills_dual = multiply(x, &z).is_zero() || z.group().torsion().is_empty();
    kills_y == kills_dual
}
