//! Seeded randomized suites: structural properties of the closed forms and
//! the integral ring.

use std::collections::HashSet;

use num_integer::Integer;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use bredon::abelian::FgAbelianGroup;
use bredon::acoeff::{cohomology_a_group, cohomology_a_mackey, CoeffSystem, MackeyValue};
use bredon::mackey::MackeyExpr;
use bredon::repring::{GroupSpec, PrimeSet, VirtualRep, ZeroPattern};
use bredon::ringz::{class_of_monomial, multiply, relations_suite, ringrep_failures, Monomial, RelationsReport, RingClass};
use bredon::zcoeff::{cohomology_z, duality_partner, z_group};

pub const DEFAULT_SEED: u64 = 20_240_917;

/// How many violation messages a report keeps per check.
const KEPT_EXAMPLES: usize = 5;

pub fn rng_for(seed: u64, n: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ n.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn random_grading(group: &GroupSpec, rng: &mut impl Rng) -> VirtualRep {
    let n = group.n() as i64;
    let terms: Vec<(i64, i64)> = (0..rng.gen_range(0..5)).map(|_| (rng.gen_range(1..n), rng.gen_range(-3..=3))).collect();
    VirtualRep::from_terms(group, rng.gen_range(-8..=8), &terms)
}

/// A grading with `|α| < 0` odd.
pub fn random_odd_negative(group: &GroupSpec, rng: &mut impl Rng) -> VirtualRep {
    let v = random_grading(group, rng);
    let target = -2 * rng.gen_range(0..4) - 1;
    &v + &VirtualRep::trivial(group, target - v.dim())
}

fn random_unit(n: u64, rng: &mut impl Rng) -> i64 {
    loop {
        let s = rng.gen_range(1..n.max(2));
        if s.gcd(&n) == 1 {
            return s as i64;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub name: String,
    pub checked: usize,
    pub violations: usize,
    pub examples: Vec<String>,
}

impl PropertyCheck {
    fn new(name: &str) -> Self {
        PropertyCheck { name: name.into(), ..Default::default() }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.examples.len() < KEPT_EXAMPLES {
                self.examples.push(what());
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertiesOutcome {
    pub gradings: usize,
    pub checks: Vec<PropertyCheck>,
    #[serde(skip)]
    pub emitted: Vec<MackeyExpr>,
}

impl PropertiesOutcome {
    pub fn clean(&self) -> bool {
        self.checks.iter().all(|c| c.violations == 0)
    }
}

fn torsion_divides(group: &FgAbelianGroup, n: u64) -> bool {
    group.torsion().iter().all(|&t| n % t == 0)
}

/// Odd gradings are finite, torsion divides `n`, one-signed fixed dimensions
/// vanish, and answers depend only on fixed dimensions.
pub fn properties_suite(group: &GroupSpec, count: usize, seed: u64) -> PropertiesOutcome {
    let mut rng = rng_for(seed, group.n());
    let n = group.n();
    let mut finite = PropertyCheck::new("odd gradings are finite");
    let mut torsion = PropertyCheck::new("torsion is squarefree and divides n");
    let mut sign = PropertyCheck::new("one-signed fixed dimensions vanish");
    let mut independence = PropertyCheck::new("answers depend only on fixed dimensions");
    let mut emitted: HashSet<MackeyExpr> = HashSet::new();
    for _ in 0..count {
        let alpha = random_grading(group, &mut rng);
        let coeff = CoeffSystem::new(group, PrimeSet(rng.gen_range(0..1u32 << group.k())));
        let fd = alpha.fixed_dims();
        let z = cohomology_z(&alpha);
        let a = cohomology_a_mackey(&alpha, &coeff);
        let tag = || format!("alpha = {alpha}, coefficients {coeff}");
        if !fd.is_even() {
            finite.record(z.group_at_top.is_finite() && a.group_at_top.is_finite(), tag);
        }
        let levels_ok = group.all().subsets().all(|s| torsion_divides(&z.mackey.value_at(s), n));
        torsion.record(levels_ok && torsion_divides(&z.group_at_top, n) && torsion_divides(&a.group_at_top, n), tag);
        let vals = fd.values();
        if vals.iter().all(|&v| v > 0) || vals.iter().all(|&v| v < 0) {
            sign.record(z.group_at_top.is_zero() && a.group_at_top.is_zero(), tag);
        }
        let other = fd.reconstruct().expect("fixed dims of a grading").twist(random_unit(n, &mut rng));
        let z2 = cohomology_z(&other);
        let a2 = cohomology_a_mackey(&other, &coeff);
        let mut same = z.group_at_top == z2.group_at_top
            && z.mackey == z2.mackey
            && a.group_at_top == a2.group_at_top
            && cohomology_a_group(&alpha, &coeff) == a.group_at_top;
        if a.case != ZeroPattern::ManyZeros {
            same &= a.mackey == a2.mackey;
        }
        independence.record(same, || format!("{} vs {other}", tag()));
        emitted.insert(z.mackey);
        if let MackeyValue::Known(e) = a.mackey {
            emitted.insert(e);
        }
    }
    let mut emitted: Vec<MackeyExpr> = emitted.into_iter().collect();
    emitted.sort_by_cached_key(|e| e.to_string());
    PropertiesOutcome { gradings: count, checks: vec![finite, torsion, sign, independence], emitted }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSuiteOutcome {
    pub relations: RelationsReport,
    pub products: PropertyCheck,
    pub generation_failures: Vec<String>,
    pub duality: PropertyCheck,
    pub negative_products: PropertyCheck,
}

impl RingSuiteOutcome {
    pub fn clean(&self) -> bool {
        self.relations.is_ok()
            && self.products.violations == 0
            && self.generation_failures.is_empty()
            && self.duality.violations == 0
            && self.negative_products.violations == 0
    }
}

fn proper_divisors(group: &GroupSpec) -> Vec<u64> {
    group.divisors().into_iter().filter(|&d| d < group.n()).collect()
}

fn random_positive_class(group: &GroupSpec, rng: &mut impl Rng) -> RingClass {
    let divs = proper_divisors(group);
    let mut m = Monomial::one();
    for _ in 0..rng.gen_range(0..4) {
        let d = divs[rng.gen_range(0..divs.len())];
        if rng.gen_bool(0.5) {
            m.mul_u(d, 1);
        } else {
            m.mul_a(d, 1);
        }
    }
    class_of_monomial(group, rng.gen_range(-5..=5), &m).expect("u-exponents are non-negative")
}

fn random_class(group: &GroupSpec, rng: &mut impl Rng) -> RingClass {
    if rng.gen_bool(0.25) {
        RingClass::new(&random_odd_negative(group, rng), rng.gen_range(0..group.n() as i64))
    } else {
        random_positive_class(group, rng)
    }
}

/// Relations, random associativity and commutativity, generation by
/// monomials up to `max_terms` summands, order duality and vanishing of
/// products of negative classes.
pub fn ring_suite(group: &GroupSpec, seed: u64, triples: usize, duals: usize, max_terms: u64) -> RingSuiteOutcome {
    let mut rng = rng_for(seed, group.n());
    let mut products = PropertyCheck::new("associative and commutative");
    for _ in 0..triples {
        let (x, y, z) = (random_class(group, &mut rng), random_class(group, &mut rng), random_class(group, &mut rng));
        let ok = multiply(&multiply(&x, &y), &z) == multiply(&x, &multiply(&y, &z)) && multiply(&x, &y) == multiply(&y, &x);
        products.record(ok, || format!("{x} / {y} / {z}"));
    }
    let mut duality = PropertyCheck::new("order duality with 3 - xi - alpha");
    let mut negative_products = PropertyCheck::new("negative classes multiply to zero");
    for _ in 0..duals {
        let alpha = random_odd_negative(group, &mut rng);
        let partner = duality_partner(&alpha);
        let (h, hd) = (z_group(&alpha.fixed_dims()), z_group(&partner.fixed_dims()));
        duality.record(h.order() == hd.order(), || format!("{alpha}: {h} vs {partner}: {hd}"));
        let beta = random_odd_negative(group, &mut rng);
        let x = RingClass::new(&alpha, rng.gen_range(0..group.n() as i64));
        let y = RingClass::new(&beta, rng.gen_range(0..group.n() as i64));
        negative_products.record(multiply(&x, &y).is_zero(), || format!("{x} times {y}"));
    }
    RingSuiteOutcome {
        relations: relations_suite(group),
        products,
        generation_failures: ringrep_failures(group, max_terms).iter().map(|v| v.to_string()).collect(),
        duality,
        negative_products,
    }
}
