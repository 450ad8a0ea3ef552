use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::abelian::{columns_in_span, FgAbelianGroup, IntegerMatrix};
use crate::repring::{GroupSpec, PrimeSet};

use super::expr::{Factor, MackeyAtom, MackeyExpr};
use super::MackeyError;

/// Value of a Mackey functor at one level, as a presentation: `Z^generators`
/// modulo the columns of `relations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub generators: usize,
    pub relations: IntegerMatrix,
    pub group: FgAbelianGroup,
}

impl Level {
    pub fn new(generators: usize, relations: IntegerMatrix) -> Result<Self, MackeyError> {
        if relations.rows() != generators {
            return Err(MackeyError::Shape(format!(
                "relation vectors have length {} but the level has {} generators",
                relations.rows(),
                generators
            )));
        }
        let group = FgAbelianGroup::presented_by(generators, &relations)?;
        Ok(Level { generators, relations, group })
    }

    pub fn free(generators: usize) -> Self {
        Level { generators, relations: IntegerMatrix::zeros(generators, 0), group: FgAbelianGroup::free(generators) }
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    fn direct_sum(&self, other: &Level) -> Level {
        Level {
            generators: self.generators + other.generators,
            relations: self.relations.direct_sum(&other.relations),
            group: self.group.direct_sum(&other.group),
        }
    }
}

/// A concrete Mackey functor for `C_n`: one presented group per divisor and
/// restriction/transfer matrices on every cover `d | dp`. Conjugation by the
/// generator is stored only where it is not the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MackeyTable {
    group: GroupSpec,
    levels: Vec<Level>,
    res: BTreeMap<(PrimeSet, usize), IntegerMatrix>,
    tr: BTreeMap<(PrimeSet, usize), IntegerMatrix>,
    conj: BTreeMap<PrimeSet, IntegerMatrix>,
}

/// The cover pairs `(lower, i)` with `i ∉ lower`, in a fixed order.
pub fn covers(group: &GroupSpec) -> Vec<(PrimeSet, usize)> {
    let mut out = Vec::new();
    for s in group.masks_by_divisor() {
        for i in s.complement(group.k()).indices() {
            out.push((s, i));
        }
    }
    out
}

impl MackeyTable {
    /// Assembles a table, checking every matrix shape.
    pub fn new(
        group: &GroupSpec,
        levels: Vec<Level>,
        res: BTreeMap<(PrimeSet, usize), IntegerMatrix>,
        tr: BTreeMap<(PrimeSet, usize), IntegerMatrix>,
        conj: BTreeMap<PrimeSet, IntegerMatrix>,
    ) -> Result<Self, MackeyError> {
        if levels.len() != group.num_divisors() {
            return Err(MackeyError::Shape(format!("expected {} levels, got {}", group.num_divisors(), levels.len())));
        }
        for (s, i) in covers(group) {
            let lo = &levels[s.0 as usize];
            let hi = &levels[s.with(i).0 as usize];
            let r = res.get(&(s, i)).ok_or_else(|| missing("restriction", group, s, i))?;
            let t = tr.get(&(s, i)).ok_or_else(|| missing("transfer", group, s, i))?;
            if (r.rows(), r.cols()) != (lo.generators, hi.generators) {
                return Err(bad_shape("restriction", group, s, i, r, lo.generators, hi.generators));
            }
            if (t.rows(), t.cols()) != (hi.generators, lo.generators) {
                return Err(bad_shape("transfer", group, s, i, t, hi.generators, lo.generators));
            }
        }
        if res.len() != covers(group).len() || tr.len() != covers(group).len() {
            return Err(MackeyError::Shape("maps given for pairs that are not covers".into()));
        }
        for (s, c) in &conj {
            let g = levels.get(s.0 as usize).ok_or_else(|| MackeyError::Shape("conjugation level".into()))?.generators;
            if (c.rows(), c.cols()) != (g, g) {
                return Err(MackeyError::Shape(format!("conjugation at level {} has wrong shape", group.divisor(*s))));
            }
        }
        let conj = conj.into_iter().filter(|(s, c)| *c != IntegerMatrix::identity(levels[s.0 as usize].generators)).collect();
        Ok(MackeyTable { group: group.clone(), levels, res, tr, conj })
    }

    pub fn zero(group: &GroupSpec) -> Self {
        let levels = vec![Level::zero(); group.num_divisors()];
        let mut res = BTreeMap::new();
        let mut tr = BTreeMap::new();
        for c in covers(group) {
            res.insert(c, IntegerMatrix::zeros(0, 0));
            tr.insert(c, IntegerMatrix::zeros(0, 0));
        }
        MackeyTable { group: group.clone(), levels, res, tr, conj: BTreeMap::new() }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn level(&self, s: PrimeSet) -> &Level {
        &self.levels[s.0 as usize]
    }

    pub fn value(&self, s: PrimeSet) -> &FgAbelianGroup {
        &self.levels[s.0 as usize].group
    }

    pub fn value_at_divisor(&self, d: u64) -> Option<&FgAbelianGroup> {
        self.group.mask_of(d).map(|s| self.value(s))
    }

    pub fn cover_res(&self, s: PrimeSet, i: usize) -> &IntegerMatrix {
        &self.res[&(s, i)]
    }

    pub fn cover_tr(&self, s: PrimeSet, i: usize) -> &IntegerMatrix {
        &self.tr[&(s, i)]
    }

    pub fn conjugation(&self, s: PrimeSet) -> Option<&IntegerMatrix> {
        self.conj.get(&s)
    }

    pub fn conjugation_trivial(&self) -> bool {
        self.conj.is_empty()
    }

    /// Restriction from level `a` down to level `b ⊆ a`, composed along
    /// covers removing primes in ascending order.
    pub fn res(&self, a: PrimeSet, b: PrimeSet) -> IntegerMatrix {
        self.res_along(a, b, &a.minus(b).indices().collect::<Vec<_>>())
    }

    /// Restriction along an explicit order of removed primes.
    pub fn res_along(&self, a: PrimeSet, b: PrimeSet, order: &[usize]) -> IntegerMatrix {
        assert!(b.is_subset_of(a));
        let mut m = IntegerMatrix::identity(self.level(a).generators);
        let mut cur = a;
        for &i in order {
            let lower = cur.without(i);
            m = &self.res[&(lower, i)] * &m;
            cur = lower;
        }
        assert_eq!(cur, b);
        m
    }

    /// Transfer from level `b` up to level `a ⊇ b`.
    pub fn tr(&self, b: PrimeSet, a: PrimeSet) -> IntegerMatrix {
        self.tr_along(b, a, &a.minus(b).indices().collect::<Vec<_>>())
    }

    pub fn tr_along(&self, b: PrimeSet, a: PrimeSet, order: &[usize]) -> IntegerMatrix {
        assert!(b.is_subset_of(a));
        let mut m = IntegerMatrix::identity(self.level(b).generators);
        let mut cur = b;
        for &i in order {
            m = &self.tr[&(cur, i)] * &m;
            cur = cur.with(i);
        }
        assert_eq!(cur, a);
        m
    }

    /// Matrix of conjugation by `ρ^e` at level `s`.
    pub fn conj_power(&self, s: PrimeSet, e: u64) -> IntegerMatrix {
        let g = self.level(s).generators;
        match self.conj.get(&s) {
            None => IntegerMatrix::identity(g),
            Some(c) => {
                let e = e % (self.group.n() / self.group.divisor(s));
                let mut m = IntegerMatrix::identity(g);
                for _ in 0..e {
                    m = c * &m;
                }
                m
            }
        }
    }

    /// True when `x - y` (maps into level `s`) vanishes modulo its relations.
    pub fn equal_mod(&self, s: PrimeSet, x: &IntegerMatrix, y: &IntegerMatrix) -> bool {
        columns_in_span(&x.sub(y), &self.level(s).relations)
    }

    pub fn direct_sum(&self, other: &MackeyTable) -> MackeyTable {
        assert_eq!(self.group, other.group);
        let levels = self.levels.iter().zip(&other.levels).map(|(a, b)| a.direct_sum(b)).collect();
        let res = self.res.iter().map(|(k, m)| (*k, m.direct_sum(&other.res[k]))).collect();
        let tr = self.tr.iter().map(|(k, m)| (*k, m.direct_sum(&other.tr[k]))).collect();
        let mut conj = BTreeMap::new();
        for s in self.group.all().subsets() {
            if self.conj.contains_key(&s) || other.conj.contains_key(&s) {
                conj.insert(s, self.conj_power(s, 1).direct_sum(&other.conj_power(s, 1)));
            }
        }
        MackeyTable { group: self.group.clone(), levels, res, tr, conj }
    }

    /// Levelwise groups, ascending by divisor.
    pub fn values_by_divisor(&self) -> Vec<(u64, FgAbelianGroup)> {
        self.group.masks_by_divisor().into_iter().map(|s| (self.group.divisor(s), self.value(s).clone())).collect()
    }
}

fn missing(kind: &str, g: &GroupSpec, s: PrimeSet, i: usize) -> MackeyError {
    MackeyError::Shape(format!("missing {kind} between levels {} and {}", g.divisor(s), g.divisor(s.with(i))))
}

fn bad_shape(kind: &str, g: &GroupSpec, s: PrimeSet, i: usize, m: &IntegerMatrix, r: usize, c: usize) -> MackeyError {
    MackeyError::Shape(format!(
        "{kind} between levels {} and {} is {}x{}, expected {}x{}",
        g.divisor(s),
        g.divisor(s.with(i)),
        m.rows(),
        m.cols(),
        r,
        c
    ))
}

struct FactorData {
    top: Level,
    bottom: Level,
    res: IntegerMatrix,
    tr: IntegerMatrix,
}

fn factor_data(f: Factor, p: u64) -> FactorData {
    let int = |v: i64| BigInt::from(v);
    let pz = int(p as i64);
    match f {
        Factor::ConstZ => FactorData {
            top: Level::free(1),
            bottom: Level::free(1),
            res: IntegerMatrix::from_rows(&[vec![int(1)]]),
            tr: IntegerMatrix::from_rows(&[vec![pz]]),
        },
        Factor::DualZ => FactorData {
            top: Level::free(1),
            bottom: Level::free(1),
            res: IntegerMatrix::from_rows(&[vec![pz]]),
            tr: IntegerMatrix::from_rows(&[vec![int(1)]]),
        },
        Factor::Bracket(c) => FactorData {
            top: if c == 0 {
                Level::free(1)
            } else {
                Level::new(1, IntegerMatrix::from_rows(&[vec![int(c as i64)]])).expect("cyclic level")
            },
            bottom: Level::zero(),
            res: IntegerMatrix::zeros(0, 1),
            tr: IntegerMatrix::zeros(1, 0),
        },
        Factor::Burnside => FactorData {
            top: Level::free(2),
            bottom: Level::free(1),
            res: IntegerMatrix::from_rows(&[vec![int(1), pz]]),
            tr: IntegerMatrix::from_rows(&[vec![int(0)], vec![int(1)]]),
        },
    }
}

fn atom_table(group: &GroupSpec, atom: &MackeyAtom) -> MackeyTable {
    let data: Vec<FactorData> =
        atom.factors().iter().zip(group.primes()).map(|(&f, &p)| factor_data(f, p)).collect();
    let lvl = |d: &FactorData, top: bool| if top { d.top.clone() } else { d.bottom.clone() };
    let mut levels = Vec::with_capacity(group.num_divisors());
    for m in 0..group.num_divisors() {
        let s = PrimeSet(m as u32);
        let parts: Vec<Level> = data.iter().enumerate().map(|(i, d)| lvl(d, s.contains(i))).collect();
        levels.push(tensor_levels(&parts));
    }
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for (s, i) in covers(group) {
        let mut r = IntegerMatrix::identity(1);
        let mut t = IntegerMatrix::identity(1);
        for (j, d) in data.iter().enumerate() {
            if j == i {
                r = r.kronecker(&d.res);
                t = t.kronecker(&d.tr);
            } else {
                let g = lvl(d, s.contains(j)).generators;
                r = r.kronecker(&IntegerMatrix::identity(g));
                t = t.kronecker(&IntegerMatrix::identity(g));
            }
        }
        res.insert((s, i), r);
        tr.insert((s, i), t);
    }
    MackeyTable { group: group.clone(), levels, res, tr, conj: BTreeMap::new() }
}

fn tensor_levels(parts: &[Level]) -> Level {
    let mut gens = 1usize;
    let mut rel = IntegerMatrix::zeros(1, 0);
    for p in parts {
        let left = rel.kronecker(&IntegerMatrix::identity(p.generators));
        let right = IntegerMatrix::identity(gens).kronecker(&p.relations);
        gens *= p.generators;
        rel = if left.cols() == 0 {
            right
        } else if right.cols() == 0 {
            left
        } else {
            left.hstack(&right)
        };
        if rel.rows() != gens {
            rel = IntegerMatrix::zeros(gens, 0);
        }
    }
    Level::new(gens, rel).expect("tensor of presentations")
}

/// The concrete table of a symbolic expression.
pub fn concretize(expr: &MackeyExpr) -> MackeyTable {
    let group = expr.group();
    expr.atoms().iter().fold(MackeyTable::zero(group), |acc, a| acc.direct_sum(&atom_table(group, a)))
}
