use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::repring::GroupSpec;

use super::CellularError;

/// A `Z`-combination of the `G`-maps `G/C_a → G/C_b` (`a | b`) sending the
/// base coset to `ρ^t C_b`, stored as sorted `(t mod n/b, coefficient)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GMapCombo(pub Vec<(u64, i64)>);

impl GMapCombo {
    pub fn single(t: u64, c: i64) -> Self {
        GMapCombo(vec![(t, c)])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the coefficients.
    pub fn augmentation(&self) -> i64 {
        self.0.iter().map(|(_, c)| c).sum()
    }

    fn normalize(mut terms: Vec<(u64, i64)>) -> Self {
        terms.sort_unstable();
        let mut out: Vec<(u64, i64)> = Vec::with_capacity(terms.len());
        for (t, c) in terms {
            match out.last_mut() {
                Some((lt, lc)) if *lt == t => *lc += c,
                _ => out.push((t, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        GMapCombo(out)
    }

    pub fn add_term(&mut self, t: u64, c: i64) {
        let mut v = std::mem::take(&mut self.0);
        v.push((t, c));
        *self = Self::normalize(v);
    }

    pub fn add(&self, other: &GMapCombo) -> GMapCombo {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self::normalize(v)
    }

    pub fn scaled(&self, k: i64) -> GMapCombo {
        Self::normalize(self.0.iter().map(|&(t, c)| (t, c * k)).collect())
    }

    /// `other ∘ self`, landing in an orbit whose points are `Z/modulus`.
    pub fn then(&self, other: &GMapCombo, modulus: u64) -> GMapCombo {
        let mut v = Vec::with_capacity(self.0.len() * other.0.len());
        for &(t1, c1) in &self.0 {
            for &(t2, c2) in &other.0 {
                v.push(((t1 + t2) % modulus, c1 * c2));
            }
        }
        Self::normalize(v)
    }

    /// `±[t]`, an isomorphism when source and target isotropy agree.
    pub fn as_unit(&self) -> Option<(u64, i64)> {
        match self.0.as_slice() {
            [(t, c)] if c.abs() == 1 => Some((*t, *c)),
            _ => None,
        }
    }
}

/// One step of a boundary: target cell index, source cell index, G-maps.
pub type Entries = BTreeMap<(usize, usize), GMapCombo>;

/// Where a cell of a tensor product comes from: left cell, right cell, and
/// the orbit index `s` of `G/C_a × G/C_b` (representative `(s, 0)`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductOrigin {
    pub left: usize,
    pub right: usize,
    pub orbit: u64,
}

/// A complex of permutation modules `Z[G/C_d]`: `cells[q]` lists the
/// isotropy divisor of every orbit of cells in degree `q`, and
/// `boundary[q]` maps degree `q` to degree `q - 1` (`boundary[0]` is empty).
/// Degrees are those of the reduced complex of the sphere `S^V`; degree `q`
/// here is degree `q - 1` of the augmented complex of the unit sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivChainComplex {
    group: GroupSpec,
    cells: Vec<Vec<u64>>,
    boundary: Vec<Entries>,
}

/// The `G`-orbit of `(x mod n/a, y mod n/b)` in `G/C_a × G/C_b` as
/// `(orbit index, translation from the representative)`.
pub fn locate_pair(n: u64, a: u64, b: u64, x: u64, y: u64) -> (u64, u64) {
    let (pa, pb) = (n / a, n / b);
    let orbits = n / a.lcm(&b);
    let (x, y) = (x % pa, y % pb);
    let s = (x + pa * pb - y % orbits) % orbits;
    let period = n / a.gcd(&b);
    let u = (0..period).find(|&u| (s + u) % pa == x && u % pb == y).expect("pair lies in its orbit");
    (s, u)
}

impl EquivChainComplex {
    pub fn new(group: &GroupSpec, cells: Vec<Vec<u64>>, boundary: Vec<Entries>) -> Result<Self, CellularError> {
        let c = EquivChainComplex { group: group.clone(), cells, boundary };
        c.validate()?;
        Ok(c)
    }

    /// `Z` concentrated in degree 0 on the orbit `G/C_d`.
    pub fn orbit(group: &GroupSpec, d: u64) -> Self {
        EquivChainComplex { group: group.clone(), cells: vec![vec![d]], boundary: vec![Entries::new()] }
    }

    /// The reduced complex of `S^{ξ^r}`: `G/G ← G/C_d ← G/C_d` with the
    /// projection and `ρ^t - 1`, `d = gcd(r, n)`, `t = (r/d)^{-1} mod n/d`
    /// taken smallest positive.
    pub fn circle(group: &GroupSpec, r: u64) -> Result<Self, CellularError> {
        let n = group.n();
        if r == 0 || r >= n {
            return Err(CellularError::InvalidExponent(r));
        }
        let d = r.gcd(&n);
        let q = n / d;
        let t = if q == 1 { 0 } else { (1..q).find(|t| ((r / d) * t) % q == 1).expect("unit mod n/d") };
        Self::circle_lifted(group, r, t)
    }

    /// The same complex built from an arbitrary lift `t` of the inverse.
    pub fn circle_lifted(group: &GroupSpec, r: u64, t: u64) -> Result<Self, CellularError> {
        let n = group.n();
        if r == 0 || r >= n {
            return Err(CellularError::InvalidExponent(r));
        }
        let d = r.gcd(&n);
        let q = n / d;
        if ((r / d) as u128 * t as u128) % q as u128 != 1 % q as u128 {
            return Err(CellularError::Malformed(format!("{t} does not invert {} mod {q}", r / d)));
        }
        let mut b1 = Entries::new();
        b1.insert((0, 0), GMapCombo::single(0, 1));
        let mut b2 = Entries::new();
        let mut rho = GMapCombo::single(t % q, 1);
        rho.add_term(0, -1);
        if !rho.is_zero() {
            b2.insert((0, 0), rho);
        }
        Ok(EquivChainComplex { group: group.clone(), cells: vec![vec![n], vec![d], vec![d]], boundary: vec![Entries::new(), b1, b2] })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// Highest degree carrying a cell slot.
    pub fn top_degree(&self) -> usize {
        self.cells.len().saturating_sub(1)
    }

    pub fn cells(&self, q: usize) -> &[u64] {
        self.cells.get(q).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Cells in augmented degree `q` (the reduced degree `q + 1`).
    pub fn augmented_cells(&self, q: i64) -> &[u64] {
        if q < -1 {
            &[]
        } else {
            self.cells((q + 1) as usize)
        }
    }

    pub fn boundary(&self, q: usize) -> Option<&Entries> {
        self.boundary.get(q)
    }

    pub fn num_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    fn validate(&self) -> Result<(), CellularError> {
        let n = self.group.n();
        if self.boundary.len() != self.cells.len() {
            return Err(CellularError::Malformed("one boundary per degree".into()));
        }
        for (q, cs) in self.cells.iter().enumerate() {
            if cs.iter().any(|d| n % d != 0) {
                return Err(CellularError::Malformed(format!("isotropy in degree {q} does not divide n")));
            }
        }
        for (q, entries) in self.boundary.iter().enumerate() {
            for (&(y, x), combo) in entries {
                if q == 0 || y >= self.cells[q - 1].len() || x >= self.cells[q].len() {
                    return Err(CellularError::Malformed(format!("entry ({y}, {x}) out of range in degree {q}")));
                }
                let (a, b) = (self.cells[q][x], self.cells[q - 1][y]);
                if b % a != 0 || combo.0.iter().any(|(t, _)| *t >= n / b) {
                    return Err(CellularError::Malformed(format!("entry ({y}, {x}) in degree {q} is not a G-map")));
                }
            }
        }
        Ok(())
    }

    /// Formal `∂ ∘ ∂` in every degree; empty when the complex is a complex.
    pub fn boundary_squared_defects(&self) -> Vec<(usize, usize, usize)> {
        let n = self.group.n();
        let mut out = Vec::new();
        for q in 2..self.cells.len() {
            let mut acc: BTreeMap<(usize, usize), GMapCombo> = BTreeMap::new();
            for (&(y, x), c1) in &self.boundary[q] {
                for (&(z, y2), c2) in &self.boundary[q - 1] {
                    if y2 != y {
                        continue;
                    }
                    let modulus = n / self.cells[q - 2][z];
                    let e = acc.entry((z, x)).or_default();
                    *e = e.add(&c1.then(c2, modulus));
                }
            }
            for ((z, x), c) in acc {
                if !c.is_zero() {
                    out.push((q, z, x));
                }
            }
        }
        out
    }

    /// Tensor product with diagonal action and Koszul signs, together with
    /// the origin of every product cell.
    pub fn tensor_with_origins(&self, other: &EquivChainComplex) -> (EquivChainComplex, Vec<Vec<ProductOrigin>>) {
        assert_eq!(self.group, other.group);
        let n = self.group.n();
        let top = self.top_degree() + other.top_degree();
        let mut cells: Vec<Vec<u64>> = vec![Vec::new(); top + 1];
        let mut origins: Vec<Vec<ProductOrigin>> = vec![Vec::new(); top + 1];
        let mut index: Vec<BTreeMap<(usize, usize, usize, u64), usize>> = vec![BTreeMap::new(); top + 1];
        for (i, ca) in self.cells.iter().enumerate() {
            for (j, cb) in other.cells.iter().enumerate() {
                for (l, &a) in ca.iter().enumerate() {
                    for (r, &b) in cb.iter().enumerate() {
                        for s in 0..n / a.lcm(&b) {
                            index[i + j].insert((i, l, r, s), cells[i + j].len());
                            cells[i + j].push(a.gcd(&b));
                            origins[i + j].push(ProductOrigin { left: l, right: r, orbit: s });
                        }
                    }
                }
            }
        }
        // Degree split of each product cell, recovered from the index.
        let mut split: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
        for (q, idx) in index.iter().enumerate() {
            split[q] = vec![0; cells[q].len()];
            for (&(i, _, _, _), &pos) in idx {
                split[q][pos] = i;
            }
        }
        let mut boundary: Vec<Entries> = vec![Entries::new(); top + 1];
        for q in 1..=top {
            for (pos, o) in origins[q].iter().enumerate() {
                let i = split[q][pos];
                let j = q - i;
                let (a, b) = (self.cells[i][o.left], other.cells[j][o.right]);
                // ∂ on the left factor.
                if i > 0 {
                    for (&(y, x), combo) in &self.boundary[i] {
                        if x != o.left {
                            continue;
                        }
                        let a2 = self.cells[i - 1][y];
                        for &(t, c) in &combo.0 {
                            let (s2, u) = locate_pair(n, a2, b, o.orbit + t, 0);
                            let target = index[q - 1][&(i - 1, y, o.right, s2)];
                            boundary[q].entry((target, pos)).or_default().add_term(u, c);
                        }
                    }
                }
                // ∂ on the right factor, with sign (-1)^i.
                if j > 0 {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    for (&(y, x), combo) in &other.boundary[j] {
                        if x != o.right {
                            continue;
                        }
                        let b2 = other.cells[j - 1][y];
                        for &(t, c) in &combo.0 {
                            let (s2, u) = locate_pair(n, a, b2, o.orbit, t);
                            let target = index[q - 1][&(i, o.left, y, s2)];
                            boundary[q].entry((target, pos)).or_default().add_term(u, sign * c);
                        }
                    }
                }
            }
            boundary[q].retain(|_, c| !c.is_zero());
        }
        (EquivChainComplex { group: self.group.clone(), cells, boundary }, origins)
    }

    pub fn tensor(&self, other: &EquivChainComplex) -> EquivChainComplex {
        self.tensor_with_origins(other).0
    }

    /// Shifts every degree up by `k` (suspension by a trivial `R^k`).
    pub fn shifted(&self, k: usize) -> EquivChainComplex {
        let mut cells = vec![Vec::new(); k];
        cells.extend(self.cells.iter().cloned());
        let mut boundary = vec![Entries::new(); k];
        boundary.extend(self.boundary.iter().cloned());
        EquivChainComplex { group: self.group.clone(), cells, boundary }
    }

    /// Cancels pairs of cells joined by a boundary entry `±ρ^t` between orbits
    /// of equal isotropy (Gaussian elimination in the orbit category). The
    /// result is chain homotopy equivalent after evaluation in any Mackey
    /// functor.
    pub fn reduced(&self) -> EquivChainComplex {
        let n = self.group.n();
        let mut cells = self.cells.clone();
        let mut boundary = self.boundary.clone();
        let mut alive: Vec<Vec<bool>> = cells.iter().map(|c| vec![true; c.len()]).collect();
        for q in (1..cells.len()).rev() {
            loop {
                let pivot = boundary[q].iter().find_map(|(&(y, x), combo)| {
                    if cells[q][x] != cells[q - 1][y] {
                        return None;
                    }
                    combo.as_unit().map(|(t, c)| (y, x, t, c))
                });
                let Some((y, x, t, c)) = pivot else { break };
                let a = cells[q][x];
                let inv = GMapCombo::single((n / a - t) % (n / a), c);
                let column: Vec<(usize, GMapCombo)> = boundary[q]
                    .iter()
                    .filter(|(&(y2, x2), _)| x2 == x && y2 != y)
                    .map(|(&(y2, _), v)| (y2, v.clone()))
                    .collect();
                let row: Vec<(usize, GMapCombo)> = boundary[q]
                    .iter()
                    .filter(|(&(y2, x2), _)| y2 == y && x2 != x)
                    .map(|(&(_, x2), v)| (x2, v.clone()))
                    .collect();
                for (y2, cv) in &column {
                    let modulus = n / cells[q - 1][*y2];
                    for (x2, bv) in &row {
                        let update = bv.then(&inv, n / a).then(cv, modulus).scaled(-1);
                        let e = boundary[q].entry((*y2, *x2)).or_default();
                        *e = e.add(&update);
                    }
                }
                boundary[q].retain(|&(y2, x2), v| y2 != y && x2 != x && !v.is_zero());
                if q + 1 < cells.len() {
                    boundary[q + 1].retain(|&(y2, _), _| y2 != x);
                }
                boundary[q - 1].retain(|&(_, x2), _| x2 != y);
                alive[q][x] = false;
                alive[q - 1][y] = false;
            }
        }
        // Compact the surviving cells.
        let mut remap: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        for (q, cs) in cells.iter_mut().enumerate() {
            let mut map = vec![usize::MAX; cs.len()];
            let mut kept = Vec::new();
            for (i, &d) in cs.iter().enumerate() {
                if alive[q][i] {
                    map[i] = kept.len();
                    kept.push(d);
                }
            }
            *cs = kept;
            remap.push(map);
        }
        let boundary = boundary
            .into_iter()
            .enumerate()
            .map(|(q, entries)| {
                entries
                    .into_iter()
                    .map(|((y, x), v)| ((remap[q - 1][y], remap[q][x]), v))
                    .collect::<Entries>()
            })
            .collect();
        while cells.len() > 1 && cells.last().is_some_and(Vec::is_empty) {
            cells.pop();
        }
        let mut out = EquivChainComplex { group: self.group.clone(), cells, boundary };
        out.boundary.truncate(out.cells.len());
        out
    }
}
