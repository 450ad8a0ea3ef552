use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::group::{GroupSpec, PrimeSet};
use super::RepError;

/// An element of `RO(C_n)`: `a_0 + Σ c_r ξ^r`, with exponents kept in the
/// folded range `1 ≤ r ≤ (n-1)/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VirtualRep {
    group: GroupSpec,
    trivial: i64,
    coeffs: BTreeMap<u64, i64>,
}

/// Folds an exponent into `1..=(n-1)/2`, or `None` when `ξ^r` is trivial.
pub fn fold_exponent(n: u64, r: i64) -> Option<u64> {
    let m = r.rem_euclid(n as i64) as u64;
    if m == 0 {
        None
    } else {
        Some(m.min(n - m))
    }
}

impl VirtualRep {
    pub fn zero(group: &GroupSpec) -> Self {
        VirtualRep { group: group.clone(), trivial: 0, coeffs: BTreeMap::new() }
    }

    pub fn trivial(group: &GroupSpec, a0: i64) -> Self {
        VirtualRep { group: group.clone(), trivial: a0, coeffs: BTreeMap::new() }
    }

    /// `c·ξ^r` for an arbitrary integer exponent.
    pub fn xi(group: &GroupSpec, r: i64, c: i64) -> Self {
        let mut v = Self::zero(group);
        v.add_xi(r, c);
        v
    }

    /// Builds `a_0 + Σ c_r ξ^r` from raw terms.
    pub fn from_terms(group: &GroupSpec, a0: i64, terms: &[(i64, i64)]) -> Self {
        let mut v = Self::trivial(group, a0);
        for &(r, c) in terms {
            v.add_xi(r, c);
        }
        v
    }

    /// Builds `a_0 + Σ e_d ξ^d` over divisors `d | n`, `d < n`.
    pub fn from_reduced(group: &GroupSpec, a0: i64, reduced: &BTreeMap<u64, i64>) -> Self {
        let mut v = Self::trivial(group, a0);
        for (&d, &c) in reduced {
            v.add_xi(d as i64, c);
        }
        v
    }

    pub fn add_xi(&mut self, r: i64, c: i64) {
        if c == 0 {
            return;
        }
        match fold_exponent(self.group.n(), r) {
            None => self.trivial += 2 * c,
            Some(f) => {
                let e = self.coeffs.entry(f).or_insert(0);
                *e += c;
                if *e == 0 {
                    self.coeffs.remove(&f);
                }
            }
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn trivial_part(&self) -> i64 {
        self.trivial
    }

    /// Raw (folded) coefficients `r ↦ c_r`.
    pub fn coeffs(&self) -> &BTreeMap<u64, i64> {
        &self.coeffs
    }

    /// Reduced coefficients `d ↦ Σ_{gcd(r,n)=d} c_r`.
    pub fn reduced(&self) -> BTreeMap<u64, i64> {
        let mut out = BTreeMap::new();
        for (&r, &c) in &self.coeffs {
            *out.entry(r.gcd(&self.group.n())).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// The reduced representative as a `VirtualRep`.
    pub fn to_reduced(&self) -> VirtualRep {
        Self::from_reduced(&self.group, self.trivial, &self.reduced())
    }

    pub fn dim(&self) -> i64 {
        self.trivial + 2 * self.coeffs.values().sum::<i64>()
    }

    /// True when no coefficient is negative (an actual representation).
    pub fn is_actual(&self) -> bool {
        self.trivial >= 0 && self.coeffs.values().all(|&c| c >= 0)
    }

    pub fn fixed_dims(&self) -> FixedDims {
        let g = &self.group;
        let mut dims = vec![self.trivial; g.num_divisors()];
        for (&r, &c) in &self.coeffs {
            let d = r.gcd(&g.n());
            let fixed_by = g.mask_of(d).expect("gcd divides n");
            for s in fixed_by.subsets() {
                dims[s.0 as usize] += 2 * c;
            }
        }
        FixedDims { group: g.clone(), dims }
    }

    /// `α^{C_d}` regarded as a representation of `C_n / C_d`.
    pub fn quotient_fixed(&self, d: u64) -> Result<VirtualRep, RepError> {
        let mask = self.group.mask_of(d).ok_or(RepError::NotADivisor(d, self.group.n()))?;
        let q = self.group.sub(mask.complement(self.group.k()));
        let mut out = VirtualRep::trivial(&q, self.trivial);
        for (&r, &c) in &self.coeffs {
            if r % d == 0 {
                out.add_xi((r / d) as i64, c);
            }
        }
        Ok(out)
    }

    /// Restriction to the subgroup `C_m`.
    pub fn restrict(&self, m: u64) -> Result<VirtualRep, RepError> {
        let mask = self.group.mask_of(m).ok_or(RepError::NotADivisor(m, self.group.n()))?;
        let h = self.group.sub(mask);
        let mut out = VirtualRep::trivial(&h, self.trivial);
        for (&r, &c) in &self.coeffs {
            out.add_xi((r % m) as i64, c);
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: i64) -> VirtualRep {
        let mut out = VirtualRep::trivial(&self.group, self.trivial * k);
        for (&r, &c) in &self.coeffs {
            out.add_xi(r as i64, c * k);
        }
        out
    }

    /// Replaces every `ξ^r` by `ξ^{rs}`.
    pub fn twist(&self, s: i64) -> VirtualRep {
        let mut out = VirtualRep::trivial(&self.group, self.trivial);
        for (&r, &c) in &self.coeffs {
            out.add_xi(r as i64 * s, c);
        }
        out
    }

    fn check_group(&self, other: &VirtualRep) {
        assert_eq!(self.group, other.group, "representations of different groups");
    }
}

impl Add for &VirtualRep {
    type Output = VirtualRep;

    fn add(self, rhs: &VirtualRep) -> VirtualRep {
        self.check_group(rhs);
        let mut out = self.clone();
        out.trivial += rhs.trivial;
        for (&r, &c) in &rhs.coeffs {
            out.add_xi(r as i64, c);
        }
        out
    }
}

impl Sub for &VirtualRep {
    type Output = VirtualRep;

    fn sub(self, rhs: &VirtualRep) -> VirtualRep {
        self + &(-rhs)
    }
}

impl Neg for &VirtualRep {
    type Output = VirtualRep;

    fn neg(self) -> VirtualRep {
        self.scale(-1)
    }
}

impl fmt::Display for VirtualRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(i64, String)> = Vec::new();
        for (&r, &c) in &self.coeffs {
            let base = if r == 1 { "ξ".to_string() } else { format!("ξ^{r}") };
            terms.push((c, base));
        }
        if self.trivial != 0 {
            terms.push((self.trivial, String::new()));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, base)) in terms.iter().enumerate() {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if base.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{base}")?;
            } else {
                write!(f, "{mag}{base}")?;
            }
        }
        Ok(())
    }
}

/// The vector `(|α^{C_d}|)_{d | n}`, indexed by prime subsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FixedDims {
    group: GroupSpec,
    dims: Vec<i64>,
}

impl FixedDims {
    /// Builds from a closure on prime subsets.
    pub fn from_fn(group: &GroupSpec, f: impl Fn(PrimeSet) -> i64) -> Self {
        let dims = (0..group.num_divisors()).map(|m| f(PrimeSet(m as u32))).collect();
        FixedDims { group: group.clone(), dims }
    }

    /// Builds from a map divisor ↦ dimension; every divisor must be present.
    pub fn from_divisor_map(group: &GroupSpec, map: &BTreeMap<u64, i64>) -> Result<Self, RepError> {
        let mut dims = vec![0; group.num_divisors()];
        for s in group.all().subsets() {
            let d = group.divisor(s);
            dims[s.0 as usize] = *map.get(&d).ok_or(RepError::MissingDivisor(d))?;
        }
        FixedDims::checked(group, dims)
    }

    pub fn checked(group: &GroupSpec, dims: Vec<i64>) -> Result<Self, RepError> {
        assert_eq!(dims.len(), group.num_divisors());
        let p = dims[0].rem_euclid(2);
        if dims.iter().any(|d| d.rem_euclid(2) != p) {
            return Err(RepError::MixedParity);
        }
        Ok(FixedDims { group: group.clone(), dims })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn at(&self, s: PrimeSet) -> i64 {
        self.dims[s.0 as usize]
    }

    pub fn at_divisor(&self, d: u64) -> Option<i64> {
        self.group.mask_of(d).map(|s| self.at(s))
    }

    /// `|α|`.
    pub fn total(&self) -> i64 {
        self.dims[0]
    }

    pub fn is_even(&self) -> bool {
        self.total().rem_euclid(2) == 0
    }

    /// Dimension at the subgroup generated by prime `i`.
    pub fn at_prime(&self, i: usize) -> i64 {
        self.at(PrimeSet::singleton(i))
    }

    /// Fixed dimensions of `α^{C_s}` as a representation of the quotient.
    pub fn quotient(&self, s: PrimeSet) -> FixedDims {
        let rest = s.complement(self.group.k());
        let q = self.group.sub(rest);
        FixedDims::from_fn(&q, |e| self.at(s.union(self.group.embed(rest, e))))
    }

    /// Fixed dimensions of the restriction to the subgroup `C_s`.
    pub fn restrict(&self, s: PrimeSet) -> FixedDims {
        let h = self.group.sub(s);
        FixedDims::from_fn(&h, |e| self.at(self.group.embed(s, e)))
    }

    /// Divisor-keyed view, ascending by divisor.
    pub fn by_divisor(&self) -> Vec<(u64, i64)> {
        self.group.masks_by_divisor().into_iter().map(|s| (self.group.divisor(s), self.at(s))).collect()
    }

    pub fn values(&self) -> &[i64] {
        &self.dims
    }

    /// The reduced representation with these fixed dimensions.
    pub fn reconstruct(&self) -> Result<VirtualRep, RepError> {
        let g = &self.group;
        let full = g.all();
        let a0 = self.at(full);
        let mut half = vec![0i64; g.num_divisors()];
        for s in full.subsets() {
            let diff = self.at(s) - a0;
            if diff.rem_euclid(2) != 0 {
                return Err(RepError::MixedParity);
            }
            half[s.0 as usize] = diff / 2;
        }
        let mut reduced = BTreeMap::new();
        for s in full.subsets() {
            if s == full {
                continue;
            }
            let mut e = 0i64;
            for t in full.minus(s).subsets() {
                let sup = s.union(t);
                if sup == full {
                    continue;
                }
                let sign = if t.len() % 2 == 0 { 1 } else { -1 };
                e += sign * half[sup.0 as usize];
            }
            if e != 0 {
                reduced.insert(g.divisor(s), e);
            }
        }
        let v = VirtualRep::from_reduced(g, a0, &reduced);
        debug_assert_eq!(&v.fixed_dims(), self);
        Ok(v)
    }
}

impl fmt::Display for FixedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.by_divisor().iter().map(|(d, v)| format!("{d}:{v}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}
