//! Monomials in the classes `u_{ξ^d}` and `a_{ξ^d}`, written as
//! `3 u(3)^2 a(1) u(5)^-1`: an optional integer coefficient followed by
//! factors `u(d)` or `a(d)` with an optional exponent `^e`. `a`-exponents
//! must be non-negative; `d` must be a proper divisor of `n`. The string
//! `1` is the unit.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::repring::{GroupSpec, ParseError, VirtualRep};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    /// `d ↦ e_d`.
    pub u: BTreeMap<u64, i64>,
    /// `d ↦ f_d ≥ 0`.
    pub a: BTreeMap<u64, u64>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn u(d: u64, e: i64) -> Self {
        let mut m = Self::default();
        m.mul_u(d, e);
        m
    }

    pub fn a(d: u64, f: u64) -> Self {
        let mut m = Self::default();
        m.mul_a(d, f);
        m
    }

    pub fn mul_u(&mut self, d: u64, e: i64) {
        let v = self.u.entry(d).or_insert(0);
        *v += e;
        if *v == 0 {
            self.u.remove(&d);
        }
    }

    pub fn mul_a(&mut self, d: u64, f: u64) {
        if f > 0 {
            *self.a.entry(d).or_insert(0) += f;
        }
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (&d, &e) in &other.u {
            out.mul_u(d, e);
        }
        for (&d, &f) in &other.a {
            out.mul_a(d, f);
        }
        out
    }

    pub fn a_degree(&self) -> u64 {
        self.a.values().sum()
    }

    /// `Σ e_d(ξ^d - 2) + Σ f_d ξ^d`.
    pub fn grading(&self, group: &GroupSpec) -> VirtualRep {
        let mut v = VirtualRep::zero(group);
        for (&d, &e) in &self.u {
            v = &v + &VirtualRep::from_terms(group, -2 * e, &[(d as i64, e)]);
        }
        for (&d, &f) in &self.a {
            v.add_xi(d as i64, f as i64);
        }
        v
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (&d, &e) in &self.u {
            parts.push(if e == 1 { format!("u({d})") } else { format!("u({d})^{e}") });
        }
        for (&d, &k) in &self.a {
            parts.push(if k == 1 { format!("a({d})") } else { format!("a({d})^{k}") });
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, t: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(t) {
            self.pos += t.len();
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError { position: self.pos, message: msg.into() }
    }

    fn int(&mut self) -> Result<Option<i64>, ParseError> {
        self.skip_ws();
        let neg = self.src[self.pos..].starts_with('-');
        let start = self.pos + usize::from(neg);
        let digits = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return if neg { Err(self.err("expected digits after '-'")) } else { Ok(None) };
        }
        let text = &self.src[start..start + digits];
        let v: i64 = text
            .parse::<i64>()
            .ok()
            .filter(|v| *v <= 1_000_000)
            .ok_or_else(|| self.err(format!("integer {text} out of range")))?;
        self.pos = start + digits;
        Ok(Some(if neg { -v } else { v }))
    }
}

/// Parses `coefficient? factor*` into a coefficient and a monomial.
pub fn parse_monomial(group: &GroupSpec, src: &str) -> Result<(i64, Monomial), ParseError> {
    let mut c = Cursor { src, pos: 0 };
    let mut out = Monomial::one();
    let mut coeff = 1i64;
    c.skip_ws();
    if let Some(k) = c.int()? {
        coeff = k;
    }
    let mut any = false;
    loop {
        c.skip_ws();
        if c.pos == src.len() {
            break;
        }
        let is_u = if c.eat("u") {
            true
        } else if c.eat("a") {
            false
        } else {
            return Err(c.err("expected 'u(' or 'a('"));
        };
        if !c.eat("(") {
            return Err(c.err("expected '('"));
        }
        let at = c.pos;
        let d = c.int()?.ok_or_else(|| c.err("expected a divisor"))?;
        if d <= 0 || group.n() % d as u64 != 0 || d as u64 == group.n() {
            return Err(ParseError { position: at, message: format!("{d} is not a proper divisor of {}", group.n()) });
        }
        if !c.eat(")") {
            return Err(c.err("expected ')'"));
        }
        let e = if c.eat("^") { c.int()?.ok_or_else(|| c.err("expected an exponent"))? } else { 1 };
        if is_u {
            out.mul_u(d as u64, e);
        } else if e < 0 {
            return Err(c.err("a-classes cannot have negative exponents"));
        } else {
            out.mul_a(d as u64, e as u64);
        }
        any = true;
    }
    if !any && src.trim().is_empty() {
        return Err(ParseError { position: 0, message: "empty monomial".into() });
    }
    Ok((coeff, out))
}
