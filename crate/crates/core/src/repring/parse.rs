//! Grading expressions such as `2*xi^3 - 2*xi^1 - 1`.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := int ('*'? xi)? | xi
//! xi     := ('xi' | 'ξ') ('^' sign? int)?
//! ```
//! Whitespace is allowed between any two tokens. A bare integer is a multiple
//! of the trivial one-dimensional representation.

use super::group::GroupSpec;
use super::rep::VirtualRep;
use super::ParseError;

/// Literals above this bound are rejected so that sums cannot overflow.
pub const MAX_LITERAL: i64 = 1_000_000_000_000;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn peek_char(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError { position: self.pos, message: message.into() }
    }

    fn int(&mut self) -> Result<Option<i64>, ParseError> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Ok(None);
        }
        let text = &self.rest()[..digits];
        let v = text
            .parse::<i64>()
            .ok()
            .filter(|v| *v <= MAX_LITERAL)
            .ok_or_else(|| self.err(format!("integer {text} out of range")))?;
        self.pos += digits;
        Ok(Some(v))
    }

    fn xi(&mut self) -> bool {
        self.eat("xi") || self.eat("ξ")
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        if !self.eat("^") {
            return Ok(1);
        }
        let neg = if self.eat("-") {
            true
        } else {
            self.eat("+");
            false
        };
        let v = self.int()?.ok_or_else(|| self.err("expected exponent after '^'"))?;
        Ok(if neg { -v } else { v })
    }
}

/// Parses a grading expression for the group `group`.
pub fn parse_grading(group: &GroupSpec, src: &str) -> Result<VirtualRep, ParseError> {
    let mut c = Cursor { src, pos: 0 };
    let mut out = VirtualRep::zero(group);
    let mut first = true;
    loop {
        let sign: i64 = if c.eat("+") {
            1
        } else if c.eat("-") {
            -1
        } else if first {
            1
        } else {
            return Err(c.err("expected '+' or '-'"));
        };
        if c.peek_char().is_none() {
            return Err(c.err("expected a term"));
        }
        let coeff = c.int()?;
        let star = coeff.is_some() && c.eat("*");
        if c.xi() {
            let r = c.exponent()?;
            let k = coeff.unwrap_or(1).checked_mul(sign).ok_or_else(|| c.err("coefficient overflow"))?;
            out.add_xi(r, k);
        } else if star {
            return Err(c.err("expected 'xi' after '*'"));
        } else if let Some(k) = coeff {
            out = &out + &VirtualRep::trivial(group, k * sign);
        } else {
            return Err(c.err("expected an integer or 'xi'"));
        }
        first = false;
        if c.peek_char().is_none() {
            break;
        }
    }
    Ok(out)
}
