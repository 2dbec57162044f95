//! Recursive-descent parser for half-integers, characters, segments,
//! multisegments and representation expressions.
//!
//! ```text
//! halfint  := ['-'|'+'] digits ['/' digits]
//! char     := term ('*' term)*
//! term     := 'nu' ['^' power] | ident ['^' int] | '1'
//! power    := '{' halfint '}' | halfint
//! segment  := [label] '[' halfint ['..' halfint] ']'
//! mseg     := '{' [segment (',' segment)*] '}'
//! expr     := factor ('x' factor)*
//! factor   := 'Z' mseg | 'L' mseg | 'char(' int ',' char ')'
//!           | 'St(' int ',' char ')' | '(' expr ')' | char
//! ```
//! A bare character in an expression is a character of `G_1`.

use crate::arith::{CharLabel, FormalCharacter, HalfInt};
use crate::error::{Error, Result};
use crate::reps::ReprExpr;
use crate::segments::{Multisegment, Segment};

const RESERVED: &[&str] = &["nu", "x", "Z", "L", "char", "St"];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.pos, msg))
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    /// Identifier at the cursor without consuming it.
    fn peek_ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let end = chars
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_'))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        Some(&rest[..end])
    }

    fn ident(&mut self) -> Result<&'a str> {
        match self.peek_ident() {
            Some(id) => {
                self.pos += id.len();
                Ok(id)
            }
            None => self.err("expected identifier"),
        }
    }

    fn digits(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if end == 0 {
            return self.err("expected digits");
        }
        let v = rest[..end].parse::<i64>().or_else(|_| self.err("integer overflow"))?;
        self.pos += end;
        Ok(v)
    }

    fn int(&mut self) -> Result<i64> {
        let neg = if self.eat("-") {
            true
        } else {
            self.eat("+");
            false
        };
        let v = self.digits()?;
        Ok(if neg { -v } else { v })
    }

    fn halfint(&mut self) -> Result<HalfInt> {
        let start = self.pos;
        let num = self.int()?;
        self.skip_ws();
        // `/` followed by a digit is a fraction; anything else is left alone
        let rest = self.rest();
        if rest.starts_with('/') && rest[1..].trim_start().starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
            let den = self.digits()?;
            if den == 0 {
                return Err(Error::parse(start, "zero denominator"));
            }
            if (2 * num) % den != 0 {
                return Err(Error::parse(start, format!("{num}/{den} is not a half-integer")));
            }
            Ok(HalfInt::from_twice(2 * num / den))
        } else {
            Ok(HalfInt::whole(num))
        }
    }

    fn power(&mut self) -> Result<HalfInt> {
        if self.eat("{") {
            let h = self.halfint()?;
            self.expect("}")?;
            Ok(h)
        } else {
            self.halfint()
        }
    }

    fn is_char_start(&mut self) -> bool {
        match self.peek() {
            Some('1') => !self.rest()[1..].starts_with(|c: char| c.is_ascii_digit()),
            Some(_) => match self.peek_ident() {
                Some("nu") => true,
                Some(id) => !RESERVED.contains(&id),
                None => false,
            },
            None => false,
        }
    }

    fn character(&mut self) -> Result<FormalCharacter> {
        let mut out = FormalCharacter::trivial();
        loop {
            self.skip_ws();
            if self.peek() == Some('1') && !self.rest()[1..].starts_with(|c: char| c.is_ascii_digit()) {
                self.pos += 1;
            } else {
                let at = self.pos;
                let id = self.ident()?;
                if id == "nu" {
                    let e = if self.eat("^") { self.power()? } else { HalfInt::ONE };
                    out = out.shift(e);
                } else if RESERVED.contains(&id) {
                    return Err(Error::parse(at, format!("`{id}` is reserved")));
                } else {
                    let k = if self.eat("^") {
                        if self.eat("{") {
                            let k = self.int()?;
                            self.expect("}")?;
                            k
                        } else {
                            self.int()?
                        }
                    } else {
                        1
                    };
                    out = out.mul(&FormalCharacter::new(
                        CharLabel::from_exponents([(id, k)]),
                        HalfInt::ZERO,
                    ));
                }
            }
            if !self.eat("*") {
                break;
            }
        }
        Ok(out)
    }

    fn segment(&mut self) -> Result<Segment> {
        let start = self.pos;
        let label = if self.peek() == Some('[') {
            CharLabel::trivial()
        } else {
            let c = self.character()?;
            if c.exp != HalfInt::ZERO {
                return Err(Error::parse(start, "segment label may not carry a power of nu"));
            }
            c.label
        };
        self.expect("[")?;
        let b = self.halfint()?;
        let e = if self.eat("..") { self.halfint()? } else { b };
        self.expect("]")?;
        Segment::new(label, b, e).map_err(|err| Error::parse(start, err.to_string()))
    }

    fn multisegment(&mut self) -> Result<Multisegment> {
        self.expect("{")?;
        let mut v = Vec::new();
        if !self.eat("}") {
            loop {
                v.push(self.segment()?);
                if self.eat("}") {
                    break;
                }
                self.expect(",")?;
            }
        }
        Ok(Multisegment::new(v))
    }

    fn rank_and_char(&mut self) -> Result<(usize, FormalCharacter)> {
        self.expect("(")?;
        let at = self.pos;
        let r = self.digits()?;
        if r < 1 {
            return Err(Error::parse(at, "rank must be at least 1"));
        }
        self.expect(",")?;
        let c = self.character()?;
        self.expect(")")?;
        Ok((r as usize, c))
    }

    fn factor(&mut self) -> Result<ReprExpr> {
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        match self.peek_ident() {
            Some("Z") => {
                self.pos += 1;
                let m = self.multisegment()?;
                if m.is_empty() {
                    return self.err("empty multisegment");
                }
                Ok(ReprExpr::z(m))
            }
            Some("L") => {
                self.pos += 1;
                let m = self.multisegment()?;
                if m.is_empty() {
                    return self.err("empty multisegment");
                }
                Ok(ReprExpr::l(m))
            }
            Some("char") => {
                self.pos += 4;
                let (r, c) = self.rank_and_char()?;
                Ok(ReprExpr::character(r, c))
            }
            Some("St") => {
                self.pos += 2;
                let (r, c) = self.rank_and_char()?;
                Ok(ReprExpr::steinberg(r, c))
            }
            _ if self.is_char_start() => Ok(ReprExpr::character(1, self.character()?)),
            _ => self.err("expected a representation"),
        }
    }

    fn expr(&mut self) -> Result<ReprExpr> {
        let mut factors = vec![self.factor()?];
        while self.peek_ident() == Some("x") {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        Ok(ReprExpr::product(factors))
    }
}

fn whole<T>(src: &str, f: impl FnOnce(&mut Parser) -> Result<T>) -> Result<T> {
    let mut p = Parser::new(src);
    let v = f(&mut p)?;
    p.finish()?;
    Ok(v)
}

pub fn parse_halfint(s: &str) -> Result<HalfInt> {
    whole(s, |p| p.halfint())
}

pub fn parse_character(s: &str) -> Result<FormalCharacter> {
    whole(s, |p| p.character())
}

pub fn parse_segment(s: &str) -> Result<Segment> {
    whole(s, |p| p.segment())
}

pub fn parse_multisegment(s: &str) -> Result<Multisegment> {
    whole(s, |p| p.multisegment())
}

pub fn parse_expr(s: &str) -> Result<ReprExpr> {
    whole(s, |p| p.expr())
}
