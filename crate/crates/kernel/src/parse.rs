//! Text syntax for polynomials and ideal files.
//!
//! Polynomials use integer coefficients, the ring's variable names, `^` for
//! powers, optional `*`, `+`/`-`, and parentheses. An ideal file holds one
//! generator per line; `#` starts a comment.

use crate::error::{KernelError, Result};
use crate::poly::Poly;
use crate::ring::RingRef;

struct Parser<'a> {
    ring: &'a RingRef,
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> KernelError {
        KernelError::Parse {
            line: self.line,
            column: self.col0 + self.pos + 1,
            message: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.ring);
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if sign { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign = false;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                Some(c) if c.is_ascii_alphanumeric() || c == '(' || c == '_' => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.integer()?;
            let k = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<u64>()
            .map_err(|_| self.err("integer out of range"))
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let p = self.ring.field().characteristic() as u64;
                Ok(Poly::constant(self.ring, (n % p) as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                // longest variable name matching here
                let rest: String = self.chars[self.pos..].iter().collect();
                let best = self
                    .ring
                    .names()
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| rest.starts_with(n.as_str()))
                    .max_by_key(|(_, n)| n.len());
                match best {
                    Some((i, n)) => {
                        self.pos += n.chars().count();
                        Ok(Poly::var(self.ring, i))
                    }
                    None => Err(self.err(format!("unknown variable at '{}'", c))),
                }
            }
            Some(c) => Err(self.err(format!("unexpected character '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

fn parse_at(ring: &RingRef, text: &str, line: usize) -> Result<Poly> {
    let mut p = Parser {
        ring,
        chars: text.chars().collect(),
        pos: 0,
        line,
        col0: 0,
    };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parse one polynomial.
pub fn parse_poly(ring: &RingRef, text: &str) -> Result<Poly> {
    parse_at(ring, text, 1)
}

/// Parse an ideal file: one generator per line, `#` comments, blank lines
/// ignored. Generators must be homogeneous.
pub fn parse_ideal_file(ring: &RingRef, contents: &str) -> Result<Vec<Poly>> {
    let mut out = Vec::new();
    for (i, raw) in contents.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let p = parse_at(ring, body, i + 1)?;
        if !p.is_homogeneous() {
            return Err(KernelError::NonHomogeneous(format!(
                "line {}: {}",
                i + 1,
                body.trim()
            )));
        }
        out.push(p);
    }
    Ok(out)
}

/// Render generators in the ideal-file format.
pub fn format_ideal_file(gens: &[Poly], header: &[String]) -> String {
    let mut s = String::new();
    for h in header {
        s.push_str("# ");
        s.push_str(h);
        s.push('\n');
    }
    for g in gens {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::ring::Ring;

    #[test]
    fn parses_common_shapes() {
        let r = Ring::projective_space(PrimeField::default());
        let a = parse_poly(&r, "x^2 - 2*y*t + t^2").unwrap();
        assert_eq!(a.to_string(), "x^2 - 2*y*t + t^2");
        let b = parse_poly(&r, "3xy^2 + (z - t)^2").unwrap();
        let c = parse_poly(&r, "3*x*y^2 + z^2 - 2*z*t + t^2").unwrap();
        assert_eq!(b, c);
        assert_eq!(parse_poly(&r, "-x").unwrap(), Poly::var(&r, 0).neg());
    }

    #[test]
    fn reports_positions_and_nonhomogeneity() {
        let r = Ring::projective_space(PrimeField::default());
        match parse_poly(&r, "x + w") {
            Err(KernelError::Parse { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("{other:?}"),
        }
        let e = parse_ideal_file(&r, "# comment\nx\n\nx^2 + y\n").unwrap_err();
        assert!(matches!(e, KernelError::NonHomogeneous(_)));
        let gens = parse_ideal_file(&r, "x  # first\ny\n").unwrap();
        assert_eq!(gens.len(), 2);
        let round = parse_ideal_file(&r, &format_ideal_file(&gens, &["hdr".into()])).unwrap();
        assert_eq!(round, gens);
    }
}
