//! Parser for polynomial expressions such as `-65/4*y^2 + 2*(x + 1)^2 - a*y`.

use super::poly::{Poly, Var};
use num_traits::Zero;

use super::rat::parse_rat;

pub struct ExprParser<'a, F: Fn(&str) -> Option<Poly>> {
    src: &'a str,
    pos: usize,
    lookup: F,
}

/// Parses `src`, resolving identifiers through `lookup`.
pub fn parse_poly_with<F: Fn(&str) -> Option<Poly>>(src: &str, lookup: F) -> Result<Poly, String> {
    let mut p = ExprParser { src, pos: 0, lookup };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(format!("unexpected {:?} at column {}", &src[p.pos..], p.pos + 1));
    }
    Ok(e)
}

/// Parses a polynomial whose identifiers are the built-in variable names.
pub fn parse_poly(src: &str) -> Result<Poly, String> {
    parse_poly_with(src, |s| Var::from_name(s).map(Poly::var))
}

impl<'a, F: Fn(&str) -> Option<Poly>> ExprParser<'a, F> {
    fn skip_ws(&mut self) {
        while self.peek().map(|c| c.is_whitespace()).unwrap_or(false) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, String> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let col = self.pos + 1;
                let d = self.unary()?;
                match d.constant_value() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    _ => return Err(format!("division by a non-constant or zero at column {col}")),
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Poly, String> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, String> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
                self.pos += 1;
            }
            let e: u32 = self.src[start..self.pos]
                .parse()
                .map_err(|_| format!("expected an exponent at column {}", start + 1))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, String> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(format!("missing ')' for '(' at column {}", start + 1));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => {
                while self.peek().map(|c| c.is_ascii_digit() || c == '.').unwrap_or(false) {
                    self.pos += 1;
                }
                let r = parse_rat(&self.src[start..self.pos]).map_err(|e| format!("{e} at column {}", start + 1))?;
                Ok(Poly::constant(r))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                while self.peek().map(|c| c.is_alphanumeric() || c == '_').unwrap_or(false) {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                (self.lookup)(name).ok_or_else(|| format!("unknown name {name:?} at column {}", start + 1))
            }
            Some(c) => Err(format!("unexpected {c:?} at column {}", start + 1)),
            None => Err("unexpected end of expression".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_hamiltonian() {
        let p = parse_poly("-8*y - 16*x*y - 65/4*y^2 - 4*x^2").unwrap();
        assert_eq!(p.to_string(), "-4*x^2 - 16*x*y - 65/4*y^2 - 8*y");
        let q = parse_poly("(x + 1)^2 / 2 - 0.5").unwrap();
        assert_eq!(q.to_string(), "1/2*x^2 + x");
    }

    #[test]
    fn reports_position() {
        let e = parse_poly("x + q").unwrap_err();
        assert!(e.contains("column 5"), "{e}");
        assert!(parse_poly("x / y").is_err());
        assert!(parse_poly("(x + 1").is_err());
    }
}
