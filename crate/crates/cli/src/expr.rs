//! Parser for the tiny polynomial expressions accepted by --eval flags:
//! integers, one indeterminate (any of x, y, t, q), +, -, *, ^, parentheses.

use chowpoly::IntPolynomial;

pub fn parse_poly(text: &str) -> Result<IntPolynomial, String> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(format!(
            "unexpected {:?} at offset {} in {text:?}",
            p.bytes[p.pos] as char, p.pos
        ));
    }
    Ok(poly)
}

/// Comma-separated expressions, e.g. "-x,1,x".
pub fn parse_poly_list(text: &str, expected: usize) -> Result<Vec<IntPolynomial>, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != expected {
        return Err(format!(
            "expected {expected} comma-separated values, got {}",
            parts.len()
        ));
    }
    parts.iter().map(|s| parse_poly(s)).collect()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos) == Some(&b' ') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<IntPolynomial, String> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<IntPolynomial, String> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<IntPolynomial, String> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.base()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let exp = self.integer()?;
                    let exp = usize::try_from(exp).map_err(|_| "negative exponent".to_string())?;
                    Ok(base.pow(exp))
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn base(&mut self) -> Result<IntPolynomial, String> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err("missing closing parenthesis".into());
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x' | b'y' | b't' | b'q') => {
                self.pos += 1;
                Ok(IntPolynomial::x())
            }
            Some(c) if c.is_ascii_digit() => Ok(IntPolynomial::constant(self.integer()?.into())),
            Some(c) => Err(format!("unexpected {:?}", c as char)),
            None => Err("unexpected end of expression".into()),
        }
    }

    fn integer(&mut self) -> Result<i64, String> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err("expected a number".into());
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| "number out of range".into())
    }
}
