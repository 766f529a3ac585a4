//! Recursive-descent parser for polynomials with rational coefficients.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := integer ('/' positive-integer)? | variable ('^' natural)?
//! ```

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::jet::{Field, Poly};
use crate::rational::Q;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [String],
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl<'a> Parser<'a> {
    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(pos);
        Error::Syntax { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn describe(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        }
    }

    fn natural(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error_at(start, "expected a natural number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn factor(&mut self) -> Result<Poly> {
        let n = self.vars.len();
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return Err(self.error_at(self.pos, "expected a coefficient or variable, found end of input")),
        };
        let c = self.chars[start];
        if c.is_ascii_digit() {
            let num = self.natural()?;
            let mut value = Q::from_integer(num);
            if self.peek() == Some('/') {
                self.pos += 1;
                self.skip_ws();
                let at = self.pos;
                let den = self.natural()?;
                if den.is_zero() {
                    return Err(self.error_at(at, "denominator must be positive"));
                }
                value /= Q::from_integer(den);
            }
            return Poly::constant(n, Field::Rationals, &value);
        }
        if is_ident_start(c) {
            while self.chars.get(self.pos).is_some_and(|&c| is_ident_char(c)) {
                self.pos += 1;
            }
            let name: String = self.chars[start..self.pos].iter().collect();
            let Some(j) = self.vars.iter().position(|v| *v == name) else {
                return Err(self.error_at(start, format!("unknown variable '{name}'")));
            };
            let x = Poly::var(n, Field::Rationals, j);
            if self.peek() == Some('^') {
                self.pos += 1;
                self.skip_ws();
                let at = self.pos;
                if !self.chars.get(at).is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.error_at(at, "exponent must be a natural number"));
                }
                let k = self.natural()?;
                let k = u32::try_from(k).map_err(|_| self.error_at(at, "exponent too large"))?;
                return Ok(x.pow(k));
            }
            return Ok(x);
        }
        let found = self.describe();
        Err(self.error_at(start, format!("expected a coefficient or variable, found {found}")))
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn expr(&mut self) -> Result<Poly> {
        let negate = match self.peek() {
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
        let first = self.term()?;
        let mut acc = if negate { first.scale(&-Q::one()) } else { first };
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        if self.peek().is_some() {
            let found = self.describe();
            return Err(self.error_at(self.pos, format!("unexpected {found}")));
        }
        Ok(acc)
    }
}

fn check_variables(vars: &[String]) -> Result<()> {
    if vars.is_empty() {
        return Err(Error::input("no variables declared"));
    }
    for (i, v) in vars.iter().enumerate() {
        let mut chars = v.chars();
        let ok = chars.next().is_some_and(is_ident_start) && chars.all(is_ident_char);
        if !ok {
            return Err(Error::input(format!("'{v}' is not a valid variable name")));
        }
        if vars[..i].contains(v) {
            return Err(Error::input(format!("variable '{v}' declared twice")));
        }
    }
    Ok(())
}

/// Parses `text` as a polynomial over ℚ in the declared variables.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<Poly> {
    check_variables(vars)?;
    if text.trim().is_empty() {
        return Err(Error::Syntax { line: 1, column: 1, message: "empty polynomial".into() });
    }
    Parser { chars: text.chars().collect(), pos: 0, vars }.expr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn sum_of_squares() {
        let p = parse_polynomial("x^2 + y^2 + z^2", &vars(&["x", "y", "z"])).unwrap();
        assert_eq!(p.terms().len(), 3);
        assert!(p.terms().values().all(|c| *c == q(1)));
    }

    #[test]
    fn product_minus_cube() {
        let p = parse_polynomial("x*y - z^3", &vars(&["x", "y", "z"])).unwrap();
        assert_eq!(p.coefficient(&[1, 1, 0]), q(1));
        assert_eq!(p.coefficient(&[0, 0, 3]), q(-1));
        assert_eq!(p.terms().len(), 2);
    }

    #[test]
    fn negative_exponent() {
        let err = parse_polynomial("x^-1", &vars(&["x"])).unwrap_err();
        assert_eq!(
            err,
            Error::Syntax { line: 1, column: 3, message: "exponent must be a natural number".into() }
        );
    }

    #[test]
    fn positions_span_lines() {
        let err = parse_polynomial("x +\n  2*w", &vars(&["x"])).unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, column: 5, .. }), "{err}");
        assert!(parse_polynomial("x y", &vars(&["x", "y"])).is_err());
        assert!(parse_polynomial("1/0*x", &vars(&["x"])).is_err());
        assert!(parse_polynomial("  ", &vars(&["x"])).is_err());
    }

    #[test]
    fn rational_coefficients_round_trip() {
        let names = vars(&["x", "y", "t"]);
        let p = parse_polynomial("-3/2*x*y^2 + 7 - 2*t^2 + 1/3*x", &names).unwrap();
        let back = parse_polynomial(&p.to_text(&names), &names).unwrap();
        assert_eq!(p, back);
        assert_eq!(parse_polynomial("x - x", &names).unwrap().to_text(&names), "0");
    }
}
