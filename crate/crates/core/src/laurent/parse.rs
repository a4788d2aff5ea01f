use num_bigint::BigInt;
use num_traits::One;

use super::LaurentPoly;
use crate::algebra::{Field, FieldElement};
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;

/// Parse a Laurent polynomial such as `13*x^6*y^5 - 6*x^6*y^4 + x^-1*y + 2`.
///
/// Coefficients are decimal integers or `a/b`; exponents may be negative and
/// may be wrapped in parentheses. Over `F_p` every coefficient is reduced.
pub fn parse_laurent(src: &str, field: Field) -> Result<LaurentPoly> {
    let mut p = Parser {
        chars: src.chars().collect(),
        pos: 0,
        field,
    };
    let mut out = LaurentPoly::zero(field);
    p.skip_ws();
    if p.peek().is_none() {
        return Err(Error::parse(1, "empty polynomial"));
    }
    let mut first = true;
    loop {
        p.skip_ws();
        let negative = match p.peek() {
            Some('+') => {
                p.pos += 1;
                false
            }
            Some('-') => {
                p.pos += 1;
                true
            }
            None => break,
            Some(c) if !first => return Err(p.error(format!("expected '+' or '-' between terms, found '{c}'"))),
            Some(_) => false,
        };
        first = false;
        p.skip_ws();
        let (e, mut c) = p.term()?;
        if negative {
            c = -c;
        }
        out.add_term(e, c);
    }
    Ok(out)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    field: Field,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::parse(self.pos + 1, message)
    }

    fn term(&mut self) -> Result<(LatticePoint, FieldElement)> {
        let start = self.pos;
        let mut coeff = None;
        let mut ex: Option<i64> = None;
        let mut ey: Option<i64> = None;
        let mut factors = 0;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    if factors > 0 {
                        return Err(self.error("coefficient must come first in a term"));
                    }
                    coeff = Some(self.coefficient()?);
                }
                Some(v @ ('x' | 'y')) => {
                    let col = self.pos;
                    self.pos += 1;
                    let n = self.exponent()?;
                    let slot = if v == 'x' { &mut ex } else { &mut ey };
                    if slot.is_some() {
                        return Err(Error::parse(col + 1, format!("variable '{v}' repeated in one term")));
                    }
                    *slot = Some(n);
                }
                Some(c) => return Err(self.error(format!("expected a coefficient or variable, found '{c}'"))),
                None => return Err(self.error("expected a term but reached end of input")),
            }
            factors += 1;
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    continue;
                }
                Some('x' | 'y') => continue,
                _ => break,
            }
        }
        debug_assert!(self.pos > start);
        let c = coeff.unwrap_or_else(|| self.field.one());
        Ok((LatticePoint::new(ex.unwrap_or(0), ey.unwrap_or(0)), c))
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn coefficient(&mut self) -> Result<FieldElement> {
        let num = self.digits()?;
        let mut den = BigInt::one();
        if self.peek() == Some('/') {
            self.pos += 1;
            let col = self.pos;
            den = self.digits()?;
            if FieldElement::from_bigint(self.field, &den).is_zero() {
                return Err(Error::parse(col + 1, format!("denominator {den} vanishes in {}", self.field)));
            }
        }
        FieldElement::from_ratio(self.field, &num, &den)
    }

    fn exponent(&mut self) -> Result<i64> {
        self.skip_ws();
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        self.skip_ws();
        let paren = self.peek() == Some('(');
        if paren {
            self.pos += 1;
            self.skip_ws();
        }
        let col = self.pos;
        let negative = match self.peek() {
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
        let n = self.digits()?;
        let n: i64 = n
            .try_into()
            .map_err(|_| Error::parse(col + 1, "exponent out of range"))?;
        if paren {
            self.skip_ws();
            if self.peek() != Some(')') {
                return Err(self.error("expected ')'"));
            }
            self.pos += 1;
        }
        Ok(if negative { -n } else { n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn pt(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    #[test]
    fn genus_14_polynomial() {
        let f = parse_laurent("13*x^6*y^5 - 6*x^6*y^4 + 2*x^3*y^5 + 4*x^3*y^4 + x^3 + 3*y^4", q()).unwrap();
        assert_eq!(f.len(), 6);
        assert_eq!(f.coeff(pt(6, 4)), FieldElement::from_i64(q(), -6));
        assert_eq!(f.coeff(pt(3, 0)), FieldElement::from_i64(q(), 1));
    }

    #[test]
    fn negative_exponents_and_fractions() {
        let f = parse_laurent("x^-1*y + 2", q()).unwrap();
        assert_eq!(f.coeff(pt(-1, 1)), FieldElement::from_i64(q(), 1));
        assert_eq!(f.coeff(pt(0, 0)), FieldElement::from_i64(q(), 2));
        let g = parse_laurent("-3/4 x^(-2) y", q()).unwrap();
        assert_eq!(g.coeff(pt(-2, 1)).to_string(), "-3/4");
        let h = parse_laurent("x*y - y*x + 5", q()).unwrap();
        assert_eq!(h.len(), 1);
    }

    #[test]
    fn reduction_in_prime_field() {
        let f7 = Field::prime(7).unwrap();
        let f = parse_laurent("9*x + 1/2*y - 14", f7).unwrap();
        assert_eq!(f.coeff(pt(1, 0)), FieldElement::from_i64(f7, 2));
        assert_eq!(f.coeff(pt(0, 1)), FieldElement::from_i64(f7, 4));
        assert_eq!(f.len(), 2);
        match parse_laurent("x + 1/7", f7) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 7),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn error_columns() {
        let cases = [("x + + y", 5), ("x ^ y", 5), ("2*x*x", 5), ("x + 3z", 6), ("", 1), ("x y 2", 5)];
        for (src, col) in cases {
            match parse_laurent(src, q()) {
                Err(Error::Parse { line, column, .. }) => {
                    assert_eq!((line, column), (1, col), "input {src:?}");
                }
                other => panic!("input {src:?}: unexpected {other:?}"),
            }
        }
    }
}
