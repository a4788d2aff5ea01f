//! Laurent polynomials in `x, y`, their Newton polygons, face restrictions,
//! and a certificate-based non-degeneracy check.

mod extension;
mod face;
mod nondeg;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{BiPoly, Field, FieldElement};
use crate::error::{Error, Result};
use crate::lattice::{convex_hull, LatticePoint, LatticePolygon, UnimodularMap};

pub use face::{faces, restrict_to_face, Face, FaceRestriction};
pub(crate) use nondeg::prime_field_roots;
pub use nondeg::{check_nondegenerate, check_nondegenerate_with, NondegOptions, NondegVerdict};
pub use parse::parse_laurent;

/// A finitely supported sum `Σ c_{i,j} x^i y^j` with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    field: Field,
    terms: BTreeMap<LatticePoint, FieldElement>,
}

impl LaurentPoly {
    pub fn zero(field: Field) -> Self {
        LaurentPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(exponent: LatticePoint, c: FieldElement) -> Self {
        let mut p = LaurentPoly::zero(c.field());
        p.add_term(exponent, c);
        p
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (LatticePoint, FieldElement)>) -> Result<Self> {
        let mut p = LaurentPoly::zero(field);
        for (e, c) in terms {
            field.check(c.field())?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_i64_terms(field: Field, terms: &[((i64, i64), i64)]) -> Self {
        let it = terms
            .iter()
            .map(|&((i, j), c)| (LatticePoint::new(i, j), FieldElement::from_i64(field, c)));
        LaurentPoly::from_terms(field, it).expect("coefficients built in the same field")
    }

    pub(crate) fn add_term(&mut self, e: LatticePoint, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (LatticePoint, &FieldElement)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn support(&self) -> Vec<LatticePoint> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, e: LatticePoint) -> FieldElement {
        self.terms.get(&e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn newton_polygon(&self) -> Result<LatticePolygon> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(convex_hull(&self.support()))
    }

    /// Multiply by the monomial `x^a y^b`.
    pub fn shift(&self, by: LatticePoint) -> LaurentPoly {
        LaurentPoly {
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (*e + by, c.clone())).collect(),
        }
    }

    /// Substitute variables so that every exponent `e` becomes `map(e)`.
    pub fn transform(&self, map: &UnimodularMap) -> LaurentPoly {
        LaurentPoly {
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (map.apply(*e), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.field);
        for (e, a) in &self.terms {
            out.add_term(*e, a * c);
        }
        out
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.field.check(other.field)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.scale(&FieldElement::from_i64(other.field, -1)))
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.field.check(other.field)?;
        let mut out = LaurentPoly::zero(self.field);
        for (e, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(*e + *h, a * b);
            }
        }
        Ok(out)
    }

    /// Value at a torus point; both coordinates must be nonzero when
    /// negative exponents occur.
    pub fn eval(&self, x0: &FieldElement, y0: &FieldElement) -> Result<FieldElement> {
        self.field.check(x0.field())?;
        self.field.check(y0.field())?;
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            acc = &acc + &(&(c * &x0.powi(e.x)?) * &y0.powi(e.y)?);
        }
        Ok(acc)
    }

    /// Lower-left corner `(min i, min j)` of the support.
    pub fn min_exponents(&self) -> Result<LatticePoint> {
        let x = self.terms.keys().map(|e| e.x).min().ok_or(Error::ZeroPolynomial)?;
        let y = self.terms.keys().map(|e| e.y).min().ok_or(Error::ZeroPolynomial)?;
        Ok(LatticePoint::new(x, y))
    }

    /// The polynomial `F = x^{-a} y^{-b} f` with `(a, b)` the minimal
    /// exponents, so that neither `x` nor `y` divides `F`.
    pub fn to_polynomial(&self) -> Result<BiPoly> {
        let m = self.min_exponents()?;
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(e, c)| ((e.x - m.x) as usize, (e.y - m.y) as usize, c.clone()))
            .collect();
        BiPoly::from_terms(self.field, &terms)
    }

    /// Map every coefficient into `F_p`. Fails when a denominator vanishes
    /// mod `p` or a vertex coefficient of the Newton polygon reduces to zero.
    pub fn reduce_mod(&self, p: u64) -> Result<LaurentPoly> {
        let fp = Field::prime(p)?;
        let mut out = LaurentPoly::zero(fp);
        for (e, c) in &self.terms {
            let r = c.reduce_mod(p)?;
            out.add_term(*e, FieldElement::Residue { value: r, modulus: p });
        }
        let poly = self.newton_polygon()?;
        if poly.vertices().iter().any(|v| !out.terms.contains_key(v)) {
            return Err(Error::BadReduction { modulus: p });
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || *e == LatticePoint::ORIGIN {
                factors.push(abs.to_string());
            }
            for (var, n) in [("x", e.x), ("y", e.y)] {
                match n {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{n}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    #[test]
    fn newton_polygons() {
        let f = parse_laurent("x + y + 1", Field::Rationals).unwrap();
        assert_eq!(f.newton_polygon().unwrap(), LatticePolygon::sigma());

        let g = parse_laurent("13*x^6*y^5 - 6*x^6*y^4 + 2*x^3*y^5 + 4*x^3*y^4 + x^3 + 3*y^4", Field::Rationals).unwrap();
        let hull = g.newton_polygon().unwrap();
        assert_eq!(hull, convex_hull(&[p(3, 0), p(6, 4), p(6, 5), p(3, 5), p(0, 4)]));
        assert_eq!(hull.vertices().len(), 5);

        let h = parse_laurent("x^-1*y + x*y^-1 + x*y", Field::Rationals).unwrap();
        assert_eq!(h.newton_polygon().unwrap(), convex_hull(&[p(-1, 1), p(1, -1), p(1, 1)]));
        assert_eq!(LaurentPoly::zero(Field::Rationals).newton_polygon(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn display_round_trips() {
        let src = "13*x^6*y^5 - 6*x^6*y^4 + 2*x^3*y^5 + 4*x^3*y^4 + x^3 + 3*y^4";
        let f = parse_laurent(src, Field::Rationals).unwrap();
        assert_eq!(f.to_string(), src);
        let g = parse_laurent("-1/2*x^-1*y + 7 - y", Field::Rationals).unwrap();
        assert_eq!(parse_laurent(&g.to_string(), Field::Rationals).unwrap(), g);
    }

    #[test]
    fn arithmetic_and_evaluation() {
        let q = Field::Rationals;
        let f = parse_laurent("x + y + 1", q).unwrap();
        let g = parse_laurent("x - y", q).unwrap();
        let prod = f.mul(&g).unwrap();
        assert_eq!(prod, parse_laurent("x^2 - y^2 + x - y", q).unwrap());
        let two = FieldElement::from_i64(q, 2);
        let three = FieldElement::from_i64(q, 3);
        assert_eq!(prod.eval(&two, &three).unwrap(), FieldElement::from_i64(q, -6));
        assert!(f.sub(&f).unwrap().is_zero());
        let inv = parse_laurent("x^-1*y^-2", q).unwrap();
        assert_eq!(inv.eval(&two, &three).unwrap().to_string(), "1/18");
    }

    #[test]
    fn polynomial_clearing() {
        let f = parse_laurent("x^-1*y + x*y^-1 + x*y", Field::Rationals).unwrap();
        let big = f.to_polynomial().unwrap();
        // x^-1 y^-1 f = y^2 + x^2 + x^2 y^2 after shifting by (1,1)
        assert_eq!(big.degree_x(), Some(2));
        assert_eq!(big.degree_y(), Some(2));
        assert_eq!(big.terms().len(), 3);
    }

    #[test]
    fn reduction_modulo_p() {
        let f = parse_laurent("1/3*x + 5*y - 7", Field::Rationals).unwrap();
        assert_eq!(f.reduce_mod(3), Err(Error::BadReduction { modulus: 3 }));
        assert_eq!(f.reduce_mod(7), Err(Error::BadReduction { modulus: 7 }));
        let r = f.reduce_mod(11).unwrap();
        assert_eq!(r.field(), Field::Prime(11));
        // 1/3 = 4 mod 11
        assert_eq!(r.coeff(p(1, 0)), FieldElement::from_i64(Field::Prime(11), 4));
    }
}
