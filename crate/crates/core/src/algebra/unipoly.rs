use std::fmt;

use super::field::{Field, FieldElement};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients from low to high degree,
/// trailing zeros stripped (the zero polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn zero(field: Field) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(c.field(), vec![c]).expect("single coefficient has matching field")
    }

    /// `t`.
    pub fn variable(field: Field) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn monomial(c: FieldElement, degree: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(field, coeffs).expect("coefficients share a field")
    }

    pub fn new(field: Field, coeffs: Vec<FieldElement>) -> Result<Self> {
        for c in &coeffs {
            field.check(c.field())?;
        }
        let mut p = UniPoly { field, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn from_i64s(field: Field, coeffs: &[i64]) -> Self {
        let cs = coeffs.iter().map(|&c| FieldElement::from_i64(field, c)).collect();
        Self::new(field, cs).expect("coefficients share a field")
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Of the form `c·t^m` with `c ≠ 0`.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.coeffs[..self.coeffs.len() - 1].iter().all(|c| c.is_zero())
    }

    /// Number of leading zero coefficients (the multiplicity of the root 0).
    pub fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn eval(&self, t: &FieldElement) -> FieldElement {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        let mut p = UniPoly {
            field: self.field,
            coeffs,
        };
        p.trim();
        p
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        let mut p = UniPoly {
            field: self.field,
            coeffs,
        };
        p.trim();
        p
    }

    pub fn scale(&self, c: &FieldElement) -> UniPoly {
        let mut p = UniPoly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        };
        p.trim();
        p
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(i as i64))
            .collect();
        let mut p = UniPoly {
            field: self.field,
            coeffs,
        };
        p.trim();
        p
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        self.field.check(divisor.field)?;
        let lead_inv = divisor.leading().ok_or(Error::DivisionByZero)?.inv()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        let mut q = UniPoly {
            field: self.field,
            coeffs: quot,
        };
        let mut r = UniPoly {
            field: self.field,
            coeffs: rem,
        };
        q.trim();
        r.trim();
        Ok((q, r))
    }

    /// Divide by a factor that is known to divide exactly.
    pub fn exact_div(&self, divisor: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Invariant("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// Remove the factor `t^m` with `m` maximal.
    pub fn strip_zero_roots(&self) -> UniPoly {
        let m = self.low_order().min(self.coeffs.len());
        UniPoly {
            field: self.field,
            coeffs: self.coeffs[m..].to_vec(),
        }
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u128, modulus: &UniPoly) -> Result<UniPoly> {
        let mut base = self.div_rem(modulus)?.1;
        let mut acc = UniPoly::one(self.field).div_rem(modulus)?.1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).div_rem(modulus)?.1;
            }
            base = base.mul(&base).div_rem(modulus)?.1;
            e >>= 1;
        }
        Ok(acc)
    }
}

/// Monic greatest common divisor; `gcd(a, 0) = monic(a)`.
pub fn gcd_uni(a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
    a.field().check(b.field())?;
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.div_rem(&y)?.1;
        x = y;
        y = r;
    }
    Ok(x.monic())
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.coeffs, "t")
    }
}

pub(crate) fn fmt_terms(f: &mut fmt::Formatter<'_>, coeffs: &[FieldElement], var: &str) -> fmt::Result {
    if coeffs.iter().all(|c| c.is_zero()) {
        return f.write_str("0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            f.write_str(&mono)?;
        } else {
            write!(f, "{abs}*{mono}")?;
        }
    }
    Ok(())
}
