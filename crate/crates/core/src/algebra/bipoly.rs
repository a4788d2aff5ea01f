use super::field::{Field, FieldElement};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Polynomial in `k[x][y]`: `y_coeffs[j]` is the coefficient of `y^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    y_coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn zero(field: Field) -> Self {
        BiPoly {
            field,
            y_coeffs: Vec::new(),
        }
    }

    /// Build from `(i, j, c)` meaning `c·x^i·y^j`. Repeated exponents are summed.
    pub fn from_terms(field: Field, terms: &[(usize, usize, FieldElement)]) -> Result<Self> {
        let mut p = BiPoly::zero(field);
        for (i, j, c) in terms {
            field.check(c.field())?;
            p.add_term(*i, *j, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, i: usize, j: usize, c: &FieldElement) {
        if self.y_coeffs.len() <= j {
            self.y_coeffs.resize(j + 1, UniPoly::zero(self.field));
        }
        let mono = UniPoly::monomial(c.clone(), i);
        self.y_coeffs[j] = self.y_coeffs[j].add(&mono);
        self.trim();
    }

    fn trim(&mut self) {
        while self.y_coeffs.last().is_some_and(|c| c.is_zero()) {
            self.y_coeffs.pop();
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.y_coeffs.is_empty()
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.y_coeffs.len().checked_sub(1)
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.y_coeffs.iter().filter_map(|c| c.degree()).max()
    }

    pub fn y_coeffs(&self) -> &[UniPoly] {
        &self.y_coeffs
    }

    /// All nonzero terms as `(i, j, c)`.
    pub fn terms(&self) -> Vec<(usize, usize, FieldElement)> {
        let mut out = Vec::new();
        for (j, cy) in self.y_coeffs.iter().enumerate() {
            for (i, c) in cy.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn derivative_x(&self) -> BiPoly {
        let mut p = BiPoly {
            field: self.field,
            y_coeffs: self.y_coeffs.iter().map(|c| c.derivative()).collect(),
        };
        p.trim();
        p
    }

    pub fn derivative_y(&self) -> BiPoly {
        let mut p = BiPoly {
            field: self.field,
            y_coeffs: self
                .y_coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&FieldElement::from_i64(self.field, j as i64)))
                .collect(),
        };
        p.trim();
        p
    }

    /// Exchange the roles of `x` and `y`.
    pub fn swap_variables(&self) -> BiPoly {
        let terms: Vec<_> = self.terms().into_iter().map(|(i, j, c)| (j, i, c)).collect();
        BiPoly::from_terms(self.field, &terms).expect("same field")
    }

    /// Specialize `x = x0`, leaving a polynomial in `y`.
    pub fn eval_x(&self, x0: &FieldElement) -> UniPoly {
        let coeffs = self.y_coeffs.iter().map(|c| c.eval(x0)).collect();
        UniPoly::new(self.field, coeffs).expect("same field")
    }

    pub fn eval(&self, x0: &FieldElement, y0: &FieldElement) -> FieldElement {
        self.eval_x(x0).eval(y0)
    }
}

/// Sylvester resultant of `f` and `g` with respect to `y`, as a polynomial in `x`.
///
/// The determinant is evaluated by fraction-free (Bareiss) elimination over
/// `k[x]`, where every division is exact.
pub fn resultant_y(f: &BiPoly, g: &BiPoly) -> Result<UniPoly> {
    f.field().check(g.field())?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    let m = f.degree_y().unwrap();
    let n = g.degree_y().unwrap();
    let size = m + n;
    let mut mat = vec![vec![UniPoly::zero(field); size]; size];
    for r in 0..n {
        for (k, c) in f.y_coeffs().iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in g.y_coeffs().iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    bareiss_det(field, mat)
}

fn bareiss_det(field: Field, mut m: Vec<Vec<UniPoly>>) -> Result<UniPoly> {
    let n = m.len();
    if n == 0 {
        return Ok(UniPoly::one(field));
    }
    let mut negate = false;
    let mut prev = UniPoly::one(field);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(UniPoly::zero(field)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num.exact_div(&prev)?;
            }
            m[i][k] = UniPoly::zero(field);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> FieldElement {
        FieldElement::from_i64(Field::Rationals, n)
    }

    fn bp(terms: &[(usize, usize, i64)]) -> BiPoly {
        let ts: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, q(c))).collect();
        BiPoly::from_terms(Field::Rationals, &ts).unwrap()
    }

    /// Cofactor expansion over k[x]; exponential, fine for tiny matrices.
    fn det_by_expansion(m: &[Vec<UniPoly>]) -> UniPoly {
        let n = m.len();
        if n == 0 {
            return UniPoly::one(Field::Rationals);
        }
        let mut acc = UniPoly::zero(Field::Rationals);
        for c in 0..n {
            let minor: Vec<Vec<UniPoly>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = m[0][c].mul(&det_by_expansion(&minor));
            acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    fn sylvester(f: &BiPoly, g: &BiPoly) -> Vec<Vec<UniPoly>> {
        let (m, n) = (f.degree_y().unwrap(), g.degree_y().unwrap());
        let mut mat = vec![vec![UniPoly::zero(Field::Rationals); m + n]; m + n];
        for r in 0..n {
            for (k, c) in f.y_coeffs().iter().rev().enumerate() {
                mat[r][r + k] = c.clone();
            }
        }
        for r in 0..m {
            for (k, c) in g.y_coeffs().iter().rev().enumerate() {
                mat[n + r][r + k] = c.clone();
            }
        }
        mat
    }

    #[test]
    fn linear_pair() {
        // (y - x, y + x): Sylvester determinant is 2x
        let r = resultant_y(&bp(&[(0, 1, 1), (1, 0, -1)]), &bp(&[(0, 1, 1), (1, 0, 1)])).unwrap();
        assert_eq!(r, UniPoly::from_i64s(Field::Rationals, &[0, 2]));
    }

    #[test]
    fn quadratic_against_linear() {
        // (y^2 - x, y) -> -x
        let r = resultant_y(&bp(&[(0, 2, 1), (1, 0, -1)]), &bp(&[(0, 1, 1)])).unwrap();
        assert_eq!(r, UniPoly::from_i64s(Field::Rationals, &[0, -1]));
    }

    #[test]
    fn self_resultant_vanishes() {
        let f = bp(&[(2, 1, 3), (0, 2, 1), (1, 0, -5), (0, 0, 7)]);
        assert!(resultant_y(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn constant_in_y_operand() {
        // Res(f, c) = c^deg f
        let f = bp(&[(0, 3, 1), (1, 0, 1)]);
        let g = bp(&[(1, 0, 2)]);
        assert_eq!(resultant_y(&f, &g).unwrap(), UniPoly::from_i64s(Field::Rationals, &[0, 0, 0, 8]));
    }

    #[test]
    fn zero_input_rejected() {
        let f = bp(&[(0, 1, 1)]);
        assert_eq!(resultant_y(&f, &BiPoly::zero(Field::Rationals)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let f = bp(&[(2, 2, 1), (0, 1, -3), (1, 1, 2), (3, 0, 1), (0, 0, -1)]);
        let g = bp(&[(1, 2, 4), (0, 2, 1), (2, 0, -2), (0, 1, 5)]);
        let expected = det_by_expansion(&sylvester(&f, &g));
        assert_eq!(resultant_y(&f, &g).unwrap(), expected);
    }

    #[test]
    fn swapping_arguments_changes_sign_by_degree_parity() {
        let f = bp(&[(1, 3, 1), (0, 1, 2), (2, 0, 1)]);
        let g = bp(&[(0, 1, 1), (1, 0, -1)]);
        let a = resultant_y(&f, &g).unwrap();
        let b = resultant_y(&g, &f).unwrap();
        // (-1)^(3·1) = -1
        assert_eq!(a, b.neg());
    }

    #[test]
    fn partial_derivatives() {
        let f = bp(&[(2, 3, 1), (1, 1, 4)]);
        assert_eq!(f.derivative_x(), bp(&[(1, 3, 2), (0, 1, 4)]));
        assert_eq!(f.derivative_y(), bp(&[(2, 2, 3), (1, 0, 4)]));
        assert_eq!(f.eval(&q(2), &q(-1)), q(-4 - 8));
    }
}
