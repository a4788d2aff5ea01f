//! Small extension fields `F_{p^m} = F_p[t]/(q)` used by the exhaustive
//! witness search. Elements are coefficient vectors of length `m`.

use crate::algebra::{add_mod, mul_mod, sub_mod, BiPoly, UniPoly};

#[derive(Clone, Debug)]
pub(crate) struct ExtField {
    p: u64,
    /// Monic irreducible modulus, low to high, length `m + 1`.
    modulus: Vec<u64>,
}

pub(crate) type Elem = Vec<u64>;

impl ExtField {
    /// `F_{p^m}` with the lexicographically first monic irreducible of degree
    /// `m ≤ 3` (irreducible iff it has no root in `F_p`).
    pub fn new(p: u64, m: usize) -> ExtField {
        assert!((1..=3).contains(&m), "extension degree must be 1, 2 or 3");
        if m == 1 {
            return ExtField { p, modulus: vec![0, 1] };
        }
        let total = p.pow(m as u32);
        for code in 0..total {
            let mut q = digits(code, p, m);
            q.push(1);
            if q[0] != 0 && (0..p).all(|t| eval_base(&q, t, p) != 0) {
                return ExtField { p, modulus: q };
            }
        }
        unreachable!("irreducible polynomials of every degree exist over F_p")
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The `k`-th element in base-`p` digit order; `0` is zero.
    pub fn element(&self, k: u64) -> Elem {
        digits(k, self.p, self.degree())
    }

    pub fn embed(&self, c: u64) -> Elem {
        let mut e = vec![0; self.degree()];
        e[0] = c % self.p;
        e
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(&x, &y)| add_mod(x, y, self.p)).collect()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let m = self.degree();
        let p = self.p;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
            }
        }
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (j, &qj) in self.modulus[..m].iter().enumerate() {
                prod[k - m + j] = sub_mod(prod[k - m + j], mul_mod(c, qj, p), p);
            }
            prod[k] = 0;
        }
        prod.truncate(m);
        prod
    }

    /// Horner evaluation of a polynomial with base-field coefficients.
    pub fn eval(&self, coeffs: &[u64], x: &Elem) -> Elem {
        let mut acc = vec![0; self.degree()];
        for &c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.embed(c));
        }
        acc
    }

    /// Horner evaluation with extension-field coefficients.
    pub fn eval_ext(&self, coeffs: &[Elem], x: &Elem) -> Elem {
        let mut acc = vec![0; self.degree()];
        for c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    pub fn format(&self, a: &Elem) -> String {
        if self.degree() == 1 {
            return a[0].to_string();
        }
        let parts: Vec<String> = a
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, _) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{c}*t"),
                (_, 1) => format!("t^{i}"),
                _ => format!("{c}*t^{i}"),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn digits(mut k: u64, p: u64, m: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(k % p);
        k /= p;
    }
    out
}

fn eval_base(coeffs: &[u64], t: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, t, p), c, p))
}

pub(crate) fn residues(u: &UniPoly) -> Vec<u64> {
    u.coeffs().iter().map(|c| c.residue().expect("prime-field polynomial")).collect()
}

/// `y`-coefficients of a bivariate polynomial as residue tables.
pub(crate) fn residue_table(f: &BiPoly) -> Vec<Vec<u64>> {
    f.y_coeffs().iter().map(residues).collect()
}

/// Exhaustive search for a common zero of `F, F_x, F_y` with both
/// coordinates in `F_{p^m}^×`. When `x_filter` is given only its roots are
/// tried as `x`-coordinates.
pub(crate) fn search_common_zero(
    ext: &ExtField,
    polys: [&BiPoly; 3],
    x_filter: Option<&UniPoly>,
) -> Option<(Elem, Elem)> {
    let tables: Vec<Vec<Vec<u64>>> = polys.iter().map(|f| residue_table(f)).collect();
    let filter = x_filter.map(residues);
    for kx in 1..ext.size() {
        let x0 = ext.element(kx);
        if let Some(h) = &filter {
            if !ext.is_zero(&ext.eval(h, &x0)) {
                continue;
            }
        }
        let specialized: Vec<Vec<Elem>> = tables
            .iter()
            .map(|t| t.iter().map(|cy| ext.eval(cy, &x0)).collect())
            .collect();
        for ky in 1..ext.size() {
            let y0 = ext.element(ky);
            if specialized.iter().all(|s| ext.is_zero(&ext.eval_ext(s, &y0))) {
                return Some((x0, y0));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_of_nine_elements() {
        let f9 = ExtField::new(3, 2);
        assert_eq!(f9.size(), 9);
        // every nonzero element satisfies a^8 = 1
        for k in 1..9 {
            let a = f9.element(k);
            let mut acc = f9.embed(1);
            for _ in 0..8 {
                acc = f9.mul(&acc, &a);
            }
            assert_eq!(acc, f9.embed(1), "element {}", f9.format(&a));
        }
    }

    #[test]
    fn cubic_extension_has_no_zero_divisors() {
        let f8 = ExtField::new(2, 3);
        for a in 1..8 {
            for b in 1..8 {
                assert!(!f8.is_zero(&f8.mul(&f8.element(a), &f8.element(b))));
            }
        }
    }
}
