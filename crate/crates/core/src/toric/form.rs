use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Field, FieldElement, RowSpace, SparseVec};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::lattice::LatticePoint;

/// A monomial `X_{p1}···X_{pd}`, stored as the sorted multiset of indices.
pub type Monomial = Vec<LatticePoint>;

/// Homogeneous form in the variables `X_p`, `p` ranging over a sorted
/// ambient point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialForm {
    degree: usize,
    field: Field,
    terms: BTreeMap<Monomial, FieldElement>,
    ambient: Arc<[LatticePoint]>,
}

impl MonomialForm {
    pub fn zero(field: Field, degree: usize, ambient: Arc<[LatticePoint]>) -> Self {
        MonomialForm {
            degree,
            field,
            terms: BTreeMap::new(),
            ambient,
        }
    }

    /// Build from `(monomial, coefficient)` pairs; monomials need not be sorted.
    pub fn from_terms(
        field: Field,
        degree: usize,
        ambient: Arc<[LatticePoint]>,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Result<Self> {
        let mut form = MonomialForm::zero(field, degree, ambient);
        for (m, c) in terms {
            form.add_term(m, c)?;
        }
        Ok(form)
    }

    /// `X_plus − X_minus`.
    pub fn binomial(field: Field, ambient: Arc<[LatticePoint]>, plus: Monomial, minus: Monomial) -> Result<Self> {
        let degree = plus.len();
        MonomialForm::from_terms(
            field,
            degree,
            ambient,
            [(plus, field.one()), (minus, FieldElement::from_i64(field, -1))],
        )
    }

    pub fn add_term(&mut self, mut m: Monomial, c: FieldElement) -> Result<()> {
        self.field.check(c.field())?;
        if m.len() != self.degree {
            return Err(Error::Invariant(format!(
                "monomial of degree {} in a form of degree {}",
                m.len(),
                self.degree
            )));
        }
        m.sort();
        if let Some(p) = m.iter().find(|p| self.ambient.binary_search(p).is_err()) {
            return Err(Error::Invariant(format!("variable X{p} outside the ambient point set")));
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> &Arc<[LatticePoint]> {
        &self.ambient
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, m: &[LatticePoint]) -> FieldElement {
        let mut key = m.to_vec();
        key.sort();
        self.terms.get(&key).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Two terms with coefficients `+1` and `−1`.
    pub fn is_binomial(&self) -> bool {
        let mut cs: Vec<_> = self.terms.values().collect();
        cs.sort_by_key(|c| !c.is_one());
        cs.len() == 2 && cs[0].is_one() && (-cs[1]).is_one()
    }

    /// Image under `χ_d`: each monomial goes to `x^i y^j` with `(i, j)` the
    /// sum of its indices.
    pub fn chi(&self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(m, c)| (exponent_sum(m), c.clone()));
        LaurentPoly::from_terms(self.field, terms).expect("coefficients share the form's field")
    }

    /// Product with the monomial `m`.
    pub fn times(&self, m: &[LatticePoint]) -> Result<MonomialForm> {
        let mut out = MonomialForm::zero(self.field, self.degree + m.len(), self.ambient.clone());
        for (t, c) in &self.terms {
            let mut prod = t.clone();
            prod.extend_from_slice(m);
            out.add_term(prod, c.clone())?;
        }
        Ok(out)
    }

    /// Sparse coefficient vector in the column order of `index`.
    pub fn to_sparse(&self, index: &MonomialIndex) -> Result<SparseVec> {
        if index.degree() != self.degree {
            return Err(Error::Invariant("monomial index of the wrong degree".into()));
        }
        self.terms
            .iter()
            .map(|(m, c)| Ok((index.rank(m)?, c.clone())))
            .collect()
    }

    /// Coefficient vector of `m·self` in the column order of `index`, without
    /// materializing the product form.
    pub fn sparse_multiple(&self, m: &[usize], index: &MonomialIndex) -> Result<SparseVec> {
        let mut row = Vec::with_capacity(self.terms.len());
        let mut buf = Vec::with_capacity(index.degree());
        for (t, c) in &self.terms {
            buf.clear();
            for p in t {
                buf.push(index.position(p)?);
            }
            buf.extend_from_slice(m);
            buf.sort_unstable();
            row.push((index.rank_indices(&buf), c.clone()));
        }
        Ok(row)
    }

    /// Copy with the coefficient of `m` replaced.
    pub fn with_coefficient(&self, m: &[LatticePoint], c: FieldElement) -> Result<MonomialForm> {
        let mut out = self.clone();
        let mut key = m.to_vec();
        key.sort();
        out.terms.remove(&key);
        out.add_term(key, c)?;
        Ok(out)
    }
}

pub(crate) fn exponent_sum(m: &[LatticePoint]) -> LatticePoint {
    m.iter().fold(LatticePoint::ORIGIN, |acc, &p| acc + p)
}

fn fmt_monomial(m: &[LatticePoint]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < m.len() {
        let mut j = i;
        while j < m.len() && m[j] == m[i] {
            j += 1;
        }
        let var = format!("X[{},{}]", m[i].x, m[i].y);
        parts.push(if j - i == 1 { var } else { format!("{var}^{}", j - i) });
        i = j;
    }
    parts.join("*")
}

impl fmt::Display for MonomialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if abs.is_one() {
                f.write_str(&fmt_monomial(m))?;
            } else {
                write!(f, "{abs}*{}", fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}

/// Bijection between degree-`d` monomials in `N` variables and
/// `0..C(N+d-1, d)`.
///
/// A sorted index tuple `a_0 ≤ … ≤ a_{d-1}` becomes the strictly increasing
/// `b_i = a_i + i`, ranked in colexicographic order as `Σ C(b_i, i+1)`.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    points: Arc<[LatticePoint]>,
    degree: usize,
    binom: Vec<Vec<usize>>,
}

impl MonomialIndex {
    pub fn new(points: Arc<[LatticePoint]>, degree: usize) -> Self {
        let n = points.len() + degree;
        let mut binom = vec![vec![0usize; degree + 2]; n + 1];
        for row in binom.iter_mut() {
            row[0] = 1;
        }
        for i in 1..=n {
            for k in 1..=degree + 1 {
                binom[i][k] = binom[i - 1][k - 1].saturating_add(binom[i - 1][k]);
            }
        }
        MonomialIndex { points, degree, binom }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn points(&self) -> &Arc<[LatticePoint]> {
        &self.points
    }

    /// Number of monomials, `C(N + d - 1, d)`.
    pub fn len(&self) -> usize {
        let n = self.points.len();
        if n == 0 {
            return usize::from(self.degree == 0);
        }
        self.binom[n + self.degree - 1][self.degree]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn position(&self, p: &LatticePoint) -> Result<usize> {
        self.points
            .binary_search(p)
            .map_err(|_| Error::Invariant(format!("variable X{p} outside the ambient point set")))
    }

    /// Rank of a sorted index tuple.
    pub fn rank_indices(&self, sorted: &[usize]) -> usize {
        sorted
            .iter()
            .enumerate()
            .map(|(i, &a)| self.binom[a + i][i + 1])
            .sum()
    }

    pub fn rank(&self, m: &[LatticePoint]) -> Result<usize> {
        let mut idx = m.iter().map(|p| self.position(p)).collect::<Result<Vec<_>>>()?;
        idx.sort_unstable();
        Ok(self.rank_indices(&idx))
    }

    /// All sorted index tuples of length `degree`, in lexicographic order.
    pub fn tuples(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = Vec::with_capacity(self.degree);
        tuples_rec(self.points.len(), self.degree, 0, &mut cur, &mut out);
        out
    }

    pub fn monomial(&self, tuple: &[usize]) -> Monomial {
        tuple.iter().map(|&i| self.points[i]).collect()
    }
}

fn tuples_rec(n: usize, d: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == d {
        out.push(cur.clone());
        return;
    }
    for i in start..n {
        cur.push(i);
        tuples_rec(n, d, i, cur, out);
        cur.pop();
    }
}

/// Coefficient rows of every `m·G` of degree `d`, for `G` in `forms` with
/// `deg G ≤ d`, in the order forms × multiplier tuples.
pub fn multiple_rows(forms: &[MonomialForm], index: &MonomialIndex) -> Result<Vec<SparseVec>> {
    let d = index.degree();
    let mut by_degree: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    let mut rows = Vec::new();
    for g in forms {
        if g.degree() > d {
            continue;
        }
        let k = d - g.degree();
        let mults = by_degree
            .entry(k)
            .or_insert_with(|| MonomialIndex::new(index.points().clone(), k).tuples());
        for m in mults.iter() {
            rows.push(g.sparse_multiple(m, index)?);
        }
    }
    Ok(rows)
}

/// Dimension of the degree-`d` part of the ideal generated by `forms`.
pub fn span_dimension(field: Field, ambient: Arc<[LatticePoint]>, forms: &[MonomialForm], d: usize) -> Result<usize> {
    let index = MonomialIndex::new(ambient, d);
    let mut space = RowSpace::new(field, index.len());
    for row in multiple_rows(forms, &index)? {
        space.insert(&row)?;
    }
    Ok(space.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticePolygon;

    fn pts(n: i64) -> Arc<[LatticePoint]> {
        (0..n).map(|i| LatticePoint::new(i, 0)).collect::<Vec<_>>().into()
    }

    #[test]
    fn ranking_is_a_bijection() {
        for (n, d) in [(1, 3), (4, 2), (5, 3), (6, 4)] {
            let index = MonomialIndex::new(pts(n), d);
            let tuples = index.tuples();
            assert_eq!(tuples.len(), index.len());
            let mut ranks: Vec<usize> = tuples.iter().map(|t| index.rank_indices(t)).collect();
            ranks.sort_unstable();
            assert_eq!(ranks, (0..index.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn binomial_display_and_chi() {
        let ambient: Arc<[LatticePoint]> = LatticePolygon::upsilon().lattice_points().into();
        let q = Field::Rationals;
        let cubic = MonomialForm::binomial(
            q,
            ambient,
            vec![(-1, -1).into(), (1, 0).into(), (0, 1).into()],
            vec![(0, 0).into(); 3],
        )
        .unwrap();
        assert!(cubic.is_binomial());
        assert_eq!(cubic.to_string(), "X[-1,-1]*X[0,1]*X[1,0] - X[0,0]^3");
        assert!(cubic.chi().is_zero());
    }

    #[test]
    fn outside_variables_rejected() {
        let q = Field::Rationals;
        let r = MonomialForm::binomial(q, pts(2), vec![(0, 0).into(), (5, 0).into()], vec![(1, 0).into(); 2]);
        assert!(matches!(r, Err(Error::Invariant(_))));
    }

    #[test]
    fn multiples_match_explicit_products() {
        let q = Field::Rationals;
        let ambient = pts(3);
        let g = MonomialForm::binomial(q, ambient.clone(), vec![(0, 0).into(), (2, 0).into()], vec![(1, 0).into(); 2])
            .unwrap();
        let index = MonomialIndex::new(ambient.clone(), 3);
        let rows = multiple_rows(std::slice::from_ref(&g), &index).unwrap();
        assert_eq!(rows.len(), 3);
        for (row, t) in rows.iter().zip(MonomialIndex::new(ambient.clone(), 1).tuples()) {
            let explicit = g.times(&[ambient[t[0]]]).unwrap().to_sparse(&index).unwrap();
            let mut sorted = row.clone();
            sorted.sort_by_key(|(j, _)| *j);
            let mut e = explicit.clone();
            e.sort_by_key(|(j, _)| *j);
            assert_eq!(sorted, e);
        }
        assert_eq!(span_dimension(q, ambient, &[g], 3).unwrap(), 3);
    }
}
