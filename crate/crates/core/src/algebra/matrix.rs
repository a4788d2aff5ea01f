//! Exact sparse linear algebra.
//!
//! Rows are stored sparsely as `(column, value)` pairs sorted by column. Over
//! the rationals each row is scaled to a primitive integer vector and
//! eliminated fraction-free (`r ← b·r − a·s`, then divided by its content),
//! so no rational arithmetic happens inside the elimination loop. Over `F_p`
//! rows are kept monic and eliminated directly.
//!
//! [`RowSpace`] is an incremental echelon form: rows are inserted one at a
//! time and kept only when independent of what is already there, which gives
//! the greedy, input-order independent subset used everywhere else.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{inv_mod, mul_mod, sub_mod, Field, FieldElement};
use crate::error::{Error, Result};

pub type SparseVec = Vec<(usize, FieldElement)>;

/// Matrix over a [`Field`] stored as sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl ExactMatrix {
    pub fn zeros(field: Field, nrows: usize, ncols: usize) -> Self {
        ExactMatrix {
            field,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        ExactMatrix {
            field,
            ncols: n,
            rows: (0..n).map(|i| vec![(i, field.one())]).collect(),
        }
    }

    pub fn from_dense(field: Field, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut sparse = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != ncols {
                return Err(Error::Invariant("ragged matrix rows".into()));
            }
            sparse.push(row.into_iter().enumerate().collect());
        }
        Self::from_sparse_rows(field, ncols, sparse)
    }

    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Self {
        let dense = rows
            .iter()
            .map(|r| r.iter().map(|&v| FieldElement::from_i64(field, v)).collect())
            .collect();
        Self::from_dense(field, dense).expect("well-formed integer matrix")
    }

    /// Rows are normalized: sorted by column, duplicates summed, zeros dropped.
    pub fn from_sparse_rows(field: Field, ncols: usize, rows: Vec<SparseVec>) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            out.push(normalize_sparse(field, ncols, row)?);
        }
        Ok(ExactMatrix {
            field,
            ncols,
            rows: out,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.ncols {
            return Err(Error::Invariant("vector length does not match column count".into()));
        }
        let mut out = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut acc = self.field.zero();
            for (j, a) in row {
                acc = &acc + &a.try_mul(&v[*j])?;
            }
            out.push(acc);
        }
        Ok(out)
    }
}

/// Sort, merge duplicate columns, drop zeros, and check field membership.
pub fn normalize_sparse(field: Field, ncols: usize, mut row: SparseVec) -> Result<SparseVec> {
    for (j, v) in &row {
        field.check(v.field())?;
        if *j >= ncols {
            return Err(Error::Invariant(format!("column {j} out of range {ncols}")));
        }
    }
    row.sort_by_key(|(j, _)| *j);
    let mut out: SparseVec = Vec::with_capacity(row.len());
    for (j, v) in row {
        match out.last_mut() {
            Some((lj, lv)) if *lj == j => *lv = &*lv + &v,
            _ => out.push((j, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    Ok(out)
}

/// Rank together with the greedy pivot choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    pub rank: usize,
    /// Indices of rows kept by the greedy scan, in input order.
    pub pivot_rows: Vec<usize>,
    /// Leading column of each kept row (after reduction), aligned with `pivot_rows`.
    pub pivot_cols: Vec<usize>,
}

pub fn rank_and_pivots(m: &ExactMatrix) -> RankProfile {
    let mut space = RowSpace::new(m.field, m.ncols);
    let mut pivot_rows = Vec::new();
    for (i, row) in m.rows.iter().enumerate() {
        if space.insert(row).expect("rows share the matrix field") {
            pivot_rows.push(i);
        }
    }
    RankProfile {
        rank: space.rank(),
        pivot_cols: space.leading_columns(),
        pivot_rows,
    }
}

/// Basis of the right kernel `{v : M·v = 0}`, one vector per free column.
///
/// Over the rationals each vector is scaled to a primitive integer vector
/// with a positive entry in its free column.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<FieldElement>> {
    let mut space = RowSpace::new(m.field, m.ncols);
    for row in &m.rows {
        space.insert(row).expect("rows share the matrix field");
    }
    space.kernel()
}

/// Incrementally built row echelon form.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Field,
    ncols: usize,
    inner: Inner,
}

#[derive(Clone, Debug)]
enum Inner {
    Integer(Echelon<BigInt>),
    Modular(Echelon<u64>, u64),
}

impl RowSpace {
    pub fn new(field: Field, ncols: usize) -> Self {
        let inner = match field {
            Field::Rationals => Inner::Integer(Echelon::new()),
            Field::Prime(p) => Inner::Modular(Echelon::new(), p),
        };
        RowSpace { field, ncols, inner }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        match &self.inner {
            Inner::Integer(e) => e.rows.len(),
            Inner::Modular(e, _) => e.rows.len(),
        }
    }

    /// Insert a row; returns whether it was independent of the current span.
    pub fn insert(&mut self, row: &[(usize, FieldElement)]) -> Result<bool> {
        let row = normalize_sparse(self.field, self.ncols, row.to_vec())?;
        Ok(match &mut self.inner {
            Inner::Integer(e) => e.insert(to_integer_row(&row), &IntOps),
            Inner::Modular(e, p) => {
                let ops = ModOps(*p);
                e.insert(to_residue_row(&row, *p), &ops)
            }
        })
    }

    /// Whether the row lies in the current span.
    pub fn contains(&self, row: &[(usize, FieldElement)]) -> Result<bool> {
        let row = normalize_sparse(self.field, self.ncols, row.to_vec())?;
        Ok(match &self.inner {
            Inner::Integer(e) => e.reduce(to_integer_row(&row), &IntOps).is_empty(),
            Inner::Modular(e, p) => e.reduce(to_residue_row(&row, *p), &ModOps(*p)).is_empty(),
        })
    }

    pub fn leading_columns(&self) -> Vec<usize> {
        match &self.inner {
            Inner::Integer(e) => e.rows.iter().map(|r| r[0].0).collect(),
            Inner::Modular(e, _) => e.rows.iter().map(|r| r[0].0).collect(),
        }
    }

    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        match &self.inner {
            Inner::Integer(e) => {
                let rref = e.clone().into_rref(&IntOps);
                rref_kernel(self.ncols, &rref, |free, entries| {
                    // v_free = lead_lcm, v_pivot = -entry·lcm/lead
                    let l = entries
                        .iter()
                        .fold(BigInt::one(), |acc, (_, _, lead)| acc.lcm(lead));
                    let mut v = vec![Field::Rationals.zero(); self.ncols];
                    v[free] = FieldElement::Rational(BigRational::from_integer(l.clone()));
                    for (col, val, lead) in entries {
                        let x = -(*val * (&l / *lead));
                        v[*col] = FieldElement::Rational(BigRational::from_integer(x));
                    }
                    primitive_rational_vector(v)
                })
            }
            Inner::Modular(e, p) => {
                let p = *p;
                let rref = e.clone().into_rref(&ModOps(p));
                rref_kernel(self.ncols, &rref, |free, entries| {
                    let mut v = vec![Field::Prime(p).zero(); self.ncols];
                    v[free] = Field::Prime(p).one();
                    for (col, val, _) in entries {
                        v[*col] = FieldElement::Residue {
                            value: sub_mod(0, **val, p),
                            modulus: p,
                        };
                    }
                    v
                })
            }
        }
    }
}

/// For each free column, gather `(pivot column, entry in free column, pivot value)`
/// from the RREF rows and let `build` assemble the kernel vector.
fn rref_kernel<T, F>(ncols: usize, rows: &[Vec<(usize, T)>], build: F) -> Vec<Vec<FieldElement>>
where
    F: Fn(usize, &[(usize, &T, &T)]) -> Vec<FieldElement>,
{
    let mut is_pivot = vec![false; ncols];
    for r in rows {
        is_pivot[r[0].0] = true;
    }
    let mut by_col: HashMap<usize, Vec<(usize, &T, &T)>> = HashMap::new();
    for r in rows {
        let (pc, lead) = (&r[0].0, &r[0].1);
        for (c, v) in &r[1..] {
            by_col.entry(*c).or_default().push((*pc, v, lead));
        }
    }
    (0..ncols)
        .filter(|&j| !is_pivot[j])
        .map(|j| build(j, by_col.get(&j).map_or(&[][..], |v| v.as_slice())))
        .collect()
}

fn primitive_rational_vector(v: Vec<FieldElement>) -> Vec<FieldElement> {
    let g = v
        .iter()
        .filter_map(|e| e.as_rational())
        .fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter()
        .map(|e| match e {
            FieldElement::Rational(q) => FieldElement::Rational(BigRational::from_integer(q.numer() / &g)),
            other => other,
        })
        .collect()
}

fn to_integer_row(row: &[(usize, FieldElement)]) -> Vec<(usize, BigInt)> {
    let l = row.iter().fold(BigInt::one(), |acc, (_, v)| {
        acc.lcm(v.as_rational().expect("rational row").denom())
    });
    let mut out: Vec<(usize, BigInt)> = row
        .iter()
        .map(|(j, v)| {
            let q = v.as_rational().expect("rational row");
            (*j, q.numer() * (&l / q.denom()))
        })
        .collect();
    IntOps.normalize(&mut out);
    out
}

fn to_residue_row(row: &[(usize, FieldElement)], p: u64) -> Vec<(usize, u64)> {
    let mut out: Vec<(usize, u64)> = row
        .iter()
        .map(|(j, v)| (*j, v.residue().expect("residue row")))
        .collect();
    ModOps(p).normalize(&mut out);
    out
}

/// Scalar operations used by the generic elimination.
trait ElimOps<T> {
    fn is_zero(&self, v: &T) -> bool;
    /// `target ← combination of target and pivot` that kills `target`'s entry at the pivot column.
    fn eliminate(&self, target: &[(usize, T)], pivot: &[(usize, T)], coeff: &T) -> Vec<(usize, T)>;
    /// Bring a nonzero row into canonical scaling.
    fn normalize(&self, row: &mut Vec<(usize, T)>);
}

struct IntOps;

impl ElimOps<BigInt> for IntOps {
    fn is_zero(&self, v: &BigInt) -> bool {
        v.is_zero()
    }

    fn eliminate(&self, target: &[(usize, BigInt)], pivot: &[(usize, BigInt)], coeff: &BigInt) -> Vec<(usize, BigInt)> {
        // target·(lead/g) − pivot·(coeff/g)
        let lead = &pivot[0].1;
        let g = lead.gcd(coeff);
        let (ms, mp) = (lead / &g, coeff / &g);
        let mut out = merge(target, pivot, |a, b| match (a, b) {
            (Some(a), Some(b)) => a * &ms - b * &mp,
            (Some(a), None) => a * &ms,
            (None, Some(b)) => -(b * &mp),
            (None, None) => unreachable!(),
        });
        out.retain(|(_, v)| !v.is_zero());
        self.normalize(&mut out);
        out
    }

    fn normalize(&self, row: &mut Vec<(usize, BigInt)>) {
        if row.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, v) in row.iter() {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        if row[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, v) in row.iter_mut() {
                *v = &*v / &g;
            }
        }
    }
}

struct ModOps(u64);

impl ElimOps<u64> for ModOps {
    fn is_zero(&self, v: &u64) -> bool {
        *v == 0
    }

    fn eliminate(&self, target: &[(usize, u64)], pivot: &[(usize, u64)], coeff: &u64) -> Vec<(usize, u64)> {
        // pivot rows are monic
        let p = self.0;
        let mut out = merge(target, pivot, |a, b| match (a, b) {
            (Some(a), Some(b)) => sub_mod(*a, mul_mod(*b, *coeff, p), p),
            (Some(a), None) => *a,
            (None, Some(b)) => sub_mod(0, mul_mod(*b, *coeff, p), p),
            (None, None) => unreachable!(),
        });
        out.retain(|(_, v)| *v != 0);
        out
    }

    fn normalize(&self, row: &mut Vec<(usize, u64)>) {
        let p = self.0;
        if let Some(&(_, lead)) = row.first() {
            if lead != 1 {
                let inv = inv_mod(lead, p);
                for (_, v) in row.iter_mut() {
                    *v = mul_mod(*v, inv, p);
                }
            }
        }
    }
}

fn merge<T, F>(a: &[(usize, T)], b: &[(usize, T)], mut f: F) -> Vec<(usize, T)>
where
    F: FnMut(Option<&T>, Option<&T>) -> T,
{
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push((a[i].0, f(Some(&a[i].1), None)));
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f(None, Some(&b[j].1))));
            j += 1;
        } else {
            out.push((a[i].0, f(Some(&a[i].1), Some(&b[j].1))));
            i += 1;
            j += 1;
        }
    }
    out
}

#[derive(Clone, Debug)]
struct Echelon<T> {
    rows: Vec<Vec<(usize, T)>>,
    pivot_of: HashMap<usize, usize>,
}

impl<T: Clone> Echelon<T> {
    fn new() -> Self {
        Echelon {
            rows: Vec::new(),
            pivot_of: HashMap::new(),
        }
    }

    /// Reduce until the leading column has no pivot row (or the row vanishes).
    fn reduce<O: ElimOps<T>>(&self, mut row: Vec<(usize, T)>, ops: &O) -> Vec<(usize, T)> {
        while let Some((lead_col, lead_val)) = row.first() {
            match self.pivot_of.get(lead_col) {
                Some(&pi) => {
                    let coeff = lead_val.clone();
                    row = ops.eliminate(&row, &self.rows[pi], &coeff);
                }
                None => break,
            }
        }
        row
    }

    fn insert<O: ElimOps<T>>(&mut self, row: Vec<(usize, T)>, ops: &O) -> bool {
        let mut row = self.reduce(row, ops);
        if row.is_empty() {
            return false;
        }
        ops.normalize(&mut row);
        self.pivot_of.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Reduced row echelon form: every pivot column is zero outside its pivot row.
    fn into_rref<O: ElimOps<T>>(mut self, ops: &O) -> Vec<Vec<(usize, T)>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i][0].0));
        for &pi in &order {
            let col = self.rows[pi][0].0;
            for other in 0..self.rows.len() {
                if other == pi {
                    continue;
                }
                let hit = self.rows[other]
                    .binary_search_by_key(&col, |(c, _)| *c)
                    .ok()
                    .map(|k| self.rows[other][k].1.clone());
                if let Some(coeff) = hit {
                    if ops.is_zero(&coeff) {
                        continue;
                    }
                    let reduced = ops.eliminate(&self.rows[other], &self.rows[pi], &coeff);
                    self.rows[other] = reduced;
                }
            }
        }
        self.rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> FieldElement {
        FieldElement::from_i64(Field::Rationals, n)
    }

    fn assert_kernel(m: &ExactMatrix, basis: &[Vec<FieldElement>]) {
        for v in basis {
            assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
        let profile = rank_and_pivots(m);
        assert_eq!(basis.len(), m.ncols() - profile.rank);
        let k = ExactMatrix::from_dense(m.field(), basis.to_vec()).unwrap_or(ExactMatrix::zeros(m.field(), 0, m.ncols()));
        assert_eq!(rank_and_pivots(&k).rank, basis.len());
    }

    #[test]
    fn identity_and_zero_ranks() {
        let id = ExactMatrix::identity(Field::Rationals, 3);
        assert_eq!(rank_and_pivots(&id).rank, 3);
        assert!(kernel_basis(&id).is_empty());
        let zero = ExactMatrix::zeros(Field::Rationals, 3, 4);
        assert_eq!(rank_and_pivots(&zero).rank, 0);
        assert_eq!(kernel_basis(&zero).len(), 4);
    }

    #[test]
    fn greedy_pivot_rows() {
        let m = ExactMatrix::from_i64(Field::Rationals, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 2, 1]]);
        let prof = rank_and_pivots(&m);
        assert_eq!(prof.rank, 2);
        assert_eq!(prof.pivot_rows, vec![0, 1]);
        assert_eq!(prof.pivot_cols, vec![0, 1]);
    }

    #[test]
    fn single_row_kernel() {
        let m = ExactMatrix::from_i64(Field::Rationals, &[vec![1, -1]]);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![q(1), q(1)]]);
    }

    #[test]
    fn kernel_over_rationals_with_fractions() {
        let half = FieldElement::from_ratio(Field::Rationals, &1.into(), &2.into()).unwrap();
        let m = ExactMatrix::from_dense(
            Field::Rationals,
            vec![
                vec![half.clone(), q(3), q(0), q(-2)],
                vec![q(2), q(0), q(5), q(1)],
                vec![q(5), q(6), q(10), q(-2)],
            ],
        )
        .unwrap();
        let k = kernel_basis(&m);
        assert_kernel(&m, &k);
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn kernel_over_prime_field() {
        let f = Field::prime(7).unwrap();
        // the last two rows are 2x and 3x the first one mod 7
        let m = ExactMatrix::from_i64(f, &[vec![1, 2, 3, 4], vec![2, 4, 6, 1], vec![3, 6, 9, 5], vec![0, 1, 0, 1]]);
        let k = kernel_basis(&m);
        assert_kernel(&m, &k);
        assert_eq!(rank_and_pivots(&m).rank, 2);
        assert_eq!(rank_and_pivots(&m).pivot_rows, vec![0, 3]);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 7
        let rows = vec![vec![2, 1], vec![1, 4]];
        assert_eq!(rank_and_pivots(&ExactMatrix::from_i64(Field::Rationals, &rows)).rank, 2);
        assert_eq!(rank_and_pivots(&ExactMatrix::from_i64(Field::Prime(7), &rows)).rank, 1);
        assert_eq!(rank_and_pivots(&ExactMatrix::from_i64(Field::Prime(11), &rows)).rank, 2);
    }

    #[test]
    fn row_space_membership() {
        let mut s = RowSpace::new(Field::Rationals, 3);
        assert!(s.insert(&[(0, q(2)), (1, q(4))]).unwrap());
        assert!(s.contains(&[(0, q(-1)), (1, q(-2))]).unwrap());
        assert!(!s.contains(&[(2, q(1))]).unwrap());
        assert!(!s.insert(&[(0, q(3)), (1, q(6))]).unwrap());
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn field_mismatch_on_insert() {
        let mut s = RowSpace::new(Field::Rationals, 2);
        let r = s.insert(&[(0, Field::Prime(5).one())]);
        assert!(matches!(r, Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn random_integer_matrices_agree_across_fields() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
            let base: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-3..4)).collect()).collect();
            // append dependent rows
            let mut rows = base.clone();
            rows.push((0..c).map(|j| base.iter().map(|row| row[j]).sum()).collect());
            let mq = ExactMatrix::from_i64(Field::Rationals, &rows);
            let mp = ExactMatrix::from_i64(Field::Prime(1_000_003), &rows);
            let rq = rank_and_pivots(&mq).rank;
            assert_eq!(rq, rank_and_pivots(&mp).rank);
            assert_kernel(&mq, &kernel_basis(&mq));
            assert_kernel(&mp, &kernel_basis(&mp));
        }
    }
}
