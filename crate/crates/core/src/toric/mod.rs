//! Minimal binomial generators for the ideal of the toric surface of a
//! lattice polygon: quadrics from sum classes of pairs, plus the cubics
//! needed when the polygon has only three boundary points.

mod form;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{ExactMatrix, Field, RowSpace};
use crate::error::{Error, Result};
use crate::lattice::{classify, LatticePoint, LatticePolygon, PolygonClass};

pub use form::{multiple_rows, span_dimension, Monomial, MonomialForm, MonomialIndex};
pub(crate) use form::exponent_sum;

/// Binomial coefficient as `u128`, saturating.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Number of lattice points of `d·Γ`, with `0·Γ` a single point.
fn dilate_count(poly: &LatticePolygon, d: usize) -> usize {
    if d == 0 {
        1
    } else {
        poly.dilate(d as i64).lattice_point_count()
    }
}

/// `dim I_d(Tor(Γ)) = C(N + d - 1, d) − #(dΓ ∩ ℤ²)`.
pub fn dim_id_toric(poly: &LatticePolygon, d: usize) -> Result<usize> {
    if !poly.is_full() {
        return Err(Error::NotTwoDimensional(poly.dimension().as_i8()));
    }
    let n = poly.lattice_point_count() as u64;
    let monomials = binomial(n + d as u64 - 1, d as u64);
    let image = dilate_count(poly, d) as u128;
    usize::try_from(monomials - image).map_err(|_| Error::DegreeOutOfRange(d))
}

/// Matrix of `χ_d`: rows are the lattice points of `dΓ` in sorted order,
/// columns the degree-`d` monomials in [`MonomialIndex`] order.
pub fn chi_matrix(poly: &LatticePolygon, d: usize, field: Field) -> Result<ExactMatrix> {
    if d == 0 {
        return Err(Error::DegreeOutOfRange(d));
    }
    let ambient: Arc<[LatticePoint]> = poly.lattice_points().into();
    let index = MonomialIndex::new(ambient, d);
    let targets = poly.dilate(d as i64);
    let targets = targets.lattice_points();
    let mut rows = vec![Vec::new(); targets.len()];
    for t in index.tuples() {
        let s = exponent_sum(&index.monomial(&t));
        let r = targets
            .binary_search(&s)
            .map_err(|_| Error::Invariant(format!("monomial sum {s} outside the dilation")))?;
        rows[r].push((index.rank_indices(&t), field.one()));
    }
    ExactMatrix::from_sparse_rows(field, index.len(), rows)
}

/// Star-pattern quadrics: pairs `{p, q}` grouped by `p + q`, each
/// non-representative pair paired with the lexicographically least one as
/// `X_{p0}X_{q0} − X_pX_q`.
pub fn quadric_generators(poly: &LatticePolygon, field: Field) -> Result<Vec<MonomialForm>> {
    if !poly.is_full() {
        return Err(Error::NotTwoDimensional(poly.dimension().as_i8()));
    }
    let pts = poly.lattice_points();
    let ambient: Arc<[LatticePoint]> = pts.into();
    let mut classes: BTreeMap<LatticePoint, Vec<Monomial>> = BTreeMap::new();
    for (i, &p) in pts.iter().enumerate() {
        for &q in &pts[i..] {
            classes.entry(p + q).or_default().push(vec![p, q]);
        }
    }
    let mut out = Vec::new();
    for pairs in classes.values() {
        // pairs were generated in lexicographic order, so pairs[0] is least
        for other in &pairs[1..] {
            out.push(MonomialForm::binomial(field, ambient.clone(), pairs[0].clone(), other.clone())?);
        }
    }
    Ok(out)
}

/// Cubic binomials completing the quadrics to a minimal generating set.
pub fn cubic_generators(
    poly: &LatticePolygon,
    class: &PolygonClass,
    field: Field,
    quadrics: &[MonomialForm],
) -> Result<Vec<MonomialForm>> {
    let ambient: Arc<[LatticePoint]> = poly.lattice_points().into();
    match class {
        PolygonClass::ManyBoundary | PolygonClass::SimplexSigma => Ok(Vec::new()),
        PolygonClass::NonHypThree => {
            let cubic = vertex_cubic(poly, field, &ambient)?;
            let index = MonomialIndex::new(ambient.clone(), 3);
            let mut space = RowSpace::new(field, index.len());
            for row in multiple_rows(quadrics, &index)? {
                space.insert(&row)?;
            }
            if space.contains(&cubic.to_sparse(&index)?)? {
                return Err(Error::CubicSearchFailed(format!(
                    "{poly}: the cubic {cubic} lies in the span of the quadrics"
                )));
            }
            Ok(vec![cubic])
        }
        PolygonClass::HypThree { r, to_normal } => {
            let back = to_normal.inverse();
            let map = |p: (i64, i64)| back.apply(p.into());
            let mut out = Vec::with_capacity(*r);
            for i in 1..=*r as i64 {
                let plus = vec![map((-1, 1)), map((0, -1)), map((i, 0))];
                let minus = vec![map((0, 0)), map((0, 0)), map((i - 1, 0))];
                out.push(MonomialForm::binomial(field, ambient.clone(), plus, minus)?);
            }
            Ok(out)
        }
    }
}

/// `X_{v1}X_{v2}X_{v3} − X_{p1}X_{p2}X_{p3}` with the lexicographically least
/// multiset `{p_i} ≠ {v_i}` of lattice points summing to `v1 + v2 + v3`.
fn vertex_cubic(poly: &LatticePolygon, field: Field, ambient: &Arc<[LatticePoint]>) -> Result<MonomialForm> {
    let mut verts = poly.vertices().to_vec();
    verts.sort();
    if verts.len() != 3 {
        return Err(Error::CubicSearchFailed(format!("{poly} is not a triangle")));
    }
    let target = exponent_sum(&verts);
    let dilates: Vec<LatticePolygon> = (1..=3).map(|k| poly.dilate(k)).collect();
    let mut found = None;
    let mut cur = Vec::with_capacity(3);
    search_multiset(ambient, &dilates, 3, 0, target, &mut cur, &mut |m| {
        if m != verts.as_slice() {
            found = Some(m.to_vec());
            true
        } else {
            false
        }
    });
    let partner = found.ok_or_else(|| Error::CubicSearchFailed(poly.to_string()))?;
    MonomialForm::binomial(field, ambient.clone(), verts, partner)
}

/// Depth-first search over sorted multisets of `points` (lexicographic
/// order) of size `k` summing to `target`. `dilates[j]` must be `(j+1)·P`
/// for the polygon `P` containing `points`; it prunes partial sums that
/// cannot be completed. Stops as soon as `accept` returns true.
pub(crate) fn search_multiset(
    points: &[LatticePoint],
    dilates: &[LatticePolygon],
    k: usize,
    start: usize,
    target: LatticePoint,
    cur: &mut Vec<LatticePoint>,
    accept: &mut dyn FnMut(&[LatticePoint]) -> bool,
) -> bool {
    if k == 0 {
        return target == LatticePoint::ORIGIN && accept(cur);
    }
    if !dilates[k - 1].contains(target) {
        return false;
    }
    for (i, &p) in points.iter().enumerate().skip(start) {
        cur.push(p);
        let done = search_multiset(points, dilates, k - 1, i, target - p, cur, accept);
        cur.pop();
        if done {
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricCounts {
    /// `N = #(Γ ∩ ℤ²)`.
    pub points: usize,
    /// `#(2Γ ∩ ℤ²)`.
    pub doubled_points: usize,
    /// Number of cubic generators `c_Γ`.
    pub cubics: usize,
}

/// Minimal generating set of `I(Tor(Γ))`.
#[derive(Clone, Debug)]
pub struct ToricGenerators {
    pub polygon: LatticePolygon,
    pub class: PolygonClass,
    pub quadrics: Vec<MonomialForm>,
    pub cubics: Vec<MonomialForm>,
    pub counts: ToricCounts,
}

impl ToricGenerators {
    pub fn all(&self) -> impl Iterator<Item = &MonomialForm> + '_ {
        self.quadrics.iter().chain(&self.cubics)
    }

    pub fn ambient(&self) -> Arc<[LatticePoint]> {
        self.polygon.lattice_points().into()
    }
}

pub fn toric_ideal(poly: &LatticePolygon, field: Field) -> Result<ToricGenerators> {
    let class = classify(poly)?;
    let quadrics = quadric_generators(poly, field)?;
    let cubics = cubic_generators(poly, &class, field, &quadrics)?;
    let counts = ToricCounts {
        points: poly.lattice_point_count(),
        doubled_points: dilate_count(poly, 2),
        cubics: class.cubic_count(),
    };
    let expected = dim_id_toric(poly, 2)?;
    if quadrics.len() != expected {
        return Err(Error::Invariant(format!(
            "{poly}: {} quadrics, expected {expected}",
            quadrics.len()
        )));
    }
    if cubics.len() != counts.cubics {
        return Err(Error::Invariant(format!(
            "{poly}: {} cubics, expected {}",
            cubics.len(),
            counts.cubics
        )));
    }
    Ok(ToricGenerators {
        polygon: poly.clone(),
        class,
        quadrics,
        cubics,
        counts,
    })
}
