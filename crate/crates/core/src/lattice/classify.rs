use std::fmt;

use super::{convex_hull, unimodular_equivalent, Dimension, LatticePoint, LatticePolygon, UnimodularMap};
use crate::error::{Error, Result};

/// Case split governing how many cubic generators a toric surface ideal needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolygonClass {
    /// At least four boundary lattice points.
    ManyBoundary,
    /// Unimodularly equivalent to the standard simplex.
    SimplexSigma,
    /// Three boundary points, not a unimodular simplex, interior hull not a segment.
    NonHypThree,
    /// Three boundary points and a one-dimensional interior hull of `r` points.
    /// `to_normal` carries the polygon onto conv{(-1,1),(0,-1),(r,0)}.
    HypThree { r: usize, to_normal: UnimodularMap },
}

impl PolygonClass {
    pub fn tag(&self) -> &'static str {
        match self {
            PolygonClass::ManyBoundary => "many_boundary",
            PolygonClass::SimplexSigma => "simplex_sigma",
            PolygonClass::NonHypThree => "non_hyperelliptic_three",
            PolygonClass::HypThree { .. } => "hyperelliptic_three",
        }
    }

    /// Number of cubics in a minimal generating set of the toric ideal.
    pub fn cubic_count(&self) -> usize {
        match self {
            PolygonClass::ManyBoundary | PolygonClass::SimplexSigma => 0,
            PolygonClass::NonHypThree => 1,
            PolygonClass::HypThree { r, .. } => *r,
        }
    }
}

impl fmt::Display for PolygonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolygonClass::HypThree { r, .. } => write!(f, "{} (r = {r})", self.tag()),
            _ => f.write_str(self.tag()),
        }
    }
}

/// The triangle conv{(-1,1),(0,-1),(r,0)}: three boundary points and the
/// `r` interior points (0,0), …, (r-1,0).
pub fn normalized_hyperelliptic(r: usize) -> LatticePolygon {
    convex_hull(&[
        LatticePoint::new(-1, 1),
        LatticePoint::new(0, -1),
        LatticePoint::new(r as i64, 0),
    ])
}

pub fn classify(poly: &LatticePolygon) -> Result<PolygonClass> {
    if !poly.is_full() {
        return Err(Error::NotTwoDimensional(poly.dimension().as_i8()));
    }
    if poly.boundary_count() >= 4 {
        return Ok(PolygonClass::ManyBoundary);
    }
    let n = poly.lattice_point_count();
    if n == 3 {
        // three boundary points and nothing else: a unimodular triangle
        return Ok(PolygonClass::SimplexSigma);
    }
    if poly.interior_hull().dimension() == Dimension::Segment {
        let r = n - 3;
        let to_normal = unimodular_equivalent(poly, &normalized_hyperelliptic(r)).ok_or_else(|| {
            Error::Invariant(format!(
                "hyperelliptic triangle {poly} is not equivalent to the normalized triangle with r = {r}"
            ))
        })?;
        return Ok(PolygonClass::HypThree { r, to_normal });
    }
    Ok(PolygonClass::NonHypThree)
}
