use std::fmt;

use super::LaurentPoly;
use crate::algebra::UniPoly;
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon};

/// A face of a two-dimensional Newton polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Face {
    Vertex(LatticePoint),
    /// Edge between two consecutive vertices, in counterclockwise order.
    Edge(LatticePoint, LatticePoint),
    Full,
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Face::Vertex(v) => write!(f, "vertex {v}"),
            Face::Edge(a, b) => write!(f, "edge {a}-{b}"),
            Face::Full => f.write_str("full polygon"),
        }
    }
}

/// Vertices, then edges, then the polygon itself.
pub fn faces(poly: &LatticePolygon) -> Vec<Face> {
    let mut out: Vec<Face> = poly.vertices().iter().map(|&v| Face::Vertex(v)).collect();
    out.extend(poly.edges().map(|(a, b)| Face::Edge(a, b)));
    out.push(Face::Full);
    out
}

/// The restriction `f_τ` and, for edges, the univariate edge polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRestriction {
    pub poly: LaurentPoly,
    /// For an edge from `a` to `b` with primitive direction `u`:
    /// `g(t) = Σ_k c_{a + k·u} t^k`, so `g(0) = c_a ≠ 0`.
    pub edge_poly: Option<UniPoly>,
}

pub fn restrict_to_face(f: &LaurentPoly, face: &Face) -> Result<FaceRestriction> {
    let poly = f.newton_polygon()?;
    match *face {
        Face::Full => Ok(FaceRestriction {
            poly: f.clone(),
            edge_poly: None,
        }),
        Face::Vertex(v) => {
            if !poly.vertices().contains(&v) {
                return Err(Error::NotAFace(face.to_string()));
            }
            Ok(FaceRestriction {
                poly: LaurentPoly::monomial(v, f.coeff(v)),
                edge_poly: None,
            })
        }
        Face::Edge(a, b) => {
            let is_edge = poly.edges().any(|(s, t)| (s, t) == (a, b) || (s, t) == (b, a));
            if !is_edge {
                return Err(Error::NotAFace(face.to_string()));
            }
            let dir = b - a;
            let len = dir.lattice_length();
            let u = dir.primitive();
            let mut restricted = LaurentPoly::zero(f.field());
            let mut coeffs = Vec::with_capacity(len as usize + 1);
            for k in 0..=len {
                let e = a + k * u;
                let c = f.coeff(e);
                if !c.is_zero() {
                    restricted.add_term(e, c.clone());
                }
                coeffs.push(c);
            }
            Ok(FaceRestriction {
                poly: restricted,
                edge_poly: Some(UniPoly::new(f.field(), coeffs)?),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::laurent::parse_laurent;

    fn pt(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    #[test]
    fn face_list() {
        let fs = faces(&LatticePolygon::sigma());
        assert_eq!(fs.len(), 7);
        assert_eq!(fs.last(), Some(&Face::Full));
    }

    #[test]
    fn vertex_and_full() {
        let f = parse_laurent("x + y + 1", Field::Rationals).unwrap();
        let r = restrict_to_face(&f, &Face::Vertex(pt(0, 0))).unwrap();
        assert_eq!(r.poly, parse_laurent("1", Field::Rationals).unwrap());
        assert_eq!(restrict_to_face(&f, &Face::Full).unwrap().poly, f);
        assert!(matches!(restrict_to_face(&f, &Face::Vertex(pt(1, 1))), Err(Error::NotAFace(_))));
    }

    #[test]
    fn edge_polynomials() {
        let q = Field::Rationals;
        let f = parse_laurent("x^2 + 2*x*y + y^2", q).unwrap();
        let r = restrict_to_face(&f, &Face::Edge(pt(2, 0), pt(0, 2))).unwrap();
        assert_eq!(r.edge_poly.unwrap(), UniPoly::from_i64s(q, &[1, 2, 1]));

        let g = parse_laurent("13*x^6*y^5 - 6*x^6*y^4 + 2*x^3*y^5 + 4*x^3*y^4 + x^3 + 3*y^4", q).unwrap();
        let r = restrict_to_face(&g, &Face::Edge(pt(3, 0), pt(0, 4))).unwrap();
        assert_eq!(r.poly, parse_laurent("x^3 + 3*y^4", q).unwrap());
        assert_eq!(r.edge_poly.unwrap(), UniPoly::from_i64s(q, &[1, 3]));
        assert!(restrict_to_face(&g, &Face::Edge(pt(3, 0), pt(6, 5))).is_err());
    }
}
