use std::fmt;

use serde::{Deserialize, Serialize};

use super::{convex_hull, Dimension, LatticePoint, LatticePolygon};

/// Affine map `(x, y) ↦ (a·x + b·y, c·x + d·y) + t` with `ad − bc = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnimodularMap {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub translation: LatticePoint,
}

impl UnimodularMap {
    pub const IDENTITY: UnimodularMap = UnimodularMap {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
        translation: LatticePoint::ORIGIN,
    };

    /// Returns `None` unless the linear part has determinant ±1.
    pub fn new(a: i64, b: i64, c: i64, d: i64, translation: LatticePoint) -> Option<Self> {
        let det = a * d - b * c;
        (det == 1 || det == -1).then_some(UnimodularMap {
            a,
            b,
            c,
            d,
            translation,
        })
    }

    pub fn translation(t: LatticePoint) -> Self {
        UnimodularMap {
            translation: t,
            ..Self::IDENTITY
        }
    }

    pub fn determinant(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn apply_linear(&self, p: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.a * p.x + self.b * p.y, self.c * p.x + self.d * p.y)
    }

    pub fn apply(&self, p: LatticePoint) -> LatticePoint {
        self.apply_linear(p) + self.translation
    }

    pub fn apply_polygon(&self, poly: &LatticePolygon) -> LatticePolygon {
        let image: Vec<_> = poly.vertices().iter().map(|&v| self.apply(v)).collect();
        convex_hull(&image)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &UnimodularMap) -> UnimodularMap {
        UnimodularMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
            translation: self.apply(other.translation),
        }
    }

    pub fn inverse(&self) -> UnimodularMap {
        let det = self.determinant();
        // det = ±1, so dividing by it is multiplying by it
        let lin = UnimodularMap {
            a: self.d * det,
            b: -self.b * det,
            c: -self.c * det,
            d: self.a * det,
            translation: LatticePoint::ORIGIN,
        };
        UnimodularMap {
            translation: -lin.apply_linear(self.translation),
            ..lin
        }
    }
}

impl fmt::Display for UnimodularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(x,y) -> ({}x + {}y + {}, {}x + {}y + {})",
            self.a, self.b, self.translation.x, self.c, self.d, self.translation.y
        )
    }
}

/// Find a unimodular map carrying `p` onto `q`, if one exists.
///
/// An affine unimodular map is pinned down by where it sends one vertex and
/// the two primitive edge directions leaving it, so it is enough to try
/// sending one fixed vertex of `p` to every vertex of `q`, in both
/// orientations.
pub fn unimodular_equivalent(p: &LatticePolygon, q: &LatticePolygon) -> Option<UnimodularMap> {
    if p.dimension() != Dimension::Full || q.dimension() != Dimension::Full {
        return None;
    }
    if p.vertices().len() != q.vertices().len()
        || p.lattice_point_count() != q.lattice_point_count()
        || p.boundary_count() != q.boundary_count()
        || p.doubled_area() != q.doubled_area()
    {
        return None;
    }
    let pv = p.vertices();
    let qv = q.vertices();
    let n = pv.len();
    let src = pv[0];
    let e1 = (pv[1] - src).primitive();
    let e2 = (pv[n - 1] - src).primitive();
    let det_e = e1.cross(e2);

    for j in 0..n {
        let dst = qv[j];
        let next = (qv[(j + 1) % n] - dst).primitive();
        let prev = (qv[(j + n - 1) % n] - dst).primitive();
        for (f1, f2) in [(next, prev), (prev, next)] {
            if let Some(map) = solve_linear(e1, e2, f1, f2, det_e) {
                let map = UnimodularMap {
                    translation: dst - map.apply_linear(src),
                    ..map
                };
                if map.apply_polygon(p) == *q {
                    return Some(map);
                }
            }
        }
    }
    None
}

/// Integer matrix `A` with `A·e1 = f1`, `A·e2 = f2` and `det A = ±1`, if any.
fn solve_linear(
    e1: LatticePoint,
    e2: LatticePoint,
    f1: LatticePoint,
    f2: LatticePoint,
    det_e: i64,
) -> Option<UnimodularMap> {
    if det_e == 0 {
        return None;
    }
    // A = F · adj(E) / det(E), with E = [e1 e2] as columns
    let (ea, eb, ec, ed) = (e1.x, e2.x, e1.y, e2.y);
    let (adj_a, adj_b, adj_c, adj_d) = (ed, -eb, -ec, ea);
    let (fa, fb, fc, fd) = (f1.x, f2.x, f1.y, f2.y);
    let num = [
        fa * adj_a + fb * adj_c,
        fa * adj_b + fb * adj_d,
        fc * adj_a + fd * adj_c,
        fc * adj_b + fd * adj_d,
    ];
    if num.iter().any(|v| v % det_e != 0) {
        return None;
    }
    UnimodularMap::new(
        num[0] / det_e,
        num[1] / det_e,
        num[2] / det_e,
        num[3] / det_e,
        LatticePoint::ORIGIN,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    #[test]
    fn translated_simplex() {
        let q = convex_hull(&[p(5, 5), p(6, 5), p(5, 6)]);
        let map = unimodular_equivalent(&LatticePolygon::sigma(), &q).unwrap();
        assert_eq!(map.apply_polygon(&LatticePolygon::sigma()), q);
        assert_eq!(map.apply(p(0, 0)), p(5, 5));
        assert_eq!(map.apply(p(1, 0)), p(6, 5));
    }

    #[test]
    fn different_counts_are_not_equivalent() {
        assert!(unimodular_equivalent(&LatticePolygon::upsilon(), &LatticePolygon::sigma()).is_none());
    }

    #[test]
    fn shifted_double_simplex() {
        let src = convex_hull(&[p(1, 1), p(3, 1), p(1, 3)]);
        let dst = LatticePolygon::sigma().dilate(2);
        let map = unimodular_equivalent(&src, &dst).unwrap();
        for &v in src.lattice_points() {
            assert_eq!(map.apply(v), v - p(1, 1));
        }
    }

    #[test]
    fn sheared_polygons_are_found() {
        let shear = UnimodularMap::new(2, 3, 1, 2, p(-4, 7)).unwrap();
        let poly = convex_hull(&[p(0, 0), p(4, 1), p(3, 3), p(-1, 2)]);
        let img = shear.apply_polygon(&poly);
        let found = unimodular_equivalent(&poly, &img).unwrap();
        assert_eq!(found.apply_polygon(&poly), img);
    }

    #[test]
    fn reflection_needed() {
        // a chiral quadrilateral and its mirror image
        let poly = convex_hull(&[p(0, 0), p(3, 0), p(2, 1), p(0, 2)]);
        let mirror = UnimodularMap::new(0, 1, 1, 0, p(0, 0)).unwrap();
        let img = mirror.apply_polygon(&poly);
        let found = unimodular_equivalent(&poly, &img).unwrap();
        assert_eq!(found.apply_polygon(&poly), img);
    }

    #[test]
    fn compose_and_inverse() {
        let m = UnimodularMap::new(2, 1, 1, 1, p(3, -2)).unwrap();
        let n = UnimodularMap::new(0, -1, 1, 0, p(1, 1)).unwrap();
        let q = p(7, -4);
        assert_eq!(m.compose(&n).apply(q), m.apply(n.apply(q)));
        assert_eq!(m.inverse().apply(m.apply(q)), q);
        assert_eq!(m.compose(&m.inverse()), UnimodularMap::IDENTITY);
    }

    #[test]
    fn non_unimodular_matrix_rejected() {
        assert!(UnimodularMap::new(2, 0, 0, 1, p(0, 0)).is_none());
    }
}
