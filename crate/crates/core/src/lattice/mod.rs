//! Exact geometry of lattice polygons in the plane.
//!
//! Everything here works on `i64` coordinates; there is no floating point
//! anywhere in the module. Polygons are stored with their vertices in
//! counterclockwise order starting from the lexicographically smallest one,
//! so two polygons are equal exactly when their vertex lists are equal.

mod classify;
mod parse;
mod unimodular;

pub use classify::{classify, normalized_hyperelliptic, PolygonClass};
pub use parse::{parse_polygon, parse_polygon_lines};
pub use unimodular::{unimodular_equivalent, UnimodularMap};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A point of the integer lattice. Ordered lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        LatticePoint { x, y }
    }

    /// z-component of the cross product `self × other`.
    pub fn cross(self, other: LatticePoint) -> i64 {
        self.x * other.y - self.y * other.x
    }

    /// Lattice length of the vector: gcd of the absolute coordinates.
    pub fn lattice_length(self) -> i64 {
        self.x.gcd(&self.y)
    }

    /// The vector divided by its lattice length. The zero vector is returned unchanged.
    pub fn primitive(self) -> LatticePoint {
        let g = self.lattice_length();
        if g == 0 {
            self
        } else {
            LatticePoint::new(self.x / g, self.y / g)
        }
    }
}

impl From<[i64; 2]> for LatticePoint {
    fn from(p: [i64; 2]) -> Self {
        LatticePoint::new(p[0], p[1])
    }
}

impl From<LatticePoint> for [i64; 2] {
    fn from(p: LatticePoint) -> Self {
        [p.x, p.y]
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from(p: (i64, i64)) -> Self {
        LatticePoint::new(p.0, p.1)
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    fn add(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    fn sub(self, o: LatticePoint) -> LatticePoint {
        LatticePoint::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for LatticePoint {
    type Output = LatticePoint;
    fn neg(self) -> LatticePoint {
        LatticePoint::new(-self.x, -self.y)
    }
}

impl Mul<LatticePoint> for i64 {
    type Output = LatticePoint;
    fn mul(self, p: LatticePoint) -> LatticePoint {
        LatticePoint::new(self * p.x, self * p.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Dimension tag of a (possibly degenerate) lattice polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dimension {
    Empty,
    Point,
    Segment,
    Full,
}

impl Dimension {
    pub fn as_i8(self) -> i8 {
        match self {
            Dimension::Empty => -1,
            Dimension::Point => 0,
            Dimension::Segment => 1,
            Dimension::Full => 2,
        }
    }
}

/// A convex lattice polygon together with its lattice points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
    dimension: Dimension,
    points: Vec<LatticePoint>,
    boundary_count: usize,
    doubled_area: i64,
}

impl LatticePolygon {
    /// The empty polygon.
    pub fn empty() -> Self {
        LatticePolygon {
            vertices: Vec::new(),
            dimension: Dimension::Empty,
            points: Vec::new(),
            boundary_count: 0,
            doubled_area: 0,
        }
    }

    /// Convex hull of the given points. The empty slice yields the empty polygon.
    pub fn hull(points: &[LatticePoint]) -> Self {
        convex_hull(points)
    }

    /// The standard unimodular simplex conv{(0,0),(1,0),(0,1)}.
    pub fn sigma() -> Self {
        convex_hull(&[(0, 0).into(), (1, 0).into(), (0, 1).into()])
    }

    /// The triangle conv{(-1,-1),(1,0),(0,1)}.
    pub fn upsilon() -> Self {
        convex_hull(&[(-1, -1).into(), (1, 0).into(), (0, 1).into()])
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn dimension(&self) -> Dimension {
        self.dimension
    }

    pub fn is_full(&self) -> bool {
        self.dimension == Dimension::Full
    }

    /// All lattice points (boundary included), sorted lexicographically.
    pub fn lattice_points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn lattice_point_count(&self) -> usize {
        self.points.len()
    }

    /// Number of lattice points on the boundary.
    pub fn boundary_count(&self) -> usize {
        self.boundary_count
    }

    pub fn interior_count(&self) -> usize {
        self.points.len() - self.boundary_count
    }

    /// Twice the Euclidean area; an integer for lattice polygons.
    pub fn doubled_area(&self) -> i64 {
        self.doubled_area
    }

    /// Directed edges `(from, to)` in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (LatticePoint, LatticePoint)> + '_ {
        let n = self.vertices.len();
        let closed = self.dimension == Dimension::Full;
        (0..if closed { n } else { n.saturating_sub(1) })
            .map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Closed containment test.
    pub fn contains(&self, p: LatticePoint) -> bool {
        match self.dimension {
            Dimension::Empty => false,
            Dimension::Point => p == self.vertices[0],
            Dimension::Segment => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                (b - a).cross(p - a) == 0 && (p - a).x * (p - b).x <= 0 && (p - a).y * (p - b).y <= 0
            }
            Dimension::Full => self.edges().all(|(a, b)| (b - a).cross(p - a) >= 0),
        }
    }

    /// Strict (topological) interior test. Lower-dimensional polygons have empty interior.
    pub fn strictly_contains(&self, p: LatticePoint) -> bool {
        self.dimension == Dimension::Full && self.edges().all(|(a, b)| (b - a).cross(p - a) > 0)
    }

    /// Lattice points strictly inside the polygon, sorted.
    pub fn interior_points(&self) -> Vec<LatticePoint> {
        if !self.is_full() {
            return Vec::new();
        }
        self.points
            .iter()
            .copied()
            .filter(|&p| self.strictly_contains(p))
            .collect()
    }

    /// Convex hull of the strictly interior lattice points.
    pub fn interior_hull(&self) -> LatticePolygon {
        convex_hull(&self.interior_points())
    }

    /// The dilation `k·P`.
    pub fn dilate(&self, k: i64) -> LatticePolygon {
        assert!(k >= 1, "dilation factor must be positive");
        if k == 1 {
            return self.clone();
        }
        let scaled: Vec<_> = self.vertices.iter().map(|&v| k * v).collect();
        convex_hull(&scaled)
    }

    pub fn translate(&self, t: LatticePoint) -> LatticePolygon {
        let moved: Vec<_> = self.vertices.iter().map(|&v| v + t).collect();
        convex_hull(&moved)
    }

    /// Ehrhart polynomial value `Vol·k² + (B/2)·k + 1`, evaluated exactly.
    pub fn ehrhart_count(&self, k: i64) -> i64 {
        assert!(self.is_full(), "Ehrhart count needs a two-dimensional polygon");
        (self.doubled_area * k * k + self.boundary_count as i64 * k) / 2 + 1
    }

    /// Render in the `poly:` text format.
    pub fn to_text(&self) -> String {
        let body: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        format!("poly: {}", body.join(" "))
    }
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "conv{{{}}}", body.join(","))
    }
}

/// Convex hull with a minimal counterclockwise vertex list starting at the
/// lexicographically smallest vertex (Andrew's monotone chain).
pub fn convex_hull(points: &[LatticePoint]) -> LatticePolygon {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    match pts.len() {
        0 => return LatticePolygon::empty(),
        1 => return degenerate(pts),
        _ => {}
    }

    let mut lower: Vec<LatticePoint> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);

    if lower.len() <= 2 {
        // all input points are collinear
        let ends = vec![pts[0], pts[pts.len() - 1]];
        return degenerate(ends);
    }
    full_polygon(lower)
}

fn turn(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i64 {
    (b - a).cross(c - a)
}

fn degenerate(vertices: Vec<LatticePoint>) -> LatticePolygon {
    if vertices.len() == 1 {
        return LatticePolygon {
            points: vertices.clone(),
            vertices,
            dimension: Dimension::Point,
            boundary_count: 1,
            doubled_area: 0,
        };
    }
    let (a, b) = (vertices[0], vertices[1]);
    let len = (b - a).lattice_length();
    let step = (b - a).primitive();
    let points: Vec<_> = (0..=len).map(|k| a + k * step).collect();
    LatticePolygon {
        boundary_count: points.len(),
        points,
        vertices,
        dimension: Dimension::Segment,
        doubled_area: 0,
    }
}

fn full_polygon(vertices: Vec<LatticePoint>) -> LatticePolygon {
    let n = vertices.len();
    let mut doubled_area = 0;
    let mut boundary = 0;
    for i in 0..n {
        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
        doubled_area += a.cross(b);
        boundary += (b - a).lattice_length();
    }
    debug_assert!(doubled_area > 0);
    let points = sweep_lattice_points(&vertices);
    LatticePolygon {
        vertices,
        dimension: Dimension::Full,
        points,
        boundary_count: boundary as usize,
        doubled_area,
    }
}

/// Row sweep: for each row `y`, intersect the half-planes of all edges to
/// get an integer interval of `x` values.
fn sweep_lattice_points(vertices: &[LatticePoint]) -> Vec<LatticePoint> {
    let n = vertices.len();
    let ymin = vertices.iter().map(|v| v.y).min().unwrap();
    let ymax = vertices.iter().map(|v| v.y).max().unwrap();
    let xmin = vertices.iter().map(|v| v.x).min().unwrap();
    let xmax = vertices.iter().map(|v| v.x).max().unwrap();

    let mut out = Vec::new();
    for y in ymin..=ymax {
        let (mut lo, mut hi) = (xmin, xmax);
        for i in 0..n {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            let (dx, dy) = (b.x - a.x, b.y - a.y);
            // inside iff dx*(y - a.y) - dy*(x - a.x) >= 0
            let rhs = dx * (y - a.y);
            if dy > 0 {
                // dy*(x - a.x) <= rhs
                hi = hi.min(a.x + Integer::div_floor(&rhs, &dy));
            } else if dy < 0 {
                // (-dy)*(x - a.x) >= -rhs
                lo = lo.max(a.x + Integer::div_ceil(&(-rhs), &(-dy)));
            } else if rhs < 0 {
                lo = 1;
                hi = 0;
                break;
            }
        }
        for x in lo..=hi {
            out.push(LatticePoint::new(x, y));
        }
    }
    out.sort();
    out
}
