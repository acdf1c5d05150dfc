//! Exact convex lattice polygons.
//!
//! Polygons are stored by their extreme points in counter-clockwise order,
//! starting at the lexicographically smallest vertex, so two polygons are
//! equal exactly when they have the same vertex cycle. Points and segments
//! are ordinary values with `dim` 0 and 1.

mod affine;
mod normal;

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub use affine::UnimodularAffineMap;
pub use normal::normalize;

use crate::error::{Error, Result, COORDINATE_LIMIT};
use crate::lattice::gcd;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    /// Constructor for user input: enforces the coordinate bound.
    pub fn checked(x: i64, y: i64) -> Result<Self> {
        if x.abs() > COORDINATE_LIMIT || y.abs() > COORDINATE_LIMIT {
            return Err(Error::CoordinateOutOfRange { x, y });
        }
        Ok(Self { x, y })
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        Self { x, y }
    }
}

impl From<LatticePoint> for (i64, i64) {
    fn from(p: LatticePoint) -> Self {
        (p.x, p.y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// `(b - a) × (c - a)`; positive when `a, b, c` turn counter-clockwise.
pub(crate) fn cross(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i128 {
    let (ax, ay) = (i128::from(a.x), i128::from(a.y));
    (i128::from(b.x) - ax) * (i128::from(c.y) - ay)
        - (i128::from(b.y) - ay) * (i128::from(c.x) - ax)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPolygon", into = "RawPolygon")]
pub struct LatticePolygon {
    vertices: Vec<LatticePoint>,
}

#[derive(Serialize, Deserialize)]
struct RawPolygon {
    dim: u8,
    vertices: Vec<LatticePoint>,
}

impl TryFrom<RawPolygon> for LatticePolygon {
    type Error = Error;

    fn try_from(raw: RawPolygon) -> Result<Self> {
        let poly = convex_hull(&raw.vertices)?;
        if poly.vertices != raw.vertices || poly.dim() != raw.dim {
            return Err(Error::InvariantViolated(
                "serialized polygon is not a canonical vertex cycle".into(),
            ));
        }
        Ok(poly)
    }
}

impl From<LatticePolygon> for RawPolygon {
    fn from(p: LatticePolygon) -> Self {
        RawPolygon {
            dim: p.dim(),
            vertices: p.vertices,
        }
    }
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Builds the canonical hull of `points`, enforcing the input coordinate bound.
pub fn convex_hull(points: &[LatticePoint]) -> Result<LatticePolygon> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    for p in points {
        LatticePoint::checked(p.x, p.y)?;
    }
    Ok(LatticePolygon::hull_of(points))
}

impl LatticePolygon {
    /// Monotone-chain hull without the ingestion bound. `points` must be non-empty.
    pub(crate) fn hull_of(points: &[LatticePoint]) -> Self {
        let mut pts = points.to_vec();
        pts.sort_unstable();
        pts.dedup();
        assert!(!pts.is_empty(), "hull of an empty point set");
        if pts.len() <= 2 {
            return Self { vertices: pts };
        }
        let mut lower: Vec<LatticePoint> = Vec::with_capacity(pts.len());
        for &p in &pts {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<LatticePoint> = Vec::with_capacity(pts.len());
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        // collinear input collapses to the two extremes here
        lower.extend(upper);
        Self { vertices: lower }
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn dim(&self) -> u8 {
        match self.vertices.len() {
            1 => 0,
            2 => 1,
            _ => 2,
        }
    }

    /// Directed edges `(v_i, v_{i+1})` of the vertex cycle (one edge for a segment, none for a point).
    pub fn edges(&self) -> Vec<(LatticePoint, LatticePoint)> {
        let n = self.vertices.len();
        match n {
            1 => Vec::new(),
            2 => vec![(self.vertices[0], self.vertices[1])],
            _ => (0..n)
                .map(|i| (self.vertices[i], self.vertices[(i + 1) % n]))
                .collect(),
        }
    }

    /// Twice the Euclidean area (shoelace); zero for dim ≤ 1.
    pub fn double_area(&self) -> i128 {
        if self.dim() < 2 {
            return 0;
        }
        let v0 = self.vertices[0];
        self.vertices
            .windows(2)
            .map(|w| cross(v0, w[0], w[1]))
            .sum()
    }

    pub fn boundary_count(&self) -> i128 {
        match self.dim() {
            0 => 1,
            1 => lattice_length(self.vertices[0], self.vertices[1]) + 1,
            _ => self
                .edges()
                .into_iter()
                .map(|(a, b)| lattice_length(a, b))
                .sum(),
        }
    }

    /// Interior point count from Pick's formula `2I = 2A - B + 2`.
    pub fn interior_count(&self) -> i128 {
        if self.dim() < 2 {
            return 0;
        }
        (self.double_area() - self.boundary_count() + 2) / 2
    }

    pub fn bounding_box(&self) -> (LatticePoint, LatticePoint) {
        let xs = self.vertices.iter().map(|p| p.x);
        let ys = self.vertices.iter().map(|p| p.y);
        (
            LatticePoint::new(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
            LatticePoint::new(xs.max().unwrap(), ys.max().unwrap()),
        )
    }

    /// Exact membership test; `strict` excludes the boundary.
    pub fn contains(&self, p: LatticePoint, strict: bool) -> bool {
        match self.dim() {
            0 => !strict && p == self.vertices[0],
            1 => {
                let (a, b) = (self.vertices[0], self.vertices[1]);
                !strict
                    && cross(a, b, p) == 0
                    && (p.x - a.x) * (p.x - b.x) <= 0
                    && (p.y - a.y) * (p.y - b.y) <= 0
            }
            _ => self.edges().into_iter().all(|(a, b)| {
                let c = cross(a, b, p);
                if strict {
                    c > 0
                } else {
                    c >= 0
                }
            }),
        }
    }

    /// Lattice points in row `y`, as an inclusive x-range, for a 2-dimensional polygon.
    fn row_range(&self, y: i64, strict: bool) -> Option<(i64, i64)> {
        let (mut lo, mut hi) = (i128::MIN, i128::MAX);
        let y = i128::from(y);
        for (p, q) in self.edges() {
            let (px, py) = (i128::from(p.x), i128::from(p.y));
            let (dx, dy) = (i128::from(q.x) - px, i128::from(q.y) - py);
            // constraint: dx*(y - py) - dy*(x - px) >= 0 (> 0 when strict)
            let r = dx * (y - py) + dy * px;
            match dy.signum() {
                0 => {
                    let s = dx * (y - py);
                    if s < 0 || (strict && s == 0) {
                        return None;
                    }
                }
                1 => {
                    // dy*x <= r  (dy*x < r)
                    let bound = if strict {
                        Integer::div_floor(&(r - 1), &dy)
                    } else {
                        Integer::div_floor(&r, &dy)
                    };
                    hi = hi.min(bound);
                }
                _ => {
                    // dy*x <= r with dy < 0  =>  x >= r/dy
                    let bound = if strict {
                        Integer::div_floor(&r, &dy) + 1
                    } else {
                        Integer::div_ceil(&r, &dy)
                    };
                    lo = lo.max(bound);
                }
            }
        }
        (lo <= hi).then_some((lo as i64, hi as i64))
    }

    fn collect_points(&self, strict: bool) -> Vec<LatticePoint> {
        let mut out = Vec::new();
        let (min, max) = self.bounding_box();
        for y in min.y..=max.y {
            if let Some((lo, hi)) = self.row_range(y, strict) {
                out.extend((lo..=hi).map(|x| LatticePoint::new(x, y)));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_point(&self) -> bool {
        self.dim() == 0
    }
}

fn lattice_length(a: LatticePoint, b: LatticePoint) -> i128 {
    gcd(
        i128::from(b.x) - i128::from(a.x),
        i128::from(b.y) - i128::from(a.y),
    )
}

/// Every lattice point of `poly`, boundary included, sorted lexicographically.
pub fn lattice_points(poly: &LatticePolygon) -> Vec<LatticePoint> {
    match poly.dim() {
        0 => poly.vertices.clone(),
        1 => {
            let (a, b) = (poly.vertices[0], poly.vertices[1]);
            let g = lattice_length(a, b) as i64;
            let (sx, sy) = ((b.x - a.x) / g, (b.y - a.y) / g);
            (0..=g)
                .map(|k| LatticePoint::new(a.x + k * sx, a.y + k * sy))
                .collect()
        }
        _ => poly.collect_points(false),
    }
}

/// Lattice points strictly inside `poly`; empty for points and segments.
pub fn interior_points(poly: &LatticePolygon) -> Vec<LatticePoint> {
    if poly.dim() < 2 {
        return Vec::new();
    }
    poly.collect_points(true)
}

/// Convex hull of the interior lattice points, if there are any.
pub fn adjoint(poly: &LatticePolygon) -> Option<LatticePolygon> {
    let inner = interior_points(poly);
    (!inner.is_empty()).then(|| LatticePolygon::hull_of(&inner))
}

/// `ConvexHull((0,0), (0,l), (m,l), (m+n,0))`.
pub fn shoe(l: i64, m: i64, n: i64) -> Result<LatticePolygon> {
    if l < 0 || m < 0 || n < 0 || (l == 0 && m == 0 && n == 0) {
        return Err(Error::InvalidShoeParameters { l, m, n });
    }
    let top = m.checked_add(n).ok_or(Error::Overflow("shoe"))?;
    convex_hull(&[
        LatticePoint::new(0, 0),
        LatticePoint::new(0, l),
        LatticePoint::new(m, l),
        LatticePoint::new(top, 0),
    ])
}

fn triangle_matches(poly: &LatticePolygon, model: LatticePolygon) -> Result<bool> {
    Ok(normalize(poly)?.0 == normalize(&model)?.0)
}

/// `Some(l)` when `poly` is lattice equivalent to the standard triangle `□_{l,0,l}`, `l > 0`.
pub fn is_standard_triangle(poly: &LatticePolygon) -> Result<Option<i64>> {
    if poly.vertices.len() != 3 {
        return Ok(None);
    }
    let lengths: Vec<i128> = poly
        .edges()
        .into_iter()
        .map(|(a, b)| lattice_length(a, b))
        .collect();
    if lengths.iter().any(|&l| l != lengths[0]) {
        return Ok(None);
    }
    let l = i64::try_from(lengths[0]).map_err(|_| Error::Overflow("edge length"))?;
    Ok(triangle_matches(poly, shoe(l, 0, l)?)?.then_some(l))
}

/// `Some(l)` when `poly` is lattice equivalent to the thin triangle `□_{1,0,l}`, `l > 1`.
pub fn is_thin_triangle(poly: &LatticePolygon) -> Result<Option<i64>> {
    if poly.vertices.len() != 3 || poly.interior_count() != 0 {
        return Ok(None);
    }
    let l = poly
        .edges()
        .into_iter()
        .map(|(a, b)| lattice_length(a, b))
        .max()
        .unwrap_or(0);
    if l <= 1 {
        return Ok(None);
    }
    let l = i64::try_from(l).map_err(|_| Error::Overflow("edge length"))?;
    Ok(triangle_matches(poly, shoe(1, 0, l)?)?.then_some(l))
}

/// Not a point, and at most one interior lattice point.
pub fn is_minimal(poly: &LatticePolygon) -> bool {
    !poly.is_point() && poly.interior_count() <= 1
}
