//! Lattice width and the complete set of optimal directions.
//!
//! [`solve`] walks the adjoint chain `Γ, Γ', Γ'', …` down to a minimal
//! polygon, settles that polygon with the exhaustive [`solve_bruteforce`]
//! search, and climbs back up using the case table:
//!
//! | case | Γ                     | Γ'                                  | result                          |
//! |------|-----------------------|-------------------------------------|---------------------------------|
//! | A0   | minimal               | point or none                       | exhaustive search               |
//! | A1   | standard triangle     | standard triangle                   | the 3 edge directions, `v' + 3` |
//! | A2   | not standard triangle | standard triangle                   | tight members of `S(Γ')`, `v' + 2` |
//! | A3   | not standard triangle | minimal, not standard triangle      | `S(Γ')`, `v' + 2`               |
//! | A4   | not standard triangle | not minimal, not standard triangle  | `S(Γ')`, `v' + 2`               |

mod oracle;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use oracle::solve_bruteforce;

use crate::error::{Error, Result};
use crate::lattice::gcd;
use crate::polygon::{
    adjoint, is_minimal, is_standard_triangle, is_thin_triangle, LatticePoint, LatticePolygon,
    UnimodularAffineMap,
};

/// A direction `h = (m, n)` in the dual lattice, evaluated as `h(x, y) = m x + n y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Viewangle {
    m: i64,
    n: i64,
}

impl Viewangle {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m == 0 && n == 0 {
            return Err(Error::ZeroDirection);
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Representative of `{h, -h}` with `m > 0`, or `m = 0` and `n > 0`.
    pub fn canonical(self) -> Self {
        if self.m < 0 || (self.m == 0 && self.n < 0) {
            Self {
                m: -self.m,
                n: -self.n,
            }
        } else {
            self
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    pub fn is_primitive(&self) -> bool {
        gcd(i128::from(self.m), i128::from(self.n)) == 1
    }

    pub fn eval(&self, p: LatticePoint) -> i128 {
        i128::from(self.m) * i128::from(p.x) + i128::from(self.n) * i128::from(p.y)
    }

    /// The primitive canonical direction vanishing on the vector `(dx, dy)`.
    pub fn annihilator(dx: i64, dy: i64) -> Result<Self> {
        let g = gcd(i128::from(dx), i128::from(dy));
        if g == 0 {
            return Err(Error::ZeroDirection);
        }
        let (dx, dy) = ((i128::from(dx) / g) as i64, (i128::from(dy) / g) as i64);
        Ok(Self::new(dy, -dx)?.canonical())
    }

    /// The same functional expressed in the coordinates of `map`'s image.
    pub fn transported(self, map: &UnimodularAffineMap) -> Result<Self> {
        let (m, n) = map.push_covector(self.m, self.n)?;
        Self::new(m, n)
    }
}

impl TryFrom<(i64, i64)> for Viewangle {
    type Error = Error;

    fn try_from((m, n): (i64, i64)) -> Result<Self> {
        Self::new(m, n)
    }
}

impl From<Viewangle> for (i64, i64) {
    fn from(h: Viewangle) -> Self {
        (h.m, h.n)
    }
}

impl fmt::Display for Viewangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseLabel {
    A0,
    A1,
    A2,
    A3,
    A4,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceLevel {
    pub polygon: LatticePolygon,
    pub case: CaseLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthReport {
    pub width: i64,
    /// Sign-canonical optimal directions, sorted by `(m, n)`.
    pub optimal: BTreeSet<Viewangle>,
    pub trace: Vec<TraceLevel>,
    /// `false` only for width-0 polygons, where `optimal` holds the primitive representative.
    pub finite: bool,
}

fn extremes(poly: &LatticePolygon, h: Viewangle) -> (i128, i128) {
    let mut vals = poly.vertices().iter().map(|&v| h.eval(v));
    let first = vals.next().expect("polygons are non-empty");
    vals.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

/// `max h - min h` over the polygon.
pub fn width_of(poly: &LatticePolygon, h: Viewangle) -> Result<i64> {
    let (lo, hi) = extremes(poly, h);
    i64::try_from(hi - lo).map_err(|_| Error::Overflow("width"))
}

/// Tightness of `h` for a polygon relative to its adjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tightness {
    pub max_tight: bool,
    pub min_tight: bool,
}

impl Tightness {
    pub fn tight(&self) -> bool {
        self.max_tight && self.min_tight
    }
}

/// Tightness of `h` on `poly` given its precomputed adjoint `inner`.
pub fn tightness_against(poly: &LatticePolygon, inner: &LatticePolygon, h: Viewangle) -> Tightness {
    let (lo, hi) = extremes(poly, h);
    let (ilo, ihi) = extremes(inner, h);
    Tightness {
        max_tight: hi == ihi + 1,
        min_tight: lo == ilo - 1,
    }
}

pub fn tightness(poly: &LatticePolygon, h: Viewangle) -> Result<Tightness> {
    let inner = adjoint(poly).ok_or(Error::NoAdjoint)?;
    Ok(tightness_against(poly, &inner, h))
}

pub fn is_max_tight(poly: &LatticePolygon, h: Viewangle) -> Result<bool> {
    Ok(tightness(poly, h)?.max_tight)
}

pub fn is_min_tight(poly: &LatticePolygon, h: Viewangle) -> Result<bool> {
    Ok(tightness(poly, h)?.min_tight)
}

pub fn is_tight(poly: &LatticePolygon, h: Viewangle) -> Result<bool> {
    Ok(tightness(poly, h)?.tight())
}

fn face_size(poly: &LatticePolygon, h: Viewangle, at_max: bool) -> usize {
    let (lo, hi) = extremes(poly, h);
    let target = if at_max { hi } else { lo };
    poly.vertices()
        .iter()
        .filter(|&&v| h.eval(v) == target)
        .count()
}

pub fn is_max_edge(poly: &LatticePolygon, h: Viewangle) -> bool {
    face_size(poly, h, true) >= 2
}

pub fn is_min_edge(poly: &LatticePolygon, h: Viewangle) -> bool {
    face_size(poly, h, false) >= 2
}

pub fn is_edge(poly: &LatticePolygon, h: Viewangle) -> bool {
    is_max_edge(poly, h) && is_min_edge(poly, h)
}

/// Row of the case table for `poly`. Polygons with at most one interior
/// point (points included) are A0.
pub fn classify_case(poly: &LatticePolygon) -> Result<CaseLabel> {
    if is_minimal(poly) || poly.interior_count() <= 1 {
        return Ok(CaseLabel::A0);
    }
    let inner = adjoint(poly).expect("two or more interior points");
    classify_with_adjoint(poly, &inner)
}

fn classify_with_adjoint(poly: &LatticePolygon, inner: &LatticePolygon) -> Result<CaseLabel> {
    let outer_std = is_standard_triangle(poly)?.is_some();
    let inner_std = is_standard_triangle(inner)?.is_some();
    Ok(match (outer_std, inner_std) {
        (true, true) => CaseLabel::A1,
        (false, true) => CaseLabel::A2,
        _ if is_minimal(inner) => CaseLabel::A3,
        _ => CaseLabel::A4,
    })
}

/// Report for a point or segment: width 0 with the primitive annihilating
/// direction standing in for the infinite optimal set.
pub fn degenerate_report(poly: &LatticePolygon) -> Result<WidthReport> {
    let verts = poly.vertices();
    let h = match poly.dim() {
        0 => Viewangle::new(1, 0)?,
        1 => Viewangle::annihilator(verts[1].x - verts[0].x, verts[1].y - verts[0].y)?,
        dim => {
            return Err(Error::InvariantViolated(format!(
                "polygon of dimension {dim} is not degenerate"
            )))
        }
    };
    Ok(WidthReport {
        width: 0,
        optimal: BTreeSet::from([h]),
        trace: vec![TraceLevel {
            polygon: poly.clone(),
            case: CaseLabel::A0,
        }],
        finite: false,
    })
}

fn edge_directions(poly: &LatticePolygon) -> Result<BTreeSet<Viewangle>> {
    poly.edges()
        .into_iter()
        .map(|(a, b)| Viewangle::annihilator(b.x - a.x, b.y - a.y))
        .collect()
}

/// Width and optimal directions by adjoint recursion.
pub fn solve(poly: &LatticePolygon) -> Result<WidthReport> {
    if poly.dim() < 2 {
        return Err(Error::DegeneratePolygon { dim: poly.dim() });
    }
    let mut trace = Vec::new();
    let mut current = poly.clone();
    loop {
        let case = classify_case(&current)?;
        let next = (case != CaseLabel::A0).then(|| adjoint(&current).expect("non-minimal"));
        trace.push(TraceLevel {
            polygon: current,
            case,
        });
        match next {
            Some(n) => current = n,
            None => break,
        }
    }

    let bottom = &trace.last().expect("at least one level").polygon;
    let (mut width, mut optimal) = if bottom.dim() == 2 {
        let r = solve_bruteforce(bottom)?;
        (r.width, r.optimal)
    } else {
        let r = degenerate_report(bottom)?;
        (r.width, r.optimal)
    };

    for i in (0..trace.len() - 1).rev() {
        let outer = &trace[i].polygon;
        let inner = &trace[i + 1].polygon;
        match trace[i].case {
            CaseLabel::A1 => {
                width += 3;
                optimal = edge_directions(outer)?;
            }
            CaseLabel::A2 => {
                width += 2;
                optimal.retain(|&h| tightness_against(outer, inner, h).tight());
                if optimal.is_empty() {
                    return Err(Error::InvariantViolated(format!(
                        "A2 level {outer} has no tight optimal direction"
                    )));
                }
            }
            CaseLabel::A3 => {
                width += 2;
                if is_thin_triangle(inner)?.is_some()
                    && !optimal
                        .iter()
                        .all(|&h| tightness_against(outer, inner, h).tight())
                {
                    return Err(Error::InvariantViolated(format!(
                        "optimal direction over thin adjoint {inner} is not tight"
                    )));
                }
            }
            CaseLabel::A4 => width += 2,
            CaseLabel::A0 => unreachable!("A0 only at the bottom of the chain"),
        }
    }

    if optimal.is_empty() || optimal.len() > 4 {
        return Err(Error::InvariantViolated(format!(
            "{} optimal directions for {poly}",
            optimal.len()
        )));
    }
    Ok(WidthReport {
        width,
        optimal,
        trace,
        finite: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygon::{convex_hull, shoe};

    fn hull(v: &[(i64, i64)]) -> LatticePolygon {
        convex_hull(&v.iter().map(|&p| p.into()).collect::<Vec<_>>()).unwrap()
    }

    fn h(m: i64, n: i64) -> Viewangle {
        Viewangle::new(m, n).unwrap()
    }

    fn set(v: &[(i64, i64)]) -> BTreeSet<Viewangle> {
        v.iter().map(|&(m, n)| h(m, n)).collect()
    }

    pub(crate) fn toric_example() -> LatticePolygon {
        hull(&[(0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1)])
    }

    #[test]
    fn widths_of_the_hexagon_example() {
        let g = toric_example();
        assert_eq!(width_of(&g, h(1, -1)).unwrap(), 4);
        assert_eq!(width_of(&g, h(1, 0)).unwrap(), 2);
        assert_eq!(width_of(&hull(&[(3, 4)]), h(2, 7)).unwrap(), 0);
    }

    #[test]
    fn zero_direction_rejected() {
        assert_eq!(Viewangle::new(0, 0), Err(Error::ZeroDirection));
        assert_eq!(h(-1, 1).canonical(), h(1, -1));
        assert_eq!(h(0, -3).canonical(), h(0, 3));
    }

    #[test]
    fn tightness_examples() {
        let t3 = shoe(3, 0, 3).unwrap();
        assert!(!is_max_tight(&t3, h(1, 0)).unwrap());
        let square = hull(&[(0, 0), (2, 0), (0, 2), (2, 2)]);
        assert!(is_tight(&square, h(1, 0)).unwrap());
        assert_eq!(
            is_tight(&shoe(2, 0, 2).unwrap(), h(1, 0)),
            Err(Error::NoAdjoint)
        );
        for dir in [(1, 0), (1, 1), (2, -1)] {
            let a = h(dir.0, dir.1);
            let b = h(-dir.0, -dir.1);
            assert_eq!(is_tight(&t3, a).unwrap(), is_tight(&t3, b).unwrap());
        }
    }

    #[test]
    fn edge_examples() {
        let t2 = shoe(2, 0, 2).unwrap();
        assert!(is_min_edge(&t2, h(1, 0)));
        assert!(!is_max_edge(&t2, h(1, 0)));
        assert!(!is_edge(&t2, h(1, 0)));
        let square = hull(&[(0, 0), (2, 0), (0, 2), (2, 2)]);
        assert!(is_edge(&square, h(1, 0)));
        let seg = hull(&[(0, 0), (3, 0)]);
        assert!(is_edge(&seg, h(0, 1)));
        assert!(!is_edge(&hull(&[(1, 1)]), h(0, 1)));
    }

    #[test]
    fn case_labels() {
        assert_eq!(
            classify_case(&shoe(2, 0, 2).unwrap()).unwrap(),
            CaseLabel::A0
        );
        assert_eq!(
            classify_case(&shoe(4, 0, 4).unwrap()).unwrap(),
            CaseLabel::A1
        );
        let square = hull(&[(0, 0), (2, 0), (0, 2), (2, 2)]);
        assert_eq!(classify_case(&square).unwrap(), CaseLabel::A0);
        // 5Δ minus a corner: adjoint is 2Δ
        let cut = hull(&[(0, 0), (4, 0), (5, 0), (0, 5)]);
        assert_eq!(
            classify_case(&hull(&[(1, 0), (5, 0), (0, 5), (0, 1)])).unwrap(),
            CaseLabel::A2
        );
        assert_eq!(classify_case(&cut).unwrap(), CaseLabel::A1);
    }

    #[test]
    fn solve_standard_triangles() {
        let r = solve(&shoe(4, 0, 4).unwrap()).unwrap();
        assert_eq!(r.width, 4);
        assert_eq!(r.optimal, set(&[(0, 1), (1, 0), (1, 1)]));
        assert_eq!(
            r.trace.iter().map(|l| l.case).collect::<Vec<_>>(),
            vec![CaseLabel::A1, CaseLabel::A0]
        );
        let r = solve(&shoe(3, 0, 3).unwrap()).unwrap();
        assert_eq!((r.width, r.optimal.len()), (3, 3));
        assert_eq!(r.trace.len(), 1);
    }

    #[test]
    fn solve_matches_oracle_on_hexagon() {
        let g = toric_example();
        let r = solve(&g).unwrap();
        assert_eq!(r.width, 2);
        assert_eq!(r.optimal, set(&[(1, 0), (0, 1), (1, 1)]));
        assert_eq!(r, solve_bruteforce(&g).unwrap());
    }

    #[test]
    fn segment_adjoint_gives_width_two() {
        // interior points (1,1),(2,1),(3,1) are collinear
        let g = hull(&[(0, 1), (2, 0), (4, 1), (2, 2)]);
        let r = solve(&g).unwrap();
        assert_eq!(r.trace[0].case, CaseLabel::A3);
        assert_eq!(r.trace[1].polygon.dim(), 1);
        assert_eq!(r.width, 2);
        assert_eq!(r.optimal, set(&[(0, 1)]));
        let o = solve_bruteforce(&g).unwrap();
        assert_eq!((o.width, o.optimal), (r.width, r.optimal));
    }

    #[test]
    fn degenerate_inputs() {
        let seg = hull(&[(0, 0), (4, 2)]);
        assert_eq!(solve(&seg), Err(Error::DegeneratePolygon { dim: 1 }));
        let r = degenerate_report(&seg).unwrap();
        assert_eq!(r.width, 0);
        assert!(!r.finite);
        assert_eq!(r.optimal, set(&[(1, -2)]));
    }
}
