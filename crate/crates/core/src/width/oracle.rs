//! Exhaustive width search, independent of the adjoint recursion.
//!
//! Let `d1, d2` be vertex differences with `|det(d1, d2)|` maximal and `W0`
//! the smaller coordinate width. An optimal `h` has `|h·d1|, |h·d2| <= W0`,
//! and Cramer's rule turns that into `|m|, |n| <= W0 (|d1|₁ + |d2|₁) / |det|`.

use std::collections::BTreeSet;

use super::{width_of, CaseLabel, TraceLevel, Viewangle, WidthReport};
use crate::error::{Error, Result};
use crate::lattice::gcd;
use crate::polygon::LatticePolygon;

fn search_bound(poly: &LatticePolygon) -> Result<i64> {
    let verts = poly.vertices();
    let base = verts[0];
    let mut best = (0i128, 0i128);
    for (i, &p) in verts.iter().enumerate() {
        for &q in &verts[i + 1..] {
            let d1 = (i128::from(p.x - base.x), i128::from(p.y - base.y));
            let d2 = (i128::from(q.x - base.x), i128::from(q.y - base.y));
            let det = (d1.0 * d2.1 - d1.1 * d2.0).abs();
            let norm = d1.0.abs() + d1.1.abs() + d2.0.abs() + d2.1.abs();
            if det > best.0 {
                best = (det, norm);
            }
        }
    }
    let (det, norm) = best;
    debug_assert!(det > 0, "full-dimensional polygon");
    let w0 = i128::from(
        width_of(poly, Viewangle::new(1, 0)?)?.min(width_of(poly, Viewangle::new(0, 1)?)?),
    );
    i64::try_from(w0 * norm / det).map_err(|_| Error::Overflow("oracle bound"))
}

/// Width and optimal set of a full-dimensional polygon by enumerating every
/// primitive sign-canonical direction inside a sufficient box.
pub fn solve_bruteforce(poly: &LatticePolygon) -> Result<WidthReport> {
    if poly.dim() < 2 {
        return Err(Error::DegeneratePolygon { dim: poly.dim() });
    }
    let bound = search_bound(poly)?;
    let mut width = i64::MAX;
    let mut optimal = BTreeSet::new();
    for m in 0..=bound {
        let n_lo = if m == 0 { 1 } else { -bound };
        for n in n_lo..=bound {
            if gcd(i128::from(m), i128::from(n)) != 1 {
                continue;
            }
            let h = Viewangle::new(m, n)?;
            let w = width_of(poly, h)?;
            if w < width {
                width = w;
                optimal.clear();
            }
            if w == width {
                optimal.insert(h);
            }
        }
    }
    Ok(WidthReport {
        width,
        optimal,
        trace: vec![TraceLevel {
            polygon: poly.clone(),
            case: CaseLabel::A0,
        }],
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

    #[test]
    fn unit_triangle() {
        let r = solve_bruteforce(&shoe(1, 0, 1).unwrap()).unwrap();
        assert_eq!(r.width, 1);
        assert_eq!(r.optimal.len(), 3);
    }

    #[test]
    fn skewed_thin_triangle() {
        // image of the thin triangle (0,0),(0,1),(5,0) under (x,y) -> (x+7y, y)
        let r = solve_bruteforce(&hull(&[(0, 0), (7, 1), (5, 0)])).unwrap();
        assert_eq!(r.width, 1);
        assert_eq!(r.optimal, BTreeSet::from([Viewangle::new(0, 1).unwrap()]));
    }

    #[test]
    fn diamond_has_four_directions() {
        let r = solve_bruteforce(&hull(&[(1, 0), (0, 1), (-1, 0), (0, -1)])).unwrap();
        assert_eq!(r.width, 2);
        assert_eq!(r.optimal.len(), 4);
    }

    #[test]
    fn rejects_segments() {
        assert_eq!(
            solve_bruteforce(&hull(&[(0, 0), (2, 2)])),
            Err(Error::DegeneratePolygon { dim: 1 })
        );
    }
}
