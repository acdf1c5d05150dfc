//! Normal form under lattice equivalence.
//!
//! Every full-dimensional polygon has `2 * #vertices` intrinsic frames: a
//! vertex together with one of its two incident edges. A frame determines a
//! unique lattice equivalence that puts the vertex at the origin, the chosen
//! edge along the positive x-axis with the polygon in the upper half plane,
//! and the other incident edge direction `(a, b)` with `0 <= a < b`. The
//! normal form is the lexicographically smallest vertex cycle over all frames.

use super::{LatticePoint, LatticePolygon, UnimodularAffineMap};
use crate::error::{Error, Result};
use crate::lattice::{ext_gcd, gcd};

fn primitive(from: LatticePoint, to: LatticePoint) -> (i128, i128) {
    let (dx, dy) = (
        i128::from(to.x) - i128::from(from.x),
        i128::from(to.y) - i128::from(from.y),
    );
    let g = gcd(dx, dy);
    (dx / g, dy / g)
}

fn narrow(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow("normal form"))
}

/// Unimodular linear map with determinant 1 sending the primitive vector `e` to `(1, 0)`.
fn align_with_x_axis((p, q): (i128, i128)) -> [[i128; 2]; 2] {
    let (g, s, t) = ext_gcd(p, q);
    debug_assert_eq!(g, 1);
    [[s, t], [-q, p]]
}

fn mat_vec(m: &[[i128; 2]; 2], (x, y): (i128, i128)) -> (i128, i128) {
    (m[0][0] * x + m[0][1] * y, m[1][0] * x + m[1][1] * y)
}

fn mat_mul(a: &[[i128; 2]; 2], b: &[[i128; 2]; 2]) -> [[i128; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn frame_map(origin: LatticePoint, lin: [[i128; 2]; 2]) -> Result<UnimodularAffineMap> {
    let (tx, ty) = mat_vec(&lin, (i128::from(origin.x), i128::from(origin.y)));
    UnimodularAffineMap::new(
        narrow(lin[0][0])?,
        narrow(lin[0][1])?,
        narrow(lin[1][0])?,
        narrow(lin[1][1])?,
        narrow(-tx)?,
        narrow(-ty)?,
    )
}

/// Canonical representative of the lattice-equivalence class of `poly`,
/// together with a map carrying `poly` onto it.
pub fn normalize(poly: &LatticePolygon) -> Result<(LatticePolygon, UnimodularAffineMap)> {
    let verts = poly.vertices();
    match poly.dim() {
        0 => {
            let v = verts[0];
            let map = UnimodularAffineMap::translation(
                v.x.checked_neg().ok_or(Error::Overflow("normal form"))?,
                v.y.checked_neg().ok_or(Error::Overflow("normal form"))?,
            );
            Ok((map.apply_polygon(poly)?, map))
        }
        1 => {
            let lin = align_with_x_axis(primitive(verts[0], verts[1]));
            let map = frame_map(verts[0], lin)?;
            Ok((map.apply_polygon(poly)?, map))
        }
        _ => {
            let k = verts.len();
            let flip = [[1, 0], [0, -1]];
            let mut best: Option<(LatticePolygon, UnimodularAffineMap)> = None;
            for i in 0..k {
                let v = verts[i];
                let next = verts[(i + 1) % k];
                let prev = verts[(i + k - 1) % k];
                // (edge to align, other edge, reflect?)
                for (along, other, reflect) in [(next, prev, false), (prev, next, true)] {
                    let mut lin = align_with_x_axis(primitive(v, along));
                    if reflect {
                        lin = mat_mul(&flip, &lin);
                    }
                    let (a, b) = mat_vec(&lin, primitive(v, other));
                    debug_assert!(b > 0, "polygon must lie in the upper half plane");
                    let shear = [[1, -a.div_euclid(b)], [0, 1]];
                    let lin = mat_mul(&shear, &lin);
                    let map = frame_map(v, lin)?;
                    let image = map.apply_polygon(poly)?;
                    let better = match &best {
                        None => true,
                        Some((cur, _)) => image.vertices() < cur.vertices(),
                    };
                    if better {
                        best = Some((image, map));
                    }
                }
            }
            Ok(best.expect("full-dimensional polygon has frames"))
        }
    }
}
