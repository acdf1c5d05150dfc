#![allow(dead_code)]

use std::collections::BTreeSet;

use optfam::polygon::{convex_hull, LatticePoint, LatticePolygon, UnimodularAffineMap};
use optfam::width::{width_of, Viewangle};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn hull(v: &[(i64, i64)]) -> LatticePolygon {
    convex_hull(&v.iter().map(|&p| p.into()).collect::<Vec<_>>()).unwrap()
}

/// Hull of 3..=12 random points in a random sub-box of `[0, 15]²`; retries until full-dimensional.
pub fn random_polygon(rng: &mut ChaCha8Rng) -> LatticePolygon {
    loop {
        let w = rng.gen_range(1..=15);
        let h = rng.gen_range(1..=15);
        let (ox, oy) = (rng.gen_range(0..=15 - w), rng.gen_range(0..=15 - h));
        let k = rng.gen_range(3..=12);
        let pts: Vec<LatticePoint> = (0..k)
            .map(|_| LatticePoint::new(ox + rng.gen_range(0..=w), oy + rng.gen_range(0..=h)))
            .collect();
        let poly = convex_hull(&pts).unwrap();
        if poly.dim() == 2 {
            return poly;
        }
    }
}

/// Hulls of all subsets of the `3 × 3` grid with a full-dimensional hull, deduplicated.
pub fn grid_polygons() -> Vec<LatticePolygon> {
    let grid: Vec<LatticePoint> = (0..3)
        .flat_map(|y| (0..3).map(move |x| LatticePoint::new(x, y)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 1u32..(1 << grid.len()) {
        let pts: Vec<LatticePoint> = (0..grid.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| grid[i])
            .collect();
        let poly = convex_hull(&pts).unwrap();
        if poly.dim() == 2 && seen.insert(poly.vertices().to_vec()) {
            out.push(poly);
        }
    }
    out
}

pub fn random_primitive(rng: &mut ChaCha8Rng, bound: i64) -> Viewangle {
    loop {
        let (m, n) = (rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
        if let Ok(h) = Viewangle::new(m, n) {
            if h.is_primitive() {
                return h;
            }
        }
    }
}

/// Product of random elementary matrices plus a translation.
pub fn random_unimodular(rng: &mut ChaCha8Rng) -> UnimodularAffineMap {
    let mut map =
        UnimodularAffineMap::translation(rng.gen_range(-20..=20), rng.gen_range(-20..=20));
    for _ in 0..rng.gen_range(1..=4) {
        let k = rng.gen_range(-2..=2);
        let step = match rng.gen_range(0..4) {
            0 => UnimodularAffineMap::new(1, k, 0, 1, 0, 0),
            1 => UnimodularAffineMap::new(1, 0, k, 1, 0, 0),
            2 => UnimodularAffineMap::new(0, 1, 1, 0, 0, 0),
            _ => UnimodularAffineMap::new(-1, 0, 0, 1, 0, 0),
        }
        .unwrap();
        map = step.compose(&map).unwrap();
    }
    map
}

/// Width and optimal set by scanning every primitive direction with
/// `|m|, |n| <= bound`; independent of the library's search bound.
pub fn scan_width(poly: &LatticePolygon, bound: i64) -> (i64, BTreeSet<Viewangle>) {
    let mut best = i64::MAX;
    let mut set = BTreeSet::new();
    for m in -bound..=bound {
        for n in -bound..=bound {
            let Ok(h) = Viewangle::new(m, n) else {
                continue;
            };
            if !h.is_primitive() {
                continue;
            }
            let w = width_of(poly, h).unwrap();
            if w < best {
                best = w;
                set.clear();
            }
            if w == best {
                set.insert(h.canonical());
            }
        }
    }
    (best, set)
}

/// Index in `Z²` of the lattice spanned by `vectors` (gcd of all 2×2 minors); 0 if rank < 2.
pub fn lattice_index(vectors: &[(i64, i64)]) -> i64 {
    let mut g: i64 = 0;
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            let ((a, b), (c, d)) = (vectors[i], vectors[j]);
            g = num_gcd(g, a * d - b * c);
        }
    }
    g
}

/// Whether `v` lies in the lattice spanned by the differences `pᵢ − p₀`:
/// adjoining a member leaves the index unchanged.
pub fn in_difference_lattice(pts: &[LatticePoint], v: (i64, i64)) -> bool {
    let diffs: Vec<(i64, i64)> = pts
        .iter()
        .map(|p| (p.x - pts[0].x, p.y - pts[0].y))
        .collect();
    let base = lattice_index(&diffs);
    let mut with_v = diffs;
    with_v.push(v);
    base != 0 && lattice_index(&with_v) == base
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}
