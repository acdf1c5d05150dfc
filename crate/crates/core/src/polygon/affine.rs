use serde::{Deserialize, Serialize};

use super::{LatticePoint, LatticePolygon};
use crate::error::{Error, Result};

/// Lattice equivalence `p ↦ A p + t` with `A ∈ GL₂(Z)`.
///
/// `A = [[a, b], [c, d]]` acts on column vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnimodularAffineMap {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    tx: i64,
    ty: i64,
}

fn narrow(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(what))
}

impl UnimodularAffineMap {
    pub fn new(a: i64, b: i64, c: i64, d: i64, tx: i64, ty: i64) -> Result<Self> {
        let det = i128::from(a) * i128::from(d) - i128::from(b) * i128::from(c);
        if det.abs() != 1 {
            return Err(Error::NotUnimodular { a, b, c, d });
        }
        Ok(Self { a, b, c, d, tx, ty })
    }

    pub fn identity() -> Self {
        Self {
            a: 1,
            b: 0,
            c: 0,
            d: 1,
            tx: 0,
            ty: 0,
        }
    }

    pub fn translation(tx: i64, ty: i64) -> Self {
        Self {
            tx,
            ty,
            ..Self::identity()
        }
    }

    pub fn linear_part(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn translation_part(&self) -> (i64, i64) {
        (self.tx, self.ty)
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, p: LatticePoint) -> Result<LatticePoint> {
        let (x, y) = (i128::from(p.x), i128::from(p.y));
        let nx = i128::from(self.a) * x + i128::from(self.b) * y + i128::from(self.tx);
        let ny = i128::from(self.c) * x + i128::from(self.d) * y + i128::from(self.ty);
        Ok(LatticePoint::new(
            narrow(nx, "affine map")?,
            narrow(ny, "affine map")?,
        ))
    }

    pub fn apply_polygon(&self, poly: &LatticePolygon) -> Result<LatticePolygon> {
        let image = poly
            .vertices()
            .iter()
            .map(|&v| self.apply(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(LatticePolygon::hull_of(&image))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let m = |x: i64, y: i64| i128::from(x) * i128::from(y);
        let a = narrow(m(self.a, other.a) + m(self.b, other.c), "compose")?;
        let b = narrow(m(self.a, other.b) + m(self.b, other.d), "compose")?;
        let c = narrow(m(self.c, other.a) + m(self.d, other.c), "compose")?;
        let d = narrow(m(self.c, other.b) + m(self.d, other.d), "compose")?;
        let t = self.apply(LatticePoint::new(other.tx, other.ty))?;
        Self::new(a, b, c, d, t.x, t.y)
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        // A^{-1} = det * adj(A) because det = ±1
        let (a, b, c, d) = (det * self.d, -det * self.b, -det * self.c, det * self.a);
        let lin = Self {
            a,
            b,
            c,
            d,
            tx: 0,
            ty: 0,
        };
        let t = lin.apply(LatticePoint::new(self.tx, self.ty))?;
        let (tx, ty) = (
            t.x.checked_neg().ok_or(Error::Overflow("inverse"))?,
            t.y.checked_neg().ok_or(Error::Overflow("inverse"))?,
        );
        Ok(Self { tx, ty, ..lin })
    }

    /// Transports a covector `h = (m, n)` along the map: the returned `h'`
    /// satisfies `h'(A p + t) = h(p) + const`, i.e. `h' = h A⁻¹`.
    pub fn push_covector(&self, m: i64, n: i64) -> Result<(i64, i64)> {
        let inv = self.inverse()?;
        let (m, n) = (i128::from(m), i128::from(n));
        let nm = m * i128::from(inv.a) + n * i128::from(inv.c);
        let nn = m * i128::from(inv.b) + n * i128::from(inv.d);
        Ok((narrow(nm, "covector")?, narrow(nn, "covector")?))
    }
}
