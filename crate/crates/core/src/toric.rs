//! Viewangles as toric fibrations.
//!
//! An embedding `(s, t) ↦ (s^{a₀} t^{b₀} : … : s^{a_r} t^{b_r})` and a primitive
//! direction `h = (m, n)` give the fibration `Π xᵢ^{eᵢ}` with `Σ eᵢ = 0`,
//! `Σ aᵢ eᵢ = −n`, `Σ bᵢ eᵢ = m`. Its fibers are parametrized by
//! `u ↦ (k^{aᵢ} l^{bᵢ} u^{aᵢ m + bᵢ n})ᵢ`, on which the fibration equals `lᵐ / kⁿ`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{descend_l1, reduce_basis, solve_integer_system};
use crate::polygon::{convex_hull, LatticePoint, LatticePolygon};
use crate::width::{solve, width_of, Viewangle};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(i64, i64)>", into = "Vec<(i64, i64)>")]
pub struct MonomialEmbedding {
    exponents: Vec<LatticePoint>,
}

impl MonomialEmbedding {
    pub fn new(exponents: &[(i64, i64)]) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut seen = BTreeSet::new();
        let mut pts = Vec::with_capacity(exponents.len());
        for &(a, b) in exponents {
            let p = LatticePoint::checked(a, b)?;
            if !seen.insert(p) {
                return Err(Error::DuplicateExponent { a, b });
            }
            pts.push(p);
        }
        Ok(Self { exponents: pts })
    }

    pub fn exponents(&self) -> &[LatticePoint] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Exponent values `aᵢ m + bᵢ n`.
    fn weights(&self, h: Viewangle) -> Vec<i128> {
        self.exponents.iter().map(|&p| h.eval(p)).collect()
    }
}

impl TryFrom<Vec<(i64, i64)>> for MonomialEmbedding {
    type Error = Error;

    fn try_from(v: Vec<(i64, i64)>) -> Result<Self> {
        Self::new(&v)
    }
}

impl From<MonomialEmbedding> for Vec<(i64, i64)> {
    fn from(e: MonomialEmbedding) -> Self {
        e.exponents.into_iter().map(Into::into).collect()
    }
}

/// Convex hull of the exponents; must be full-dimensional.
pub fn polygon_of(emb: &MonomialEmbedding) -> Result<LatticePolygon> {
    let poly = convex_hull(emb.exponents())?;
    if poly.dim() < 2 {
        return Err(Error::DegenerateEmbedding { dim: poly.dim() });
    }
    Ok(poly)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationDescriptor {
    pub h: Viewangle,
    pub e: Vec<i64>,
    pub degree: i64,
}

impl FibrationDescriptor {
    /// Checks the three linear identities, `Σ eᵢ (aᵢ m + bᵢ n) = 0` and the degree.
    pub fn verify(&self, emb: &MonomialEmbedding) -> Result<()> {
        let fail = |what: &str| {
            Err(Error::InvariantViolated(format!(
                "fibration for {}: {what}",
                self.h
            )))
        };
        if self.e.len() != emb.len() {
            return fail("exponent vector has the wrong length");
        }
        let (mut s, mut sa, mut sb, mut sw) = (0i128, 0i128, 0i128, 0i128);
        for ((&p, &e), w) in emb.exponents().iter().zip(&self.e).zip(emb.weights(self.h)) {
            let e = i128::from(e);
            s += e;
            sa += e * i128::from(p.x);
            sb += e * i128::from(p.y);
            sw += e * w;
        }
        if s != 0 {
            return fail("exponents do not sum to 0");
        }
        if sa != -i128::from(self.h.n()) || sb != i128::from(self.h.m()) {
            return fail("exponents do not reproduce the direction");
        }
        if sw != 0 {
            return fail("map is not constant on fibers");
        }
        if self.degree != family_degree(emb, self.h)? {
            return fail("degree mismatch");
        }
        Ok(())
    }
}

/// `maxᵢ(aᵢ m + bᵢ n) − minᵢ(aᵢ m + bᵢ n)`.
pub fn family_degree(emb: &MonomialEmbedding, h: Viewangle) -> Result<i64> {
    let w = emb.weights(h);
    let hi = w.iter().max().ok_or(Error::EmptyInput)?;
    let lo = w.iter().min().ok_or(Error::EmptyInput)?;
    i64::try_from(hi - lo).map_err(|_| Error::Overflow("family degree"))
}

/// Exponent vector of the fibration for a primitive `h`, L1-reduced over the
/// solution lattice with lexicographic tie-break.
pub fn fibration_exponents(emb: &MonomialEmbedding, h: Viewangle) -> Result<FibrationDescriptor> {
    polygon_of(emb)?;
    if !h.is_primitive() {
        return Err(Error::NonPrimitiveDirection { m: h.m(), n: h.n() });
    }
    let pts = emb.exponents();
    let rows = vec![
        vec![1i128; pts.len()],
        pts.iter().map(|p| i128::from(p.x)).collect(),
        pts.iter().map(|p| i128::from(p.y)).collect(),
    ];
    let rhs = [0, -i128::from(h.n()), i128::from(h.m())];
    let sol = solve_integer_system(&rows, &rhs)?
        .ok_or(Error::NoIntegralFibration { m: h.m(), n: h.n() })?;
    let mut kernel = sol.kernel;
    reduce_basis(&mut kernel);
    let e = descend_l1(sol.particular, &kernel)
        .into_iter()
        .map(|x| i64::try_from(x).map_err(|_| Error::Overflow("fibration exponents")))
        .collect::<Result<Vec<_>>>()?;
    let desc = FibrationDescriptor {
        h,
        e,
        degree: family_degree(emb, h)?,
    };
    desc.verify(emb)?;
    Ok(desc)
}

fn rational_pow(base: &BigRational, exp: i128) -> Result<BigRational> {
    let mag = u32::try_from(exp.unsigned_abs()).map_err(|_| Error::Overflow("fiber exponent"))?;
    let p = num_traits::pow::Pow::pow(base, mag);
    Ok(if exp < 0 { p.recip() } else { p })
}

/// Clears denominators and common factors; the first coordinate is made positive.
fn projective_normalize(coords: &[BigRational]) -> Vec<BigInt> {
    let lcm = coords
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coords
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    let g = if g.is_zero() { BigInt::one() } else { g * sign };
    ints.into_iter().map(|x| x / &g).collect()
}

/// Points `g(u)` on the fiber `Π xᵢ^{eᵢ} = lᵐ / kⁿ`, as reduced integer tuples.
pub fn fiber_parametrization(
    emb: &MonomialEmbedding,
    h: Viewangle,
    k: &BigRational,
    l: &BigRational,
    samples: &[BigRational],
) -> Result<Vec<Vec<BigInt>>> {
    if k.is_zero() || l.is_zero() {
        return Err(Error::ZeroScale);
    }
    if samples.iter().any(Zero::is_zero) {
        return Err(Error::ZeroSample);
    }
    let desc = fibration_exponents(emb, h)?;
    let level = rational_pow(l, i128::from(h.m()))? / rational_pow(k, i128::from(h.n()))?;
    let weights = emb.weights(h);
    let mut out = Vec::with_capacity(samples.len());
    for u in samples {
        let coords = emb
            .exponents()
            .iter()
            .zip(&weights)
            .map(|(p, &w)| {
                Ok(rational_pow(k, i128::from(p.x))?
                    * rational_pow(l, i128::from(p.y))?
                    * rational_pow(u, w)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let point = projective_normalize(&coords);
        let mut value = BigRational::one();
        for (x, &e) in point.iter().zip(&desc.e) {
            value *= rational_pow(&BigRational::from_integer(x.clone()), i128::from(e))?;
        }
        if value != level {
            return Err(Error::InvariantViolated(format!(
                "fiber point for u = {u} has fibration value {value}, expected {level}"
            )));
        }
        out.push(point);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricFamilies {
    pub width: i64,
    pub descriptors: Vec<FibrationDescriptor>,
}

/// Minimal family degree and one fibration per optimal direction.
pub fn optimal_toric_families(emb: &MonomialEmbedding) -> Result<ToricFamilies> {
    let poly = polygon_of(emb)?;
    let report = solve(&poly)?;
    let descriptors = report
        .optimal
        .iter()
        .map(|&h| fibration_exponents(emb, h))
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(descriptors.iter().all(|d| d.degree == report.width));
    debug_assert!(report
        .optimal
        .iter()
        .all(|&h| width_of(&poly, h).ok() == Some(report.width)));
    Ok(ToricFamilies {
        width: report.width,
        descriptors,
    })
}
