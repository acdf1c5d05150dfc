//! Numeric model of polarized rational surfaces as blown-up planes.
//!
//! A class is `l·L + Σ eᵢ·Eᵢ` with `L² = 1`, `Eᵢ·Eⱼ = −δᵢⱼ`, `L·Eᵢ = 0`.
//! Basis slots carry a label and the index of the slot in the original
//! surface, so classes on later chain models lift back by zero-extension.

mod chain;
mod minimal;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use chain::{
    adjoint_step, classify_case_b, is_minimal_mprs, solve_min_degree, AdjointStep, CaseB,
    ChainReport, ChainStep, Enumeration, FamilyClass, MinimalityReason,
};
pub use minimal::{recognize_minimal, MinimalSolution, TerminalKind};

use crate::error::{Error, Result};
use crate::lattice::gcd;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    pub l: i64,
    pub e: Vec<i64>,
}

fn checked(v: Option<i64>) -> Result<i64> {
    v.ok_or(Error::Overflow("divisor class"))
}

impl DivisorClass {
    pub fn new(l: i64, e: Vec<i64>) -> Self {
        Self { l, e }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(0, vec![0; n])
    }

    pub fn line(n: usize) -> Self {
        Self::new(1, vec![0; n])
    }

    pub fn exceptional(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::new(0, e)
    }

    /// `d·L − Σ mᵢ·Eᵢ`.
    pub fn from_multiplicities(d: i64, mults: &[i64]) -> Self {
        Self::new(d, mults.iter().map(|m| -m).collect())
    }

    pub fn n(&self) -> usize {
        self.e.len()
    }

    /// Multiplicity at slot `i`, i.e. `−eᵢ`.
    pub fn mult(&self, i: usize) -> i64 {
        -self.e[i]
    }

    pub fn is_zero(&self) -> bool {
        self.l == 0 && self.e.iter().all(|&x| x == 0)
    }

    fn same_basis(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::BasisMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        Ok(Self::new(
            checked(self.l.checked_add(other.l))?,
            self.e
                .iter()
                .zip(&other.e)
                .map(|(a, b)| checked(a.checked_add(*b)))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        Ok(Self::new(
            checked(self.l.checked_mul(k))?,
            self.e
                .iter()
                .map(|a| checked(a.checked_mul(k)))
                .collect::<Result<_>>()?,
        ))
    }

    /// gcd of all coefficients; 0 for the zero class.
    pub fn content(&self) -> i64 {
        self.e
            .iter()
            .fold(i128::from(self.l), |g, &x| gcd(g, i128::from(x))) as i64
    }

    /// The class divided by its content.
    pub fn primitive_part(&self) -> Self {
        let g = self.content().max(1);
        Self::new(self.l / g, self.e.iter().map(|x| x / g).collect())
    }

    /// Keeps the listed slots, in order.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        Self::new(self.l, keep.iter().map(|&i| self.e[i]).collect())
    }

    /// Zero-extends a class on the slots `positions` into a basis of size `n`.
    pub fn extend(&self, positions: &[usize], n: usize) -> Self {
        let mut e = vec![0; n];
        for (&p, &x) in positions.iter().zip(&self.e) {
            e[p] = x;
        }
        Self::new(self.l, e)
    }

    /// Human-readable form with basis names, e.g. `L-E1`.
    pub fn display_with(&self, labels: &[String]) -> String {
        let mut out = String::new();
        let mut term = |coef: i64, name: &str| {
            if coef == 0 {
                return;
            }
            let sign = if coef < 0 {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            let mag = coef.unsigned_abs();
            out.push_str(sign);
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            out.push_str(name);
        };
        term(self.l, "L");
        for (x, name) in self.e.iter().zip(labels) {
            term(*x, name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_labels(self.n())))
    }
}

/// `C·D = c_l d_l − Σ cᵢ dᵢ`.
pub fn intersect(c: &DivisorClass, d: &DivisorClass) -> Result<i64> {
    c.same_basis(d)?;
    let mut acc = i128::from(c.l) * i128::from(d.l);
    for (a, b) in c.e.iter().zip(&d.e) {
        acc -= i128::from(*a) * i128::from(*b);
    }
    i64::try_from(acc).map_err(|_| Error::Overflow("intersection"))
}

/// `K = −3L + E₁ + … + Eₙ`.
pub fn canonical_class(n: usize) -> DivisorClass {
    DivisorClass::new(-3, vec![1; n])
}

pub fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("E{i}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceModel {
    pub d: DivisorClass,
    pub labels: Vec<String>,
    /// Slot index in the surface the chain started from.
    pub origin: Vec<usize>,
}

impl SurfaceModel {
    pub fn n(&self) -> usize {
        self.d.n()
    }

    pub fn canonical(&self) -> DivisorClass {
        canonical_class(self.n())
    }

    /// `D + K`.
    pub fn adjoint_class(&self) -> Result<DivisorClass> {
        self.d.add(&self.canonical())
    }

    pub fn is_plane(&self) -> bool {
        self.n() == 0
    }

    pub fn degree(&self) -> i64 {
        self.d.l
    }

    pub fn display_class(&self, c: &DivisorClass) -> String {
        c.display_with(&self.labels)
    }
}

pub fn surface_from_basepoints(
    parametric_degree: i64,
    multiplicities: &[i64],
) -> Result<SurfaceModel> {
    surface_with_labels(
        parametric_degree,
        multiplicities,
        default_labels(multiplicities.len()),
    )
}

pub fn surface_with_labels(
    parametric_degree: i64,
    multiplicities: &[i64],
    labels: Vec<String>,
) -> Result<SurfaceModel> {
    if parametric_degree <= 0 {
        return Err(Error::InvalidDegree(parametric_degree));
    }
    if labels.len() != multiplicities.len() {
        return Err(Error::NotMprs(format!(
            "{} labels for {} basepoints",
            labels.len(),
            multiplicities.len()
        )));
    }
    if let Some(m) = multiplicities.iter().find(|&&m| m < 0) {
        return Err(Error::NotMprs(format!("negative multiplicity {m}")));
    }
    let model = SurfaceModel {
        d: DivisorClass::from_multiplicities(parametric_degree, multiplicities),
        origin: (0..multiplicities.len()).collect(),
        labels,
    };
    check_mprs(&model)?;
    Ok(model)
}

/// Distinct indices `i₁ < … < i_k` from `items` whose values sum to `target`.
/// Values must be nonnegative.
pub(crate) fn find_subset(items: &[(usize, i64)], k: usize, target: i64) -> Option<Vec<usize>> {
    if target < 0 || items.len() < k {
        return None;
    }
    debug_assert!(items.iter().all(|&(_, v)| v >= 0));
    let t = usize::try_from(target).ok()?;
    let usable: Vec<(usize, usize)> = items
        .iter()
        .filter_map(|&(i, v)| usize::try_from(v).ok().filter(|&v| v <= t).map(|v| (i, v)))
        .collect();
    // reach[j][c][s]: some c-subset of the first j items sums to s
    let width = t + 1;
    let idx = |c: usize, s: usize| c * width + s;
    let mut reach = vec![vec![false; (k + 1) * width]];
    reach[0][idx(0, 0)] = true;
    for &(_, v) in &usable {
        let prev = reach.last().expect("nonempty");
        let mut next = prev.clone();
        for c in 0..k {
            for s in 0..width - v {
                if prev[idx(c, s)] {
                    next[idx(c + 1, s + v)] = true;
                }
            }
        }
        reach.push(next);
    }
    if !reach[usable.len()][idx(k, t)] {
        return None;
    }
    let (mut c, mut s) = (k, t);
    let mut picked = Vec::with_capacity(k);
    for j in (0..usable.len()).rev() {
        if c == 0 {
            break;
        }
        let (i, v) = usable[j];
        if !reach[j][idx(c, s)] {
            picked.push(i);
            c -= 1;
            s -= v;
        }
    }
    picked.sort_unstable();
    Some(picked)
}

/// A (−1)-class from the candidate list `Eᵢ`, `L−Eᵢ−Eⱼ`, `2L−Eᵢ−…−Eₚ`.
pub(crate) fn minus_one_class(n: usize, degree: i64, slots: &[usize]) -> DivisorClass {
    let mut c = DivisorClass::new(degree, vec![0; n]);
    for &i in slots {
        c.e[i] = if degree == 0 { 1 } else { -1 };
    }
    c
}

/// First candidate (−1)-class `C` with `coef·C = 0`, where `coef` is given by
/// its degree and its multiplicities on `allowed` slots (all nonnegative).
pub(crate) fn orthogonal_minus_one_class(
    n: usize,
    degree: i64,
    allowed: &[(usize, i64)],
) -> Option<DivisorClass> {
    if let Some(&(i, _)) = allowed.iter().find(|&&(_, m)| m == 0) {
        return Some(minus_one_class(n, 0, &[i]));
    }
    if let Some(pair) = find_subset(allowed, 2, degree) {
        return Some(minus_one_class(n, 1, &pair));
    }
    let doubled = degree.checked_mul(2)?;
    find_subset(allowed, 5, doubled).map(|five| minus_one_class(n, 2, &five))
}

/// Necessary conditions for `(X, D)` to be minimally polarized.
pub fn check_mprs(model: &SurfaceModel) -> Result<()> {
    let d = &model.d;
    let n = model.n();
    let show = |c: &DivisorClass| model.display_class(c);
    if d.l <= 0 {
        return Err(Error::NotMprs(format!("D·L = {} is not positive", d.l)));
    }
    let d2 = intersect(d, d)?;
    if d2 < 0 {
        return Err(Error::NotMprs(format!("D² = {d2} is negative")));
    }
    let mut mults: Vec<(usize, i64)> = (0..n).map(|i| (i, d.mult(i))).collect();
    if let Some(&(i, m)) = mults.iter().find(|&&(_, m)| m < 0) {
        return Err(Error::NotMprs(format!(
            "D·{} = {m} is negative",
            model.labels[i]
        )));
    }
    mults.sort_by_key(|&(i, m)| (std::cmp::Reverse(m), i));
    let top: i64 = mults.iter().take(2).map(|&(_, m)| m).sum();
    if top > d.l {
        let slots: Vec<usize> = mults.iter().take(2).map(|&(i, _)| i).collect();
        let c = minus_one_class(n, 1, &slots);
        return Err(Error::NotMprs(format!(
            "D·({}) = {} is negative",
            show(&c),
            d.l - top
        )));
    }
    mults.sort_unstable();
    if let Some(c) = orthogonal_minus_one_class(n, d.l, &mults) {
        return Err(Error::NotMprs(format!(
            "(-1)-class {} has D·C = 0",
            show(&c)
        )));
    }
    Ok(())
}
