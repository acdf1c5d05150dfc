//! Optimal families on minimal models, for the rows that the class lattice
//! decides.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{intersect, is_minimal_mprs, DivisorClass, Enumeration, FamilyClass, SurfaceModel};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TerminalKind {
    Ruled,
    LinearFibration,
    Plane,
    ConicFibration,
    Halphen,
}

impl fmt::Display for TerminalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Ruled => "ruled",
            Self::LinearFibration => "linear-fibration",
            Self::Plane => "plane",
            Self::ConicFibration => "conic-fibration",
            Self::Halphen => "halphen",
        })
    }
}

/// Minimal degree and optimal families of a minimal model; classes are in
/// the model's own basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalSolution {
    pub v: i64,
    pub families: Vec<FamilyClass>,
    pub enumeration: Enumeration,
    pub kind: TerminalKind,
}

fn unrecognized(model: &SurfaceModel, why: &str) -> Error {
    Error::UnrecognizedMinimalModel(format!("D = {}: {why}", model.display_class(&model.d)))
}

/// `Some(c)` when `d = −c·K` for a positive integer `c`.
fn negative_multiple_of_canonical(d: &DivisorClass, k: &DivisorClass) -> Option<i64> {
    if k.l == 0 || d.l % k.l != 0 {
        return None;
    }
    let c = -d.l / k.l;
    (c > 0 && k.scale(-c).ok().as_ref() == Some(d)).then_some(c)
}

pub fn recognize_minimal(model: &SurfaceModel) -> Result<MinimalSolution> {
    if !is_minimal_mprs(model)?.0 {
        return Err(unrecognized(model, "model is not minimal"));
    }
    let d = &model.d;
    let k = model.canonical();
    let d2 = intersect(d, d)?;

    if d2 == 0 {
        if let Some(c) = negative_multiple_of_canonical(d, &k) {
            return Ok(MinimalSolution {
                v: 2 * c,
                families: Vec::new(),
                enumeration: Enumeration::Omitted,
                kind: TerminalKind::Halphen,
            });
        }
        let p = d.primitive_part();
        if intersect(&p, &k)? != -2 {
            return Err(unrecognized(
                model,
                "D² = 0 but the primitive part is not a rational pencil",
            ));
        }
        return Ok(MinimalSolution {
            v: 0,
            families: vec![FamilyClass {
                class: p,
                tight: true,
            }],
            enumeration: Enumeration::Complete,
            kind: TerminalKind::Ruled,
        });
    }

    if model.is_plane() {
        return match d.l {
            1..=3 => Ok(MinimalSolution {
                v: d.l,
                families: vec![FamilyClass {
                    class: DivisorClass::line(0),
                    tight: false,
                }],
                enumeration: Enumeration::Representative,
                kind: TerminalKind::Plane,
            }),
            _ => Err(unrecognized(model, "plane model of unexpected degree")),
        };
    }

    let a = model.adjoint_class()?;
    if a.is_zero() && (1..=8).contains(&d2) {
        return Ok(MinimalSolution {
            v: 2,
            families: Vec::new(),
            enumeration: Enumeration::Omitted,
            kind: TerminalKind::ConicFibration,
        });
    }

    let b = d.scale(2)?.add(&k)?;
    if !b.is_zero() && intersect(&b, &b)? == 0 {
        let p = b.primitive_part();
        if p.l > 0 && intersect(&p, &k)? == -2 {
            let v = intersect(d, &p)?;
            if v == 1 {
                return Ok(MinimalSolution {
                    v,
                    families: vec![FamilyClass {
                        class: p,
                        tight: true,
                    }],
                    enumeration: Enumeration::Complete,
                    kind: TerminalKind::LinearFibration,
                });
            }
        }
    }

    Err(unrecognized(
        model,
        "no row of the minimal-model table applies",
    ))
}
