//! Adjoint relation, the minimality test, and the chain solver.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{
    check_mprs, intersect, orthogonal_minus_one_class, recognize_minimal, DivisorClass,
    SurfaceModel, TerminalKind,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MinimalityReason {
    /// `D² = 0`.
    SelfIntersectionZero,
    /// `(D+K)·D < 0`, so `|D+K|` is empty.
    AdjointEmpty,
    /// `D + K = 0`.
    AdjointTrivial,
    /// `(D+K)·D = 0` with `D² > 0`: `D+K` is at most a rigid curve.
    AdjointRigid,
    /// `(D+K)·D ≥ 2`: Riemann–Roch gives `dim|D+K| ≥ 1`.
    AdjointMoves,
}

/// Decides `dim|D+K| ≤ 0 or D² = 0`.
///
/// With `A = D + K`, `A·D = D² + D·K` is even. Since `h²(A) = h⁰(−D) = 0`,
/// Riemann–Roch gives `dim|A| ≥ A·D / 2`; when `A·D = 0` and `D² > 0`,
/// the Hodge index theorem leaves `A` at most a rigid curve.
pub fn is_minimal_mprs(model: &SurfaceModel) -> Result<(bool, MinimalityReason)> {
    let d = &model.d;
    if intersect(d, d)? == 0 {
        return Ok((true, MinimalityReason::SelfIntersectionZero));
    }
    let a = model.adjoint_class()?;
    let ad = intersect(&a, d)?;
    if ad < 0 {
        return Ok((true, MinimalityReason::AdjointEmpty));
    }
    if a.is_zero() {
        return Ok((true, MinimalityReason::AdjointTrivial));
    }
    if ad == 0 {
        return Ok((true, MinimalityReason::AdjointRigid));
    }
    if a.l < 0 {
        return Err(Error::MinimalityUndecidable(format!(
            "(D+K)·D = {ad} forces D+K to move, but (D+K)·L = {} < 0 contradicts nefness of D",
            a.l
        )));
    }
    Ok((false, MinimalityReason::AdjointMoves))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjointStep {
    pub model: SurfaceModel,
    /// Slots (indices into the pre-step model) that were blown down.
    pub removed: Vec<usize>,
}

impl AdjointStep {
    pub fn blown_down_labels(&self, before: &SurfaceModel) -> Vec<String> {
        self.removed
            .iter()
            .map(|&i| before.labels[i].clone())
            .collect()
    }
}

/// `(X, D) → (X', D')`: contracts the basis classes orthogonal to `D + K`
/// and pushes `D + K` forward.
pub fn adjoint_step(model: &SurfaceModel) -> Result<AdjointStep> {
    if is_minimal_mprs(model)?.0 {
        return Err(Error::AlreadyMinimal);
    }
    let a = model.adjoint_class()?;
    let n = model.n();
    let (removed, keep): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| a.e[i] == 0);

    // Candidates meeting a contracted Eᵢ cannot be orthogonal (−1)-curves
    // themselves: orthogonal (−1)-curves are disjoint.
    let survivors: Vec<(usize, i64)> = keep.iter().map(|&i| (i, a.mult(i))).collect();
    if let Some(&(i, m)) = survivors.iter().find(|&&(_, m)| m < 0) {
        return Err(Error::NotMprs(format!(
            "(D+K)·{} = {m} is negative",
            model.labels[i]
        )));
    }
    if let Some(c) = orthogonal_minus_one_class(n, a.l, &survivors) {
        return Err(Error::NonBasisContractionNeeded {
            class: model.display_class(&c),
        });
    }

    let next = SurfaceModel {
        d: a.restrict(&keep),
        labels: keep.iter().map(|&i| model.labels[i].clone()).collect(),
        origin: keep.iter().map(|&i| model.origin[i]).collect(),
    };
    debug_assert_eq!(next.d.extend(&keep, n), a);
    check_mprs(&next)?;
    Ok(AdjointStep {
        model: next,
        removed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseB {
    B0,
    B1,
    B2,
    B3,
    B4,
}

impl fmt::Display for CaseB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Row of the surface case table for a performed step `model → next`.
pub fn classify_case_b(model: &SurfaceModel, next: &SurfaceModel) -> Result<CaseB> {
    Ok(match (model.is_plane(), next.is_plane()) {
        (true, _) => CaseB::B1,
        (false, true) => CaseB::B2,
        (false, false) if is_minimal_mprs(next)?.0 => CaseB::B3,
        (false, false) => CaseB::B4,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub model: SurfaceModel,
    pub case: CaseB,
    /// Labels contracted by the step leaving this model; empty at B0.
    pub blown_down: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyClass {
    /// Class in the basis of the first model of the chain.
    pub class: DivisorClass,
    pub tight: bool,
}

/// How much of the optimal set `optimal_families` lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Enumeration {
    /// Every optimal family.
    Complete,
    /// One class standing for all optimal families, e.g. `L` for the pencils of lines.
    Representative,
    /// Optimal families exist but are not listed.
    Omitted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    /// Models in chain order; the last one is the minimal model (B0).
    pub steps: Vec<ChainStep>,
    pub v: i64,
    pub optimal_families: Vec<FamilyClass>,
    pub enumeration: Enumeration,
    pub terminal_kind: TerminalKind,
}

fn abort(partial: &[ChainStep], source: Error) -> Error {
    Error::ChainAborted {
        partial: partial.to_vec(),
        source: Box::new(source),
    }
}

/// Minimal degree and optimal families of `(X, D)` along the adjoint chain.
pub fn solve_min_degree(model: &SurfaceModel) -> Result<ChainReport> {
    check_mprs(model)?;
    let n0 = model.n();
    let mut steps: Vec<ChainStep> = Vec::new();
    // removed slots of each performed step, in original indices
    let mut removed_origin: Vec<Vec<usize>> = Vec::new();
    let mut current = model.clone();
    loop {
        let minimal = is_minimal_mprs(&current).map_err(|e| abort(&steps, e))?.0;
        if minimal {
            steps.push(ChainStep {
                model: current,
                case: CaseB::B0,
                blown_down: Vec::new(),
            });
            break;
        }
        let step = adjoint_step(&current).map_err(|e| abort(&steps, e))?;
        let case = classify_case_b(&current, &step.model).map_err(|e| abort(&steps, e))?;
        removed_origin.push(step.removed.iter().map(|&i| current.origin[i]).collect());
        let blown_down = step.blown_down_labels(&current);
        steps.push(ChainStep {
            model: current,
            case,
            blown_down,
        });
        current = step.model;
    }

    let terminal = &steps.last().expect("chain ends in B0").model;
    let base = recognize_minimal(terminal).map_err(|e| abort(&steps[..steps.len() - 1], e))?;
    let lift = |c: &DivisorClass, m: &SurfaceModel| c.extend(&m.origin, n0);

    let mut v = base.v;
    let mut families: Vec<FamilyClass> = base
        .families
        .iter()
        .map(|f| FamilyClass {
            class: lift(&f.class, terminal),
            tight: f.tight,
        })
        .collect();
    let mut enumeration = base.enumeration;
    for (idx, step) in steps.iter().enumerate().rev().skip(1) {
        match step.case {
            CaseB::B1 => {
                v += 3;
                families = vec![FamilyClass {
                    class: DivisorClass::line(n0),
                    tight: false,
                }];
                enumeration = Enumeration::Representative;
            }
            CaseB::B2 => {
                v += 2;
                families = removed_origin[idx]
                    .iter()
                    .map(|&p| {
                        let mut c = DivisorClass::line(n0);
                        c.e[p] = -1;
                        FamilyClass {
                            class: c,
                            tight: true,
                        }
                    })
                    .collect();
                enumeration = Enumeration::Complete;
            }
            CaseB::B3 | CaseB::B4 => v += 2,
            CaseB::B0 => unreachable!("B0 only terminates the chain"),
        }
    }

    let report = ChainReport {
        steps,
        v,
        optimal_families: families,
        enumeration,
        terminal_kind: base.kind,
    };
    verify_report(&report).map_err(|e| abort(&report.steps, e))?;
    Ok(report)
}

fn verify_report(report: &ChainReport) -> Result<()> {
    let first = &report.steps[0].model;
    let k0 = first.canonical();
    for f in &report.optimal_families {
        let fd = intersect(&f.class, &first.d)?;
        let fk = intersect(&f.class, &k0)?;
        if fd != report.v || fk > -2 || (f.tight && fk != -2) {
            return Err(Error::InvariantViolated(format!(
                "family {} has F·D = {fd}, F·K = {fk} against v = {}",
                first.display_class(&f.class),
                report.v
            )));
        }
    }
    Ok(())
}
