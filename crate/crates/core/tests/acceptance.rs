//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use optfam::picard::{
    canonical_class, intersect, solve_min_degree, surface_from_basepoints, CaseB, ChainReport,
    DivisorClass,
};
use optfam::polygon::{adjoint, is_minimal, LatticePolygon};
use optfam::toric::{family_degree, fibration_exponents, polygon_of, MonomialEmbedding};
use optfam::width::{is_tight, solve, solve_bruteforce, width_of, Viewangle};
use optfam::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Fuzzed = Vec<(i64, Vec<i64>, Result<ChainReport, Error>)>;
type Criterion<'a> = (&'static str, &'static str, Box<dyn Fn() -> Outcome + 'a>);

const EXAMPLE: [(i64, i64); 7] = [(0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1)];
const DEG8: (i64, [i64; 10]) = (19, [7, 6, 6, 6, 6, 6, 6, 6, 6, 4]);

fn h(m: i64, n: i64) -> Viewangle {
    Viewangle::new(m, n).unwrap()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Median wall time of `f` over `runs` calls.
fn median_time<T>(runs: usize, mut f: impl FnMut() -> T) -> Duration {
    let mut times: Vec<Duration> = (0..runs)
        .map(|_| {
            let t = Instant::now();
            std::hint::black_box(f());
            t.elapsed()
        })
        .collect();
    times.sort();
    times[runs / 2]
}

/// Random corpus plus every hull of a subset of the 3×3 grid.
fn corpus() -> Vec<LatticePolygon> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut polys: Vec<LatticePolygon> = (0..10_000)
        .map(|_| common::random_polygon(&mut rng))
        .collect();
    polys.extend(common::grid_polygons());
    polys
}

fn ac1() -> Outcome {
    let poly = common::hull(&EXAMPLE);
    let emb = MonomialEmbedding::new(&EXAMPLE).unwrap();
    let vals = [
        width_of(&poly, h(1, -1)).unwrap(),
        width_of(&poly, h(1, 0)).unwrap(),
        family_degree(&emb, h(1, -1)).unwrap(),
        family_degree(&emb, h(1, 0)).unwrap(),
    ];
    check(vals == [4, 2, 4, 2], || format!("got {vals:?}"))?;
    let t = median_time(101, || {
        (width_of(&poly, h(1, -1)), family_degree(&emb, h(1, 0)))
    });
    check(t < Duration::from_millis(1), || format!("median {t:?}"))?;
    Ok(format!("widths and degrees (4, 2); median {t:?}"))
}

fn ac2() -> Outcome {
    let r = solve(&common::hull(&EXAMPLE)).unwrap();
    let want = BTreeSet::from([h(1, 0), h(0, 1), h(1, 1)]);
    check(r.width == 2 && r.optimal == want, || {
        format!("v = {}, S = {:?}", r.width, r.optimal)
    })?;
    Ok("v = 2, S = {(0,1),(1,0),(1,1)}".into())
}

fn ac3(corpus: &[LatticePolygon]) -> Outcome {
    let start = Instant::now();
    for p in corpus {
        let (r, o) = (solve(p).unwrap(), solve_bruteforce(p).unwrap());
        check(r.width == o.width && r.optimal == o.optimal, || {
            format!(
                "{p}: recursion v={} {:?}, oracle v={} {:?}",
                r.width, r.optimal, o.width, o.optimal
            )
        })?;
    }
    let t = start.elapsed();
    check(t < Duration::from_secs(180), || format!("took {t:?}"))?;
    Ok(format!("{} polygons agree in {t:.2?}", corpus.len()))
}

fn ac4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let (mut trials, mut equalities) = (0, 0);
    while trials < 2_000 {
        let p = common::random_polygon(&mut rng);
        if is_minimal(&p) || p.interior_count() < 2 {
            continue;
        }
        let inner = adjoint(&p).unwrap();
        let dir = common::random_primitive(&mut rng, 10);
        let (w, wi) = (width_of(&p, dir).unwrap(), width_of(&inner, dir).unwrap());
        let tight = is_tight(&p, dir).unwrap();
        check(w >= wi + 2 && (w == wi + 2) == tight, || {
            format!("{p}, h = {dir}: width {w}, adjoint width {wi}, tight {tight}")
        })?;
        equalities += usize::from(tight);
        trials += 1;
    }
    Ok(format!("{trials} trials, {equalities} tight, 0 violations"))
}

fn ac5(corpus: &[LatticePolygon]) -> Outcome {
    let mut witness = None;
    let mut hist = [0usize; 5];
    for p in corpus {
        let k = solve(p).unwrap().optimal.len();
        check((1..=4).contains(&k), || {
            format!("{p} has {k} optimal directions")
        })?;
        hist[k] += 1;
        if k == 4 && witness.is_none() {
            witness = Some(p.clone());
        }
    }
    let w = witness.ok_or("no polygon with 4 optimal directions found")?;
    Ok(format!("#S histogram {:?}; witness {w}", &hist[1..]))
}

fn chain_rows(r: &ChainReport) -> Vec<Vec<String>> {
    let n0 = r.steps[0].model.n();
    r.steps
        .iter()
        .map(|s| {
            let mut row = vec![s.model.d.l.to_string()];
            row.extend((0..n0).map(
                |slot| match s.model.origin.iter().position(|&o| o == slot) {
                    Some(p) => s.model.d.mult(p).to_string(),
                    None => "-".into(),
                },
            ));
            row
        })
        .collect()
}

fn ac6() -> Outcome {
    let table: [&str; 7] = [
        "19 7 6 6 6 6 6 6 6 6 4",
        "16 6 5 5 5 5 5 5 5 5 3",
        "13 5 4 4 4 4 4 4 4 4 2",
        "10 4 3 3 3 3 3 3 3 3 1",
        "7 3 2 2 2 2 2 2 2 2 -",
        "4 2 1 1 1 1 1 1 1 1 -",
        "1 1 - - - - - - - - -",
    ];
    let model = surface_from_basepoints(DEG8.0, &DEG8.1).unwrap();
    let r = solve_min_degree(&model).unwrap();
    let rows: Vec<String> = chain_rows(&r).iter().map(|row| row.join(" ")).collect();
    check(rows == table, || format!("rows {rows:?}"))?;
    let mut q = DivisorClass::line(10);
    q.e[0] = -1;
    let fams: Vec<&DivisorClass> = r.optimal_families.iter().map(|f| &f.class).collect();
    check(r.v == 12 && fams == [&q], || {
        format!("v = {}, families {fams:?}", r.v)
    })?;
    let cases: Vec<CaseB> = r.steps.iter().map(|s| s.case).collect();
    use CaseB::*;
    check(cases == [B4, B4, B4, B4, B4, B3, B0], || {
        format!("cases {cases:?}")
    })?;
    let t = median_time(101, || solve_min_degree(&model));
    check(t < Duration::from_millis(1), || format!("median {t:?}"))?;
    Ok(format!("7 rows exact, v = 12, Q = L-E1; median {t:?}"))
}

fn ac7() -> Outcome {
    let mut notes = Vec::new();
    for d in 4..=7i64 {
        let r = (d * (d - 1)) as usize;
        let model = surface_from_basepoints(d, &vec![1; r]).unwrap();
        let rep = solve_min_degree(&model).unwrap();
        let first = &rep.steps[0];
        let next = &rep.steps[1].model;
        check(
            first.case == CaseB::B2 && next.n() == 0 && next.d.l == d - 3,
            || format!("d = {d}: first step {} to {}", first.case, next.d),
        )?;
        check(rep.v == d - 1, || format!("d = {d}: v = {}", rep.v))?;
        let want: Vec<DivisorClass> = (0..r)
            .map(|i| {
                let mut c = DivisorClass::line(r);
                c.e[i] = -1;
                c
            })
            .collect();
        let got: Vec<DivisorClass> = rep
            .optimal_families
            .iter()
            .map(|f| f.class.clone())
            .collect();
        check(got == want, || format!("d = {d}: families differ"))?;
        let cases: Vec<String> = rep.steps.iter().map(|s| s.case.to_string()).collect();
        notes.push(format!("d={d}: {}", cases.join(">")));
    }
    Ok(format!(
        "v = d-1 with r families L-Ei; {}",
        notes.join(", ")
    ))
}

fn ac8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let (mut trials, mut descriptors, mut unreachable) = (0, 0, 0);
    while trials < 2_000 {
        let k = rng.gen_range(3..=10);
        let set: BTreeSet<(i64, i64)> = (0..k)
            .map(|_| (rng.gen_range(-6..=6), rng.gen_range(-6..=6)))
            .collect();
        let exps: Vec<(i64, i64)> = set.into_iter().collect();
        let emb = MonomialEmbedding::new(&exps).unwrap();
        let Ok(poly) = polygon_of(&emb) else { continue };
        let dir = common::random_primitive(&mut rng, 12);
        let (deg, w) = (
            family_degree(&emb, dir).unwrap(),
            width_of(&poly, dir).unwrap(),
        );
        check(deg == w, || {
            format!("{exps:?}, h = {dir}: degree {deg}, width {w}")
        })?;
        match fibration_exponents(&emb, dir) {
            Ok(d) => {
                d.verify(&emb).map_err(|e| e.to_string())?;
                let mut sums = [0i64; 4];
                for (&(a, b), &e) in exps.iter().zip(&d.e) {
                    sums[0] += e;
                    sums[1] += a * e;
                    sums[2] += b * e;
                    sums[3] += e * (a * dir.m() + b * dir.n());
                }
                check(sums == [0, -dir.n(), dir.m(), 0], || {
                    format!("{exps:?}, h = {dir}: sums {sums:?}")
                })?;
                descriptors += 1;
            }
            Err(Error::NoIntegralFibration { .. }) => {
                check(
                    !common::in_difference_lattice(emb.exponents(), (-dir.n(), dir.m())),
                    || format!("{exps:?}, h = {dir}: solvable system reported unsolvable"),
                )?;
                unreachable += 1;
            }
            Err(e) => return Err(format!("{exps:?}, h = {dir}: {e}")),
        }
        trials += 1;
    }
    Ok(format!(
        "{trials} trials, {descriptors} descriptors verified, {unreachable} off-lattice directions"
    ))
}

/// Random multiplicity vectors; valid models are solved, invalid ones must be rejected with a typed error.
fn fuzz_surfaces() -> (Fuzzed, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let mut out = Vec::new();
    let mut rejected = 0;
    for _ in 0..20_000 {
        let d = rng.gen_range(1..=24);
        let n = rng.gen_range(0..=14);
        let cap = rng.gen_range(1..=d.max(1));
        let mut mults: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=cap)).collect();
        mults.sort_unstable_by(|a, b| b.cmp(a));
        match surface_from_basepoints(d, &mults) {
            Ok(model) => out.push((d, mults, solve_min_degree(&model))),
            Err(Error::NotMprs(_) | Error::InvalidDegree(_)) => rejected += 1,
            Err(e) => panic!("untyped rejection of ({d}, {mults:?}): {e}"),
        }
    }
    (out, rejected)
}

fn ac9(fuzzed: &Fuzzed) -> Outcome {
    let mut fixed = vec![(DEG8.0, DEG8.1.to_vec())];
    fixed.extend((4..=8).map(|d| (d, vec![1; (d * (d - 1)) as usize])));
    fixed.extend((1..=12).map(|d| (d, vec![])));
    let mut checked = 0;
    let fixed_reports: Vec<(i64, Vec<i64>, ChainReport)> = fixed
        .into_iter()
        .map(|(d, m)| {
            let r = solve_min_degree(&surface_from_basepoints(d, &m).unwrap()).unwrap();
            (d, m, r)
        })
        .collect();
    let all = fixed_reports.iter().map(|(d, m, r)| (*d, m, r)).chain(
        fuzzed
            .iter()
            .filter_map(|(d, m, r)| r.as_ref().ok().map(|r| (*d, m, r))),
    );
    for (d, mults, r) in all {
        let model = &r.steps[0].model;
        let k0 = canonical_class(mults.len());
        for f in &r.optimal_families {
            let (fd, fk) = (
                intersect(&f.class, &model.d).unwrap(),
                intersect(&f.class, &k0).unwrap(),
            );
            check(fd == r.v && (!f.tight || fk == -2) && fk <= -2, || {
                format!(
                    "({d}, {mults:?}): family {} has F·D = {fd}, F·K = {fk}, v = {}",
                    f.class, r.v
                )
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} family classes checked"))
}

fn ac10(fuzzed: &Fuzzed, rejected: usize) -> Outcome {
    let (mut solved, mut declined) = (0, 0);
    for (d, mults, r) in fuzzed {
        match r {
            Ok(rep) => {
                let m_max = mults.first().copied().unwrap_or(0);
                // lines, and lines through the point of highest multiplicity, are rational families
                check(rep.v >= 0 && rep.v <= *d && rep.v <= d - m_max, || {
                    format!(
                        "({d}, {mults:?}): v = {} exceeds an explicit family degree",
                        rep.v
                    )
                })?;
                solved += 1;
            }
            Err(Error::ChainAborted { source, .. }) => match **source {
                Error::NonBasisContractionNeeded { .. }
                | Error::MinimalityUndecidable(_)
                | Error::UnrecognizedMinimalModel(_)
                | Error::NotMprs(_) => declined += 1,
                ref e => return Err(format!("({d}, {mults:?}): unexpected chain error {e}")),
            },
            Err(e) => return Err(format!("({d}, {mults:?}): unwrapped error {e}")),
        }
    }
    check(solved >= 500, || format!("only {solved} models solved"))?;
    Ok(format!(
        "{solved} solved, {declined} declined with typed errors, {rejected} rejected at the gate"
    ))
}

fn main() -> ExitCode {
    let corpus = corpus();
    let (fuzzed, rejected) = fuzz_surfaces();
    let criteria: Vec<Criterion> = vec![
        ("AC1", "example widths and family degrees", Box::new(ac1)),
        ("AC2", "optimal set of the shared example", Box::new(ac2)),
        (
            "AC3",
            "recursion equals exhaustive oracle",
            Box::new(|| ac3(&corpus)),
        ),
        (
            "AC4",
            "adjoint lower bound, equality iff tight",
            Box::new(ac4),
        ),
        (
            "AC5",
            "at most 4 optimal directions, 4 attained",
            Box::new(|| ac5(&corpus)),
        ),
        ("AC6", "degree-8 adjoint chain golden table", Box::new(ac6)),
        (
            "AC7",
            "d(d-1) simple basepoints, one B2 step",
            Box::new(ac7),
        ),
        (
            "AC8",
            "family degree equals width, exponent identities",
            Box::new(ac8),
        ),
        (
            "AC9",
            "optimal families meet D in v, tight ones meet K in -2",
            Box::new(|| ac9(&fuzzed)),
        ),
        (
            "AC10",
            "fuzzed surfaces: correct v or typed refusal",
            Box::new(|| ac10(&fuzzed, rejected)),
        ),
    ];
    let mut failed = 0;
    for (id, title, run) in &criteria {
        match run() {
            Ok(detail) => println!("[{id}] PASS  {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("[{id}] FAIL  {title}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
