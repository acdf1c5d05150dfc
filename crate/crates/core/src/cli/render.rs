use std::fmt::Write;

use super::{PlotOutput, Report, ToricOutput, WidthOutput};
use crate::error::Error;
use crate::picard::{ChainReport, ChainStep, Enumeration};

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn width_text(w: &WidthOutput) -> String {
    let mut out = if w.finite {
        format!("v = {}, S = {{{}}}\n", w.width, join(&w.optimal, ","))
    } else {
        format!(
            "v = {}, S infinite (all multiples of {})\n",
            w.width,
            join(&w.optimal, ",")
        )
    };
    if w.oracle {
        out.push_str("oracle: agrees with adjoint recursion\n");
    }
    if let Some(trace) = &w.trace {
        for (i, level) in trace.iter().enumerate() {
            let _ = writeln!(out, "level {i}: {} {}", level.case, level.polygon);
        }
    }
    out
}

fn toric_text(t: &ToricOutput) -> String {
    let mut out = String::new();
    if let Some(v) = t.width {
        let _ = writeln!(
            out,
            "v = {v}, {} optimal toric families",
            t.descriptors.len()
        );
    }
    for d in &t.descriptors {
        let _ = writeln!(
            out,
            "h = {}  degree = {}  e = ({})",
            d.h,
            d.degree,
            join(&d.e, ",")
        );
    }
    out
}

/// One row per chain model; dropped basis slots print as `-`.
pub(super) fn chain_table(report: &ChainReport) -> String {
    let first = &report.steps[0].model;
    let mut header = vec![String::new(), "L".to_string()];
    header.extend(first.labels.iter().map(|l| format!("-{l}")));
    header.push("case".to_string());
    let mut rows = vec![header];
    for (i, ChainStep { model, case, .. }) in report.steps.iter().enumerate() {
        let mut row = vec![format!("D{i}"), model.d.l.to_string()];
        for slot in 0..first.n() {
            row.push(match model.origin.iter().position(|&o| o == slot) {
                Some(p) => model.d.mult(p).to_string(),
                None => "-".to_string(),
            });
        }
        row.push(case.to_string());
        rows.push(row);
    }
    let cols = rows[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (cell, &w))| {
                if c == 0 {
                    format!("{cell:<w$}")
                } else {
                    format!("{cell:>w$}")
                }
            })
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}

fn surface_text(r: &ChainReport, chain: bool) -> String {
    let first = &r.steps[0].model;
    let mut out = String::new();
    if chain {
        out.push_str(&chain_table(r));
    } else {
        let _ = writeln!(out, "cases: {}", join(r.steps.iter().map(|s| s.case), " "));
    }
    let _ = writeln!(out, "v = {}", r.v);
    let families = join(
        r.optimal_families.iter().map(|f| {
            let tag = if f.tight { "tight" } else { "not tight" };
            format!("{} ({tag})", first.display_class(&f.class))
        }),
        ", ",
    );
    match r.enumeration {
        Enumeration::Complete => {
            let _ = writeln!(out, "optimal families: {families}");
        }
        Enumeration::Representative => {
            let _ = writeln!(out, "optimal families: pencils inside |{families}|");
        }
        Enumeration::Omitted => out.push_str("optimal families: not enumerated\n"),
    }
    let _ = writeln!(out, "terminal: {}", r.terminal_kind);
    out
}

fn plot_text(p: &PlotOutput) -> String {
    format!(
        "wrote {} ({} polygons, {} direction bundles)\n",
        p.path.display(),
        p.polygons,
        p.bundles
    )
}

pub(super) fn text(report: &Report, chain: bool) -> String {
    match report {
        Report::Width(w) => width_text(w),
        Report::Toric(t) => toric_text(t),
        Report::Surface(r) => surface_text(r, chain),
        Report::Plot(p) => plot_text(p),
    }
}

pub(super) fn domain_error(e: &Error) -> String {
    let mut out = format!("error: {e}\n");
    if let Error::ChainAborted { partial, .. } = e {
        for (i, step) in partial.iter().enumerate() {
            let _ = writeln!(
                out,
                "  D{i} = {}  {}",
                step.model.display_class(&step.model.d),
                step.case
            );
        }
    }
    out
}
