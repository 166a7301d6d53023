//! Human-readable and JSON rendering. Output depends only on the report.

use std::fmt::Write;

use serde::Serialize;

use crate::branch::BranchComponentReport;
use crate::classify::{CaseResult, ClassificationReport, DeltaListing};
use crate::error::CliResult;
use crate::identities::IdentityCheck;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
}

pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn mark(m: Option<bool>) -> &'static str {
    match m {
        Some(true) => "ok",
        Some(false) => "MISMATCH",
        None => "-",
    }
}

fn case_label(c: &CaseResult) -> String {
    let alias = match c.case.alias_of {
        Some((m, p)) => format!(" (as G({m},{p}))"),
        None => String::new(),
    };
    if c.case.p == 0 {
        format!("custom Z[z_{}] [{}]", c.case.m, c.case.model)
    } else {
        format!("G({},{}){alias} [{}]", c.case.m, c.case.p, c.case.model)
    }
}

pub fn render_case(out: &mut String, c: &CaseResult) {
    let verdict = if c.smooth() { "smooth" } else { "not smooth" };
    let _ = writeln!(
        out,
        "{:<28} |Δ|={:<3} {:<42} {:<11} expected: {:<34} {}",
        case_label(c),
        c.delta_order,
        c.case.delta,
        verdict,
        c.expectation.expected.label(),
        mark(c.matched)
    );
    let _ = writeln!(out, "    shape: {}; {}", c.shape, c.expectation.citation);
    if let Some(w) = &c.witness {
        let _ = writeln!(
            out,
            "    witness {} : |Stab| = {}, pseudoreflections generate a subgroup of order {}",
            w.point, w.stabilizer_order, w.reflection_subgroup_order
        );
        for s in &w.stabilizer {
            let _ = writeln!(out, "        {s}");
        }
    }
    if let Some(s) = &c.spot_check {
        let _ = writeln!(
            out,
            "    spot-check (seed {}, B[{}]): {} points, {} with nontrivial stabilizer, {} failures",
            s.seed,
            s.torsion,
            s.sampled,
            s.nontrivial,
            s.failures.len()
        );
    }
}

pub fn render_classification(r: &ClassificationReport, format: Format) -> CliResult<String> {
    if format == Format::Json {
        return to_json(r);
    }
    let mut out = String::new();
    for c in &r.cases {
        render_case(&mut out, c);
    }
    for rej in &r.rejected {
        let _ = writeln!(out, "G({},{}) rejected: {}", rej.m, rej.p, rej.reason);
    }
    for v in &r.violations {
        let _ = writeln!(out, "VIOLATION: {v}");
    }
    let smooth = r.cases.iter().filter(|c| c.smooth()).count();
    let matched = r.cases.iter().filter(|c| c.matched == Some(true)).count();
    let unpinned = r.cases.iter().filter(|c| c.matched.is_none()).count();
    let _ = writeln!(
        out,
        "{} cases, {} smooth; {} matched, {} mismatched, {} without expectation",
        r.cases.len(),
        smooth,
        matched,
        r.mismatches().count(),
        unpinned
    );
    Ok(out)
}

pub fn render_deltas(d: &DeltaListing, format: Format) -> CliResult<String> {
    if format == Format::Json {
        return to_json(d);
    }
    let mut out = format!(
        "G({},{}) [{}]: {} kernels\n",
        d.m,
        d.p,
        d.model,
        d.deltas.len()
    );
    for e in &d.deltas {
        let _ = writeln!(
            out,
            "#{:<3} |Δ|={:<3} {:<42} {}",
            e.index, e.order, e.generators, e.shape
        );
    }
    Ok(out)
}

pub fn render_checks(title: &str, checks: &[IdentityCheck], format: Format) -> CliResult<String> {
    if format == Format::Json {
        return to_json(&checks);
    }
    let mut out = format!("{title}\n");
    for c in checks {
        let _ = writeln!(
            out,
            "[{}] {}: {}",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    Ok(out)
}

pub fn render_branch(r: &BranchComponentReport, format: Format) -> CliResult<String> {
    if format == Format::Json {
        return to_json(r);
    }
    let mut out = String::new();
    for s in &r.sets {
        let _ = writeln!(
            out,
            "D_{}: {}{}",
            s.name.replace(' ', ""),
            s.components.join(" ∪ "),
            if s.has_finite_residue {
                " ∪ (finite set)"
            } else {
                ""
            }
        );
        if s.components != s.expected {
            let _ = writeln!(out, "    expected: {}", s.expected.join(" ∪ "));
        }
    }
    let yn = |b: bool| if b { "yes" } else { "NO" };
    let _ = writeln!(out, "components as expected: {}", yn(r.components_match));
    let _ = writeln!(
        out,
        "pairwise intersections finite: {}",
        yn(r.pairwise_finite)
    );
    let _ = writeln!(out, "triple intersection empty: {}", yn(r.triple_empty));
    let _ = writeln!(
        out,
        "G(4,1) transitive on D_t0* components: {}",
        yn(r.t0_transitive)
    );
    Ok(out)
}
