use std::io::{self, Write};

use knotdom::domination::Verdict;
use knotdom::knotbase::KnotRecord;
use knotdom::poset::{ChainBound, DominationGraph};

use crate::RunReport;

pub fn record(out: &mut dyn Write, r: &KnotRecord) -> io::Result<()> {
    writeln!(out, "name: {}", r.name)?;
    if let Some(pd) = &r.diagram {
        writeln!(out, "diagram: {pd}")?;
    }
    if let Some(b) = &r.braid {
        writeln!(out, "braid: {b}")?;
    }
    if let Some(d) = &r.delta {
        writeln!(out, "delta: {d}")?;
    }
    if let Some(d) = r.determinant {
        writeln!(out, "determinant: {d}")?;
    }
    if let Some(v) = &r.jones {
        writeln!(out, "jones: {v}")?;
    }
    let (lo, hi) = r.genus_interval();
    match hi {
        Some(hi) => writeln!(out, "genus: [{lo}, {hi}]")?,
        None => writeln!(out, "genus: [{lo}, unbounded)")?,
    }
    if let Some(g) = r.ghat {
        writeln!(out, "ghat: {g}")?;
    }
    if let Some(v) = r.volume {
        writeln!(out, "volume: {v}")?;
    }
    let set: Vec<String> = r
        .flags
        .iter()
        .filter_map(|(name, v)| v.map(|b| format!("{name}={b}")))
        .collect();
    if !set.is_empty() {
        writeln!(out, "flags: {}", set.join(" "))?;
    }
    if let Some(m) = &r.mutant_class {
        writeln!(out, "mutant_class: {m}")?;
    }
    if let Some(parts) = &r.connected_sum_of {
        writeln!(out, "connected_sum_of: {}", parts.join(" # "))?;
    }
    if let Some(s) = &r.satellite_of {
        writeln!(out, "satellite_of: pattern {} companion {} winding {}", s.pattern, s.companion, s.winding)?;
    }
    if let Some(s) = &r.same_knot_as {
        writeln!(out, "same_knot_as: {s}")?;
    }
    Ok(())
}

pub fn verdict(out: &mut dyn Write, k1: &str, k2: &str, v: &Verdict) -> io::Result<()> {
    match v {
        Verdict::Equal => writeln!(out, "{k1} >= {k2}: Equal (same knot)"),
        Verdict::Certified(c) => {
            writeln!(out, "{k1} >= {k2}: Certified ({})", c.rule)?;
            writeln!(out, "  witnesses: {}", c.witnesses.join(", "))?;
            writeln!(out, "  {}", c.detail)?;
            writeln!(out, "  [{}]", c.anchor)
        }
        Verdict::Obstructed(reports) => {
            let ids: Vec<&str> = reports.iter().map(|r| r.rule.code()).collect();
            writeln!(out, "{k1} >= {k2}: Obstructed [{}]", ids.join(", "))?;
            for r in reports {
                writeln!(out, "  {}: {}", r.rule, r.detail)?;
                writeln!(out, "    [{}]", r.anchor)?;
            }
            Ok(())
        }
        Verdict::Unknown(passed) => {
            let ids: Vec<&str> = passed.iter().map(|r| r.code()).collect();
            writeln!(out, "{k1} >= {k2}: Unknown")?;
            writeln!(out, "  checked and passed: {}", ids.join(", "))
        }
    }
}

pub fn graph(
    out: &mut dyn Write,
    g: &DominationGraph,
    chains: &[(String, Vec<String>)],
    violations: &[String],
) -> io::Result<()> {
    writeln!(out, "{} nodes, {} certified edges, {} ordered pairs", g.nodes().len(), g.edges().len(), g.verdicts().len())?;
    for ((a, b), c) in g.edges() {
        writeln!(out, "  {a} > {b}  [{}]", c.rule)?;
    }
    writeln!(out, "longest certified chains (lower bounds on the true poset):")?;
    for (n, c) in chains {
        writeln!(out, "  {n}: {} (length {})", c.join(" > "), c.len() - 1)?;
    }
    if g.audit_log().is_empty() {
        writeln!(out, "audit: clean")?;
    } else {
        for finding in g.audit_log() {
            writeln!(out, "audit: {finding}")?;
        }
    }
    for v in violations {
        writeln!(out, "bound violated: {v}")?;
    }
    Ok(())
}

pub fn bounds(
    out: &mut dyn Write,
    name: &str,
    bounds: &[ChainBound],
    chain: &[String],
    violations: &[String],
) -> io::Result<()> {
    if bounds.is_empty() {
        writeln!(out, "{name}: no chain bound applies")?;
    }
    for b in bounds {
        let scope = serde_json::to_value(b.scope).unwrap();
        let rule = serde_json::to_value(b.rule).unwrap();
        writeln!(out, "{name}: {} <= {} ({})", scope.as_str().unwrap(), b.value, rule.as_str().unwrap())?;
    }
    writeln!(out, "longest certified chain: {} (length {})", chain.join(" > "), chain.len() - 1)?;
    for v in violations {
        writeln!(out, "bound violated: {v}")?;
    }
    Ok(())
}

pub fn report(out: &mut dyn Write, report: &RunReport) -> io::Result<()> {
    for c in &report.checks {
        writeln!(out, "[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.detail)?;
    }
    writeln!(out, "{}", report.summary())
}
