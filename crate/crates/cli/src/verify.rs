use knotdom::alexander::{alexander_polynomial, jones_polynomial, satellite_delta};
use knotdom::domination::{evaluate_pair, rigidity_outcomes, Outcome, RuleId, Verdict};
use knotdom::knotbase::{Corpus, KnotRecord};
use knotdom::poset::{build_graph, chain_length_bound, longest_chain, BoundRule, BoundScope, ChainBound};
use knotdom::LaurentPoly;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() == self.checks.len() {
            0
        } else {
            1
        }
    }

    pub fn summary(&self) -> String {
        format!("{}/{} checks passed", self.passed(), self.checks.len())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "checks": self.checks,
            "exit_code": self.exit_code(),
            "summary": self.summary(),
        })
    }
}

type CheckResult = Result<String, String>;

fn p(s: &str) -> LaurentPoly {
    s.parse().expect("literal polynomial")
}

fn get<'a>(c: &'a Corpus, name: &str) -> Result<&'a KnotRecord, String> {
    c.get(name).ok_or_else(|| format!("fixture record {name:?} missing from corpus"))
}

fn delta(r: &KnotRecord) -> &LaurentPoly {
    r.delta.as_ref().expect("corpus records are enriched")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rules(v: &Verdict) -> String {
    let ids: Vec<&str> = v.rules().iter().map(|r| r.code()).collect();
    format!("{}[{}]", v.kind(), ids.join(", "))
}

fn alexander_tables(c: &Corpus) -> CheckResult {
    let mut parts = Vec::new();
    for (name, expected) in [("3_1", "1 - t + t^2"), ("4_1", "1 - 3*t + t^2"), ("5_2", "2 - 3*t + 2*t^2")] {
        let r = get(c, name)?;
        let pd = r.diagram.as_ref().ok_or_else(|| format!("{name} has no bundled diagram"))?;
        let d = alexander_polynomial(pd);
        ensure(d == p(expected), || format!("Delta({name}) = {d}, expected {expected}"))?;
        parts.push(format!("Delta({name}) = {d}"));
    }
    Ok(parts.join("; "))
}

fn band_sum(c: &Corpus) -> CheckResult {
    let band = p("1 - t^2 + t^4");
    let trefoil = delta(get(c, "3_1")?);
    ensure(!trefoil.divides(&band), || format!("{trefoil} divides {band}"))?;
    let r = get(c, "band_sum_3_1")?;
    ensure(delta(r) == &band, || format!("band_sum_3_1 carries {}", delta(r)))?;
    let v = evaluate_pair(r, get(c, "3_1")?).expect("enriched");
    ensure(v.rules().contains(&RuleId::O1Alexander), || format!("(band_sum_3_1, 3_1) gave {}", rules(&v)))?;
    Ok(format!("{trefoil} does not divide {band}; (band_sum_3_1, 3_1) = {}", rules(&v)))
}

fn murasugi_sum(c: &Corpus) -> CheckResult {
    let sum = p("2 - 3*t + 3*t^2 - 3*t^3 + 2*t^4");
    let mut parts = Vec::new();
    for name in ["4_1", "5_2"] {
        let d = delta(get(c, name)?);
        ensure(!d.divides(&sum), || format!("Delta({name}) = {d} divides {sum}"))?;
        parts.push(format!("Delta({name}) = {d} does not divide {sum}"));
    }
    Ok(parts.join("; "))
}

fn cable(c: &Corpus) -> CheckResult {
    let (d31, d41) = (delta(get(c, "3_1")?), delta(get(c, "4_1")?));
    let s = satellite_delta(d31, d41, 2);
    let expanded = &(&p("1 - t - t^2") * &p("1 - t + t^2")) * &p("1 + t - t^2");
    ensure(s == expanded, || format!("satellite formula gives {s}, product is {expanded}"))?;
    ensure(d31.divides(&s), || format!("{d31} does not divide {s}"))?;
    ensure(!d41.divides(&s), || format!("{d41} divides {s}"))?;
    let ks = get(c, "ks_cable23_of_4_1")?;
    ensure(delta(ks) == &s, || format!("ks_cable23_of_4_1 carries {}", delta(ks)))?;
    let v = evaluate_pair(ks, get(c, "4_1")?).expect("enriched");
    let ok = matches!(&v, Verdict::Obstructed(r) if r.iter().any(|r| r.rule == RuleId::O1Alexander));
    ensure(ok, || format!("(ks_cable23_of_4_1, 4_1) gave {}", rules(&v)))?;
    Ok(format!("Delta = {s}; divisible by {d31}, not by {d41}; (ks, 4_1) = {}", rules(&v)))
}

fn cable_jones(c: &Corpus) -> CheckResult {
    let ks = get(c, "ks_cable23_of_4_1")?;
    let vks = ks.jones.as_ref().ok_or("ks_cable23_of_4_1 has no Jones data")?;
    let pd = get(c, "3_1")?.diagram.as_ref().ok_or("3_1 has no bundled diagram")?;
    let v31 = jones_polynomial(pd).map_err(|e| e.to_string())?;
    ensure(!v31.divides(vks), || format!("{v31} divides {vks}"))?;
    let mirror = v31.mirror();
    ensure(!mirror.divides(vks), || format!("{mirror} divides {vks}"))?;
    Ok(format!("V(3_1) = {v31} (and its mirror {mirror}) does not divide V(ks) = {vks}"))
}

fn winding_zero(c: &Corpus) -> CheckResult {
    let d31 = delta(get(c, "3_1")?);
    for companion in c.records() {
        let s = satellite_delta(d31, delta(companion), 0);
        ensure(&s == d31, || format!("winding 0 over {} gave {s}", companion.name))?;
    }
    let (k, k1) = (get(c, "double_sat_3_1")?, get(c, "double_of_3_1")?);
    ensure(delta(k) == delta(k1), || "Delta differs".into())?;
    ensure(k.genus_exact.is_some() && k.genus_exact == k1.genus_exact, || "genus differs".into())?;
    ensure(k.volume.is_some() && k.volume == k1.volume, || "volume differs".into())?;
    let v = evaluate_pair(k, k1).expect("enriched");
    ensure(matches!(&v, Verdict::Certified(cert) if cert.rule == RuleId::C2SatellitePattern), || {
        format!("(double_sat_3_1, double_of_3_1) gave {}", rules(&v))
    })?;
    let r1 = rigidity_outcomes(k, k1).expect("enriched");
    ensure(!matches!(r1[0], (RuleId::R1GenusVolume, Outcome::Fired(_))), || "R1 fired".into())?;
    Ok(format!(
        "winding-0 satellite keeps {d31}; (double_sat_3_1, double_of_3_1): Delta {}, genus {}, volume {}, {}; R1 silent",
        delta(k),
        k.genus_exact.unwrap(),
        k.volume.unwrap(),
        rules(&v)
    ))
}

fn verdicts(c: &Corpus) -> CheckResult {
    let g = build_graph(c);
    let expect = [
        ("ks_cable23_of_4_1", "4_1", "Obstructed", Some(RuleId::O1Alexander)),
        ("granny", "3_1", "Certified", Some(RuleId::C1ConnectedSum)),
        ("KT_mutant", "Conway_mutant", "Obstructed", Some(RuleId::R5DoubleCover)),
    ];
    let mut parts = Vec::new();
    for (a, b, kind, rule) in expect {
        get(c, a)?;
        get(c, b)?;
        let v = g.verdict(a, b).expect("pair of corpus nodes");
        let ok = v.kind() == kind && rule.is_none_or(|r| v.rules().contains(&r));
        ensure(ok, || format!("({a}, {b}) gave {}, expected {kind} with {rule:?}", rules(v)))?;
        parts.push(format!("({a}, {b}) = {}", rules(v)));
    }
    ensure(g.audit_log().is_empty(), || format!("audit: {}", g.audit_log().join("; ")))?;
    Ok(parts.join("; "))
}

fn chain_bounds(c: &Corpus) -> CheckResult {
    let g = build_graph(c);
    let b31 = chain_length_bound(get(c, "3_1")?);
    let free_1 = ChainBound { value: 1, rule: BoundRule::FreeGhat, scope: BoundScope::TotalLength };
    ensure(b31 == [free_1], || format!("3_1 bounds {b31:?}"))?;
    let chain = longest_chain(&g, "3_1").expect("node");
    ensure(chain.len() - 1 == 1, || format!("longest chain from 3_1: {chain:?}"))?;
    let b52 = chain_length_bound(get(c, "5_2")?);
    let alt_2 = ChainBound { value: 2, rule: BoundRule::AlternatingDegree, scope: BoundScope::AlternatingCount };
    ensure(b52 == [free_1, alt_2], || format!("5_2 bounds {b52:?}"))?;
    let violations = knotdom::poset::chain_bound_violations(&g, c);
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok(format!(
        "3_1: total_length <= 1, longest chain {} (tight); 5_2: total_length <= 1, alternating_count <= 2; no chain violates a bound",
        chain.join(" > ")
    ))
}

type CheckFn = fn(&Corpus) -> CheckResult;

/// Runs the worked-example checks in a fixed order with stable ids.
pub fn verify_paper(corpus: &Corpus) -> RunReport {
    let suite: [(&str, CheckFn); 8] = [
        ("alexander_tables", alexander_tables),
        ("band_sum_division", band_sum),
        ("murasugi_sum_division", murasugi_sum),
        ("cable_satellite", cable),
        ("cable_jones", cable_jones),
        ("winding_zero_satellite", winding_zero),
        ("pair_verdicts", verdicts),
        ("chain_bounds", chain_bounds),
    ];
    let checks = suite
        .into_iter()
        .map(|(id, f)| match f(corpus) {
            Ok(detail) => Check { id, passed: true, detail },
            Err(detail) => Check { id, passed: false, detail },
        })
        .collect();
    RunReport { checks }
}
