//! The rule engine: obstructions, rigidity and certificates for ordered
//! pairs `k1 >= k2` of enriched records.
//!
//! Every rule fires only on definite inputs. Unknown flags or missing values
//! silence a rule; they never produce an obstruction or a certificate.

mod rule;
mod scan;

pub use rule::RuleId;
pub use scan::{obstruction_outcomes, obstruction_scan, rigidity_outcomes, rigidity_scan, Outcome};

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::knotbase::KnotRecord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DominationError {
    #[error("record {0:?} has not been enriched")]
    NotEnriched(String),
}

/// A fired obstruction or rigidity rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub rule: RuleId,
    pub detail: String,
    pub anchor: &'static str,
}

impl ObstructionReport {
    pub fn new(rule: RuleId, detail: String) -> Self {
        Self { rule, detail, anchor: rule.anchor() }
    }
}

/// A positive construction for `k1 >= k2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub rule: RuleId,
    /// Record names forming the construction.
    pub witnesses: Vec<String>,
    pub detail: String,
    pub anchor: &'static str,
}

impl Certificate {
    pub fn new(rule: RuleId, witnesses: Vec<String>, detail: String) -> Self {
        Self { rule, witnesses, detail, anchor: rule.anchor() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Certified(Certificate),
    Obstructed(Vec<ObstructionReport>),
    /// Obstruction and rigidity rules that were checked on definite inputs
    /// and did not fire.
    Unknown(Vec<RuleId>),
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Equal => "Equal",
            Verdict::Certified(_) => "Certified",
            Verdict::Obstructed(_) => "Obstructed",
            Verdict::Unknown(_) => "Unknown",
        }
    }

    /// Rule ids carried by the verdict.
    pub fn rules(&self) -> Vec<RuleId> {
        match self {
            Verdict::Equal => vec![RuleId::C4Reflexive],
            Verdict::Certified(c) => vec![c.rule],
            Verdict::Obstructed(reports) => reports.iter().map(|r| r.rule).collect(),
            Verdict::Unknown(passed) => passed.clone(),
        }
    }

    /// Stable JSON rendering; keys come out sorted.
    pub fn to_json(&self, k1: &str, k2: &str) -> Value {
        let rules = self.rules();
        let anchors: Vec<&str> = rules.iter().map(|r| r.anchor()).collect();
        let (details, witnesses): (Vec<String>, Vec<String>) = match self {
            Verdict::Equal => (vec![format!("{k1} and {k2} denote the same knot")], vec![]),
            Verdict::Certified(c) => (vec![c.detail.clone()], c.witnesses.clone()),
            Verdict::Obstructed(reports) => {
                (reports.iter().map(|r| r.detail.clone()).collect(), vec![])
            }
            Verdict::Unknown(_) => (vec![], vec![]),
        };
        json!({
            "pair": [k1, k2],
            "verdict": self.kind(),
            "rules": rules,
            "anchors": anchors,
            "details": details,
            "witnesses": witnesses,
        })
    }
}

/// True when the two records denote the same knot.
pub fn same_knot(k1: &KnotRecord, k2: &KnotRecord) -> bool {
    k1.name == k2.name || k1.canonical_name() == k2.canonical_name()
}

/// Certificate search without any previously certified edges.
pub fn certificate_search(k1: &KnotRecord, k2: &KnotRecord) -> Option<Certificate> {
    certificate_search_with(k1, k2, &|_, _| false)
}

/// First matching certificate in the order C4, C0, C2, C3, C1. `known(a, b)`
/// reports an already certified domination `a >= b`, used to pair summands.
pub fn certificate_search_with(
    k1: &KnotRecord,
    k2: &KnotRecord,
    known: &dyn Fn(&str, &str) -> bool,
) -> Option<Certificate> {
    let (n1, n2) = (k1.name.as_str(), k2.name.as_str());
    let is_k2 = |name: &str| name == n2 || name == k2.canonical_name();
    if same_knot(k1, k2) {
        return Some(Certificate::new(
            RuleId::C4Reflexive,
            vec![n1.to_string()],
            format!("{n1} and {n2} denote the same knot"),
        ));
    }
    if k2.flags.unknot == Some(true) {
        return Some(Certificate::new(
            RuleId::C0Unknot,
            vec![n1.to_string(), n2.to_string()],
            format!("{n2} is the unknot"),
        ));
    }
    if let Some(sat) = &k1.satellite_of {
        if is_k2(&sat.pattern) {
            return Some(Certificate::new(
                RuleId::C2SatellitePattern,
                vec![n1.to_string(), sat.pattern.clone()],
                format!(
                    "{n1} is a satellite with pattern {}, companion {}, winding {}",
                    sat.pattern, sat.companion, sat.winding
                ),
            ));
        }
        if is_k2(&sat.companion) && sat.winding == 1 {
            return Some(Certificate::new(
                RuleId::C3WindingOneCompanion,
                vec![n1.to_string(), sat.companion.clone()],
                format!("{n1} is a satellite of {} with winding number 1", sat.companion),
            ));
        }
    }
    let parts1 = k1.connected_sum_of.as_ref()?;
    let parts2: Vec<&str> = match &k2.connected_sum_of {
        Some(p) => p.iter().map(String::as_str).collect(),
        None => vec![k2.canonical_name()],
    };
    let dominates = |a: &str, b: &str| a == b || known(a, b);
    let mut assignment = Vec::with_capacity(parts2.len());
    let mut used = vec![false; parts1.len()];
    if !match_summands(&parts2, parts1, &mut used, &mut assignment, &dominates) {
        return None;
    }
    let pairing: Vec<String> = parts2
        .iter()
        .zip(&assignment)
        .map(|(t, &s)| format!("{} >= {t}", parts1[s]))
        .collect();
    let mut witnesses = vec![n1.to_string()];
    witnesses.extend(parts1.iter().cloned());
    Some(Certificate::new(
        RuleId::C1ConnectedSum,
        witnesses,
        format!("{n1} = {} with summand pairing {}", parts1.join(" # "), pairing.join(", ")),
    ))
}

/// Assigns every summand of the target a distinct dominating summand of the
/// source (backtracking; summand lists are short).
fn match_summands(
    targets: &[&str],
    sources: &[String],
    used: &mut [bool],
    assignment: &mut Vec<usize>,
    dominates: &dyn Fn(&str, &str) -> bool,
) -> bool {
    let Some((first, rest)) = targets.split_first() else {
        return true;
    };
    for i in 0..sources.len() {
        if !used[i] && dominates(&sources[i], first) {
            used[i] = true;
            assignment.push(i);
            if match_summands(rest, sources, used, assignment, dominates) {
                return true;
            }
            assignment.pop();
            used[i] = false;
        }
    }
    false
}

/// All three scans for one ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairEvaluation {
    pub obstructions: Vec<ObstructionReport>,
    pub rigidity: Vec<ObstructionReport>,
    pub certificate: Option<Certificate>,
    pub passed: Vec<RuleId>,
    pub verdict: Verdict,
}

/// Runs every scan and combines them into a verdict.
pub fn evaluate_pair_full(
    k1: &KnotRecord,
    k2: &KnotRecord,
    known: &dyn Fn(&str, &str) -> bool,
) -> Result<PairEvaluation, DominationError> {
    let o = obstruction_outcomes(k1, k2)?;
    let r = rigidity_outcomes(k1, k2)?;
    let passed: Vec<RuleId> = o.iter().chain(&r).filter(|(_, x)| *x == Outcome::Passed).map(|(id, _)| *id).collect();
    let split = |v: Vec<(RuleId, Outcome)>| -> Vec<ObstructionReport> {
        v.into_iter()
            .filter_map(|(id, x)| match x {
                Outcome::Fired(d) => Some(ObstructionReport::new(id, d)),
                _ => None,
            })
            .collect()
    };
    let obstructions = split(o);
    let rigidity = split(r);
    let certificate = certificate_search_with(k1, k2, known);
    let verdict = if same_knot(k1, k2) {
        Verdict::Equal
    } else if !obstructions.is_empty() || !rigidity.is_empty() {
        Verdict::Obstructed(obstructions.iter().chain(&rigidity).cloned().collect())
    } else if let Some(c) = &certificate {
        Verdict::Certified(c.clone())
    } else {
        Verdict::Unknown(passed.clone())
    };
    Ok(PairEvaluation { obstructions, rigidity, certificate, passed, verdict })
}

/// Verdict for `k1 >= k2` without previously certified edges.
pub fn evaluate_pair(k1: &KnotRecord, k2: &KnotRecord) -> Result<Verdict, DominationError> {
    Ok(evaluate_pair_full(k1, k2, &|_, _| false)?.verdict)
}
