use crate::knotbase::KnotRecord;
use crate::laurent::is_prime_power_big;

use super::{DominationError, ObstructionReport, RuleId};

/// Result of evaluating one rule on an ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// The rule applies; the string holds the compared values.
    Fired(String),
    /// All inputs needed to rule it out were definite.
    Passed,
    /// Some input is unknown.
    Silent,
}

/// Three-valued conjunction: false wins, then unknown.
fn all(conds: &[Option<bool>]) -> Option<bool> {
    if conds.contains(&Some(false)) {
        Some(false)
    } else if conds.iter().all(Option::is_some) {
        Some(true)
    } else {
        None
    }
}

/// Three-valued disjunction: true wins, then unknown.
fn any(conds: &[Option<bool>]) -> Option<bool> {
    if conds.contains(&Some(true)) {
        Some(true)
    } else if conds.iter().all(Option::is_some) {
        Some(false)
    } else {
        None
    }
}

fn not(v: Option<bool>) -> Option<bool> {
    v.map(|b| !b)
}

fn both<T>(a: Option<T>, b: Option<T>) -> Option<(T, T)> {
    a.zip(b)
}

fn tri(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "unknown",
    }
}

fn outcome(fires: Option<bool>, detail: impl FnOnce() -> String) -> Outcome {
    match fires {
        Some(true) => Outcome::Fired(detail()),
        Some(false) => Outcome::Passed,
        None => Outcome::Silent,
    }
}

fn interval(r: &KnotRecord) -> String {
    match r.genus_interval() {
        (l, Some(u)) if l == u => l.to_string(),
        (l, Some(u)) => format!("[{l},{u}]"),
        (l, None) => format!("[{l},inf)"),
    }
}

/// Definite answer to "do k1 and k2 have the same genus".
fn same_genus(k1: &KnotRecord, k2: &KnotRecord) -> Option<bool> {
    let (l1, u1) = k1.genus_interval();
    let (l2, u2) = k2.genus_interval();
    if u1.is_some_and(|u| u < l2) || u2.is_some_and(|u| u < l1) {
        return Some(false);
    }
    match (k1.genus_exact, k2.genus_exact) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    }
}

fn same_volume(k1: &KnotRecord, k2: &KnotRecord) -> Option<bool> {
    both(k1.volume, k2.volume).map(|(a, b)| a == b)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "unknown".to_string(), |v| v.to_string())
}

fn distinct(k1: &KnotRecord, k2: &KnotRecord) -> bool {
    k1.name != k2.name && k1.canonical_name() != k2.canonical_name()
}

fn enriched(k: &KnotRecord) -> Result<(), DominationError> {
    if k.is_enriched() {
        Ok(())
    } else {
        Err(DominationError::NotEnriched(k.name.clone()))
    }
}

/// Evaluates every obstruction rule, in order `O1..O11`.
pub fn obstruction_outcomes(
    k1: &KnotRecord,
    k2: &KnotRecord,
) -> Result<Vec<(RuleId, Outcome)>, DominationError> {
    enriched(k1)?;
    enriched(k2)?;
    let d1 = k1.delta.as_ref().expect("enriched");
    let d2 = k2.delta.as_ref().expect("enriched");
    let (det1, det2) = (k1.determinant.expect("enriched"), k2.determinant.expect("enriched"));
    let (f1, f2) = (&k1.flags, &k2.flags);
    let (n1, n2) = (&k1.name, &k2.name);

    let mut out = Vec::with_capacity(11);
    out.push((
        RuleId::O1Alexander,
        outcome(Some(!d2.divides(d1)), || {
            format!("Delta({n2}) = {d2} does not divide Delta({n1}) = {d1}")
        }),
    ));
    let upper1 = k1.genus_interval().1;
    let lower2 = k2.genus_interval().0;
    out.push((
        RuleId::O2Genus,
        outcome(upper1.map(|u| u < lower2), || {
            format!("genus({n1}) = {} < genus({n2}) = {}", interval(k1), interval(k2))
        }),
    ));
    out.push((
        RuleId::O3Determinant,
        outcome(Some(det2 == 0 || det1 % det2 != 0), || {
            format!("det({n2}) = {det2} does not divide det({n1}) = {det1}")
        }),
    ));
    out.push((
        RuleId::O4Volume,
        outcome(both(k1.volume, k2.volume).map(|(a, b)| a < b), || {
            format!("vol({n1}) = {} < vol({n2}) = {}", opt(k1.volume), opt(k2.volume))
        }),
    ));
    for (rule, flag) in [(RuleId::O5TwoBridge, "two_bridge"), (RuleId::O6Montesinos, "montesinos")] {
        let (a, b) = (f1.get(flag).unwrap(), f2.get(flag).unwrap());
        out.push((
            rule,
            outcome(all(&[a, not(b), not(f2.unknot)]), || {
                format!("{flag}({n1}) = {} but {flag}({n2}) = {}", tri(a), tri(b))
            }),
        ));
    }
    out.push((
        RuleId::O7ApClass,
        outcome(all(&[f1.toroidally_alternating, not(f2.sum_of_simple)]), || {
            format!(
                "toroidally_alternating({n1}) = {} but sum_of_simple({n2}) = {}",
                tri(f1.toroidally_alternating),
                tri(f2.sum_of_simple)
            )
        }),
    ));
    out.push((
        RuleId::O8Free,
        outcome(all(&[f1.free, not(f2.free)]), || {
            format!("free({n1}) = {} but free({n2}) = {}", tri(f1.free), tri(f2.free))
        }),
    ));
    out.push((
        RuleId::O9Ghat,
        outcome(both(k1.ghat, k2.ghat).map(|(a, b)| a < b), || {
            format!("ghat({n1}) = {} < ghat({n2}) = {}", opt(k1.ghat), opt(k2.ghat))
        }),
    ));
    out.push((
        RuleId::O10Orderability,
        outcome(all(&[not(f1.lo_double_cover), f2.lo_double_cover]), || {
            format!(
                "lo_double_cover({n1}) = {} but lo_double_cover({n2}) = {}",
                tri(f1.lo_double_cover),
                tri(f2.lo_double_cover)
            )
        }),
    ));
    let same_class = both(k1.mutant_class.as_ref(), k2.mutant_class.as_ref()).map(|(a, b)| a == b);
    out.push((
        RuleId::O11Mutation,
        outcome(all(&[same_class, Some(distinct(k1, k2))]), || {
            format!(
                "mutant_class({n1}) = {} = mutant_class({n2}) = {}",
                opt(k1.mutant_class.as_ref()),
                opt(k2.mutant_class.as_ref())
            )
        }),
    ));
    Ok(out)
}

/// Evaluates every rigidity rule, in order `R1..R6`. A fired rule means
/// `k1 >= k2` would force `k1 = k2`; the pair is skipped when the records
/// denote the same knot.
pub fn rigidity_outcomes(
    k1: &KnotRecord,
    k2: &KnotRecord,
) -> Result<Vec<(RuleId, Outcome)>, DominationError> {
    enriched(k1)?;
    enriched(k2)?;
    let rules = [
        RuleId::R1GenusVolume,
        RuleId::R2FibredGenus,
        RuleId::R3AlexanderDegree,
        RuleId::R4Ghat,
        RuleId::R5DoubleCover,
        RuleId::R6HyperbolicVolume,
    ];
    if !distinct(k1, k2) {
        return Ok(rules.into_iter().map(|r| (r, Outcome::Passed)).collect());
    }
    let d1 = k1.delta.as_ref().expect("enriched");
    let d2 = k2.delta.as_ref().expect("enriched");
    let (f1, f2) = (&k1.flags, &k2.flags);
    let (n1, n2) = (&k1.name, &k2.name);
    let genus = same_genus(k1, k2);
    let volume = same_volume(k1, k2);
    let genera = || format!("genus({n1}) = {}, genus({n2}) = {}", interval(k1), interval(k2));
    let volumes = || format!("vol({n1}) = {}, vol({n2}) = {}", opt(k1.volume), opt(k2.volume));

    let mut out = Vec::with_capacity(6);
    out.push((
        rules[0],
        outcome(all(&[f1.no_winding_zero_companion, genus, volume]), || {
            format!("{}; {}; no_winding_zero_companion({n1}) = true", genera(), volumes())
        }),
    ));
    out.push((
        rules[1],
        outcome(all(&[f1.fibred, genus]), || format!("{}; fibred({n1}) = true", genera())),
    ));
    let lead = d1.leading_coeff().expect("knot polynomial is nonzero");
    let nilpotent = any(&[
        f1.two_bridge,
        f1.fibred,
        all(&[f1.alternating, Some(is_prime_power_big(lead))]),
    ]);
    let (deg1, deg2) = (d1.max_degree().unwrap(), d2.max_degree().unwrap());
    out.push((
        rules[2],
        outcome(all(&[nilpotent, Some(deg1 == deg2)]), || {
            let mut why = Vec::new();
            if f1.two_bridge == Some(true) {
                why.push("two_bridge".to_string());
            }
            if f1.fibred == Some(true) {
                why.push("fibred".to_string());
            }
            if f1.alternating == Some(true) && is_prime_power_big(lead) {
                why.push(format!("alternating with leading coefficient {lead}"));
            }
            format!(
                "deg Delta({n1}) = {deg1} = deg Delta({n2}) = {deg2}; {n1}: {}",
                why.join(", ")
            )
        }),
    ));
    let ghat = both(k1.ghat, k2.ghat).map(|(a, b)| a == b);
    out.push((
        rules[3],
        outcome(all(&[f1.free, ghat]), || {
            format!("ghat({n1}) = {} = ghat({n2}) = {}; free({n1}) = true", opt(k1.ghat), opt(k2.ghat))
        }),
    ));
    let same_class = both(k1.mutant_class.as_ref(), k2.mutant_class.as_ref()).map(|(a, b)| a == b);
    out.push((
        rules[4],
        outcome(same_class, || {
            format!(
                "mutant_class({n1}) = {} = mutant_class({n2}) = {}",
                opt(k1.mutant_class.as_ref()),
                opt(k2.mutant_class.as_ref())
            )
        }),
    ));
    out.push((
        rules[5],
        outcome(all(&[f1.hyperbolic, f2.hyperbolic, volume]), || {
            format!("{}; both hyperbolic", volumes())
        }),
    ));
    Ok(out)
}

fn fired(outcomes: Vec<(RuleId, Outcome)>) -> Vec<ObstructionReport> {
    outcomes
        .into_iter()
        .filter_map(|(rule, o)| match o {
            Outcome::Fired(detail) => Some(ObstructionReport::new(rule, detail)),
            _ => None,
        })
        .collect()
}

/// Obstruction rules that fire for `k1 >= k2`.
pub fn obstruction_scan(
    k1: &KnotRecord,
    k2: &KnotRecord,
) -> Result<Vec<ObstructionReport>, DominationError> {
    Ok(fired(obstruction_outcomes(k1, k2)?))
}

/// Rigidity rules that fire for `k1 >= k2`.
pub fn rigidity_scan(
    k1: &KnotRecord,
    k2: &KnotRecord,
) -> Result<Vec<ObstructionReport>, DominationError> {
    Ok(fired(rigidity_outcomes(k1, k2)?))
}
