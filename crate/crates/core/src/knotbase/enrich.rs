use num_traits::{One, Signed, ToPrimitive};

use crate::alexander::{
    alexander_polynomial, determinant_invariant, jones_polynomial, MAX_BRACKET_CROSSINGS,
};
use crate::diagram::{seifert_circles, PdCode};
use crate::laurent::LaurentPoly;

use super::{CorpusError, KnotRecord};

/// Computes the invariants a record's diagram determines, cross-checks them
/// against declared values and closes the flags under the known implications.
pub fn enrich_record(mut r: KnotRecord) -> Result<KnotRecord, CorpusError> {
    let name = r.name.clone();
    let diagram_err = |source| CorpusError::Diagram { record: name.clone(), source };

    let pd = match (&r.diagram, &r.braid) {
        (Some(pd), braid) => {
            if let Some(b) = braid {
                let from_braid = alexander_polynomial(&b.to_pd().map_err(diagram_err)?);
                let from_pd = alexander_polynomial(pd);
                if from_braid != from_pd {
                    return Err(mismatch(&r, "delta (braid vs diagram)", &from_braid, &from_pd));
                }
            }
            Some(pd.clone())
        }
        (None, Some(b)) => Some(b.to_pd().map_err(diagram_err)?),
        (None, None) => None,
    };

    let declared = r.delta.as_ref().map(LaurentPoly::normalize);
    let delta = match (&pd, declared) {
        (Some(pd), declared) => {
            let computed = alexander_polynomial(pd);
            if let Some(d) = declared {
                if d != computed {
                    return Err(mismatch(&r, "delta", &d, &computed));
                }
            }
            computed
        }
        (None, Some(d)) => {
            check_knot_polynomial(&r.name, &d)?;
            d
        }
        (None, None) => return Err(CorpusError::MissingDelta(r.name)),
    };

    let det = determinant_invariant(&delta).to_u64().ok_or_else(|| CorpusError::Contradiction {
        record: r.name.clone(),
        reason: "determinant does not fit in 64 bits".into(),
    })?;
    r.determinant = agree(&r, "determinant", r.determinant, det)?;

    let lower = (delta.max_degree().unwrap_or(0) / 2) as u32;
    r.genus_lower = agree(&r, "genus_lower", r.genus_lower, lower)?;

    if let Some(pd) = &pd {
        let seifert = seifert_circles(pd).map_err(diagram_err)?;
        r.genus_upper = agree(&r, "genus_upper", r.genus_upper, seifert.genus_upper)?;
        if let Some(v) = computed_jones(pd) {
            if let Some(declared) = &r.jones {
                if *declared != v {
                    return Err(mismatch(&r, "jones", declared, &v));
                }
            }
            r.jones = Some(v);
        }
    }
    r.delta = Some(delta);

    close_flags(&mut r)?;
    check_genus_order(&r)?;
    r.enriched = true;
    Ok(r)
}

fn computed_jones(pd: &PdCode) -> Option<LaurentPoly> {
    if pd.crossing_count() > MAX_BRACKET_CROSSINGS {
        return None;
    }
    jones_polynomial(pd).ok()
}

fn mismatch(
    r: &KnotRecord,
    field: &'static str,
    declared: &dyn std::fmt::Display,
    computed: &dyn std::fmt::Display,
) -> CorpusError {
    CorpusError::Mismatch {
        record: r.name.clone(),
        field,
        declared: declared.to_string(),
        computed: computed.to_string(),
    }
}

/// Merges a computed value into an optional declared one.
fn agree<T: PartialEq + Copy + std::fmt::Display>(
    r: &KnotRecord,
    field: &'static str,
    declared: Option<T>,
    computed: T,
) -> Result<Option<T>, CorpusError> {
    match declared {
        Some(d) if d != computed => Err(mismatch(r, field, &d, &computed)),
        _ => Ok(Some(computed)),
    }
}

fn check_knot_polynomial(name: &str, d: &LaurentPoly) -> Result<(), CorpusError> {
    let invalid = |reason: &str| CorpusError::InvalidDelta {
        record: name.to_string(),
        delta: d.to_string(),
        reason: reason.to_string(),
    };
    if d.is_zero() {
        return Err(invalid("zero polynomial"));
    }
    let at_one = d.eval_int(1).expect("1 is nonzero");
    if !at_one.abs().is_one() {
        return Err(invalid("value at t = 1 is not +-1"));
    }
    if !d.is_palindromic() {
        return Err(invalid("coefficients are not palindromic"));
    }
    Ok(())
}

fn check_genus_order(r: &KnotRecord) -> Result<(), CorpusError> {
    let bad = |reason: String| {
        Err(CorpusError::Contradiction { record: r.name.clone(), reason })
    };
    let lower = r.genus_lower.unwrap_or(0);
    if let Some(u) = r.genus_upper {
        if lower > u {
            return bad(format!("genus_lower {lower} exceeds genus_upper {u}"));
        }
    }
    if let Some(g) = r.genus_exact {
        if g < lower {
            return bad(format!("genus_exact {g} below genus_lower {lower}"));
        }
        if r.genus_upper.is_some_and(|u| g > u) {
            return bad(format!("genus_exact {g} above genus_upper {}", r.genus_upper.unwrap()));
        }
        if r.ghat.is_some_and(|h| g > h) {
            return bad(format!("genus_exact {g} above ghat {}", r.ghat.unwrap()));
        }
    }
    Ok(())
}

/// Applies the flag implications until nothing changes and returns the
/// number of passes, the last one being the pass that changed nothing.
pub fn close_flags(r: &mut KnotRecord) -> Result<usize, CorpusError> {
    let mut passes = 0;
    loop {
        passes += 1;
        let before = r.clone();
        closure_pass(r)?;
        if *r == before {
            return Ok(passes);
        }
        assert!(passes < 8, "flag closure failed to converge on {}", r.name);
    }
}

fn closure_pass(r: &mut KnotRecord) -> Result<(), CorpusError> {
    let delta_is_one = r.delta.as_ref().is_some_and(LaurentPoly::is_one);

    if r.genus_exact.is_none() {
        if let (Some(l), Some(u)) = (r.genus_lower, r.genus_upper) {
            if l == u {
                r.genus_exact = Some(l);
            }
        }
    }
    let nontrivial = r.delta.is_some() && !delta_is_one
        || r.genus_lower.is_some_and(|g| g > 0)
        || r.genus_exact.is_some_and(|g| g > 0)
        || r.determinant.is_some_and(|d| d != 1);
    if nontrivial {
        set(r, "unknot", false, "nontrivial invariants")?;
    }
    // genus zero bounds only the unknot
    if r.genus_upper == Some(0) || r.genus_exact == Some(0) {
        set(r, "unknot", true, "genus 0")?;
    }
    if r.flags.unknot == Some(true) {
        if r.delta.is_some() && !delta_is_one {
            return contradiction(r, "unknot=true with delta != 1");
        }
        set_num(r, Num::GenusExact, 0, "unknot")?;
        set_num(r, Num::Ghat, 0, "unknot")?;
        for f in ["fibred", "alternating", "small", "sum_of_simple", "no_winding_zero_companion"] {
            set(r, f, true, "unknot")?;
        }
        set(r, "hyperbolic", false, "unknot")?;
    }
    if r.flags.two_bridge == Some(true) {
        set(r, "alternating", true, "two_bridge")?;
        set(r, "small", true, "two_bridge")?;
        if let Some(g) = r.genus_exact {
            set_num(r, Num::Ghat, g, "two_bridge")?;
        }
    }
    if r.flags.fibred == Some(true) {
        set(r, "free", true, "fibred")?;
        if let Some(g) = r.genus_exact {
            set_num(r, Num::Ghat, g, "fibred")?;
        }
        if let Some(lead) = r.delta.as_ref().and_then(LaurentPoly::leading_coeff) {
            if !lead.abs().is_one() {
                let reason = format!("fibred=true but delta has leading coefficient {lead}");
                return contradiction(r, &reason);
            }
        }
    }
    if r.flags.alternating == Some(true) {
        set(r, "free", true, "alternating")?;
        set(r, "toroidally_alternating", true, "alternating")?;
    }
    if r.flags.montesinos == Some(true) {
        set(r, "free", true, "montesinos")?;
    }
    if r.flags.small == Some(true) {
        set(r, "free", true, "small")?;
    }
    if r.flags.hyperbolic == Some(true) {
        set(r, "simple", true, "hyperbolic")?;
    }
    if r.flags.simple == Some(true) {
        set(r, "sum_of_simple", true, "simple")?;
        set(r, "no_winding_zero_companion", true, "simple")?;
    }
    if r.flags.no_winding_zero_companion == Some(false) {
        set(r, "free", false, "winding-zero companion")?;
    }
    Ok(())
}

fn contradiction(r: &KnotRecord, reason: &str) -> Result<(), CorpusError> {
    Err(CorpusError::Contradiction { record: r.name.clone(), reason: reason.to_string() })
}

fn set(r: &mut KnotRecord, flag: &str, value: bool, because: &str) -> Result<(), CorpusError> {
    let slot = r.flags.slot_mut(flag).expect("known flag");
    match *slot {
        Some(v) if v != value => {
            let reason = format!("{because} implies {flag}={value} but {flag}={v} is declared");
            contradiction(r, &reason)
        }
        _ => {
            *slot = Some(value);
            Ok(())
        }
    }
}

enum Num {
    GenusExact,
    Ghat,
}

fn set_num(r: &mut KnotRecord, which: Num, value: u32, because: &str) -> Result<(), CorpusError> {
    let (slot, field) = match which {
        Num::GenusExact => (&mut r.genus_exact, "genus_exact"),
        Num::Ghat => (&mut r.ghat, "ghat"),
    };
    match *slot {
        Some(v) if v != value => {
            let reason = format!("{because} implies {field}={value} but {field}={v} is declared");
            contradiction(r, &reason)
        }
        _ => {
            *slot = Some(value);
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(json: &str) -> KnotRecord {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn trefoil_from_diagram() {
        let r = enrich_record(record(
            r#"{"name": "3_1", "diagram": "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",
                "flags": {"fibred": true, "two_bridge": true}}"#,
        ))
        .unwrap();
        assert_eq!(r.delta.as_ref().unwrap().to_string(), "1 - t + t^2");
        assert_eq!(r.determinant, Some(3));
        assert_eq!(r.genus_interval(), (1, Some(1)));
        assert_eq!(r.ghat, Some(1));
        assert_eq!(r.flags.free, Some(true));
        assert_eq!(r.flags.unknot, Some(false));
        assert_eq!(r.jones.as_ref().unwrap().to_string(), "-t^-4 + t^-3 + t^-1");
        assert!(r.is_enriched());
    }

    #[test]
    fn unknot_is_trivial() {
        let r = enrich_record(record(r#"{"name": "unknot", "diagram": "", "flags": {"unknot": true}}"#))
            .unwrap();
        assert!(r.delta.as_ref().unwrap().is_one());
        assert_eq!(r.determinant, Some(1));
        assert_eq!(r.genus_interval(), (0, Some(0)));
        assert_eq!(r.ghat, Some(0));
    }

    #[test]
    fn declared_delta_must_match() {
        let err = enrich_record(record(
            r#"{"name": "x", "diagram": "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)",
                "delta": "1 - t + t^2"}"#,
        ))
        .unwrap_err();
        assert!(matches!(err, CorpusError::Mismatch { field: "delta", .. }), "{err}");
    }

    #[test]
    fn declared_delta_is_normalized() {
        let r = enrich_record(record(r#"{"name": "x", "delta": "-t^-1 + 3 - t"}"#)).unwrap();
        assert_eq!(r.delta.as_ref().unwrap().to_string(), "1 - 3*t + t^2");
        assert_eq!(r.genus_interval(), (1, None));
        assert!(r.flags.unknot == Some(false));
    }

    #[test]
    fn metadata_only_needs_delta() {
        let err = enrich_record(record(r#"{"name": "x", "genus_exact": 2}"#)).unwrap_err();
        assert!(matches!(err, CorpusError::MissingDelta(_)));
        let err = enrich_record(record(r#"{"name": "x", "delta": "1 - t"}"#)).unwrap_err();
        assert!(matches!(err, CorpusError::InvalidDelta { .. }));
    }

    #[test]
    fn contradictions() {
        let fibred_nonmonic = record(r#"{"name": "x", "delta": "2 - 3*t + 2*t^2", "flags": {"fibred": true}}"#);
        assert!(matches!(enrich_record(fibred_nonmonic), Err(CorpusError::Contradiction { .. })));
        let not_free = record(r#"{"name": "x", "delta": "1", "flags": {"fibred": true, "free": false}}"#);
        assert!(matches!(enrich_record(not_free), Err(CorpusError::Contradiction { .. })));
        let fake_unknot = record(r#"{"name": "x", "delta": "1 - t + t^2", "flags": {"unknot": true}}"#);
        assert!(enrich_record(fake_unknot).is_err());
        let genus = record(r#"{"name": "x", "delta": "1 - t + t^2", "genus_exact": 2, "ghat": 1}"#);
        assert!(enrich_record(genus).is_err());
    }

    #[test]
    fn closure_chain() {
        let mut r = record(r#"{"name": "x", "delta": "2 - 3*t + 2*t^2", "genus_exact": 1,
                               "flags": {"two_bridge": true, "hyperbolic": true}}"#);
        let passes = close_flags(&mut r).unwrap();
        assert!(passes <= 3);
        let f = r.flags;
        assert_eq!(
            (f.alternating, f.small, f.free, f.toroidally_alternating, f.simple, f.sum_of_simple),
            (Some(true), Some(true), Some(true), Some(true), Some(true), Some(true))
        );
        assert_eq!(r.ghat, Some(1));
    }

    #[test]
    fn enrich_is_idempotent() {
        let r = enrich_record(record(r#"{"name": "5_1", "braid": "B2: 1 1 1 1 1", "flags": {"fibred": true}}"#))
            .unwrap();
        assert_eq!(r.genus_exact, Some(2));
        assert_eq!(enrich_record(r.clone()).unwrap(), r);
    }
}
