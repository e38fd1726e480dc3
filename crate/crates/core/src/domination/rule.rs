use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Identifier of an obstruction (`O*`), rigidity (`R*`) or certificate
/// (`C*`) rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    O1Alexander,
    O2Genus,
    O3Determinant,
    O4Volume,
    O5TwoBridge,
    O6Montesinos,
    O7ApClass,
    O8Free,
    O9Ghat,
    O10Orderability,
    O11Mutation,
    R1GenusVolume,
    R2FibredGenus,
    R3AlexanderDegree,
    R4Ghat,
    R5DoubleCover,
    R6HyperbolicVolume,
    C0Unknot,
    C1ConnectedSum,
    C2SatellitePattern,
    C3WindingOneCompanion,
    C4Reflexive,
    C5Transitive,
}

use RuleId::*;

impl RuleId {
    pub const ALL: [RuleId; 23] = [
        O1Alexander, O2Genus, O3Determinant, O4Volume, O5TwoBridge, O6Montesinos, O7ApClass,
        O8Free, O9Ghat, O10Orderability, O11Mutation, R1GenusVolume, R2FibredGenus,
        R3AlexanderDegree, R4Ghat, R5DoubleCover, R6HyperbolicVolume, C0Unknot, C1ConnectedSum,
        C2SatellitePattern, C3WindingOneCompanion, C4Reflexive, C5Transitive,
    ];

    pub fn code(self) -> &'static str {
        match self {
            O1Alexander => "O1_alexander",
            O2Genus => "O2_genus",
            O3Determinant => "O3_determinant",
            O4Volume => "O4_volume",
            O5TwoBridge => "O5_two_bridge",
            O6Montesinos => "O6_montesinos",
            O7ApClass => "O7_ap_class",
            O8Free => "O8_free",
            O9Ghat => "O9_ghat",
            O10Orderability => "O10_orderability",
            O11Mutation => "O11_mutation",
            R1GenusVolume => "R1_genus_volume",
            R2FibredGenus => "R2_fibred_genus",
            R3AlexanderDegree => "R3_alexander_degree",
            R4Ghat => "R4_ghat",
            R5DoubleCover => "R5_double_cover",
            R6HyperbolicVolume => "R6_hyperbolic_volume",
            C0Unknot => "C0_unknot",
            C1ConnectedSum => "C1_connected_sum",
            C2SatellitePattern => "C2_satellite_pattern",
            C3WindingOneCompanion => "C3_winding_one_companion",
            C4Reflexive => "C4_reflexive",
            C5Transitive => "C5_transitive",
        }
    }

    /// The fact the rule rests on.
    pub fn anchor(self) -> &'static str {
        match self {
            O1Alexander => "Alexander polynomial divisibility: Delta(k2) divides Delta(k1)",
            O2Genus => "genus monotonicity: g(k1) >= g(k2)",
            O3Determinant => {
                "degree-one map of double branched covers: det(k2) divides det(k1)"
            }
            O4Volume => "Gromov volume monotonicity: vol(k1) >= vol(k2)",
            O5TwoBridge => "a 2-bridge knot dominates only 2-bridge knots",
            O6Montesinos => "a Montesinos knot dominates only Montesinos knots",
            O7ApClass => "a toroidally alternating knot dominates only connected sums of simple knots",
            O8Free => "a free knot dominates only free knots",
            O9Ghat => "maximal incompressible Seifert genus monotonicity: ghat(k1) >= ghat(k2)",
            O10Orderability => {
                "double branched cover orderability: a non-left-orderable cover cannot map onto a left-orderable one"
            }
            O11Mutation => "distinct mutants share a double branched cover and do not dominate each other",
            R1GenusVolume => {
                "equal genus and Gromov volume, no winding-zero companion: domination forces equality"
            }
            R2FibredGenus => "equal genus with fibred k1: domination forces equality",
            R3AlexanderDegree => {
                "transfinitely nilpotent k1 with equal Alexander degree: domination forces equality"
            }
            R4Ghat => "free k1 with equal bounded ghat: domination forces equality",
            R5DoubleCover => "equal double branched covers: domination forces equality",
            R6HyperbolicVolume => "hyperbolic knots of equal volume: domination forces equality",
            C0Unknot => "every knot dominates the unknot",
            C1ConnectedSum => "a connected sum dominates every sub-sum of its summands",
            C2SatellitePattern => "a satellite knot dominates its pattern knot",
            C3WindingOneCompanion => "a satellite of winding number one dominates its companion",
            C4Reflexive => "domination is reflexive",
            C5Transitive => "domination is transitive",
        }
    }

    pub fn is_obstruction(self) -> bool {
        self.code().starts_with('O')
    }

    pub fn is_rigidity(self) -> bool {
        self.code().starts_with('R')
    }

    pub fn is_certificate(self) -> bool {
        self.code().starts_with('C')
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for RuleId {
    type Err = String;

    /// Accepts the full code (`O1_alexander`) or its prefix (`O1`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|r| r.code() == s || r.code().split('_').next() == Some(s))
            .ok_or_else(|| format!("unknown rule {s:?}"))
    }
}

impl Serialize for RuleId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for RuleId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
