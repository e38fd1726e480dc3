use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{BraidWord, PdCode};
use crate::laurent::LaurentPoly;

macro_rules! flags {
    ($($f:ident),* $(,)?) => {
        /// Tri-state class flags: `None` means unknown.
        #[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
        #[serde(deny_unknown_fields)]
        pub struct Flags {
            $(
                #[serde(default, skip_serializing_if = "Option::is_none")]
                pub $f: Option<bool>,
            )*
        }

        impl Flags {
            pub const NAMES: &'static [&'static str] = &[$(stringify!($f)),*];

            pub fn get(&self, name: &str) -> Option<Option<bool>> {
                match name {
                    $(stringify!($f) => Some(self.$f),)*
                    _ => None,
                }
            }

            pub fn slot_mut(&mut self, name: &str) -> Option<&mut Option<bool>> {
                match name {
                    $(stringify!($f) => Some(&mut self.$f),)*
                    _ => None,
                }
            }

            pub fn iter(&self) -> impl Iterator<Item = (&'static str, Option<bool>)> {
                [$((stringify!($f), self.$f)),*].into_iter()
            }

            pub fn is_empty(&self) -> bool {
                self.iter().all(|(_, v)| v.is_none())
            }
        }
    };
}

flags!(
    alternating,
    toroidally_alternating,
    fibred,
    two_bridge,
    montesinos,
    small,
    free,
    simple,
    unknot,
    no_winding_zero_companion,
    hyperbolic,
    lo_double_cover,
    lspace_double_cover,
    sum_of_simple,
);

/// Nonnegative decimal fixed to 8 fractional digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Volume {
    units: u64,
}

impl Volume {
    pub const SCALE: u64 = 100_000_000;

    pub fn from_units(units: u64) -> Self {
        Self { units }
    }

    pub fn units(&self) -> u64 {
        self.units
    }
}

impl FromStr for Volume {
    type Err = String;

    /// Digits beyond the eighth decimal are rounded half up.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        let digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if int.is_empty() || !digits(int) || !digits(frac) || (s.contains('.') && frac.is_empty()) {
            return Err(format!("invalid volume {s:?}"));
        }
        let overflow = || format!("volume {s:?} out of range");
        let whole: u64 = int.parse().map_err(|_| overflow())?;
        let mut fixed = 0u64;
        for i in 0..8 {
            fixed = fixed * 10 + frac.as_bytes().get(i).map_or(0, |b| (b - b'0') as u64);
        }
        if frac.as_bytes().get(8).is_some_and(|&b| b >= b'5') {
            fixed += 1;
        }
        whole
            .checked_mul(Self::SCALE)
            .and_then(|w| w.checked_add(fixed))
            .map(|units| Self { units })
            .ok_or_else(overflow)
    }
}

impl fmt::Display for Volume {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{:08}", self.units / Self::SCALE, self.units % Self::SCALE)
    }
}

impl Serialize for Volume {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Volume {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SatelliteOf {
    pub pattern: String,
    pub companion: String,
    pub winding: u32,
}

/// One knot of the corpus. Optional fields are filled in by enrichment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnotRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<PdCode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braid: Option<BraidWord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<LaurentPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub determinant: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jones: Option<LaurentPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus_lower: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus_upper: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus_exact: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ghat: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume: Option<Volume>,
    #[serde(default, skip_serializing_if = "Flags::is_empty")]
    pub flags: Flags,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutant_class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub connected_sum_of: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub satellite_of: Option<SatelliteOf>,
    /// Another record describing the same knot (e.g. a second diagram).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub same_knot_as: Option<String>,
    #[serde(skip)]
    pub(crate) enriched: bool,
}

impl KnotRecord {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            diagram: None,
            braid: None,
            delta: None,
            determinant: None,
            jones: None,
            genus_lower: None,
            genus_upper: None,
            genus_exact: None,
            ghat: None,
            volume: None,
            flags: Flags::default(),
            mutant_class: None,
            connected_sum_of: None,
            satellite_of: None,
            same_knot_as: None,
            enriched: false,
        }
    }

    pub fn is_enriched(&self) -> bool {
        self.enriched
    }

    /// No diagram and no braid: invariants come from declared data only.
    pub fn is_metadata_only(&self) -> bool {
        self.diagram.is_none() && self.braid.is_none()
    }

    /// `(lower, upper)` bounds on the genus; `None` upper means unbounded.
    pub fn genus_interval(&self) -> (u32, Option<u32>) {
        match self.genus_exact {
            Some(g) => (g, Some(g)),
            None => (self.genus_lower.unwrap_or(0), self.genus_upper),
        }
    }

    /// Prime summands, a prime knot being its own single summand.
    pub fn summands(&self) -> Vec<&str> {
        match &self.connected_sum_of {
            Some(parts) => parts.iter().map(String::as_str).collect(),
            None => vec![self.name.as_str()],
        }
    }

    /// Name of the knot this record stands for.
    pub fn canonical_name(&self) -> &str {
        self.same_knot_as.as_deref().unwrap_or(&self.name)
    }
}

/// Free-function form of [`KnotRecord::genus_interval`].
pub fn genus_interval(r: &KnotRecord) -> (u32, Option<u32>) {
    r.genus_interval()
}
