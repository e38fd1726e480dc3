//! Knot diagrams: PD codes, braid closures, Wirtinger presentations and
//! Seifert circles.
//!
//! Sign convention: in `X(a,b,c,d)` the over-strand occupies `b` and `d`; the
//! crossing is positive when `b = d + 1 (mod 2n)` and negative when
//! `d = b + 1`. A global flip of this convention mirrors the knot.

mod braid;
mod pd;
mod seifert;
mod wirtinger;

pub use braid::BraidWord;
pub use pd::{Crossing, OverStrand, PdCode};
pub use seifert::{seifert_circles, SeifertData};
pub use wirtinger::{over_arcs, Relation, WirtingerPresentation};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("PD syntax error at byte {pos}: {reason}")]
    Syntax { pos: usize, reason: String },
    #[error("arc label {label} outside 1..={max}")]
    LabelOutOfRange { label: u32, max: u32 },
    #[error("arc {arc} appears {count} times (expected 2)")]
    ArcMultiplicity { arc: u32, count: u32 },
    #[error("crossing {crossing}: under-strand {a} must exit at {a}+1, found {c}")]
    UnderStrand { crossing: usize, a: u32, c: u32 },
    #[error("crossing {crossing}: over-strand arcs {b},{d} are not consecutive along the knot")]
    NotConsecutive { crossing: usize, b: u32, d: u32 },
    #[error("braid syntax: {0}")]
    BraidSyntax(String),
    #[error("braid letter {letter} out of range for {strands} strands")]
    BraidLetter { letter: i32, strands: u32 },
    #[error("closure has {components} components; only knots are supported")]
    MultiComponent { components: usize },
    #[error("diagram is disconnected")]
    Disconnected,
}

/// Parses a PD code (`X(...)` tokens) or a braid word (`B<n>: ...`).
pub fn parse_diagram(text: &str) -> Result<PdCode, DiagramError> {
    if text.trim_start().starts_with('B') {
        text.parse::<BraidWord>()?.to_pd()
    } else {
        text.parse()
    }
}

macro_rules! serde_via_text {
    ($ty:ty) => {
        impl serde::Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> serde::Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let text = String::deserialize(d)?;
                text.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

serde_via_text!(PdCode);
serde_via_text!(BraidWord);
