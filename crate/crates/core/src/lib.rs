//! Exact classical knot invariants and a sound partial decision procedure for
//! 1-domination (proper degree-one maps between knot exteriors).
//!
//! The crate is organized bottom-up:
//!
//! * [`laurent`]: exact `Z[t, t^-1]` arithmetic,
//! * [`diagram`]: PD codes, braids, Wirtinger presentations, Seifert circles,
//! * [`alexander`]: Alexander and Jones polynomials,
//! * [`knotbase`]: the knot corpus and its enrichment,
//! * [`domination`]: obstruction, rigidity and certificate rules,
//! * [`poset`]: the certified domination graph and chain bounds.

pub mod alexander;
pub mod diagram;
pub mod domination;
pub mod knotbase;
pub mod laurent;
pub mod poset;

pub use alexander::{
    alexander_polynomial, connected_sum_delta, determinant_invariant, jones_polynomial,
    satellite_delta,
};
pub use diagram::{parse_diagram, seifert_circles, BraidWord, DiagramError, PdCode};
pub use domination::{evaluate_pair, Certificate, ObstructionReport, RuleId, Verdict};
pub use knotbase::{load_corpus, Corpus, CorpusError, KnotRecord};
pub use poset::{build_graph, chain_length_bound, longest_chain, ChainBound, DominationGraph};
pub use laurent::{is_prime_power, LaurentError, LaurentPoly};

