//! Algebra of rooted-tree automorphisms given by wreath recursions.
//!
//! Elements are freely reduced words over named generators; each generator
//! carries a root permutation and `d` section words. All operations are pure
//! functions of immutable values and safe to call concurrently. Exact
//! decision procedures (triviality, equality, order) close words under
//! sections with memoization; `Inconclusive` is a first-class outcome when a
//! visited-state budget runs out, never a silent approximation.

mod action;
mod census;
mod decide;
mod element;
mod error;
mod identity;
mod perm;
mod presentation;
mod schreier;
mod semigroup;
mod word;

pub use action::{LevelAction, LevelBudget, LevelMaps};
pub use census::{ball_census, fingerprint, fingerprint_hex, BallCensusReport, CensusBudget};
pub use decide::{Equality, InfiniteOrderCertificate, Limits, OrderResult, Triviality};
pub use element::{parse_element, GroupElement, Lit};
pub use error::{Error, Result};
pub use identity::{
    standard_identity_suite, verify_identity, IdentityCheck, IdentityReport, WreathPattern,
};
pub use perm::Perm;
pub use presentation::{parse_presentation, WreathPresentation, F1_SOURCE};
pub use schreier::{
    level_transitive, recurrence_witness, schreier_graph, RecurrenceReport, SchreierGraph,
};
pub use semigroup::{
    certify_free_semigroup, default_start_level, CounterexamplePair, FreeSemigroupCertificate,
    SemigroupOutcome, SemigroupPolicy,
};
pub use word::{Alphabet, TreeWord};
