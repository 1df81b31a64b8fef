//! Ramification portraits of Thurston maps and the combinatorial growth
//! criterion: exact ramification-function and orbifold arithmetic, the
//! five-condition invariant-edge check with derived constants and witness
//! words, and the obstruction coefficient. All rational arithmetic is
//! exact; there is no floating point in this crate.
//!
//! The checker never claims group-level facts itself; it emits witness
//! words whose certification belongs to the wreath-recursion engine.

mod criterion;
mod edge;
mod error;
mod obstruction;
mod orbifold;
mod ram;

pub use criterion::{check_conditions, ConditionVerdict, CriterionReport};
pub use edge::{restricted_portrait, EndpointType, InteriorVertex, InvariantEdgeData};
pub use error::{Error, Result};
pub use obstruction::{thurston_lambda, CurveComponent, ObstructionInput, ObstructionReport};
pub use orbifold::{orbifold_characteristic, orbifold_from_alpha, Classification, OrbifoldReport};
pub use ram::{Alpha, PortraitEdge, PortraitVertex, RamPortrait};
