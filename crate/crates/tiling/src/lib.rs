//! Two-tile subdivision rules as combinatorial cell complexes.
//!
//! A rule describes how the two 0-tiles (the halves of the sphere cut along
//! the invariant curve) subdivide into 1-tiles. Iterating the subdivision
//! produces the level-n tiling, stored as a rotation system (faces are
//! counterclockwise dart cycles). Flowers, vertex types, and the generator
//! action by flower rotation all read off that structure; no coordinates
//! exist anywhere.

mod action;
mod complex;
mod error;
mod report;
mod rule;

pub use action::{generator_action, intertwine, tile_action_graph, DetGraph, IntertwineOutcome};
pub use complex::{
    rule_local_degree, subdivide, CellComplex, DartId, EdgeId, EdgeRec, Face, FaceId, Flower,
    Vertex, VertexId,
};
pub use error::{Error, Result};
pub use report::{
    check_edge_invariant, invariant_edge_report, sector_counts, validate_rule, EdgeVertexReport,
    InvariantEdgeReport, RuleReport,
};
pub use rule::{pair_key, Color, CurveEdge, RuleIndex, RuleTile, SubdivisionRule};

/// Default tile budget: level 6 of a degree-6 rule.
pub const DEFAULT_MAX_TILES: usize = 200_000;
