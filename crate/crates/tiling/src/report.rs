use crate::complex::{rule_local_degree, subdivide, CellComplex, VertexId};
use crate::error::{Error, Result};
use crate::rule::SubdivisionRule;
use portrait::{PortraitEdge, PortraitVertex, RamPortrait};
use serde::Serialize;

/// Outcome of rule validation: the structural checks passed and the induced
/// ramification portrait (every 1-vertex with its image and local degree).
#[derive(Clone, Debug, Serialize)]
pub struct RuleReport {
    pub name: String,
    pub degree: usize,
    pub post_labels: Vec<String>,
    /// name, image label, local degree per 1-vertex.
    pub vertex_degrees: Vec<(String, String, u64)>,
}

impl RuleReport {
    /// The induced portrait restricted to critical and postcritical
    /// vertices (local degree >= 2 or postcritical label).
    pub fn induced_portrait(&self) -> RamPortrait {
        let keep: Vec<&(String, String, u64)> = self
            .vertex_degrees
            .iter()
            .filter(|(name, _, deg)| *deg >= 2 || self.post_labels.contains(name))
            .collect();
        RamPortrait {
            vertices: keep
                .iter()
                .map(|(name, _, _)| PortraitVertex {
                    name: name.clone(),
                    post: self.post_labels.contains(name),
                })
                .collect(),
            edges: keep
                .iter()
                .map(|(name, image, deg)| PortraitEdge {
                    from: name.clone(),
                    to: image.clone(),
                    deg: *deg,
                })
                .collect(),
        }
    }
}

/// Full validation of a subdivision rule: the structural checks of the
/// static data, then the level-1 complex invariants (Euler formula, color
/// alternation, flower sizes). Each violated invariant is named in the
/// error.
pub fn validate_rule(rule: &SubdivisionRule) -> Result<RuleReport> {
    let idx = rule.index()?;
    let level1 = subdivide(rule, 1, usize::MAX)?;
    level1.check(rule)?;

    let mut vertex_degrees = Vec::new();
    for (v, img) in &idx.vertex_image {
        vertex_degrees.push((v.clone(), img.clone(), rule_local_degree(rule, v)));
    }
    Ok(RuleReport {
        name: rule.name.clone(),
        degree: rule.degree,
        post_labels: rule.post_labels.clone(),
        vertex_degrees,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeVertexReport {
    pub name: String,
    /// Postcritical label the n-th iterate sends the vertex to.
    pub kind: String,
    pub flower_degree: u64,
    /// Tile counts of the two sectors into which the edge divides the
    /// flower (interior vertices only).
    pub sectors: Option<(u64, u64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantEdgeReport {
    pub edge: String,
    pub level: usize,
    pub vertex_count: usize,
    pub vertices: Vec<EdgeVertexReport>,
    pub types_alternate: bool,
    pub sectors_balanced: bool,
}

/// Checks that a designated 0-edge really is invariant: every interior
/// 1-vertex of its chain (and both endpoints) must map to one of its
/// endpoints.
pub fn check_edge_invariant(rule: &SubdivisionRule, edge_name: &str) -> Result<()> {
    let idx = rule.index()?;
    let chain = rule
        .gluing
        .iter()
        .find(|c| c.name == edge_name)
        .ok_or_else(|| Error::UnknownEdge(edge_name.to_string()))?;
    for v in &chain.vertices {
        let img = idx.image_of(v)?;
        if img != chain.from && img != chain.to {
            return Err(Error::NotInvariant(
                edge_name.to_string(),
                format!("chain vertex `{v}` maps to `{img}`, outside the edge"),
            ));
        }
    }
    Ok(())
}

/// Lists the n-vertices along an invariant 0-edge in order, with types,
/// flower degrees, and sector balance, after verifying invariance.
pub fn invariant_edge_report(
    rule: &SubdivisionRule,
    edge_name: &str,
    n: usize,
    max_tiles: usize,
) -> Result<InvariantEdgeReport> {
    check_edge_invariant(rule, edge_name)?;
    let mut rule = rule.clone();
    if !rule.invariant_edges.iter().any(|e| e == edge_name) {
        rule.invariant_edges.push(edge_name.to_string());
    }
    let complex = subdivide(&rule, n, max_tiles)?;
    let (vchain, echain) = complex
        .invariant_chains
        .get(edge_name)
        .expect("chain tracked through subdivision")
        .clone();

    let mut vertices = Vec::new();
    for (k, &v) in vchain.iter().enumerate() {
        let vert = &complex.verts[v as usize];
        let flower = complex.flower(v)?;
        let sectors = if k > 0 && k + 1 < vchain.len() {
            Some(sector_counts(&complex, v, echain[k - 1], echain[k])?)
        } else {
            None
        };
        vertices.push(EdgeVertexReport {
            name: vert.name.clone(),
            kind: vert.image.clone(),
            flower_degree: flower.degree(),
            sectors,
        });
    }
    let types_alternate = vertices.windows(2).all(|w| w[0].kind != w[1].kind);
    let sectors_balanced = vertices
        .iter()
        .filter_map(|v| v.sectors)
        .all(|(s1, s2)| s1 == s2);
    Ok(InvariantEdgeReport {
        edge: edge_name.to_string(),
        level: n,
        vertex_count: vchain.len(),
        vertices,
        types_alternate,
        sectors_balanced,
    })
}

/// Tile counts of the two sectors into which two incident edges divide the
/// flower of `v`: walk counterclockwise from the dart along `e1` until the
/// dart along `e2`, then back around.
pub fn sector_counts(
    complex: &CellComplex,
    v: VertexId,
    e1: crate::complex::EdgeId,
    e2: crate::complex::EdgeId,
) -> Result<(u64, u64)> {
    let d1 = complex
        .dart_from(v, e1)
        .ok_or_else(|| Error::UnknownEdge(format!("edge #{e1} not at vertex #{v}")))?;
    let d2 = complex
        .dart_from(v, e2)
        .ok_or_else(|| Error::UnknownEdge(format!("edge #{e2} not at vertex #{v}")))?;
    let mut first = 0u64;
    let mut d = d1;
    loop {
        first += 1;
        d = complex.ccw_next(d);
        if d == d2 {
            break;
        }
        if d == d1 {
            return Err(Error::InvalidRule("sector walk did not close".into()));
        }
    }
    let total = complex.flower(v)?.tiles.len() as u64;
    Ok((first, total - first))
}
