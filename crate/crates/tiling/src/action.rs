use crate::complex::{CellComplex, FaceId};
use crate::error::{Error, Result};
use crate::rule::Color;
use std::collections::{BTreeMap, VecDeque};

/// A deterministic labeled graph: one out-edge per (node, label). Both the
/// tile-rotation action and the word action fit this shape.
#[derive(Clone, Debug)]
pub struct DetGraph {
    pub labels: Vec<String>,
    pub nodes: Vec<String>,
    /// `out[k][i]` is the target of the edge labeled `labels[k]` at node `i`.
    pub out: Vec<Vec<u32>>,
}

impl DetGraph {
    pub fn node_index(&self, name: &str) -> Result<usize> {
        self.nodes
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }
}

/// The generator action on white n-tiles by flower rotation: the tile moves
/// to the next white tile counterclockwise around its unique corner of the
/// generator's type.
pub fn generator_action(complex: &CellComplex, post_label: &str) -> Result<Vec<u32>> {
    let whites: Vec<FaceId> = (0..complex.faces.len() as FaceId)
        .filter(|&f| complex.faces[f as usize].color == Color::White)
        .collect();
    let white_index: BTreeMap<FaceId, u32> = whites
        .iter()
        .enumerate()
        .map(|(i, &f)| (f, i as u32))
        .collect();

    let mut images = vec![0u32; whites.len()];
    for (i, &f) in whites.iter().enumerate() {
        // the unique corner of the tile whose image is the given label
        let mut d = complex.faces[f as usize].start_dart;
        let corner = loop {
            let v = complex.origin[d as usize];
            if complex.verts[v as usize].image == post_label {
                break v;
            }
            d = complex.next[d as usize];
            if d == complex.faces[f as usize].start_dart {
                return Err(Error::InvalidRule(format!(
                    "tile `{}` has no corner of type `{post_label}`",
                    complex.faces[f as usize].name
                )));
            }
        };
        let flower = complex.flower(corner)?;
        let pos = flower
            .tiles
            .iter()
            .position(|&t| t == f)
            .expect("tile is incident to its own corner");
        // colors alternate, so two steps ahead is the next white tile
        let target = flower.tiles[(pos + 2) % flower.tiles.len()];
        images[i] = white_index[&target];
    }
    Ok(images)
}

/// The rotation actions of all generators, as a deterministic labeled graph
/// over the white tiles. Labels are the postcritical labels unless a naming
/// map is supplied.
pub fn tile_action_graph(
    complex: &CellComplex,
    generator_names: &BTreeMap<String, String>,
) -> Result<DetGraph> {
    let whites: Vec<String> = complex
        .faces
        .iter()
        .filter(|f| f.color == Color::White)
        .map(|f| f.name.clone())
        .collect();
    let mut labels = Vec::new();
    let mut out = Vec::new();
    for (post_label, name) in generator_names {
        labels.push(name.clone());
        out.push(generator_action(complex, post_label)?);
    }
    Ok(DetGraph { labels, nodes: whites, out })
}

#[derive(Clone, Debug)]
pub enum IntertwineOutcome {
    /// Total label-preserving bijection, as pairs (left node, right node).
    Isomorphic { pairs: Vec<(String, String)> },
    /// First conflicting edge: (left node, label, expected right, found right).
    Conflict { left: String, label: String, expected: String, found: String },
    /// Nodes of the left graph unreachable from the base pair.
    Unreachable { left: Vec<String> },
}

/// Grows the unique label-preserving bijection between two deterministic
/// graphs from a base pair by breadth-first search; succeeds iff it is
/// total and consistent.
pub fn intertwine(
    left: &DetGraph,
    right: &DetGraph,
    base_left: &str,
    base_right: &str,
) -> Result<IntertwineOutcome> {
    if left.labels != right.labels {
        return Err(Error::InvalidRule(format!(
            "label sets differ: {:?} vs {:?}",
            left.labels, right.labels
        )));
    }
    if left.nodes.len() != right.nodes.len() {
        return Err(Error::InvalidRule(format!(
            "node counts differ: {} vs {}",
            left.nodes.len(),
            right.nodes.len()
        )));
    }
    let l0 = left.node_index(base_left)?;
    let r0 = right.node_index(base_right)?;

    let n = left.nodes.len();
    let mut map = vec![u32::MAX; n];
    let mut rev = vec![u32::MAX; n];
    map[l0] = r0 as u32;
    rev[r0] = l0 as u32;
    let mut queue = VecDeque::from([l0]);
    while let Some(u) = queue.pop_front() {
        let ru = map[u] as usize;
        for (k, label) in left.labels.iter().enumerate() {
            let v = left.out[k][u] as usize;
            let rv = right.out[k][ru] as usize;
            if map[v] == u32::MAX && rev[rv] == u32::MAX {
                map[v] = rv as u32;
                rev[rv] = v as u32;
                queue.push_back(v);
            } else if map[v] != rv as u32 {
                let found = if map[v] != u32::MAX {
                    right.nodes[map[v] as usize].clone()
                } else {
                    format!("(right `{}` already paired)", right.nodes[rv].clone())
                };
                return Ok(IntertwineOutcome::Conflict {
                    left: left.nodes[u].clone(),
                    label: label.clone(),
                    expected: right.nodes[rv].clone(),
                    found,
                });
            }
        }
    }
    let unreachable: Vec<String> = (0..n)
        .filter(|&i| map[i] == u32::MAX)
        .map(|i| left.nodes[i].clone())
        .collect();
    if !unreachable.is_empty() {
        return Ok(IntertwineOutcome::Unreachable { left: unreachable });
    }
    let pairs = (0..n)
        .map(|i| (left.nodes[i].clone(), right.nodes[map[i] as usize].clone()))
        .collect();
    Ok(IntertwineOutcome::Isomorphic { pairs })
}
