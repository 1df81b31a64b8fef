use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

/// One 1-tile: a closed m-gon given by its counterclockwise boundary walk.
/// `edges[i]` joins `vertices[i]` to `vertices[(i+1) % m]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RuleTile {
    pub name: String,
    pub color: Color,
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
}

/// A 0-edge of the invariant curve together with the chain of 1-vertices and
/// 1-edges subdividing it, ordered from `from` to `to` (the orientation of
/// the white 0-tile's boundary walk).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurveEdge {
    pub name: String,
    pub from: String,
    pub to: String,
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
}

/// A two-tile subdivision rule: the 0-complex is a pair of m-gons glued
/// along the curve through the postcritical labels; the 1-complex lists the
/// tiles subdividing each of the two 0-tiles. Vertex-label images record
/// where the map sends each 1-vertex.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubdivisionRule {
    pub name: String,
    /// Postcritical labels in cyclic order along the curve (the white
    /// 0-tile's counterclockwise boundary).
    pub post_labels: Vec<String>,
    /// Number of white 1-tiles (= number of black 1-tiles).
    pub degree: usize,
    /// 1-tiles contained in the white 0-tile (of both colors).
    pub white_tiles: Vec<RuleTile>,
    /// 1-tiles contained in the black 0-tile.
    pub black_tiles: Vec<RuleTile>,
    pub gluing: Vec<CurveEdge>,
    #[serde(default)]
    pub invariant_edges: Vec<String>,
    /// Per tile, the image labels of its boundary vertices, walk-aligned.
    pub tile_images: BTreeMap<String, Vec<String>>,
}

/// Validated/derived data used by the subdivision machinery.
#[derive(Clone, Debug)]
pub struct RuleIndex {
    /// Image label of every 1-vertex.
    pub vertex_image: BTreeMap<String, String>,
    /// For every 1-edge on the curve: (curve edge index, position in chain).
    pub curve_position: BTreeMap<String, (usize, usize)>,
    /// Vertices interior to a curve edge: vertex -> (curve edge index, index
    /// among that chain's interior vertices).
    pub on_curve: BTreeMap<String, (usize, usize)>,
    /// Lookup of a curve edge by the unordered pair of its endpoint labels.
    pub by_label_pair: BTreeMap<(String, String), usize>,
}

impl SubdivisionRule {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rule serializes")
    }

    pub fn post_count(&self) -> usize {
        self.post_labels.len()
    }

    pub fn all_tiles(&self) -> impl Iterator<Item = (Color, &RuleTile)> {
        self.white_tiles
            .iter()
            .map(|t| (Color::White, t))
            .chain(self.black_tiles.iter().map(|t| (Color::Black, t)))
    }

    pub fn tiles_in(&self, container: Color) -> &[RuleTile] {
        match container {
            Color::White => &self.white_tiles,
            Color::Black => &self.black_tiles,
        }
    }

    /// Structural validation; returns the derived index. Combinatorial
    /// invariants that need the rotation system (color alternation, flower
    /// degrees, Euler formula) are checked by `validate_rule`, which builds
    /// the level-1 complex on top of this.
    pub fn index(&self) -> Result<RuleIndex> {
        let m = self.post_labels.len();
        if m < 3 {
            return Err(Error::InvalidRule("need at least 3 postcritical labels".into()));
        }
        let label_set: BTreeSet<&String> = self.post_labels.iter().collect();
        if label_set.len() != m {
            return Err(Error::InvalidRule("postcritical labels repeat".into()));
        }

        // tiles: m-gons with bijective image labels of the right orientation
        if self.white_tiles.len() != self.degree || self.black_tiles.len() != self.degree {
            return Err(Error::InvalidRule(format!(
                "each 0-tile must contain exactly degree = {} tiles; got {} white-side, {} black-side",
                self.degree,
                self.white_tiles.len(),
                self.black_tiles.len()
            )));
        }
        for color in [Color::White, Color::Black] {
            let n = self
                .all_tiles()
                .filter(|(_, t)| t.color == color)
                .count();
            if n != self.degree {
                return Err(Error::InvalidRule(format!(
                    "expected {} {color:?}-colored tiles, found {n}",
                    self.degree
                )));
            }
        }

        let mut vertex_image: BTreeMap<String, String> = BTreeMap::new();
        let mut tile_names = BTreeSet::new();
        for (_, tile) in self.all_tiles() {
            if !tile_names.insert(tile.name.clone()) {
                return Err(Error::InvalidRule(format!("tile `{}` declared twice", tile.name)));
            }
            if tile.vertices.len() != m || tile.edges.len() != m {
                return Err(Error::InvalidRule(format!(
                    "tile `{}` must be an {m}-gon",
                    tile.name
                )));
            }
            let images = self.tile_images.get(&tile.name).ok_or_else(|| {
                Error::InvalidRule(format!("no image labels for tile `{}`", tile.name))
            })?;
            if images.len() != m {
                return Err(Error::InvalidRule(format!(
                    "tile `{}` needs {m} image labels",
                    tile.name
                )));
            }
            // orientation: white tiles carry the cyclic order of post_labels,
            // black tiles the reversed order
            let reference: Vec<String> = match tile.color {
                Color::White => self.post_labels.clone(),
                Color::Black => {
                    let mut r = self.post_labels.clone();
                    r.reverse();
                    r
                }
            };
            let start = reference
                .iter()
                .position(|l| l == &images[0])
                .ok_or_else(|| {
                    Error::InvalidRule(format!(
                        "tile `{}`: image `{}` is not a postcritical label",
                        tile.name, images[0]
                    ))
                })?;
            for (k, img) in images.iter().enumerate() {
                if &reference[(start + k) % m] != img {
                    return Err(Error::InvalidRule(format!(
                        "tile `{}`: image labels {:?} are not a cyclic {} of the postcritical labels",
                        tile.name,
                        images,
                        match tile.color {
                            Color::White => "rotation",
                            Color::Black => "reversal",
                        }
                    )));
                }
            }
            for (v, img) in tile.vertices.iter().zip(images) {
                if let Some(prev) = vertex_image.insert(v.clone(), img.clone()) {
                    if &prev != img {
                        return Err(Error::InvalidRule(format!(
                            "vertex `{v}` has conflicting images `{prev}` and `{img}`"
                        )));
                    }
                }
            }
        }

        // curve: one chain per 0-edge, in white-walk orientation
        if self.gluing.len() != m {
            return Err(Error::InvalidRule(format!(
                "expected {m} curve edges, found {}",
                self.gluing.len()
            )));
        }
        let mut curve_position = BTreeMap::new();
        let mut on_curve = BTreeMap::new();
        let mut by_label_pair = BTreeMap::new();
        for (i, label) in self.post_labels.iter().enumerate() {
            let next = &self.post_labels[(i + 1) % m];
            let chain = self
                .gluing
                .iter()
                .position(|c| &c.from == label && &c.to == next)
                .ok_or_else(|| {
                    Error::InvalidRule(format!("no curve edge from `{label}` to `{next}`"))
                })?;
            let chain_data = &self.gluing[chain];
            if chain_data.vertices.first() != Some(label)
                || chain_data.vertices.last() != Some(next)
            {
                return Err(Error::InvalidRule(format!(
                    "curve edge `{}` must start at `{label}` and end at `{next}`",
                    chain_data.name
                )));
            }
            if chain_data.edges.len() + 1 != chain_data.vertices.len()
                || chain_data.edges.is_empty()
            {
                return Err(Error::InvalidRule(format!(
                    "curve edge `{}` chain lengths are inconsistent",
                    chain_data.name
                )));
            }
            for (pos, e) in chain_data.edges.iter().enumerate() {
                if curve_position.insert(e.clone(), (chain, pos)).is_some() {
                    return Err(Error::InvalidRule(format!(
                        "edge `{e}` appears twice on the curve"
                    )));
                }
            }
            for (pos, v) in chain_data.vertices[1..chain_data.vertices.len() - 1]
                .iter()
                .enumerate()
            {
                if label_set.contains(v) {
                    return Err(Error::InvalidRule(format!(
                        "postcritical label `{v}` cannot be interior to a curve edge"
                    )));
                }
                if on_curve.insert(v.clone(), (chain, pos)).is_some() {
                    return Err(Error::InvalidRule(format!(
                        "vertex `{v}` appears twice inside the curve"
                    )));
                }
            }
            let key = pair_key(label, next);
            if by_label_pair.insert(key, chain).is_some() {
                return Err(Error::InvalidRule(format!(
                    "two curve edges join `{label}` and `{next}`"
                )));
            }
        }

        // every postcritical label is itself a 1-vertex with an image
        for label in &self.post_labels {
            if !vertex_image.contains_key(label) {
                return Err(Error::InvalidRule(format!(
                    "postcritical label `{label}` does not occur as a tile corner"
                )));
            }
        }
        // images are postcritical labels
        for (v, img) in &vertex_image {
            if !label_set.contains(img) {
                return Err(Error::InvalidRule(format!(
                    "vertex `{v}` maps to `{img}`, which is not a postcritical label"
                )));
            }
        }

        // every edge is used exactly twice, in opposite directions; curve
        // edges once per container, inner edges twice in one container
        let mut usage: BTreeMap<&String, Vec<(Color, &String, &String)>> = BTreeMap::new();
        for (container, tile) in self.all_tiles() {
            for (k, e) in tile.edges.iter().enumerate() {
                let u = &tile.vertices[k];
                let w = &tile.vertices[(k + 1) % m];
                usage.entry(e).or_default().push((container, u, w));
            }
        }
        for (e, uses) in &usage {
            if uses.len() != 2 {
                return Err(Error::InvalidRule(format!(
                    "edge `{e}` is used {} times, expected 2",
                    uses.len()
                )));
            }
            let (c1, u1, w1) = uses[0];
            let (c2, u2, w2) = uses[1];
            if !(u1 == w2 && w1 == u2) {
                return Err(Error::InvalidRule(format!(
                    "edge `{e}` is not traversed in opposite directions"
                )));
            }
            let on = curve_position.contains_key(*e);
            if on && c1 == c2 {
                return Err(Error::InvalidRule(format!(
                    "curve edge `{e}` must separate the two 0-tiles"
                )));
            }
            if !on && c1 != c2 {
                return Err(Error::InvalidRule(format!(
                    "inner edge `{e}` crosses between 0-tiles without lying on the curve"
                )));
            }
        }
        for e in curve_position.keys() {
            if !usage.contains_key(e) {
                return Err(Error::InvalidRule(format!("curve edge `{e}` bounds no tile")));
            }
        }

        for name in &self.invariant_edges {
            if !self.gluing.iter().any(|c| &c.name == name) {
                return Err(Error::UnknownEdge(name.clone()));
            }
        }

        Ok(RuleIndex { vertex_image, curve_position, on_curve, by_label_pair })
    }
}

pub fn pair_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl RuleIndex {
    pub fn image_of(&self, vertex: &str) -> Result<&str> {
        self.vertex_image
            .get(vertex)
            .map(|s| s.as_str())
            .ok_or_else(|| Error::UnknownVertex(vertex.to_string()))
    }
}
