use crate::error::{Error, Result};
use crate::rule::{pair_key, Color, RuleIndex, SubdivisionRule};
use std::collections::BTreeMap;

pub type DartId = u32;
pub type VertexId = u32;
pub type FaceId = u32;
pub type EdgeId = u32;

#[derive(Clone, Debug)]
pub struct Vertex {
    pub name: String,
    /// Postcritical label of the image of this vertex under the n-th
    /// iterate (the vertex "type").
    pub image: String,
    /// Local degree of the n-th iterate at this vertex, accumulated from
    /// the rule's local degrees along the orbit.
    pub degree: u64,
    pub first_dart: DartId,
}

#[derive(Clone, Debug)]
pub struct Face {
    pub name: String,
    pub color: Color,
    pub start_dart: DartId,
}

#[derive(Clone, Debug)]
pub struct EdgeRec {
    pub name: String,
    pub dart: DartId,
}

/// Oriented combinatorial map of one subdivision level: faces are stored as
/// counterclockwise dart cycles, so `twin(prev(d))` rotates counterclockwise
/// around the origin of `d`. Geometric embeddings are never computed.
#[derive(Clone, Debug)]
pub struct CellComplex {
    pub level: usize,
    pub verts: Vec<Vertex>,
    pub faces: Vec<Face>,
    pub edges: Vec<EdgeRec>,
    pub twin: Vec<DartId>,
    pub next: Vec<DartId>,
    pub prev: Vec<DartId>,
    pub origin: Vec<VertexId>,
    pub face_of: Vec<FaceId>,
    pub edge_of: Vec<EdgeId>,
    /// For each designated invariant 0-edge: the ordered chain of vertices
    /// and edges along it at this level (from the `from`-endpoint).
    pub invariant_chains: BTreeMap<String, (Vec<VertexId>, Vec<EdgeId>)>,
}

/// Cyclic list of tiles around a vertex, counterclockwise; the flower
/// degree is half the tile count.
#[derive(Clone, Debug)]
pub struct Flower {
    pub center: VertexId,
    pub tiles: Vec<FaceId>,
}

impl Flower {
    pub fn degree(&self) -> u64 {
        (self.tiles.len() / 2) as u64
    }
}

impl CellComplex {
    /// The 0-complex of a rule: two m-gons glued along the curve.
    pub fn base(rule: &SubdivisionRule) -> Result<Self> {
        rule.index()?;
        let m = rule.post_count();
        let mut c = CellComplex {
            level: 0,
            verts: Vec::new(),
            faces: Vec::new(),
            edges: Vec::new(),
            twin: Vec::new(),
            next: Vec::new(),
            prev: Vec::new(),
            origin: Vec::new(),
            face_of: Vec::new(),
            edge_of: Vec::new(),
            invariant_chains: BTreeMap::new(),
        };
        for label in &rule.post_labels {
            c.verts.push(Vertex {
                name: label.clone(),
                image: label.clone(),
                degree: 1,
                first_dart: 0,
            });
        }
        for chain in &rule.gluing {
            c.edges.push(EdgeRec { name: chain.name.clone(), dart: 0 });
        }
        let mut darts_of_edge: BTreeMap<usize, Vec<DartId>> = BTreeMap::new();
        for (color, name) in [(Color::White, "w"), (Color::Black, "b")] {
            let fid = c.faces.len() as FaceId;
            // white face walks the curve forwards, black backwards
            let walk: Vec<(usize, usize)> = match color {
                Color::White => (0..m).map(|i| (i, edge_index_for(rule, i))).collect(),
                Color::Black => (0..m)
                    .rev()
                    .map(|i| ((i + 1) % m, edge_index_for(rule, i)))
                    .collect(),
            };
            let start = c.twin.len() as DartId;
            for (k, (v, e)) in walk.iter().enumerate() {
                let d = start + k as DartId;
                c.twin.push(DartId::MAX);
                c.next.push(start + ((k + 1) % m) as DartId);
                c.prev.push(start + ((k + m - 1) % m) as DartId);
                c.origin.push(*v as VertexId);
                c.face_of.push(fid);
                c.edge_of.push(*e as EdgeId);
                c.verts[*v].first_dart = d;
                c.edges[*e].dart = d;
                darts_of_edge.entry(*e).or_default().push(d);
            }
            c.faces.push(Face { name: name.to_string(), color, start_dart: start });
        }
        for (_, ds) in darts_of_edge {
            debug_assert_eq!(ds.len(), 2);
            c.twin[ds[0] as usize] = ds[1];
            c.twin[ds[1] as usize] = ds[0];
        }
        for name in &rule.invariant_edges {
            let chain = rule.gluing.iter().position(|g| &g.name == name).unwrap();
            let from = rule.post_labels.iter().position(|l| l == &rule.gluing[chain].from).unwrap();
            let to = rule.post_labels.iter().position(|l| l == &rule.gluing[chain].to).unwrap();
            c.invariant_chains.insert(
                name.clone(),
                (vec![from as VertexId, to as VertexId], vec![chain as EdgeId]),
            );
        }
        Ok(c)
    }

    /// One subdivision step: every face is replaced by the 1-tile pattern of
    /// its color, glued along the shared subdivided edges.
    pub fn subdivide_once(&self, rule: &SubdivisionRule, idx: &RuleIndex) -> Result<CellComplex> {
        let m = rule.post_count();
        let mut out = CellComplex {
            level: self.level + 1,
            verts: Vec::new(),
            faces: Vec::new(),
            edges: Vec::new(),
            twin: Vec::new(),
            next: Vec::new(),
            prev: Vec::new(),
            origin: Vec::new(),
            face_of: Vec::new(),
            edge_of: Vec::new(),
            invariant_chains: BTreeMap::new(),
        };

        // Old vertices persist: the image label advances through the rule,
        // and the local degree multiplies by the rule degree at the old
        // image point.
        for v in &self.verts {
            out.verts.push(Vertex {
                name: v.name.clone(),
                image: idx.vertex_image[&v.image].clone(),
                degree: v.degree * rule_local_degree(rule, &v.image),
                first_dart: 0,
            });
        }

        // Subdivide every old edge according to the curve chain it maps
        // onto. New vertices and sub-edges are indexed in chain direction.
        struct EdgeSplit {
            chain: usize,
            new_verts: Vec<VertexId>,
            sub_edges: Vec<EdgeId>,
        }
        let mut splits: Vec<EdgeSplit> = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let d = e.dart;
            let u = self.origin[d as usize] as usize;
            let w = self.origin[self.twin[d as usize] as usize] as usize;
            let lu = &self.verts[u].image;
            let lw = &self.verts[w].image;
            let chain = *idx.by_label_pair.get(&pair_key(lu, lw)).ok_or_else(|| {
                Error::InvalidRule(format!(
                    "edge `{}` joins labels `{lu}`, `{lw}` which span no curve edge",
                    e.name
                ))
            })?;
            let chain_data = &rule.gluing[chain];
            let mut new_verts = Vec::new();
            for v in &chain_data.vertices[1..chain_data.vertices.len() - 1] {
                let vid = out.verts.len() as VertexId;
                out.verts.push(Vertex {
                    name: format!("{}:{}", e.name, v),
                    image: idx.vertex_image[v].clone(),
                    degree: rule_local_degree(rule, v),
                    first_dart: 0,
                });
                new_verts.push(vid);
            }
            let mut sub_edges = Vec::new();
            for j in 0..chain_data.edges.len() {
                let eid = out.edges.len() as EdgeId;
                out.edges.push(EdgeRec { name: format!("{}.{}", e.name, j), dart: 0 });
                sub_edges.push(eid);
            }
            splits.push(EdgeSplit { chain, new_verts, sub_edges });
        }

        // Instantiate the pattern in every face.
        let mut darts_per_edge: Vec<Vec<DartId>> = Vec::new();
        for face in &self.faces {
            // corner lookup (image label -> vertex) and boundary-edge lookup
            // (label pair -> old edge id)
            let mut corner: BTreeMap<String, VertexId> = BTreeMap::new();
            let mut boundary: BTreeMap<(String, String), usize> = BTreeMap::new();
            let mut d = face.start_dart;
            loop {
                let u = self.origin[d as usize];
                let w = self.origin[self.twin[d as usize] as usize];
                corner.insert(self.verts[u as usize].image.clone(), u);
                boundary.insert(
                    pair_key(&self.verts[u as usize].image, &self.verts[w as usize].image),
                    self.edge_of[d as usize] as usize,
                );
                d = self.next[d as usize];
                if d == face.start_dart {
                    break;
                }
            }
            if corner.len() != m || boundary.len() != m {
                return Err(Error::InvalidRule(format!(
                    "face `{}` does not have {m} distinct corner labels",
                    face.name
                )));
            }

            let mut local_verts: BTreeMap<String, VertexId> = BTreeMap::new();
            let mut local_edges: BTreeMap<String, EdgeId> = BTreeMap::new();

            for tile in rule.tiles_in(face.color) {
                let fid = out.faces.len() as FaceId;
                let start = out.twin.len() as DartId;
                let k = tile.vertices.len();
                for step in 0..k {
                    let vname = &tile.vertices[step];
                    let ename = &tile.edges[step];

                    let v = match local_verts.get(vname) {
                        Some(&v) => v,
                        None => {
                            let vid = if let Some(&c) = corner.get(vname) {
                                c
                            } else if let Some(&(chain, pos)) = idx.on_curve.get(vname) {
                                // split data is stored in chain direction,
                                // so the chain position indexes it directly
                                let cd = &rule.gluing[chain];
                                let old_eid = boundary[&pair_key(&cd.from, &cd.to)];
                                splits[old_eid].new_verts[pos]
                            } else {
                                let vid = out.verts.len() as VertexId;
                                out.verts.push(Vertex {
                                    name: format!("{}/{}", face.name, vname),
                                    image: idx.vertex_image[vname].clone(),
                                    degree: rule_local_degree(rule, vname),
                                    first_dart: 0,
                                });
                                vid
                            };
                            local_verts.insert(vname.clone(), vid);
                            vid
                        }
                    };

                    let e = match local_edges.get(ename) {
                        Some(&e) => e,
                        None => {
                            let eid = if let Some(&(chain, pos)) = idx.curve_position.get(ename) {
                                let cd = &rule.gluing[chain];
                                let old_eid = boundary[&pair_key(&cd.from, &cd.to)];
                                splits[old_eid].sub_edges[pos]
                            } else {
                                let eid = out.edges.len() as EdgeId;
                                out.edges
                                    .push(EdgeRec { name: format!("{}/{}", face.name, ename), dart: 0 });
                                eid
                            };
                            local_edges.insert(ename.clone(), eid);
                            eid
                        }
                    };

                    let dart = start + step as DartId;
                    out.twin.push(DartId::MAX);
                    out.next.push(start + ((step + 1) % k) as DartId);
                    out.prev.push(start + ((step + k - 1) % k) as DartId);
                    out.origin.push(v);
                    out.face_of.push(fid);
                    out.edge_of.push(e);
                    out.verts[v as usize].first_dart = dart;
                    out.edges[e as usize].dart = dart;
                    if darts_per_edge.len() <= e as usize {
                        darts_per_edge.resize(e as usize + 1, Vec::new());
                    }
                    darts_per_edge[e as usize].push(dart);
                }
                out.faces.push(Face {
                    name: format!("{}/{}", face.name, tile.name),
                    color: tile.color,
                    start_dart: start,
                });
            }
        }

        // twin hookup and sanity
        for (e, ds) in darts_per_edge.iter().enumerate() {
            if ds.len() != 2 {
                return Err(Error::InvalidRule(format!(
                    "edge `{}` acquired {} darts, expected 2",
                    out.edges[e].name,
                    ds.len()
                )));
            }
            let (d0, d1) = (ds[0], ds[1]);
            if out.origin[d0 as usize] == out.origin[d1 as usize] {
                return Err(Error::InvalidRule(format!(
                    "edge `{}` traversed twice in the same direction",
                    out.edges[e].name
                )));
            }
            out.twin[d0 as usize] = d1;
            out.twin[d1 as usize] = d0;
        }

        // carry the invariant chains down one level
        for (name, (vchain, echain)) in &self.invariant_chains {
            let mut vs: Vec<VertexId> = vec![vchain[0]];
            let mut es: Vec<EdgeId> = Vec::new();
            for (k, &eid) in echain.iter().enumerate() {
                let split = &splits[eid as usize];
                // split data runs in chain direction; orient it so the
                // pulled-back piece starts at vchain[k]
                let left_label = &self.verts[vchain[k] as usize].image;
                let forward = left_label == &rule.gluing[split.chain].from;
                let mut nv = split.new_verts.clone();
                let mut ne = split.sub_edges.clone();
                if !forward {
                    nv.reverse();
                    ne.reverse();
                }
                vs.extend(nv);
                vs.push(vchain[k + 1]);
                es.extend(ne);
            }
            out.invariant_chains.insert(name.clone(), (vs, es));
        }

        Ok(out)
    }

    pub fn tile_count(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.verts.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Next dart counterclockwise around the origin of `d`.
    pub fn ccw_next(&self, d: DartId) -> DartId {
        self.twin[self.prev[d as usize] as usize]
    }

    /// The flower of a vertex: incident tiles in counterclockwise order.
    pub fn flower(&self, v: VertexId) -> Result<Flower> {
        if v as usize >= self.verts.len() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
        let start = self.verts[v as usize].first_dart;
        let mut tiles = Vec::new();
        let mut d = start;
        loop {
            debug_assert_eq!(self.origin[d as usize], v);
            tiles.push(self.face_of[d as usize]);
            d = self.ccw_next(d);
            if d == start {
                break;
            }
        }
        Ok(Flower { center: v, tiles })
    }

    pub fn vertex_by_name(&self, name: &str) -> Result<VertexId> {
        self.verts
            .iter()
            .position(|v| v.name == name)
            .map(|i| i as VertexId)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Dart out of `v` along edge `e`, if incident.
    pub fn dart_from(&self, v: VertexId, e: EdgeId) -> Option<DartId> {
        let d = self.edges[e as usize].dart;
        if self.origin[d as usize] == v {
            Some(d)
        } else if self.origin[self.twin[d as usize] as usize] == v {
            Some(self.twin[d as usize])
        } else {
            None
        }
    }

    /// Checks the structural invariants of the complex: tile count, Euler
    /// formula, dart involution, color alternation around every vertex, and
    /// flower size equal to twice the accumulated local degree (the rotation
    /// system and the portrait arithmetic are independent routes).
    pub fn check(&self, rule: &SubdivisionRule) -> Result<()> {
        let expected_faces = 2 * rule.degree.pow(self.level as u32);
        if self.faces.len() != expected_faces {
            return Err(Error::InvalidRule(format!(
                "level {}: {} tiles, expected {expected_faces}",
                self.level,
                self.faces.len()
            )));
        }
        if self.euler_characteristic() != 2 {
            return Err(Error::InvalidRule(format!(
                "level {}: Euler characteristic {} is not 2",
                self.level,
                self.euler_characteristic()
            )));
        }
        for (di, &t) in self.twin.iter().enumerate() {
            if t as usize >= self.twin.len() || self.twin[t as usize] as usize != di {
                return Err(Error::InvalidRule("twin is not an involution".into()));
            }
        }
        for v in 0..self.verts.len() as VertexId {
            let flower = self.flower(v)?;
            if flower.tiles.len() as u64 != 2 * self.verts[v as usize].degree {
                return Err(Error::InvalidRule(format!(
                    "vertex `{}`: flower size {} but accumulated degree {}",
                    self.verts[v as usize].name,
                    flower.tiles.len(),
                    self.verts[v as usize].degree
                )));
            }
            for k in 0..flower.tiles.len() {
                let c1 = self.faces[flower.tiles[k] as usize].color;
                let c2 = self.faces[flower.tiles[(k + 1) % flower.tiles.len()] as usize].color;
                if c1 == c2 {
                    return Err(Error::InvalidRule(format!(
                        "colors do not alternate around `{}`",
                        self.verts[v as usize].name
                    )));
                }
            }
        }
        Ok(())
    }
}

fn edge_index_for(rule: &SubdivisionRule, i: usize) -> usize {
    let m = rule.post_labels.len();
    let from = &rule.post_labels[i];
    let to = &rule.post_labels[(i + 1) % m];
    rule.gluing
        .iter()
        .position(|c| &c.from == from && &c.to == to)
        .expect("validated rule has one chain per 0-edge")
}

/// Local degree of the map at a rule 1-vertex: half the number of tile
/// corners meeting there.
pub fn rule_local_degree(rule: &SubdivisionRule, vertex: &str) -> u64 {
    let count = rule
        .all_tiles()
        .map(|(_, t)| t.vertices.iter().filter(|v| v.as_str() == vertex).count())
        .sum::<usize>();
    (count / 2) as u64
}

/// Builds the level-n complex by repeated subdivision, guarding the tile
/// budget.
pub fn subdivide(rule: &SubdivisionRule, n: usize, max_tiles: usize) -> Result<CellComplex> {
    let idx = rule.index()?;
    let tiles = 2usize
        .checked_mul(rule.degree.checked_pow(n as u32).unwrap_or(usize::MAX))
        .unwrap_or(usize::MAX);
    if tiles > max_tiles {
        return Err(Error::Budget(format!(
            "level {n} needs {tiles} tiles, budget is {max_tiles}"
        )));
    }
    let mut c = CellComplex::base(rule)?;
    for _ in 0..n {
        c = c.subdivide_once(rule, &idx)?;
    }
    Ok(c)
}
