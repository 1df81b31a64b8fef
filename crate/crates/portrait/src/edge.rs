use crate::error::{Error, Result};
use crate::ram::RamPortrait;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Which endpoint an edge vertex maps to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EndpointType {
    P,
    Q,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InteriorVertex {
    pub name: String,
    #[serde(rename = "type")]
    pub kind: EndpointType,
    pub deg: u64,
}

/// Data of a map-invariant 0-edge `E` with endpoints `p`, `q`: the ordered
/// interior 1-vertices (from `p` to `q`), the degree of the restriction to
/// `E`, and the sector tile counts (or a real-symmetry flag standing in for
/// them).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InvariantEdgeData {
    pub name: String,
    pub p: String,
    pub q: String,
    pub d_e: u64,
    pub interior: Vec<InteriorVertex>,
    #[serde(default)]
    pub sectors: BTreeMap<String, (u64, u64)>,
    #[serde(default)]
    pub real_symmetric: bool,
}

impl InvariantEdgeData {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
    }

    /// Structural validation against a portrait: interior count, type
    /// alternation along `E` (endpoints typed by their images), and degree
    /// agreement with the portrait.
    pub fn validate(&self, portrait: &RamPortrait) -> Result<()> {
        if self.interior.len() + 1 != self.d_e as usize {
            return Err(Error::InvalidEdgeData(format!(
                "edge `{}`: {} interior vertices, expected d_E - 1 = {}",
                self.name,
                self.interior.len(),
                self.d_e - 1
            )));
        }
        let type_of_endpoint = |name: &str| -> Result<EndpointType> {
            let (img, _) = portrait.image(name)?;
            if img == self.p {
                Ok(EndpointType::P)
            } else if img == self.q {
                Ok(EndpointType::Q)
            } else {
                Err(Error::InvalidEdgeData(format!(
                    "endpoint `{name}` maps to `{img}`, not an endpoint of `{}`",
                    self.name
                )))
            }
        };
        let mut types = vec![type_of_endpoint(&self.p)?];
        for v in &self.interior {
            let (img, deg) = portrait.image(&v.name)?;
            let expected = match v.kind {
                EndpointType::P => &self.p,
                EndpointType::Q => &self.q,
            };
            if img != expected {
                return Err(Error::InvalidEdgeData(format!(
                    "interior vertex `{}` maps to `{img}`, inconsistent with its type",
                    v.name
                )));
            }
            if deg != v.deg {
                return Err(Error::InvalidEdgeData(format!(
                    "interior vertex `{}`: degree {} in edge data, {} in portrait",
                    v.name, v.deg, deg
                )));
            }
            types.push(v.kind);
        }
        types.push(type_of_endpoint(&self.q)?);
        for pair in types.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::InvalidEdgeData(format!(
                    "types do not alternate along `{}`",
                    self.name
                )));
            }
        }
        for v in &self.interior {
            if let Some(&(s1, s2)) = self.sectors.get(&v.name) {
                if s1 + s2 != 2 * v.deg {
                    return Err(Error::InvalidEdgeData(format!(
                        "sector counts {s1}+{s2} at `{}` do not sum to 2*deg = {}",
                        v.name,
                        2 * v.deg
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The portrait induced on the endpoints and interior 1-vertices of an
/// invariant edge.
pub fn restricted_portrait(
    portrait: &RamPortrait,
    edge: &InvariantEdgeData,
) -> Result<RamPortrait> {
    let mut names: Vec<String> = vec![edge.p.clone(), edge.q.clone()];
    names.extend(edge.interior.iter().map(|v| v.name.clone()));
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for name in &names {
        let idx = portrait.vertex_index(name)?;
        vertices.push(portrait.vertices[idx].clone());
        let (img, deg) = portrait.image(name)?;
        if !names.contains(&img.to_string()) {
            return Err(Error::InvalidEdgeData(format!(
                "image `{img}` of `{name}` lies outside the edge; `{}` is not invariant",
                edge.name
            )));
        }
        edges.push(crate::ram::PortraitEdge { from: name.clone(), to: img.to_string(), deg });
    }
    Ok(RamPortrait { vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f1_portrait() -> RamPortrait {
        RamPortrait::from_json(
            r#"{
                "vertices": [
                    {"name": "-1", "post": true}, {"name": "1", "post": true},
                    {"name": "inf", "post": true},
                    {"name": "c0"}, {"name": "c1"}, {"name": "a0"}, {"name": "a1"}, {"name": "0"}
                ],
                "edges": [
                    {"from": "c0", "to": "-1", "deg": 3}, {"from": "c1", "to": "-1", "deg": 3},
                    {"from": "-1", "to": "1", "deg": 1}, {"from": "1", "to": "1", "deg": 1},
                    {"from": "a0", "to": "inf", "deg": 2}, {"from": "a1", "to": "inf", "deg": 2},
                    {"from": "0", "to": "inf", "deg": 2}, {"from": "inf", "to": "1", "deg": 4}
                ]
            }"#,
        )
        .unwrap()
    }

    pub fn f1_edge() -> InvariantEdgeData {
        InvariantEdgeData::from_json(
            r#"{
                "name": "[1,inf]", "p": "1", "q": "inf", "d_e": 2,
                "interior": [{"name": "a0", "type": "q", "deg": 2}],
                "sectors": {"a0": [2, 2]}
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn f1_edge_validates() {
        f1_edge().validate(&f1_portrait()).unwrap();
    }

    #[test]
    fn f1_restricted_portrait() {
        let r = restricted_portrait(&f1_portrait(), &f1_edge()).unwrap();
        assert_eq!(r.vertices.len(), 3);
        assert_eq!(r.image("a0").unwrap(), ("inf", 2));
        assert_eq!(r.image("inf").unwrap(), ("1", 4));
        assert_eq!(r.image("1").unwrap(), ("1", 1));
    }

    #[test]
    fn alternation_violation_is_rejected() {
        let portrait = f1_portrait();
        let bad = InvariantEdgeData::from_json(
            r#"{
                "name": "[1,inf]", "p": "1", "q": "inf", "d_e": 2,
                "interior": [{"name": "inf", "type": "p", "deg": 4}]
            }"#,
        )
        .unwrap();
        assert!(bad.validate(&portrait).is_err());
    }
}
