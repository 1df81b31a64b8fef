use crate::error::{Error, Result};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Ramification portrait: the directed graph of marked points with local
/// degrees. Every vertex has exactly one out-edge (its image under the map).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RamPortrait {
    pub vertices: Vec<PortraitVertex>,
    pub edges: Vec<PortraitEdge>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PortraitVertex {
    pub name: String,
    #[serde(default)]
    pub post: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PortraitEdge {
    pub from: String,
    pub to: String,
    pub deg: u64,
}

/// Ramification value: a positive integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Alpha {
    Finite(u64),
    Infinity,
}

impl Alpha {
    pub fn lcm(self, other: Alpha) -> Option<Alpha> {
        match (self, other) {
            (Alpha::Infinity, _) | (_, Alpha::Infinity) => Some(Alpha::Infinity),
            (Alpha::Finite(a), Alpha::Finite(b)) => {
                let g = a.gcd(&b);
                (a / g).checked_mul(b).map(Alpha::Finite)
            }
        }
    }

    pub fn times(self, k: u64) -> Option<Alpha> {
        match self {
            Alpha::Infinity => Some(Alpha::Infinity),
            Alpha::Finite(a) => a.checked_mul(k).map(Alpha::Finite),
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Finite(a) => write!(f, "{a}"),
            Alpha::Infinity => write!(f, "inf"),
        }
    }
}

impl RamPortrait {
    pub fn from_json(text: &str) -> Result<Self> {
        let p: RamPortrait =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Image vertex and local degree of `name`.
    pub fn image(&self, name: &str) -> Result<(&str, u64)> {
        self.edges
            .iter()
            .find(|e| e.from == name)
            .map(|e| (e.to.as_str(), e.deg))
            .ok_or_else(|| Error::InvalidPortrait(format!("vertex `{name}` has no out-edge")))
    }

    pub fn deg(&self, name: &str) -> Result<u64> {
        Ok(self.image(name)?.1)
    }

    pub fn is_post(&self, name: &str) -> bool {
        self.vertices.iter().any(|v| v.name == name && v.post)
    }

    /// Checks the portrait invariants: out-degree exactly one, degrees >= 1,
    /// the postcritical set closed under the map, and the image of every
    /// critical vertex postcritical (so every critical vertex eventually
    /// reaches a postcritical-flagged vertex).
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeMap::new();
        for v in &self.vertices {
            if seen.insert(v.name.clone(), v.post).is_some() {
                return Err(Error::InvalidPortrait(format!("vertex `{}` declared twice", v.name)));
            }
        }
        let mut out = BTreeMap::new();
        for e in &self.edges {
            if e.deg == 0 {
                return Err(Error::InvalidPortrait(format!(
                    "edge {} -> {} has degree 0",
                    e.from, e.to
                )));
            }
            if !seen.contains_key(&e.from) {
                return Err(Error::UnknownVertex(e.from.clone()));
            }
            if !seen.contains_key(&e.to) {
                return Err(Error::UnknownVertex(e.to.clone()));
            }
            if out.insert(e.from.clone(), e.to.clone()).is_some() {
                return Err(Error::InvalidPortrait(format!(
                    "vertex `{}` has two out-edges",
                    e.from
                )));
            }
        }
        for v in &self.vertices {
            let to = out
                .get(&v.name)
                .ok_or_else(|| Error::InvalidPortrait(format!("vertex `{}` has no out-edge", v.name)))?;
            if v.post && !seen[to] {
                return Err(Error::InvalidPortrait(format!(
                    "postcritical set not closed: `{}` maps to non-post `{}`",
                    v.name, to
                )));
            }
        }
        for e in &self.edges {
            if e.deg >= 2 && !seen[&e.to] {
                return Err(Error::InvalidPortrait(format!(
                    "critical value `{}` (image of `{}`) is not flagged postcritical",
                    e.to, e.from
                )));
            }
        }
        Ok(())
    }

    /// Ramification function: the least fixpoint of
    /// `alpha(p) = lcm over preimages q of p of deg(q) * alpha(q)`,
    /// seeded with 1. A cycle whose local degrees multiply beyond 1 forces
    /// infinity on the cycle (and so on everything it feeds, but in a
    /// functional graph nothing lies downstream of a cycle but the cycle).
    pub fn ramification_function(&self) -> Result<BTreeMap<String, Alpha>> {
        self.validate()?;
        let n = self.vertices.len();
        let idx: BTreeMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.name.as_str(), i))
            .collect();
        let mut succ = vec![0usize; n];
        let mut deg = vec![1u64; n];
        for e in &self.edges {
            succ[idx[e.from.as_str()]] = idx[e.to.as_str()];
            deg[idx[e.from.as_str()]] = e.deg;
        }

        let mut alpha = vec![Alpha::Finite(1); n];

        // Mark heavy cycles as infinite first.
        for start in 0..n {
            // walk to find the cycle reachable from `start`
            let mut slow = start;
            let mut fast = start;
            loop {
                slow = succ[slow];
                fast = succ[succ[fast]];
                if slow == fast {
                    break;
                }
            }
            // measure the cycle through `slow`
            let mut prod: u64 = 1;
            let mut x = succ[slow];
            let mut cycle = vec![slow];
            prod = prod.saturating_mul(deg[slow]);
            while x != slow {
                cycle.push(x);
                prod = prod.saturating_mul(deg[x]);
                x = succ[x];
            }
            if prod > 1 {
                for v in cycle {
                    alpha[v] = Alpha::Infinity;
                }
            }
        }

        // Kleene iteration; values only grow in divisibility order and are
        // bounded once heavy cycles are already infinite.
        loop {
            let mut changed = false;
            for p in 0..n {
                let mut acc = Alpha::Finite(1);
                for q in 0..n {
                    if succ[q] == p {
                        let contrib = alpha[q]
                            .times(deg[q])
                            .ok_or_else(|| Error::AlphaOverflow(self.vertices[p].name.clone()))?;
                        acc = acc
                            .lcm(contrib)
                            .ok_or_else(|| Error::AlphaOverflow(self.vertices[p].name.clone()))?;
                    }
                }
                let next = alpha[p]
                    .lcm(acc)
                    .ok_or_else(|| Error::AlphaOverflow(self.vertices[p].name.clone()))?;
                if next != alpha[p] {
                    alpha[p] = next;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }

        Ok(self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.name.clone(), alpha[i]))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn f1_portrait() -> RamPortrait {
        RamPortrait::from_json(
            r#"{
                "vertices": [
                    {"name": "-1", "post": true},
                    {"name": "1", "post": true},
                    {"name": "inf", "post": true},
                    {"name": "c0"}, {"name": "c1"},
                    {"name": "a0"}, {"name": "a1"},
                    {"name": "0"}
                ],
                "edges": [
                    {"from": "c0", "to": "-1", "deg": 3},
                    {"from": "c1", "to": "-1", "deg": 3},
                    {"from": "-1", "to": "1", "deg": 1},
                    {"from": "1", "to": "1", "deg": 1},
                    {"from": "a0", "to": "inf", "deg": 2},
                    {"from": "a1", "to": "inf", "deg": 2},
                    {"from": "0", "to": "inf", "deg": 2},
                    {"from": "inf", "to": "1", "deg": 4}
                ]
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn f1_alpha_values() {
        let alpha = f1_portrait().ramification_function().unwrap();
        assert_eq!(alpha["1"], Alpha::Finite(24));
        assert_eq!(alpha["-1"], Alpha::Finite(3));
        assert_eq!(alpha["inf"], Alpha::Finite(2));
        // non-post marked points have alpha 1
        assert_eq!(alpha["c0"], Alpha::Finite(1));
    }

    #[test]
    fn single_fixed_regular_point() {
        let p = RamPortrait::from_json(
            r#"{"vertices":[{"name":"p","post":true}],
                "edges":[{"from":"p","to":"p","deg":1}]}"#,
        )
        .unwrap();
        assert_eq!(p.ramification_function().unwrap()["p"], Alpha::Finite(1));
    }

    #[test]
    fn periodic_critical_point_diverges() {
        // 0 -2:1-> -1 -> 0
        let p = RamPortrait::from_json(
            r#"{"vertices":[{"name":"0","post":true},{"name":"-1","post":true}],
                "edges":[{"from":"0","to":"-1","deg":2},{"from":"-1","to":"0","deg":1}]}"#,
        )
        .unwrap();
        let alpha = p.ramification_function().unwrap();
        assert_eq!(alpha["0"], Alpha::Infinity);
        assert_eq!(alpha["-1"], Alpha::Infinity);
    }

    #[test]
    fn unflagged_critical_value_is_rejected() {
        let bad = RamPortrait::from_json(
            r#"{"vertices":[{"name":"c"},{"name":"v"}],
                "edges":[{"from":"c","to":"v","deg":2},{"from":"v","to":"v","deg":1}]}"#,
        );
        assert!(bad.is_err());
    }
}
