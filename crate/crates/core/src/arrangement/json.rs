//! Arrangement files.
//!
//! ```json
//! {"faces": ["A", "B", "C", "O"],
//!  "edges": [{"id": 0, "v1": 0, "v2": 1, "left": "A", "right": "O"}, ...],
//!  "vertices": [{"id": 0, "edges": [0, 3, 5]}, ...]}
//! ```
//!
//! Ids are arbitrary distinct integers. Vertex edge lists are
//! counter-clockwise; when `vertices` is omitted the rotation at each vertex
//! is derived from the edge side labels.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Arrangement, ArrangementError, Edge, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementJson {
    pub faces: Vec<String>,
    pub edges: Vec<EdgeJson>,
    #[serde(default)]
    pub vertices: Vec<VertexJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub id: usize,
    pub v1: usize,
    pub v2: usize,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub id: usize,
    pub edges: Vec<usize>,
}

impl Arrangement {
    pub fn to_json(&self) -> ArrangementJson {
        ArrangementJson {
            faces: self.faces.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    id: e.id,
                    v1: self.vertices[e.v1].id,
                    v2: self.vertices[e.v2].id,
                    left: self.faces[e.left].clone(),
                    right: self.faces[e.right].clone(),
                })
                .collect(),
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexJson { id: v.id, edges: v.edges.iter().map(|&e| self.edges[e].id).collect() })
                .collect(),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("arrangement JSON is always serialisable")
    }

    pub fn from_json(json: &ArrangementJson) -> Result<Self, ArrangementError> {
        let face = |label: &str| {
            json.faces.iter().position(|f| f == label).ok_or_else(|| ArrangementError::UnknownFace(label.to_string()))
        };
        let mut edge_index = HashMap::new();
        for (i, e) in json.edges.iter().enumerate() {
            if edge_index.insert(e.id, i).is_some() {
                return Err(ArrangementError::DuplicateId { kind: "edge", id: e.id });
            }
        }
        let mut vertex_index = HashMap::new();
        if json.vertices.is_empty() {
            let mut ids: Vec<usize> = json.edges.iter().flat_map(|e| [e.v1, e.v2]).collect();
            ids.sort_unstable();
            ids.dedup();
            vertex_index.extend(ids.iter().enumerate().map(|(i, &id)| (id, i)));
        } else {
            for (i, v) in json.vertices.iter().enumerate() {
                if vertex_index.insert(v.id, i).is_some() {
                    return Err(ArrangementError::DuplicateId { kind: "vertex", id: v.id });
                }
            }
        }
        let vertex = |edge: usize, id: usize| {
            vertex_index.get(&id).copied().ok_or(ArrangementError::UnknownVertex { edge, vertex: id })
        };
        let edges = json
            .edges
            .iter()
            .map(|e| {
                Ok(Edge { id: e.id, v1: vertex(e.id, e.v1)?, v2: vertex(e.id, e.v2)?, left: face(&e.left)?, right: face(&e.right)? })
            })
            .collect::<Result<Vec<_>, ArrangementError>>()?;
        if json.vertices.is_empty() {
            let mut a = Arrangement::from_edges(json.faces.clone(), vertex_index.len(), edges)?;
            let mut ids: Vec<(usize, usize)> = vertex_index.into_iter().collect();
            ids.sort_unstable_by_key(|&(_, i)| i);
            for (id, i) in ids {
                a.vertices[i].id = id;
            }
            return Ok(a);
        }
        let vertices = json
            .vertices
            .iter()
            .map(|v| {
                let edges = v
                    .edges
                    .iter()
                    .map(|id| edge_index.get(id).copied().ok_or(ArrangementError::UnknownEdge { vertex: v.id, edge: *id }))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Vertex { id: v.id, edges })
            })
            .collect::<Result<Vec<_>, ArrangementError>>()?;
        Arrangement::from_parts(json.faces.clone(), edges, vertices)
    }

    pub fn from_json_str(text: &str) -> Result<Self, ArrangementError> {
        let json: ArrangementJson = serde_json::from_str(text).map_err(|e| ArrangementError::Invalid(e.to_string()))?;
        Arrangement::from_json(&json)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{resolved_pie, strips};

    #[test]
    fn round_trip() {
        for a in [resolved_pie(6).unwrap(), strips(4).unwrap()] {
            let text = a.to_json_string();
            assert_eq!(Arrangement::from_json_str(&text).unwrap(), a);
        }
    }

    #[test]
    fn rotation_derived_when_vertices_omitted() {
        let a = resolved_pie(5).unwrap();
        let mut json = a.to_json();
        json.vertices.clear();
        let b = Arrangement::from_json(&json).unwrap();
        assert!(b.is_valid());
        assert_eq!(b.describe().punctures, a.describe().punctures);
    }

    #[test]
    fn unknown_references() {
        let text = r#"{"faces":["A","O"],"edges":[{"id":0,"v1":0,"v2":1,"left":"A","right":"X"}]}"#;
        assert!(matches!(Arrangement::from_json_str(text), Err(ArrangementError::UnknownFace(_))));
        let text = r#"{"faces":["A","O"],"edges":[{"id":0,"v1":0,"v2":1,"left":"A","right":"O"}],"vertices":[{"id":0,"edges":[7]},{"id":1,"edges":[0]}]}"#;
        assert!(matches!(Arrangement::from_json_str(text), Err(ArrangementError::UnknownEdge { .. })));
        assert!(Arrangement::from_json_str(r#"{"faces":["A"],"edges":[]}"#).is_err());
    }
}
