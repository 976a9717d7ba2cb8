use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{Arrangement, Region};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexRow {
    pub id: usize,
    /// Surrounding faces, counter-clockwise starting left of the first edge.
    pub faces: Vec<String>,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Description {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub valid: bool,
    /// Internal faces sharing an edge, per internal face.
    pub adjacency: BTreeMap<String, Vec<String>>,
    pub vertex_table: Vec<VertexRow>,
    /// Puncture count of each single internal face.
    pub punctures: BTreeMap<String, usize>,
}

impl Arrangement {
    pub fn describe(&self) -> Description {
        let mut adjacency = BTreeMap::new();
        let mut punctures = BTreeMap::new();
        for f in self.internal_faces() {
            let neighbours =
                Region::from_bits(self.face_adjacency[f]).faces().map(|g| self.faces[g].clone()).collect::<Vec<_>>();
            adjacency.insert(self.faces[f].clone(), neighbours);
            let k = self.total_punctures(Region::from_bits(1 << f)).expect("internal face is a region");
            punctures.insert(self.faces[f].clone(), k);
        }
        let vertex_table = self
            .vertices
            .iter()
            .enumerate()
            .map(|(v, vert)| VertexRow {
                id: vert.id,
                faces: vert.edges.iter().map(|&e| self.faces[self.left_of(self.outgoing(e, v))].clone()).collect(),
                edges: vert.edges.iter().map(|&e| self.edges[e].id).collect(),
            })
            .collect();
        Description {
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            faces: self.faces.len(),
            valid: self.is_valid(),
            adjacency,
            vertex_table,
            punctures,
        }
    }
}

impl fmt::Display for Description {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "V = {}, E = {}, F = {} ({})", self.vertices, self.edges, self.faces, if self.valid { "valid" } else { "INVALID" })?;
        writeln!(f, "adjacency:")?;
        for (face, adj) in &self.adjacency {
            writeln!(f, "  {face}: {}", adj.join(" "))?;
        }
        writeln!(f, "vertices:")?;
        for row in &self.vertex_table {
            let edges: Vec<String> = row.edges.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  {:>3}  faces ({})  edges [{}]", row.id, row.faces.join(", "), edges.join(", "))?;
        }
        writeln!(f, "single-face punctures:")?;
        for (face, k) in &self.punctures {
            writeln!(f, "  {face}: {k}")?;
        }
        Ok(())
    }
}
