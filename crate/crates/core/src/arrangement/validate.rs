use std::fmt;

use serde::Serialize;

use super::{Arrangement, HalfEdge};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    Degree { vertex: usize, degree: usize },
    RepeatedFace { vertex: usize },
    RotationMismatch { vertex: usize },
    NotIncident { vertex: usize, edge: usize },
    SelfLoop { edge: usize },
    SameSides { edge: usize },
    Euler { v: usize, e: usize, f: usize },
    Disconnected { components: usize },
    FaceNotDisk { face: String, walks: usize },
    ShortWalk { face: String, vertices: usize },
    MissingFace { face: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Degree { vertex, degree } => write!(f, "vertex {vertex} has degree {degree} (need 3)"),
            Violation::RepeatedFace { vertex } => write!(f, "vertex {vertex}: the three surrounding faces are not distinct"),
            Violation::RotationMismatch { vertex } => {
                write!(f, "vertex {vertex}: edge order disagrees with the face labels")
            }
            Violation::NotIncident { vertex, edge } => write!(f, "vertex {vertex} lists edge {edge}, which does not end there"),
            Violation::SelfLoop { edge } => write!(f, "edge {edge} is a self-loop"),
            Violation::SameSides { edge } => write!(f, "edge {edge} has the same face on both sides"),
            Violation::Euler { v, e, f: faces } => {
                write!(f, "V - E + F = {v} - {e} + {faces} = {} (need 2)", *v as i64 - *e as i64 + *faces as i64)
            }
            Violation::Disconnected { components } => write!(f, "map has {components} connected components"),
            Violation::FaceNotDisk { face, walks } => write!(f, "face {face} has {walks} boundary walks (need 1)"),
            Violation::ShortWalk { face, vertices } => {
                write!(f, "boundary of face {face} visits {vertices} vertex (need at least 2)")
            }
            Violation::MissingFace { face } => write!(f, "face {face} has no edges"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "V = {}, E = {}, F = {}", self.vertices, self.edges, self.faces)?;
        if self.is_valid() {
            return writeln!(f, "valid");
        }
        writeln!(f, "invalid: {} violation(s)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  - {v}")?;
        }
        Ok(())
    }
}

impl Arrangement {
    pub fn validate(&self) -> ValidationReport {
        let mut out = Vec::new();
        let (nv, ne, nf) = (self.vertices.len(), self.edges.len(), self.faces.len());

        for (i, e) in self.edges.iter().enumerate() {
            if e.v1 == e.v2 {
                out.push(Violation::SelfLoop { edge: e.id });
            }
            if e.left == e.right {
                out.push(Violation::SameSides { edge: self.edges[i].id });
            }
        }

        // edge-ends per vertex as recorded on the edges
        let mut ends = vec![0usize; nv];
        for e in &self.edges {
            ends[e.v1] += 1;
            ends[e.v2] += 1;
        }
        let mut rotations_ok = true;
        for (v, vert) in self.vertices.iter().enumerate() {
            let listed = vert.edges.len();
            if listed != 3 || ends[v] != 3 {
                out.push(Violation::Degree { vertex: vert.id, degree: listed.max(ends[v]) });
                rotations_ok = false;
                continue;
            }
            if let Some(&e) = vert.edges.iter().find(|&&e| self.edges[e].v1 != v && self.edges[e].v2 != v) {
                out.push(Violation::NotIncident { vertex: vert.id, edge: self.edges[e].id });
                rotations_ok = false;
                continue;
            }
            if self.vertex_faces[v].count_ones() != 3 {
                out.push(Violation::RepeatedFace { vertex: vert.id });
            }
            let hs: Vec<HalfEdge> = vert.edges.iter().map(|&e| self.outgoing(e, v)).collect();
            if (0..3).any(|i| self.left_of(hs[i]) != self.right_of(hs[(i + 1) % 3])) {
                out.push(Violation::RotationMismatch { vertex: vert.id });
                rotations_ok = false;
            }
        }

        if nv as i64 - ne as i64 + nf as i64 != 2 {
            out.push(Violation::Euler { v: nv, e: ne, f: nf });
        }

        let components = self.vertex_components();
        if components > 1 {
            out.push(Violation::Disconnected { components });
        }

        let mut has_edge = vec![false; nf];
        for e in &self.edges {
            has_edge[e.left] = true;
            has_edge[e.right] = true;
        }
        for (f, seen) in has_edge.iter().enumerate() {
            if !seen {
                out.push(Violation::MissingFace { face: self.faces[f].clone() });
            }
        }

        if rotations_ok {
            if let Some(walks) = self.face_walks() {
                let mut per_face = vec![0usize; nf];
                for walk in &walks {
                    let face = self.left_of(walk[0]);
                    per_face[face] += 1;
                    let mut verts: Vec<usize> = walk.iter().map(|&h| self.origin(h)).collect();
                    verts.sort_unstable();
                    verts.dedup();
                    if verts.len() < 2 {
                        out.push(Violation::ShortWalk { face: self.faces[face].clone(), vertices: verts.len() });
                    }
                }
                for (f, &count) in per_face.iter().enumerate() {
                    if count > 1 {
                        out.push(Violation::FaceNotDisk { face: self.faces[f].clone(), walks: count });
                    }
                }
            }
        }

        ValidationReport { vertices: nv, edges: ne, faces: nf, violations: out }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    fn vertex_components(&self) -> usize {
        let n = self.vertices.len();
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            uf.union(e.v1, e.v2);
        }
        (0..n).filter(|&v| uf.find(v) == v).count()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
