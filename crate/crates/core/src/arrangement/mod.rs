//! Trivalent planar maps modelling a disk partition.
//!
//! Faces are the named regions plus the outer region `O`; gluing `O` onto the
//! disk closes it into a sphere, so a valid arrangement satisfies
//! `V - E + F = 2`. Edges are oriented (`v1 → v2`) and record the face on
//! each side; every vertex lists its three incident edges in
//! counter-clockwise order. Geometry never enters: every count the
//! evaluators need is a function of incidence alone.

mod builtin;
mod counting;
mod describe;
mod json;
pub mod random;
mod validate;

use std::fmt;

use thiserror::Error;

use crate::party::{check_label_shape, MAX_PARTIES, OUTER_LABEL};

pub use builtin::{kp_disk3, resolved_pie, resolved_pie_with, strips, Builtin};
pub use counting::ComponentCounts;
pub use describe::{Description, VertexRow};
pub use json::{ArrangementJson, EdgeJson, VertexJson};
pub use validate::{ValidationReport, Violation};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArrangementError {
    #[error("face list must contain the outer region \"O\"")]
    MissingOuter,
    #[error("duplicate face {0:?}")]
    DuplicateFace(String),
    #[error("invalid face label {0:?}")]
    BadFaceLabel(String),
    #[error("too many faces: {0} (at most {MAX_PARTIES})")]
    TooManyFaces(usize),
    #[error("unknown face {0:?}")]
    UnknownFace(String),
    #[error("duplicate {kind} id {id}")]
    DuplicateId { kind: &'static str, id: usize },
    #[error("edge {edge} references unknown vertex {vertex}")]
    UnknownVertex { edge: usize, vertex: usize },
    #[error("vertex {vertex} references unknown edge {edge}")]
    UnknownEdge { vertex: usize, edge: usize },
    #[error("region must not contain the outer face")]
    OuterInRegion,
    #[error("region is empty")]
    EmptyRegion,
    #[error("unknown builtin geometry {0:?} (expected kp_disk3, pie<n> or strips<n>)")]
    UnknownBuiltin(String),
    #[error("{name}: n = {n} out of range (need n >= {min})")]
    SizeOutOfRange { name: &'static str, n: usize, min: usize },
    #[error("invalid triangulation: {0}")]
    BadTriangulation(String),
    #[error("arrangement is invalid: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: usize,
    pub v1: usize,
    pub v2: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: usize,
    /// Incident edges (indices into the edge list), counter-clockwise.
    pub edges: Vec<usize>,
}

/// A set of internal faces, as a bitmask over face indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Region(u64);

impl Region {
    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_bits(bits: u64) -> Self {
        Region(bits)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, face: usize) -> bool {
        self.0 >> face & 1 == 1
    }

    pub fn faces(self) -> impl Iterator<Item = usize> {
        crate::party::PartySet::from_bits(self.0).iter()
    }
}

/// Half-edge: an edge traversed forwards (`v1 → v2`) or backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct HalfEdge {
    pub edge: usize,
    pub forward: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement {
    faces: Vec<String>,
    outer: usize,
    edges: Vec<Edge>,
    vertices: Vec<Vertex>,
    /// Faces around each vertex, from edge endpoints and sides.
    vertex_faces: Vec<u64>,
    /// Internal faces sharing an edge with each face.
    face_adjacency: Vec<u64>,
}

impl Arrangement {
    /// Assemble from index-based parts. Only referential integrity is checked
    /// here; topological conditions are reported by [`Arrangement::validate`].
    pub fn from_parts(faces: Vec<String>, edges: Vec<Edge>, vertices: Vec<Vertex>) -> Result<Self, ArrangementError> {
        if faces.len() > MAX_PARTIES {
            return Err(ArrangementError::TooManyFaces(faces.len()));
        }
        for (i, f) in faces.iter().enumerate() {
            check_label_shape(f).map_err(|_| ArrangementError::BadFaceLabel(f.clone()))?;
            if faces[..i].contains(f) {
                return Err(ArrangementError::DuplicateFace(f.clone()));
            }
        }
        let outer = faces.iter().position(|f| f == OUTER_LABEL).ok_or(ArrangementError::MissingOuter)?;
        for e in &edges {
            for v in [e.v1, e.v2] {
                if v >= vertices.len() {
                    return Err(ArrangementError::UnknownVertex { edge: e.id, vertex: v });
                }
            }
            for f in [e.left, e.right] {
                if f >= faces.len() {
                    return Err(ArrangementError::UnknownFace(format!("#{f}")));
                }
            }
        }
        for v in &vertices {
            if let Some(&e) = v.edges.iter().find(|&&e| e >= edges.len()) {
                return Err(ArrangementError::UnknownEdge { vertex: v.id, edge: e });
            }
        }
        let mut vertex_faces = vec![0u64; vertices.len()];
        let mut face_adjacency = vec![0u64; faces.len()];
        for e in &edges {
            let sides = 1u64 << e.left | 1u64 << e.right;
            vertex_faces[e.v1] |= sides;
            vertex_faces[e.v2] |= sides;
            if e.left != outer && e.right != outer && e.left != e.right {
                face_adjacency[e.left] |= 1 << e.right;
                face_adjacency[e.right] |= 1 << e.left;
            }
        }
        Ok(Arrangement { faces, outer, edges, vertices, vertex_faces, face_adjacency })
    }

    /// Build from edges alone, deriving each vertex's rotation from the side
    /// labels. Vertices whose labels admit no consistent rotation keep their
    /// edges in input order and are flagged by validation.
    pub fn from_edges(faces: Vec<String>, vertex_count: usize, edges: Vec<Edge>) -> Result<Self, ArrangementError> {
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
        for (i, e) in edges.iter().enumerate() {
            if e.v1 >= vertex_count || e.v2 >= vertex_count {
                return Err(ArrangementError::UnknownVertex { edge: e.id, vertex: e.v1.max(e.v2) });
            }
            incident[e.v1].push(i);
            if e.v2 != e.v1 {
                incident[e.v2].push(i);
            }
        }
        let vertices = incident
            .into_iter()
            .enumerate()
            .map(|(v, list)| {
                let ordered = rotation_from_labels(&edges, v, &list).unwrap_or(list);
                Vertex { id: v, edges: ordered }
            })
            .collect();
        Arrangement::from_parts(faces, edges, vertices)
    }

    pub fn faces(&self) -> &[String] {
        &self.faces
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn outer(&self) -> usize {
        self.outer
    }

    pub fn face_index(&self, label: &str) -> Option<usize> {
        self.faces.iter().position(|f| f == label)
    }

    /// Internal faces in declaration order.
    pub fn internal_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(move |&f| f != self.outer)
    }

    pub fn internal_labels(&self) -> Vec<String> {
        self.internal_faces().map(|f| self.faces[f].clone()).collect()
    }

    pub fn all_internal(&self) -> Region {
        Region(self.internal_faces().fold(0, |acc, f| acc | 1 << f))
    }

    pub fn vertex_faces(&self, v: usize) -> u64 {
        self.vertex_faces[v]
    }

    pub fn face_adjacency(&self, f: usize) -> u64 {
        self.face_adjacency[f]
    }

    pub fn region<S: AsRef<str>>(&self, labels: &[S]) -> Result<Region, ArrangementError> {
        let mut bits = 0u64;
        for l in labels {
            let l = l.as_ref();
            let f = self.face_index(l).ok_or_else(|| ArrangementError::UnknownFace(l.to_string()))?;
            if f == self.outer {
                return Err(ArrangementError::OuterInRegion);
            }
            bits |= 1 << f;
        }
        Ok(Region(bits))
    }

    pub(crate) fn check_region(&self, r: Region) -> Result<(), ArrangementError> {
        if r.is_empty() {
            return Err(ArrangementError::EmptyRegion);
        }
        if r.contains(self.outer) {
            return Err(ArrangementError::OuterInRegion);
        }
        if r.0 >> self.faces.len() != 0 {
            return Err(ArrangementError::UnknownFace(format!("#{}", 63 - r.0.leading_zeros())));
        }
        Ok(())
    }

    pub fn region_label(&self, r: Region) -> String {
        let names: Vec<&str> = r.faces().map(|f| self.faces[f].as_str()).collect();
        if names.iter().all(|n| n.len() == 1) {
            names.concat()
        } else {
            names.join(",")
        }
    }

    /// Rename faces; `map` pairs old labels with new ones and must keep the
    /// outer region fixed.
    pub fn relabel_faces(&self, map: &[(&str, &str)]) -> Result<Self, ArrangementError> {
        let mut faces = self.faces.clone();
        for (from, to) in map {
            if *from == OUTER_LABEL || *to == OUTER_LABEL {
                return Err(ArrangementError::OuterInRegion);
            }
            let i = self.face_index(from).ok_or_else(|| ArrangementError::UnknownFace(from.to_string()))?;
            faces[i] = to.to_string();
        }
        Arrangement::from_parts(faces, self.edges.clone(), self.vertices.clone())
    }

    pub(crate) fn origin(&self, h: HalfEdge) -> usize {
        let e = &self.edges[h.edge];
        if h.forward {
            e.v1
        } else {
            e.v2
        }
    }

    pub(crate) fn target(&self, h: HalfEdge) -> usize {
        let e = &self.edges[h.edge];
        if h.forward {
            e.v2
        } else {
            e.v1
        }
    }

    pub(crate) fn left_of(&self, h: HalfEdge) -> usize {
        let e = &self.edges[h.edge];
        if h.forward {
            e.left
        } else {
            e.right
        }
    }

    pub(crate) fn right_of(&self, h: HalfEdge) -> usize {
        let e = &self.edges[h.edge];
        if h.forward {
            e.right
        } else {
            e.left
        }
    }

    /// Outgoing half-edge of `edge` at vertex `v`.
    pub(crate) fn outgoing(&self, edge: usize, v: usize) -> HalfEdge {
        HalfEdge { edge, forward: self.edges[edge].v1 == v }
    }

    /// Next half-edge along the boundary of the face on the left of `h`:
    /// the counter-clockwise predecessor of the twin at the target vertex.
    pub(crate) fn next_in_face(&self, h: HalfEdge) -> Option<HalfEdge> {
        let w = self.target(h);
        let rot = &self.vertices[w].edges;
        let at = rot.iter().position(|&e| e == h.edge)?;
        let prev = rot[(at + rot.len() - 1) % rot.len()];
        Some(self.outgoing(prev, w))
    }

    /// Boundary walks: orbits of [`Self::next_in_face`] over all half-edges.
    pub(crate) fn face_walks(&self) -> Option<Vec<Vec<HalfEdge>>> {
        let mut seen = vec![[false; 2]; self.edges.len()];
        let mut walks = Vec::new();
        for e in 0..self.edges.len() {
            for forward in [true, false] {
                if seen[e][forward as usize] {
                    continue;
                }
                let start = HalfEdge { edge: e, forward };
                let mut walk = Vec::new();
                let mut h = start;
                loop {
                    if seen[h.edge][h.forward as usize] {
                        if h == start {
                            break;
                        }
                        return None;
                    }
                    seen[h.edge][h.forward as usize] = true;
                    walk.push(h);
                    h = self.next_in_face(h)?;
                }
                walks.push(walk);
            }
        }
        Some(walks)
    }
}

/// Order the edges at `v` so that consecutive outgoing half-edges satisfy
/// `left(h_i) = right(h_{i+1})`.
fn rotation_from_labels(edges: &[Edge], v: usize, list: &[usize]) -> Option<Vec<usize>> {
    if list.len() != 3 {
        return None;
    }
    let sides = |e: usize| {
        let ed = &edges[e];
        if ed.v1 == v {
            (ed.left, ed.right)
        } else {
            (ed.right, ed.left)
        }
    };
    [[list[0], list[1], list[2]], [list[0], list[2], list[1]]]
        .into_iter()
        .find(|order| (0..3).all(|i| sides(order[i]).0 == sides(order[(i + 1) % 3]).1))
        .map(|o| o.to_vec())
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "arrangement: {} faces ({} internal), {} edges, {} vertices",
            self.faces.len(),
            self.faces.len() - 1,
            self.edges.len(),
            self.vertices.len()
        )
    }
}
