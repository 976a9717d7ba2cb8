//! Punctures, connected components and boundary circuits of face unions.
//!
//! A vertex is a puncture of a union `r` when one or two of its three faces
//! lie in `r`. Two faces meeting at a trivalent vertex always share an edge
//! there, so every puncture belongs to exactly one component of `r`.

use super::validate::UnionFind;
use super::{Arrangement, ArrangementError, Region};

/// Counts for one connected component of a union.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentCounts {
    pub faces: Region,
    pub punctures: usize,
    /// Number of boundary circuits.
    pub boundary_b0: usize,
}

impl Arrangement {
    fn is_puncture(&self, v: usize, r: Region) -> bool {
        let inside = (self.vertex_faces[v] & r.bits()).count_ones();
        inside == 1 || inside == 2
    }

    /// Connected components of `r` under shared-edge adjacency, ordered by
    /// their lowest face index.
    pub fn union_components(&self, r: Region) -> Result<Vec<Region>, ArrangementError> {
        self.check_region(r)?;
        let mut left = r.bits();
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let f = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.face_adjacency[f] & r.bits() & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            left &= !comp;
            out.push(Region(comp));
        }
        Ok(out)
    }

    /// Puncture count per component, in [`Self::union_components`] order.
    pub fn boundary_punctures(&self, r: Region) -> Result<Vec<usize>, ArrangementError> {
        Ok(self.components(r)?.into_iter().map(|c| c.punctures).collect())
    }

    /// All punctures of `r`, components merged.
    pub fn total_punctures(&self, r: Region) -> Result<usize, ArrangementError> {
        self.check_region(r)?;
        Ok((0..self.vertices.len()).filter(|&v| self.is_puncture(v, r)).count())
    }

    /// Vertices that are punctures of `r`.
    pub fn puncture_vertices(&self, r: Region) -> Result<Vec<usize>, ArrangementError> {
        self.check_region(r)?;
        Ok((0..self.vertices.len()).filter(|&v| self.is_puncture(v, r)).collect())
    }

    /// Edges with exactly one side in `r`.
    pub fn boundary_edges(&self, r: Region) -> Result<Vec<usize>, ArrangementError> {
        self.check_region(r)?;
        Ok((0..self.edges.len())
            .filter(|&e| r.contains(self.edges[e].left) != r.contains(self.edges[e].right))
            .collect())
    }

    /// Number of connected components of the boundary subgraph of `r`.
    pub fn boundary_b0(&self, r: Region) -> Result<usize, ArrangementError> {
        let edges = self.boundary_edges(r)?;
        Ok(self.count_edge_components(&edges))
    }

    pub fn components(&self, r: Region) -> Result<Vec<ComponentCounts>, ArrangementError> {
        let comps = self.union_components(r)?;
        Ok(comps
            .into_iter()
            .map(|c| {
                let punctures = (0..self.vertices.len()).filter(|&v| self.is_puncture(v, c)).count();
                let edges: Vec<usize> = (0..self.edges.len())
                    .filter(|&e| c.contains(self.edges[e].left) != c.contains(self.edges[e].right))
                    .collect();
                ComponentCounts { faces: c, punctures, boundary_b0: self.count_edge_components(&edges) }
            })
            .collect())
    }

    fn count_edge_components(&self, edges: &[usize]) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        let mut touched = vec![false; self.vertices.len()];
        for &e in edges {
            let ed = &self.edges[e];
            uf.union(ed.v1, ed.v2);
            touched[ed.v1] = true;
            touched[ed.v2] = true;
        }
        (0..self.vertices.len()).filter(|&v| touched[v] && uf.find(v) == v).count()
    }
}

#[cfg(test)]
mod tests {
    use crate::arrangement::{kp_disk3, resolved_pie, strips, Arrangement, Region};

    fn reg(a: &Arrangement, s: &str) -> Region {
        let labels: Vec<String> = s.chars().map(|c| c.to_string()).collect();
        a.region(&labels).unwrap()
    }

    #[test]
    fn pie5_single_punctures() {
        let a = resolved_pie(5).unwrap();
        let counts: Vec<usize> = "ABCDE".chars().map(|c| a.total_punctures(reg(&a, &c.to_string())).unwrap()).collect();
        assert_eq!(counts, [3, 4, 4, 3, 5]);
    }

    #[test]
    fn pie5_pair_punctures() {
        let a = resolved_pie(5).unwrap();
        let expect = [
            ("AB", 5),
            ("AC", 7),
            ("AD", 6),
            ("AE", 6),
            ("BC", 6),
            ("BD", 7),
            ("BE", 7),
            ("CD", 5),
            ("CE", 7),
            ("DE", 6),
        ];
        for (pair, k) in expect {
            assert_eq!(a.total_punctures(reg(&a, pair)).unwrap(), k, "{pair}");
        }
    }

    #[test]
    fn components_and_per_component_punctures() {
        let a = resolved_pie(5).unwrap();
        assert_eq!(a.union_components(reg(&a, "AC")).unwrap().len(), 2);
        assert_eq!(a.boundary_punctures(reg(&a, "AB")).unwrap(), [5]);
        assert_eq!(a.boundary_punctures(reg(&a, "AC")).unwrap(), [3, 4]);
        assert_eq!(a.boundary_punctures(reg(&a, "ABCDE")).unwrap(), [5]);
        let kp = kp_disk3();
        assert_eq!(kp.union_components(reg(&kp, "AB")).unwrap().len(), 1);
        assert_eq!(kp.total_punctures(reg(&kp, "A")).unwrap(), 3);
        let s = strips(3).unwrap();
        assert_eq!(s.union_components(reg(&s, "AC")).unwrap().len(), 2);
    }

    #[test]
    fn betti_numbers() {
        let kp = kp_disk3();
        assert_eq!(kp.boundary_b0(reg(&kp, "ABC")).unwrap(), 1);
        let s = strips(3).unwrap();
        assert_eq!(s.boundary_b0(reg(&s, "AC")).unwrap(), 2);
        let p = resolved_pie(5).unwrap();
        assert_eq!(p.boundary_b0(reg(&p, "AB")).unwrap(), 1);
    }

    #[test]
    fn strips3_counts() {
        let s = strips(3).unwrap();
        let total = |r: &str| s.total_punctures(reg(&s, r)).unwrap();
        assert_eq!([total("A"), total("B"), total("C"), total("AB"), total("BC"), total("AC"), total("ABC")], [2, 4, 2, 4, 4, 4, 4]);
        assert_eq!(s.boundary_punctures(reg(&s, "AC")).unwrap(), [2, 2]);
    }

    #[test]
    fn bad_regions() {
        let a = kp_disk3();
        assert!(a.total_punctures(Region::default()).is_err());
        assert!(a.total_punctures(Region::from_bits(1 << a.outer())).is_err());
        assert!(a.region(&["Z"]).is_err());
    }
}
