//! Random valid arrangements for property tests and sweeps.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::party::default_labels;

use super::builtin::strips_with;
use super::{resolved_pie_with, Arrangement, Edge, HalfEdge};

/// Random triangulation of the polygon on corners `0..n` by clipping random
/// ears.
pub fn random_triangulation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<[usize; 3]> {
    let mut ring: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n.saturating_sub(2));
    while ring.len() > 3 {
        let i = rng.random_range(0..ring.len());
        let m = ring.len();
        out.push([ring[(i + m - 1) % m], ring[i], ring[(i + 1) % m]]);
        ring.remove(i);
    }
    if ring.len() == 3 {
        out.push([ring[0], ring[1], ring[2]]);
    }
    out
}

fn shuffled_labels<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<String> {
    let mut labels = default_labels(n);
    labels.shuffle(rng);
    labels
}

/// Pie with `n >= 3` sectors, a random resolution of the centre and
/// shuffled labels.
pub fn random_pie<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Arrangement {
    let tris = random_triangulation(rng, n);
    resolved_pie_with(&shuffled_labels(rng, n), &tris).expect("ear clipping yields a triangulation")
}

/// `n >= 2` strips with shuffled labels.
pub fn random_strips<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Arrangement {
    strips_with(&shuffled_labels(rng, n)).expect("n >= 2")
}

/// Arrangement with `n >= 3` internal faces grown from a small pie or strip
/// by repeatedly cutting a random internal face in two with a chord.
pub fn random_split_map<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Arrangement {
    let labels = shuffled_labels(rng, n);
    let start = rng.random_range(2..=n.min(4));
    let mut a = if start >= 3 && rng.random_bool(0.5) {
        resolved_pie_with(&labels[..start], &random_triangulation(rng, start)).expect("triangulation")
    } else {
        strips_with(&labels[..start]).expect("n >= 2")
    };
    for label in &labels[start..] {
        a = split_face(&a, rng, label);
    }
    a
}

/// Any of the three generators, chosen uniformly.
pub fn random_arrangement<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Arrangement {
    match rng.random_range(0..3) {
        0 => random_pie(rng, n),
        1 => random_strips(rng, n),
        _ => random_split_map(rng, n),
    }
}

/// Cut a random internal face by a chord between two of its boundary
/// edges; the part after the first cut point gets the new label.
fn split_face<R: Rng + ?Sized>(a: &Arrangement, rng: &mut R, new_label: &str) -> Arrangement {
    let walks = a.face_walks().expect("valid arrangement");
    let internal: Vec<&Vec<HalfEdge>> = walks.iter().filter(|w| a.left_of(w[0]) != a.outer()).collect();
    let walk = internal[rng.random_range(0..internal.len())];
    let f = a.left_of(walk[0]);
    let m = walk.len();
    let i = rng.random_range(0..m);
    let j = (i + rng.random_range(1..m)) % m;
    let (i, j) = (i.min(j), i.max(j));

    let mut faces = a.faces().to_vec();
    let g = faces.len();
    faces.push(new_label.to_string());
    let mut edges: Vec<Edge> = a.edges().to_vec();
    let nv = a.vertices().len();
    let (x1, x2) = (nv, nv + 1);

    // half-edges strictly between the two cut edges switch to the new face
    for h in &walk[i + 1..j] {
        let e = &mut edges[h.edge];
        if h.forward {
            e.left = g;
        } else {
            e.right = g;
        }
    }
    // subdivide: the part of a cut edge after the cut point (in walk
    // direction) of h_i and the part before it of h_j border the new face
    let mut subdivide = |h: HalfEdge, x: usize, new_side_after: bool| {
        let old = edges[h.edge];
        let (from, to) = (a.origin(h), a.target(h));
        let (left, right) = (a.left_of(h), a.right_of(h));
        let (before, after) = if new_side_after { (left, g) } else { (g, left) };
        // rewrite the original edge as the first half, in walk direction
        edges[h.edge] = Edge { id: old.id, v1: from, v2: x, left: before, right };
        let id = edges.len();
        edges.push(Edge { id, v1: x, v2: to, left: after, right });
    };
    subdivide(walk[i], x1, true);
    subdivide(walk[j], x2, false);
    let id = edges.len();
    edges.push(Edge { id, v1: x1, v2: x2, left: f, right: g });
    Arrangement::from_edges(faces, nv + 2, edges).expect("split keeps references intact")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_maps_are_valid() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(3..=9);
            for a in [random_pie(&mut rng, n), random_strips(&mut rng, n), random_split_map(&mut rng, n)] {
                let report = a.validate();
                assert!(report.is_valid(), "{report}\n{}", a.to_json_string());
                assert_eq!(a.faces().len(), n + 1);
            }
        }
    }

    #[test]
    fn triangulation_size() {
        let mut rng = StdRng::seed_from_u64(1);
        for n in 3..12 {
            assert_eq!(random_triangulation(&mut rng, n).len(), n - 2);
        }
    }
}
