//! Canonical arrangements.
//!
//! A pie with `n` sectors whose central `n`-fold point has been resolved into
//! triple points is the planar dual of a triangulation of an `n`-gon: polygon
//! corner `i` is sector `i`, each triangle is an internal vertex, each
//! diagonal an internal edge and each polygon side a radial edge running to
//! the outer circle. The fan from the last corner lets the last sector
//! spread inward and touch every other one.

use std::fmt;
use std::str::FromStr;

use crate::party::{default_labels, OUTER_LABEL};

use super::{Arrangement, ArrangementError, Edge};

/// Three sectors meeting at one central point.
pub fn kp_disk3() -> Arrangement {
    resolved_pie(3).expect("n = 3 is in range")
}

/// Pie with `n >= 3` sectors, resolved by the fan triangulation.
pub fn resolved_pie(n: usize) -> Result<Arrangement, ArrangementError> {
    if n < 3 {
        return Err(ArrangementError::SizeOutOfRange { name: "resolved_pie", n, min: 3 });
    }
    let fan: Vec<[usize; 3]> = (0..n - 2).map(|i| [i, i + 1, n - 1]).collect();
    resolved_pie_with(&default_labels(n), &fan)
}

/// Pie whose sectors carry `labels` (counter-clockwise) and whose centre is
/// resolved by the given triangulation of the polygon on corners
/// `0..labels.len()`.
pub fn resolved_pie_with<S: AsRef<str>>(labels: &[S], triangles: &[[usize; 3]]) -> Result<Arrangement, ArrangementError> {
    let n = labels.len();
    if n < 3 {
        return Err(ArrangementError::SizeOutOfRange { name: "resolved_pie", n, min: 3 });
    }
    if triangles.len() != n - 2 {
        return Err(ArrangementError::BadTriangulation(format!("{} triangles for {n} corners", triangles.len())));
    }
    let o = n;
    // corner pair (i, j), i < j  ->  triangles having i -> j as a ccw edge, resp. j -> i
    let mut on_left: Vec<Option<usize>> = vec![None; n * n];
    let mut on_right: Vec<Option<usize>> = vec![None; n * n];
    for (t, tri) in triangles.iter().enumerate() {
        let mut tri = *tri;
        tri.sort_unstable();
        if tri[2] >= n || tri[0] == tri[1] || tri[1] == tri[2] {
            return Err(ArrangementError::BadTriangulation(format!("triangle {t} is degenerate or out of range")));
        }
        for (a, b, forward) in [(tri[0], tri[1], true), (tri[1], tri[2], true), (tri[0], tri[2], false)] {
            let slot = if forward { &mut on_left[a * n + b] } else { &mut on_right[a * n + b] };
            if slot.replace(t).is_some() {
                return Err(ArrangementError::BadTriangulation(format!("segment ({a}, {b}) used twice on one side")));
            }
        }
    }
    // vertices: triangles first, then outer vertex s_i on the side (i, i+1)
    let outer_vertex = |i: usize| n - 2 + i;
    let mut edges = Vec::with_capacity(3 * n - 3);
    let mut push = |v1, v2, left, right| {
        let id = edges.len();
        edges.push(Edge { id, v1, v2, left, right });
    };
    for i in 0..n {
        let prev = (i + n - 1) % n;
        push(outer_vertex(prev), outer_vertex(i), i, o);
    }
    for i in 0..n {
        let j = (i + 1) % n;
        let (a, b) = (i.min(j), i.max(j));
        let t = if j == 0 { on_right[a * n + b] } else { on_left[a * n + b] };
        let t = t.ok_or_else(|| ArrangementError::BadTriangulation(format!("polygon side ({i}, {j}) not covered")))?;
        push(outer_vertex(i), t, i, j);
    }
    for a in 0..n {
        for b in a + 1..n {
            let side = b == a + 1 || (a == 0 && b == n - 1);
            match (on_left[a * n + b], on_right[a * n + b]) {
                (Some(l), Some(r)) if !side => push(l, r, b, a),
                (None, None) => {}
                _ if side => {}
                _ => return Err(ArrangementError::BadTriangulation(format!("diagonal ({a}, {b}) has one triangle"))),
            }
        }
    }
    let mut faces: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
    faces.push(OUTER_LABEL.to_string());
    Arrangement::from_edges(faces, 2 * n - 2, edges)
}

/// `n >= 2` parallel bands, each internal boundary running between two
/// points on the outer circle.
pub fn strips(n: usize) -> Result<Arrangement, ArrangementError> {
    strips_with(&default_labels(n))
}

pub(crate) fn strips_with<S: AsRef<str>>(labels: &[S]) -> Result<Arrangement, ArrangementError> {
    let n = labels.len();
    if n < 2 {
        return Err(ArrangementError::SizeOutOfRange { name: "strips", n, min: 2 });
    }
    let o = n;
    // top vertex of the boundary between bands i and i+1 is 2i, bottom 2i+1
    let (top, bottom) = (|i: usize| 2 * i, |i: usize| 2 * i + 1);
    let mut edges = Vec::new();
    let mut push = |v1, v2, left, right| {
        let id = edges.len();
        edges.push(Edge { id, v1, v2, left, right });
    };
    for i in 0..n - 1 {
        push(top(i), bottom(i), i + 1, i);
    }
    push(top(0), bottom(0), 0, o);
    push(bottom(n - 2), top(n - 2), n - 1, o);
    for i in 1..n - 1 {
        push(top(i), top(i - 1), i, o);
        push(bottom(i - 1), bottom(i), i, o);
    }
    let mut faces: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
    faces.push(OUTER_LABEL.to_string());
    Arrangement::from_edges(faces, 2 * n - 2, edges)
}

/// Named builtin geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Builtin {
    KpDisk3,
    Pie(usize),
    Strips(usize),
}

impl Builtin {
    pub fn build(self) -> Result<Arrangement, ArrangementError> {
        match self {
            Builtin::KpDisk3 => Ok(kp_disk3()),
            Builtin::Pie(n) => resolved_pie(n),
            Builtin::Strips(n) => strips(n),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::KpDisk3 => f.write_str("kp_disk3"),
            Builtin::Pie(n) => write!(f, "pie{n}"),
            Builtin::Strips(n) => write!(f, "strips{n}"),
        }
    }
}

impl FromStr for Builtin {
    type Err = ArrangementError;

    /// Accepts `kp_disk3`, `pie5`, `resolved_pie(5)`, `resolved_pie5`,
    /// `strips3` and `strips(3)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || ArrangementError::UnknownBuiltin(s.to_string());
        let t = s.trim().to_ascii_lowercase();
        if t == "kp_disk3" {
            return Ok(Builtin::KpDisk3);
        }
        let size = |rest: &str| -> Result<usize, ArrangementError> {
            let rest = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
            rest.parse().map_err(|_| unknown())
        };
        let (kind, n) = if let Some(rest) = t.strip_prefix("resolved_pie").or_else(|| t.strip_prefix("pie")) {
            (Builtin::Pie(size(rest)?), size(rest)?)
        } else if let Some(rest) = t.strip_prefix("strips") {
            (Builtin::Strips(size(rest)?), size(rest)?)
        } else {
            return Err(unknown());
        };
        match kind {
            Builtin::Pie(_) if n < 3 => Err(ArrangementError::SizeOutOfRange { name: "resolved_pie", n, min: 3 }),
            Builtin::Strips(_) if n < 2 => Err(ArrangementError::SizeOutOfRange { name: "strips", n, min: 2 }),
            _ => Ok(kind),
        }
    }
}
