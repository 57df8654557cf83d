//! Planar arrangements of lines and their faces.
//!
//! [`Arrangement::build`] computes every face together with the exact set of
//! lines contributing a positive-length piece of its boundary. Unbounded
//! faces are faces like any other; only faces bounded by at least two lines
//! take part in badness and coloring checks.

mod build;
mod clip;
mod kernel;

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{ArrangementError, GeomError};
use crate::exact::{intersect, Line, Point2};
use build::{Topology, INF};

pub use clip::{ClipBox, ClippedCounts};

/// A face view. `bounding_lines` is sorted ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Face<'a> {
    pub id: usize,
    pub bounding_lines: &'a [u32],
    pub bounded: bool,
}

impl Face<'_> {
    pub fn size(&self) -> usize {
        self.bounding_lines.len()
    }
}

/// A vertex view: the lines through it, ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Vertex<'a> {
    pub id: usize,
    pub lines: &'a [u32],
}

/// Endpoint of a half-edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Vertex(usize),
    /// Index into the counter-clockwise order of ray ends at infinity.
    Infinity(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementSummary {
    pub lines: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub bounded_faces: usize,
    /// `(size, count)` pairs, ascending by size.
    pub face_size_histogram: Vec<(usize, usize)>,
}

#[derive(Debug)]
pub struct Arrangement {
    lines: Vec<Line>,
    topo: Topology,
    clip: OnceLock<ClipBox>,
}

impl Arrangement {
    pub fn build(lines: &[Line]) -> Result<Arrangement, ArrangementError> {
        if lines.is_empty() {
            return Err(ArrangementError::EmptyInput);
        }
        let mut seen: HashMap<&Line, usize> = HashMap::with_capacity(lines.len());
        for (i, l) in lines.iter().enumerate() {
            if let Some(&first) = seen.get(l) {
                return Err(ArrangementError::DuplicateLine { first, second: i });
            }
            seen.insert(l, i);
        }
        let topo = match kernel::small_coefs(lines) {
            Some(coefs) => build::build_topology(&coefs),
            None => build::build_topology(&kernel::big_coefs(lines)),
        };
        Ok(Arrangement { lines: lines.to_vec(), topo, clip: OnceLock::new() })
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.topo.vertex_lines.len()
    }

    /// Edges along the lines (each ray and segment once).
    pub fn num_edges(&self) -> usize {
        self.topo.he_line.len() / 2
    }

    pub fn num_faces(&self) -> usize {
        self.topo.face_bounded.len()
    }

    pub fn num_half_edges(&self) -> usize {
        self.topo.he_line.len()
    }

    pub fn face(&self, id: usize) -> Face<'_> {
        Face {
            id,
            bounding_lines: self.topo.face_lines.row(id),
            bounded: self.topo.face_bounded[id],
        }
    }

    pub fn faces(&self) -> impl Iterator<Item = Face<'_>> + '_ {
        (0..self.num_faces()).map(move |f| self.face(f))
    }

    pub fn face_size(&self, id: usize) -> usize {
        self.topo.face_lines.row(id).len()
    }

    pub fn vertex(&self, id: usize) -> Vertex<'_> {
        Vertex { id, lines: self.topo.vertex_lines.row(id) }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex<'_>> + '_ {
        (0..self.num_vertices()).map(move |v| self.vertex(v))
    }

    /// Exact location of a vertex.
    pub fn vertex_point(&self, id: usize) -> Point2 {
        let lines = self.topo.vertex_lines.row(id);
        intersect(&self.lines[lines[0] as usize], &self.lines[lines[1] as usize])
            .ok()
            .flatten()
            .expect("vertex lines cross")
    }

    /// Vertices along line `l`, in the direction `(-b, a)`.
    pub fn line_vertices(&self, l: usize) -> &[u32] {
        self.topo.line_vertices.row(l)
    }

    /// Faces having line `l` on their boundary.
    pub fn line_faces(&self, l: usize) -> &[u32] {
        self.topo.line_faces.row(l)
    }

    /// Half-edges of a face's boundary cycle, in order.
    pub fn face_half_edges(&self, id: usize) -> Vec<usize> {
        let start = self.topo.face_first_he[id] as usize;
        let mut out = vec![start];
        let mut cur = self.topo.he_next[start] as usize;
        while cur != start {
            out.push(cur);
            cur = self.topo.he_next[cur] as usize;
        }
        out
    }

    pub fn half_edge_line(&self, he: usize) -> usize {
        self.topo.he_line[he] as usize
    }

    pub fn half_edge_face(&self, he: usize) -> usize {
        self.topo.he_face[he] as usize
    }

    pub fn half_edge_origin(&self, he: usize) -> Endpoint {
        decode(self.topo.he_origin[he])
    }

    pub fn half_edge_destination(&self, he: usize) -> Endpoint {
        decode(self.topo.he_origin[he ^ 1])
    }

    /// Number of ray ends at infinity (`2n`).
    pub fn num_infinite_points(&self) -> usize {
        self.topo.inf_inward.len()
    }

    /// `(line, forward)` for the `q`-th ray end at infinity.
    pub fn infinite_point_ray(&self, q: usize) -> (usize, bool) {
        let he = self.topo.inf_inward[q] as usize;
        let line = self.topo.he_line[he] as usize;
        // The inward half-edge at the forward end is the last backward one.
        (line, he & 1 == 1)
    }

    pub fn faces_of_size(&self, k: usize) -> Vec<usize> {
        (0..self.num_faces()).filter(|&f| self.face_size(f) == k).collect()
    }

    pub fn face_size_histogram(&self) -> Vec<(usize, usize)> {
        let mut counts: Vec<usize> = Vec::new();
        for f in 0..self.num_faces() {
            let s = self.face_size(f);
            if counts.len() <= s {
                counts.resize(s + 1, 0);
            }
            counts[s] += 1;
        }
        counts.into_iter().enumerate().filter(|&(_, c)| c > 0).collect()
    }

    pub fn summary(&self) -> ArrangementSummary {
        ArrangementSummary {
            lines: self.num_lines(),
            vertices: self.num_vertices(),
            edges: self.num_edges(),
            faces: self.num_faces(),
            bounded_faces: self.topo.face_bounded.iter().filter(|&&b| b).count(),
            face_size_histogram: self.face_size_histogram(),
        }
    }

    /// Membership mask for a subset of line ids.
    pub fn subset_mask(&self, subset: &[usize]) -> Result<Vec<bool>, ArrangementError> {
        let mut mask = vec![false; self.num_lines()];
        for &l in subset {
            *mask.get_mut(l).ok_or(ArrangementError::UnknownLineId(l))? = true;
        }
        Ok(mask)
    }

    /// Faces of size at least two bounded only by lines in `subset`.
    pub fn bad_faces(&self, subset: &[usize]) -> Result<Vec<usize>, ArrangementError> {
        let mask = self.subset_mask(subset)?;
        Ok(self.bad_faces_masked(&mask))
    }

    pub fn bad_faces_masked(&self, mask: &[bool]) -> Vec<usize> {
        // Only faces touching a member line can be bad.
        let mut bad: Vec<usize> = Vec::new();
        for (l, _) in mask.iter().enumerate().filter(|(_, &m)| m) {
            for &f in self.line_faces(l) {
                let lines = self.topo.face_lines.row(f as usize);
                // Report each face once: from its smallest bounding line.
                if lines[0] as usize == l
                    && lines.len() >= 2
                    && lines.iter().all(|&x| mask[x as usize])
                {
                    bad.push(f as usize);
                }
            }
        }
        bad.sort_unstable();
        bad
    }

    pub fn is_independent(&self, subset: &[usize]) -> Result<bool, ArrangementError> {
        Ok(self.bad_faces(subset)?.is_empty())
    }

    pub fn is_independent_masked(&self, mask: &[bool]) -> bool {
        mask.iter().enumerate().filter(|(_, &m)| m).all(|(l, _)| {
            self.line_faces(l).iter().all(|&f| {
                let lines = self.topo.face_lines.row(f as usize);
                lines.len() < 2 || lines.iter().any(|&x| !mask[x as usize])
            })
        })
    }

    /// True iff no two lines are parallel and no three are concurrent.
    pub fn is_simple(&self) -> bool {
        let n = self.num_lines();
        self.num_vertices() == n * (n - 1) / 2 && self.vertices().all(|v| v.lines.len() == 2)
    }

    /// `V - E + F` on the plane-embedded clipped subdivision (the outer
    /// region beyond the box counts as one face).
    pub fn euler_characteristic(&self) -> i64 {
        let c = self.clipped_counts();
        c.vertices as i64 - c.edges as i64 + c.faces as i64
    }

    pub fn clip_box(&self) -> &ClipBox {
        self.clip.get_or_init(|| ClipBox::enclosing(self))
    }
}

fn decode(origin: u32) -> Endpoint {
    if origin & INF != 0 {
        Endpoint::Infinity((origin & !INF) as usize)
    } else {
        Endpoint::Vertex(origin as usize)
    }
}

/// Parses `lines` as (a, b, c) integer triples; test and example helper.
pub fn lines_from_ints(triples: &[(i64, i64, i64)]) -> Result<Vec<Line>, GeomError> {
    triples.iter().map(|&(a, b, c)| Line::from_ints(a, b, c)).collect()
}

#[cfg(test)]
mod tests;
