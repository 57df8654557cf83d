//! Half-edge construction of a line arrangement.
//!
//! Each line is cut at its sorted crossings into edges; every edge yields a
//! pair of twin half-edges `2i` / `2i + 1`. Rays end at points at infinity,
//! ordered counter-clockwise by direction (parallel lines by offset). That
//! cyclic order is the order in which the rays leave any box containing all
//! vertices, so tracing faces through it gives the faces of the clipped
//! subdivision with the synthetic box edges left out.

use std::cmp::Ordering;

use super::kernel::{cmp_fraction, cross, crossing_param, Coefs, Coord};
use crate::par;

pub(crate) const INF: u32 = 1 << 31;
pub(crate) const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, Default)]
pub(crate) struct Csr {
    pub offsets: Vec<u32>,
    pub data: Vec<u32>,
}

impl Csr {
    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }

    fn from_rows<I: IntoIterator<Item = u32>>(rows: impl IntoIterator<Item = I>) -> Csr {
        let mut offsets = vec![0u32];
        let mut data = Vec::new();
        for row in rows {
            data.extend(row);
            offsets.push(data.len() as u32);
        }
        Csr { offsets, data }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Topology {
    /// Lines through each vertex, ascending ids.
    pub vertex_lines: Csr,
    /// Vertices along each line in direction `(-b, a)`.
    pub line_vertices: Csr,
    /// Vertex id, or `INF | q` for the `q`-th point at infinity (ccw order).
    pub he_origin: Vec<u32>,
    pub he_next: Vec<u32>,
    pub he_face: Vec<u32>,
    pub he_line: Vec<u32>,
    /// Inward half-edge leaving each point at infinity.
    pub inf_inward: Vec<u32>,
    pub face_lines: Csr,
    pub face_bounded: Vec<bool>,
    pub face_first_he: Vec<u32>,
    pub line_faces: Csr,
}

/// Ranks lines by direction angle in `(0, π]`; parallel lines share a rank.
fn direction_ranks<T: Coord>(coefs: &[Coefs<T>]) -> Vec<u32> {
    let n = coefs.len();
    let mut order: Vec<usize> = (0..n).collect();
    let by_direction = |&l: &usize, &m: &usize| -> Ordering {
        let w = cross(&coefs[l], &coefs[m]);
        if w.is_positive() {
            Ordering::Less
        } else if w.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    };
    order.sort_by(by_direction);
    let mut rank = vec![0u32; n];
    let mut current = 0u32;
    for i in 0..n {
        if i > 0 && by_direction(&order[i - 1], &order[i]) != Ordering::Equal {
            current += 1;
        }
        rank[order[i]] = current;
    }
    rank
}

/// Crossing lines of `l` in parameter order, plus the end index of each
/// group of lines meeting `l` at the same point.
fn line_crossings<T: Coord>(coefs: &[Coefs<T>], rank: &[u32], l: usize) -> (Vec<u32>, Vec<u32>) {
    let mut keyed: Vec<(T, T, u32)> = Vec::with_capacity(coefs.len());
    for m in 0..coefs.len() {
        if m != l && rank[m] != rank[l] {
            let (num, den) = crossing_param(&coefs[l], &coefs[m]);
            keyed.push((num, den, m as u32));
        }
    }
    keyed.sort_unstable_by(|x, y| cmp_fraction(&x.0, &x.1, &y.0, &y.1).then(x.2.cmp(&y.2)));
    let mut ends = Vec::new();
    for i in 1..keyed.len() {
        let (n1, d1, _) = &keyed[i - 1];
        let (n2, d2, _) = &keyed[i];
        if cmp_fraction(n1, d1, n2, d2) != Ordering::Equal {
            ends.push(i as u32);
        }
    }
    if !keyed.is_empty() {
        ends.push(keyed.len() as u32);
    }
    (keyed.into_iter().map(|k| k.2).collect(), ends)
}

pub(crate) fn build_topology<T: Coord>(coefs: &[Coefs<T>]) -> Topology {
    let n = coefs.len();
    let rank = direction_ranks(coefs);
    let crossings = par::map_range(n, |l| line_crossings(coefs, &rank, l));

    // Vertex ids: a vertex is created by the smallest line through it and
    // looked up by the others via its two smallest lines.
    let mut pair_vertex = vec![NONE; n * n];
    let mut vertex_rows: Vec<Vec<u32>> = Vec::new();
    let mut line_vertex_rows: Vec<Vec<u32>> = Vec::with_capacity(n);
    for (l, (order, ends)) in crossings.iter().enumerate() {
        let mut row = Vec::with_capacity(ends.len());
        let mut start = 0usize;
        for &end in ends {
            let group = &order[start..end as usize];
            start = end as usize;
            let min_other = *group.iter().min().expect("non-empty group") as usize;
            let (s0, s1) = if l < min_other {
                (l, min_other)
            } else {
                let second = group
                    .iter()
                    .map(|&m| m as usize)
                    .filter(|&m| m != min_other)
                    .chain(std::iter::once(l))
                    .min()
                    .expect("at least l");
                (min_other, second)
            };
            let id = if s0 == l {
                let id = vertex_rows.len() as u32;
                let mut members: Vec<u32> = group.to_vec();
                members.push(l as u32);
                members.sort_unstable();
                vertex_rows.push(members);
                pair_vertex[s0 * n + s1] = id;
                id
            } else {
                pair_vertex[s0 * n + s1]
            };
            debug_assert_ne!(id, NONE);
            row.push(id);
        }
        line_vertex_rows.push(row);
    }
    drop(pair_vertex);
    let vertex_lines = Csr::from_rows(vertex_rows);
    let line_vertices = Csr::from_rows(line_vertex_rows);
    let num_vertices = vertex_lines.len();

    // Half-edge blocks: line l has k_l + 1 edges, edge j joins vertex j-1
    // and vertex j along the line (ends at infinity).
    let mut line_base = Vec::with_capacity(n + 1);
    let mut total = 0u32;
    for l in 0..n {
        line_base.push(total);
        total += 2 * (line_vertices.row(l).len() as u32 + 1);
    }
    line_base.push(total);
    let h = total as usize;
    let mut he_origin = vec![NONE; h];
    let mut he_line = vec![0u32; h];
    let mut he_next = vec![NONE; h];
    // Temporary codes for points at infinity: 2l forward end, 2l+1 backward.
    for (l, &base) in line_base[..n].iter().enumerate() {
        let verts = line_vertices.row(l);
        let k = verts.len();
        let base = base as usize;
        for j in 0..=k {
            let fwd = base + 2 * j;
            he_line[fwd] = l as u32;
            he_line[fwd + 1] = l as u32;
            he_origin[fwd] = if j == 0 { INF | (2 * l as u32 + 1) } else { verts[j - 1] };
            he_origin[fwd + 1] = if j == k { INF | (2 * l as u32) } else { verts[j] };
        }
    }

    // Rotation at each vertex: outgoing half-edges in ccw order are the
    // forward half-edges by direction rank, then the backward ones.
    let mut incidence_offsets = vertex_lines.offsets.clone();
    let mut incidence: Vec<(u32, u32)> = vec![(0, 0); vertex_lines.data.len()];
    {
        let mut fill = incidence_offsets[..num_vertices].to_vec();
        for l in 0..n {
            for (j, &v) in line_vertices.row(l).iter().enumerate() {
                let slot = &mut fill[v as usize];
                incidence[*slot as usize] = (l as u32, j as u32);
                *slot += 1;
            }
        }
    }
    for v in 0..num_vertices {
        let (s, e) = (incidence_offsets[v] as usize, incidence_offsets[v + 1] as usize);
        let row = &mut incidence[s..e];
        row.sort_unstable_by_key(|&(l, _)| rank[l as usize]);
        let d = row.len();
        let outgoing = |i: usize| -> u32 {
            let (l, j) = if i < d { row[i] } else { row[i - d] };
            let base = line_base[l as usize];
            if i < d {
                base + 2 * (j + 1)
            } else {
                base + 2 * j + 1
            }
        };
        for i in 0..2 * d {
            let prev = outgoing((i + 2 * d - 1) % (2 * d));
            he_next[(outgoing(i) ^ 1) as usize] = prev;
        }
    }
    incidence_offsets.clear();

    // Points at infinity in ccw order: forward ends (directions in (0, π])
    // then backward ends; parallel ends ordered by offset.
    let mut ends: Vec<(u32, bool)> = (0..n as u32).flat_map(|l| [(l, true), (l, false)]).collect();
    ends.sort_by(|&(l, lf), &(m, mf)| {
        mf.cmp(&lf)
            .then(rank[l as usize].cmp(&rank[m as usize]))
            .then_with(|| {
                // parallel normals differ by a positive factor, so compare
                // c / (|a| + |b|)
                let (x, y) = (&coefs[l as usize], &coefs[m as usize]);
                let cl = x.c.clone() * (y.a.abs() + y.b.abs());
                let cm = y.c.clone() * (x.a.abs() + x.b.abs());
                let (cl, cm) = (&cl, &cm);
                if lf {
                    cm.cmp(cl)
                } else {
                    cl.cmp(cm)
                }
            })
    });
    let inward = |l: u32, forward: bool| -> u32 {
        let k = line_vertices.row(l as usize).len() as u32;
        if forward {
            line_base[l as usize] + 2 * k + 1
        } else {
            line_base[l as usize]
        }
    };
    let inf_inward: Vec<u32> = ends.iter().map(|&(l, f)| inward(l, f)).collect();
    let mut code_to_q = vec![0u32; 2 * n];
    for (q, &(l, f)) in ends.iter().enumerate() {
        code_to_q[(2 * l + u32::from(!f)) as usize] = q as u32;
    }
    for origin in he_origin.iter_mut() {
        if *origin & INF != 0 {
            *origin = INF | code_to_q[(*origin & !INF) as usize];
        }
    }
    let num_inf = inf_inward.len();
    for q in 0..num_inf {
        // The half-edge running out to point q is the twin of q's inward one.
        let outward = inf_inward[q] ^ 1;
        he_next[outward as usize] = inf_inward[(q + 1) % num_inf];
    }
    debug_assert!(he_next.iter().all(|&x| x != NONE));

    // Face tracing.
    let mut he_face = vec![NONE; h];
    let mut face_rows: Vec<Vec<u32>> = Vec::new();
    let mut face_bounded = Vec::new();
    let mut face_first_he = Vec::new();
    let mut scratch = Vec::new();
    for start in 0..h {
        if he_face[start] != NONE {
            continue;
        }
        let f = face_rows.len() as u32;
        scratch.clear();
        let mut bounded = true;
        let mut cur = start;
        loop {
            he_face[cur] = f;
            scratch.push(he_line[cur]);
            if he_origin[cur ^ 1] & INF != 0 {
                bounded = false;
            }
            cur = he_next[cur] as usize;
            if cur == start {
                break;
            }
        }
        scratch.sort_unstable();
        scratch.dedup();
        face_rows.push(scratch.clone());
        face_bounded.push(bounded);
        face_first_he.push(start as u32);
    }
    let face_lines = Csr::from_rows(face_rows);

    let mut line_face_rows: Vec<Vec<u32>> = vec![Vec::new(); n];
    for f in 0..face_lines.len() {
        for &l in face_lines.row(f) {
            line_face_rows[l as usize].push(f as u32);
        }
    }
    let line_faces = Csr::from_rows(line_face_rows);

    Topology {
        vertex_lines,
        line_vertices,
        he_origin,
        he_next,
        he_face,
        he_line,
        inf_inward,
        face_lines,
        face_bounded,
        face_first_he,
        line_faces,
    }
}
