//! The clip box: a square that strictly contains every vertex and meets
//! every line. Used to give unbounded faces a finite polygon (rendering,
//! interior sample points) and for the Euler check.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Arrangement, Endpoint};
use crate::exact::{rat, Point2, Rational};

/// The square `[-half, half]²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClipBox {
    pub half: Rational,
}

/// Vertex, edge and face counts of the clipped subdivision, including the
/// synthetic box vertices and edges and the outer face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClippedCounts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl ClipBox {
    /// Side = max(|coordinate| over vertices and axis intercepts) + 1.
    pub fn enclosing(arr: &Arrangement) -> ClipBox {
        let mut m = Rational::zero();
        let mut bump = |r: Rational| {
            let r = r.abs();
            if r > m {
                m = r;
            }
        };
        for v in 0..arr.num_vertices() {
            let p = arr.vertex_point(v);
            bump(p.x);
            bump(p.y);
        }
        for l in arr.lines() {
            let (a, b, c) = l.coefficients();
            if !a.is_zero() {
                bump(&c / &a);
            }
            if !b.is_zero() {
                bump(&c / &b);
            }
        }
        ClipBox { half: m + rat(1) }
    }

    pub fn contains_strictly(&self, p: &Point2) -> bool {
        p.x.abs() < self.half && p.y.abs() < self.half
    }

    pub fn corners(&self) -> [Point2; 4] {
        let m = self.half.clone();
        let n = -m.clone();
        [
            Point2::new(n.clone(), n.clone()),
            Point2::new(m.clone(), n.clone()),
            Point2::new(m.clone(), m.clone()),
            Point2::new(n, m),
        ]
    }

    /// Counter-clockwise position along the boundary, starting at the
    /// lower-left corner. Only meaningful for points on the boundary.
    pub fn perimeter_position(&self, p: &Point2) -> Rational {
        let m = &self.half;
        let neg = -m;
        if p.y == neg && &p.x != m {
            &p.x + m
        } else if &p.x == m && &p.y != m {
            rat(2) * m + &p.y + m
        } else if &p.y == m && p.x != neg {
            rat(4) * m + (m - &p.x)
        } else {
            rat(6) * m + (m - &p.y)
        }
    }

    /// Box corners strictly between `from` and `to`, walking ccw.
    pub fn corners_between(&self, from: &Point2, to: &Point2) -> Vec<Point2> {
        let perimeter = rat(8) * &self.half;
        let s0 = self.perimeter_position(from);
        let mut s1 = self.perimeter_position(to);
        if s1 <= s0 {
            s1 += &perimeter;
        }
        let mut out = Vec::new();
        for lap in 0..2 {
            for (i, corner) in self.corners().into_iter().enumerate() {
                let s = rat(2 * i as i64) * &self.half + rat(lap) * &perimeter;
                if s > s0 && s < s1 {
                    out.push(corner);
                }
            }
        }
        out
    }
}

impl Arrangement {
    /// Where the ray ending at the `q`-th point at infinity leaves the box.
    pub fn exit_point(&self, q: usize) -> Point2 {
        let (l, forward) = self.infinite_point_ray(q);
        let (a, b, c) = self.lines()[l].coefficients();
        let (ux, uy) = if forward { (-b.clone(), a.clone()) } else { (b.clone(), -a.clone()) };
        let m = self.clip_box().half.clone();
        let mut candidates = Vec::with_capacity(4);
        for s in [m.clone(), -m.clone()] {
            if !a.is_zero() {
                let x = (&c - &b * &s) / &a;
                if x.abs() <= m {
                    candidates.push(Point2::new(x, s.clone()));
                }
            }
            if !b.is_zero() {
                let y = (&c - &a * &s) / &b;
                if y.abs() <= m {
                    candidates.push(Point2::new(s.clone(), y));
                }
            }
        }
        candidates
            .into_iter()
            .max_by(|p, r| (&p.x * &ux + &p.y * &uy).cmp(&(&r.x * &ux + &r.y * &uy)))
            .expect("every line meets the clip box")
    }

    /// The face's polygon after clipping, counter-clockwise.
    pub fn clipped_face_polygon(&self, id: usize) -> Vec<Point2> {
        let hes = self.face_half_edges(id);
        let mut poly = Vec::with_capacity(hes.len() + 4);
        for (i, &he) in hes.iter().enumerate() {
            poly.push(self.endpoint_point(self.half_edge_origin(he)));
            if let Endpoint::Infinity(q) = self.half_edge_destination(he) {
                let exit = self.exit_point(q);
                let next = hes[(i + 1) % hes.len()];
                let resume = self.endpoint_point(self.half_edge_origin(next));
                let corners = self.clip_box().corners_between(&exit, &resume);
                poly.push(exit);
                poly.extend(corners);
            }
        }
        poly
    }

    /// A point strictly inside the face: the vertex average of its clipped
    /// polygon.
    pub fn face_interior_point(&self, id: usize) -> Point2 {
        let poly = self.clipped_face_polygon(id);
        let k = rat(poly.len() as i64);
        let (mut sx, mut sy) = (Rational::zero(), Rational::zero());
        for p in &poly {
            sx += &p.x;
            sy += &p.y;
        }
        Point2::new(sx / &k, sy / k)
    }

    fn endpoint_point(&self, e: Endpoint) -> Point2 {
        match e {
            Endpoint::Vertex(v) => self.vertex_point(v),
            Endpoint::Infinity(q) => self.exit_point(q),
        }
    }

    /// Counts for the subdivision of the box: arrangement vertices, ray
    /// exits and uncovered corners; line edges and box edges; faces plus the
    /// outside.
    pub fn clipped_counts(&self) -> ClippedCounts {
        let exits: Vec<Point2> = (0..self.num_infinite_points()).map(|q| self.exit_point(q)).collect();
        let free_corners = self
            .clip_box()
            .corners()
            .iter()
            .filter(|c| !exits.contains(c))
            .count();
        let box_vertices = exits.len() + free_corners;
        ClippedCounts {
            vertices: self.num_vertices() + box_vertices,
            edges: self.num_edges() + box_vertices,
            faces: self.num_faces() + 1,
        }
    }
}
