//! General-position subsets through point-line duality.
//!
//! Points with no four on a line are perturbed, mapped to their dual
//! lines and colored; the largest color class maps back to a point subset
//! with no three collinear. Three collinear input points become three
//! lines bounding a small triangular face after perturbation, and a face is
//! never monochromatic, so no color class holds all three.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::coloring::{color_built, Coloring, ColoringConfig};
use crate::error::DualityError;
use crate::exact::{line_through, orientation, rat, Line, Point2, Rational, Sign};

/// Perturbations stop halving below `2^-MIN_EPSILON_EXP`.
pub const MIN_EPSILON_EXP: u32 = 256;
/// The first epsilon tried is `2^-INITIAL_EPSILON_EXP`.
pub const INITIAL_EPSILON_EXP: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point2>,
}

impl PointSet {
    pub fn new(points: Vec<Point2>) -> Result<PointSet, DualityError> {
        let mut seen: HashMap<&Point2, usize> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if let Some(&j) = seen.get(p) {
                return Err(DualityError::DuplicatePoint(j, i));
            }
            seen.insert(p, i);
        }
        Ok(PointSet { points })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<PointSet, DualityError> {
        PointSet::new(coords.iter().map(|&(x, y)| Point2::from_ints(x, y)).collect())
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GpResult {
    /// Indices into the input points, ascending.
    pub subset: Vec<usize>,
    pub colors_used: usize,
    #[serde(with = "crate::harness::io::rational_serde")]
    pub epsilon: Rational,
    pub certificate: bool,
}

/// The point `(a, b)` maps to the line `y = a·x - b`.
pub fn dual_line(p: &Point2) -> Line {
    Line::new(p.x.clone(), rat(-1), p.y.clone()).expect("b = -1 is never degenerate")
}

/// All index triples `i < j < k` of collinear points, lexicographic.
pub fn collinear_triples(points: &[Point2]) -> Vec<[usize; 3]> {
    let n = points.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if orientation(&points[i], &points[j], &points[k]) == Sign::Zero {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// True iff no line carries four of the points.
pub fn validate_no4collinear(ps: &PointSet) -> bool {
    let pts = ps.points();
    let mut on_line: HashMap<Line, BTreeSet<usize>> = HashMap::new();
    for [i, j, k] in collinear_triples(pts) {
        let l = line_through(&pts[i], &pts[j]).expect("distinct points");
        let members = on_line.entry(l).or_default();
        members.extend([i, j, k]);
        if members.len() >= 4 {
            return false;
        }
    }
    true
}

fn perturbed(points: &[Point2], eps: &Rational) -> Vec<Point2> {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let t = rat(i as i64 + 1);
            Point2::new(&p.x + eps * &t, &p.y + eps * &t * &t)
        })
        .collect()
}

/// Checks the four acceptance conditions for a perturbation and returns the
/// dual lines when they hold.
fn accept_perturbation(moved: &[Point2], collinear: &[[usize; 3]]) -> Option<Vec<Line>> {
    // (a) distinct points
    let distinct: BTreeSet<&Point2> = moved.iter().collect();
    if distinct.len() != moved.len() {
        return None;
    }
    // (b) every collinear triple is broken
    if collinear
        .iter()
        .any(|&[i, j, k]| orientation(&moved[i], &moved[j], &moved[k]) == Sign::Zero)
    {
        return None;
    }
    // (c) no new collinear triple
    if collinear_triples(moved).iter().any(|t| collinear.binary_search(t).is_err()) {
        return None;
    }
    let duals: Vec<Line> = moved.iter().map(dual_line).collect();
    // (d) each formerly collinear triple bounds a face of size exactly three
    if !collinear.is_empty() {
        let arr = Arrangement::build(&duals).ok()?;
        let triangles: BTreeSet<[u32; 3]> = arr
            .faces()
            .filter(|f| f.size() == 3)
            .map(|f| [f.bounding_lines[0], f.bounding_lines[1], f.bounding_lines[2]])
            .collect();
        if !collinear
            .iter()
            .all(|t| triangles.contains(&[t[0] as u32, t[1] as u32, t[2] as u32]))
        {
            return None;
        }
    }
    Some(duals)
}

/// Perturbs `p_i` by `eps·(i+1, (i+1)²)`, halving `eps` until the
/// perturbation is valid, and returns the dual lines with the accepted
/// `eps`.
pub fn perturb_and_dualize(ps: &PointSet) -> Result<(Vec<Line>, Rational), DualityError> {
    if !validate_no4collinear(ps) {
        return Err(DualityError::Not4Free);
    }
    let original = ps.points();
    let collinear = collinear_triples(original);
    for exp in INITIAL_EPSILON_EXP..=MIN_EPSILON_EXP {
        let eps = Rational::new(BigInt::one(), BigInt::one() << exp);
        let moved = perturbed(original, &eps);
        if let Some(duals) = accept_perturbation(&moved, &collinear) {
            return Ok((duals, eps));
        }
    }
    Err(DualityError::PerturbationExhausted)
}

/// The full reduction: largest color class of the perturbed dual
/// arrangement, certified on the original points.
pub fn general_position_subset<R: Rng + ?Sized>(
    ps: &PointSet,
    cfg: &ColoringConfig,
    rng: &mut R,
) -> Result<(GpResult, Coloring), DualityError> {
    let (duals, epsilon) = perturb_and_dualize(ps)?;
    let arr = Arrangement::build(&duals).map_err(crate::error::ColoringError::from)?;
    let coloring = color_built(&arr, cfg, rng)?;
    let classes = coloring.classes();
    // max_by_key keeps the last maximum; scan in reverse to prefer the
    // smallest color id.
    let subset = classes
        .iter()
        .rev()
        .max_by_key(|c| c.len())
        .cloned()
        .unwrap_or_default();
    let chosen: Vec<Point2> = subset.iter().map(|&i| ps.points()[i].clone()).collect();
    let certificate = collinear_triples(&chosen).is_empty();
    let colors_used = coloring.num_colors();
    if !certificate || subset.len() * colors_used < ps.len() {
        return Err(DualityError::CertificationFailed);
    }
    Ok((GpResult { subset, colors_used, epsilon, certificate }, coloring))
}
