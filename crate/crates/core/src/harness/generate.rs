//! Seeded instance generators.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::duality::PointSet;
use crate::exact::Line;
use crate::seeded;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    RandomSimple,
    RandomDegenerate,
    Grid,
    Pencil,
    ParallelClasses,
    CubicPoints,
}

impl InstanceKind {
    pub const ALL: [InstanceKind; 6] = [
        InstanceKind::RandomSimple,
        InstanceKind::RandomDegenerate,
        InstanceKind::Grid,
        InstanceKind::Pencil,
        InstanceKind::ParallelClasses,
        InstanceKind::CubicPoints,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InstanceKind::RandomSimple => "random_simple",
            InstanceKind::RandomDegenerate => "random_degenerate",
            InstanceKind::Grid => "grid",
            InstanceKind::Pencil => "pencil",
            InstanceKind::ParallelClasses => "parallel_classes",
            InstanceKind::CubicPoints => "cubic_points",
        }
    }
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InstanceKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.replace('-', "_");
        InstanceKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| HarnessError::InvalidSpec(format!("unknown instance kind {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceParams {
    /// Coefficient range for random lines.
    pub range: i64,
    /// Bundle count for `parallel_classes`.
    pub classes: usize,
    /// Per-line chance of copying an existing direction (`random_degenerate`).
    pub parallel_rate: f64,
    /// Per-line chance of reusing an existing anchor point (`random_degenerate`).
    pub concurrent_rate: f64,
}

impl Default for InstanceParams {
    fn default() -> Self {
        InstanceParams { range: 1_000_000, classes: 4, parallel_rate: 0.1, concurrent_rate: 0.1 }
    }
}

/// `n` is the line count, except for `grid`, where it is the grid size `k`
/// (giving `2k` lines), and `cubic_points`, where it is the point count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub kind: InstanceKind,
    pub n: usize,
    pub seed: u64,
    #[serde(default)]
    pub params: InstanceParams,
}

impl InstanceSpec {
    pub fn new(kind: InstanceKind, n: usize, seed: u64) -> Self {
        InstanceSpec { kind, n, seed, params: InstanceParams::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Lines(Vec<Line>),
    Points(PointSet),
}

impl Instance {
    pub fn into_lines(self) -> Option<Vec<Line>> {
        match self {
            Instance::Lines(l) => Some(l),
            Instance::Points(_) => None,
        }
    }
}

/// Largest accepted `range`: keeps every exactness check below in `i128`.
const MAX_RANGE: i64 = 1 << 40;
/// Anchor coordinates and normals of `random_degenerate` lines.
const DEGENERATE_SPAN: i64 = 1000;

pub fn generate(spec: &InstanceSpec) -> Result<Instance, HarnessError> {
    let invalid = |msg: &str| Err(HarnessError::InvalidSpec(msg.to_string()));
    let p = &spec.params;
    if spec.n == 0 {
        return invalid("n must be at least 1");
    }
    if p.range < 1 || p.range > MAX_RANGE {
        return invalid("range must be in 1..=2^40");
    }
    if !(0.0..=1.0).contains(&p.parallel_rate)
        || !(0.0..=1.0).contains(&p.concurrent_rate)
        || p.parallel_rate + p.concurrent_rate > 1.0
    {
        return invalid("rates must be probabilities summing to at most 1");
    }
    let mut rng = seeded(spec.seed);
    match spec.kind {
        InstanceKind::RandomSimple => random_simple(spec.n, p.range, &mut rng).map(Instance::Lines),
        InstanceKind::RandomDegenerate => random_degenerate(spec.n, p, &mut rng).map(Instance::Lines),
        InstanceKind::Grid => Ok(Instance::Lines(grid(spec.n))),
        InstanceKind::Pencil => Ok(Instance::Lines(pencil(spec.n))),
        InstanceKind::ParallelClasses => {
            if p.classes == 0 || p.classes > spec.n {
                return invalid("classes must be in 1..=n");
            }
            parallel_classes(spec.n, p.classes, p.range, &mut rng).map(Instance::Lines)
        }
        InstanceKind::CubicPoints => Ok(Instance::Points(cubic_points(spec.n))),
    }
}

fn small(l: &Line) -> (i128, i128, i128) {
    (
        l.a().to_i128().expect("bounded range"),
        l.b().to_i128().expect("bounded range"),
        l.c().to_i128().expect("bounded range"),
    )
}

/// Reduced homogeneous intersection point, or `None` when parallel.
fn meet(l: (i128, i128, i128), m: (i128, i128, i128)) -> Option<(i128, i128, i128)> {
    let w = l.0 * m.1 - m.0 * l.1;
    if w == 0 {
        return None;
    }
    let x = l.2 * m.1 - m.2 * l.1;
    let y = l.0 * m.2 - m.0 * l.2;
    let g = x.gcd(&y).gcd(&w) * w.signum();
    Some((x / g, y / g, w / g))
}

/// Integer lines redrawn until no two are parallel and no three meet.
pub fn random_simple<R: Rng + ?Sized>(n: usize, range: i64, rng: &mut R) -> Result<Vec<Line>, HarnessError> {
    let mut lines: Vec<Line> = Vec::with_capacity(n);
    let mut coefs: Vec<(i128, i128, i128)> = Vec::with_capacity(n);
    let mut vertices: HashSet<(i128, i128, i128)> = HashSet::new();
    let mut draws = 0usize;
    let mut meets = Vec::with_capacity(n);
    while lines.len() < n {
        draws += 1;
        if draws > 1000 * n + 1000 {
            return Err(HarnessError::InvalidSpec(format!(
                "no simple arrangement of {n} lines found in coefficient range {range}"
            )));
        }
        let (a, b, c) = (
            rng.random_range(-range..=range),
            rng.random_range(-range..=range),
            rng.random_range(-range..=range),
        );
        let Ok(line) = Line::from_ints(a, b, c) else { continue };
        let l = small(&line);
        meets.clear();
        let mut ok = true;
        for &m in &coefs {
            match meet(l, m) {
                None => {
                    ok = false;
                    break;
                }
                Some(pt) => meets.push(pt),
            }
        }
        if !ok {
            continue;
        }
        // A new line through an existing vertex meets two old lines there.
        let distinct: HashSet<_> = meets.iter().collect();
        if distinct.len() != meets.len() || meets.iter().any(|pt| vertices.contains(pt)) {
            continue;
        }
        vertices.extend(meets.iter().copied());
        coefs.push(l);
        lines.push(line);
    }
    Ok(lines)
}

/// Lines through integer anchor points; a share of them copy an existing
/// direction (parallel pairs) or reuse an existing anchor (concurrency).
pub fn random_degenerate<R: Rng + ?Sized>(
    n: usize,
    params: &InstanceParams,
    rng: &mut R,
) -> Result<Vec<Line>, HarnessError> {
    let s = DEGENERATE_SPAN;
    let mut lines = Vec::with_capacity(n);
    let mut seen: HashSet<Line> = HashSet::new();
    let mut normals: Vec<(i64, i64)> = Vec::new();
    let mut anchors: Vec<((i64, i64), usize)> = Vec::new();
    let mut draws = 0usize;
    while lines.len() < n {
        draws += 1;
        if draws > 1000 * n + 1000 {
            return Err(HarnessError::InvalidSpec("could not place distinct lines".into()));
        }
        let u: f64 = rng.random();
        let fresh_normal = |rng: &mut R| (rng.random_range(-s..=s), rng.random_range(-s..=s));
        let fresh_anchor = |rng: &mut R| (rng.random_range(-s..=s), rng.random_range(-s..=s));
        let (normal, anchor_slot) = if u < params.parallel_rate && !normals.is_empty() {
            (normals[rng.random_range(0..normals.len())], None)
        } else if u < params.parallel_rate + params.concurrent_rate && !anchors.is_empty() {
            // Complete a pending pair into a triple when there is one.
            let busy: Vec<usize> = (0..anchors.len()).filter(|&i| anchors[i].1 == 2).collect();
            let slot = if !busy.is_empty() {
                busy[rng.random_range(0..busy.len())]
            } else {
                rng.random_range(0..anchors.len())
            };
            (fresh_normal(rng), Some(slot))
        } else {
            (fresh_normal(rng), None)
        };
        if normal == (0, 0) {
            continue;
        }
        let anchor = match anchor_slot {
            Some(slot) => anchors[slot].0,
            None => fresh_anchor(rng),
        };
        let c = normal.0 * anchor.0 + normal.1 * anchor.1;
        let line = Line::from_ints(normal.0, normal.1, c).expect("nonzero normal");
        if !seen.insert(line.clone()) {
            continue;
        }
        match anchor_slot {
            Some(slot) => anchors[slot].1 += 1,
            None => anchors.push((anchor, 1)),
        }
        normals.push(normal);
        lines.push(line);
    }
    Ok(lines)
}

/// `x = 0..k-1` then `y = 0..k-1`.
pub fn grid(k: usize) -> Vec<Line> {
    let vertical = (0..k as i64).map(|i| Line::from_ints(1, 0, i).unwrap());
    let horizontal = (0..k as i64).map(|i| Line::from_ints(0, 1, i).unwrap());
    vertical.chain(horizontal).collect()
}

/// `y = i·x` for `i = 0..n-1`: all through the origin.
pub fn pencil(n: usize) -> Vec<Line> {
    (0..n as i64).map(|i| Line::from_ints(i, -1, 0).unwrap()).collect()
}

/// `n` lines in `classes` bundles; bundle `j` has normal `(j, 1)`, with
/// distinct random offsets.
pub fn parallel_classes<R: Rng + ?Sized>(
    n: usize,
    classes: usize,
    range: i64,
    rng: &mut R,
) -> Result<Vec<Line>, HarnessError> {
    let mut seen: HashSet<Line> = HashSet::new();
    let mut lines = Vec::with_capacity(n);
    let mut draws = 0usize;
    while lines.len() < n {
        draws += 1;
        if draws > 1000 * n + 1000 {
            return Err(HarnessError::InvalidSpec("range too small for distinct offsets".into()));
        }
        let j = (lines.len() % classes) as i64;
        let line = Line::from_ints(j, 1, rng.random_range(-range..=range)).unwrap();
        if seen.insert(line.clone()) {
            lines.push(line);
        }
    }
    Ok(lines)
}

/// Points `(t, t³)` for the `n` nonzero integers of smallest magnitude,
/// ascending. A line meets the cubic at most three times.
pub fn cubic_points(n: usize) -> PointSet {
    let mut ts: Vec<i64> = (1..).flat_map(|t| [t, -t]).take(n).collect();
    ts.sort_unstable();
    PointSet::from_ints(&ts.iter().map(|&t| (t, t * t * t)).collect::<Vec<_>>()).expect("distinct t")
}
