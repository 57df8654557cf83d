//! Coloring lines so that no face is monochromatic.
//!
//! [`color_arrangement`] peels off one independent set per color from the
//! arrangement of the lines not yet colored. A color class that is
//! independent among the remaining lines stays non-monochromatic in the
//! full arrangement: a face of the full arrangement bounded only by lines of
//! that class is also a face of the remaining lines' arrangement. The
//! result is verified against the full arrangement before it is returned.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::ColoringError;
use crate::exact::Line;
use crate::hypergraph::TriHypergraph;
use crate::indep::{find_independent_lines, greedy_independent_lines, IndepSummary, SamplingConfig};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColoringConfig {
    /// Once at most this many lines remain, each gets its own color.
    pub base_case: usize,
    pub sampling: SamplingConfig,
}

impl Default for ColoringConfig {
    fn default() -> Self {
        ColoringConfig { base_case: 12, sampling: SamplingConfig::default() }
    }
}

/// One peeling round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Iteration {
    pub color: usize,
    /// Original line ids given this color.
    pub lines: Vec<usize>,
    /// Lines still uncolored when the round started.
    pub remaining: usize,
    pub search: Option<IndepSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    /// Color of each line; ids are contiguous from zero.
    pub colors: Vec<usize>,
    pub iterations: Vec<Iteration>,
    /// Lines that received a private color at the end.
    pub base_case: Vec<usize>,
}

impl Coloring {
    pub fn num_colors(&self) -> usize {
        self.colors.iter().max().map_or(0, |&c| c + 1)
    }

    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.num_colors()];
        for (l, &c) in self.colors.iter().enumerate() {
            classes[c].push(l);
        }
        classes
    }
}

/// Faces of size at least two whose bounding lines all share one color.
pub fn verify_colors(arr: &Arrangement, colors: &[usize]) -> Result<Vec<usize>, ColoringError> {
    if colors.len() != arr.num_lines() {
        return Err(ColoringError::IncompleteColoring { expected: arr.num_lines(), got: colors.len() });
    }
    Ok(arr
        .faces()
        .filter(|f| {
            f.size() >= 2 && {
                let c = colors[f.bounding_lines[0] as usize];
                f.bounding_lines.iter().all(|&l| colors[l as usize] == c)
            }
        })
        .map(|f| f.id)
        .collect())
}

pub fn verify_coloring(arr: &Arrangement, coloring: &Coloring) -> Result<Vec<usize>, ColoringError> {
    verify_colors(arr, &coloring.colors)
}

/// Peels independent sets until at most `cfg.base_case` lines remain.
pub fn color_arrangement<R: Rng + ?Sized>(
    lines: &[Line],
    cfg: &ColoringConfig,
    rng: &mut R,
) -> Result<Coloring, ColoringError> {
    let full = Arrangement::build(lines)?;
    color_built(&full, cfg, rng)
}

/// As [`color_arrangement`], reusing an already built arrangement.
pub fn color_built<R: Rng + ?Sized>(
    full: &Arrangement,
    cfg: &ColoringConfig,
    rng: &mut R,
) -> Result<Coloring, ColoringError> {
    let base_case = cfg.base_case.max(1);
    peel(full, base_case, rng, |arr, rng| {
        let h = TriHypergraph::from_arrangement(arr);
        let found = find_independent_lines(arr, &h, &cfg.sampling, rng);
        (found.lines.clone(), Some(found.summary()))
    })
}

/// Comparison coloring: each color is a maximal independent set grown over
/// the remaining lines in random order. No base case.
pub fn baseline_distinct_pairs_coloring<R: Rng + ?Sized>(
    lines: &[Line],
    rng: &mut R,
) -> Result<Coloring, ColoringError> {
    let full = Arrangement::build(lines)?;
    baseline_built(&full, rng)
}

pub fn baseline_built<R: Rng + ?Sized>(full: &Arrangement, rng: &mut R) -> Result<Coloring, ColoringError> {
    peel(full, 0, rng, |arr, rng| {
        let mut order: Vec<usize> = (0..arr.num_lines()).collect();
        order.shuffle(rng);
        (greedy_independent_lines(arr, &order), None)
    })
}

fn peel<R, F>(full: &Arrangement, base_case: usize, rng: &mut R, mut step: F) -> Result<Coloring, ColoringError>
where
    R: Rng + ?Sized,
    F: FnMut(&Arrangement, &mut R) -> (Vec<usize>, Option<IndepSummary>),
{
    let n = full.num_lines();
    let mut colors = vec![usize::MAX; n];
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut iterations = Vec::new();
    while remaining.len() > base_case {
        let residual;
        let arr = if remaining.len() == n {
            full
        } else {
            let sub: Vec<Line> = remaining.iter().map(|&l| full.lines()[l].clone()).collect();
            residual = Arrangement::build(&sub)?;
            &residual
        };
        let (local, search) = step(arr, rng);
        if local.is_empty() || !arr.is_independent(&local).expect("ids in range") {
            return Err(ColoringError::CertificationFailed { count: 0 });
        }
        let color = iterations.len();
        let chosen: Vec<usize> = local.iter().map(|&i| remaining[i]).collect();
        for &l in &chosen {
            colors[l] = color;
        }
        iterations.push(Iteration { color, lines: chosen, remaining: remaining.len(), search });
        remaining.retain(|&l| colors[l] == usize::MAX);
    }
    for (next, &l) in (iterations.len()..).zip(&remaining) {
        colors[l] = next;
    }
    let bad = verify_colors(full, &colors)?;
    if !bad.is_empty() {
        return Err(ColoringError::CertificationFailed { count: bad.len() });
    }
    Ok(Coloring { colors, iterations, base_case: remaining })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColorStats {
    pub k: usize,
    /// `k / sqrt(n / log2 n)`; absent for `n < 2`.
    pub ratio: Option<f64>,
    pub iteration_sizes: Vec<usize>,
    pub base_case_size: usize,
}

pub fn color_stats(coloring: &Coloring, n: usize) -> ColorStats {
    let k = coloring.num_colors();
    let ratio = (n >= 2).then(|| {
        let n = n as f64;
        k as f64 / (n / n.log2()).sqrt()
    });
    ColorStats {
        k,
        ratio,
        iteration_sizes: coloring.iterations.iter().map(|it| it.lines.len()).collect(),
        base_case_size: coloring.base_case.len(),
    }
}
