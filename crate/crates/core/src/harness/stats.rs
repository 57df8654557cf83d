use serde::{Deserialize, Serialize};

use super::io::FORMAT;
use crate::arrangement::{Arrangement, ArrangementSummary};
use crate::coloring::{color_stats, verify_coloring, Coloring, ColoringConfig};
use crate::hypergraph::TriHypergraph;
use crate::indep::IndepSummary;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationReport {
    pub color: usize,
    pub size: usize,
    pub remaining: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<IndepSummary>,
}

/// Wall-clock milliseconds per phase.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub build_ms: f64,
    pub color_ms: f64,
    pub verify_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub format: String,
    /// Input file the lines came from, when known.
    pub input: Option<String>,
    pub seed: u64,
    pub algorithm: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<ColoringConfig>,
    pub n: usize,
    pub k: usize,
    /// `k / sqrt(n / log2 n)`.
    pub ratio: Option<f64>,
    pub iterations: Vec<IterationReport>,
    pub base_case_size: usize,
    pub arrangement: ArrangementSummary,
    pub max_pair_degree: usize,
    /// Always empty for a returned coloring.
    pub monochromatic_faces: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<PhaseTimings>,
}

impl StatsReport {
    pub fn new(
        arr: &Arrangement,
        coloring: &Coloring,
        config: Option<&ColoringConfig>,
        seed: u64,
        input: Option<String>,
    ) -> StatsReport {
        let n = arr.num_lines();
        let stats = color_stats(coloring, n);
        StatsReport {
            format: FORMAT.into(),
            input,
            seed,
            algorithm: if config.is_some() { "peel" } else { "baseline" }.into(),
            config: config.cloned(),
            n,
            k: stats.k,
            ratio: stats.ratio,
            iterations: coloring
                .iterations
                .iter()
                .map(|it| IterationReport {
                    color: it.color,
                    size: it.lines.len(),
                    remaining: it.remaining,
                    search: it.search.clone(),
                })
                .collect(),
            base_case_size: stats.base_case_size,
            arrangement: arr.summary(),
            max_pair_degree: TriHypergraph::from_arrangement(arr).max_pair_degree(),
            monochromatic_faces: verify_coloring(arr, coloring).expect("total coloring"),
            timings: None,
        }
    }
}
