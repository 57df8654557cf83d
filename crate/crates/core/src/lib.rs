//! Coloring the lines of a planar arrangement so that no face is
//! monochromatic.
//!
//! The pipeline builds the arrangement exactly ([`arrangement`]), derives
//! the hypergraph of triangular faces ([`hypergraph`]), extracts large
//! independent line sets by sampling ([`indep`]) and peels them off one
//! color at a time ([`coloring`]). [`duality`] applies the coloring to
//! point sets with no four collinear points to extract subsets in general
//! position.

pub mod arrangement;
pub mod coloring;
pub mod duality;
pub mod error;
pub mod exact;
pub mod harness;
pub mod hypergraph;
pub mod indep;
pub mod par;

use rand::SeedableRng;

pub use arrangement::{Arrangement, Face};
pub use coloring::{
    baseline_distinct_pairs_coloring, color_arrangement, color_stats, verify_coloring, Coloring,
    ColoringConfig,
};
pub use duality::{general_position_subset, GpResult, PointSet};
pub use error::{ArrangementError, ColoringError, DualityError, GeomError, HypergraphError};
pub use exact::{Line, Point2, Rational, Sign};
pub use hypergraph::TriHypergraph;
pub use indep::{find_independent_lines, IndepResult, SamplingConfig};

/// The generator behind every seeded operation.
pub type SeededRng = rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}
