//! Independent sets of lines via random sampling.
//!
//! A sample `X` of the lines is drawn, a large independent set `Z` of the
//! triangle hypergraph restricted to `X` is extracted, and every face still
//! bounded only by lines of `Z` is repaired by dropping one of its lines.
//! The result is then grown greedily to a maximal independent set and
//! certified against the arrangement.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arrangement::Arrangement;
use crate::error::HypergraphError;
use crate::hypergraph::TriHypergraph;

mod search;

pub use search::LocalSearch;

/// Parameters of the sampling step. Logarithms are base 2.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingConfig {
    /// Pair-degree bound of the hypergraph.
    pub d: u32,
    /// Lower clamp for `log log log n`.
    pub clamp_floor: f64,
    /// Fresh samples drawn before falling back to a direct greedy set.
    pub retries: u32,
    /// Largest induced hypergraph handed to the exact solver.
    pub exact_solver_cap: usize,
    /// Grow the repaired set to a maximal independent set and improve it
    /// by local search.
    pub extend: bool,
    /// Perturbation rounds of the local search.
    #[serde(default = "default_search_rounds")]
    pub search_rounds: u32,
}

fn default_search_rounds() -> u32 {
    60
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            d: 4,
            clamp_floor: 1.0,
            retries: 8,
            exact_solver_cap: 24,
            extend: true,
            search_rounds: default_search_rounds(),
        }
    }
}

impl SamplingConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.d < 1 {
            return Err("d must be at least 1".into());
        }
        if self.clamp_floor.is_nan() || self.clamp_floor <= 0.0 {
            return Err("clamp_floor must be positive".into());
        }
        if self.retries < 1 {
            return Err("retries must be at least 1".into());
        }
        if !(3..=64).contains(&self.exact_solver_cap) {
            return Err("exact_solver_cap must be in 3..=64".into());
        }
        Ok(())
    }
}

/// Outcome of one independent-set search. Ids refer to the arrangement the
/// search ran on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndepResult {
    pub lines: Vec<usize>,
    /// Size of the sample `X` of the accepted attempt.
    pub sampled: usize,
    /// Size of `Z` before repair.
    pub pre_repair: usize,
    /// Lines dropped during repair.
    pub repaired: usize,
    /// Net lines added by extension and local search.
    pub extended: usize,
    pub attempts: u32,
    /// Whether the sampled attempts all came back empty.
    pub fallback: bool,
    pub certified: bool,
}

/// [`IndepResult`] without the line list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndepSummary {
    pub size: usize,
    pub sampled: usize,
    pub pre_repair: usize,
    pub repaired: usize,
    pub extended: usize,
    pub attempts: u32,
    pub fallback: bool,
    pub certified: bool,
}

impl IndepResult {
    pub fn summary(&self) -> IndepSummary {
        IndepSummary {
            size: self.lines.len(),
            sampled: self.sampled,
            pre_repair: self.pre_repair,
            repaired: self.repaired,
            extended: self.extended,
            attempts: self.attempts,
            fallback: self.fallback,
            certified: self.certified,
        }
    }
}

/// `n^(-2/5) / (d · max(log log log n, floor))^(3/5)`, clamped into (0, 1].
pub fn sampling_probability(n: usize, cfg: &SamplingConfig) -> f64 {
    let n = n.max(1) as f64;
    let lg = n.log2();
    // log2 of a non-positive value is -inf or NaN; both lose to the floor.
    let lll = if lg > 1.0 { lg.log2().log2() } else { f64::NEG_INFINITY };
    let lll = if lll.is_nan() { cfg.clamp_floor } else { lll.max(cfg.clamp_floor) };
    let p = n.powf(-0.4) / (f64::from(cfg.d) * lll).powf(0.6);
    p.clamp(f64::MIN_POSITIVE, 1.0)
}

/// Each id in `0..n` independently with probability `p`.
pub fn sample_lines<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Vec<usize> {
    (0..n).filter(|_| rng.random_bool(p)).collect()
}

/// A maximum independent set of `h`; among those, the lexicographically
/// smallest id list.
pub fn independent_set_exact(h: &TriHypergraph, cap: usize) -> Result<Vec<usize>, HypergraphError> {
    let n = h.num_vertices();
    let cap = cap.min(64);
    if n > cap {
        return Err(HypergraphError::CapExceeded { vertices: n, cap });
    }
    let mut conflicts: Vec<Vec<u64>> = vec![Vec::new(); n];
    for (v, pairs) in h.incidence().into_iter().enumerate() {
        conflicts[v] = pairs.into_iter().map(|(x, y)| (1u64 << x) | (1u64 << y)).collect();
    }

    struct Search<'a> {
        n: usize,
        conflicts: &'a [Vec<u64>],
        best: u64,
        best_size: usize,
    }

    impl Search<'_> {
        // Include-before-exclude order visits equal-size sets in
        // lexicographic order, so keeping the first strictly larger set
        // yields the lexicographically smallest maximum.
        fn go(&mut self, v: usize, set: u64, size: usize) {
            if size + (self.n - v) <= self.best_size {
                return;
            }
            if v == self.n {
                if size > self.best_size {
                    self.best_size = size;
                    self.best = set;
                }
                return;
            }
            if self.conflicts[v].iter().all(|&m| set & m != m) {
                self.go(v + 1, set | (1 << v), size + 1);
            }
            self.go(v + 1, set, size);
        }
    }

    let mut search = Search { n, conflicts: &conflicts, best: 0, best_size: 0 };
    search.go(0, 0, 0);
    Ok((0..n).filter(|&v| search.best & (1 << v) != 0).collect())
}

/// A maximal independent set built in random vertex order.
pub fn independent_set_greedy<R: Rng + ?Sized>(h: &TriHypergraph, rng: &mut R) -> Vec<usize> {
    let inc = h.incidence();
    let mut order: Vec<usize> = (0..h.num_vertices()).collect();
    order.shuffle(rng);
    let mut chosen = vec![false; h.num_vertices()];
    for v in order {
        if inc[v].iter().all(|&(x, y)| !(chosen[x as usize] && chosen[y as usize])) {
            chosen[v] = true;
        }
    }
    (0..h.num_vertices()).filter(|&v| chosen[v]).collect()
}

/// Incremental independence of a growing line set: each face counts how
/// many of its bounding lines are members.
#[derive(Clone, Debug)]
pub struct IndependenceTracker<'a> {
    arr: &'a Arrangement,
    hits: Vec<u32>,
    member: Vec<bool>,
}

impl<'a> IndependenceTracker<'a> {
    pub fn new(arr: &'a Arrangement) -> Self {
        IndependenceTracker { arr, hits: vec![0; arr.num_faces()], member: vec![false; arr.num_lines()] }
    }

    pub fn contains(&self, l: usize) -> bool {
        self.member[l]
    }

    /// Whether adding `l` keeps the set independent.
    pub fn can_add(&self, l: usize) -> bool {
        !self.member[l]
            && self.arr.line_faces(l).iter().all(|&f| {
                let size = self.arr.face_size(f as usize) as u32;
                size < 2 || self.hits[f as usize] + 1 < size
            })
    }

    /// Adds `l` unconditionally.
    pub fn add(&mut self, l: usize) {
        debug_assert!(!self.member[l]);
        self.member[l] = true;
        for &f in self.arr.line_faces(l) {
            self.hits[f as usize] += 1;
        }
    }

    pub fn try_add(&mut self, l: usize) -> bool {
        let ok = self.can_add(l);
        if ok {
            self.add(l);
        }
        ok
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.member.len()).filter(|&l| self.member[l]).collect()
    }
}

/// Greedily adds lines in `order`, skipping any whose addition would make
/// a face bad.
pub fn greedy_independent_lines(arr: &Arrangement, order: &[usize]) -> Vec<usize> {
    let mut tracker = IndependenceTracker::new(arr);
    for &l in order {
        tracker.try_add(l);
    }
    tracker.members()
}

/// Removes lines from `set` until no face is bad with respect to it.
/// Faces are handled by decreasing size; each still-bad face loses the
/// member lying on the most currently-bad faces (smallest id on ties).
/// Returns the number of removals.
pub fn repair(arr: &Arrangement, set: &mut Vec<usize>) -> usize {
    let mut mask = vec![false; arr.num_lines()];
    for &l in set.iter() {
        mask[l] = true;
    }
    let mut bad = arr.bad_faces_masked(&mask);
    if bad.is_empty() {
        return 0;
    }
    bad.sort_by(|&f, &g| arr.face_size(g).cmp(&arr.face_size(f)).then(f.cmp(&g)));
    let mut still_bad = vec![false; arr.num_faces()];
    let mut count = vec![0usize; arr.num_lines()];
    for &f in &bad {
        still_bad[f] = true;
        for &l in arr.face(f).bounding_lines {
            count[l as usize] += 1;
        }
    }
    let mut removed = 0;
    for &f in &bad {
        if !still_bad[f] {
            continue;
        }
        let victim = arr
            .face(f)
            .bounding_lines
            .iter()
            .map(|&l| l as usize)
            .max_by(|&x, &y| count[x].cmp(&count[y]).then(y.cmp(&x)))
            .expect("bad faces have lines");
        mask[victim] = false;
        removed += 1;
        for &g in arr.line_faces(victim) {
            let g = g as usize;
            if still_bad[g] {
                still_bad[g] = false;
                for &l in arr.face(g).bounding_lines {
                    count[l as usize] -= 1;
                }
            }
        }
    }
    set.retain(|&l| mask[l]);
    removed
}

/// One full search for a large independent set of lines of `arr`, where
/// `h` is the triangle hypergraph of `arr`.
pub fn find_independent_lines<R: Rng + ?Sized>(
    arr: &Arrangement,
    h: &TriHypergraph,
    cfg: &SamplingConfig,
    rng: &mut R,
) -> IndepResult {
    let n = arr.num_lines();
    let p = sampling_probability(n, cfg);
    let mut result = IndepResult {
        lines: Vec::new(),
        sampled: 0,
        pre_repair: 0,
        repaired: 0,
        extended: 0,
        attempts: 0,
        fallback: false,
        certified: false,
    };
    for _ in 0..cfg.retries {
        result.attempts += 1;
        let sample = sample_lines(n, p, rng);
        let (hx, back) = h.induced(&sample).expect("sample ids are in range");
        let local = if sample.len() <= cfg.exact_solver_cap {
            independent_set_exact(&hx, cfg.exact_solver_cap).expect("under cap")
        } else {
            independent_set_greedy(&hx, rng)
        };
        let mut set: Vec<usize> = local.into_iter().map(|v| back[v]).collect();
        set.sort_unstable();
        result.sampled = sample.len();
        result.pre_repair = set.len();
        result.repaired = repair(arr, &mut set);
        result.lines = set;
        if !result.lines.is_empty() {
            break;
        }
    }
    if result.lines.is_empty() {
        result.fallback = true;
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        result.lines = greedy_independent_lines(arr, &order);
    } else if cfg.extend {
        let before = result.lines.len();
        let mut search = LocalSearch::new(arr, &result.lines);
        search.extend(rng);
        search.improve(cfg.search_rounds as usize, rng);
        result.lines = search.members();
        result.extended = result.lines.len() - before;
    }
    result.certified = arr.is_independent(&result.lines).expect("ids in range");
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::lines_from_ints;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn probability_examples() {
        let cfg = SamplingConfig::default();
        assert!((sampling_probability(4, &cfg) - 0.25).abs() < 1e-12);
        let p = sampling_probability(1024, &cfg);
        assert!((p - 0.0196).abs() < 5e-5, "{p}");
        let one = SamplingConfig { d: 1, ..cfg.clone() };
        assert_eq!(sampling_probability(1, &one), 1.0);
        // n = 1 with d = 4 stays on the formula: 4^(-3/5).
        assert!((sampling_probability(1, &cfg) - 4f64.powf(-0.6)).abs() < 1e-12);
        for n in 1..3000 {
            let p = sampling_probability(n, &cfg);
            assert!(p > 0.0 && p <= 1.0);
        }
    }

    #[test]
    fn sampling_with_certainty_takes_everything() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(sample_lines(7, 1.0, &mut rng), (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = sample_lines(5, 0.5, &mut ChaCha8Rng::seed_from_u64(11));
        let b = sample_lines(5, 0.5, &mut ChaCha8Rng::seed_from_u64(11));
        assert_eq!(a, b);
        // Golden value for seed 11.
        assert_eq!(a, GOLDEN_SAMPLE_SEED_11);
    }

    const GOLDEN_SAMPLE_SEED_11: &[usize] = &[0, 1, 2, 4];

    #[test]
    fn sample_size_matches_binomial_mean() {
        let (n, p) = (10_000, 0.1);
        let mean = (0..100u64)
            .map(|s| sample_lines(n, p, &mut ChaCha8Rng::seed_from_u64(s)).len() as f64)
            .sum::<f64>()
            / 100.0;
        // sigma of one draw is 30; allow 3 sigma on the single-run scale.
        assert!((mean - 1000.0).abs() <= 90.0, "{mean}");
    }

    fn brute_force_max(h: &TriHypergraph) -> Vec<usize> {
        let n = h.num_vertices();
        let mut best: Option<Vec<usize>> = None;
        for mask in 0u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            if !h.is_independent_set(&set).unwrap() {
                continue;
            }
            best = match best {
                None => Some(set),
                Some(b) if set.len() > b.len() || (set.len() == b.len() && set < b) => Some(set),
                Some(b) => Some(b),
            };
        }
        best.unwrap()
    }

    #[test]
    fn exact_solver_examples() {
        let empty = TriHypergraph::new(5, []).unwrap();
        assert_eq!(independent_set_exact(&empty, 24).unwrap(), vec![0, 1, 2, 3, 4]);
        let single = TriHypergraph::new(3, [[0, 1, 2]]).unwrap();
        assert_eq!(independent_set_exact(&single, 24).unwrap(), vec![0, 1]);
        let k4 = TriHypergraph::new(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        assert_eq!(brute_force_max(&k4), vec![0, 1]);
        assert_eq!(independent_set_exact(&k4, 24).unwrap(), vec![0, 1]);
        let zero = TriHypergraph::new(0, []).unwrap();
        assert!(independent_set_exact(&zero, 24).unwrap().is_empty());
        let big = TriHypergraph::new(30, []).unwrap();
        assert_eq!(
            independent_set_exact(&big, 24),
            Err(HypergraphError::CapExceeded { vertices: 30, cap: 24 })
        );
    }

    #[test]
    fn greedy_on_single_edge_keeps_two_for_every_order() {
        let single = TriHypergraph::new(3, [[0, 1, 2]]).unwrap();
        for seed in 0..50 {
            let s = independent_set_greedy(&single, &mut ChaCha8Rng::seed_from_u64(seed));
            assert_eq!(s.len(), 2);
        }
        let empty = TriHypergraph::new(6, []).unwrap();
        let s = independent_set_greedy(&empty, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(s, (0..6).collect::<Vec<_>>());
    }

    fn arb_hypergraph(max_n: usize) -> impl Strategy<Value = TriHypergraph> {
        (3usize..=max_n).prop_flat_map(|n| {
            let triple = (0..n as u32, 0..n as u32, 0..n as u32)
                .prop_filter("distinct", |(a, b, c)| a != b && b != c && a != c)
                .prop_map(|(a, b, c)| [a, b, c]);
            prop::collection::vec(triple, 0..40)
                .prop_map(move |edges| TriHypergraph::new(n, edges).unwrap())
        })
    }

    proptest! {
        #[test]
        fn exact_matches_brute_force(h in arb_hypergraph(12)) {
            prop_assert_eq!(independent_set_exact(&h, 24).unwrap(), brute_force_max(&h));
        }

        #[test]
        fn greedy_is_maximal(h in arb_hypergraph(20), seed in any::<u64>()) {
            let s = independent_set_greedy(&h, &mut ChaCha8Rng::seed_from_u64(seed));
            prop_assert!(h.is_independent_set(&s).unwrap());
            for v in 0..h.num_vertices() {
                if !s.contains(&v) {
                    let mut bigger = s.clone();
                    bigger.push(v);
                    prop_assert!(!h.is_independent_set(&bigger).unwrap());
                }
            }
        }

        #[test]
        fn local_search_keeps_sets_independent_and_maximal(
            raw in prop::collection::vec((-4i64..=4, -4i64..=4, -4i64..=4), 2..14),
            seed in any::<u64>(),
        ) {
            let mut lines: Vec<crate::exact::Line> = Vec::new();
            for (a, b, c) in raw {
                if let Ok(l) = crate::exact::Line::from_ints(a, b, c) {
                    if !lines.contains(&l) {
                        lines.push(l);
                    }
                }
            }
            prop_assume!(!lines.is_empty());
            let arr = Arrangement::build(&lines).unwrap();
            let n = arr.num_lines();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut search = LocalSearch::new(&arr, &[]);
            search.extend(&mut rng);
            let greedy = search.members();
            prop_assert!(arr.is_independent(&greedy).unwrap());
            let maximal = |set: &[usize]| (0..n).filter(|l| !set.contains(l)).all(|l| {
                let mut bigger = set.to_vec();
                bigger.push(l);
                !arr.is_independent(&bigger).unwrap()
            });
            prop_assert!(maximal(&greedy));
            prop_assert!(search.counters_consistent());
            search.improve(5, &mut rng);
            prop_assert!(search.counters_consistent());
            let improved = search.members();
            prop_assert!(improved.len() >= greedy.len());
            prop_assert!(arr.is_independent(&improved).unwrap());
            prop_assert!(maximal(&improved));
        }
    }

    #[test]
    fn find_on_single_line_and_axes() {
        let cfg = SamplingConfig::default();
        let one = Arrangement::build(&lines_from_ints(&[(1, 0, 0)]).unwrap()).unwrap();
        let h = TriHypergraph::from_arrangement(&one);
        let r = find_independent_lines(&one, &h, &cfg, &mut ChaCha8Rng::seed_from_u64(0));
        assert_eq!(r.lines, vec![0]);
        assert!(r.certified);

        let axes = Arrangement::build(&lines_from_ints(&[(1, 0, 0), (0, 1, 0)]).unwrap()).unwrap();
        let h = TriHypergraph::from_arrangement(&axes);
        for seed in 0..20 {
            let r = find_independent_lines(&axes, &h, &cfg, &mut ChaCha8Rng::seed_from_u64(seed));
            assert_eq!(r.lines.len(), 1);
            assert!(r.certified);
        }
        // Oracle: of the four subsets only the singletons and the empty set
        // are independent.
        assert!(axes.is_independent(&[]).unwrap());
        assert!(axes.is_independent(&[0]).unwrap());
        assert!(axes.is_independent(&[1]).unwrap());
        assert!(!axes.is_independent(&[0, 1]).unwrap());
    }

    #[test]
    fn repair_clears_every_bad_face() {
        let arr = Arrangement::build(
            &lines_from_ints(&[(0, 1, 0), (1, 0, 0), (1, 1, 1), (1, -1, 3), (2, 1, -1)]).unwrap(),
        )
        .unwrap();
        let mut all: Vec<usize> = (0..5).collect();
        let removed = repair(&arr, &mut all);
        assert!(removed > 0);
        assert!(arr.is_independent(&all).unwrap());
        assert_eq!(all.len() + removed, 5);
    }
}
