use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use proptest::prelude::*;

use super::*;
use crate::exact::{rat, side, Rational, Sign};

fn arr(triples: &[(i64, i64, i64)]) -> Arrangement {
    Arrangement::build(&lines_from_ints(triples).unwrap()).unwrap()
}

const AXES: [(i64, i64, i64); 2] = [(1, 0, 0), (0, 1, 0)];
const GRID2: [(i64, i64, i64); 4] = [(1, 0, 0), (1, 0, 1), (0, 1, 0), (0, 1, 1)];
const GENERIC3: [(i64, i64, i64); 3] = [(0, 1, 0), (1, 0, 0), (1, 1, 1)];

/// Faces by brute force: sample one point in every interval cut by the
/// lines on vertical lines between consecutive critical x values, and
/// identify faces with their sign vectors. A line bounds a face iff
/// flipping its sign gives another realized face.
fn oracle_faces(lines: &[Line]) -> BTreeMap<Vec<Sign>, BTreeSet<usize>> {
    let mut xs: Vec<Rational> = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        let (a, b, c) = l.coefficients();
        if b == rat(0) {
            xs.push(c / a);
        }
        for m in &lines[i + 1..] {
            if let Some(p) = intersect(l, m).unwrap() {
                xs.push(p.x);
            }
        }
    }
    let samples = |mut vals: Vec<Rational>| -> Vec<Rational> {
        vals.sort();
        vals.dedup();
        if vals.is_empty() {
            return vec![rat(0)];
        }
        let mut out = vec![&vals[0] - rat(1), vals.last().unwrap() + rat(1)];
        for w in vals.windows(2) {
            out.push((&w[0] + &w[1]) / rat(2));
        }
        out
    };
    let mut found: BTreeSet<Vec<Sign>> = BTreeSet::new();
    for x0 in samples(xs) {
        let ys: Vec<Rational> = lines
            .iter()
            .filter(|l| l.b() != &0.into())
            .map(|l| {
                let (a, b, c) = l.coefficients();
                (c - a * &x0) / b
            })
            .collect();
        for y0 in samples(ys) {
            let p = Point2::new(x0.clone(), y0);
            let signs: Vec<Sign> = lines.iter().map(|l| side(l, &p)).collect();
            assert!(signs.iter().all(|&s| s != Sign::Zero));
            found.insert(signs);
        }
    }
    found
        .iter()
        .map(|signs| {
            let bounding = (0..lines.len())
                .filter(|&l| {
                    let mut flipped = signs.clone();
                    flipped[l] = flipped[l].flip();
                    found.contains(&flipped)
                })
                .collect();
            (signs.clone(), bounding)
        })
        .collect()
}

fn check_against_oracle(arr: &Arrangement) {
    let oracle = oracle_faces(arr.lines());
    assert_eq!(arr.num_faces(), oracle.len(), "face count");
    let mut seen = BTreeSet::new();
    for f in arr.faces() {
        let p = arr.face_interior_point(f.id);
        let signs: Vec<Sign> = arr.lines().iter().map(|l| side(l, &p)).collect();
        assert!(signs.iter().all(|&s| s != Sign::Zero), "sample point of face {} on a line", f.id);
        let expected = oracle.get(&signs).expect("face realized in oracle");
        let got: BTreeSet<usize> = f.bounding_lines.iter().map(|&l| l as usize).collect();
        assert_eq!(&got, expected, "bounding lines of face {}", f.id);
        assert!(seen.insert(signs), "two faces share a sign vector");
    }
}

#[test]
fn axes_have_four_unbounded_faces() {
    let a = arr(&AXES);
    assert_eq!(a.num_faces(), 4);
    assert_eq!(a.num_vertices(), 1);
    for f in a.faces() {
        assert_eq!(f.bounding_lines, &[0, 1]);
        assert!(!f.bounded);
    }
    check_against_oracle(&a);
}

#[test]
fn grid_two_has_nine_faces() {
    let a = arr(&GRID2);
    assert_eq!(a.num_vertices(), 4);
    assert_eq!(a.num_faces(), 1 + 4 + 4);
    assert_eq!(a.faces().filter(|f| f.bounded).count(), 1);
    check_against_oracle(&a);
}

#[test]
fn four_generic_lines() {
    let a = arr(&[(0, 1, 0), (1, 0, 0), (1, 1, 1), (1, -2, 5)]);
    assert!(a.is_simple());
    assert_eq!(a.num_vertices(), 6);
    assert_eq!(a.num_faces(), 11);
    check_against_oracle(&a);
}

#[test]
fn three_generic_lines_face_sizes() {
    let a = arr(&GENERIC3);
    assert_eq!(a.faces_of_size(3).len(), 4);
    assert_eq!(a.faces_of_size(2).len(), 3);
    assert_eq!(a.faces().filter(|f| f.bounded).count(), 1);
    assert!(arr(&AXES).faces_of_size(3).is_empty());
    check_against_oracle(&a);
}

#[test]
fn bad_face_examples() {
    let axes = arr(&AXES);
    assert!(axes.bad_faces(&[0]).unwrap().is_empty());
    assert_eq!(axes.bad_faces(&[0, 1]).unwrap(), vec![0, 1, 2, 3]);
    let g = arr(&GENERIC3);
    let bad = g.bad_faces(&[0, 1]).unwrap();
    assert_eq!(bad.len(), 1);
    assert_eq!(g.face(bad[0]).bounding_lines, &[0, 1]);
    assert_eq!(axes.bad_faces(&[5]), Err(ArrangementError::UnknownLineId(5)));
}

#[test]
fn independence_examples() {
    let axes = arr(&AXES);
    assert!(axes.is_independent(&[]).unwrap());
    assert!(!axes.is_independent(&[0, 1]).unwrap());
    let g = arr(&GENERIC3);
    for l in 0..3 {
        assert!(g.is_independent(&[l]).unwrap());
    }
    assert_eq!(g.is_independent(&[3]), Err(ArrangementError::UnknownLineId(3)));
}

#[test]
fn build_errors() {
    assert_eq!(Arrangement::build(&[]).unwrap_err(), ArrangementError::EmptyInput);
    let dup = lines_from_ints(&[(1, 0, 0), (0, 1, 0), (2, 0, 0)]).unwrap();
    assert_eq!(
        Arrangement::build(&dup).unwrap_err(),
        ArrangementError::DuplicateLine { first: 0, second: 2 }
    );
}

#[test]
fn degenerate_inputs() {
    let parallel = arr(&[(0, 1, 0), (0, 1, 1), (0, 1, 2)]);
    assert_eq!(parallel.num_vertices(), 0);
    let sizes: Vec<usize> = parallel.faces().map(|f| f.size()).collect::<BTreeSet<_>>().into_iter().collect();
    assert_eq!(sizes, vec![1, 2]);
    assert_eq!(parallel.faces_of_size(1).len(), 2);
    assert_eq!(parallel.faces_of_size(2).len(), 2);
    check_against_oracle(&parallel);

    let pencil = arr(&[(0, 1, 0), (1, -1, 0), (2, -1, 0), (1, 0, 0)]);
    assert_eq!(pencil.num_vertices(), 1);
    assert_eq!(pencil.vertex(0).lines, &[0, 1, 2, 3]);
    assert_eq!(pencil.num_faces(), 8);
    check_against_oracle(&pencil);

    let single = arr(&[(3, 4, 5)]);
    assert_eq!(single.num_faces(), 2);
    assert!(single.faces().all(|f| f.size() == 1 && !f.bounded));
    assert_eq!(single.euler_characteristic(), 2);
}

#[test]
fn clip_box_contains_vertices_and_meets_lines() {
    let a = arr(&[(1, 2, 30), (3, -1, 4), (5, 5, -7), (0, 1, 9)]);
    let b = a.clip_box();
    for v in 0..a.num_vertices() {
        assert!(b.contains_strictly(&a.vertex_point(v)));
    }
    for q in 0..a.num_infinite_points() {
        let p = a.exit_point(q);
        let (l, _) = a.infinite_point_ray(q);
        assert_eq!(side(&a.lines()[l], &p), Sign::Zero);
        assert!(p.x.abs() == b.half || p.y.abs() == b.half);
    }
}

#[test]
fn summary_histogram_counts_every_face() {
    let a = arr(&GRID2);
    let s = a.summary();
    assert_eq!(s.faces, 9);
    assert_eq!(s.face_size_histogram.iter().map(|&(_, c)| c).sum::<usize>(), 9);
    assert_eq!(s.face_size_histogram, vec![(2, 4), (3, 4), (4, 1)]);
}

#[test]
fn small_and_big_kernels_agree() {
    let lines = lines_from_ints(&[
        (3, -7, 11),
        (1, 1, 0),
        (2, 5, -3),
        (1, 1, 4),
        (0, 1, 2),
        (7, 0, 1),
        (4, -1, 0),
    ])
    .unwrap();
    let small = build::build_topology(&kernel::small_coefs(&lines).unwrap());
    let big = build::build_topology(&kernel::big_coefs(&lines));
    assert_eq!(small.face_lines.data, big.face_lines.data);
    assert_eq!(small.he_next, big.he_next);
    assert_eq!(small.he_origin, big.he_origin);
}

#[test]
fn wide_coefficients_use_exact_big_kernel() {
    let big = 1i64 << 40;
    let a = arr(&[(big, 1, 0), (1, big, 3), (1, -1, big), (big - 1, 7, 5)]);
    assert_eq!(a.num_vertices(), 6);
    assert_eq!(a.num_faces(), 11);
    check_against_oracle(&a);
}

fn arb_lines(max_n: usize, span: i64) -> impl Strategy<Value = Vec<Line>> {
    prop::collection::vec((-span..=span, -span..=span, -span..=span), 1..=max_n).prop_map(|raw| {
        let mut out: Vec<Line> = Vec::new();
        for (a, b, c) in raw {
            if let Ok(l) = Line::from_ints(a, b, c) {
                if !out.contains(&l) {
                    out.push(l);
                }
            }
        }
        if out.is_empty() {
            out.push(Line::from_ints(1, 0, 0).unwrap());
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn faces_match_point_location_oracle(lines in arb_lines(7, 3)) {
        let a = Arrangement::build(&lines).unwrap();
        check_against_oracle(&a);
    }

    #[test]
    fn euler_and_face_invariants(lines in arb_lines(9, 4)) {
        let a = Arrangement::build(&lines).unwrap();
        let n = a.num_lines();
        prop_assert_eq!(a.euler_characteristic(), 2);
        for f in a.faces() {
            prop_assert!(f.size() >= 1);
            if f.bounded {
                prop_assert!(f.size() >= 3);
            }
        }
        prop_assert!(a.faces_of_size(2).len() <= 2 * n);
        if a.is_simple() {
            prop_assert_eq!(a.num_vertices(), n * (n - 1) / 2);
            prop_assert_eq!(a.num_faces(), n * (n - 1) / 2 + n + 1);
        }
        // every pair of non-parallel lines meets in exactly one vertex
        let mut pairs = BTreeSet::new();
        for v in a.vertices() {
            for (i, &x) in v.lines.iter().enumerate() {
                for &y in &v.lines[i + 1..] {
                    prop_assert!(pairs.insert((x, y)));
                }
            }
        }
        let crossing = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !a.lines()[i].is_parallel(&a.lines()[j]))
            .count();
        prop_assert_eq!(pairs.len(), crossing);
    }

    #[test]
    fn bad_faces_are_monotone(lines in arb_lines(8, 5), m1 in any::<u16>(), m2 in any::<u16>()) {
        let a = Arrangement::build(&lines).unwrap();
        let n = a.num_lines();
        let small: Vec<usize> = (0..n).filter(|&l| (m1 & m2) >> l & 1 == 1).collect();
        let large: Vec<usize> = (0..n).filter(|&l| m1 >> l & 1 == 1).collect();
        let bs: BTreeSet<usize> = a.bad_faces(&small).unwrap().into_iter().collect();
        let bl: BTreeSet<usize> = a.bad_faces(&large).unwrap().into_iter().collect();
        prop_assert!(bs.is_subset(&bl));
        prop_assert_eq!(a.is_independent_masked(&a.subset_mask(&large).unwrap()), bl.is_empty());
    }
}
