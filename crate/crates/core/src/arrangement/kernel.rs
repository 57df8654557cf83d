//! Integer kernel for arrangement construction.
//!
//! Lines arrive with coprime integer coefficients. Every predicate the
//! builder needs is a polynomial of degree at most five in those
//! coefficients, so when all of them fit in 24 bits the whole build runs
//! exactly in `i128`; otherwise it runs on `BigInt`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::exact::Line;

/// Largest coefficient width (bits) for which the `i128` kernel is exact:
/// the worst comparison is `|num1·den2| <= 4B³·2B² = 8B⁵ < 2¹²⁷`.
pub(crate) const SMALL_KERNEL_BITS: u64 = 24;

pub(crate) trait Coord: Clone + Ord + Signed + Send + Sync {}

impl<T: Clone + Ord + Signed + Send + Sync> Coord for T {}

#[derive(Clone, Debug)]
pub(crate) struct Coefs<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

pub(crate) fn small_coefs(lines: &[Line]) -> Option<Vec<Coefs<i128>>> {
    if lines.iter().any(|l| l.coefficient_bits() > SMALL_KERNEL_BITS) {
        return None;
    }
    Some(
        lines
            .iter()
            .map(|l| Coefs {
                a: l.a().to_i128().expect("checked width"),
                b: l.b().to_i128().expect("checked width"),
                c: l.c().to_i128().expect("checked width"),
            })
            .collect(),
    )
}

pub(crate) fn big_coefs(lines: &[Line]) -> Vec<Coefs<BigInt>> {
    lines
        .iter()
        .map(|l| Coefs { a: l.a().clone(), b: l.b().clone(), c: l.c().clone() })
        .collect()
}

/// `a_l·b_m - a_m·b_l`; positive iff the direction of `l` comes strictly
/// before that of `m` counter-clockwise.
#[inline]
pub(crate) fn cross<T: Coord>(l: &Coefs<T>, m: &Coefs<T>) -> T {
    l.a.clone() * m.b.clone() - m.a.clone() * l.b.clone()
}

/// Position of `l ∩ m` along `l`'s direction `(-b, a)` as `(num, den)`
/// with `den > 0`. Requires `l` and `m` not parallel.
#[inline]
pub(crate) fn crossing_param<T: Coord>(l: &Coefs<T>, m: &Coefs<T>) -> (T, T) {
    let den = cross(l, m);
    let norm = l.a.clone() * l.a.clone() + l.b.clone() * l.b.clone();
    let dot = l.a.clone() * m.a.clone() + l.b.clone() * m.b.clone();
    let num = m.c.clone() * norm - l.c.clone() * dot;
    if den.is_negative() {
        (-num, -den)
    } else {
        (num, den)
    }
}

/// Compares `n1/d1` with `n2/d2` for positive denominators.
#[inline]
pub(crate) fn cmp_fraction<T: Coord>(n1: &T, d1: &T, n2: &T, d2: &T) -> Ordering {
    (n1.clone() * d2.clone()).cmp(&(n2.clone() * d1.clone()))
}
