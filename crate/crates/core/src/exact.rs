//! Exact rational primitives: points, normalized lines and sign predicates.
//!
//! Every predicate here is decided by the sign of an exact rational
//! expression. Nothing in this module touches floating point.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::GeomError;

/// Arbitrary-precision rational in canonical form (positive denominator,
/// coprime numerator and denominator).
pub type Rational = BigRational;

/// Builds an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Signed>(value: &T) -> Sign {
        if value.is_zero() {
            Sign::Zero
        } else if value.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(rat(x), rat(y))
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// The line `a·x + b·y = c`.
///
/// Coefficients are always stored as coprime integers with the first
/// nonzero of `(a, b)` positive, so two `Line` values compare equal exactly
/// when they describe the same geometric line.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl Line {
    /// Normalizes arbitrary rational coefficients.
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Line, GeomError> {
        if a.is_zero() && b.is_zero() {
            return Err(GeomError::DegenerateLine);
        }
        let lcm = a.denom().lcm(b.denom()).lcm(c.denom());
        let scale = |r: &Rational| r.numer() * (&lcm / r.denom());
        Ok(Self::normalize(scale(&a), scale(&b), scale(&c)))
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Line, GeomError> {
        Self::from_bigints(BigInt::from(a), BigInt::from(b), BigInt::from(c))
    }

    pub fn from_bigints(a: BigInt, b: BigInt, c: BigInt) -> Result<Line, GeomError> {
        if a.is_zero() && b.is_zero() {
            return Err(GeomError::DegenerateLine);
        }
        Ok(Self::normalize(a, b, c))
    }

    fn normalize(a: BigInt, b: BigInt, c: BigInt) -> Line {
        let g = a.gcd(&b).gcd(&c);
        let (mut a, mut b, mut c) = (a / &g, b / &g, c / &g);
        let lead_negative = if a.is_zero() { b.is_negative() } else { a.is_negative() };
        if lead_negative {
            a = -a;
            b = -b;
            c = -c;
        }
        Line { a, b, c }
    }

    /// Re-normalizes; the identity on any value produced by this module.
    pub fn normalized(&self) -> Line {
        Self::normalize(self.a.clone(), self.b.clone(), self.c.clone())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// Coefficients as rationals (denominator one).
    pub fn coefficients(&self) -> (Rational, Rational, Rational) {
        (
            Rational::from_integer(self.a.clone()),
            Rational::from_integer(self.b.clone()),
            Rational::from_integer(self.c.clone()),
        )
    }

    pub fn is_parallel(&self, other: &Line) -> bool {
        (&self.a * &other.b - &other.a * &self.b).is_zero()
    }

    /// Evaluates `a·x + b·y - c` at `p`.
    pub fn eval(&self, p: &Point2) -> Rational {
        let (a, b, c) = self.coefficients();
        a * &p.x + b * &p.y - c
    }

    /// Largest coefficient magnitude in bits.
    pub fn coefficient_bits(&self) -> u64 {
        self.a.bits().max(self.b.bits()).max(self.c.bits())
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y = {}", self.a, self.b, self.c)
    }
}

/// The unique normalized line through two distinct points.
pub fn line_through(p: &Point2, q: &Point2) -> Result<Line, GeomError> {
    if p == q {
        return Err(GeomError::CoincidentPoints);
    }
    let a = &q.y - &p.y;
    let b = &p.x - &q.x;
    let c = &a * &p.x + &b * &p.y;
    Line::new(a, b, c)
}

/// Intersection point of two distinct lines, `None` when they are parallel.
pub fn intersect(l1: &Line, l2: &Line) -> Result<Option<Point2>, GeomError> {
    if l1 == l2 {
        return Err(GeomError::IdenticalLines);
    }
    let det = &l1.a * &l2.b - &l2.a * &l1.b;
    if det.is_zero() {
        return Ok(None);
    }
    let x = &l1.c * &l2.b - &l2.c * &l1.b;
    let y = &l1.a * &l2.c - &l2.a * &l1.c;
    Ok(Some(Point2::new(
        Rational::new(x, det.clone()),
        Rational::new(y, det),
    )))
}

/// Sign of the determinant of `(q - p, r - p)`; `Positive` for a
/// counter-clockwise turn.
pub fn orientation(p: &Point2, q: &Point2, r: &Point2) -> Sign {
    let det = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
    Sign::of(&det)
}

/// Sign of `a·px + b·py - c`.
pub fn side(l: &Line, p: &Point2) -> Sign {
    Sign::of(&l.eval(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(x: i64, y: i64) -> Point2 {
        Point2::from_ints(x, y)
    }

    fn coeffs(l: &Line) -> (i64, i64, i64) {
        use num_traits::ToPrimitive;
        (l.a().to_i64().unwrap(), l.b().to_i64().unwrap(), l.c().to_i64().unwrap())
    }

    #[test]
    fn line_through_axis_and_diagonal() {
        assert_eq!(coeffs(&line_through(&pt(0, 0), &pt(1, 0)).unwrap()), (0, 1, 0));
        assert_eq!(coeffs(&line_through(&pt(0, 0), &pt(0, 1)).unwrap()), (1, 0, 0));
        assert_eq!(coeffs(&line_through(&pt(0, 0), &pt(1, 1)).unwrap()), (1, -1, 0));
        assert_eq!(
            line_through(&pt(3, 4), &pt(3, 4)),
            Err(GeomError::CoincidentPoints)
        );
    }

    #[test]
    fn rational_coefficients_are_scaled_to_coprime_integers() {
        let l = Line::new(ratio(1, 2), ratio(-1, 3), ratio(5, 6)).unwrap();
        assert_eq!(coeffs(&l), (3, -2, 5));
        let m = Line::new(ratio(-2, 1), rat(0), rat(4)).unwrap();
        assert_eq!(coeffs(&m), (1, 0, -2));
        assert_eq!(Line::new(rat(0), rat(0), rat(1)), Err(GeomError::DegenerateLine));
    }

    #[test]
    fn intersect_examples() {
        let x0 = Line::from_ints(1, 0, 0).unwrap();
        let y0 = Line::from_ints(0, 1, 0).unwrap();
        let x1 = Line::from_ints(1, 0, 1).unwrap();
        assert_eq!(intersect(&x0, &y0).unwrap(), Some(pt(0, 0)));
        assert_eq!(intersect(&x0, &x1).unwrap(), None);
        // y = x and y = -x + 2
        let d1 = Line::from_ints(1, -1, 0).unwrap();
        let d2 = Line::from_ints(1, 1, 2).unwrap();
        assert_eq!(intersect(&d1, &d2).unwrap(), Some(pt(1, 1)));
        assert_eq!(intersect(&d1, &d1), Err(GeomError::IdenticalLines));
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&pt(0, 0), &pt(1, 0), &pt(0, 1)), Sign::Positive);
        assert_eq!(orientation(&pt(0, 0), &pt(1, 1), &pt(2, 2)), Sign::Zero);
        assert_eq!(orientation(&pt(0, 0), &pt(0, 1), &pt(1, 0)), Sign::Negative);
    }

    #[test]
    fn side_examples() {
        let x0 = Line::from_ints(1, 0, 0).unwrap();
        let y1 = Line::from_ints(0, 1, 1).unwrap();
        assert_eq!(side(&x0, &pt(1, 0)), Sign::Positive);
        assert_eq!(side(&x0, &pt(0, 5)), Sign::Zero);
        assert_eq!(side(&y1, &pt(0, 0)), Sign::Negative);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..12).prop_map(|(n, d)| ratio(n, d))
    }

    fn arb_point() -> impl Strategy<Value = Point2> {
        (arb_rational(), arb_rational()).prop_map(|(x, y)| Point2::new(x, y))
    }

    proptest! {
        #[test]
        fn line_through_contains_both_points(p in arb_point(), q in arb_point()) {
            prop_assume!(p != q);
            let l = line_through(&p, &q).unwrap();
            prop_assert_eq!(side(&l, &p), Sign::Zero);
            prop_assert_eq!(side(&l, &q), Sign::Zero);
            prop_assert_eq!(l.normalized(), l.clone());
            prop_assert_eq!(line_through(&q, &p).unwrap(), l);
        }

        #[test]
        fn orientation_flips_under_swaps(p in arb_point(), q in arb_point(), r in arb_point()) {
            let s = orientation(&p, &q, &r);
            prop_assert_eq!(orientation(&q, &p, &r), s.flip());
            prop_assert_eq!(orientation(&p, &r, &q), s.flip());
            prop_assert_eq!(orientation(&r, &q, &p), s.flip());
        }

        #[test]
        fn intersection_lies_on_both_lines(
            p in arb_point(), q in arb_point(), r in arb_point(), s in arb_point()
        ) {
            prop_assume!(p != q && r != s);
            let l1 = line_through(&p, &q).unwrap();
            let l2 = line_through(&r, &s).unwrap();
            prop_assume!(l1 != l2);
            match intersect(&l1, &l2).unwrap() {
                Some(pt) => {
                    prop_assert_eq!(side(&l1, &pt), Sign::Zero);
                    prop_assert_eq!(side(&l2, &pt), Sign::Zero);
                }
                None => prop_assert!(l1.is_parallel(&l2)),
            }
        }
    }
}
