//! Exact integer planar geometry.
//!
//! Points live on the quarter-unit lattice and every distance comparison is
//! done on squared integer lengths, so boundary cases (a node sitting exactly
//! on a disk) are decided without rounding.

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

/// A planar position in integer quarter-units.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn translate(self, dx: i64, dy: i64) -> Self {
        Point::new(self.x + dx, self.y + dy)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An exact squared Euclidean length in quarter-units squared.
///
/// The lengths 1/4, 1/2, 3/4 and 1 (in grid units) are 1, 4, 9 and 16 here.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct SquaredLength(pub u64);

impl SquaredLength {
    pub const ZERO: SquaredLength = SquaredLength(0);

    pub const fn value(self) -> u64 {
        self.0
    }

    /// Length in grid units, for display only.
    pub fn approx_grid_length(self) -> f64 {
        (self.0 as f64).sqrt() / 4.0
    }
}

impl fmt::Display for SquaredLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn sq_dist(p: Point, q: Point) -> SquaredLength {
    let dx = p.x.abs_diff(q.x);
    let dy = p.y.abs_diff(q.y);
    SquaredLength(dx * dx + dy * dy)
}

/// Closed-disk membership: the boundary is inside.
pub fn in_closed_disk(center: Point, sq_radius: SquaredLength, p: Point) -> bool {
    sq_dist(center, p) <= sq_radius
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sq_dist_examples() {
        assert_eq!(sq_dist(Point::new(0, 0), Point::new(0, 0)).value(), 0);
        assert_eq!(sq_dist(Point::new(0, 0), Point::new(4, 0)).value(), 16);
        assert_eq!(sq_dist(Point::new(1, 0), Point::new(0, 1)).value(), 2);
    }

    #[test]
    fn closed_disk_examples() {
        let o = Point::new(0, 0);
        // partner on the boundary of a radius-1/2 disk
        assert!(in_closed_disk(o, SquaredLength(4), Point::new(2, 0)));
        assert!(in_closed_disk(o, SquaredLength(0), o));
        assert!(!in_closed_disk(o, SquaredLength(1), Point::new(0, 2)));
    }

    fn pt() -> impl Strategy<Value = Point> {
        (-1000i64..1000, -1000i64..1000).prop_map(|(x, y)| Point::new(x, y))
    }

    proptest! {
        #[test]
        fn symmetric(p in pt(), q in pt()) {
            prop_assert_eq!(sq_dist(p, q), sq_dist(q, p));
        }

        // sqrt(a) <= sqrt(b) + sqrt(c)  <=>  a <= b + c + 2 sqrt(bc)
        //                               <=>  a <= b + c  or  (a - b - c)^2 <= 4bc
        #[test]
        fn triangle_inequality(p in pt(), q in pt(), r in pt()) {
            let a = sq_dist(p, r).value() as i128;
            let b = sq_dist(p, q).value() as i128;
            let c = sq_dist(q, r).value() as i128;
            let slack = a - b - c;
            prop_assert!(slack <= 0 || slack * slack <= 4 * b * c);
        }

        #[test]
        fn disk_monotone_in_radius(c in pt(), p in pt(), r in 0u64..5_000_000, extra in 0u64..1000) {
            if in_closed_disk(c, SquaredLength(r), p) {
                prop_assert!(in_closed_disk(c, SquaredLength(r + extra), p));
            }
        }
    }
}
