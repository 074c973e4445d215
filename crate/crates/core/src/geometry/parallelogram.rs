use serde::{Deserialize, Serialize};

use super::{check_dilation, ConvexPolygon, Homothecy, Interval, Point};
use crate::scalar::{self, max_of, min_of, Scalar};
use crate::{Error, Result};

/// Parallelogram with vertical left and right sides.
///
/// Vertices are `(x0, yBL)`, `(x0, yBL + side)`, `(x1, yBL + slope·(x1 − x0))`
/// and `(x1, yBL + slope·(x1 − x0) + side)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", rename_all = "camelCase", deny_unknown_fields)]
pub struct VParallelogram<T> {
    #[serde(with = "scalar::text")]
    pub x0: T,
    #[serde(with = "scalar::text")]
    pub x1: T,
    #[serde(with = "scalar::text")]
    pub y_bottom_left: T,
    #[serde(with = "scalar::text")]
    pub slope: T,
    #[serde(with = "scalar::text")]
    pub side_length: T,
}

impl<T: Scalar> VParallelogram<T> {
    pub fn new(x0: T, x1: T, y_bottom_left: T, slope: T, side_length: T) -> Result<Self> {
        let p = VParallelogram { x0, x1, y_bottom_left, slope, side_length };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.x0.partial_cmp(&self.x1) != Some(std::cmp::Ordering::Less) {
            return Err(Error::DegeneratePolygon(format!(
                "parallelogram needs x0 < x1, got {} and {}",
                self.x0.to_text(),
                self.x1.to_text()
            )));
        }
        if !self.side_length.is_positive() {
            return Err(Error::DegeneratePolygon(format!(
                "parallelogram side length must be positive, got {}",
                self.side_length.to_text()
            )));
        }
        Ok(())
    }

    pub fn width(&self) -> T {
        self.x1.clone() - self.x0.clone()
    }

    /// Value of the bottom edge's line at `x = 0`.
    pub fn intercept(&self) -> T {
        self.y_bottom_left.clone() - self.slope.clone() * self.x0.clone()
    }

    pub fn bottom_at(&self, x: &T) -> T {
        self.y_bottom_left.clone() + self.slope.clone() * (x.clone() - self.x0.clone())
    }

    pub fn top_at(&self, x: &T) -> T {
        self.bottom_at(x) + self.side_length.clone()
    }

    /// Vertical cross-section at `x`, if `x ∈ [x0, x1]`.
    pub fn slice_at(&self, x: &T) -> Option<Interval<T>> {
        if x < &self.x0 || x > &self.x1 {
            return None;
        }
        let lo = self.bottom_at(x);
        Some(Interval::new(lo.clone(), lo + self.side_length.clone()))
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        self.slice_at(&p.x).is_some_and(|s| s.contains(&p.y))
    }

    /// Counterclockwise vertices starting at the bottom left.
    pub fn vertices(&self) -> [Point<T>; 4] {
        let br = self.bottom_at(&self.x1);
        [
            Point::new(self.x0.clone(), self.y_bottom_left.clone()),
            Point::new(self.x1.clone(), br.clone()),
            Point::new(self.x1.clone(), br + self.side_length.clone()),
            Point::new(self.x0.clone(), self.y_bottom_left.clone() + self.side_length.clone()),
        ]
    }

    pub fn to_polygon(&self) -> ConvexPolygon<T> {
        ConvexPolygon::new(self.vertices().to_vec()).expect("validated parallelogram is convex")
    }

    /// The part over `[lo, hi] × ℝ`, if it has positive width.
    pub fn restrict(&self, lo: &T, hi: &T) -> Option<VParallelogram<T>> {
        let x0 = max_of(self.x0.clone(), lo.clone());
        let x1 = min_of(self.x1.clone(), hi.clone());
        if x0 >= x1 {
            return None;
        }
        Some(VParallelogram {
            y_bottom_left: self.bottom_at(&x0),
            x0,
            x1,
            slope: self.slope.clone(),
            side_length: self.side_length.clone(),
        })
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> VParallelogram<U> {
        VParallelogram {
            x0: f(&self.x0),
            x1: f(&self.x1),
            y_bottom_left: f(&self.y_bottom_left),
            slope: f(&self.slope),
            side_length: f(&self.side_length),
        }
    }
}

impl<T: Scalar> Homothecy for VParallelogram<T> {
    type Scalar = T;

    fn translate(&self, t: &Point<T>) -> Self {
        VParallelogram {
            x0: self.x0.clone() + t.x.clone(),
            x1: self.x1.clone() + t.x.clone(),
            y_bottom_left: self.y_bottom_left.clone() + t.y.clone(),
            slope: self.slope.clone(),
            side_length: self.side_length.clone(),
        }
    }

    fn dilate(&self, r: &T) -> Result<Self> {
        check_dilation(r)?;
        Ok(VParallelogram {
            x0: self.x0.clone() * r.clone(),
            x1: self.x1.clone() * r.clone(),
            y_bottom_left: self.y_bottom_left.clone() * r.clone(),
            slope: self.slope.clone(),
            side_length: self.side_length.clone() * r.clone(),
        })
    }

    fn projections(&self) -> (Interval<T>, Interval<T>) {
        let right = self.bottom_at(&self.x1);
        let lo = min_of(self.y_bottom_left.clone(), right.clone());
        let hi = max_of(self.y_bottom_left.clone(), right) + self.side_length.clone();
        (Interval::new(self.x0.clone(), self.x1.clone()), Interval::new(lo, hi))
    }

    fn area(&self) -> T {
        self.side_length.clone() * self.width()
    }
}
