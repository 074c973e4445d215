//! Planar primitives over a generic [`Scalar`].

mod containment;
mod measure;
mod parallelogram;
mod polygon;

use serde::{Deserialize, Serialize};

use crate::scalar::{self, Scalar};
use crate::{Error, Result};

pub use containment::{contains_polygon, contains_translate_of_dilate};
pub use measure::{slice_intervals, union_measure, union_measure_within, ParallelogramUnion};
pub use parallelogram::VParallelogram;
pub use polygon::ConvexPolygon;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Point<T> {
    #[serde(with = "scalar::text")]
    pub x: T,
    #[serde(with = "scalar::text")]
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(T::zero(), T::zero())
    }

    pub fn add(&self, other: &Point<T>) -> Point<T> {
        Point::new(self.x.clone() + other.x.clone(), self.y.clone() + other.y.clone())
    }

    pub fn sub(&self, other: &Point<T>) -> Point<T> {
        Point::new(self.x.clone() - other.x.clone(), self.y.clone() - other.y.clone())
    }

    pub fn scale(&self, r: &T) -> Point<T> {
        Point::new(self.x.clone() * r.clone(), self.y.clone() * r.clone())
    }

    pub fn dot(&self, other: &Point<T>) -> T {
        self.x.clone() * other.x.clone() + self.y.clone() * other.y.clone()
    }

    /// z-component of the cross product.
    pub fn cross(&self, other: &Point<T>) -> T {
        self.x.clone() * other.y.clone() - self.y.clone() * other.x.clone()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Point<U> {
        Point::new(f(&self.x), f(&self.y))
    }
}

/// Closed interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct Interval<T> {
    #[serde(with = "scalar::text")]
    pub lo: T,
    #[serde(with = "scalar::text")]
    pub hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        Interval { lo, hi }
    }

    pub fn length(&self) -> T {
        self.hi.clone() - self.lo.clone()
    }

    pub fn contains(&self, t: &T) -> bool {
        &self.lo <= t && t <= &self.hi
    }

    pub fn shift(&self, by: &T) -> Self {
        Interval::new(self.lo.clone() + by.clone(), self.hi.clone() + by.clone())
    }

    pub(crate) fn hull<'a, I: IntoIterator<Item = &'a T>>(values: I) -> Self
    where
        T: 'a,
    {
        let mut it = values.into_iter();
        let first = it.next().expect("nonempty").clone();
        let (lo, hi) = it
            .fold((first.clone(), first), |(lo, hi), v| (scalar::min_of(lo, v.clone()), scalar::max_of(hi, v.clone())));
        Interval::new(lo, hi)
    }
}

/// Translation, dilation about the origin, and coordinate projections.
pub trait Homothecy: Sized {
    type Scalar: Scalar;

    /// `τ_t S`, i.e. `χ(y) = χ_S(y - t)`.
    fn translate(&self, t: &Point<Self::Scalar>) -> Self;

    /// `r S`, i.e. `χ(y) = χ_S(y / r)`.
    fn dilate(&self, r: &Self::Scalar) -> Result<Self>;

    /// `(π_x(S), π_y(S))`.
    fn projections(&self) -> (Interval<Self::Scalar>, Interval<Self::Scalar>);

    fn area(&self) -> Self::Scalar;
}

pub(crate) fn check_dilation<T: Scalar>(r: &T) -> Result<()> {
    if r.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidDilation(r.to_text()))
    }
}
