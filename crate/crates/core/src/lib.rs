pub mod basis;
pub mod error;
pub mod geometry;
pub mod kakeya;
pub mod maximal;
pub mod scalar;
pub mod tree;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;

pub type Point = geometry::Point<Rational>;
pub type ConvexPolygon = geometry::ConvexPolygon<Rational>;
pub type VParallelogram = geometry::VParallelogram<Rational>;
pub type ParallelogramUnion = geometry::ParallelogramUnion<Rational>;

pub type PointF64 = geometry::Point<f64>;
pub type ConvexPolygonF64 = geometry::ConvexPolygon<f64>;
pub type VParallelogramF64 = geometry::VParallelogram<f64>;
pub type ParallelogramUnionF64 = geometry::ParallelogramUnion<f64>;
