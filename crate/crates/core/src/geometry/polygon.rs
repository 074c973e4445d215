use serde::{Deserialize, Serialize};

use super::{check_dilation, Homothecy, Interval, Point};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Strictly convex polygon with counterclockwise vertices and positive area.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "T: Scalar")]
pub struct ConvexPolygon<T> {
    vertices: Vec<Point<T>>,
}

impl<T: Scalar> ConvexPolygon<T> {
    /// Validates and normalizes a vertex cycle: clockwise input is reversed and
    /// collinear vertices are dropped. Repeated vertices, zero area and
    /// non-convex cycles are rejected.
    pub fn new(points: Vec<Point<T>>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::DegeneratePolygon(format!("{} vertices", points.len())));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::DegeneratePolygon(format!("vertex {j} repeats vertex {i}")));
                }
            }
        }
        let mut pts = points;
        let signed = signed_area2(&pts);
        if signed.is_zero() {
            return Err(Error::DegeneratePolygon("zero area".into()));
        }
        if signed.is_negative() {
            pts.reverse();
        }
        // Drop collinear vertices until none remain.
        loop {
            let n = pts.len();
            let drop = (0..n).find(|&i| {
                let prev = &pts[(i + n - 1) % n];
                let next = &pts[(i + 1) % n];
                pts[i].sub(prev).cross(&next.sub(&pts[i])).is_zero()
            });
            match drop {
                Some(i) => {
                    pts.remove(i);
                }
                None => break,
            }
            if pts.len() < 3 {
                return Err(Error::DegeneratePolygon("all vertices collinear".into()));
            }
        }
        let n = pts.len();
        for i in 0..n {
            let a = &pts[i];
            let b = &pts[(i + 1) % n];
            let e = b.sub(a);
            for (j, p) in pts.iter().enumerate() {
                if j == i || j == (i + 1) % n {
                    continue;
                }
                if !e.cross(&p.sub(a)).is_positive() {
                    return Err(Error::DegeneratePolygon("vertices are not in convex position".into()));
                }
            }
        }
        Ok(ConvexPolygon { vertices: pts })
    }

    /// Axis-parallel rectangle `[x0, x1] × [y0, y1]`.
    pub fn rect(x0: T, x1: T, y0: T, y1: T) -> Result<Self> {
        Self::new(vec![
            Point::new(x0.clone(), y0.clone()),
            Point::new(x1.clone(), y0),
            Point::new(x1, y1.clone()),
            Point::new(x0, y1),
        ])
    }

    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    /// Edges as `(start, end)` pairs in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (&Point<T>, &Point<T>)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    /// Closed containment.
    pub fn contains(&self, p: &Point<T>) -> bool {
        self.edges().all(|(a, b)| !b.sub(a).cross(&p.sub(a)).is_negative())
    }

    /// Smallest rectangle with sides parallel to `dir` and its normal that
    /// contains the polygon.
    pub fn bounding_rectangle(&self, dir: &Point<T>) -> ConvexPolygon<T> {
        let normal = Point::new(-dir.y.clone(), dir.x.clone());
        let s = Interval::hull(self.vertices.iter().map(|v| v.dot(dir)).collect::<Vec<_>>().iter());
        let t = Interval::hull(self.vertices.iter().map(|v| v.dot(&normal)).collect::<Vec<_>>().iter());
        let norm2 = dir.dot(dir);
        let corner = |s: &T, t: &T| dir.scale(s).add(&normal.scale(t)).scale(&(T::one() / norm2.clone()));
        ConvexPolygon {
            vertices: vec![corner(&s.lo, &t.lo), corner(&s.hi, &t.lo), corner(&s.hi, &t.hi), corner(&s.lo, &t.hi)],
        }
    }

    /// Maps every vertex and re-validates the result.
    pub fn map_points(&self, f: impl Fn(&Point<T>) -> Point<T>) -> Result<Self> {
        Self::new(self.vertices.iter().map(f).collect())
    }
}

pub(crate) fn signed_area2<T: Scalar>(pts: &[Point<T>]) -> T {
    let n = pts.len();
    (0..n).fold(T::zero(), |acc, i| acc + pts[i].cross(&pts[(i + 1) % n]))
}

impl<T: Scalar> Homothecy for ConvexPolygon<T> {
    type Scalar = T;

    fn translate(&self, t: &Point<T>) -> Self {
        ConvexPolygon { vertices: self.vertices.iter().map(|v| v.add(t)).collect() }
    }

    fn dilate(&self, r: &T) -> Result<Self> {
        check_dilation(r)?;
        Ok(ConvexPolygon { vertices: self.vertices.iter().map(|v| v.scale(r)).collect() })
    }

    fn projections(&self) -> (Interval<T>, Interval<T>) {
        (Interval::hull(self.vertices.iter().map(|v| &v.x)), Interval::hull(self.vertices.iter().map(|v| &v.y)))
    }

    fn area(&self) -> T {
        signed_area2(&self.vertices) / T::two()
    }
}

impl<'de, T: Scalar> Deserialize<'de> for ConvexPolygon<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(bound = "T: Scalar")]
        struct Raw<T> {
            vertices: Vec<Point<T>>,
        }
        let raw = Raw::<T>::deserialize(d)?;
        ConvexPolygon::new(raw.vertices).map_err(serde::de::Error::custom)
    }
}
