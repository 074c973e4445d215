use super::{check_dilation, ConvexPolygon, Point};
use crate::scalar::Scalar;
use crate::Result;

/// `inner ⊆ outer` for convex polygons.
pub fn contains_polygon<T: Scalar>(outer: &ConvexPolygon<T>, inner: &ConvexPolygon<T>) -> bool {
    inner.vertices().iter().all(|v| outer.contains(v))
}

/// Decides whether some translate of `r · inner` fits in `outer`, returning a
/// witness translation when it does.
///
/// A translate `t + r·inner` lies in `outer` iff every vertex does, which for
/// each outer edge is one linear inequality in `t`. The feasible set is a
/// bounded convex polygon, so it is nonempty iff one of its vertices, an
/// intersection of two constraint lines, satisfies every constraint.
pub fn contains_translate_of_dilate<T: Scalar>(
    outer: &ConvexPolygon<T>,
    inner: &ConvexPolygon<T>,
    r: &T,
) -> Result<Option<Point<T>>> {
    check_dilation(r)?;
    // Constraint: a·t.x + b·t.y >= c.
    let constraints: Vec<(T, T, T)> = outer
        .edges()
        .map(|(p, q)| {
            let e = q.sub(p);
            let normal = Point::new(-e.y.clone(), e.x.clone());
            let reach = inner
                .vertices()
                .iter()
                .map(|w| normal.dot(w))
                .reduce(|a, b| if b < a { b } else { a })
                .expect("nonempty polygon");
            (normal.x.clone(), normal.y.clone(), normal.dot(p) - r.clone() * reach)
        })
        .collect();
    let feasible =
        |t: &Point<T>| constraints.iter().all(|(a, b, c)| a.clone() * t.x.clone() + b.clone() * t.y.clone() >= *c);
    for i in 0..constraints.len() {
        for j in i + 1..constraints.len() {
            let (a1, b1, c1) = &constraints[i];
            let (a2, b2, c2) = &constraints[j];
            let det = a1.clone() * b2.clone() - a2.clone() * b1.clone();
            if det.is_zero() {
                continue;
            }
            let x = (c1.clone() * b2.clone() - c2.clone() * b1.clone()) / det.clone();
            let y = (a1.clone() * c2.clone() - a2.clone() * c1.clone()) / det;
            let t = Point::new(x, y);
            if feasible(&t) {
                return Ok(Some(t));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Homothecy;
    use crate::scalar::{int, rat};
    use crate::Rational;

    fn rect(x0: Rational, x1: Rational, y0: Rational, y1: Rational) -> ConvexPolygon<Rational> {
        ConvexPolygon::rect(x0, x1, y0, y1).unwrap()
    }

    fn check_witness(outer: &ConvexPolygon<Rational>, inner: &ConvexPolygon<Rational>, r: &Rational) -> bool {
        match contains_translate_of_dilate(outer, inner, r).unwrap() {
            Some(t) => {
                let placed = inner.dilate(r).unwrap().translate(&t);
                assert!(contains_polygon(outer, &placed), "witness does not fit");
                true
            }
            None => false,
        }
    }

    #[test]
    fn half_square_fits_in_square() {
        let sq = rect(int(0), int(1), int(0), int(1));
        assert!(check_witness(&sq, &sq, &rat(1, 2)));
        assert!(check_witness(&sq, &sq, &int(1)));
        assert!(!check_witness(&sq, &sq, &rat(3, 2)));
    }

    #[test]
    fn wide_rectangle_does_not_fit() {
        let sq = rect(int(0), int(1), int(0), int(1));
        let wide = rect(int(0), int(4), int(0), rat(1, 4));
        assert!(!check_witness(&sq, &wide, &rat(1, 2)));
        assert!(check_witness(&sq, &wide, &rat(1, 4)));
    }

    #[test]
    fn half_bounding_box_fits_in_triangle() {
        let tri = ConvexPolygon::new(vec![
            Point::new(int(0), int(0)),
            Point::new(int(1), int(0)),
            Point::new(int(0), int(1)),
        ])
        .unwrap();
        let box_ = rect(int(0), int(1), int(0), int(1));
        assert!(check_witness(&tri, &box_, &rat(1, 2)));
        assert!(!check_witness(&tri, &box_, &rat(51, 100)));
    }

    #[test]
    fn rejects_nonpositive_ratio() {
        let sq = rect(int(0), int(1), int(0), int(1));
        assert!(contains_translate_of_dilate(&sq, &sq, &int(0)).is_err());
    }
}
