use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::Symmetry;
use crate::geometry::{
    contains_polygon, contains_translate_of_dilate, ConvexPolygon, Homothecy, Point, VParallelogram,
};
use crate::scalar::{self, dyadic, int};
use crate::{Error, Rational, Result};

pub const DEFAULT_MAX_K: usize = 32;
/// Slope indices are stored in a `u64`.
pub const MAX_K_LIMIT: usize = 62;
/// Area ratio and inverse fitting dilation between the rectangle and the
/// enclosing parallelogram.
pub const ENCLOSURE_CONSTANT: i64 = 32;

/// Vertical-sided parallelogram enclosing a symmetry-normalized rectangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Enclosure {
    pub symmetry: Symmetry,
    /// The rectangle after applying `symmetry`.
    pub rectangle: ConvexPolygon<Rational>,
    pub parallelogram: VParallelogram<Rational>,
    pub k: usize,
    pub j: u64,
}

/// Finds a parallelogram `P ⊇ R` with vertical sides, slope `j·2^{-k}` in
/// `[0, 1)`, side length `2^{-k}·|π_x(P)|` and `|π_y(P)|` a multiple of the
/// side length, such that `|P| ≤ 32|R|` and a translate of `P/32` fits in
/// `R`. `R` is first mapped by the first symmetry that puts a longest side at
/// slope in `[0, 1]`.
///
/// The area of `P` is `|π_x(R)|²·2^{-k}`, so the search prefers the largest
/// feasible `k` and then the smallest `j`.
pub fn enclosing_parallelogram(r: &ConvexPolygon<Rational>, max_k: usize) -> Result<Enclosure> {
    let (symmetry, rect, long_side) = normalize(r)?;
    let max_k = max_k.min(MAX_K_LIMIT);
    let target = long_side.y.clone() / long_side.x.clone();
    let (px, _) = rect.projections();
    let width = px.length();
    let limit = int(ENCLOSURE_CONSTANT) * rect.area();
    let fit = Rational::one() / int(ENCLOSURE_CONSTANT);
    for k in (0..=max_k).rev() {
        let side = width.clone() * dyadic(1, k as u32);
        if side.clone() * width.clone() > limit {
            continue;
        }
        for j in feasible_indices(&rect, &target, k, &side) {
            let slope = dyadic(j as i64, k as u32);
            let bottom = rect
                .vertices()
                .iter()
                .map(|v| v.y.clone() - slope.clone() * (v.x.clone() - px.lo.clone()))
                .reduce(scalar::min_of)
                .expect("nonempty");
            let p = VParallelogram::new(px.lo.clone(), px.hi.clone(), bottom, slope, side.clone())?;
            let poly = p.to_polygon();
            let (_, py) = p.projections();
            if contains_polygon(&poly, &rect)
                && py.length() == side.clone() * int(j as i64 + 1)
                && contains_translate_of_dilate(&rect, &poly, &fit)?.is_some()
            {
                return Ok(Enclosure { symmetry, rectangle: rect, parallelogram: p, k, j });
            }
        }
    }
    Err(Error::ResolutionExceeded { max_k })
}

/// Checks that `r` is a rectangle and maps it so a longest side has slope in
/// `[0, 1]`. Returns that side's direction in the new frame.
fn normalize(r: &ConvexPolygon<Rational>) -> Result<(Symmetry, ConvexPolygon<Rational>, Point<Rational>)> {
    let vs = r.vertices();
    let not_rect = || Error::DegeneratePolygon("expected a rectangle".into());
    if vs.len() != 4 {
        return Err(not_rect());
    }
    let e0 = vs[1].sub(&vs[0]);
    let e1 = vs[2].sub(&vs[1]);
    if !e0.dot(&e1).is_zero() || vs[3].sub(&vs[2]).add(&e0) != Point::origin() {
        return Err(not_rect());
    }
    let (l0, l1) = (e0.dot(&e0), e1.dot(&e1));
    let longest: Vec<&Point<Rational>> = match l0.cmp(&l1) {
        std::cmp::Ordering::Greater => vec![&e0],
        std::cmp::Ordering::Less => vec![&e1],
        std::cmp::Ordering::Equal => vec![&e0, &e1],
    };
    for g in Symmetry::ALL {
        for d in &longest {
            let mut gd = g.apply(d);
            if gd.x.is_zero() {
                continue;
            }
            if gd.x < Rational::zero() {
                gd = gd.scale(&int(-1));
            }
            if gd.y >= Rational::zero() && gd.y <= gd.x {
                let rect = r.map_points(|p| g.apply(p))?;
                return Ok((g, rect, gd));
            }
        }
    }
    unreachable!("some axis symmetry puts any direction at slope in [0, 1]")
}

/// Indices `j < 2^k` whose slope lets a strip of height `side` cover `rect`.
///
/// The vertical thickness of `rect` along slope `s` is convex in `s` and
/// minimal at the long side's slope, so the feasible indices form a run
/// around `⌊target·2^k⌋`.
fn feasible_indices(rect: &ConvexPolygon<Rational>, target: &Rational, k: usize, side: &Rational) -> Vec<u64> {
    let scale = BigInt::one() << k;
    let top = (&scale - 1u32).to_u64().expect("k is capped");
    let start = (target.numer() * &scale).div_floor(target.denom()).to_u64().unwrap_or(top).min(top);
    let fits = |j: u64| thickness(rect, &dyadic(j as i64, k as u32)) <= *side;
    let mut out = Vec::new();
    let mut j = start;
    loop {
        if !fits(j) {
            break;
        }
        out.push(j);
        if j == 0 {
            break;
        }
        j -= 1;
    }
    out.reverse();
    let mut j = start + 1;
    while j <= top && fits(j) {
        out.push(j);
        j += 1;
    }
    out
}

fn thickness(rect: &ConvexPolygon<Rational>, slope: &Rational) -> Rational {
    let heights: Vec<Rational> = rect.vertices().iter().map(|v| v.y.clone() - slope.clone() * v.x.clone()).collect();
    let lo = heights.iter().cloned().reduce(scalar::min_of).expect("nonempty");
    let hi = heights.into_iter().reduce(scalar::max_of).expect("nonempty");
    hi - lo
}
