use crate::geometry::{contains_polygon, contains_translate_of_dilate, ConvexPolygon, Homothecy, Point};
use crate::{Error, Result, Scalar};

/// Number of steps in the fallback grid of rational directions.
pub const DIRECTION_GRID: i64 = 32;
/// Resolutions of the fine direction scan used when no coarse candidate
/// passes. Thin polygons can admit only a very narrow range of directions.
const SCAN_LEVELS: [i64; 4] = [1 << 8, 1 << 11, 1 << 14, 1 << 17];

/// Rectangle `R ⊇ S` with `|R| ≤ 4|S|` such that a translate of `R/2` lies in
/// `S`.
///
/// Candidates are the tight bounding rectangles of `S` along its edge
/// directions, its vertex chords, and a grid of rational directions
/// `(1 − t², 2t)`. Every candidate is checked exactly; the smallest passing
/// one wins, earlier candidates breaking ties. When none passes, a fine scan
/// of rational directions runs; floats there only pick which directions to
/// check exactly.
pub fn lassak_rectangle<T: Scalar>(s: &ConvexPolygon<T>) -> Result<ConvexPolygon<T>> {
    if let Some(r) = best_of(s, candidate_directions(s))? {
        return Ok(r);
    }
    for steps in SCAN_LEVELS {
        if let Some(r) = best_of(s, scan_directions(s, steps))? {
            return Ok(r);
        }
    }
    Err(Error::ApproximationFailure)
}

fn best_of<T: Scalar>(s: &ConvexPolygon<T>, dirs: Vec<Point<T>>) -> Result<Option<ConvexPolygon<T>>> {
    let area = s.area();
    let four = T::two() * T::two();
    let half = T::one() / T::two();
    let mut best: Option<(T, ConvexPolygon<T>)> = None;
    for dir in dirs {
        let r = s.bounding_rectangle(&dir);
        let ra = r.area();
        if ra > four.clone() * area.clone() || best.as_ref().is_some_and(|(b, _)| &ra >= b) {
            continue;
        }
        if contains_translate_of_dilate(s, &r, &half)?.is_some() {
            best = Some((ra, r));
        }
    }
    debug_assert!(best.as_ref().is_none_or(|(_, r)| contains_polygon(r, s)));
    Ok(best.map(|(_, r)| r))
}

fn grid_direction<T: Scalar>(i: i64, steps: i64) -> Point<T> {
    let t = T::from_ratio(i, steps);
    Point::new(T::one() - t.clone() * t.clone(), T::two() * t)
}

/// Directions `i/steps` on the grid whose rectangle passes a float check
/// with a little slack, one from the middle of each passing run.
fn scan_directions<T: Scalar>(s: &ConvexPolygon<T>, steps: i64) -> Vec<Point<T>> {
    let Ok(approx) = ConvexPolygon::new(s.vertices().iter().map(|p| p.map(|v| v.approx())).collect()) else {
        return Vec::new();
    };
    let slack = 0.5 * (1.0 - 1e-9);
    let passes: Vec<bool> = (0..steps)
        .map(|i| {
            let r = approx.bounding_rectangle(&grid_direction::<f64>(i, steps));
            matches!(contains_translate_of_dilate(&approx, &r, &slack), Ok(Some(_)))
        })
        .collect();
    let mut picks = Vec::new();
    let mut i = 0;
    while i < passes.len() {
        if !passes[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i < passes.len() && passes[i] {
            i += 1;
        }
        picks.push(grid_direction(((start + i - 1) / 2) as i64, steps));
    }
    picks
}

fn candidate_directions<T: Scalar>(s: &ConvexPolygon<T>) -> Vec<Point<T>> {
    let vs = s.vertices();
    let mut dirs: Vec<Point<T>> = s.edges().map(|(a, b)| b.sub(a)).collect();
    for i in 0..vs.len() {
        for j in i + 2..vs.len() {
            dirs.push(vs[j].sub(&vs[i]));
        }
    }
    let m = T::from_i64(DIRECTION_GRID).expect("small integer");
    for i in 0..DIRECTION_GRID {
        let t = T::from_i64(i).expect("small integer") / m.clone();
        dirs.push(Point::new(T::one() - t.clone() * t.clone(), T::two() * t));
    }
    dirs
}
