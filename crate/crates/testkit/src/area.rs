use lacuna_core::geometry::VParallelogram;
use lacuna_core::{Rational, Scalar};
use num_traits::{Signed, Zero};
use rand::Rng;

type Pt = (Rational, Rational);

/// Four corners of a member, counterclockwise.
fn corners(p: &VParallelogram<Rational>) -> Vec<Pt> {
    let y = |x: &Rational| p.y_bottom_left.clone() + p.slope.clone() * (x.clone() - p.x0.clone());
    let (b0, b1) = (y(&p.x0), y(&p.x1));
    vec![
        (p.x0.clone(), b0.clone()),
        (p.x1.clone(), b1.clone()),
        (p.x1.clone(), b1 + p.side_length.clone()),
        (p.x0.clone(), b0 + p.side_length.clone()),
    ]
}

fn cross(o: &Pt, a: &Pt, b: &Pt) -> Rational {
    (a.0.clone() - o.0.clone()) * (b.1.clone() - o.1.clone())
        - (a.1.clone() - o.1.clone()) * (b.0.clone() - o.0.clone())
}

/// Sutherland–Hodgman: keeps the part of `poly` left of each directed edge
/// of the convex counterclockwise `window`.
fn clip(poly: Vec<Pt>, window: &[Pt]) -> Vec<Pt> {
    let mut out = poly;
    for i in 0..window.len() {
        if out.is_empty() {
            break;
        }
        let (a, b) = (&window[i], &window[(i + 1) % window.len()]);
        let input = std::mem::take(&mut out);
        for j in 0..input.len() {
            let (p, q) = (&input[j], &input[(j + 1) % input.len()]);
            let (sp, sq) = (cross(a, b, p), cross(a, b, q));
            if !sp.is_negative() {
                out.push(p.clone());
            }
            if (sp.is_negative() && sq.is_positive()) || (sp.is_positive() && sq.is_negative()) {
                let t = sp.clone() / (sp - sq);
                out.push((
                    p.0.clone() + t.clone() * (q.0.clone() - p.0.clone()),
                    p.1.clone() + t * (q.1.clone() - p.1.clone()),
                ));
            }
        }
    }
    out
}

fn shoelace(poly: &[Pt]) -> Rational {
    let mut twice = Rational::zero();
    for i in 0..poly.len() {
        let (p, q) = (&poly[i], &poly[(i + 1) % poly.len()]);
        twice += p.0.clone() * q.1.clone() - q.0.clone() * p.1.clone();
    }
    (twice / Rational::from_integer(2.into())).abs()
}

/// Area of the intersection of `members` with the strip `lo <= x <= hi`.
pub fn clip_area(members: &[&VParallelogram<Rational>], lo: &Rational, hi: &Rational) -> Rational {
    let big = members.iter().flat_map(|m| corners(m)).map(|(_, y)| y.abs()).max().unwrap_or_default()
        + Rational::from_integer(1.into());
    let strip =
        vec![(lo.clone(), -big.clone()), (hi.clone(), -big.clone()), (hi.clone(), big.clone()), (lo.clone(), big)];
    let mut region = strip.clone();
    for m in members {
        region = clip(region, &corners(m));
    }
    if region.len() < 3 {
        return Rational::zero();
    }
    shoelace(&region)
}

/// Union area over `[lo, hi]` by inclusion–exclusion over all nonempty
/// subsets. Exponential; meant for a handful of members.
pub fn inclusion_exclusion(members: &[VParallelogram<Rational>], lo: &Rational, hi: &Rational) -> Rational {
    assert!(members.len() <= 12, "inclusion-exclusion on {} members", members.len());
    let mut total = Rational::zero();
    for mask in 1u32..(1 << members.len()) {
        let subset: Vec<&VParallelogram<Rational>> =
            members.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, m)| m).collect();
        let a = clip_area(&subset, lo, hi);
        if mask.count_ones() % 2 == 1 {
            total += a;
        } else {
            total -= a;
        }
    }
    total
}

#[derive(Clone, Copy, Debug)]
pub struct MonteCarlo {
    pub estimate: f64,
    /// Standard error of the estimate.
    pub sigma: f64,
}

/// Uniform samples over the bounding box of the members on `[lo, hi]`.
pub fn monte_carlo(members: &[VParallelogram<Rational>], lo: f64, hi: f64, samples: usize, seed: u64) -> MonteCarlo {
    let fm: Vec<[f64; 5]> = members
        .iter()
        .map(|m| [m.x0.approx(), m.x1.approx(), m.y_bottom_left.approx(), m.slope.approx(), m.side_length.approx()])
        .collect();
    let (mut ylo, mut yhi) = (f64::INFINITY, f64::NEG_INFINITY);
    for m in &fm {
        for x in [m[0], m[1]] {
            let b = m[2] + m[3] * (x - m[0]);
            ylo = ylo.min(b);
            yhi = yhi.max(b + m[4]);
        }
    }
    if fm.is_empty() || hi <= lo {
        return MonteCarlo { estimate: 0.0, sigma: 0.0 };
    }
    let mut r = crate::rng(seed);
    let mut hits = 0usize;
    for _ in 0..samples {
        let x = r.gen_range(lo..hi);
        let y = r.gen_range(ylo..yhi);
        let inside = fm.iter().any(|m| {
            let b = m[2] + m[3] * (x - m[0]);
            x >= m[0] && x <= m[1] && y >= b && y <= b + m[4]
        });
        hits += inside as usize;
    }
    let area = (hi - lo) * (yhi - ylo);
    let p = hits as f64 / samples as f64;
    MonteCarlo { estimate: area * p, sigma: area * (p * (1.0 - p) / samples as f64).sqrt() }
}
