use lacuna_core::geometry::{ConvexPolygon, Point, VParallelogram};
use lacuna_core::scalar::rat;
use lacuna_core::tree::{DyadicTree, Vertex};
use lacuna_core::Rational;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cross(o: &(i64, i64), a: &(i64, i64), b: &(i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull of 3 to 12 random points on a grid of spacing `1/denom`
/// inside `[0, 4]²`, retried until it has positive area.
pub fn random_polygon(r: &mut ChaCha8Rng, denom: i64) -> ConvexPolygon<Rational> {
    loop {
        let n = r.gen_range(3..=12);
        let mut pts: Vec<(i64, i64)> =
            (0..n).map(|_| (r.gen_range(0..=4 * denom), r.gen_range(0..=4 * denom))).collect();
        pts.sort_unstable();
        pts.dedup();
        // Monotone chain, strict turns only.
        let mut hull: Vec<(i64, i64)> = Vec::new();
        for pass in 0..2 {
            let start = hull.len();
            let iter: Box<dyn Iterator<Item = &(i64, i64)>> =
                if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
            for p in iter {
                while hull.len() >= start + 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0 {
                    hull.pop();
                }
                hull.push(*p);
            }
            hull.pop();
        }
        if hull.len() < 3 {
            continue;
        }
        let points = hull.iter().map(|&(x, y)| Point::new(rat(x, denom), rat(y, denom))).collect();
        if let Ok(p) = ConvexPolygon::new(points) {
            return p;
        }
    }
}

/// Ancestor-closed tree of height at most `max_height`; each child is kept
/// with probability `keep`.
pub fn random_tree(r: &mut ChaCha8Rng, max_height: usize, keep: f64) -> DyadicTree {
    let mut tree = DyadicTree::from_vertices([Vertex::root()]);
    let mut frontier = vec![Vertex::root()];
    while let Some(v) = frontier.pop() {
        if v.height() == max_height {
            continue;
        }
        for bit in [false, true] {
            if r.gen_bool(keep) {
                let c = v.child(bit);
                tree.insert(c.clone());
                frontier.push(c);
            }
        }
    }
    tree
}

/// `count` members with small dyadic data over subranges of `[0, 2]`.
pub fn random_members(r: &mut ChaCha8Rng, count: usize) -> Vec<VParallelogram<Rational>> {
    (0..count)
        .map(|_| {
            let x0 = r.gen_range(0..4);
            let x1 = r.gen_range(x0 + 1..=4);
            VParallelogram::new(
                rat(x0, 2),
                rat(x1, 2),
                rat(r.gen_range(-8..=8), 8),
                rat(r.gen_range(-8..=8), 8),
                rat(r.gen_range(1..=8), 8),
            )
            .expect("positive side and width")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_seeded_and_valid() {
        let a = random_polygon(&mut rng(3), 8);
        assert_eq!(a, random_polygon(&mut rng(3), 8));
        assert!((3..=12).contains(&a.vertices().len()));
        for s in 0..20 {
            let t = random_tree(&mut rng(s), 6, 0.7);
            assert!(t.is_ancestor_closed());
            assert!(t.height().unwrap() <= 6);
        }
        assert_eq!(random_members(&mut rng(1), 3).len(), 3);
    }
}
