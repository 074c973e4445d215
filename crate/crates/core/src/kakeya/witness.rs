use std::collections::HashMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{member_for, ExtendedTree, KakeyaReport};
use crate::geometry::{
    contains_polygon, union_measure, union_measure_within, Homothecy, ParallelogramUnion, Point, VParallelogram,
};
use crate::scalar::{dyadic, int, rat};
use crate::tree::Vertex;
use crate::{Error, Rational, Result};

/// Certificate that the average of `χ_{K₂}` over a parallelogram through a
/// point of `K₁` is at least `1/4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Witness {
    pub point: Point<Rational>,
    /// Height-`k` address whose parallelogram contains the point.
    pub address: Vertex,
    pub image: Vertex,
    /// Deepest pruned vertex above `image`.
    pub pruned_ancestor: Vertex,
    /// Ancestor of `address` at the pruned ancestor's height.
    pub block: Vertex,
    /// Union of the members over the block, one parallelogram on `[0, 2]`.
    pub aggregate: VParallelogram<Rational>,
    /// `aggregate` over `[0, 1]`.
    pub slab_part: VParallelogram<Rational>,
    /// Translate of the two-fold dilate of `slab_part`.
    pub dilate: VParallelogram<Rational>,
    #[serde(with = "crate::scalar::text")]
    pub covered: Rational,
    #[serde(with = "crate::scalar::text")]
    pub average: Rational,
}

/// Builds and checks the witness for `x`.
pub fn quarter_witness(report: &KakeyaReport, ext: &ExtendedTree, x: &Point<Rational>) -> Result<Witness> {
    WitnessBuilder::new(report, ext).witness(x)
}

pub(super) struct WitnessBuilder<'a> {
    report: &'a KakeyaReport,
    ext: &'a ExtendedTree,
    covered: HashMap<Vertex, Rational>,
}

impl<'a> WitnessBuilder<'a> {
    pub(super) fn new(report: &'a KakeyaReport, ext: &'a ExtendedTree) -> Self {
        WitnessBuilder { report, ext, covered: HashMap::new() }
    }

    pub(super) fn witness(&mut self, x: &Point<Rational>) -> Result<Witness> {
        let k = self.report.depth;
        let union = &self.report.set;
        if x.x < int(0) || x.x > int(1) || !union.contains(x) {
            return Err(Error::NotInK1);
        }
        let sigma = &self.report.sigma;
        let address = sigma
            .image
            .keys()
            .filter(|v| v.height() == k)
            .find(|v| member_for(v, &sigma.image[*v], k).contains(x))
            .ok_or(Error::NotInK1)?
            .clone();
        let image = sigma.image[&address].clone();
        let pruned_ancestor = self.ext.pruned_ancestor(&image);
        let l = pruned_ancestor.height();
        let block = address.ancestor_at(l);
        let fail = |msg: String| Err(Error::VerificationFailed(msg));

        // Every address below the block follows the same ray.
        let below: Vec<&Vertex> = sigma.image.keys().filter(|v| v.height() == k && block.is_prefix_of(v)).collect();
        if below.len() != 1 << (k - l) || below.iter().any(|v| sigma.image[*v] != image) {
            return fail(format!("addresses below `{block}` do not share the image `{image}`"));
        }
        let aggregate = VParallelogram::new(int(0), int(2), block.value(), image.value(), dyadic(1, l as u32))?;
        let members = ParallelogramUnion::new(below.iter().map(|v| member_for(v, &image, k)).collect());
        let inside = members.members.iter().all(|m| {
            m.y_bottom_left >= aggregate.y_bottom_left
                && m.y_bottom_left.clone() + m.side_length.clone() <= aggregate.top_at(&int(0))
        });
        if !inside || union_measure(&members, &int(0), &int(2)) != aggregate.area() {
            return fail(format!("members below `{block}` do not tile their aggregate"));
        }
        if !aggregate.contains(x) {
            return fail("aggregate misses the point".into());
        }
        let slab_part = aggregate.restrict(&int(0), &int(1)).expect("aggregate spans [0, 2]");
        let dilate = slab_part.dilate(&int(2))?.translate(&Point::new(int(0), -block.value()));
        if dilate.x0 != int(0)
            || dilate.x1 != int(2)
            || !contains_polygon(&dilate.to_polygon(), &aggregate.to_polygon())
        {
            return fail("dilate does not contain the aggregate".into());
        }
        if !dilate.contains(x) {
            return fail("dilate misses the point".into());
        }
        let covered = match self.covered.get(&block) {
            Some(c) => c.clone(),
            None => {
                let c = union_measure_within(union, &dilate, &int(1), &int(2));
                self.covered.insert(block.clone(), c.clone());
                c
            }
        };
        let average = covered.clone() / dilate.area();
        if average < rat(1, 4) {
            return fail(format!("average {average} over the dilate is below 1/4"));
        }
        debug_assert!(average <= Rational::one());
        Ok(Witness {
            point: x.clone(),
            address,
            image,
            pruned_ancestor,
            block,
            aggregate,
            slab_part,
            dilate,
            covered,
            average,
        })
    }
}

/// Points of `K₁`: midpoints of the merged slices at abscissae `i·2^{-s}` in
/// `[0, 1]`, starting at `s = k + 2` and refining until there are at least
/// `min_points`, or `s` reaches `k + 12`.
pub fn k1_sample_points(set: &ParallelogramUnion<Rational>, k: usize, min_points: usize) -> Vec<Point<Rational>> {
    let mut points = Vec::new();
    for s in k + 2..=k + 12 {
        points.clear();
        for i in 0..=(1u64 << s) {
            let x = dyadic(i as i64, s as u32);
            for iv in set.slice_intervals(&x) {
                points.push(Point::new(x.clone(), (iv.lo + iv.hi) / int(2)));
            }
        }
        if points.len() >= min_points {
            break;
        }
    }
    points
}
