//! Kakeya-type sets from sticky maps into a pruned direction tree.
//!
//! For a sticky map `σ` of depth `k`, every address `v` of height `k` gets the
//! parallelogram over `[0, 2]` with bottom-left corner `(0, value(v))`, slope
//! `value(σ(v))` and side `2^{-k}`. The union `K` is measured on the slabs
//! `[0, 1]` (giving `m1`) and `[1, 2]` (giving `m2`).

mod sticky;
mod witness;

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{direction_trees, DirectionTree, GeneratorRecord, Symmetry};
use crate::geometry::{union_measure, ParallelogramUnion, VParallelogram};
use crate::scalar::{dyadic, int};
use crate::tree::{prune_bateman, split_number, DyadicTree, Vertex};
use crate::{Error, Rational, Result};

pub use sticky::{extend_pruned, sticky_sample, ExtendedTree, StickyMap};
pub use witness::{k1_sample_points, quarter_witness, Witness};

pub const DEFAULT_TRIALS: usize = 256;
pub const DEFAULT_WITNESS_POINTS: usize = 100;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Objective {
    #[default]
    MaxRatio,
    MaxM1,
    MinM2,
}

impl Objective {
    /// `Greater` when `(m1, m2)` beats `(n1, n2)`.
    fn compare(self, m1: &Rational, m2: &Rational, n1: &Rational, n2: &Rational) -> Ordering {
        match self {
            Objective::MaxRatio => (m1.clone() * n2.clone()).cmp(&(n1.clone() * m2.clone())),
            Objective::MaxM1 => m1.cmp(n1),
            Objective::MinM2 => n2.cmp(m2),
        }
    }
}

/// How a report's sticky map was chosen.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchInfo {
    pub trials: usize,
    pub seed_base: u64,
    pub objective: Objective,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KakeyaReport {
    /// Split number of the pruned tree.
    #[serde(rename = "N")]
    pub n: usize,
    pub depth: usize,
    pub pruned: DyadicTree,
    pub sigma: StickyMap,
    pub set: ParallelogramUnion<Rational>,
    #[serde(with = "crate::scalar::text")]
    pub m1: Rational,
    #[serde(with = "crate::scalar::text")]
    pub m2: Rational,
    #[serde(with = "crate::scalar::text")]
    pub ratio: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchInfo>,
    pub witnesses: Vec<Witness>,
    #[serde(with = "crate::scalar::text")]
    pub min_witness_average: Rational,
}

impl KakeyaReport {
    /// Recomputes the members and slab measures from `sigma`.
    pub fn verify_measures(&self) -> Result<()> {
        let set = kakeya_set(&self.sigma);
        let (m1, m2) = slab_measures(&set);
        if set != self.set || m1 != self.m1 || m2 != self.m2 {
            return Err(Error::VerificationFailed("report measures do not match its sticky map".into()));
        }
        Ok(())
    }
}

pub(crate) fn member_for(address: &Vertex, image: &Vertex, k: usize) -> VParallelogram<Rational> {
    VParallelogram::new(int(0), int(2), address.value(), image.value(), dyadic(1, k as u32))
        .expect("member is nondegenerate")
}

/// The members `E_{σ(v)}` over addresses of height `k`, in address order.
pub fn kakeya_set(sigma: &StickyMap) -> ParallelogramUnion<Rational> {
    let k = sigma.depth;
    ParallelogramUnion::new(
        sigma.image.iter().filter(|(v, _)| v.height() == k).map(|(v, w)| member_for(v, w, k)).collect(),
    )
}

/// `(|K ∩ [0,1]×ℝ|, |K ∩ [1,2]×ℝ|)`.
pub fn slab_measures(set: &ParallelogramUnion<Rational>) -> (Rational, Rational) {
    (union_measure(set, &int(0), &int(1)), union_measure(set, &int(1), &int(2)))
}

/// Measures `K_σ` and certifies the quarter bound at sampled points of `K₁`.
pub fn build_kakeya(ext: &ExtendedTree, sigma: &StickyMap) -> Result<KakeyaReport> {
    build_kakeya_with(ext, sigma, DEFAULT_WITNESS_POINTS)
}

pub fn build_kakeya_with(ext: &ExtendedTree, sigma: &StickyMap, witness_points: usize) -> Result<KakeyaReport> {
    ext.validate()?;
    sigma.validate(ext)?;
    let set = kakeya_set(sigma);
    let (m1, m2) = slab_measures(&set);
    let mut report = KakeyaReport {
        n: split_number(&ext.pruned)?.tree,
        depth: ext.depth,
        pruned: ext.pruned.clone(),
        sigma: sigma.clone(),
        ratio: m1.clone() / m2.clone(),
        set,
        m1,
        m2,
        search: None,
        witnesses: Vec::new(),
        min_witness_average: int(1),
    };
    let points = k1_sample_points(&report.set, ext.depth, witness_points);
    let mut builder = witness::WitnessBuilder::new(&report, ext);
    let witnesses = points.iter().map(|x| builder.witness(x)).collect::<Result<Vec<_>>>()?;
    report.min_witness_average = witnesses.iter().map(|w| w.average.clone()).min().unwrap_or_else(|| int(1));
    report.witnesses = witnesses;
    Ok(report)
}

/// Samples `trials` sticky maps with seeds `seed_base, seed_base + 1, …` and
/// returns the full report for the best one. Ties go to the smaller seed.
pub fn search_sigma(ext: &ExtendedTree, trials: usize, seed_base: u64, objective: Objective) -> Result<KakeyaReport> {
    if trials == 0 {
        return Err(Error::Parse("trials must be at least 1".into()));
    }
    ext.validate()?;
    let best = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let seed = seed_base.wrapping_add(i);
            let (m1, m2) = slab_measures(&kakeya_set(&sticky_sample(ext, seed)));
            (seed, m1, m2)
        })
        .reduce_with(|a, b| match objective.compare(&a.1, &a.2, &b.1, &b.2) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => {
                if a.0 <= b.0 {
                    a
                } else {
                    b
                }
            }
        })
        .expect("at least one trial");
    let mut report = build_kakeya(ext, &sticky_sample(ext, best.0))?;
    report.search = Some(SearchInfo { trials, seed_base, objective, seed: best.0 });
    Ok(report)
}

/// The pruned tree for `n` splits: the first symmetry class reaching split
/// `n` at the smallest truncation depth `k ≤ max_depth`, pruned to `n` and
/// extended to `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KakeyaSetup {
    pub symmetry_class: Symmetry,
    pub direction_tree: DirectionTree,
    pub extended: ExtendedTree,
}

pub fn prepare_kakeya(records: &[GeneratorRecord], n: usize, max_depth: usize) -> Result<KakeyaSetup> {
    let mut available = 0;
    for k in 0..=max_depth {
        for dt in direction_trees(records, k)? {
            let split = split_number(&dt.tree)?.tree;
            available = available.max(split);
            if split >= n {
                let pruned = prune_bateman(&dt.tree, n)?;
                let extended = extend_pruned(&pruned, k)?;
                return Ok(KakeyaSetup { symmetry_class: dt.symmetry_class, direction_tree: dt, extended });
            }
        }
    }
    Err(Error::InsufficientSplit { requested: n, available })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Homothecy, Point};
    use crate::scalar::rat;

    fn complete_ext(k: usize) -> ExtendedTree {
        extend_pruned(&DyadicTree::complete(k), k).unwrap()
    }

    fn identity(k: usize) -> StickyMap {
        StickyMap { depth: k, image: DyadicTree::complete(k).vertices().map(|v| (v.clone(), v.clone())).collect() }
    }

    #[test]
    fn depth_zero_is_one_parallelogram() {
        let ext = extend_pruned(&DyadicTree::parse(["0"]).unwrap(), 0).unwrap();
        let r = build_kakeya(&ext, &sticky_sample(&ext, 0)).unwrap();
        assert_eq!(r.set.members.len(), 1);
        let p = r.set.members[0].to_polygon();
        assert_eq!(p.area(), int(2));
        assert_eq!((r.m1.clone(), r.m2.clone()), (int(1), int(1)));
        let w = quarter_witness(&r, &ext, &Point::new(rat(1, 2), rat(1, 2))).unwrap();
        assert_eq!(w.dilate, VParallelogram::new(int(0), int(2), int(0), int(0), int(2)).unwrap());
        assert_eq!(w.average, rat(1, 4));
    }

    #[test]
    fn member_vertices() {
        let m = member_for(&"01".parse().unwrap(), &"01".parse().unwrap(), 1);
        let vs: Vec<(Rational, Rational)> = m.vertices().iter().map(|p| (p.x.clone(), p.y.clone())).collect();
        assert_eq!(vs, [(int(0), rat(1, 2)), (int(2), rat(3, 2)), (int(2), int(2)), (int(0), int(1))]);
    }

    #[test]
    fn identity_covers_left_slab() {
        for k in 1..=4 {
            let r = build_kakeya(&complete_ext(k), &identity(k)).unwrap();
            assert_eq!((r.m1.clone(), r.m2.clone()), (int(1), int(1)), "k={k}");
            assert!(r.witnesses.len() >= DEFAULT_WITNESS_POINTS);
            assert!(r.min_witness_average >= rat(1, 4));
        }
    }

    #[test]
    fn left_slices_tile_unit_interval() {
        let ext = complete_ext(3);
        let set = kakeya_set(&sticky_sample(&ext, 5));
        let ivs = set.slice_intervals(&int(0));
        assert_eq!(ivs.len(), 1);
        assert_eq!((ivs[0].lo.clone(), ivs[0].hi.clone()), (int(0), int(1)));
    }

    #[test]
    fn search_with_one_trial_matches_sample() {
        let ext = complete_ext(2);
        let r = search_sigma(&ext, 1, 7, Objective::MaxRatio).unwrap();
        let direct = build_kakeya(&ext, &sticky_sample(&ext, 7)).unwrap();
        assert_eq!(r.sigma, direct.sigma);
        assert_eq!(r.m1, direct.m1);
        r.verify_measures().unwrap();
    }

    #[test]
    fn witness_rejects_points_outside() {
        let ext = complete_ext(2);
        let r = build_kakeya(&ext, &identity(2)).unwrap();
        assert_eq!(quarter_witness(&r, &ext, &Point::new(rat(3, 2), rat(1, 2))), Err(Error::NotInK1));
        assert_eq!(quarter_witness(&r, &ext, &Point::new(rat(1, 2), int(5))), Err(Error::NotInK1));
    }

    #[test]
    fn pruned_setup_for_complete_slopes() {
        let records: Vec<GeneratorRecord> = (1..=4usize)
            .flat_map(|k| {
                (0..1u64 << k).map(move |j| GeneratorRecord {
                    index: 0,
                    symmetry_class: Symmetry::Identity,
                    canonical_code: crate::basis::encode_code(k, j).unwrap(),
                    k,
                    j,
                    geometry: None,
                })
            })
            .collect();
        let setup = prepare_kakeya(&records, 3, 4).unwrap();
        assert_eq!(setup.extended.depth, 3);
        assert_eq!(setup.extended.pruned, DyadicTree::complete(3));
        assert!(matches!(prepare_kakeya(&records, 5, 4), Err(Error::InsufficientSplit { requested: 5, available: 4 })));
    }
}
