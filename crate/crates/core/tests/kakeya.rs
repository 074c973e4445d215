use std::collections::BTreeMap;

use lacuna_core::geometry::Point;
use lacuna_core::kakeya::{
    build_kakeya, extend_pruned, k1_sample_points, kakeya_set, quarter_witness, search_sigma, slab_measures,
    sticky_sample, ExtendedTree, Objective, StickyMap,
};
use lacuna_core::maximal::{default_p_grid, maximal_lower_bound, weak_level_set};
use lacuna_core::scalar::{int, rat};
use lacuna_core::tree::{prune_bateman, split_number, DyadicTree};
use lacuna_core::{Error, Rational};
use lacuna_testkit::{all_sticky_maps, random_tree, rng};
use proptest::prelude::*;

fn complete(k: usize) -> ExtendedTree {
    extend_pruned(&DyadicTree::complete(k), k).unwrap()
}

fn identity(k: usize) -> StickyMap {
    StickyMap {
        depth: k,
        image: DyadicTree::complete(k).vertices().map(|v| (v.clone(), v.clone())).collect::<BTreeMap<_, _>>(),
    }
}

fn exhaustive_best(ext: &ExtendedTree) -> Rational {
    all_sticky_maps(ext)
        .iter()
        .map(|s| {
            let (m1, m2) = slab_measures(&kakeya_set(s));
            m1 / m2
        })
        .max()
        .unwrap()
}

#[test]
fn depth_zero_member() {
    let ext = extend_pruned(&DyadicTree::parse(["0"]).unwrap(), 0).unwrap();
    let r = build_kakeya(&ext, &sticky_sample(&ext, 0)).unwrap();
    assert_eq!(r.set.members.len(), 1);
    let mut corners: Vec<_> = r.set.members[0].vertices().to_vec();
    corners.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
    let want = [(0, 0), (0, 1), (2, 0), (2, 1)].map(|(x, y)| Point::new(int(x), int(y)));
    assert_eq!(corners, want);
    assert_eq!((r.m1, r.m2), (int(1), int(1)));
}

#[test]
fn depth_one_member_follows_its_image() {
    let r = build_kakeya(&complete(1), &identity(1)).unwrap();
    let m = r.set.members.iter().find(|m| m.y_bottom_left == rat(1, 2)).unwrap();
    let mut corners: Vec<_> = m.vertices().to_vec();
    corners.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
    let want = [(0, rat(1, 2)), (0, int(1)), (2, rat(3, 2)), (2, int(2))].map(|(x, y)| Point::new(int(x), y));
    assert_eq!(corners, want);
}

#[test]
fn identity_map_covers_the_first_slab() {
    for k in 0..=4 {
        let r = build_kakeya(&complete(k), &identity(k)).unwrap();
        assert_eq!(r.m1, int(1));
        assert!(r.min_witness_average >= rat(1, 4));
        assert!(r.witnesses.len() >= 100 || k < 3);
    }
}

#[test]
fn exhaustive_optima() {
    assert_eq!(exhaustive_best(&complete(1)), int(1));
    assert_eq!(exhaustive_best(&complete(2)), rat(7, 5));
    assert_eq!(exhaustive_best(&complete(3)), rat(36, 19));
}

#[test]
fn search_reaches_the_optimum_at_depth_two() {
    let ext = complete(2);
    let best = search_sigma(&ext, 256, 0, Objective::MaxRatio).unwrap();
    assert_eq!(best.ratio, exhaustive_best(&ext));
}

#[test]
fn frozen_search_results() {
    // Regression values for complete trees, seed base 0, 256 trials.
    let want = [(2, rat(7, 5)), (3, rat(18, 11)), (4, rat(50, 31))];
    for (k, ratio) in want {
        let r = search_sigma(&complete(k), 256, 0, Objective::MaxRatio).unwrap();
        assert_eq!(r.ratio, ratio, "k = {k}");
        r.verify_measures().unwrap();
    }
    let r = search_sigma(&complete(4), 256, 7, Objective::MaxRatio).unwrap();
    assert_eq!((r.m1.clone(), r.m2.clone()), (rat(25, 32), rat(31, 64)));
}

#[test]
fn level_set_measure_is_m1() {
    let r = search_sigma(&complete(4), 256, 0, Objective::MaxRatio).unwrap();
    let b = weak_level_set(&r, &default_p_grid()).unwrap();
    assert_eq!(b.measure_lower_bound, r.m1);
    assert_eq!(b.indicator_measure, r.m2);
}

#[test]
fn witness_rejects_points_outside_the_first_slab() {
    let ext = complete(2);
    let r = build_kakeya(&ext, &identity(2)).unwrap();
    assert_eq!(quarter_witness(&r, &ext, &Point::new(rat(3, 2), rat(1, 2))).unwrap_err(), Error::NotInK1);
    assert_eq!(quarter_witness(&r, &ext, &Point::new(rat(1, 2), int(7))).unwrap_err(), Error::NotInK1);
}

fn setup(seed: u64) -> Option<ExtendedTree> {
    let tree = random_tree(&mut rng(seed), 4, 0.75);
    let n = split_number(&tree).unwrap().tree;
    let k = tree.height().unwrap();
    (n >= 1).then(|| extend_pruned(&prune_bateman(&tree, n).unwrap(), k).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sampled_maps_are_sticky(seed in any::<u64>(), draw in any::<u64>()) {
        if let Some(ext) = setup(seed) {
            prop_assert!(ext.validate().is_ok());
            let sigma = sticky_sample(&ext, draw);
            prop_assert!(sigma.validate(&ext).is_ok());
            prop_assert_eq!(sigma, sticky_sample(&ext, draw));
        }
    }

    #[test]
    fn every_sample_point_has_a_quarter_witness(seed in any::<u64>(), draw in any::<u64>()) {
        if let Some(ext) = setup(seed) {
            let r = build_kakeya(&ext, &sticky_sample(&ext, draw)).unwrap();
            prop_assert!(r.witnesses.iter().all(|w| w.average >= rat(1, 4)));
            prop_assert!(r.m1 >= r.m2 * rat(1, 4));
            let points = k1_sample_points(&r.set, r.depth, 100);
            prop_assert_eq!(points.len(), r.witnesses.len());
        }
    }

    #[test]
    fn maximal_bound_is_monotone_and_at_most_one(seed in any::<u64>(), draw in any::<u64>(), pick in 0usize..1000) {
        if let Some(ext) = setup(seed) {
            let r = build_kakeya(&ext, &sticky_sample(&ext, draw)).unwrap();
            let k2 = r.set.restrict(&int(1), &int(2));
            let w = &r.witnesses[pick % r.witnesses.len()];
            let one = maximal_lower_bound(&w.point, &k2, std::slice::from_ref(&w.dilate)).unwrap();
            prop_assert_eq!(&one, &w.average);
            let mut candidates = vec![w.dilate.clone(), w.aggregate.clone()];
            candidates.extend(r.set.members.iter().filter(|m| m.contains(&w.point)).cloned());
            let more = maximal_lower_bound(&w.point, &k2, &candidates).unwrap();
            prop_assert!(more >= one && more <= int(1));
        }
    }
}
