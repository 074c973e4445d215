use std::collections::BTreeMap;

use super::{split_number, DyadicTree, SplitProfile, Vertex};
use crate::{Error, Result};

/// Prunes `tree` to a subtree in which every ray from the root meets exactly
/// one splitting vertex of split value `j` for each `j = 1..=n`, and no other
/// splitting vertex.
///
/// Greedy from the root: a vertex is made to split at level `j` as soon as
/// both of its children can carry level `j - 1`; otherwise the walk descends
/// into a child that still carries level `j`, preferring the 0-child. At level
/// 0 a single ray is kept down to a leaf of `tree`, 0-child first, so every
/// leaf of the result is a leaf of the input.
pub fn prune_bateman(tree: &DyadicTree, n: usize) -> Result<DyadicTree> {
    let profile = split_number(tree)?;
    let root = Vertex::root();
    let available = profile.root();
    if available < n {
        return Err(Error::InsufficientSplit { requested: n, available });
    }
    let mut out = DyadicTree::new();
    let mut stack = vec![(root, n)];
    while let Some((v, level)) = stack.pop() {
        out.insert(v.clone());
        let children = tree.children(&v);
        if children.is_empty() {
            debug_assert_eq!(level, 0);
            continue;
        }
        let value = |c: &Vertex| profile.at(c).expect("child in profile");
        if level > 0 && children.len() == 2 && children.iter().all(|c| value(c) + 1 >= level) {
            stack.push((children[1].clone(), level - 1));
            stack.push((children[0].clone(), level - 1));
            continue;
        }
        let next = children.iter().find(|c| value(c) >= level).expect("a child carries the level");
        stack.push((next.clone(), level));
    }
    check_bateman_pruning(&out, n)?;
    if !out.is_subset(tree) {
        return Err(Error::VerificationFailed("pruned tree is not a subtree of the input".into()));
    }
    Ok(out)
}

/// Checks that `pruned` is ancestor-closed, has root split value `n`, and that
/// the splitting vertices met by every ray from the root carry the values
/// `n, n-1, ..., 1` exactly once each.
pub fn check_bateman_pruning(pruned: &DyadicTree, n: usize) -> Result<SplitProfile> {
    let profile = split_number(pruned)?;
    if profile.root() != n {
        return Err(Error::VerificationFailed(format!("pruned root has split {} instead of {n}", profile.root())));
    }
    let splitting = pruned.splitting_vertices();
    for ray in pruned.rays_from(&Vertex::root()) {
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        for v in ray.iter().filter(|v| splitting.contains(v)) {
            *seen.entry(profile.at(v).expect("vertex in profile")).or_default() += 1;
        }
        let expected: BTreeMap<usize, usize> = (1..=n).map(|j| (j, 1)).collect();
        if seen != expected {
            let leaf = ray.last().expect("nonempty ray");
            return Err(Error::VerificationFailed(format!(
                "ray to `{leaf}` meets split values {seen:?}, expected each of 1..={n} once"
            )));
        }
    }
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(vs: &[&str]) -> DyadicTree {
        DyadicTree::parse(vs.iter().copied()).unwrap()
    }

    #[test]
    fn complete_tree_is_its_own_pruning() {
        let c3 = DyadicTree::complete(3);
        assert_eq!(prune_bateman(&c3, 3).unwrap(), c3);
    }

    #[test]
    fn bush_prunes_to_one_split() {
        let tree = t(&["0", "00", "01", "010", "011"]);
        let pruned = prune_bateman(&tree, 1).unwrap();
        assert_eq!(pruned, t(&["0", "00", "01", "010"]));
        // The shorter choice is also a valid pruning.
        assert!(check_bateman_pruning(&t(&["0", "00", "01"]), 1).is_ok());
    }

    #[test]
    fn ray_prunes_to_itself() {
        let ray = t(&["0", "00", "000"]);
        assert_eq!(prune_bateman(&ray, 0).unwrap(), ray);
    }

    #[test]
    fn lower_level_than_available() {
        let c3 = DyadicTree::complete(3);
        let pruned = prune_bateman(&c3, 1).unwrap();
        assert_eq!(pruned, t(&["0", "00", "000", "0000", "01", "010", "0100"]));
        assert_eq!(prune_bateman(&c3, 0).unwrap(), DyadicTree::zero_ray(3));
    }

    #[test]
    fn insufficient_split() {
        assert_eq!(
            prune_bateman(&t(&["0", "00", "01"]), 2),
            Err(Error::InsufficientSplit { requested: 2, available: 1 })
        );
    }

    #[test]
    fn checker_rejects_unbalanced_trees() {
        // Caterpillar: the ray 0,00,000 meets two splits.
        let cat = t(&["0", "00", "01", "000", "001"]);
        assert!(check_bateman_pruning(&cat, 1).is_err());
        assert!(check_bateman_pruning(&cat, 2).is_err());
    }
}
