//! Finite subtrees of the infinite dyadic tree.
//!
//! A [`DyadicTree`] is a set of [`Vertex`] values; edges are implicit between a
//! vertex and its one-bit extensions. Most operations expect the set to be
//! ancestor-closed, i.e. a rooted subtree hanging from `"0"`.

mod oracle;
mod prune;
mod split;
mod vertex;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use oracle::{split_oracle, split_oracle_with_cap, ExhaustiveSplitTable, ORACLE_HEIGHT_CAP, ORACLE_SUBTREE_BUDGET};
pub use prune::{check_bateman_pruning, prune_bateman};
pub use split::{split_number, SplitProfile};
pub use vertex::Vertex;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DyadicTree {
    vertices: BTreeSet<Vertex>,
}

impl DyadicTree {
    pub fn new() -> Self {
        Self::default()
    }

    /// Wraps a vertex set as-is; no closure is applied.
    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        DyadicTree { vertices: vertices.into_iter().collect() }
    }

    pub fn parse<'a, I: IntoIterator<Item = &'a str>>(strs: I) -> Result<Self> {
        Ok(Self::from_vertices(strs.into_iter().map(str::parse).collect::<Result<Vec<Vertex>>>()?))
    }

    /// The single ray `0, 00, 000, ...` down to `height`.
    pub fn zero_ray(height: usize) -> Self {
        Self::from_vertices((0..=height).map(|h| Vertex::root().zero_fill(h)))
    }

    /// The complete tree `𝔅^height`.
    pub fn complete(height: usize) -> Self {
        let mut level = vec![Vertex::root()];
        let mut all = level.clone();
        for _ in 0..height {
            level = level.iter().flat_map(|v| [v.child(false), v.child(true)]).collect();
            all.extend(level.iter().cloned());
        }
        Self::from_vertices(all)
    }

    pub fn vertices(&self) -> impl DoubleEndedIterator<Item = &Vertex> + '_ {
        self.vertices.iter()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.vertices.contains(v)
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.vertices.insert(v)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Maximum vertex height, `None` for the empty tree.
    pub fn height(&self) -> Option<usize> {
        self.vertices.iter().map(Vertex::height).max()
    }

    pub fn is_subset(&self, other: &DyadicTree) -> bool {
        self.vertices.is_subset(&other.vertices)
    }

    pub fn is_ancestor_closed(&self) -> bool {
        self.vertices.iter().all(|v| v.parent().is_none_or(|p| self.vertices.contains(&p)))
    }

    pub(crate) fn require_closed(&self) -> Result<()> {
        if self.vertices.is_empty() {
            return Err(Error::EmptySet);
        }
        match self.vertices.iter().find(|v| v.parent().is_some_and(|p| !self.vertices.contains(&p))) {
            Some(v) => Err(Error::NotAncestorClosed(v.to_string())),
            None => Ok(()),
        }
    }

    /// Children of `v` present in the tree, 0-child first.
    pub fn children(&self, v: &Vertex) -> Vec<Vertex> {
        [v.child(false), v.child(true)].into_iter().filter(|c| self.contains(c)).collect()
    }

    /// Vertices with no child in the tree.
    pub fn leaves(&self) -> Vec<Vertex> {
        self.vertices.iter().filter(|v| self.children(v).is_empty()).cloned().collect()
    }

    /// Vertices at exactly `height`.
    pub fn level(&self, height: usize) -> Vec<Vertex> {
        self.vertices.iter().filter(|v| v.height() == height).cloned().collect()
    }

    /// Rays starting at `v`: every path from `v` down to a leaf below it.
    pub fn rays_from(&self, v: &Vertex) -> Vec<Vec<Vertex>> {
        let mut rays = Vec::new();
        let mut stack = vec![vec![v.clone()]];
        while let Some(path) = stack.pop() {
            let tip = path.last().expect("nonempty path");
            let children = self.children(tip);
            if children.is_empty() {
                rays.push(path);
                continue;
            }
            for c in children.into_iter().rev() {
                let mut next = path.clone();
                next.push(c);
                stack.push(next);
            }
        }
        rays
    }

    /// Descendants of `v` (including `v`) as a tree of their own.
    pub fn subtree_at(&self, v: &Vertex) -> DyadicTree {
        Self::from_vertices(self.vertices.range(v.clone()..).take_while(|u| v.is_prefix_of(u)).cloned())
    }

    /// `𝒮^k`: vertices of height at most `k`.
    pub fn truncate(&self, k: usize) -> DyadicTree {
        Self::from_vertices(self.vertices.iter().filter(|v| v.height() <= k).cloned())
    }

    /// `𝒮*` cut at height `h`: the tree plus every trailing-zero extension of
    /// its vertices up to height `h`.
    pub fn extend(&self, h: usize) -> Result<DyadicTree> {
        self.require_closed()?;
        let actual = self.height().unwrap_or(0);
        if h < actual {
            return Err(Error::InvalidHeight { requested: h, actual });
        }
        let mut out = self.vertices.clone();
        for v in &self.vertices {
            let mut cur = v.clone();
            while cur.height() < h {
                cur = cur.child(false);
                // Members of the input get their own chain.
                if self.vertices.contains(&cur) {
                    break;
                }
                out.insert(cur.clone());
            }
        }
        Ok(DyadicTree { vertices: out })
    }

    /// Vertices both of whose children are present.
    pub fn splitting_vertices(&self) -> BTreeSet<Vertex> {
        self.vertices
            .iter()
            .filter(|v| self.contains(&v.child(false)) && self.contains(&v.child(true)))
            .cloned()
            .collect()
    }

    /// Smallest `N` for which the tree is lacunary of order `N`: zero for a
    /// splitless tree, otherwise one more than the order of the closure of its
    /// splitting vertices.
    pub fn lacunarity_order(&self) -> Result<usize> {
        self.require_closed()?;
        let mut order = 0;
        let mut current = self.clone();
        loop {
            let splits = current.splitting_vertices();
            if splits.is_empty() {
                return Ok(order);
            }
            order += 1;
            current = ancestor_closure(splits)?;
        }
    }
}

/// `[𝒮]`: the smallest ancestor-closed tree containing `set`.
pub fn ancestor_closure<I: IntoIterator<Item = Vertex>>(set: I) -> Result<DyadicTree> {
    let mut out = BTreeSet::new();
    for v in set {
        let mut cur = Some(v);
        while let Some(u) = cur {
            if !out.insert(u.clone()) {
                break;
            }
            cur = u.parent();
        }
    }
    if out.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(DyadicTree { vertices: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(vs: &[&str]) -> DyadicTree {
        DyadicTree::parse(vs.iter().copied()).unwrap()
    }

    fn vs(vs: &[&str]) -> Vec<Vertex> {
        vs.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(ancestor_closure(vs(&["011"])).unwrap(), t(&["0", "01", "011"]));
        assert_eq!(ancestor_closure(vs(&["0"])).unwrap(), t(&["0"]));
        assert_eq!(ancestor_closure(vs(&["000", "011"])).unwrap(), t(&["0", "00", "000", "01", "011"]));
        assert_eq!(ancestor_closure(Vec::new()), Err(Error::EmptySet));
    }

    #[test]
    fn closure_is_idempotent() {
        let c = ancestor_closure(vs(&["0101", "0011", "01"])).unwrap();
        assert_eq!(ancestor_closure(c.vertices().cloned()).unwrap(), c);
        assert!(c.is_ancestor_closed());
    }

    #[test]
    fn truncate_examples() {
        assert_eq!(t(&["0", "00", "000"]).truncate(1), t(&["0", "00"]));
        assert_eq!(t(&["0", "00", "000"]).truncate(5), t(&["0", "00", "000"]));
        assert_eq!(t(&["0", "00", "01", "011"]).truncate(0), t(&["0"]));
    }

    #[test]
    fn extend_examples() {
        assert_eq!(t(&["0", "01"]).extend(3).unwrap(), t(&["0", "00", "01", "000", "010", "0000", "0100"]));
        assert_eq!(t(&["0"]).extend(2).unwrap(), t(&["0", "00", "000"]));
        let c2 = DyadicTree::complete(2);
        assert_eq!(c2.extend(2).unwrap(), c2);
        assert_eq!(t(&["0", "00", "000"]).extend(1), Err(Error::InvalidHeight { requested: 1, actual: 2 }));
    }

    #[test]
    fn extend_is_idempotent() {
        let tree = ancestor_closure(vs(&["0101", "0011", "01110"])).unwrap();
        let once = tree.extend(7).unwrap();
        assert_eq!(once.extend(7).unwrap(), once);
        assert!(once.is_ancestor_closed());
    }

    #[test]
    fn splitting_examples() {
        assert!(t(&["0", "00", "000"]).splitting_vertices().is_empty());
        assert_eq!(t(&["0", "00", "01"]).splitting_vertices(), vs(&["0"]).into_iter().collect());
        assert_eq!(DyadicTree::complete(2).splitting_vertices(), vs(&["0", "00", "01"]).into_iter().collect());
    }

    #[test]
    fn lacunarity_examples() {
        assert_eq!(t(&["0", "00"]).lacunarity_order().unwrap(), 0);
        assert_eq!(t(&["0", "00", "01", "000", "001"]).lacunarity_order().unwrap(), 1);
        assert_eq!(DyadicTree::complete(2).lacunarity_order().unwrap(), 2);
        assert!(t(&["0", "011"]).lacunarity_order().is_err());
    }

    #[test]
    fn rays_end_at_leaves() {
        let tree = t(&["0", "00", "01", "010", "011"]);
        let rays = tree.rays_from(&"0".parse().unwrap());
        assert_eq!(rays.len(), 3);
        assert_eq!(rays[0], vs(&["0", "00"]));
        assert_eq!(rays[2], vs(&["0", "01", "011"]));
    }

    #[test]
    fn complete_tree_size() {
        assert_eq!(DyadicTree::complete(3).len(), 15);
        assert_eq!(DyadicTree::complete(0), t(&["0"]));
    }

    #[test]
    fn json_is_sorted_bit_strings() {
        let tree = t(&["01", "0", "00"]);
        assert_eq!(serde_json::to_string(&tree).unwrap(), r#"["0","00","01"]"#);
        let back: DyadicTree = serde_json::from_str(r#"["0","01","00"]"#).unwrap();
        assert_eq!(back, tree);
        assert!(serde_json::from_str::<DyadicTree>(r#"["0","2"]"#).is_err());
    }
}
