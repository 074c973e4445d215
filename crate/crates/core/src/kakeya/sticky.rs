use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::tree::{DyadicTree, Vertex};
use crate::{Error, Result};

/// A pruned tree together with its zero-filled extension to height `depth`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtendedTree {
    pub pruned: DyadicTree,
    pub extended: DyadicTree,
    pub depth: usize,
}

impl ExtendedTree {
    /// Deepest vertex of the pruned tree on the path to `v`.
    pub fn pruned_ancestor(&self, v: &Vertex) -> Vertex {
        (0..=v.height())
            .rev()
            .map(|h| v.ancestor_at(h))
            .find(|a| self.pruned.contains(a))
            .expect("the root is always pruned")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::VerificationFailed(format!("extended tree: {msg}")));
        if !self.pruned.is_subset(&self.extended) {
            return bad("does not contain the pruned tree".into());
        }
        let leaves: Vec<Vertex> = self.pruned.leaves();
        for v in self.extended.vertices() {
            if v.height() > self.depth {
                return bad(format!("`{v}` is deeper than {}", self.depth));
            }
            if !self.pruned.contains(v) {
                let a = self.pruned_ancestor(v);
                if !leaves.contains(&a) || a.zero_fill(v.height()) != *v {
                    return bad(format!("`{v}` is not a zero-fill of a pruned leaf"));
                }
            }
            if v.height() < self.depth && self.extended.children(v).is_empty() {
                return bad(format!("`{v}` has no children"));
            }
        }
        Ok(())
    }
}

/// Adds the trailing-zero descendants of every pruned leaf down to height `k`.
pub fn extend_pruned(pruned: &DyadicTree, k: usize) -> Result<ExtendedTree> {
    pruned.require_closed()?;
    let actual = pruned.height().unwrap_or(0);
    if actual > k {
        return Err(Error::InvalidHeight { requested: k, actual });
    }
    let mut extended = pruned.clone();
    for leaf in pruned.leaves() {
        for h in leaf.height() + 1..=k {
            extended.insert(leaf.zero_fill(h));
        }
    }
    Ok(ExtendedTree { pruned: pruned.clone(), extended, depth: k })
}

/// Height- and descendance-preserving map from the complete tree of height
/// `depth` into an extended tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StickyMap {
    pub depth: usize,
    pub image: BTreeMap<Vertex, Vertex>,
}

impl StickyMap {
    pub fn get(&self, v: &Vertex) -> Option<&Vertex> {
        self.image.get(v)
    }

    /// Checks the map against `ext`: defined exactly on the complete tree,
    /// root to root, images in `ext`, and each child mapped to a child of its
    /// parent's image. The last condition is equivalent to preserving both
    /// heights and descendance.
    pub fn validate(&self, ext: &ExtendedTree) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidStickyMap(msg));
        if self.depth != ext.depth {
            return bad(format!("depth {} differs from tree depth {}", self.depth, ext.depth));
        }
        let expected = (1usize << (self.depth + 1)) - 1;
        if self.image.len() != expected {
            return bad(format!("{} vertices mapped, expected {expected}", self.image.len()));
        }
        if self.image.get(&Vertex::root()) != Some(&Vertex::root()) {
            return bad("root is not fixed".into());
        }
        for (v, w) in &self.image {
            if v.height() > self.depth {
                return bad(format!("`{v}` is deeper than {}", self.depth));
            }
            if !ext.extended.contains(w) {
                return bad(format!("image `{w}` of `{v}` is not in the tree"));
            }
            if w.height() != v.height() {
                return bad(format!("`{v}` maps to `{w}` at a different height"));
            }
            if let Some(p) = v.parent() {
                match self.image.get(&p) {
                    Some(pw) if pw.is_ancestor_of(w) => {}
                    _ => return bad(format!("image of `{v}` does not descend from the image of its parent")),
                }
            }
        }
        Ok(())
    }
}

impl Serialize for StickyMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.image.iter().collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for StickyMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(Vertex, Vertex)> = Vec::deserialize(d)?;
        let depth = pairs.iter().map(|(v, _)| v.height()).max().unwrap_or(0);
        Ok(StickyMap { depth, image: pairs.into_iter().collect() })
    }
}

/// Draws a sticky map top-down: a child of `v` goes to the only child of
/// `σ(v)` when there is one, and to a uniformly chosen child otherwise.
pub fn sticky_sample(ext: &ExtendedTree, seed: u64) -> StickyMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut image = BTreeMap::new();
    image.insert(Vertex::root(), Vertex::root());
    // Lexicographic order visits parents before children.
    for v in DyadicTree::complete(ext.depth.saturating_sub(1)).vertices() {
        if v.height() >= ext.depth {
            continue;
        }
        let target = image[v].clone();
        let options = ext.extended.children(&target);
        for bit in [false, true] {
            let pick = match options.len() {
                1 => options[0].clone(),
                _ => options[rng.gen_range(0..options.len())].clone(),
            };
            image.insert(v.child(bit), pick);
        }
    }
    StickyMap { depth: ext.depth, image }
}
