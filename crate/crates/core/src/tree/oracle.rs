//! Brute-force evaluation of split numbers straight from the definition:
//! the supremum over subtrees of the minimum over rays of the number of
//! splitting vertices met. Exponential; only for small trees.

use std::collections::{BTreeMap, HashMap};

use super::{DyadicTree, SplitProfile, Vertex};
use crate::{Error, Result};

pub const ORACLE_HEIGHT_CAP: usize = 5;

/// Refuse inputs with more rooted subtrees than this at any single vertex.
pub const ORACLE_SUBTREE_BUDGET: u128 = 1 << 24;

/// Definitional split numbers with the default height cap.
pub fn split_oracle(tree: &DyadicTree) -> Result<SplitProfile> {
    split_oracle_with_cap(tree, ORACLE_HEIGHT_CAP)
}

pub fn split_oracle_with_cap(tree: &DyadicTree, cap: usize) -> Result<SplitProfile> {
    tree.require_closed()?;
    let height = tree.height().unwrap_or(0);
    if height > cap {
        return Err(Error::OracleTooLarge(format!("height {height} exceeds cap {cap}")));
    }
    if height > ORACLE_HEIGHT_CAP {
        return Err(Error::OracleTooLarge(format!("height {height} does not fit the 64-bit encoding")));
    }
    let mut values = BTreeMap::new();
    for v in tree.vertices() {
        let local = relative_mask(tree, v);
        let count = count_rooted_subtrees(local, 1);
        if count > ORACLE_SUBTREE_BUDGET {
            return Err(Error::OracleTooLarge(format!(
                "{count} subtrees below `{v}` exceed the budget of {ORACLE_SUBTREE_BUDGET}"
            )));
        }
        let best = rooted_subtrees(local, 1).into_iter().map(min_ray_splits).max().unwrap_or(0);
        values.insert(v.clone(), best as usize);
    }
    Ok(SplitProfile::from_map(values))
}

/// Heap-indexed mask of the descendants of `v`: `v` is bit 1 and the children
/// of bit `i` are bits `2i`, `2i + 1`.
fn relative_mask(tree: &DyadicTree, v: &Vertex) -> u64 {
    let base = v.height();
    let mut mask = 0u64;
    for u in tree.subtree_at(v).vertices() {
        let mut idx = 1u64;
        for &b in &u.bits()[base + 1..] {
            idx = 2 * idx + b as u64;
        }
        mask |= 1 << idx;
    }
    mask
}

fn has(mask: u64, idx: u64) -> bool {
    idx < 64 && mask & (1 << idx) != 0
}

fn count_rooted_subtrees(mask: u64, idx: u64) -> u128 {
    let opt = |c: u64| if has(mask, c) { 1 + count_rooted_subtrees(mask, c) } else { 1 };
    opt(2 * idx) * opt(2 * idx + 1)
}

/// Every subtree of `mask` that contains `idx` and is closed under parents
/// (back up to `idx`).
fn rooted_subtrees(mask: u64, idx: u64) -> Vec<u64> {
    let options = |c: u64| {
        let mut out = vec![0u64];
        if has(mask, c) {
            out.extend(rooted_subtrees(mask, c));
        }
        out
    };
    let left = options(2 * idx);
    let right = options(2 * idx + 1);
    let mut out = Vec::with_capacity(left.len() * right.len());
    for l in &left {
        for r in &right {
            out.push((1 << idx) | l | r);
        }
    }
    out
}

/// `split_𝒮(v)` for the subtree `s` rooted at bit 1: the fewest splitting
/// vertices met by any ray from the root to a leaf.
fn min_ray_splits(s: u64) -> u32 {
    let mut splitting = 0u64;
    let mut leaves = Vec::new();
    let mut bits = s;
    while bits != 0 {
        let i = bits.trailing_zeros() as u64;
        bits &= bits - 1;
        let c0 = has(s, 2 * i);
        let c1 = has(s, 2 * i + 1);
        if c0 && c1 {
            splitting |= 1 << i;
        }
        if !c0 && !c1 {
            leaves.push(i);
        }
    }
    leaves
        .into_iter()
        .map(|leaf| {
            let mut count = 0;
            let mut i = leaf;
            while i >= 1 {
                if splitting & (1 << i) != 0 {
                    count += 1;
                }
                i /= 2;
            }
            count
        })
        .min()
        .unwrap_or(0)
}

/// Definitional split numbers for *every* ancestor-closed subtree of the
/// complete tree of a given height, computed once.
///
/// The inner minimum over rays is evaluated literally for each subtree; the
/// outer supremum over subtrees is taken over the lattice of subtrees by
/// removing one leaf at a time, which reaches every subtree.
pub struct ExhaustiveSplitTable {
    height: usize,
    values: HashMap<u64, u8>,
}

impl ExhaustiveSplitTable {
    pub fn new(height: usize) -> Result<Self> {
        if height > 4 {
            return Err(Error::OracleTooLarge(format!("exhaustive table height {height} exceeds 4")));
        }
        let full = (1u64 << (1 << (height + 1))) - 2;
        let mut trees = rooted_subtrees(full, 1);
        trees.sort_by_key(|m| (m.count_ones(), *m));
        let mut values: HashMap<u64, u8> = HashMap::with_capacity(trees.len());
        for &t in &trees {
            let mut best = min_ray_splits(t) as u8;
            let mut bits = t & !2;
            while bits != 0 {
                let i = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                if !has(t, 2 * i) && !has(t, 2 * i + 1) {
                    best = best.max(values[&(t & !(1 << i))]);
                }
            }
            values.insert(t, best);
        }
        Ok(ExhaustiveSplitTable { height, values })
    }

    /// All ancestor-closed subtrees of the complete tree of this height.
    pub fn trees(&self) -> Vec<DyadicTree> {
        let mut masks: Vec<u64> = self.values.keys().copied().collect();
        masks.sort_unstable();
        masks.into_iter().map(mask_to_tree).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Definitional profile of `tree`, which must lie within the table height.
    pub fn profile(&self, tree: &DyadicTree) -> Result<SplitProfile> {
        tree.require_closed()?;
        if tree.height().unwrap_or(0) > self.height {
            return Err(Error::OracleTooLarge(format!("tree is taller than the table height {}", self.height)));
        }
        let mut per_vertex = BTreeMap::new();
        for v in tree.vertices() {
            let value = self.values[&relative_mask(tree, v)];
            per_vertex.insert(v.clone(), value as usize);
        }
        Ok(SplitProfile::from_map(per_vertex))
    }
}

fn mask_to_tree(mask: u64) -> DyadicTree {
    let mut vertices = Vec::new();
    let mut bits = mask;
    while bits != 0 {
        let i = bits.trailing_zeros();
        bits &= bits - 1;
        let depth = 63 - (i as u64).leading_zeros();
        let mut v = vec![false];
        for d in (0..depth).rev() {
            v.push((i >> d) & 1 == 1);
        }
        vertices.push(Vertex::new(v).expect("leading zero"));
    }
    DyadicTree::from_vertices(vertices)
}
