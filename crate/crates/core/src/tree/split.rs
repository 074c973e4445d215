use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{DyadicTree, Vertex};
use crate::Result;

/// Per-vertex `split(v, 𝒯)` together with `split(𝒯)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitProfile {
    pub per_vertex: BTreeMap<Vertex, usize>,
    pub tree: usize,
}

impl SplitProfile {
    pub fn at(&self, v: &Vertex) -> Option<usize> {
        self.per_vertex.get(v).copied()
    }

    pub fn root(&self) -> usize {
        self.at(&Vertex::root()).unwrap_or(0)
    }

    pub(crate) fn from_map(per_vertex: BTreeMap<Vertex, usize>) -> Self {
        let tree = per_vertex.values().copied().max().unwrap_or(0);
        SplitProfile { per_vertex, tree }
    }
}

/// Split numbers by the bottom-up recursion: a leaf has 0, a vertex with one
/// child inherits it, and a vertex with children valued `a`, `b` gets
/// `max(a, b, 1 + min(a, b))`.
pub fn split_number(tree: &DyadicTree) -> Result<SplitProfile> {
    tree.require_closed()?;
    let mut values: BTreeMap<Vertex, usize> = BTreeMap::new();
    // Children sort after their parent, so reverse order visits them first.
    for v in tree.vertices().rev() {
        let f0 = values.get(&v.child(false)).copied();
        let f1 = values.get(&v.child(true)).copied();
        let f = match (f0, f1) {
            (None, None) => 0,
            (Some(a), None) | (None, Some(a)) => a,
            (Some(a), Some(b)) => a.max(b).max(1 + a.min(b)),
        };
        values.insert(v.clone(), f);
    }
    Ok(SplitProfile::from_map(values))
}
