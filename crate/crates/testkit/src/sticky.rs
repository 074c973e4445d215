use std::collections::BTreeMap;

use lacuna_core::kakeya::{ExtendedTree, StickyMap};
use lacuna_core::tree::{DyadicTree, Vertex};

/// Every sticky map into `ext`, by brute-force choice of each child image.
pub fn all_sticky_maps(ext: &ExtendedTree) -> Vec<StickyMap> {
    let order: Vec<Vertex> = DyadicTree::complete(ext.depth).vertices().filter(|v| !v.is_root()).cloned().collect();
    let mut image = BTreeMap::from([(Vertex::root(), Vertex::root())]);
    let mut out = Vec::new();
    extend(ext, &order, 0, &mut image, &mut out);
    out
}

fn extend(
    ext: &ExtendedTree,
    order: &[Vertex],
    at: usize,
    image: &mut BTreeMap<Vertex, Vertex>,
    out: &mut Vec<StickyMap>,
) {
    let Some(v) = order.get(at) else {
        out.push(StickyMap { depth: ext.depth, image: image.clone() });
        return;
    };
    let parent = image[&v.parent().expect("non-root")].clone();
    for w in ext.extended.children(&parent) {
        image.insert(v.clone(), w);
        extend(ext, order, at + 1, image, out);
    }
    image.remove(v);
}
