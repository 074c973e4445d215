//! From convex generators to direction trees: rectangle approximation,
//! dyadic enclosing parallelograms, codes, and per-symmetry-class trees.

mod code;
mod enclose;
mod lassak;
mod symmetry;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::geometry::{
    contains_polygon, contains_translate_of_dilate, ConvexPolygon, Homothecy, Point, VParallelogram,
};
use crate::scalar::{int, rat, Scalar};
use crate::tree::{ancestor_closure, DyadicTree, Vertex};
use crate::{Error, Rational, Result};

pub use code::{decode_code, encode_code};
pub use enclose::{enclosing_parallelogram, Enclosure, DEFAULT_MAX_K, ENCLOSURE_CONSTANT, MAX_K_LIMIT};
pub use lassak::{lassak_rectangle, DIRECTION_GRID};
pub use symmetry::Symmetry;

pub const DEFAULT_DEPTH: usize = 8;

/// Input document: generators of the basis and the truncation depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisInput {
    pub generators: Vec<GeneratorSpec>,
    #[serde(default = "default_depth")]
    pub depth: usize,
}

fn default_depth() -> usize {
    DEFAULT_DEPTH
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "camelCase", deny_unknown_fields)]
pub enum GeneratorSpec {
    /// A convex polygon, given as `[x, y]` pairs of rational strings.
    Polygon {
        #[serde(serialize_with = "write_pairs", deserialize_with = "read_pairs")]
        vertices: ConvexPolygon<Rational>,
    },
    /// A code given directly as a bit string.
    Code { bits: Vertex },
    /// Slopes `j·2^{-k}` for each listed `j`.
    Slopes { k: usize, j: Vec<u64> },
}

fn write_pairs<S: Serializer>(poly: &ConvexPolygon<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let pairs: Vec<[String; 2]> = poly.vertices().iter().map(|p| [p.x.to_text(), p.y.to_text()]).collect();
    pairs.serialize(s)
}

fn read_pairs<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<ConvexPolygon<Rational>, D::Error> {
    let pairs: Vec<[String; 2]> = Vec::deserialize(d)?;
    let mut points = Vec::with_capacity(pairs.len());
    for (i, [x, y]) in pairs.iter().enumerate() {
        let parse = |t: &str| Rational::parse_text(t).map_err(|e| D::Error::custom(format!("vertices[{i}]: {e}")));
        points.push(Point::new(parse(x)?, parse(y)?));
    }
    ConvexPolygon::new(points).map_err(|e| D::Error::custom(format!("vertices: {e}")))
}

/// Geometric stages for a polygon generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GeometryRecord {
    pub source: ConvexPolygon<Rational>,
    pub rectangle: ConvexPolygon<Rational>,
    /// `source` and `rectangle` mapped by the record's symmetry class.
    pub normalized_source: ConvexPolygon<Rational>,
    pub normalized_rectangle: ConvexPolygon<Rational>,
    /// Encloses `normalized_rectangle`.
    pub parallelogram: VParallelogram<Rational>,
}

impl GeometryRecord {
    /// Re-checks every containment and area bound exactly.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::VerificationFailed(what.into()));
        if !contains_polygon(&self.rectangle, &self.source) {
            return fail("rectangle does not contain the generator");
        }
        if self.rectangle.area() > int(4) * self.source.area() {
            return fail("rectangle area exceeds 4 times the generator area");
        }
        if contains_translate_of_dilate(&self.source, &self.rectangle, &rat(1, 2))?.is_none() {
            return fail("no translate of the half rectangle fits in the generator");
        }
        let p = self.parallelogram.to_polygon();
        if !contains_polygon(&p, &self.normalized_rectangle) {
            return fail("parallelogram does not contain the rectangle");
        }
        if p.area() > int(ENCLOSURE_CONSTANT) * self.normalized_rectangle.area() {
            return fail("parallelogram area exceeds 32 times the rectangle area");
        }
        if contains_translate_of_dilate(&self.normalized_rectangle, &p, &rat(1, ENCLOSURE_CONSTANT))?.is_none() {
            return fail("no translate of the parallelogram shrunk by 32 fits in the rectangle");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneratorRecord {
    /// Position of the generator in the input list.
    pub index: usize,
    pub symmetry_class: Symmetry,
    pub canonical_code: Vertex,
    pub k: usize,
    pub j: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometryRecord>,
}

/// Runs every generator through the pipeline. Results keep input order; a
/// `slopes` generator yields one record per listed index.
pub fn process_generators(specs: &[GeneratorSpec], max_k: usize) -> Result<Vec<GeneratorRecord>> {
    let results: Vec<Result<Vec<GeneratorRecord>>> = specs
        .par_iter()
        .enumerate()
        .map(|(index, spec)| {
            process_one(index, spec, max_k).map_err(|e| Error::Generator { index, source: Box::new(e) })
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

fn process_one(index: usize, spec: &GeneratorSpec, max_k: usize) -> Result<Vec<GeneratorRecord>> {
    let direct = |k: usize, j: u64, code: Vertex| GeneratorRecord {
        index,
        symmetry_class: Symmetry::Identity,
        canonical_code: code,
        k,
        j,
        geometry: None,
    };
    match spec {
        GeneratorSpec::Code { bits } => {
            let j =
                bits.index_u64().ok_or_else(|| Error::InvalidCode { k: bits.height(), j: bits.index().to_string() })?;
            Ok(vec![direct(bits.height(), j, bits.clone())])
        }
        GeneratorSpec::Slopes { k, j } => j.iter().map(|&j| Ok(direct(*k, j, encode_code(*k, j)?))).collect(),
        GeneratorSpec::Polygon { vertices } => {
            let rectangle = lassak_rectangle(vertices)?;
            let enc = enclosing_parallelogram(&rectangle, max_k)?;
            let record = GeometryRecord {
                source: vertices.clone(),
                normalized_source: vertices.map_points(|p| enc.symmetry.apply(p))?,
                rectangle,
                normalized_rectangle: enc.rectangle,
                parallelogram: enc.parallelogram,
            };
            record.verify()?;
            Ok(vec![GeneratorRecord {
                index,
                symmetry_class: enc.symmetry,
                canonical_code: encode_code(enc.k, enc.j)?,
                k: enc.k,
                j: enc.j,
                geometry: Some(record),
            }])
        }
    }
}

/// Truncated direction tree of one symmetry class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DirectionTree {
    pub symmetry_class: Symmetry,
    pub tree: DyadicTree,
    pub generators: Vec<GeneratorRecord>,
    pub depth: usize,
}

/// Groups records by symmetry class, closes each class's codes and the root
/// under ancestors, and cuts the result at `depth`.
pub fn direction_trees(records: &[GeneratorRecord], depth: usize) -> Result<Vec<DirectionTree>> {
    let mut classes: BTreeMap<Symmetry, Vec<GeneratorRecord>> = BTreeMap::new();
    for r in records {
        classes.entry(r.symmetry_class).or_default().push(r.clone());
    }
    classes
        .into_iter()
        .map(|(class, generators)| {
            let codes = generators.iter().map(|g| g.canonical_code.clone());
            let tree = ancestor_closure(std::iter::once(Vertex::root()).chain(codes))?.truncate(depth);
            Ok(DirectionTree { symmetry_class: class, tree, generators, depth })
        })
        .collect()
}

pub fn build_direction_tree(specs: &[GeneratorSpec], depth: usize, max_k: usize) -> Result<Vec<DirectionTree>> {
    if specs.is_empty() {
        return Err(Error::EmptySet);
    }
    direction_trees(&process_generators(specs, max_k)?, depth)
}
