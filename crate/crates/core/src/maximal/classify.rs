use serde::{Deserialize, Serialize};

use super::{default_p_grid, weak_level_set, LevelSetBound};
use crate::basis::{direction_trees, process_generators, GeneratorRecord, GeneratorSpec, Symmetry, DEFAULT_MAX_K};
use crate::kakeya::{prepare_kakeya, search_sigma, KakeyaReport, Objective, DEFAULT_TRIALS};
use crate::scalar::{self, rat};
use crate::tree::split_number;
use crate::{Error, Rational, Result};

/// Splits must increase at least this many times across the tested depths
/// before the verdict reports unbounded growth.
pub const MIN_INCREASES: usize = 2;
/// Smallest split value that gets a Kakeya report.
pub const MIN_REPORT_N: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassifyOptions {
    pub depths: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub max_k: usize,
    /// Largest split value that gets a Kakeya report.
    pub max_report_n: usize,
    pub objective: Objective,
    #[serde(with = "super::rational_list")]
    pub p_grid: Vec<Rational>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            depths: (1..=8).collect(),
            trials: DEFAULT_TRIALS,
            seed: 0,
            max_k: DEFAULT_MAX_K,
            max_report_n: 6,
            objective: Objective::MaxRatio,
            p_grid: default_p_grid(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum VerdictKind {
    BoundedCertificate,
    UnboundedEvidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassSplit {
    pub symmetry_class: Symmetry,
    pub split: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DepthSplit {
    pub depth: usize,
    /// Maximum over symmetry classes.
    pub split: usize,
    pub per_class: Vec<ClassSplit>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LacunarityCheck {
    pub symmetry_class: Symmetry,
    pub depth: usize,
    /// Lacunarity order of the zero-extended truncated tree.
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct KakeyaEvidence {
    #[serde(rename = "N")]
    pub n: usize,
    pub symmetry_class: Symmetry,
    pub report: KakeyaReport,
    pub level_set: LevelSetBound,
}

/// Comparison constants between the maximal operator of the basis and that
/// of its canonical parallelograms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SandwichConstants {
    #[serde(with = "scalar::text")]
    pub lower: Rational,
    #[serde(with = "scalar::text")]
    pub upper: Rational,
}

impl Default for SandwichConstants {
    fn default() -> Self {
        SandwichConstants { lower: rat(1, 4096), upper: rat(128, 1) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DichotomyVerdict {
    pub kind: VerdictKind,
    pub split_by_depth: Vec<DepthSplit>,
    /// `N + 1` for the largest split `N` seen, on the bounded side.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lacunarity: Vec<LacunarityCheck>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub kakeya: Vec<KakeyaEvidence>,
    /// Set when splits vary across depths without enough growth to call.
    pub caveat: bool,
    pub scope: String,
    pub sandwich_constants: SandwichConstants,
}

pub fn classify(specs: &[GeneratorSpec], options: &ClassifyOptions) -> Result<DichotomyVerdict> {
    if specs.is_empty() {
        return Err(Error::EmptySet);
    }
    classify_records(&process_generators(specs, options.max_k)?, options)
}

pub fn classify_records(records: &[GeneratorRecord], options: &ClassifyOptions) -> Result<DichotomyVerdict> {
    let depths = &options.depths;
    if depths.is_empty() || depths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parse("depths must be nonempty and strictly increasing".into()));
    }
    if options.trials == 0 {
        return Err(Error::Parse("trials must be at least 1".into()));
    }
    let mut split_by_depth = Vec::with_capacity(depths.len());
    for &depth in depths {
        let per_class = direction_trees(records, depth)?
            .iter()
            .map(|dt| Ok(ClassSplit { symmetry_class: dt.symmetry_class, split: split_number(&dt.tree)?.tree }))
            .collect::<Result<Vec<_>>>()?;
        let split = per_class.iter().map(|c| c.split).max().unwrap_or(0);
        split_by_depth.push(DepthSplit { depth, split, per_class });
    }
    let splits: Vec<usize> = split_by_depth.iter().map(|d| d.split).collect();
    let increases = splits.windows(2).filter(|w| w[1] > w[0]).count();
    let max_depth = *depths.last().expect("nonempty");
    let scope = format!("certifies only the truncations at depths {:?}; no claim is made about deeper levels", depths);
    let mut verdict = DichotomyVerdict {
        kind: VerdictKind::BoundedCertificate,
        split_by_depth,
        order: None,
        lacunarity: Vec::new(),
        kakeya: Vec::new(),
        caveat: false,
        scope,
        sandwich_constants: SandwichConstants::default(),
    };
    if increases >= MIN_INCREASES {
        verdict.kind = VerdictKind::UnboundedEvidence;
        let mut achieved: Vec<usize> = splits.clone();
        achieved.sort_unstable();
        achieved.dedup();
        for n in achieved.into_iter().filter(|&n| (MIN_REPORT_N..=options.max_report_n).contains(&n)) {
            let setup = prepare_kakeya(records, n, max_depth)?;
            let report = search_sigma(&setup.extended, options.trials, options.seed, options.objective)?;
            let level_set = weak_level_set(&report, &options.p_grid)?;
            verdict.kakeya.push(KakeyaEvidence { n, symmetry_class: setup.symmetry_class, report, level_set });
        }
        return Ok(verdict);
    }
    let n = splits.iter().copied().max().unwrap_or(0);
    verdict.caveat = splits.iter().any(|&s| s != n);
    verdict.order = Some(n + 1);
    for dt in direction_trees(records, max_depth)? {
        let order = dt.tree.extend(max_depth)?.lacunarity_order()?;
        if order > n + 1 {
            return Err(Error::VerificationFailed(format!(
                "class {} has lacunarity order {order} above {}",
                dt.symmetry_class.name(),
                n + 1
            )));
        }
        verdict.lacunarity.push(LacunarityCheck { symmetry_class: dt.symmetry_class, depth: max_depth, order });
    }
    Ok(verdict)
}
