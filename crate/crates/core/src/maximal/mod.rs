//! Certified lower bounds for the maximal operator of a parallelogram family
//! on indicator functions, and the bounded/unbounded classifier.

mod classify;

use serde::{Deserialize, Serialize};

use crate::geometry::{union_measure_within, Homothecy, ParallelogramUnion, Point, VParallelogram};
use crate::kakeya::KakeyaReport;
use crate::scalar::{self, decimal_nth_root, pow, rat};
use crate::tree::DyadicTree;
use crate::{Error, Rational, Result};

pub use classify::{
    classify, classify_records, ClassSplit, ClassifyOptions, DepthSplit, DichotomyVerdict, KakeyaEvidence,
    LacunarityCheck, SandwichConstants, VerdictKind,
};

/// Digits after the decimal point in rendered roots.
pub const DECIMAL_DIGITS: u32 = 30;

pub fn default_p_grid() -> Vec<Rational> {
    vec![rat(1, 1), rat(5, 4), rat(3, 2), rat(2, 1)]
}

/// Distinct code values `Σ a_i 2^{-i}` of a tree, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DirectionSet {
    #[serde(with = "rational_list")]
    pub slopes: Vec<Rational>,
    pub source_depth: usize,
}

pub fn directions_of(tree: &DyadicTree) -> Result<DirectionSet> {
    if !tree.is_ancestor_closed() {
        let v = tree.vertices().find(|v| v.parent().is_some_and(|p| !tree.contains(&p))).expect("open tree");
        return Err(Error::NotAncestorClosed(v.to_string()));
    }
    let mut slopes: Vec<Rational> = tree.vertices().map(|v| v.value()).collect();
    slopes.sort();
    slopes.dedup();
    Ok(DirectionSet { slopes, source_depth: tree.height().unwrap_or(0) })
}

/// `max_Q |E ∩ Q| / |Q|` over candidates `Q`, each required to contain `x`.
/// A lower bound for the maximal function of `χ_E` at `x` over any family
/// that contains the candidates.
pub fn maximal_lower_bound(
    x: &Point<Rational>,
    set: &ParallelogramUnion<Rational>,
    candidates: &[VParallelogram<Rational>],
) -> Result<Rational> {
    if candidates.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut best: Option<Rational> = None;
    for (i, q) in candidates.iter().enumerate() {
        if !q.contains(x) {
            return Err(Error::InvalidCandidate(i));
        }
        let avg = union_measure_within(set, q, &q.x0, &q.x1) / q.area();
        if best.as_ref().is_none_or(|b| &avg > b) {
            best = Some(avg);
        }
    }
    Ok(best.expect("nonempty"))
}

/// `L^p` data at one exponent. Roots stay symbolic as `(base, 1/p)` and are
/// also rendered as truncated decimals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LpBound {
    #[serde(with = "scalar::text")]
    pub p: Rational,
    /// `threshold · base^(1/p)` bounds `‖M χ_{K₂}‖_{p,∞}` from below.
    #[serde(with = "scalar::text")]
    pub base: Rational,
    #[serde(with = "scalar::text")]
    pub exponent: Rational,
    pub lower_bound_decimal: String,
    /// `m1^(1/p) / (4 · m2^(1/p))`, the weak-type ratio against `‖χ_{K₂}‖_p`.
    pub ratio_decimal: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelSetBound {
    #[serde(with = "scalar::text")]
    pub threshold: Rational,
    /// Measure of a certified subset of the level set.
    #[serde(with = "scalar::text")]
    pub measure_lower_bound: Rational,
    /// `|K₂|`, the `p`-th power of `‖χ_{K₂}‖_p`.
    #[serde(with = "scalar::text")]
    pub indicator_measure: Rational,
    #[serde(with = "rational_list")]
    pub p_grid: Vec<Rational>,
    pub lp_lower_bounds: Vec<LpBound>,
}

/// The level set `{M χ_{K₂} ≥ 1/4}` contains `K₁`, whose measure is `m1`.
pub fn weak_level_set(report: &KakeyaReport, p_grid: &[Rational]) -> Result<LevelSetBound> {
    let threshold = rat(1, 4);
    if report.witnesses.is_empty() || report.min_witness_average < threshold {
        return Err(Error::VerificationFailed("report lacks passing quarter witnesses".into()));
    }
    let (m1, m2) = (report.m1.clone(), report.m2.clone());
    let lp_lower_bounds = p_grid
        .iter()
        .map(|p| {
            if p <= &rat(0, 1) {
                return Err(Error::Parse(format!("exponent {p} must be positive")));
            }
            // x^(1/p) = (x^b)^(1/a) for p = a/b.
            let a = small(p.numer())?;
            let b = small(p.denom())?;
            let lower = pow(&threshold, a) * pow(&m1, b);
            let ratio = pow(&(m1.clone() / m2.clone()), b) / pow(&rat(4, 1), a);
            Ok(LpBound {
                p: p.clone(),
                base: m1.clone(),
                exponent: rat(1, 1) / p.clone(),
                lower_bound_decimal: decimal_nth_root(&lower, a, DECIMAL_DIGITS),
                ratio_decimal: decimal_nth_root(&ratio, a, DECIMAL_DIGITS),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LevelSetBound {
        threshold,
        measure_lower_bound: m1,
        indicator_measure: m2,
        p_grid: p_grid.to_vec(),
        lp_lower_bounds,
    })
}

fn small(n: &num_bigint::BigInt) -> Result<u32> {
    use num_traits::ToPrimitive;
    n.to_u32().filter(|&v| v <= 64).ok_or_else(|| Error::Parse(format!("exponent part {n} is too large")))
}

pub(crate) mod rational_list {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::{Rational, Scalar};

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        values.iter().map(|v| v.to_text()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter().map(|t| Rational::parse_text(t).map_err(serde::de::Error::custom)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kakeya::{build_kakeya, extend_pruned, search_sigma, sticky_sample, Objective};
    use crate::scalar::int;

    fn square(x0: Rational, y0: Rational) -> VParallelogram<Rational> {
        VParallelogram::new(x0.clone(), x0 + int(1), y0, int(0), int(1)).unwrap()
    }

    #[test]
    fn direction_examples() {
        let d = |vs: &[&str]| directions_of(&DyadicTree::parse(vs.iter().copied()).unwrap()).unwrap().slopes;
        assert_eq!(d(&["0"]), [int(0)]);
        assert_eq!(d(&["0", "00", "01"]), [int(0), rat(1, 2)]);
        assert_eq!(directions_of(&DyadicTree::complete(2)).unwrap().slopes, [int(0), rat(1, 4), rat(1, 2), rat(3, 4)]);
        assert!(directions_of(&DyadicTree::parse(["0", "011"]).unwrap()).is_err());
    }

    #[test]
    fn unit_square_examples() {
        let e = ParallelogramUnion::new(vec![square(int(0), int(0))]);
        let inside = Point::new(rat(1, 2), rat(1, 2));
        assert_eq!(maximal_lower_bound(&inside, &e, &[square(int(0), int(0))]).unwrap(), int(1));
        let right = Point::new(rat(3, 2), rat(1, 2));
        assert_eq!(maximal_lower_bound(&right, &e, &[square(rat(1, 2), int(0))]).unwrap(), rat(1, 2));
        assert_eq!(maximal_lower_bound(&right, &e, &[square(int(0), int(0))]), Err(Error::InvalidCandidate(0)));
        assert_eq!(maximal_lower_bound(&right, &e, &[]), Err(Error::EmptySet));
    }

    #[test]
    fn witness_parallelogram_certifies_quarter() {
        let ext = extend_pruned(&DyadicTree::complete(3), 3).unwrap();
        let r = build_kakeya(&ext, &sticky_sample(&ext, 11)).unwrap();
        for w in r.witnesses.iter().step_by(17) {
            let v = maximal_lower_bound(&w.point, &r.set.restrict(&int(1), &int(2)), std::slice::from_ref(&w.dilate))
                .unwrap();
            assert_eq!(v, w.average);
            assert!(v >= rat(1, 4));
        }
    }

    #[test]
    fn level_set_of_depth_zero() {
        let ext = extend_pruned(&DyadicTree::parse(["0"]).unwrap(), 0).unwrap();
        let r = build_kakeya(&ext, &sticky_sample(&ext, 0)).unwrap();
        let b = weak_level_set(&r, &default_p_grid()).unwrap();
        assert_eq!((b.threshold.clone(), b.measure_lower_bound.clone()), (rat(1, 4), int(1)));
        assert_eq!(b.lp_lower_bounds[0].lower_bound_decimal, format!("0.25{}", "0".repeat(28)));
        assert_eq!(b.lp_lower_bounds[3].ratio_decimal, format!("0.25{}", "0".repeat(28)));
    }

    #[test]
    fn level_set_uses_report_measure() {
        let ext = extend_pruned(&DyadicTree::complete(4), 4).unwrap();
        let r = search_sigma(&ext, 8, 0, Objective::MaxRatio).unwrap();
        let b = weak_level_set(&r, &default_p_grid()).unwrap();
        assert_eq!(b.measure_lower_bound, r.m1);
        // p = 1: ratio is m1 / (4 m2).
        let expected = r.m1.clone() / (r.m2.clone() * int(4));
        assert_eq!(b.lp_lower_bounds[0].ratio_decimal, decimal_nth_root(&expected, 1, DECIMAL_DIGITS));
    }
}
