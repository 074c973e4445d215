//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero on any unexpected outcome.
//!
//! Criterion 5 is a known failure: best-of-256 sticky-map ratios on complete
//! trees are not increasing in N, and at depth 3 the seeded search misses the
//! exhaustive optimum. It is run in full and reported as FAIL; it only stops
//! being tolerated if it starts passing.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use lacuna_core::basis::{process_generators, GeneratorRecord, GeneratorSpec, DEFAULT_MAX_K, ENCLOSURE_CONSTANT};
use lacuna_core::geometry::{contains_polygon, contains_translate_of_dilate, union_measure, Homothecy};
use lacuna_core::kakeya::{
    kakeya_set, prepare_kakeya, quarter_witness, search_sigma, slab_measures, KakeyaReport, Objective,
};
use lacuna_core::maximal::{classify, maximal_lower_bound, ClassifyOptions, VerdictKind};
use lacuna_core::scalar::{int, rat};
use lacuna_core::tree::{split_number, ExhaustiveSplitTable};
use lacuna_core::{ParallelogramUnion, Rational, Scalar};
use lacuna_testkit::{
    all_sticky_maps, inclusion_exclusion, monte_carlo, random_members, random_polygon, random_tree, rng,
};

const TRIALS: usize = 256;
const SEED: u64 = 0;
const KNOWN_FAILURES: &[u32] = &[5];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn complete_input(max_k: usize) -> Vec<GeneratorSpec> {
    (1..=max_k).map(|k| GeneratorSpec::Slopes { k, j: (0..1u64 << k).collect() }).collect()
}

fn lacunary_input() -> Vec<GeneratorSpec> {
    let mut gens = vec![GeneratorSpec::Code { bits: "0".parse().unwrap() }];
    gens.extend((1..=8).map(|k| GeneratorSpec::Slopes { k, j: vec![1] }));
    gens
}

/// Best reports on complete direction trees at the minimal depth for each N.
fn best_reports(ns: &[usize]) -> Vec<KakeyaReport> {
    let max = *ns.iter().max().unwrap();
    let records: Vec<GeneratorRecord> = process_generators(&complete_input(max), DEFAULT_MAX_K).unwrap();
    ns.iter()
        .map(|&n| {
            let setup = prepare_kakeya(&records, n, max).unwrap();
            search_sigma(&setup.extended, TRIALS, SEED, Objective::MaxRatio).unwrap()
        })
        .collect()
}

fn split_oracle_equivalence() -> Outcome {
    let table = ExhaustiveSplitTable::new(4).unwrap();
    let trees = table.trees();
    let mismatches = trees.iter().filter(|t| split_number(t).unwrap() != table.profile(t).unwrap()).count();
    outcome(
        mismatches == 0,
        format!("{} subtrees of the height-4 tree, {mismatches} vertexwise mismatches", trees.len()),
    )
}

fn lacunarity_shape() -> Outcome {
    let mut worst = 0i64;
    let mut violations = 0;
    for seed in 0..1000u64 {
        let mut r = rng(seed);
        let keep = 0.35 + 0.5 * (seed % 11) as f64 / 10.0;
        let height = 1 + (seed % 12) as usize;
        let t = random_tree(&mut r, height, keep);
        let n = split_number(&t).unwrap().tree;
        let order = t.extend(12).unwrap().lacunarity_order().unwrap();
        worst = worst.max(order as i64 - n as i64);
        violations += (order > n + 1) as usize;
    }
    outcome(
        violations == 0,
        format!("1000 trees of height <= 12, {violations} violations, max order - split = {worst}"),
    )
}

fn lassak_predicates() -> Outcome {
    let mut failures = Vec::new();
    for seed in 0..50u64 {
        let s = random_polygon(&mut rng(seed), 16);
        let records = match process_generators(&[GeneratorSpec::Polygon { vertices: s.clone() }], DEFAULT_MAX_K) {
            Ok(r) => r,
            Err(e) => {
                failures.push(format!("seed {seed}: {e}"));
                continue;
            }
        };
        let g = records[0].geometry.as_ref().unwrap();
        let r = &g.rectangle;
        let p = g.parallelogram.to_polygon();
        let nr = &g.normalized_rectangle;
        let ok = contains_polygon(r, &s)
            && r.area() <= int(4) * s.area()
            && contains_translate_of_dilate(&s, r, &rat(1, 2)).unwrap().is_some()
            && contains_polygon(&p, nr)
            && p.area() <= int(ENCLOSURE_CONSTANT) * nr.area()
            && contains_translate_of_dilate(nr, &p, &rat(1, ENCLOSURE_CONSTANT)).unwrap().is_some()
            && g.verify().is_ok();
        if !ok {
            failures.push(format!("seed {seed}: predicate failed"));
        }
    }
    outcome(failures.is_empty(), format!("50 polygons, {} failures {:?}", failures.len(), failures))
}

fn quarter_bound(reports: &[KakeyaReport]) -> Outcome {
    let records = process_generators(&complete_input(6), DEFAULT_MAX_K).unwrap();
    let mut parts = Vec::new();
    let mut pass = true;
    for r in reports {
        let ext = prepare_kakeya(&records, r.n, 6).unwrap().extended;
        let k2 = r.set.restrict(&int(1), &int(2));
        // Rebuild every witness from scratch and re-evaluate its average.
        let rechecked = r.witnesses.iter().all(|w| {
            let fresh = quarter_witness(r, &ext, &w.point).unwrap();
            fresh == *w
                && maximal_lower_bound(&w.point, &k2, std::slice::from_ref(&w.dilate)).unwrap() == w.average
                && w.average >= rat(1, 4)
        });
        let ok = r.witnesses.len() >= 100 && rechecked && r.min_witness_average >= rat(1, 4);
        pass &= ok;
        parts.push(format!("N={} k={} points={} min={}", r.n, r.depth, r.witnesses.len(), r.min_witness_average));
    }
    outcome(pass, parts.join("; "))
}

fn growth(reports: &[KakeyaReport]) -> Outcome {
    let ratios: Vec<Rational> = reports.iter().map(|r| r.ratio.clone()).collect();
    let increasing = ratios.windows(2).all(|w| w[0] < w[1]);
    let mut agree = true;
    let mut notes = Vec::new();
    for r in reports.iter().filter(|r| r.depth <= 3) {
        let records = process_generators(&complete_input(r.depth), DEFAULT_MAX_K).unwrap();
        let ext = prepare_kakeya(&records, r.n, r.depth).unwrap().extended;
        let optimum = all_sticky_maps(&ext)
            .iter()
            .map(|s| {
                let (m1, m2) = slab_measures(&kakeya_set(s));
                m1 / m2
            })
            .max()
            .unwrap();
        agree &= optimum == r.ratio;
        notes.push(format!("k={} searched {} exhaustive {}", r.depth, r.ratio, optimum));
    }
    let c1 = reports.iter().map(|r| r.m1.approx() * r.n as f64 / (r.n as f64).log2()).fold(f64::INFINITY, f64::min);
    let c2 = reports.iter().map(|r| r.m2.approx() * r.n as f64).fold(0.0, f64::max);
    let shown: Vec<String> = reports.iter().map(|r| format!("N={}:{:.4}", r.n, r.ratio.approx())).collect();
    outcome(
        increasing && agree && c1 > 0.0 && c2.is_finite(),
        format!(
            "ratios {} strictly increasing={increasing}; {}; c1={c1:.4} c2={c2:.4}",
            shown.join(" "),
            notes.join(", ")
        ),
    )
}

fn measure_engine() -> Outcome {
    let (lo, hi) = (int(0), int(2));
    let mut exact_fail = 0;
    for seed in 0..200u64 {
        let ms = random_members(&mut rng(seed), 2 + (seed % 2) as usize);
        let sweep = union_measure(&ParallelogramUnion::new(ms.clone()), &lo, &hi);
        exact_fail += (sweep != inclusion_exclusion(&ms, &lo, &hi)) as usize;
    }
    let mut worst = 0.0f64;
    let mut mc_fail = 0;
    for seed in 0..20u64 {
        let ms = random_members(&mut rng(1000 + seed), 8 + (seed % 5) as usize);
        let exact = union_measure(&ParallelogramUnion::new(ms.clone()), &lo, &hi).approx();
        let mc = monte_carlo(&ms, 0.0, 2.0, 1_000_000, seed);
        let z = (mc.estimate - exact).abs() / mc.sigma;
        worst = worst.max(z);
        mc_fail += (z > 3.0) as usize;
    }
    outcome(
        exact_fail == 0 && mc_fail == 0,
        format!("200 exact instances, {exact_fail} mismatches; 20 sampled instances, {mc_fail} beyond 3 sigma, max |z| = {worst:.2}"),
    )
}

fn classifier_smoke() -> Outcome {
    let opts = ClassifyOptions::default();
    let single = classify(&[GeneratorSpec::Code { bits: "0".parse().unwrap() }], &opts).unwrap();
    let single_ok = single.kind == VerdictKind::BoundedCertificate && single.order == Some(1);
    let lac = classify(&lacunary_input(), &opts).unwrap();
    let lac_ok = lac.kind == VerdictKind::BoundedCertificate
        && lac.order == Some(2)
        && lac.split_by_depth.iter().map(|d| d.depth).eq(1..=8)
        && lac.split_by_depth.iter().all(|d| d.split == 1);
    let full = classify(&complete_input(6), &ClassifyOptions { depths: (1..=6).collect(), ..opts }).unwrap();
    let full_ok = full.kind == VerdictKind::UnboundedEvidence && !full.kakeya.is_empty();
    outcome(
        single_ok && lac_ok && full_ok,
        format!(
            "single: {:?} order {:?}; lacunary: {:?} order {:?}; complete: {:?} with {} reports",
            single.kind,
            single.order,
            lac.kind,
            lac.order,
            full.kind,
            full.kakeya.len()
        ),
    )
}

fn lacuna(cwd: &Path, args: &[&str], workers: &str) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_lacuna"))
        .current_dir(cwd)
        .args(args)
        .args(["--workers", workers])
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(())
    } else {
        Err(format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)))
    }
}

fn files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out: Vec<(String, Vec<u8>)> = walk(dir)
        .into_iter()
        .map(|p| (p.strip_prefix(dir).unwrap().display().to_string(), std::fs::read(&p).unwrap()))
        .collect();
    out.sort();
    out
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut all = Vec::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        if p.is_dir() {
            all.extend(walk(&p));
        } else {
            all.push(p);
        }
    }
    all
}

fn determinism() -> Outcome {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let d = |name: &str| data.join(name).display().to_string();
    // Relative output paths, so each run sees the same configuration.
    let run_all = |dir: &Path, workers: &str| -> Result<(), String> {
        let o = |name: &str| name.to_string();
        let lacuna = |args: &[&str], workers: &str| lacuna(dir, args, workers);
        lacuna(&["analyze", &d("mixed.json"), "-o", &o("analyze.json"), "--svg", &o("analyze.svg")], workers)?;
        lacuna(
            &["kakeya", &d("complete.json"), "--N", "4", "-o", &o("kakeya.json"), "--svg", &o("kakeya.svg")],
            workers,
        )?;
        lacuna(&["measure", &d("strips.json"), "-o", &o("measure.json")], workers)?;
        lacuna(&["maximal", &d("complete.json"), "--N", "3", "-o", &o("maximal.json")], workers)?;
        lacuna(
            &[
                "classify",
                &d("complete.json"),
                "--depths",
                "1,2,3,4,5",
                "-o",
                &o("classify.json"),
                "--svg",
                &o("classify"),
            ],
            workers,
        )?;
        lacuna(&["classify", &d("lacunary.json"), "-o", &o("lacunary.json")], workers)?;
        lacuna(&["render", &d("tree.json"), "-o", &o("tree.svg")], workers)?;
        Ok(())
    };
    let dirs: Vec<tempfile::TempDir> = (0..3).map(|_| tempfile::tempdir().unwrap()).collect();
    for (dir, workers) in dirs.iter().zip(["1", "1", "4"]) {
        if let Err(e) = run_all(dir.path(), workers) {
            return outcome(false, e);
        }
    }
    let (a, b) = (files(dirs[0].path()), files(dirs[1].path()));
    let identical = a == b;
    // Across worker counts only the embedded config may differ.
    let strip = |bytes: &[u8]| -> Option<serde_json::Value> {
        let mut v: serde_json::Value = serde_json::from_slice(bytes).ok()?;
        v.as_object_mut()?.remove("config");
        Some(v)
    };
    let c = files(dirs[2].path());
    let cross = a.len() == c.len()
        && a.iter().zip(&c).all(|((na, ba), (nc, bc))| {
            na == nc && if na.ends_with(".json") { strip(ba) == strip(bc) } else { ba == bc }
        });
    outcome(
        identical && cross,
        format!(
            "{} artifacts from 7 commands, byte-identical on rerun: {identical}; same results with 4 workers: {cross}",
            a.len()
        ),
    )
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(u32, &str, Outcome, f64)> = Vec::new();
    let mut timed = |id: u32, name: &'static str, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        let secs = t.elapsed().as_secs_f64();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id} [{tag}] {name}: {} ({secs:.1}s)", o.detail);
        results.push((id, name, o, secs));
    };
    timed(1, "split oracle equivalence", &split_oracle_equivalence);
    timed(2, "lacunarity order bounded by split + 1", &lacunarity_shape);
    timed(3, "Lassak and enclosure predicates", &lassak_predicates);
    let reports = best_reports(&[2, 3, 4, 5, 6]);
    timed(4, "quarter bound at sampled K1 points", &|| quarter_bound(&reports));
    timed(5, "growth experiment", &|| growth(&reports));
    timed(6, "measure engine", &measure_engine);
    timed(7, "classifier smoke", &classifier_smoke);
    timed(8, "determinism", &determinism);

    // Informational: best ratios at N = 2, 4, 8.
    let t = Instant::now();
    let extra = best_reports(&[2, 4, 8]);
    let shown: Vec<String> = extra.iter().map(|r| format!("N={}:{:.4}", r.n, r.ratio.approx())).collect();
    let nondecreasing = extra.windows(2).all(|w| w[0].ratio <= w[1].ratio);
    println!(
        "info: best ratios {} non-decreasing={nondecreasing} ({:.1}s)",
        shown.join(" "),
        t.elapsed().as_secs_f64()
    );

    let mut unexpected = 0;
    for (id, name, o, _) in &results {
        let known = KNOWN_FAILURES.contains(id);
        if o.pass == known {
            unexpected += 1;
            let what = if known { "passed but is listed as a known failure" } else { "failed" };
            println!("unexpected: criterion {id} ({name}) {what}");
        }
    }
    let passed = results.iter().filter(|r| r.2.pass).count();
    println!(
        "acceptance: {passed}/{} criteria passed, known failures {:?}, {unexpected} unexpected ({:.1}s)",
        results.len(),
        KNOWN_FAILURES,
        start.elapsed().as_secs_f64()
    );
    if unexpected > 0 {
        std::process::exit(1);
    }
}
