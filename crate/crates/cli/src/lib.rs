//! Orchestration behind the `lacuna` binary: input parsing with field-level
//! diagnostics, the worker pool, versioned JSON reports and SVG files.

pub mod render;

use std::path::{Path, PathBuf};

use lacuna_core::basis::{direction_trees, process_generators, BasisInput, GeneratorRecord, Symmetry, DEFAULT_MAX_K};
use lacuna_core::geometry::{union_measure, VParallelogram};
use lacuna_core::kakeya::{prepare_kakeya, search_sigma, ExtendedTree, KakeyaReport, Objective, DEFAULT_TRIALS};
use lacuna_core::maximal::{
    classify_records, default_p_grid, directions_of, weak_level_set, ClassifyOptions, DichotomyVerdict, LevelSetBound,
};
use lacuna_core::tree::{split_number, DyadicTree, SplitProfile};
use lacuna_core::{scalar, ParallelogramUnion, Rational};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub use render::{render_kakeya, render_scene, render_tree, Scene};

pub const SCHEMA_VERSION: u32 = 1;
/// Worker count override read when `--workers` is absent.
pub const WORKERS_ENV: &str = "LACUNA_WORKERS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Verification(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
            CliError::Io { .. } => 2,
        }
    }
}

impl From<lacuna_core::Error> for CliError {
    fn from(e: lacuna_core::Error) -> Self {
        if e.is_input_error() {
            CliError::Input(e.to_string())
        } else {
            CliError::Verification(e.to_string())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "camelCase")]
pub enum Command {
    Analyze,
    Kakeya,
    Measure,
    Maximal,
    Classify,
    Render,
}

/// Everything a run depends on. Embedded in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunConfig {
    pub command: Command,
    pub input_path: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    /// SVG file, or directory for `classify`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg_path: Option<PathBuf>,
    /// Overrides the input's depth.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    /// Depths for `classify`; defaults to `1..=depth`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depths: Option<Vec<usize>>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    #[serde(with = "rational_strings")]
    pub p_grid: Vec<Rational>,
    pub max_k: usize,
    pub objective: Objective,
    pub worker_count: usize,
}

impl RunConfig {
    pub fn new(command: Command, input_path: impl Into<PathBuf>) -> Self {
        RunConfig {
            command,
            input_path: input_path.into(),
            output_path: None,
            svg_path: None,
            depth: None,
            depths: None,
            n: None,
            trials: DEFAULT_TRIALS,
            seed: 0,
            p_grid: default_p_grid(),
            max_k: DEFAULT_MAX_K,
            objective: Objective::MaxRatio,
            worker_count: 1,
        }
    }
}

/// Worker count: the flag, else `LACUNA_WORKERS`, else the core count.
pub fn resolve_workers(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(n) = flag {
        return positive_workers(n);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(raw) => {
            let n =
                raw.trim().parse().map_err(|_| CliError::Input(format!("{WORKERS_ENV}: `{raw}` is not a count")))?;
            positive_workers(n)
        }
        Err(_) => Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)),
    }
}

fn positive_workers(n: usize) -> Result<usize, CliError> {
    if n == 0 {
        return Err(CliError::Input("worker count must be at least 1".into()));
    }
    Ok(n)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct Envelope<'a, I: Serialize, R: Serialize> {
    schema_version: u32,
    config: &'a RunConfig,
    input: &'a I,
    result: R,
}

/// Input for `measure`: parallelograms and an optional x-range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MeasureInput {
    pub members: Vec<VParallelogram<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "optional_range")]
    pub range: Option<(Rational, Rational)>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MeasureResult {
    #[serde(with = "scalar::text")]
    pub lo: Rational,
    #[serde(with = "scalar::text")]
    pub hi: Rational,
    #[serde(with = "scalar::text")]
    pub measure: Rational,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassAnalysis {
    pub symmetry_class: Symmetry,
    pub tree: DyadicTree,
    pub split: SplitProfile,
    /// Order of the tree zero-extended to the analysis depth.
    pub lacunarity_order: usize,
    #[serde(with = "rational_strings")]
    pub directions: Vec<Rational>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalyzeResult {
    pub depth: usize,
    pub generators: Vec<GeneratorRecord>,
    pub classes: Vec<ClassAnalysis>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KakeyaResult {
    pub symmetry_class: Symmetry,
    pub extended: ExtendedTree,
    pub report: KakeyaReport,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MaximalResult {
    #[serde(rename = "N")]
    pub n: usize,
    pub symmetry_class: Symmetry,
    pub depth: usize,
    pub seed: u64,
    #[serde(with = "scalar::text")]
    pub m1: Rational,
    #[serde(with = "scalar::text")]
    pub m2: Rational,
    pub witness_count: usize,
    #[serde(with = "scalar::text")]
    pub min_witness_average: Rational,
    pub level_set: LevelSetBound,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassifyResult {
    pub verdict: DichotomyVerdict,
    /// SVG files written next to each other, relative to the SVG directory.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub renderings: Vec<String>,
}

/// Outputs of a run, already serialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifacts {
    /// The JSON report, or the SVG itself for `render`.
    pub output: String,
    /// `(path, contents)` for every SVG written.
    pub svgs: Vec<(PathBuf, String)>,
}

/// Runs `config` on a dedicated pool and writes its outputs. The main output
/// goes to `output_path`, or is returned for the caller to print.
pub fn run(config: &RunConfig) -> Result<Artifacts, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.worker_count.max(1))
        .build()
        .map_err(|e| CliError::Verification(format!("cannot start workers: {e}")))?;
    let artifacts = pool.install(|| execute(config))?;
    if let Some(path) = &config.output_path {
        write_file(path, &artifacts.output)?;
    }
    for (path, svg) in &artifacts.svgs {
        write_file(path, svg)?;
    }
    Ok(artifacts)
}

/// Computes the artifacts of `config` without touching the output paths.
pub fn execute(config: &RunConfig) -> Result<Artifacts, CliError> {
    if config.trials == 0 {
        return Err(CliError::Input("trials must be at least 1".into()));
    }
    let text = std::fs::read_to_string(&config.input_path)
        .map_err(|source| CliError::Io { path: config.input_path.clone(), source })?;
    let mut svgs = Vec::new();
    let output = match config.command {
        Command::Measure => {
            let input: MeasureInput = parse_json(&text)?;
            report(config, &input, measure(&input)?)?
        }
        Command::Render => {
            let scene: Scene = parse_json(&text)?;
            render_scene(&scene)?
        }
        command => {
            let input: BasisInput = parse_json(&text)?;
            if input.generators.is_empty() {
                return Err(CliError::Input("generators: at least one generator is required".into()));
            }
            let depth = config.depth.unwrap_or(input.depth);
            let records = process_generators(&input.generators, config.max_k)?;
            match command {
                Command::Analyze => {
                    let result = analyze(records, depth)?;
                    if let Some(path) = &config.svg_path {
                        let widest = result.classes.iter().max_by_key(|c| c.split.tree).expect("at least one class");
                        svgs.push((path.clone(), render_tree(&widest.tree)?));
                    }
                    report(config, &input, result)?
                }
                Command::Kakeya => {
                    let result = kakeya(config, &records, depth)?;
                    if let Some(path) = &config.svg_path {
                        svgs.push((path.clone(), render_kakeya(&result.report)));
                    }
                    report(config, &input, result)?
                }
                Command::Maximal => {
                    let k = kakeya(config, &records, depth)?;
                    let level_set = weak_level_set(&k.report, &config.p_grid)?;
                    let r = k.report;
                    let result = MaximalResult {
                        n: r.n,
                        symmetry_class: k.symmetry_class,
                        depth: r.depth,
                        seed: r.search.as_ref().map(|s| s.seed).unwrap_or(config.seed),
                        m1: r.m1,
                        m2: r.m2,
                        witness_count: r.witnesses.len(),
                        min_witness_average: r.min_witness_average,
                        level_set,
                    };
                    report(config, &input, result)?
                }
                Command::Classify => {
                    let depths = config.depths.clone().unwrap_or_else(|| (1..=depth).collect());
                    let options = ClassifyOptions {
                        depths,
                        trials: config.trials,
                        seed: config.seed,
                        max_k: config.max_k,
                        objective: config.objective,
                        p_grid: config.p_grid.clone(),
                        ..ClassifyOptions::default()
                    };
                    let verdict = classify_records(&records, &options)?;
                    let mut renderings = Vec::new();
                    if let Some(dir) = &config.svg_path {
                        let max_depth = *options.depths.last().expect("validated nonempty");
                        for dt in direction_trees(&records, max_depth)? {
                            let name = format!("tree-{}.svg", dt.symmetry_class.name());
                            svgs.push((dir.join(&name), render_tree(&dt.tree)?));
                            renderings.push(name);
                        }
                        for e in &verdict.kakeya {
                            let name = format!("kakeya-N{}.svg", e.n);
                            svgs.push((dir.join(&name), render_kakeya(&e.report)));
                            renderings.push(name);
                        }
                    }
                    report(config, &input, ClassifyResult { verdict, renderings })?
                }
                Command::Measure | Command::Render => unreachable!("handled above"),
            }
        }
    };
    Ok(Artifacts { output, svgs })
}

fn analyze(generators: Vec<GeneratorRecord>, depth: usize) -> Result<AnalyzeResult, CliError> {
    let classes = direction_trees(&generators, depth)?
        .into_iter()
        .map(|dt| {
            Ok(ClassAnalysis {
                symmetry_class: dt.symmetry_class,
                split: split_number(&dt.tree)?,
                lacunarity_order: dt.tree.extend(depth)?.lacunarity_order()?,
                directions: directions_of(&dt.tree)?.slopes,
                tree: dt.tree,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(AnalyzeResult { depth, generators, classes })
}

fn kakeya(config: &RunConfig, records: &[GeneratorRecord], depth: usize) -> Result<KakeyaResult, CliError> {
    let n = config.n.ok_or_else(|| CliError::Input("--N is required for this command".into()))?;
    let setup = prepare_kakeya(records, n, depth)?;
    let report = search_sigma(&setup.extended, config.trials, config.seed, config.objective)?;
    report.verify_measures()?;
    Ok(KakeyaResult { symmetry_class: setup.symmetry_class, extended: setup.extended, report })
}

fn measure(input: &MeasureInput) -> Result<MeasureResult, CliError> {
    for (i, m) in input.members.iter().enumerate() {
        m.validate().map_err(|e| CliError::Input(format!("members[{i}]: {e}")))?;
    }
    let (lo, hi) = match &input.range {
        Some((lo, hi)) if lo <= hi => (lo.clone(), hi.clone()),
        Some(_) => return Err(CliError::Input("range: lower end exceeds upper end".into())),
        None => {
            let lo = input.members.iter().map(|m| m.x0.clone()).min().unwrap_or_default();
            let hi = input.members.iter().map(|m| m.x1.clone()).max().unwrap_or_default();
            (lo, hi)
        }
    };
    let set = ParallelogramUnion::new(input.members.clone());
    let measure = union_measure(&set, &lo, &hi);
    Ok(MeasureResult { lo, hi, measure })
}

fn report<I: Serialize, R: Serialize>(config: &RunConfig, input: &I, result: R) -> Result<String, CliError> {
    let envelope = Envelope { schema_version: SCHEMA_VERSION, config, input, result };
    let mut json = serde_json::to_string_pretty(&envelope).map_err(|e| CliError::Verification(e.to_string()))?;
    json.push('\n');
    Ok(json)
}

/// Parses JSON, naming the offending field and position on failure.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let field = if path == "." { "input".to_string() } else { path };
        CliError::Input(format!("{field}: {inner}"))
    })?;
    Ok(value)
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.to_path_buf(), source })?;
    }
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

mod rational_strings {
    use lacuna_core::{Rational, Scalar};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        values.iter().map(|v| v.to_text()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter().map(|t| Rational::parse_text(t).map_err(serde::de::Error::custom)).collect()
    }
}

mod optional_range {
    use lacuna_core::{Rational, Scalar};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(range: &Option<(Rational, Rational)>, s: S) -> Result<S::Ok, S::Error> {
        range.as_ref().map(|(lo, hi)| [lo.to_text(), hi.to_text()]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<(Rational, Rational)>, D::Error> {
        let raw: Option<[String; 2]> = Option::deserialize(d)?;
        raw.map(|[lo, hi]| {
            let parse = |t: &str| Rational::parse_text(t).map_err(serde::de::Error::custom);
            Ok((parse(&lo)?, parse(&hi)?))
        })
        .transpose()
    }
}
