use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

use hdsel::{
    check_tp_transitivity, class_approximations, compute_stats, cross_class_pairs, decompose,
    default_delta_grid, delta_sweep, dependency, evaluate_subset, gaussian_relation, load_dataset,
    lower_relation, parse_schema, upper_relation, AttributeStat, BlackHoleParams, BuildOptions,
    EvalConfig, EvaluationReport, ExactParams, FeatureMask, FuzzyRelationMatrix,
    HybridInformationSystem, ModelMode, RelationKind, SelectionProblem, SolveResult, SolverConfig,
    SquareMatrix, SweepPoint,
};

use crate::args::{DataArgs, DistancesArgs, EvaluateArgs, Mode, RelationArgs, SelectArgs, Solver};
use crate::report::{emit, is_csv, render_csv, write_file, CsvBlock, Report};
use crate::UsageError;

fn required<'a>(value: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path> {
    value
        .as_deref()
        .ok_or_else(|| UsageError(format!("--{flag} is required")).into())
}

fn load(data: &DataArgs) -> Result<HybridInformationSystem> {
    let schema_path = required(&data.schema, "schema")?;
    let data_path = required(&data.data, "data")?;
    let schema_text = std::fs::read_to_string(schema_path)
        .with_context(|| format!("cannot read schema {}", schema_path.display()))?;
    let schema = parse_schema(&schema_text)
        .with_context(|| format!("invalid schema {}", schema_path.display()))?;
    let file = std::fs::File::open(data_path)
        .with_context(|| format!("cannot read data {}", data_path.display()))?;
    let his = load_dataset(file, &schema)
        .with_context(|| format!("invalid data {}", data_path.display()))?;
    Ok(his)
}

fn display(path: &Option<PathBuf>) -> Option<String> {
    path.as_ref().map(|p| p.display().to_string())
}

// ---- distances ----

#[derive(Serialize)]
struct DistancesConfig {
    schema: Option<String>,
    data: Option<String>,
    decompose: bool,
}

#[derive(Serialize)]
struct AttributeInfo {
    name: String,
    kind: String,
    #[serde(flatten)]
    stat: AttributeStat,
}

#[derive(Serialize)]
struct PairRow {
    pair: [usize; 2],
    squared: Vec<f64>,
}

#[derive(Serialize)]
struct DistancesResult {
    objects: usize,
    attributes: Vec<AttributeInfo>,
    hd: SquareMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    decomposition: Option<Vec<PairRow>>,
}

pub fn distances(args: &DistancesArgs) -> Result<()> {
    let started = Instant::now();
    let his = load(&args.data)?;
    let stats = compute_stats(&his);
    let pairs = if args.decompose {
        cross_class_pairs(his.partition())
    } else {
        Vec::new()
    };
    let dec = decompose(&his, &stats, &pairs)?;
    let decomposition = args.decompose.then(|| {
        (0..dec.pairs().len())
            .map(|idx| PairRow {
                pair: [dec.pairs()[idx].0 + 1, dec.pairs()[idx].1 + 1],
                squared: dec.row(idx).to_vec(),
            })
            .collect::<Vec<_>>()
    });

    if is_csv(&args.output) {
        let mut blocks = vec![CsvBlock::matrix("hd", dec.hd())];
        if let Some(rows) = &decomposition {
            let mut header = vec!["i".to_string(), "j".to_string()];
            header.extend(his.attributes().iter().map(|a| a.name.clone()));
            blocks.push(CsvBlock {
                name: "decomposition".into(),
                header: Some(header),
                rows: rows
                    .iter()
                    .map(|r| {
                        let mut row = vec![r.pair[0] as f64, r.pair[1] as f64];
                        row.extend(&r.squared);
                        row
                    })
                    .collect(),
            });
        }
        return emit(&args.output, &render_csv(&blocks)?);
    }

    let result = DistancesResult {
        objects: his.n_objects(),
        attributes: his
            .attributes()
            .iter()
            .zip(stats.iter())
            .map(|(a, s)| AttributeInfo {
                name: a.name.clone(),
                kind: a.kind.tag().to_string(),
                stat: *s,
            })
            .collect(),
        hd: dec.hd().clone(),
        decomposition,
    };
    let config = DistancesConfig {
        schema: display(&args.data.schema),
        data: display(&args.data.data),
        decompose: args.decompose,
    };
    let report = Report::new("distances", config, result, Vec::new(), started);
    emit(&args.output, &report.to_json()?)
}

// ---- relation ----

#[derive(Serialize)]
struct RelationConfig {
    schema: Option<String>,
    data: Option<String>,
    matrix: Option<String>,
    sigma: Option<f64>,
    upper: bool,
    lower: bool,
    approximations: bool,
    check_transitivity: bool,
}

#[derive(Serialize)]
struct Approximations {
    classes: Vec<String>,
    lower: Vec<Vec<f64>>,
    upper: Vec<Vec<f64>>,
    positive_region: Vec<f64>,
    dependency: f64,
}

#[derive(Serialize)]
struct Transitivity {
    passed: bool,
    /// 1-based `(x, y, z)` with the largest `R(x,y)·R(y,z) - R(x,z)`.
    worst: Option<[usize; 3]>,
    excess: Option<f64>,
}

#[derive(Serialize)]
struct RelationResult {
    kernel: SquareMatrix,
    #[serde(skip_serializing_if = "Option::is_none")]
    upper: Option<SquareMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lower: Option<SquareMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    transitivity: Option<Transitivity>,
    #[serde(skip_serializing_if = "Option::is_none")]
    approximations: Option<Approximations>,
}

fn read_matrix(path: &Path) -> Result<FuzzyRelationMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)
        .with_context(|| format!("cannot read matrix {}", path.display()))?;
    let mut rows = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record.with_context(|| format!("invalid matrix {}", path.display()))?;
        let row = record
            .iter()
            .map(|cell| {
                cell.parse::<f64>().map_err(|_| {
                    hdsel::Error::Dataset(format!("matrix row {}: `{cell}` is not a number", r + 1))
                })
            })
            .collect::<std::result::Result<Vec<f64>, _>>()?;
        rows.push(row);
    }
    let m = SquareMatrix::from_rows(rows)
        .map_err(|e| hdsel::Error::Dataset(e.to_string()))
        .with_context(|| format!("invalid matrix {}", path.display()))?;
    Ok(FuzzyRelationMatrix::from_matrix(m, RelationKind::Kernel)
        .map_err(|e| hdsel::Error::Dataset(e.to_string()))?)
}

pub fn relation(args: &RelationArgs) -> Result<()> {
    let started = Instant::now();
    let needs_data = args.matrix.is_none() || args.approximations;
    let his = if needs_data || args.data.data.is_some() {
        Some(load(&args.data)?)
    } else {
        None
    };
    let sigma = args.kernel.sigma();
    let kernel = match &args.matrix {
        Some(path) => {
            let r = read_matrix(path)?;
            if let Some(his) = &his {
                if his.n_objects() != r.n() {
                    return Err(hdsel::Error::Dataset(format!(
                        "matrix is {0}x{0} but the data has {1} objects",
                        r.n(),
                        his.n_objects()
                    ))
                    .into());
                }
            }
            r
        }
        None => {
            let his = his.as_ref().expect("loaded above");
            gaussian_relation(&hd_of(his), sigma)?
        }
    };

    let upper = args.upper.then(|| upper_relation(&kernel));
    let lower = args.lower.then(|| lower_relation(&kernel));
    let transitivity = args.check_transitivity.then(|| {
        let t = check_tp_transitivity(&kernel, 1e-12);
        Transitivity {
            passed: t.passed,
            worst: t.worst.map(|w| [w.x + 1, w.y + 1, w.z + 1]),
            excess: t.worst.map(|w| w.excess),
        }
    });
    let approximations = if args.approximations {
        let his = his.as_ref().expect("loaded above");
        let approx = class_approximations(&kernel, his.partition())?;
        Some(Approximations {
            classes: his.partition().labels().to_vec(),
            positive_region: approx.positive_region(),
            dependency: dependency(&approx),
            lower: approx.lower,
            upper: approx.upper,
        })
    } else {
        None
    };

    if is_csv(&args.output) {
        let mut blocks = vec![CsvBlock::matrix("kernel", kernel.matrix())];
        if let Some(u) = &upper {
            blocks.push(CsvBlock::matrix("upper", u.matrix()));
        }
        if let Some(l) = &lower {
            blocks.push(CsvBlock::matrix("lower", l.matrix()));
        }
        if let Some(a) = &approximations {
            for (name, rows) in [("class_lower", &a.lower), ("class_upper", &a.upper)] {
                blocks.push(CsvBlock {
                    name: name.into(),
                    header: None,
                    rows: rows.clone(),
                });
            }
        }
        return emit(&args.output, &render_csv(&blocks)?);
    }

    let config = RelationConfig {
        schema: display(&args.data.schema),
        data: display(&args.data.data),
        matrix: display(&args.matrix),
        sigma: args.matrix.is_none().then_some(sigma),
        upper: args.upper,
        lower: args.lower,
        approximations: args.approximations,
        check_transitivity: args.check_transitivity,
    };
    let result = RelationResult {
        kernel: kernel.matrix().clone(),
        upper: upper.map(|u| u.matrix().clone()),
        lower: lower.map(|l| l.matrix().clone()),
        transitivity,
        approximations,
    };
    let report = Report::new("relation", config, result, Vec::new(), started);
    emit(&args.output, &report.to_json()?)
}

fn hd_of(his: &HybridInformationSystem) -> SquareMatrix {
    hdsel::hd_matrix(his, &compute_stats(his))
}

// ---- select ----

#[derive(Serialize)]
struct SelectConfig {
    schema: Option<String>,
    data: Option<String>,
    sigma: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid: Option<Vec<f64>>,
    mode: Mode,
    solver: Solver,
    seed: u64,
    pop: usize,
    iters: usize,
    threshold: f64,
    node_limit: u64,
    prune: bool,
}

#[derive(Serialize)]
struct ModelSummary {
    delta: f64,
    theta: Option<f64>,
    rows: usize,
    degenerate: bool,
}

#[derive(Serialize)]
struct SingleSelect {
    model: ModelSummary,
    result: SolveResult,
}

#[derive(Serialize)]
struct BestPoint {
    delta: f64,
    objective: usize,
    features: Vec<usize>,
}

#[derive(Serialize)]
struct SweepSelect {
    sweep: Vec<SweepPoint>,
    best: Option<BestPoint>,
}

fn degenerate_warning(delta: f64) -> Option<String> {
    if delta == 0.0 {
        Some("delta 0: no pair is that dissimilar, the model has no constraints".into())
    } else if delta == 1.0 {
        Some("delta 1: theta is 0, every subset is feasible".into())
    } else {
        None
    }
}

pub fn select(args: &SelectArgs) -> Result<()> {
    let started = Instant::now();
    if is_csv(&args.output) {
        return Err(UsageError("select reports are JSON only; CSV covers matrices".into()).into());
    }
    let his = load(&args.data)?;
    let sigma = args.kernel.sigma();
    let mode = match args.mode {
        Mode::Normal => ModelMode::Normal,
        Mode::Optimistic => ModelMode::Optimistic,
    };
    let solver = match args.solver {
        Solver::Exact => SolverConfig::Exact(ExactParams {
            node_limit: args.node_limit,
        }),
        Solver::Greedy => SolverConfig::Greedy,
        Solver::Blackhole => SolverConfig::Blackhole(BlackHoleParams {
            population: args.pop,
            max_iterations: args.iters,
            seed: args.seed,
            binarization_threshold: args.threshold,
        }),
    };
    let options = BuildOptions {
        prune_dominated: args.prune,
    };
    let problem = SelectionProblem::new(&his)?;
    let grid = args
        .sweep
        .then(|| args.grid.clone().unwrap_or_else(default_delta_grid));
    let config = SelectConfig {
        schema: display(&args.data.schema),
        data: display(&args.data.data),
        sigma,
        delta: args.delta,
        grid: grid.clone(),
        mode: args.mode,
        solver: args.solver,
        seed: args.seed,
        pop: args.pop,
        iters: args.iters,
        threshold: args.threshold,
        node_limit: args.node_limit,
        prune: args.prune,
    };

    let mut warnings = Vec::new();
    let text = match (args.delta, grid) {
        (Some(delta), _) => {
            let model = problem.build(delta, sigma, mode, options)?;
            if let Some(path) = &args.dump_model {
                write_file(path, &(model.to_json() + "\n"))?;
            }
            let result = solver.solve(&model)?;
            warnings.extend(degenerate_warning(delta));
            if !result.feasible {
                warnings.push("no feasible subset was found".into());
            }
            let payload = SingleSelect {
                model: ModelSummary {
                    delta,
                    theta: model.theta().is_finite().then_some(model.theta()),
                    rows: model.rows().len(),
                    degenerate: model.is_degenerate(),
                },
                result,
            };
            Report::new("select", config, payload, warnings, started).to_json()?
        }
        (None, Some(grid)) => {
            let sweep = delta_sweep(&problem, &grid, sigma, mode, &solver, options)?;
            for pt in &sweep.points {
                warnings.extend(degenerate_warning(pt.delta));
                if !pt.result.feasible {
                    warnings.push(format!("delta {}: no feasible subset was found", pt.delta));
                }
            }
            let best = sweep.best_point().map(|pt| BestPoint {
                delta: pt.delta,
                objective: pt.result.objective,
                features: pt.result.mask.one_based(),
            });
            let payload = SweepSelect {
                sweep: sweep.points,
                best,
            };
            Report::new("select", config, payload, warnings, started).to_json()?
        }
        (None, None) => unreachable!("clap requires --delta or --sweep"),
    };
    emit(&args.output, &text)
}

// ---- evaluate ----

#[derive(Serialize)]
struct EvaluateConfig {
    schema: Option<String>,
    data: Option<String>,
    features: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    from_select: Option<String>,
    folds: usize,
    knn_k: usize,
    seed: u64,
    positive: Option<String>,
}

#[derive(Serialize)]
struct EvaluateResult {
    features: Vec<usize>,
    #[serde(flatten)]
    report: EvaluationReport,
}

/// 1-based features of a `select` report: the single result, or the best
/// point of a sweep.
fn features_from_select(path: &Path) -> Result<Vec<usize>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read select report {}", path.display()))?;
    let doc: Value = serde_json::from_str(&text)
        .with_context(|| format!("invalid select report {}", path.display()))?;
    let result = &doc["result"];
    let features = if result.get("result").is_some() {
        &result["result"]["features"]
    } else if result.get("best").is_some() {
        &result["best"]["features"]
    } else {
        &Value::Null
    };
    let features: Vec<usize> = serde_json::from_value(features.clone()).map_err(|_| {
        hdsel::Error::Dataset(format!(
            "{} holds no selected features (not a select report, or a sweep without a best point)",
            path.display()
        ))
    })?;
    Ok(features)
}

pub fn evaluate(args: &EvaluateArgs) -> Result<()> {
    let started = Instant::now();
    if is_csv(&args.output) {
        return Err(
            UsageError("evaluate reports are JSON only; CSV covers matrices".into()).into(),
        );
    }
    let his = load(&args.data)?;
    let features = match (&args.mask, &args.from_select) {
        (Some(mask), _) => mask.clone(),
        (None, Some(path)) => features_from_select(path)?,
        (None, None) => unreachable!("clap requires --mask or --from-select"),
    };
    let mask = FeatureMask::from_one_based(his.n_attributes(), &features)
        .map_err(|e| UsageError(e.to_string()))?;
    let eval_config = EvalConfig {
        folds: args.folds,
        knn_k: args.knn_k,
        seed: args.seed,
        positive: args.positive.clone(),
        stratified: true,
    };
    let report = evaluate_subset(&his, &mask, &eval_config)?;
    let config = EvaluateConfig {
        schema: display(&args.data.schema),
        data: display(&args.data.data),
        features: mask.one_based(),
        from_select: display(&args.from_select),
        folds: args.folds,
        knn_k: args.knn_k,
        seed: args.seed,
        positive: args.positive.clone(),
    };
    let result = EvaluateResult {
        features: mask.one_based(),
        report,
    };
    let report = Report::new("evaluate", config, result, Vec::new(), started);
    emit(&args.output, &report.to_json()?)
}
