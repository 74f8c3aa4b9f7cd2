use std::path::PathBuf;

use hdsel::{
    delta_sweep, evaluate_subset, load_dataset, parse_schema, BuildOptions, EvalConfig,
    ExactParams, FeatureMask, ModelMode, SelectionModel, SelectionProblem, SolverConfig,
};

fn flu() -> hdsel::HybridInformationSystem {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/flu");
    let schema = parse_schema(&std::fs::read_to_string(dir.join("schema.json")).unwrap()).unwrap();
    load_dataset(std::fs::File::open(dir.join("flu.csv")).unwrap(), &schema).unwrap()
}

#[test]
fn flu_end_to_end() {
    let his = flu();
    let problem = SelectionProblem::new(&his).unwrap();
    let sigma = 0.4f64.sqrt();
    let model = problem
        .build(0.85, sigma, ModelMode::Normal, BuildOptions::default())
        .unwrap();
    let result = SolverConfig::Exact(ExactParams::default())
        .solve(&model)
        .unwrap();
    assert!(result.feasible && result.proven_optimal);
    assert_eq!(result.mask.one_based(), vec![3, 4]);

    // the dumped model solves to the same answer
    let reloaded = SelectionModel::from_json(&model.to_json()).unwrap();
    assert_eq!(reloaded.violations(&result.mask), 0);

    let report = evaluate_subset(
        &his,
        &result.mask,
        &EvalConfig {
            folds: 3,
            ..EvalConfig::default()
        },
    )
    .unwrap();
    assert_eq!(report.per_fold.len(), 3);
    assert!(report.metrics.accuracy.is_some());
}

#[test]
fn sweep_solvers_agree_on_feasibility() {
    let his = flu();
    let problem = SelectionProblem::new(&his).unwrap();
    let grid = [0.2, 0.5, 0.85];
    let exact = delta_sweep(
        &problem,
        &grid,
        0.3,
        ModelMode::Normal,
        &SolverConfig::Exact(ExactParams::default()),
        BuildOptions::default(),
    )
    .unwrap();
    let greedy = delta_sweep(
        &problem,
        &grid,
        0.3,
        ModelMode::Normal,
        &SolverConfig::Greedy,
        BuildOptions::default(),
    )
    .unwrap();
    for (e, g) in exact.points.iter().zip(&greedy.points) {
        assert!(e.result.feasible && g.result.feasible);
        assert!(g.result.objective >= e.result.objective);
        assert!(e.result.objective <= FeatureMask::all(his.n_attributes()).count());
    }
}
