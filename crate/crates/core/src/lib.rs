//! Feature selection for hybrid (mixed-type) information systems.
//!
//! The pipeline is:
//!
//! 1. load a typed table ([`his`]) whose columns are boolean, categorical,
//!    real, set-valued or linguistic;
//! 2. measure per-attribute distances and aggregate them into the hybrid
//!    distance matrix ([`distance`]);
//! 3. turn distances into a Gaussian-kernel fuzzy relation and, optionally,
//!    its sup-product upper approximation ([`relation`]);
//! 4. keep the cross-class pairs that are still too similar under a threshold
//!    and build a binary covering model over the attributes ([`model`]);
//! 5. solve it exactly or heuristically ([`solve`]) and score the chosen
//!    subset with k-fold nearest-neighbour classification ([`eval`]).
//!
//! Object and feature indices are 0-based throughout this crate. Anything
//! meant for people (CLI reports, model dumps) is converted to 1-based at the
//! serialization boundary.

pub mod distance;
pub mod error;
pub mod eval;
pub mod fuzzy;
pub mod his;
pub mod matrix;
pub mod model;
pub mod relation;
pub mod solve;

pub use distance::{
    compute_stats, decompose, hd_matrix, AttributeStat, AttributeStats, DistanceDecomposition,
};
pub use error::{Error, Result};
pub use eval::{
    confusion, evaluate_subset, kfold_split, knn_classify, metrics, BinaryConfusion, EvalConfig,
    EvaluationReport, MetricReport, MulticlassConfusion,
};
pub use fuzzy::{centroid, defuzzify_column, membership, TermTable, TrapezoidalFuzzyNumber};
pub use his::{
    cross_class_pairs, load_dataset, parse_schema, partition_by_decision, Attribute, AttributeKind,
    AttributeValue, DecisionPartition, HybridInformationSystem, KindTag, Schema,
};
pub use matrix::SquareMatrix;
pub use model::{
    build_model, is_feasible, objective, split_g1_g2, BuildOptions, Feasibility, FeatureMask,
    ModelMode, SelectionModel,
};
pub use relation::{
    check_tp_transitivity, class_approximations, dependency, gaussian_relation, lower_relation,
    upper_relation, DecisionApproximation, FuzzyRelationMatrix, RelationKind, TransitivityReport,
};
pub use solve::{
    default_delta_grid, delta_sweep, solve_blackhole, solve_exact, solve_greedy, BlackHoleParams,
    ExactParams, SelectionProblem, SolveResult, SolverConfig, SolverKind, Sweep, SweepPoint,
};
