use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::distance::{compute_stats, decompose, AttributeStats, DistanceDecomposition};
use crate::his::{cross_class_pairs, HybridInformationSystem};
use crate::model::{build_model, BuildOptions, ModelMode, SelectionModel};
use crate::relation::{gaussian_relation, upper_relation, FuzzyRelationMatrix};
use crate::solve::{SolveResult, SolverConfig};
use crate::{Error, Result};

/// Everything about a dataset that does not depend on `δ`, `σ` or the mode:
/// attribute statistics, cross-class pairs and their squared distances.
#[derive(Debug, Clone)]
pub struct SelectionProblem {
    stats: AttributeStats,
    decomposition: DistanceDecomposition,
}

impl SelectionProblem {
    pub fn new(his: &HybridInformationSystem) -> Result<Self> {
        let stats = compute_stats(his);
        let pairs = cross_class_pairs(his.partition());
        let decomposition = decompose(his, &stats, &pairs)?;
        Ok(Self {
            stats,
            decomposition,
        })
    }

    pub fn stats(&self) -> &AttributeStats {
        &self.stats
    }

    pub fn decomposition(&self) -> &DistanceDecomposition {
        &self.decomposition
    }

    /// The pair-filtering relation for `mode`.
    pub fn relation(&self, sigma: f64, mode: ModelMode) -> Result<FuzzyRelationMatrix> {
        let kernel = gaussian_relation(self.decomposition.hd(), sigma)?;
        Ok(match mode {
            ModelMode::Normal => kernel,
            ModelMode::Optimistic => upper_relation(&kernel),
        })
    }

    pub fn build(
        &self,
        delta: f64,
        sigma: f64,
        mode: ModelMode,
        options: BuildOptions,
    ) -> Result<SelectionModel> {
        let relation = self.relation(sigma, mode)?;
        build_model(&self.decomposition, &relation, delta, sigma, mode, options)
    }
}

/// `0.0, 0.1, …, 0.9`.
pub fn default_delta_grid() -> Vec<f64> {
    (0..10).map(|i| f64::from(i) / 10.0).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub delta: f64,
    pub theta: f64,
    pub rows: usize,
    pub degenerate: bool,
    pub result: SolveResult,
}

impl Serialize for SweepPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SweepPoint", 5)?;
        s.serialize_field("delta", &self.delta)?;
        s.serialize_field("theta", &self.theta.is_finite().then_some(self.theta))?;
        s.serialize_field("rows", &self.rows)?;
        s.serialize_field("degenerate", &self.degenerate)?;
        s.serialize_field("result", &self.result)?;
        s.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sweep {
    pub points: Vec<SweepPoint>,
    /// Index into `points` of the smallest feasible objective among the
    /// non-degenerate points; ties go to the larger `δ`.
    pub best: Option<usize>,
}

impl Sweep {
    pub fn best_point(&self) -> Option<&SweepPoint> {
        self.best.map(|i| &self.points[i])
    }
}

/// Builds and solves one model per `δ` in `grid`, in grid order.
pub fn delta_sweep(
    problem: &SelectionProblem,
    grid: &[f64],
    sigma: f64,
    mode: ModelMode,
    solver: &SolverConfig,
    options: BuildOptions,
) -> Result<Sweep> {
    if let Some(d) = grid.iter().find(|d| !(0.0..1.0).contains(*d)) {
        return Err(Error::Parameter(format!(
            "sweep values must lie in [0, 1), got {d}"
        )));
    }
    let relation = problem.relation(sigma, mode)?;
    let mut points = Vec::with_capacity(grid.len());
    for &delta in grid {
        let model = build_model(
            problem.decomposition(),
            &relation,
            delta,
            sigma,
            mode,
            options,
        )?;
        let result = solver.solve(&model)?;
        points.push(SweepPoint {
            delta,
            theta: model.theta(),
            rows: model.rows().len(),
            degenerate: model.is_degenerate(),
            result,
        });
    }
    let mut best: Option<usize> = None;
    for (i, pt) in points.iter().enumerate() {
        if pt.degenerate || !pt.result.feasible {
            continue;
        }
        let better = best.is_none_or(|b| {
            let cur = &points[b];
            pt.result.objective < cur.result.objective
                || (pt.result.objective == cur.result.objective && pt.delta > cur.delta)
        });
        if better {
            best = Some(i);
        }
    }
    Ok(Sweep { points, best })
}
