//! Solvers for [`SelectionModel`]: exact branch-and-bound, a greedy
//! deficit-cover heuristic and the black-hole metaheuristic.

mod blackhole;
mod exact;
mod greedy;
mod sweep;

use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::model::{FeatureMask, SelectionModel};
use crate::Result;

pub use blackhole::{solve_blackhole, BlackHoleParams};
pub use exact::{solve_exact, ExactParams};
pub use greedy::solve_greedy;
pub use sweep::{default_delta_grid, delta_sweep, SelectionProblem, Sweep, SweepPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Exact,
    Greedy,
    Blackhole,
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverKind::Exact => "exact",
            SolverKind::Greedy => "greedy",
            SolverKind::Blackhole => "blackhole",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub mask: FeatureMask,
    pub objective: usize,
    pub feasible: bool,
    pub solver: SolverKind,
    /// Only set for the black-hole solver.
    pub seed: Option<u64>,
    /// Search nodes for the exact solver, iterations for the black hole,
    /// additions for greedy.
    pub iterations_used: u64,
    pub proven_optimal: bool,
}

impl Serialize for SolveResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SolveResult", 8)?;
        s.serialize_field("solver", &self.solver)?;
        s.serialize_field("features", &self.mask.one_based())?;
        s.serialize_field("mask", &self.mask.to_string())?;
        s.serialize_field("objective", &self.objective)?;
        s.serialize_field("feasible", &self.feasible)?;
        s.serialize_field("proven_optimal", &self.proven_optimal)?;
        s.serialize_field("seed", &self.seed)?;
        s.serialize_field("iterations_used", &self.iterations_used)?;
        s.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolverConfig {
    Exact(ExactParams),
    Greedy,
    Blackhole(BlackHoleParams),
}

impl SolverConfig {
    pub fn kind(&self) -> SolverKind {
        match self {
            SolverConfig::Exact(_) => SolverKind::Exact,
            SolverConfig::Greedy => SolverKind::Greedy,
            SolverConfig::Blackhole(_) => SolverKind::Blackhole,
        }
    }

    pub fn solve(&self, model: &SelectionModel) -> Result<SolveResult> {
        match self {
            SolverConfig::Exact(params) => solve_exact(model, *params),
            SolverConfig::Greedy => Ok(solve_greedy(model)),
            SolverConfig::Blackhole(params) => solve_blackhole(model, *params),
        }
    }
}

/// Drops selected features one at a time, in `order`, whenever the mask stays
/// feasible without them. The result is 1-minimal.
pub(crate) fn reverse_delete(
    model: &SelectionModel,
    mask: &mut FeatureMask,
    order: impl IntoIterator<Item = usize>,
) {
    for k in order {
        if !mask.get(k) {
            continue;
        }
        mask.set(k, false);
        if model.violations(mask) > 0 {
            mask.set(k, true);
        }
    }
}
