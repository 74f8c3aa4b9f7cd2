use crate::model::{FeatureMask, SelectionModel};
use crate::solve::{reverse_delete, SolveResult, SolverKind};

/// Adds the feature with the largest total deficit reduction
/// `Σ_rows min(c_k, deficit)` until every row holds, then removes redundant
/// features in reverse order of addition.
pub fn solve_greedy(model: &SelectionModel) -> SolveResult {
    let p = model.p();
    let theta = model.theta();
    let mut mask = FeatureMask::none(p);
    let mut coverage = vec![0.0; model.rows().len()];
    let mut added = Vec::new();

    while model.violations(&mask) > 0 {
        let deficits: Vec<f64> = (0..coverage.len())
            .map(|r| {
                if model.row_satisfied(r, &mask) {
                    0.0
                } else {
                    theta - coverage[r]
                }
            })
            .collect();
        let mut pick: Option<(usize, f64)> = None;
        for k in (0..p).filter(|&k| !mask.get(k)) {
            let gain: f64 = model
                .rows()
                .iter()
                .zip(&deficits)
                .map(|(row, &d)| row[k].min(d))
                .sum();
            if gain > 0.0 && pick.is_none_or(|(_, g)| gain > g) {
                pick = Some((k, gain));
            }
        }
        let Some((k, _)) = pick else { break };
        mask.set(k, true);
        added.push(k);
        for (cov, row) in coverage.iter_mut().zip(model.rows()) {
            *cov += row[k];
        }
    }

    let feasible = model.violations(&mask) == 0;
    if feasible {
        reverse_delete(model, &mut mask, added.iter().rev().copied());
    }
    SolveResult {
        objective: mask.count(),
        mask,
        feasible,
        solver: SolverKind::Greedy,
        seed: None,
        iterations_used: added.len() as u64,
        proven_optimal: false,
    }
}
