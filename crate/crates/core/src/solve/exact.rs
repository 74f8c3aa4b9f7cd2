use crate::model::{undominated, FeatureMask, SelectionModel, FEASIBILITY_EPS};
use crate::solve::{SolveResult, SolverKind};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactParams {
    /// Search nodes allowed before giving up with [`Error::BudgetExceeded`].
    pub node_limit: u64,
}

impl Default for ExactParams {
    fn default() -> Self {
        Self {
            node_limit: 50_000_000,
        }
    }
}

/// Depth-first branch-and-bound over features in index order, trying "off"
/// before "on". The first optimum reached is the lexicographically smallest
/// mask among all optima.
pub fn solve_exact(model: &SelectionModel, params: ExactParams) -> Result<SolveResult> {
    let p = model.p();
    let all = FeatureMask::all(p);
    if model.violations(&all) > 0 {
        return Ok(SolveResult {
            objective: all.count(),
            mask: all,
            feasible: false,
            solver: SolverKind::Exact,
            seed: None,
            iterations_used: 0,
            proven_optimal: false,
        });
    }

    let keep = undominated(model.rows());
    let rows: Vec<&[f64]> = model
        .rows()
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(r, _)| r.as_slice())
        .collect();
    // suffix_max[r][k] = max coefficient of row r over features k..p
    let suffix_max: Vec<Vec<f64>> = rows
        .iter()
        .map(|row| {
            let mut out = vec![0.0f64; p + 1];
            for k in (0..p).rev() {
                out[k] = out[k + 1].max(row[k]);
            }
            out
        })
        .collect();

    let mut search = Search {
        rows,
        suffix_max,
        target: model.theta() - FEASIBILITY_EPS,
        p,
        coverage: Vec::new(),
        current: vec![false; p],
        best: all.bits().to_vec(),
        best_count: p,
        nodes: 0,
        limit: params.node_limit,
    };
    search.coverage = vec![vec![0.0; search.rows.len()]; p + 1];
    search.descend(0, 0)?;

    let mask = FeatureMask::new(search.best);
    debug_assert_eq!(model.violations(&mask), 0);
    Ok(SolveResult {
        objective: mask.count(),
        mask,
        feasible: true,
        solver: SolverKind::Exact,
        seed: None,
        iterations_used: search.nodes,
        proven_optimal: true,
    })
}

struct Search<'a> {
    rows: Vec<&'a [f64]>,
    suffix_max: Vec<Vec<f64>>,
    target: f64,
    p: usize,
    /// Row coverage per depth; copying instead of subtracting on backtrack
    /// keeps sums bit-identical to [`SelectionModel::coverage`].
    coverage: Vec<Vec<f64>>,
    current: Vec<bool>,
    best: Vec<bool>,
    best_count: usize,
    nodes: u64,
    limit: u64,
}

impl Search<'_> {
    /// Features `0..depth` are fixed and `count` of them are on.
    fn descend(&mut self, depth: usize, count: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::BudgetExceeded {
                nodes: self.nodes,
                limit: self.limit,
            });
        }
        let mut need = 0usize;
        for (r, &cov) in self.coverage[depth].iter().enumerate() {
            let deficit = self.target - cov;
            if deficit <= 0.0 {
                continue;
            }
            let step = self.suffix_max[r][depth];
            if step <= 0.0 {
                return Ok(());
            }
            // shave the ratio so rounding never overstates the bound
            let n = ((deficit / step) * (1.0 - 1e-12)).ceil().max(1.0) as usize;
            need = need.max(n);
        }
        if need == 0 {
            // every row holds; leaving the remaining features off is optimal
            if count < self.best_count {
                self.best_count = count;
                self.best.copy_from_slice(&self.current);
                self.best[depth..].iter_mut().for_each(|b| *b = false);
            }
            return Ok(());
        }
        if count + need >= self.best_count || depth + need > self.p {
            return Ok(());
        }

        let (done, rest) = self.coverage.split_at_mut(depth + 1);
        rest[0].copy_from_slice(&done[depth]);
        self.descend(depth + 1, count)?;

        let (done, rest) = self.coverage.split_at_mut(depth + 1);
        for ((next, &cov), row) in rest[0].iter_mut().zip(&done[depth]).zip(&self.rows) {
            *next = cov + row[depth];
        }
        self.current[depth] = true;
        let outcome = self.descend(depth + 1, count + 1);
        self.current[depth] = false;
        outcome
    }
}
