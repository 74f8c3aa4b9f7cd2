//! The binary covering model behind subset selection.
//!
//! For every cross-class pair `(i, j)` whose similarity is at most `δ`, the
//! selected attributes must keep the pair at least as dissimilar as `δ`:
//!
//! ```text
//! exp(-Σ_k χ_k d_k²(i, j) / 2σ²) <= δ   <=>   Σ_k χ_k d_k²(i, j) >= θ = -2σ² ln δ
//! ```
//!
//! and the objective is to minimise `Σ_k χ_k`.

use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::distance::DistanceDecomposition;
use crate::relation::{FuzzyRelationMatrix, RelationKind};
use crate::{Error, Result};

/// Slack allowed on every constraint row.
pub const FEASIBILITY_EPS: f64 = 1e-9;

/// Which relation filters the constraint pairs: the kernel relation itself
/// (`Normal`) or its sup-product upper approximation (`Optimistic`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelMode {
    Normal,
    Optimistic,
}

impl fmt::Display for ModelMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelMode::Normal => "normal",
            ModelMode::Optimistic => "optimistic",
        })
    }
}

impl ModelMode {
    pub fn relation_kind(self) -> RelationKind {
        match self {
            ModelMode::Normal => RelationKind::Kernel,
            ModelMode::Optimistic => RelationKind::Upper,
        }
    }
}

/// Binary attribute selection vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FeatureMask(Vec<bool>);

impl FeatureMask {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn all(p: usize) -> Self {
        Self(vec![true; p])
    }

    pub fn none(p: usize) -> Self {
        Self(vec![false; p])
    }

    /// Mask with the given 1-based feature numbers selected.
    pub fn from_one_based(p: usize, features: &[usize]) -> Result<Self> {
        let mut bits = vec![false; p];
        for &f in features {
            if f == 0 || f > p {
                return Err(Error::Parameter(format!(
                    "feature {f} is out of range 1..={p}"
                )));
            }
            bits[f - 1] = true;
        }
        Ok(Self(bits))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: usize) -> bool {
        self.0[k]
    }

    pub fn set(&mut self, k: usize, on: bool) {
        self.0[k] = on;
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// 0-based indices of selected features.
    pub fn selected(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&k| self.0[k]).collect()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.selected().into_iter().map(|k| k + 1).collect()
    }
}

impl fmt::Display for FeatureMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `Σ χ_k`.
pub fn objective(mask: &FeatureMask) -> usize {
    mask.count()
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BuildOptions {
    /// Drop rows implied by another row (coefficient-wise greater or equal).
    /// Never changes the optimum.
    pub prune_dominated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionModel {
    p: usize,
    pairs: Vec<(usize, usize)>,
    rows: Vec<Vec<f64>>,
    theta: f64,
    delta: f64,
    sigma: f64,
    mode: ModelMode,
}

impl SelectionModel {
    /// Assembles a model from explicit rows. `theta` is derived from `delta`
    /// and `sigma`; `delta = 0` yields `θ = +∞`.
    pub fn from_parts(
        p: usize,
        pairs: Vec<(usize, usize)>,
        rows: Vec<Vec<f64>>,
        delta: f64,
        sigma: f64,
        mode: ModelMode,
    ) -> Result<Self> {
        check_delta(delta)?;
        check_sigma(sigma)?;
        if pairs.len() != rows.len() {
            return Err(Error::Parameter(format!(
                "{} pairs for {} constraint rows",
                pairs.len(),
                rows.len()
            )));
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != p {
                return Err(Error::Parameter(format!(
                    "constraint row {} has {} coefficients, expected {p}",
                    r + 1,
                    row.len()
                )));
            }
            if row.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
                return Err(Error::Parameter(format!(
                    "constraint row {} has a negative or non-finite coefficient",
                    r + 1
                )));
            }
        }
        Ok(Self {
            p,
            pairs,
            rows,
            theta: threshold(delta, sigma),
            delta,
            sigma,
            mode,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn mode(&self) -> ModelMode {
        self.mode
    }

    /// `δ = 0` (no pair can be that dissimilar, empty model) or `δ = 1`
    /// (`θ = 0`, every mask is feasible).
    pub fn is_degenerate(&self) -> bool {
        self.delta == 0.0 || self.delta == 1.0
    }

    /// `Σ_k χ_k c_k` for one row.
    #[inline]
    pub fn coverage(&self, row: usize, mask: &FeatureMask) -> f64 {
        self.rows[row]
            .iter()
            .zip(mask.bits())
            .filter(|(_, &on)| on)
            .map(|(c, _)| c)
            .sum()
    }

    #[inline]
    pub fn row_satisfied(&self, row: usize, mask: &FeatureMask) -> bool {
        self.coverage(row, mask) >= self.theta - FEASIBILITY_EPS
    }

    pub fn violations(&self, mask: &FeatureMask) -> usize {
        (0..self.rows.len())
            .filter(|&r| !self.row_satisfied(r, mask))
            .count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    /// Reads a model dump back. `theta` in the document is ignored and
    /// recomputed from `delta` and `sigma`.
    pub fn from_json(document: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            p: usize,
            delta: f64,
            sigma: f64,
            mode: ModelMode,
            pairs: Vec<[usize; 2]>,
            rows: Vec<Vec<f64>>,
        }
        let doc: Doc = serde_json::from_str(document)?;
        let pairs = doc
            .pairs
            .iter()
            .map(|&[i, j]| {
                if i == 0 || j == 0 {
                    Err(Error::Parameter(
                        "object numbers in a model dump are 1-based".into(),
                    ))
                } else {
                    Ok((i - 1, j - 1))
                }
            })
            .collect::<Result<_>>()?;
        Self::from_parts(doc.p, pairs, doc.rows, doc.delta, doc.sigma, doc.mode)
    }
}

impl Serialize for SelectionModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SelectionModel", 7)?;
        s.serialize_field("p", &self.p)?;
        // +∞ (δ = 0) has no JSON representation
        s.serialize_field("theta", &self.theta.is_finite().then_some(self.theta))?;
        s.serialize_field("delta", &self.delta)?;
        s.serialize_field("sigma", &self.sigma)?;
        s.serialize_field("mode", &self.mode)?;
        let pairs: Vec<[usize; 2]> = self.pairs.iter().map(|&(i, j)| [i + 1, j + 1]).collect();
        s.serialize_field("pairs", &pairs)?;
        s.serialize_field("rows", &self.rows)?;
        s.end()
    }
}

/// `θ = -2σ² ln δ`.
pub fn threshold(delta: f64, sigma: f64) -> f64 {
    if delta == 1.0 {
        0.0
    } else {
        -2.0 * sigma * sigma * delta.ln()
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&delta) {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "delta must lie in [0, 1], got {delta}"
        )))
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "sigma must be positive, got {sigma}"
        )))
    }
}

type PairSplit = (Vec<(usize, usize)>, Vec<(usize, usize)>);

/// Splits cross-class pairs into `G1` (`R <= δ`, constrained) and `G2`
/// (`R > δ`, ignored).
pub fn split_g1_g2(
    relation: &FuzzyRelationMatrix,
    pairs: &[(usize, usize)],
    delta: f64,
) -> Result<PairSplit> {
    check_delta(delta)?;
    Ok(pairs
        .iter()
        .partition(|&&(i, j)| relation.get(i, j) <= delta))
}

/// Builds the selection model for one `(δ, σ, mode)`. `relation` must be the
/// kernel relation in normal mode and its upper approximation in optimistic
/// mode; constraint coefficients always come from the raw decomposition.
pub fn build_model(
    decomposition: &DistanceDecomposition,
    relation: &FuzzyRelationMatrix,
    delta: f64,
    sigma: f64,
    mode: ModelMode,
    options: BuildOptions,
) -> Result<SelectionModel> {
    check_delta(delta)?;
    check_sigma(sigma)?;
    if relation.kind() != mode.relation_kind() {
        return Err(Error::Parameter(format!(
            "{mode} mode needs a {:?} relation, got {:?}",
            mode.relation_kind(),
            relation.kind()
        )));
    }
    if relation.n() != decomposition.hd().n() {
        return Err(Error::Parameter(
            "relation and decomposition cover different objects".into(),
        ));
    }
    let p = decomposition.n_attributes();
    let s_delta = if delta == 0.0 {
        // a Gaussian relation is strictly positive, so nothing is <= 0
        Vec::new()
    } else {
        split_g1_g2(relation, decomposition.pairs(), delta)?.0
    };
    let mut rows = Vec::with_capacity(s_delta.len());
    for &(i, j) in &s_delta {
        let row = decomposition.pair_row(i, j).ok_or_else(|| {
            Error::Parameter(format!("pair ({i}, {j}) missing from the decomposition"))
        })?;
        rows.push(row.to_vec());
    }
    let (pairs, rows) = if options.prune_dominated {
        prune_dominated(s_delta, rows)
    } else {
        (s_delta, rows)
    };
    SelectionModel::from_parts(p, pairs, rows, delta, sigma, mode)
}

/// Removes every row that has another row coefficient-wise below it; of two
/// identical rows the first is kept.
fn prune_dominated(
    pairs: Vec<(usize, usize)>,
    rows: Vec<Vec<f64>>,
) -> (Vec<(usize, usize)>, Vec<Vec<f64>>) {
    let keep = undominated(&rows);
    pairs
        .into_iter()
        .zip(rows)
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(pr, _)| pr)
        .unzip()
}

/// Flags the rows not implied by another row. Any row satisfied by a mask
/// implies every row that dominates it is satisfied too, so dropping the
/// unflagged rows leaves the feasible set unchanged.
pub(crate) fn undominated(rows: &[Vec<f64>]) -> Vec<bool> {
    let below = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| x <= y);
    let sums: Vec<f64> = rows.iter().map(|r| r.iter().sum()).collect();
    let mut order: Vec<usize> = (0..rows.len()).collect();
    // a dominating row never has a larger sum, so only earlier rows in this
    // order need checking
    order.sort_by(|&a, &b| sums[a].total_cmp(&sums[b]).then(a.cmp(&b)));
    let mut keep = vec![false; rows.len()];
    let mut kept: Vec<usize> = Vec::new();
    for r in order {
        if !kept.iter().any(|&q| below(&rows[q], &rows[r])) {
            keep[r] = true;
            kept.push(r);
        }
    }
    keep
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Feasibility {
    pub feasible: bool,
    /// 0-based indices of violated rows.
    pub violated: Vec<usize>,
}

pub fn is_feasible(model: &SelectionModel, mask: &FeatureMask) -> Result<Feasibility> {
    if mask.len() != model.p() {
        return Err(Error::Parameter(format!(
            "mask has {} entries, model has {} features",
            mask.len(),
            model.p()
        )));
    }
    let violated: Vec<usize> = (0..model.rows().len())
        .filter(|&r| !model.row_satisfied(r, mask))
        .collect();
    Ok(Feasibility {
        feasible: violated.is_empty(),
        violated,
    })
}
