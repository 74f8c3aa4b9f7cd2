//! Gaussian-kernel fuzzy relations and their rough approximations under the
//! product t-norm `T_p(a, b) = ab` and its dual `S_p(a, b) = a + b - ab`.

use serde::Serialize;

use crate::his::DecisionPartition;
use crate::matrix::SquareMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    Kernel,
    Upper,
    Lower,
}

/// `n x n` relation with entries in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FuzzyRelationMatrix {
    kind: RelationKind,
    sigma: Option<f64>,
    values: SquareMatrix,
}

impl FuzzyRelationMatrix {
    /// Wraps an externally supplied matrix (e.g. a reference fixture).
    pub fn from_matrix(values: SquareMatrix, kind: RelationKind) -> Result<Self> {
        if let Some(v) = values.values().iter().find(|v| !(0.0..=1.0).contains(*v)) {
            return Err(Error::Parameter(format!(
                "relation entry {v} is outside [0, 1]"
            )));
        }
        Ok(Self {
            kind,
            sigma: None,
            values,
        })
    }

    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    pub fn sigma(&self) -> Option<f64> {
        self.sigma
    }

    pub fn n(&self) -> usize {
        self.values.n()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values.get(i, j)
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.values
    }

    fn derived(&self, kind: RelationKind, values: SquareMatrix) -> Self {
        Self {
            kind,
            sigma: self.sigma,
            values,
        }
    }
}

#[inline]
pub fn t_product(a: f64, b: f64) -> f64 {
    a * b
}

#[inline]
pub fn s_product(a: f64, b: f64) -> f64 {
    a + b - a * b
}

/// `R(i, j) = exp(-hd(i, j)² / (2σ²))`.
pub fn gaussian_relation(hd: &SquareMatrix, sigma: f64) -> Result<FuzzyRelationMatrix> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::Parameter(format!(
            "kernel width must be positive, got {sigma}"
        )));
    }
    let n = hd.n();
    let denom = 2.0 * sigma * sigma;
    let mut values = SquareMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            let d = hd.get(i, j);
            let r = (-(d * d) / denom).exp();
            values.set(i, j, r);
            values.set(j, i, r);
        }
    }
    Ok(FuzzyRelationMatrix {
        kind: RelationKind::Kernel,
        sigma: Some(sigma),
        values,
    })
}

/// Largest violation of `T_p(R(x,y), R(y,z)) <= R(x,z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Violation {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    /// `R(x,y)·R(y,z) - R(x,z)`
    pub excess: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TransitivityReport {
    pub passed: bool,
    /// Worst triple whose excess is above the tolerance; `None` when passed.
    pub worst: Option<Violation>,
}

pub fn check_tp_transitivity(r: &FuzzyRelationMatrix, tol: f64) -> TransitivityReport {
    let n = r.n();
    let mut worst: Option<Violation> = None;
    for x in 0..n {
        for y in 0..n {
            let rxy = r.get(x, y);
            for z in 0..n {
                let excess = t_product(rxy, r.get(y, z)) - r.get(x, z);
                if excess > tol && worst.is_none_or(|w| excess > w.excess) {
                    worst = Some(Violation { x, y, z, excess });
                }
            }
        }
    }
    TransitivityReport {
        passed: worst.is_none(),
        worst,
    }
}

/// One sup-`T_p` composition: `R̄(i, j) = max_y R(i, y)·R(y, j)`.
pub fn upper_relation(r: &FuzzyRelationMatrix) -> FuzzyRelationMatrix {
    let n = r.n();
    let mut out = SquareMatrix::zeros(n);
    for i in 0..n {
        let ri = r.matrix().row(i);
        for j in 0..n {
            let v = (0..n)
                .map(|y| t_product(ri[y], r.get(y, j)))
                .fold(0.0, f64::max);
            out.set(i, j, v);
        }
    }
    r.derived(RelationKind::Upper, out)
}

/// `inf_y S_p(1 - R(i, y), R(y, j))`. Not an equivalence relation in
/// general; exposed for inspection.
pub fn lower_relation(r: &FuzzyRelationMatrix) -> FuzzyRelationMatrix {
    let n = r.n();
    let mut out = SquareMatrix::zeros(n);
    for i in 0..n {
        let ri = r.matrix().row(i);
        for j in 0..n {
            let v = (0..n)
                .map(|y| s_product(1.0 - ri[y], r.get(y, j)))
                .fold(f64::INFINITY, f64::min);
            out.set(i, j, v);
        }
    }
    r.derived(RelationKind::Lower, out)
}

/// Fuzzy lower and upper approximations of every decision class, indexed
/// `[class][object]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecisionApproximation {
    pub lower: Vec<Vec<f64>>,
    pub upper: Vec<Vec<f64>>,
}

impl DecisionApproximation {
    /// `POS(x) = max_j lower(x, D_j)`.
    pub fn positive_region(&self) -> Vec<f64> {
        let n = self.lower.first().map_or(0, Vec::len);
        (0..n)
            .map(|x| self.lower.iter().map(|c| c[x]).fold(0.0, f64::max))
            .collect()
    }
}

/// `lower(x, D_j) = min_{y ∉ D_j} (1 - R(x, y))` (1 when `D_j = U`) and
/// `upper(x, D_j) = max_{y ∈ D_j} R(x, y)`.
pub fn class_approximations(
    r: &FuzzyRelationMatrix,
    partition: &DecisionPartition,
) -> Result<DecisionApproximation> {
    let n = r.n();
    if partition.n_objects() != n {
        return Err(Error::Parameter(format!(
            "partition covers {} objects but the relation is {n}x{n}",
            partition.n_objects()
        )));
    }
    let mut lower = vec![vec![1.0; n]; partition.n_classes()];
    let mut upper = vec![vec![0.0; n]; partition.n_classes()];
    for x in 0..n {
        for y in 0..n {
            let j = partition.class_of(y);
            let rxy = r.get(x, y);
            upper[j][x] = f64::max(upper[j][x], rxy);
            for (c, lo) in lower.iter_mut().enumerate() {
                if c != j {
                    lo[x] = f64::min(lo[x], 1.0 - rxy);
                }
            }
        }
    }
    Ok(DecisionApproximation { lower, upper })
}

/// Dependency degree: sigma-count of the positive region over `|U|`.
pub fn dependency(approx: &DecisionApproximation) -> f64 {
    let pos = approx.positive_region();
    if pos.is_empty() {
        return 0.0;
    }
    pos.iter().sum::<f64>() / pos.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::{compute_stats, hd_matrix};
    use crate::his::{load_dataset, parse_schema, HybridInformationSystem};

    fn flu() -> HybridInformationSystem {
        let schema = parse_schema(include_str!("../../../data/flu/schema.json")).unwrap();
        load_dataset(
            include_str!("../../../data/flu/flu.csv").as_bytes(),
            &schema,
        )
        .unwrap()
    }

    fn reference_kernel() -> FuzzyRelationMatrix {
        let rows = include_str!("../../../data/flu/reference_kernel.csv")
            .lines()
            .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
            .collect();
        FuzzyRelationMatrix::from_matrix(
            SquareMatrix::from_rows(rows).unwrap(),
            RelationKind::Kernel,
        )
        .unwrap()
    }

    fn flu_kernel() -> FuzzyRelationMatrix {
        let his = flu();
        gaussian_relation(&hd_matrix(&his, &compute_stats(&his)), 0.4f64.sqrt()).unwrap()
    }

    fn rel(rows: Vec<Vec<f64>>) -> FuzzyRelationMatrix {
        FuzzyRelationMatrix::from_matrix(
            SquareMatrix::from_rows(rows).unwrap(),
            RelationKind::Kernel,
        )
        .unwrap()
    }

    #[test]
    fn kernel_values() {
        let hd = SquareMatrix::symmetric_from_upper(&[vec![0.0, 0.2], vec![0.0, 0.0]]).unwrap();
        let r = gaussian_relation(&hd, 0.4f64.sqrt()).unwrap();
        assert!((r.get(0, 1) - (-0.05f64).exp()).abs() < 1e-15);
        assert_eq!(r.get(0, 0), 1.0);
        let r = flu_kernel();
        assert!((r.get(0, 1) - 0.993439).abs() < 1e-6);
        assert!((r.get(0, 3) - 0.988365).abs() < 1e-6);
        assert!(r.matrix().is_symmetric(0.0));
        assert!(gaussian_relation(&hd, 0.0).is_err());
        assert!(gaussian_relation(&hd, -1.0).is_err());
    }

    #[test]
    fn transitivity_check() {
        assert!(check_tp_transitivity(&rel(vec![vec![1.0, 0.0], vec![0.0, 1.0]]), 1e-12).passed);
        let bad = rel(vec![
            vec![1.0, 0.9, 0.5],
            vec![0.9, 1.0, 0.9],
            vec![0.5, 0.9, 1.0],
        ]);
        let report = check_tp_transitivity(&bad, 1e-12);
        assert!(!report.passed);
        let w = report.worst.unwrap();
        assert_eq!((w.x, w.y, w.z), (0, 1, 2));
        assert!((w.excess - 0.31).abs() < 1e-12);
    }

    #[test]
    fn flu_kernel_is_not_product_transitive() {
        let r = flu_kernel();
        // fever values 39.5, 39.2, 38.8 are collinear: hd(x2,x1)² + hd(x1,x4)²
        // falls short of hd(x2,x4)², so R(x2,x1)·R(x1,x4) > R(x2,x4)
        assert!(r.get(1, 0) * r.get(0, 3) > r.get(1, 3) + 0.01);
        let report = check_tp_transitivity(&r, 1e-12);
        assert!(!report.passed);
        let w = report.worst.unwrap();
        assert_eq!((w.x, w.y, w.z), (1, 6, 5));
        assert!((w.excess - 0.04219983451204133).abs() < 1e-12);
    }

    #[test]
    fn upper_on_reference_kernel() {
        let up = upper_relation(&reference_kernel());
        assert!((up.get(1, 3) - 0.99 * 0.98).abs() < 1e-12);
        assert!((up.get(3, 6) - 0.98 * 0.90).abs() < 1e-12);
        assert!((up.get(1, 4) - 0.088).abs() < 1e-12);
        assert_eq!(up.kind(), RelationKind::Upper);
    }

    #[test]
    fn identity_is_a_fixed_point() {
        let id = FuzzyRelationMatrix::from_matrix(SquareMatrix::identity(4), RelationKind::Kernel)
            .unwrap();
        assert_eq!(upper_relation(&id).matrix(), &SquareMatrix::identity(4));
        let lo = lower_relation(&id);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(lo.get(i, j), 0.0);
                }
            }
        }
    }

    #[test]
    fn lower_never_exceeds_relation() {
        let r = reference_kernel();
        let lo = lower_relation(&r);
        for i in 0..7 {
            for j in 0..7 {
                assert!(lo.get(i, j) <= r.get(i, j) + 1e-15);
            }
        }
        // brute-force spot check
        let want = (0..7)
            .map(|y| {
                let a = 1.0 - r.get(0, y);
                let b = r.get(y, 1);
                a + b - a * b
            })
            .fold(f64::INFINITY, f64::min);
        assert_eq!(lo.get(0, 1), want);
        assert!((lo.get(0, 1) - 0.559).abs() < 1e-12);
    }

    #[test]
    fn approximations_on_flu() {
        let his = flu();
        let r = flu_kernel();
        let approx = class_approximations(&r, his.partition()).unwrap();
        let want = 1.0
            - [3, 4, 5, 6]
                .iter()
                .map(|&y| r.get(0, y))
                .fold(0.0, f64::max);
        assert!((approx.lower[0][0] - want).abs() < 1e-15);
        for x in 0..7 {
            assert_eq!(approx.upper[his.partition().class_of(x)][x], 1.0);
            for j in 0..3 {
                assert!(approx.lower[j][x] <= approx.upper[j][x]);
            }
        }
        let gamma = dependency(&approx);
        assert!((gamma - 0.259700304639978).abs() < 1e-9, "gamma {gamma}");
    }

    #[test]
    fn single_class_is_fully_dependent() {
        let p = DecisionPartition::from_labels(&["a", "a", "a"]);
        let r = rel(vec![
            vec![1.0, 0.5, 0.2],
            vec![0.5, 1.0, 0.4],
            vec![0.2, 0.4, 1.0],
        ]);
        let approx = class_approximations(&r, &p).unwrap();
        assert!(approx.lower[0].iter().all(|&v| v == 1.0));
        assert_eq!(dependency(&approx), 1.0);
    }

    #[test]
    fn identity_relation_is_fully_dependent() {
        let p = DecisionPartition::from_labels(&["a", "b", "a", "c"]);
        let id = FuzzyRelationMatrix::from_matrix(SquareMatrix::identity(4), RelationKind::Kernel)
            .unwrap();
        assert_eq!(dependency(&class_approximations(&id, &p).unwrap()), 1.0);
    }

    #[test]
    fn mismatched_partition_is_rejected() {
        let p = DecisionPartition::from_labels(&["a", "b"]);
        assert!(class_approximations(&reference_kernel(), &p).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_relation() -> impl Strategy<Value = FuzzyRelationMatrix> {
            (2usize..9).prop_flat_map(|n| {
                prop::collection::vec(0.0f64..1.0, n * n).prop_map(move |v| {
                    let rows: Vec<Vec<f64>> = v.chunks(n).map(<[f64]>::to_vec).collect();
                    let mut m = SquareMatrix::symmetric_from_upper(&rows).unwrap();
                    for i in 0..n {
                        m.set(i, i, 1.0);
                    }
                    FuzzyRelationMatrix::from_matrix(m, RelationKind::Kernel).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn upper_dominates_relation_dominates_lower(r in arb_relation()) {
                let up = upper_relation(&r);
                let lo = lower_relation(&r);
                for i in 0..r.n() {
                    prop_assert_eq!(up.get(i, i), 1.0);
                    for j in 0..r.n() {
                        prop_assert!(up.get(i, j) >= r.get(i, j));
                        prop_assert!(r.get(i, j) >= lo.get(i, j) - 1e-15);
                        prop_assert_eq!(up.get(i, j), up.get(j, i));
                    }
                }
            }

            #[test]
            fn dependency_grows_as_relation_shrinks(
                r in arb_relation(),
                labels in prop::collection::vec(0u8..3, 8),
                factor in 0.0f64..1.0,
            ) {
                let n = r.n();
                let names: Vec<String> = labels[..n].iter().map(u8::to_string).collect();
                let p = DecisionPartition::from_labels(&names);
                let mut m = r.matrix().clone();
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            m.set(i, j, m.get(i, j) * factor);
                        }
                    }
                }
                let shrunk = FuzzyRelationMatrix::from_matrix(m, RelationKind::Kernel).unwrap();
                let before = dependency(&class_approximations(&r, &p).unwrap());
                let after = dependency(&class_approximations(&shrunk, &p).unwrap());
                prop_assert!((0.0..=1.0).contains(&before));
                prop_assert!(after >= before - 1e-15);
            }
        }
    }
}
