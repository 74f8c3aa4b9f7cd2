//! Scoring feature subsets: stratified k-fold splits, a nearest-neighbour
//! classifier on the hybrid distance, and confusion-matrix metrics.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::distance::{attribute_distance, AttributeStats};
use crate::his::{DecisionPartition, HybridInformationSystem};
use crate::model::FeatureMask;
use crate::{Error, Result};

/// Splits `0..n` into `k` folds whose sizes differ by at most one.
///
/// Objects are shuffled with ChaCha8 seeded by `seed`. With `strata`, each
/// class is shuffled on its own and the classes are dealt round-robin one
/// after another, so every fold gets its share of every class that has at
/// least `k` members. Each fold is returned sorted.
pub fn kfold_split(
    n: usize,
    k: usize,
    seed: u64,
    strata: Option<&DecisionPartition>,
) -> Result<Vec<Vec<usize>>> {
    if k < 2 {
        return Err(Error::Parameter(format!("need at least 2 folds, got {k}")));
    }
    if k > n {
        return Err(Error::Parameter(format!("{k} folds for {n} objects")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order: Vec<usize> = match strata {
        Some(partition) => {
            if partition.n_objects() != n {
                return Err(Error::Parameter(format!(
                    "partition covers {} objects, expected {n}",
                    partition.n_objects()
                )));
            }
            let mut order = Vec::with_capacity(n);
            for class in partition.classes() {
                let mut members = class.clone();
                members.shuffle(&mut rng);
                order.extend(members);
            }
            order
        }
        None => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            order
        }
    };
    let mut folds = vec![Vec::with_capacity(n / k + 1); k];
    for (t, i) in order.into_iter().enumerate() {
        folds[t % k].push(i);
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(folds)
}

/// Predicts a class index (into `his.partition()`) for every object in
/// `test` by majority vote among its `k` nearest objects in `train`.
///
/// Distances use only the attributes selected by `mask`, scaled with
/// statistics computed on `train` alone. Equal distances are ordered by
/// object index; a tied vote goes to the class whose nearest voter is
/// closest, then to the earlier class.
pub fn knn_classify(
    his: &HybridInformationSystem,
    train: &[usize],
    test: &[usize],
    mask: &FeatureMask,
    k: usize,
) -> Result<Vec<usize>> {
    if mask.len() != his.n_attributes() {
        return Err(Error::Evaluation(format!(
            "mask has {} entries for {} attributes",
            mask.len(),
            his.n_attributes()
        )));
    }
    if mask.count() == 0 {
        return Err(Error::Evaluation("the feature mask selects nothing".into()));
    }
    if train.is_empty() {
        return Err(Error::Evaluation("the training fold is empty".into()));
    }
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    let stats = AttributeStats::from_rows(his, train);
    let selected = mask.selected();
    let attrs = his.attributes();
    let partition = his.partition();
    let distance = |a: usize, b: usize| {
        selected
            .iter()
            .map(|&f| {
                let d =
                    attribute_distance(&attrs[f], stats.get(f), his.value(a, f), his.value(b, f));
                d * d
            })
            .sum::<f64>()
            .sqrt()
    };

    let mut neighbours: Vec<(f64, usize)> = Vec::with_capacity(train.len());
    let mut votes = vec![0usize; partition.n_classes()];
    let mut nearest = vec![f64::INFINITY; partition.n_classes()];
    Ok(test
        .iter()
        .map(|&t| {
            neighbours.clear();
            neighbours.extend(train.iter().map(|&i| (distance(t, i), i)));
            neighbours.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            votes.iter_mut().for_each(|v| *v = 0);
            nearest.iter_mut().for_each(|d| *d = f64::INFINITY);
            for &(d, i) in neighbours.iter().take(k) {
                let c = partition.class_of(i);
                votes[c] += 1;
                nearest[c] = nearest[c].min(d);
            }
            (0..votes.len())
                .filter(|&c| votes[c] > 0)
                .min_by(|&a, &b| {
                    votes[b]
                        .cmp(&votes[a])
                        .then(nearest[a].total_cmp(&nearest[b]))
                        .then(a.cmp(&b))
                })
                .expect("k >= 1 and train is non-empty")
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct BinaryConfusion {
    #[serde(rename = "TP")]
    pub tp: u64,
    #[serde(rename = "FP")]
    pub fp: u64,
    #[serde(rename = "FN")]
    pub fn_: u64,
    #[serde(rename = "TN")]
    pub tn: u64,
}

impl BinaryConfusion {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }
}

/// `counts[actual][predicted]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MulticlassConfusion {
    pub counts: Vec<Vec<u64>>,
}

impl MulticlassConfusion {
    pub fn from_indices(n_classes: usize, actual: &[usize], predicted: &[usize]) -> Result<Self> {
        if actual.len() != predicted.len() {
            return Err(Error::Evaluation(format!(
                "{} actual labels vs {} predictions",
                actual.len(),
                predicted.len()
            )));
        }
        let mut counts = vec![vec![0u64; n_classes]; n_classes];
        for (&a, &p) in actual.iter().zip(predicted) {
            if a >= n_classes || p >= n_classes {
                return Err(Error::Evaluation(format!(
                    "class index out of range 0..{n_classes}"
                )));
            }
            counts[a][p] += 1;
        }
        Ok(Self { counts })
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn accuracy(&self) -> Option<f64> {
        let trace: u64 = (0..self.counts.len()).map(|c| self.counts[c][c]).sum();
        ratio(trace as f64, self.total() as f64)
    }

    /// Collapses to one-vs-rest counts for class `positive`.
    pub fn binary(&self, positive: usize) -> BinaryConfusion {
        let mut cm = BinaryConfusion::default();
        for (a, row) in self.counts.iter().enumerate() {
            for (p, &count) in row.iter().enumerate() {
                match (a == positive, p == positive) {
                    (true, true) => cm.tp += count,
                    (false, true) => cm.fp += count,
                    (true, false) => cm.fn_ += count,
                    (false, false) => cm.tn += count,
                }
            }
        }
        cm
    }
}

/// Counts by the usual convention: a positive prediction of a positive
/// object is a true positive, and so on.
pub fn confusion<S: AsRef<str>>(
    actual: &[S],
    predicted: &[S],
    positive_label: &str,
) -> Result<BinaryConfusion> {
    if actual.len() != predicted.len() {
        return Err(Error::Evaluation(format!(
            "{} actual labels vs {} predictions",
            actual.len(),
            predicted.len()
        )));
    }
    let present = actual
        .iter()
        .chain(predicted)
        .any(|l| l.as_ref() == positive_label);
    if !present {
        return Err(Error::Evaluation(format!(
            "positive label `{positive_label}` does not occur"
        )));
    }
    let mut cm = BinaryConfusion::default();
    for (a, p) in actual.iter().zip(predicted) {
        match (a.as_ref() == positive_label, p.as_ref() == positive_label) {
            (true, true) => cm.tp += 1,
            (false, true) => cm.fp += 1,
            (true, false) => cm.fn_ += 1,
            (false, false) => cm.tn += 1,
        }
    }
    Ok(cm)
}

/// Accuracy, precision, recall and MCC. `None` marks a metric whose
/// denominator is zero and serializes as `"-"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricReport {
    #[serde(serialize_with = "dash")]
    pub accuracy: Option<f64>,
    #[serde(serialize_with = "dash")]
    pub precision: Option<f64>,
    #[serde(serialize_with = "dash")]
    pub recall: Option<f64>,
    #[serde(serialize_with = "dash")]
    pub mcc: Option<f64>,
}

fn dash<S: Serializer>(value: &Option<f64>, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    match value {
        Some(v) => serializer.serialize_f64(*v),
        None => serializer.serialize_str("-"),
    }
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den != 0.0).then(|| num / den)
}

pub fn metrics(cm: &BinaryConfusion) -> MetricReport {
    let (tp, fp, fn_, tn) = (cm.tp as f64, cm.fp as f64, cm.fn_ as f64, cm.tn as f64);
    let den = ((tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_)).sqrt();
    MetricReport {
        accuracy: ratio(tp + tn, tp + tn + fp + fn_),
        precision: ratio(tp, tp + fp),
        recall: ratio(tp, tp + fn_),
        mcc: ratio(tp * tn - fp * fn_, den).map(|m| m.clamp(-1.0, 1.0)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalConfig {
    pub folds: usize,
    pub knn_k: usize,
    pub seed: u64,
    /// Positive class for binary metrics; defaults to the first class seen.
    /// Only valid on two-class data.
    pub positive: Option<String>,
    pub stratified: bool,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            folds: 5,
            knn_k: 3,
            seed: 1,
            positive: None,
            stratified: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    #[serde(flatten)]
    pub metrics: MetricReport,
    pub folds: usize,
    /// Folds in which at least one binary metric was undefined; those folds
    /// are left out of that metric's average.
    pub undefined_folds: usize,
    /// `None` on data with more than two classes.
    pub positive: Option<String>,
    pub per_fold: Vec<MetricReport>,
}

/// k-fold cross-validated nearest-neighbour scores of the attributes in
/// `mask`, averaged over folds. Precision, recall and MCC need exactly two
/// classes; on other data they are reported as undefined.
pub fn evaluate_subset(
    his: &HybridInformationSystem,
    mask: &FeatureMask,
    config: &EvalConfig,
) -> Result<EvaluationReport> {
    let partition = his.partition();
    let n = his.n_objects();
    let binary = partition.n_classes() == 2;
    let positive = match (&config.positive, binary) {
        (Some(label), true) => Some(
            partition
                .labels()
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| {
                    Error::Evaluation(format!("positive label `{label}` is not a class"))
                })?,
        ),
        (Some(_), false) => {
            return Err(Error::Evaluation(format!(
                "binary metrics need two classes, the data has {}",
                partition.n_classes()
            )))
        }
        (None, true) => Some(0),
        (None, false) => None,
    };
    let folds = kfold_split(
        n,
        config.folds,
        config.seed,
        config.stratified.then_some(partition),
    )?;

    let mut per_fold = Vec::with_capacity(folds.len());
    for (f, test) in folds.iter().enumerate() {
        let train: Vec<usize> = folds
            .iter()
            .enumerate()
            .filter(|&(g, _)| g != f)
            .flat_map(|(_, fold)| fold.iter().copied())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let predicted = knn_classify(his, &train, test, mask, config.knn_k)?;
        let actual: Vec<usize> = test.iter().map(|&i| partition.class_of(i)).collect();
        let multi = MulticlassConfusion::from_indices(partition.n_classes(), &actual, &predicted)?;
        let report = match positive {
            Some(c) => metrics(&multi.binary(c)),
            None => MetricReport {
                accuracy: multi.accuracy(),
                precision: None,
                recall: None,
                mcc: None,
            },
        };
        per_fold.push(report);
    }

    let mean = |get: fn(&MetricReport) -> Option<f64>| {
        let defined: Vec<f64> = per_fold.iter().filter_map(get).collect();
        (!defined.is_empty()).then(|| defined.iter().sum::<f64>() / defined.len() as f64)
    };
    let undefined_folds = if binary {
        per_fold
            .iter()
            .filter(|r| r.precision.is_none() || r.recall.is_none() || r.mcc.is_none())
            .count()
    } else {
        0
    };
    Ok(EvaluationReport {
        metrics: MetricReport {
            accuracy: mean(|r| r.accuracy),
            precision: mean(|r| r.precision),
            recall: mean(|r| r.recall),
            mcc: mean(|r| r.mcc),
        },
        folds: folds.len(),
        undefined_folds,
        positive: positive.map(|c| partition.labels()[c].clone()),
        per_fold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::his::{load_dataset, parse_schema, Attribute, AttributeKind, AttributeValue};

    fn flu() -> HybridInformationSystem {
        let schema = parse_schema(include_str!("../../../data/flu/schema.json")).unwrap();
        load_dataset(
            include_str!("../../../data/flu/flu.csv").as_bytes(),
            &schema,
        )
        .unwrap()
    }

    fn labels(tp: u64, fp: u64, fn_: u64, tn: u64) -> (Vec<&'static str>, Vec<&'static str>) {
        let mut actual = Vec::new();
        let mut predicted = Vec::new();
        for (n, a, p) in [
            (tp, "P", "P"),
            (fp, "N", "P"),
            (fn_, "P", "N"),
            (tn, "N", "N"),
        ] {
            for _ in 0..n {
                actual.push(a);
                predicted.push(p);
            }
        }
        (actual, predicted)
    }

    /// Two well separated clusters on one real attribute, plus a noise flag.
    fn separable() -> HybridInformationSystem {
        let attrs = vec![
            Attribute::new("x", AttributeKind::Real),
            Attribute::new("flag", AttributeKind::boolean()),
        ];
        let mut objects = Vec::new();
        let mut decision = Vec::new();
        for i in 0..20 {
            let (x, label) = if i % 2 == 0 {
                (i as f64 * 0.01, "a")
            } else {
                (100.0 + i as f64 * 0.01, "b")
            };
            objects.push(vec![
                AttributeValue::Real(x),
                AttributeValue::Boolean(i % 3 == 0),
            ]);
            decision.push(label.to_string());
        }
        HybridInformationSystem::new(attrs, "D", objects, decision).unwrap()
    }

    #[test]
    fn fold_sizes() {
        let folds = kfold_split(10, 5, 1, None).unwrap();
        assert!(folds.iter().all(|f| f.len() == 2));
        let folds = kfold_split(7, 5, 1, None).unwrap();
        let sizes: Vec<usize> = folds.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![2, 2, 1, 1, 1]);
        let mut all: Vec<usize> = folds.concat();
        all.sort_unstable();
        assert_eq!(all, (0..7).collect::<Vec<_>>());
        assert_eq!(kfold_split(7, 5, 1, None).unwrap(), folds);
        assert!(kfold_split(3, 4, 1, None).is_err());
        assert!(kfold_split(3, 1, 1, None).is_err());
    }

    #[test]
    fn stratified_folds_spread_classes() {
        let his = separable();
        let folds = kfold_split(20, 5, 3, Some(his.partition())).unwrap();
        for fold in &folds {
            let a = fold
                .iter()
                .filter(|&&i| his.partition().class_of(i) == 0)
                .count();
            assert_eq!((fold.len(), a), (4, 2));
        }
    }

    #[test]
    fn flu_leave_one_out() {
        let his = flu();
        let mask = FeatureMask::all(4);
        let predicted: Vec<&str> = (0..7)
            .map(|t| {
                let train: Vec<usize> = (0..7).filter(|&i| i != t).collect();
                let c = knn_classify(&his, &train, &[t], &mask, 3).unwrap()[0];
                his.partition().labels()[c].as_str()
            })
            .collect();
        assert_eq!(
            predicted,
            ["Flu", "Flu", "Health", "Flu", "Health", "Rhinitis", "Flu"]
        );
    }

    #[test]
    fn knn_trivial_cases() {
        let his = flu();
        let mask = FeatureMask::all(4);
        // x1 and x2 share every attribute but fever; x1 is its own nearest
        let got = knn_classify(&his, &[0, 3, 4], &[0], &mask, 1).unwrap();
        assert_eq!(got, vec![0]);
        let got = knn_classify(&his, &[0, 1, 2], &[5], &mask, 3).unwrap();
        assert_eq!(got, vec![0]);
        assert!(knn_classify(&his, &[0, 1], &[5], &FeatureMask::none(4), 1).is_err());
        assert!(knn_classify(&his, &[], &[5], &mask, 1).is_err());
    }

    #[test]
    fn vote_tie_goes_to_closest_class() {
        // training objects at 0 (class a) and 2 (class b); query at 1.1
        let attrs = vec![Attribute::new("x", AttributeKind::Real)];
        let objects = [0.0, 2.0, 1.1, 0.9]
            .iter()
            .map(|&x| vec![AttributeValue::Real(x)])
            .collect();
        let decision = ["a", "b", "a", "b"].iter().map(|s| s.to_string()).collect();
        let his = HybridInformationSystem::new(attrs, "D", objects, decision).unwrap();
        let mask = FeatureMask::all(1);
        assert_eq!(
            knn_classify(&his, &[0, 1], &[2], &mask, 2).unwrap(),
            vec![1]
        );
        assert_eq!(
            knn_classify(&his, &[0, 1], &[3], &mask, 2).unwrap(),
            vec![0]
        );
    }

    #[test]
    fn vote_tie_at_equal_distance_goes_to_first_class() {
        let attrs = vec![Attribute::new("x", AttributeKind::Real)];
        let objects = [0.0, 2.0, 1.0]
            .iter()
            .map(|&x| vec![AttributeValue::Real(x)])
            .collect();
        let decision = ["a", "b", "b"].iter().map(|s| s.to_string()).collect();
        let his = HybridInformationSystem::new(attrs, "D", objects, decision).unwrap();
        let mask = FeatureMask::all(1);
        assert_eq!(
            knn_classify(&his, &[1, 0], &[2], &mask, 2).unwrap(),
            vec![0]
        );
    }

    #[test]
    fn training_order_does_not_matter() {
        let his = flu();
        let mask = FeatureMask::new(vec![true, false, true, true]);
        let test = [2, 6];
        let a = knn_classify(&his, &[0, 1, 3, 4, 5], &test, &mask, 3).unwrap();
        let b = knn_classify(&his, &[5, 3, 4, 1, 0], &test, &mask, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn test_fold_outlier_does_not_leak_into_scaling() {
        let attrs = vec![
            Attribute::new("x", AttributeKind::Real),
            Attribute::new("y", AttributeKind::Real),
        ];
        let points = [
            (0.0, 0.0),
            (2.0, 0.0),
            (0.0, 3.0),
            (2.0, 3.0),
            (1.2, 0.0),
            (1e6, 0.0),
        ];
        let objects = points
            .iter()
            .map(|&(x, y)| vec![AttributeValue::Real(x), AttributeValue::Real(y)])
            .collect();
        let decision = ["a", "b", "a", "b", "a", "b"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let his = HybridInformationSystem::new(attrs, "D", objects, decision).unwrap();
        let mask = FeatureMask::all(2);
        let alone = knn_classify(&his, &[0, 1, 2, 3], &[4], &mask, 1).unwrap();
        let with_outlier = knn_classify(&his, &[0, 1, 2, 3], &[4, 5], &mask, 1).unwrap();
        assert_eq!(alone[0], with_outlier[0]);
        // on the training scale (1.2, 0) is nearest to (2, 0); had the outlier
        // entered the x scale, x would vanish and (0, 0) would win the tie
        assert_eq!(alone, vec![1]);
    }

    #[test]
    fn confusion_counts() {
        let (a, p) = labels(50, 10, 5, 35);
        let cm = confusion(&a, &p, "P").unwrap();
        assert_eq!((cm.tp, cm.fp, cm.fn_, cm.tn), (50, 10, 5, 35));
        let all = vec!["P"; 6];
        let cm = confusion(&all, &all, "P").unwrap();
        assert_eq!((cm.tp, cm.fp, cm.fn_, cm.tn), (6, 0, 0, 0));
        let (a, p) = labels(3, 0, 0, 4);
        let flipped: Vec<&str> = p
            .iter()
            .map(|&l| if l == "P" { "N" } else { "P" })
            .collect();
        let cm = confusion(&a, &flipped, "P").unwrap();
        assert_eq!((cm.tp, cm.tn), (0, 0));
        assert!(confusion(&a, &p, "Z").is_err());
        assert!(confusion(&a[..2], &p, "P").is_err());
    }

    #[test]
    fn metric_formulas() {
        let m = metrics(&BinaryConfusion {
            tp: 50,
            fp: 10,
            fn_: 5,
            tn: 35,
        });
        assert!((m.accuracy.unwrap() - 0.85).abs() < 1e-12);
        assert!((m.precision.unwrap() - 50.0 / 60.0).abs() < 1e-12);
        assert!((m.recall.unwrap() - 50.0 / 55.0).abs() < 1e-12);
        assert!((m.mcc.unwrap() - 1700.0 / 5_940_000f64.sqrt()).abs() < 1e-12);

        let m = metrics(&BinaryConfusion {
            tp: 0,
            fp: 0,
            fn_: 4,
            tn: 6,
        });
        assert_eq!(m.precision, None);
        assert_eq!(m.mcc, None);
        let json = serde_json::to_value(m).unwrap();
        assert_eq!(json["precision"], "-");
        assert_eq!(json["recall"], 0.0);

        let m = metrics(&BinaryConfusion {
            tp: 7,
            fp: 0,
            fn_: 0,
            tn: 3,
        });
        assert_eq!(
            (m.accuracy, m.precision, m.recall, m.mcc),
            (Some(1.0), Some(1.0), Some(1.0), Some(1.0))
        );
    }

    #[test]
    fn separable_data_scores_perfectly() {
        let his = separable();
        for mask in [FeatureMask::all(2), FeatureMask::new(vec![true, false])] {
            let report = evaluate_subset(&his, &mask, &EvalConfig::default()).unwrap();
            assert_eq!(report.metrics.accuracy, Some(1.0));
            assert_eq!(report.metrics.mcc, Some(1.0));
            assert_eq!(report.undefined_folds, 0);
            assert_eq!(report.positive.as_deref(), Some("a"));
        }
    }

    #[test]
    fn evaluation_is_deterministic_and_validated() {
        let his = flu();
        let config = EvalConfig {
            folds: 3,
            ..Default::default()
        };
        let a = evaluate_subset(&his, &FeatureMask::all(4), &config).unwrap();
        let b = evaluate_subset(&his, &FeatureMask::all(4), &config).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.folds, 3);
        assert_eq!(a.metrics.precision, None);
        assert_eq!(a.positive, None);
        let json = serde_json::to_value(&a).unwrap();
        assert_eq!(json["mcc"], "-");
        assert!(evaluate_subset(&his, &FeatureMask::none(4), &config).is_err());
        let binary_on_three = EvalConfig {
            positive: Some("Flu".into()),
            ..config
        };
        assert!(evaluate_subset(&his, &FeatureMask::all(4), &binary_on_three).is_err());
    }

    #[test]
    fn multiclass_accuracy_is_trace_over_total() {
        let cm = MulticlassConfusion::from_indices(3, &[0, 1, 2, 2, 1], &[0, 2, 2, 2, 1]).unwrap();
        assert_eq!(cm.accuracy(), Some(0.8));
        let b = cm.binary(2);
        assert_eq!((b.tp, b.fp, b.fn_, b.tn), (2, 1, 0, 2));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn mcc_is_bounded(tp in 0u64..500, fp in 0u64..500, fn_ in 0u64..500, tn in 0u64..500) {
                let m = metrics(&BinaryConfusion { tp, fp, fn_, tn });
                if let Some(mcc) = m.mcc {
                    prop_assert!((-1.0..=1.0).contains(&mcc));
                }
                let den_zero = (tp + fp) * (tp + fn_) * (tn + fp) * (tn + fn_) == 0;
                prop_assert_eq!(m.mcc.is_none(), den_zero);
            }

            #[test]
            fn folds_partition_indices(n in 2usize..60, k in 2usize..10, seed in any::<u64>()) {
                prop_assume!(k <= n);
                let folds = kfold_split(n, k, seed, None).unwrap();
                let sizes: Vec<usize> = folds.iter().map(Vec::len).collect();
                prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
                let mut all = folds.concat();
                all.sort_unstable();
                prop_assert_eq!(all, (0..n).collect::<Vec<_>>());
            }
        }
    }
}
