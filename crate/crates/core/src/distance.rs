//! Per-attribute distances and the hybrid distance matrix.
//!
//! | kind        | distance                      | statistic            |
//! |-------------|-------------------------------|----------------------|
//! | boolean     | 0 if equal, else 1            | –                    |
//! | categorical | 0 if equal, else 1            | –                    |
//! | real        | `|u - v| / (4 σ)`             | sample std. dev. σ   |
//! | set         | `1 - |u ∩ v| / s`             | max cardinality s    |
//! | linguistic  | `|c(u) - c(v)| / (4 σ)`       | σ of the centroids   |
//!
//! The hybrid distance of two objects is the Euclidean aggregate of these,
//! `hd(x, y) = sqrt(Σ_k d_k(x, y)²)`, always summed in attribute order so the
//! result does not depend on how pairs are scheduled.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::fuzzy::TermTable;
use crate::his::{Attribute, AttributeKind, AttributeValue, HybridInformationSystem};
use crate::matrix::SquareMatrix;
use crate::{Error, Result};

/// Scale statistic for one attribute.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "stat", rename_all = "snake_case")]
pub enum AttributeStat {
    /// Boolean and categorical columns need no statistic.
    Mismatch,
    /// Sample standard deviation (divisor `n - 1`) of a real column, or of the
    /// defuzzified values of a linguistic column.
    Scale { sigma: f64 },
    /// Largest observed set cardinality.
    Cardinality { max: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct AttributeStats {
    per_attribute: Vec<AttributeStat>,
}

impl AttributeStats {
    /// Statistics computed over a subset of objects, e.g. a training fold.
    pub fn from_rows(his: &HybridInformationSystem, rows: &[usize]) -> Self {
        let per_attribute = his
            .attributes()
            .iter()
            .enumerate()
            .map(|(k, attr)| match &attr.kind {
                AttributeKind::Boolean { .. } | AttributeKind::Categorical => {
                    AttributeStat::Mismatch
                }
                AttributeKind::Real => AttributeStat::Scale {
                    sigma: sample_std(rows.iter().map(|&i| real(his.value(i, k)))),
                },
                AttributeKind::Linguistic(table) => AttributeStat::Scale {
                    sigma: sample_std(rows.iter().map(|&i| {
                        table
                            .centroid(label(his.value(i, k)))
                            .expect("labels are validated at load")
                    })),
                },
                AttributeKind::Set { .. } => AttributeStat::Cardinality {
                    max: rows
                        .iter()
                        .map(|&i| set(his.value(i, k)).len())
                        .max()
                        .unwrap_or(1)
                        .max(1),
                },
            })
            .collect();
        Self { per_attribute }
    }

    pub fn get(&self, k: usize) -> AttributeStat {
        self.per_attribute[k]
    }

    pub fn len(&self) -> usize {
        self.per_attribute.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_attribute.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &AttributeStat> {
        self.per_attribute.iter()
    }
}

pub fn compute_stats(his: &HybridInformationSystem) -> AttributeStats {
    let all: Vec<usize> = (0..his.n_objects()).collect();
    AttributeStats::from_rows(his, &all)
}

/// Sample standard deviation; 0 for fewer than two values.
pub fn sample_std<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let values: Vec<f64> = values.into_iter().collect();
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (ss / (n - 1) as f64).sqrt()
}

/// 0/1 mismatch distance for boolean and categorical values.
pub fn bd<T: PartialEq + ?Sized>(u: &T, v: &T) -> f64 {
    if u == v {
        0.0
    } else {
        1.0
    }
}

/// Scaled absolute difference. A zero scale means the column carried no
/// spread in the sample the scale came from, and the attribute contributes 0.
pub fn rd(u: f64, v: f64, sigma: f64) -> f64 {
    if sigma == 0.0 {
        0.0
    } else {
        (u - v).abs() / (4.0 * sigma)
    }
}

pub fn sd(u: &BTreeSet<String>, v: &BTreeSet<String>, s: usize) -> f64 {
    debug_assert!(s >= 1);
    1.0 - u.intersection(v).count() as f64 / s as f64
}

pub fn ld(u: &str, v: &str, table: &TermTable, sigma: f64) -> Result<f64> {
    Ok(rd(table.centroid(u)?, table.centroid(v)?, sigma))
}

/// Dispatches on the attribute kind. Values must carry the column's tag.
pub fn attribute_distance(
    attr: &Attribute,
    stat: AttributeStat,
    u: &AttributeValue,
    v: &AttributeValue,
) -> f64 {
    use AttributeValue as V;
    match (&attr.kind, stat, u, v) {
        (_, _, V::Boolean(a), V::Boolean(b)) => bd(a, b),
        (_, _, V::Categorical(a), V::Categorical(b)) => bd(a, b),
        (_, AttributeStat::Scale { sigma }, V::Real(a), V::Real(b)) => rd(*a, *b, sigma),
        (_, AttributeStat::Cardinality { max }, V::Set(a), V::Set(b)) => sd(a, b, max),
        (
            AttributeKind::Linguistic(table),
            AttributeStat::Scale { sigma },
            V::Linguistic(a),
            V::Linguistic(b),
        ) => ld(a, b, table, sigma).expect("labels are validated at load"),
        _ => panic!(
            "attribute `{}`: value kinds {} / {} do not match its statistic {stat:?}",
            attr.name,
            u.tag(),
            v.tag()
        ),
    }
}

/// Squared per-attribute distances between two records, in attribute order.
pub fn squared_distances<'a>(
    attributes: &'a [Attribute],
    stats: &'a AttributeStats,
    x: &'a [AttributeValue],
    y: &'a [AttributeValue],
) -> impl Iterator<Item = f64> + 'a {
    attributes.iter().enumerate().map(move |(k, attr)| {
        let d = attribute_distance(attr, stats.get(k), &x[k], &y[k]);
        d * d
    })
}

/// Per-pair, per-attribute squared distances for a chosen list of pairs, plus
/// the full hybrid distance matrix.
#[derive(Debug, Clone)]
pub struct DistanceDecomposition {
    n_attributes: usize,
    pairs: Vec<(usize, usize)>,
    sq: Vec<f64>,
    hd: SquareMatrix,
}

impl DistanceDecomposition {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn n_attributes(&self) -> usize {
        self.n_attributes
    }

    pub fn hd(&self) -> &SquareMatrix {
        &self.hd
    }

    /// Squared distances of the `idx`-th stored pair.
    pub fn row(&self, idx: usize) -> &[f64] {
        &self.sq[idx * self.n_attributes..(idx + 1) * self.n_attributes]
    }

    /// Squared distances for pair `(i, j)` if it was decomposed.
    pub fn pair_row(&self, i: usize, j: usize) -> Option<&[f64]> {
        let key = if i < j { (i, j) } else { (j, i) };
        self.pairs.binary_search(&key).ok().map(|idx| self.row(idx))
    }
}

/// Fills the per-attribute squared distances for `pairs` and computes the
/// hybrid distance matrix over all pairs.
pub fn decompose(
    his: &HybridInformationSystem,
    stats: &AttributeStats,
    pairs: &[(usize, usize)],
) -> Result<DistanceDecomposition> {
    let n = his.n_objects();
    let m = his.n_attributes();
    let mut pairs: Vec<(usize, usize)> = pairs
        .iter()
        .map(|&(i, j)| if i < j { (i, j) } else { (j, i) })
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    if let Some(&(i, j)) = pairs.iter().find(|&&(i, j)| i == j || j >= n) {
        return Err(Error::Parameter(format!(
            "pair ({i}, {j}) is not a pair of distinct objects among {n}"
        )));
    }
    let attrs = his.attributes();
    let mut sq = Vec::with_capacity(pairs.len() * m);
    let mut hd = SquareMatrix::zeros(n);
    let mut next = pairs.iter().peekable();
    let mut buf = Vec::with_capacity(m);
    for i in 0..n {
        for j in i + 1..n {
            buf.clear();
            buf.extend(squared_distances(
                attrs,
                stats,
                his.object(i),
                his.object(j),
            ));
            let d = buf.iter().sum::<f64>().sqrt();
            hd.set(i, j, d);
            hd.set(j, i, d);
            if next.peek() == Some(&&(i, j)) {
                next.next();
                sq.extend_from_slice(&buf);
            }
        }
    }
    Ok(DistanceDecomposition {
        n_attributes: m,
        pairs,
        sq,
        hd,
    })
}

/// Symmetric hybrid distance matrix with a zero diagonal.
pub fn hd_matrix(his: &HybridInformationSystem, stats: &AttributeStats) -> SquareMatrix {
    decompose(his, stats, &[])
        .expect("empty pair list is always valid")
        .hd
}

fn real(v: &AttributeValue) -> f64 {
    match v {
        AttributeValue::Real(x) => *x,
        _ => unreachable!("column tag validated at load"),
    }
}

fn label(v: &AttributeValue) -> &str {
    match v {
        AttributeValue::Linguistic(s) => s,
        _ => unreachable!("column tag validated at load"),
    }
}

fn set(v: &AttributeValue) -> &BTreeSet<String> {
    match v {
        AttributeValue::Set(s) => s,
        _ => unreachable!("column tag validated at load"),
    }
}
