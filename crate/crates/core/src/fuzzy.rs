//! Trapezoidal fuzzy numbers and the closed-form centroid used to turn
//! linguistic terms into crisp values.
//!
//! The centroid here is the weighted form `(3a + b + 3c + 2d) / 9`. It is not
//! the centre of gravity of the membership function: for `(0, 1, 1, 3)` the
//! integral centroid is `4/3` whereas this form gives `10/9`. All downstream
//! statistics (attribute standard deviations, linguistic distances) are
//! computed from this form.

use indexmap::IndexMap;
use serde::Serialize;

use crate::{Error, Result};

/// A trapezoidal fuzzy number `(a, b, c, d)` with plateau `[b, c]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrapezoidalFuzzyNumber {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl TrapezoidalFuzzyNumber {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let finite = [a, b, c, d].iter().all(|v| v.is_finite());
        if !finite || a > b || b > c || c > d {
            return Err(Error::InvalidTrapezoid { a, b, c, d });
        }
        Ok(Self { a, b, c, d })
    }

    pub fn points(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_triangular(&self) -> bool {
        self.b == self.c
    }

    /// Piecewise-linear membership degree of `t`.
    ///
    /// A vertical flank (`a == b` or `c == d`) belongs to the plateau, so the
    /// boundary point maps to 1.
    pub fn membership(&self, t: f64) -> f64 {
        let Self { a, b, c, d } = *self;
        if t < a || t > d {
            0.0
        } else if t >= b && t <= c {
            1.0
        } else if t < b {
            (t - a) / (b - a)
        } else {
            (d - t) / (d - c)
        }
    }

    pub fn centroid(&self) -> f64 {
        (3.0 * self.a + self.b + 3.0 * self.c + 2.0 * self.d) / 9.0
    }
}

pub fn membership(tfn: &TrapezoidalFuzzyNumber, t: f64) -> f64 {
    tfn.membership(t)
}

pub fn centroid(tfn: &TrapezoidalFuzzyNumber) -> f64 {
    tfn.centroid()
}

#[derive(Debug, Clone, PartialEq)]
struct Term {
    number: TrapezoidalFuzzyNumber,
    centroid: f64,
}

/// Linguistic term table: label -> trapezoid, in declaration order, with the
/// centroid of each term cached.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TermTable {
    terms: IndexMap<String, Term>,
}

impl TermTable {
    pub fn new<I, S>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, TrapezoidalFuzzyNumber)>,
        S: Into<String>,
    {
        let mut table = IndexMap::new();
        for (label, number) in terms {
            let label = label.into();
            let term = Term {
                number,
                centroid: number.centroid(),
            };
            if table.insert(label.clone(), term).is_some() {
                return Err(Error::Schema(format!(
                    "duplicate linguistic term `{label}`"
                )));
            }
        }
        Ok(Self { terms: table })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.terms.contains_key(label)
    }

    pub fn get(&self, label: &str) -> Option<&TrapezoidalFuzzyNumber> {
        self.terms.get(label).map(|t| &t.number)
    }

    pub fn centroid(&self, label: &str) -> Result<f64> {
        self.terms
            .get(label)
            .map(|t| t.centroid)
            .ok_or_else(|| Error::UnknownTerm(label.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &TrapezoidalFuzzyNumber)> {
        self.terms.iter().map(|(k, t)| (k.as_str(), &t.number))
    }
}

/// Replaces each linguistic label by its term's centroid.
pub fn defuzzify_column<S: AsRef<str>>(values: &[S], table: &TermTable) -> Result<Vec<f64>> {
    values.iter().map(|v| table.centroid(v.as_ref())).collect()
}
