//! Synthetic inputs for the benchmarks.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hdsel::{
    Attribute, AttributeKind, AttributeValue, HybridInformationSystem, TermTable,
    TrapezoidalFuzzyNumber,
};

const SET_DOMAIN: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
const TERMS: [&str; 3] = ["Low", "Mid", "High"];

/// `n` objects in `classes` classes over `m` attributes cycling through the
/// five kinds. Each attribute is mildly informative: the class shifts its
/// distribution.
pub fn synthetic_his(n: usize, m: usize, classes: usize, seed: u64) -> HybridInformationSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms = TermTable::new([
        (
            TERMS[0],
            TrapezoidalFuzzyNumber::new(0.0, 0.0, 1.0, 3.0).unwrap(),
        ),
        (
            TERMS[1],
            TrapezoidalFuzzyNumber::new(2.0, 4.0, 5.0, 7.0).unwrap(),
        ),
        (
            TERMS[2],
            TrapezoidalFuzzyNumber::new(6.0, 8.0, 10.0, 10.0).unwrap(),
        ),
    ])
    .unwrap();
    let attributes: Vec<Attribute> = (0..m)
        .map(|k| {
            let kind = match k % 5 {
                0 => AttributeKind::boolean(),
                1 => AttributeKind::Categorical,
                2 => AttributeKind::Real,
                3 => AttributeKind::set(),
                _ => AttributeKind::Linguistic(terms.clone()),
            };
            Attribute::new(format!("a{}", k + 1), kind)
        })
        .collect();
    let mut objects = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let class = i % classes;
        let bias = class as f64 / classes.max(2) as f64;
        let row = attributes
            .iter()
            .map(|a| match a.kind {
                AttributeKind::Boolean { .. } => {
                    AttributeValue::Boolean(rng.random_bool(0.2 + 0.6 * bias))
                }
                AttributeKind::Categorical => {
                    let v = (class + usize::from(rng.random_bool(0.3))) % 4;
                    AttributeValue::Categorical(format!("v{v}"))
                }
                AttributeKind::Real => {
                    AttributeValue::Real(4.0 * bias + rng.random_range(-1.0..1.0))
                }
                AttributeKind::Set { .. } => {
                    let mut items = BTreeSet::new();
                    items.insert(SET_DOMAIN[class % SET_DOMAIN.len()].to_string());
                    items.insert(SET_DOMAIN[rng.random_range(0..SET_DOMAIN.len())].to_string());
                    AttributeValue::Set(items)
                }
                AttributeKind::Linguistic(_) => {
                    let t = if rng.random_bool(0.7) {
                        class % 3
                    } else {
                        rng.random_range(0..3)
                    };
                    AttributeValue::Linguistic(TERMS[t].to_string())
                }
            })
            .collect();
        objects.push(row);
        labels.push(format!("c{class}"));
    }
    HybridInformationSystem::new(attributes, "class", objects, labels).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_and_determinism() {
        let a = synthetic_his(40, 7, 3, 9);
        assert_eq!(a.n_objects(), 40);
        assert_eq!(a.n_attributes(), 7);
        assert_eq!(a.partition().n_classes(), 3);
        assert_eq!(a, synthetic_his(40, 7, 3, 9));
    }
}
