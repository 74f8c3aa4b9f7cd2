use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{FeatureMask, SelectionModel};
use crate::solve::{reverse_delete, SolveResult, SolverKind};
use crate::{Error, Result};

/// Black-hole search parameters. Random numbers come from ChaCha8 seeded with
/// `seed`, so a seed reproduces the same run on every platform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlackHoleParams {
    pub population: usize,
    pub max_iterations: usize,
    pub seed: u64,
    /// A coordinate above this value switches its feature on.
    pub binarization_threshold: f64,
}

impl Default for BlackHoleParams {
    fn default() -> Self {
        Self {
            population: 30,
            max_iterations: 500,
            seed: 1,
            binarization_threshold: 0.5,
        }
    }
}

impl BlackHoleParams {
    pub fn validate(&self) -> Result<()> {
        if self.population < 2 {
            return Err(Error::Parameter("population must be at least 2".into()));
        }
        if self.max_iterations < 1 {
            return Err(Error::Parameter("max_iterations must be at least 1".into()));
        }
        if !(self.binarization_threshold > 0.0 && self.binarization_threshold < 1.0) {
            return Err(Error::Parameter(format!(
                "binarization threshold must lie in (0, 1), got {}",
                self.binarization_threshold
            )));
        }
        Ok(())
    }
}

struct Evaluator<'a> {
    model: &'a SelectionModel,
    penalty: usize,
    cache: HashMap<Vec<bool>, usize>,
}

impl Evaluator<'_> {
    /// `Σχ + (p + 1) · violated rows`: any feasible mask beats any infeasible one.
    fn fitness(&mut self, mask: &FeatureMask) -> usize {
        if let Some(&f) = self.cache.get(mask.bits()) {
            return f;
        }
        let f = mask.count() + self.penalty * self.model.violations(mask);
        self.cache.insert(mask.bits().to_vec(), f);
        f
    }
}

struct Incumbent {
    best: Option<FeatureMask>,
    seen: HashSet<Vec<bool>>,
}

impl Incumbent {
    /// Shrinks a feasible mask to a 1-minimal one and keeps it if it is the
    /// smallest so far.
    fn offer(&mut self, model: &SelectionModel, mask: &FeatureMask, fitness: usize) {
        if fitness > model.p() || !self.seen.insert(mask.bits().to_vec()) {
            return;
        }
        let mut reduced = mask.clone();
        reverse_delete(model, &mut reduced, (0..model.p()).rev());
        if self
            .best
            .as_ref()
            .is_none_or(|b| reduced.count() < b.count())
        {
            self.best = Some(reduced);
        }
    }

    fn objective(&self) -> Option<usize> {
        self.best.as_ref().map(FeatureMask::count)
    }
}

pub fn solve_blackhole(model: &SelectionModel, params: BlackHoleParams) -> Result<SolveResult> {
    params.validate()?;
    let p = model.p();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut eval = Evaluator {
        model,
        penalty: p + 1,
        cache: HashMap::new(),
    };
    let mut incumbent = Incumbent {
        best: None,
        seen: HashSet::new(),
    };
    let binarize = |x: &[f64]| {
        FeatureMask::new(
            x.iter()
                .map(|&v| v > params.binarization_threshold)
                .collect(),
        )
    };
    let fresh = |rng: &mut ChaCha8Rng| (0..p).map(|_| rng.random::<f64>()).collect::<Vec<f64>>();

    let mut stars: Vec<Vec<f64>> = (0..params.population).map(|_| fresh(&mut rng)).collect();
    let mut fitness = Vec::with_capacity(stars.len());
    for x in &stars {
        let mask = binarize(x);
        let f = eval.fitness(&mask);
        incumbent.offer(model, &mask, f);
        fitness.push(f);
    }
    let mut hole = argmin(&fitness);
    let mut best_seen = (fitness[hole], binarize(&stars[hole]));

    let mut iterations = 0u64;
    for _ in 0..params.max_iterations {
        if incumbent.objective() == Some(0) {
            break;
        }
        iterations += 1;
        let target = stars[hole].clone();
        for i in 0..stars.len() {
            if i == hole {
                continue;
            }
            for (x, &t) in stars[i].iter_mut().zip(&target) {
                let u: f64 = rng.random();
                *x += u * (t - *x);
            }
            let mask = binarize(&stars[i]);
            fitness[i] = eval.fitness(&mask);
            incumbent.offer(model, &mask, fitness[i]);
            if fitness[i] < best_seen.0 {
                best_seen = (fitness[i], mask);
            }
        }
        hole = argmin(&fitness);

        let total: usize = fitness.iter().sum();
        let radius = if total == 0 {
            0.0
        } else {
            fitness[hole] as f64 / total as f64
        };
        let centre = stars[hole].clone();
        for i in 0..stars.len() {
            if i != hole && euclidean(&stars[i], &centre) < radius {
                stars[i] = fresh(&mut rng);
                let mask = binarize(&stars[i]);
                fitness[i] = eval.fitness(&mask);
                incumbent.offer(model, &mask, fitness[i]);
                if fitness[i] < best_seen.0 {
                    best_seen = (fitness[i], mask);
                }
            }
        }
        hole = argmin(&fitness);
    }

    let (mask, feasible) = match incumbent.best {
        Some(mask) => (mask, true),
        None => (best_seen.1, false),
    };
    Ok(SolveResult {
        objective: mask.count(),
        mask,
        feasible,
        solver: SolverKind::Blackhole,
        seed: Some(params.seed),
        iterations_used: iterations,
        proven_optimal: false,
    })
}

/// Index of the smallest value; the lowest index wins ties.
fn argmin(values: &[usize]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v < values[best] {
            best = i;
        }
    }
    best
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
