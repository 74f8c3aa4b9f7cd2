//! Writes the synthetic three-class animal table under `data/zoo3/`.
//!
//! ```text
//! cargo run -p hdsel-core --example make_zoo -- data/zoo3
//! ```
//!
//! Classes have 35 members each. Anatomy attributes follow the class with a
//! small flip probability; mass and the two habitats overlap between classes;
//! the last three flags are pure noise.

use std::fs;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2024;
const PER_CLASS: usize = 35;
const FLIP: f64 = 0.04;

const SCHEMA: &str = r#"{
  "attributes": [
    { "name": "hair", "kind": "boolean" },
    { "name": "feathers", "kind": "boolean" },
    { "name": "eggs", "kind": "boolean" },
    { "name": "milk", "kind": "boolean" },
    { "name": "airborne", "kind": "boolean" },
    { "name": "aquatic", "kind": "boolean" },
    { "name": "fins", "kind": "boolean" },
    { "name": "legs", "kind": "categorical" },
    { "name": "mass_kg", "kind": "real" },
    { "name": "habitat", "kind": "set", "set_delimiter": ";",
      "domain": ["forest", "grassland", "river", "sea", "sky", "urban"] },
    { "name": "size", "kind": "linguistic", "terms": {
        "Small": [0, 0, 1, 3],
        "Medium": [2, 4, 5, 7],
        "Large": [6, 8, 10, 10] } },
    { "name": "domestic", "kind": "boolean" },
    { "name": "predator", "kind": "boolean" },
    { "name": "venomous", "kind": "boolean" }
  ],
  "decision": "class"
}
"#;

struct Profile {
    name: &'static str,
    anatomy: [bool; 7],
    legs: &'static [(&'static str, f64)],
    log_mass: (f64, f64),
    habitats: &'static [(&'static str, f64)],
}

const PROFILES: [Profile; 3] = [
    Profile {
        name: "mammal",
        anatomy: [true, false, false, true, false, false, false],
        legs: &[("4", 0.85), ("2", 0.15)],
        log_mass: (2.5, 1.5),
        habitats: &[
            ("forest", 0.5),
            ("grassland", 0.5),
            ("urban", 0.3),
            ("river", 0.1),
        ],
    },
    Profile {
        name: "bird",
        anatomy: [false, true, true, false, true, false, false],
        legs: &[("2", 1.0)],
        log_mass: (0.0, 1.2),
        habitats: &[("sky", 0.7), ("forest", 0.5), ("urban", 0.3), ("sea", 0.15)],
    },
    Profile {
        name: "fish",
        anatomy: [false, false, true, false, false, true, true],
        legs: &[("0", 1.0)],
        log_mass: (0.5, 1.5),
        habitats: &[("sea", 0.7), ("river", 0.5), ("forest", 0.1)],
    },
];

fn flag(b: bool) -> &'static str {
    if b {
        "Yes"
    } else {
        "No"
    }
}

fn pick<'a>(rng: &mut ChaCha8Rng, weighted: &[(&'a str, f64)]) -> &'a str {
    let total: f64 = weighted.iter().map(|w| w.1).sum();
    let mut t = rng.random_range(0.0..total);
    for &(v, w) in weighted {
        if t < w {
            return v;
        }
        t -= w;
    }
    weighted[weighted.len() - 1].0
}

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn main() {
    let dir = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "data/zoo3".into()),
    );
    fs::create_dir_all(&dir).expect("create output directory");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    let mut csv = String::from(
        "hair,feathers,eggs,milk,airborne,aquatic,fins,legs,mass_kg,habitat,size,domestic,predator,venomous,class\n",
    );
    for profile in &PROFILES {
        for _ in 0..PER_CLASS {
            let mut cells: Vec<String> = profile
                .anatomy
                .iter()
                .map(|&b| flag(b ^ rng.random_bool(FLIP)).to_string())
                .collect();
            cells.push(pick(&mut rng, profile.legs).to_string());
            let (mu, sd) = profile.log_mass;
            let mass = (mu + sd * normal(&mut rng)).exp();
            cells.push(format!("{mass:.3}"));
            // always two habitats: with unequal set sizes, identical sets
            // would still be at a positive set distance
            let first = pick(&mut rng, profile.habitats);
            let rest: Vec<(&str, f64)> = profile
                .habitats
                .iter()
                .copied()
                .filter(|(h, _)| *h != first)
                .collect();
            let second = pick(&mut rng, &rest);
            cells.push(format!("{first};{second}"));
            cells.push(
                match mass {
                    m if m < 1.0 => "Small",
                    m if m < 30.0 => "Medium",
                    _ => "Large",
                }
                .to_string(),
            );
            for p in [0.3, 0.4, 0.1] {
                cells.push(flag(rng.random_bool(p)).to_string());
            }
            cells.push(profile.name.to_string());
            csv.push_str(&cells.join(","));
            csv.push('\n');
        }
    }
    fs::write(dir.join("schema.json"), SCHEMA).expect("write schema");
    fs::write(dir.join("zoo3.csv"), csv).expect("write table");
}
