//! Sampled and exhaustive verification of the structural theorems on one category.
//!
//! Samples are generated up front from a seeded ChaCha stream, checked in parallel and merged
//! in sample order, so a report depends only on the configuration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::category::ClusterCategory;
use crate::classical::{band_to_frieze, frieze_to_band, tropical_band_from_diagonal};
use crate::dynkin::Family;
use crate::error::{Error, Result};
use crate::frieze::{from_tilting_values, is_tropical_frieze, TropicalFrieze};
use crate::ringel::{additive_from_slice, ringel_decompose, ClusterAdditiveFunction, HammockCombination};
use crate::seed::{
    f_t_m, g_of, mutate_seed, normal_form, sign_coherent_tilters, pairing_criterion,
    transport_vector, Strategy,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Prop4,
    Prop16,
    Thm2,
    Prop10,
    Thm15,
    Thm17,
    Ringel,
    Periodicity,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [
        Theorem::Prop4,
        Theorem::Prop16,
        Theorem::Thm2,
        Theorem::Prop10,
        Theorem::Thm15,
        Theorem::Thm17,
        Theorem::Ringel,
        Theorem::Periodicity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Theorem::Prop4 => "prop4",
            Theorem::Prop16 => "prop16",
            Theorem::Thm2 => "thm2",
            Theorem::Prop10 => "prop10",
            Theorem::Thm15 => "thm15",
            Theorem::Thm17 => "thm17",
            Theorem::Ringel => "ringel",
            Theorem::Periodicity => "periodicity",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown theorem `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub theorem: Theorem,
    /// Number of random samples (per seed when `per_seed` is set); ignored when exhaustive.
    pub samples: usize,
    pub per_seed: bool,
    pub exhaustive: bool,
    /// Inclusive value range for seed values, coefficients and diagonals.
    pub range: (i64, i64),
    pub rng_seed: u64,
}

impl VerifyConfig {
    pub fn new(theorem: Theorem) -> Self {
        VerifyConfig { theorem, samples: 100, per_seed: false, exhaustive: false, range: (-10, 10), rng_seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub sample: usize,
    pub detail: String,
    /// The failure contradicts a theorem the construction relies on, rather than the statement under test.
    pub internal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub theorem: Theorem,
    #[serde(rename = "type")]
    pub dynkin: String,
    pub orientation: String,
    pub seed: u64,
    pub samples: usize,
    pub exhaustive: bool,
    pub range: (i64, i64),
    pub failures: Vec<Failure>,
    pub elapsed_ms: u128,
    pub notes: BTreeMap<String, u64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn has_internal_failure(&self) -> bool {
        self.failures.iter().any(|f| f.internal)
    }
}

/// One unit of work: a seed (or tilting set) index, a value tuple and a direction.
#[derive(Debug, Clone)]
struct Sample {
    node: usize,
    other: usize,
    values: Vec<i64>,
    k: usize,
}

/// All integer tuples of length `n` with entries in `lo..=hi`, in lexicographic order.
pub fn grid(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| (lo..=hi).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

/// What a single sample check concluded.
enum Outcome {
    Pass(Option<&'static str>),
    Fail(String),
}

fn generate(cat: &ClusterCategory, config: &VerifyConfig, nodes: usize) -> Vec<Sample> {
    let n = cat.rank();
    let (lo, hi) = match config.theorem {
        Theorem::Ringel => (config.range.0.max(0), config.range.1.max(0)),
        _ => config.range,
    };
    if config.exhaustive {
        let tuples = grid(n, lo, hi);
        let per_node = config.theorem != Theorem::Periodicity;
        let node_count = if per_node { nodes } else { 1 };
        let dirs = if config.theorem == Theorem::Prop10 { n } else { 1 };
        let mut out = Vec::new();
        for node in 0..node_count {
            for values in &tuples {
                for k in 0..dirs {
                    out.push(Sample { node, other: (node * 7 + 3) % nodes, values: values.clone(), k });
                }
            }
        }
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let total = if config.per_seed { config.samples * nodes } else { config.samples };
    (0..total)
        .map(|i| Sample {
            node: if config.per_seed { i / config.samples.max(1) } else { rng.gen_range(0..nodes) },
            other: rng.gen_range(0..nodes),
            values: (0..n).map(|_| rng.gen_range(lo..=hi)).collect(),
            k: rng.gen_range(0..n),
        })
        .collect()
}

fn check_sample(cat: &ClusterCategory, theorem: Theorem, sample: &Sample, sets: &[Vec<usize>]) -> Result<Outcome> {
    let graph = cat.graph()?;
    let g = cat.ar();
    let seed = &graph.nodes[sample.node.min(graph.len() - 1)];
    let frieze = || from_tilting_values(cat, seed, &sample.values);
    Ok(match theorem {
        Theorem::Prop16 => {
            let f = frieze()?;
            if f.on_seed(seed) != sample.values {
                return Ok(Outcome::Fail(format!("values on {} not reproduced", seed.render(cat))));
            }
            if let Some(v) = is_tropical_frieze(cat, f.values())?.certificate() {
                return Ok(Outcome::Fail(format!("constructed function violates {}", v.render(cat))));
            }
            let other = &graph.nodes[sample.other];
            let again = from_tilting_values(cat, other, &f.on_seed(other))?;
            if again != f {
                return Ok(Outcome::Fail(format!("values on {} do not determine the frieze", other.render(cat))));
            }
            if let Some(x) = (0..g.len()).find(|&x| f.value(x) + f.value(g.sigma(x)) < 0) {
                return Ok(Outcome::Fail(format!("f(X) + f(ΣX) < 0 at {}", g.id(x))));
            }
            Outcome::Pass(None)
        }
        Theorem::Prop4 => {
            let f = frieze()?;
            let census = f.sign_census();
            let zero = census.min == 0 && census.max == 0;
            if (census.all_nonneg || census.all_nonpos) && !zero {
                return Ok(Outcome::Fail(format!("one-signed nonzero frieze ({census})")));
            }
            Outcome::Pass(Some(if zero { "zero" } else { "both_signs" }))
        }
        Theorem::Thm2 => {
            let f = f_t_m(cat, seed, &sample.values)?;
            let is_frieze = is_tropical_frieze(cat, &f)?.is_frieze();
            let criterion = pairing_criterion(seed, &sample.values);
            if is_frieze != criterion {
                return Ok(Outcome::Fail(format!(
                    "{} m={:?}: frieze {is_frieze}, criterion {criterion}",
                    seed.render(cat),
                    sample.values
                )));
            }
            Outcome::Pass(Some(if criterion { "criterion_holds" } else { "criterion_fails" }))
        }
        Theorem::Prop10 => {
            let f = frieze()?;
            let k = sample.k;
            let mutated = mutate_seed(cat, seed, k)?;
            let direct = g_of(f.values(), &mutated);
            let transported = transport_vector(&g_of(f.values(), seed), &seed.quiver, k)?;
            if direct != transported {
                return Ok(Outcome::Fail(format!(
                    "{} k={}: direct {direct:?}, transported {transported:?}",
                    seed.render(cat),
                    k + 1
                )));
            }
            Outcome::Pass(None)
        }
        Theorem::Thm15 => {
            let f = frieze()?;
            let nf = normal_form(cat, f.values())?;
            if g_of(f.values(), &nf.seed).iter().any(|&x| x > 0) || !pairing_criterion(&nf.seed, &nf.m) {
                return Ok(Outcome::Fail(format!("normal form {} is not admissible", nf.seed.render(cat))));
            }
            if f_t_m(cat, &nf.seed, &nf.m)? != f.values() {
                return Ok(Outcome::Fail("normal form does not reproduce the frieze".into()));
            }
            Outcome::Pass(Some(match nf.strategy {
                Strategy::Greedy { .. } => "greedy",
                Strategy::Exhaustive { .. } => "exhaustive_fallback",
            }))
        }
        Theorem::Thm17 => {
            let f = frieze()?;
            let (pos, neg) = sign_coherent_tilters(cat, f.values())?;
            if pos.summands.iter().any(|&v| f.value(v) < 0) || neg.summands.iter().any(|&v| f.value(v) > 0) {
                return Ok(Outcome::Fail("returned tilters are not sign-coherent".into()));
            }
            Outcome::Pass(None)
        }
        Theorem::Ringel => {
            let set = &sets[sample.node % sets.len()];
            let mut comb = HammockCombination::default();
            for (&x, &c) in set.iter().zip(&sample.values) {
                comb.add(x, c as u32);
            }
            let f = ClusterAdditiveFunction::new(cat, comb.values(cat)?)?;
            let got = ringel_decompose(cat, &f)?;
            if got != comb {
                return Ok(Outcome::Fail(format!("decomposition {:?} differs from {:?}", got.coefficients, comb.coefficients)));
            }
            // a second family: arbitrary slice values that happen to close up around Γ_C
            let signed = sample.values.iter().rev().enumerate().map(|(i, &v)| if i % 2 == 0 { v } else { -v });
            let slice: Vec<(usize, i64)> = g.initial_slices().0.into_iter().zip(signed).collect();
            match additive_from_slice(cat, &slice) {
                Ok(h) => {
                    ringel_decompose(cat, &h)?;
                    Outcome::Pass(Some("slice_accepted"))
                }
                Err(Error::WrapInconsistency { .. }) => Outcome::Pass(Some("slice_discarded")),
                Err(e) => return Err(e),
            }
        }
        Theorem::Periodicity => {
            let order = cat.rank() + 3;
            let band = tropical_band_from_diagonal(order, &sample.values)?;
            if order % band.period() != 0 || !band.is_glide_symmetric() {
                return Ok(Outcome::Fail(format!("band from {:?} lacks its symmetries", sample.values)));
            }
            if g.dynkin().family() == Family::A && g.orientation() == "linear" {
                let f: TropicalFrieze<'_> = band_to_frieze(cat, &band)?;
                if frieze_to_band(&f)? != band {
                    return Ok(Outcome::Fail("band -> frieze -> band is not the identity".into()));
                }
            }
            Outcome::Pass(None)
        }
    })
}

/// Runs one theorem suite on `cat`.
pub fn verify(cat: &ClusterCategory, config: &VerifyConfig) -> Result<Report> {
    let start = Instant::now();
    let graph = cat.graph()?;
    let sets: Vec<Vec<usize>> = graph.nodes.iter().map(|s| s.summands.clone()).collect();
    let node_count = graph.len();
    let samples = generate(cat, config, node_count);
    let outcomes: Vec<Result<Outcome>> =
        samples.par_iter().map(|s| check_sample(cat, config.theorem, s, &sets)).collect();
    let mut failures = Vec::new();
    let mut notes = BTreeMap::new();
    for (i, outcome) in outcomes.into_iter().enumerate() {
        match outcome {
            Ok(Outcome::Pass(tag)) => {
                if let Some(tag) = tag {
                    *notes.entry(tag.to_string()).or_insert(0) += 1;
                }
            }
            Ok(Outcome::Fail(detail)) => failures.push(Failure { sample: i, detail, internal: false }),
            Err(e) => failures.push(Failure { sample: i, detail: e.to_string(), internal: true }),
        }
    }
    Ok(Report {
        theorem: config.theorem,
        dynkin: cat.ar().dynkin().to_string(),
        orientation: cat.ar().orientation().to_string(),
        seed: config.rng_seed,
        samples: samples.len(),
        exhaustive: config.exhaustive,
        range: config.range,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinType;

    #[test]
    fn grid_sizes() {
        assert_eq!(grid(2, -1, 1).len(), 9);
        assert_eq!(grid(0, -1, 1), vec![Vec::<i64>::new()]);
        assert_eq!(grid(1, 0, 2), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn theorem_names_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.name().parse::<Theorem>().unwrap(), t);
        }
        assert!("thm99".parse::<Theorem>().is_err());
    }

    #[test]
    fn every_suite_passes_on_a2() {
        let cat = ClusterCategory::new(DynkinType::a(2), &"linear".parse().unwrap()).unwrap();
        for t in Theorem::ALL {
            let report = verify(&cat, &VerifyConfig { samples: 40, ..VerifyConfig::new(t) }).unwrap();
            assert!(report.passed(), "{t}: {:?}", report.failures);
            assert_eq!(report.samples, 40);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let cat = ClusterCategory::new(DynkinType::a(3), &"linear".parse().unwrap()).unwrap();
        let config = VerifyConfig { samples: 30, rng_seed: 9, ..VerifyConfig::new(Theorem::Thm15) };
        let a = verify(&cat, &config).unwrap();
        let b = verify(&cat, &config).unwrap();
        assert_eq!(a.notes, b.notes);
        assert_eq!(a.failures, b.failures);
    }
}
