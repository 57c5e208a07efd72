//! Two-phase Louvain optimizer.
//!
//! Phase one sweeps the nodes, moving each into the neighboring cluster with
//! the largest modularity gain, until a sweep moves nothing. Phase two
//! collapses the clusters into super-nodes (intra-cluster weight kept as a
//! self-loop) and the process repeats on the smaller graph.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::modularity::{modularity, Partition};

#[derive(Debug, Clone, PartialEq)]
pub struct LouvainConfig {
    /// A move is accepted only if it raises modularity by more than this.
    pub min_gain: f64,
    /// Maximum number of move-then-aggregate passes.
    pub max_passes: usize,
    pub seed: u64,
    /// Visit nodes in a seeded random order instead of ascending index.
    pub shuffle: bool,
}

impl Default for LouvainConfig {
    fn default() -> Self {
        Self {
            min_gain: 1e-9,
            max_passes: 100,
            seed: 0,
            shuffle: false,
        }
    }
}

impl LouvainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_gain.is_nan() || self.min_gain < 0.0 {
            return Err(Error::InvalidConfig("min_gain must be >= 0".into()));
        }
        if self.max_passes == 0 {
            return Err(Error::InvalidConfig("max_passes must be >= 1".into()));
        }
        Ok(())
    }
}

/// Cluster maps from each level's nodes to the next level's nodes, finest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dendrogram {
    pub levels: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct LouvainResult {
    pub partition: Partition,
    /// Modularity of `partition`, recomputed on the input graph.
    pub modularity: f64,
    pub dendrogram: Dendrogram,
    /// Modularity after each level, measured on that level's aggregated graph.
    pub level_modularity: Vec<f64>,
}

pub fn louvain(graph: &WeightedGraph, cfg: &LouvainConfig) -> Result<LouvainResult> {
    cfg.validate()?;
    let n = graph.num_nodes();
    if n == 0 {
        return Err(Error::InvalidConfig("graph has no nodes".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut levels: Vec<Vec<usize>> = Vec::new();
    let mut level_modularity = Vec::new();
    let mut aggregated: Option<WeightedGraph> = None;

    for _ in 0..cfg.max_passes {
        let current = aggregated.as_ref().unwrap_or(graph);
        let Some(assignment) = local_moving(current, cfg, &mut rng) else {
            break;
        };
        let level = Partition::from_labels(&assignment);
        level_modularity.push(modularity(current, &level));
        let next = current.aggregate(level.assignment(), level.num_clusters());
        levels.push(level.assignment().to_vec());
        aggregated = Some(next);
    }
    if levels.is_empty() {
        levels.push((0..n).collect());
        level_modularity.push(modularity(graph, &Partition::singletons(n)));
    }

    let dendrogram = Dendrogram { levels };
    let partition = flatten(&dendrogram);
    let q = modularity(graph, &partition);
    Ok(LouvainResult {
        partition,
        modularity: q,
        dendrogram,
        level_modularity,
    })
}

/// Runs local moving from the singleton partition. Returns the assignment,
/// or `None` if no node moved.
fn local_moving(
    g: &WeightedGraph,
    cfg: &LouvainConfig,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<usize>> {
    let n = g.num_nodes();
    let two_m = g.two_m();
    if two_m <= 0.0 {
        return None;
    }
    let mut order: Vec<usize> = (0..n).collect();
    if cfg.shuffle {
        order.shuffle(rng);
    }
    let mut assign: Vec<usize> = (0..n).collect();
    let mut tot: Vec<f64> = g.degrees().to_vec();
    let mut acc = vec![0.0; n];
    let mut seen = vec![false; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut any_move = false;

    loop {
        let mut moved = false;
        for &i in &order {
            let from = assign[i];
            let k = g.degree(i);
            let (t, w) = g.neighbors(i);
            seen[from] = true;
            touched.push(from);
            for (&j, &w) in t.iter().zip(w) {
                let c = assign[j as usize];
                if !seen[c] {
                    seen[c] = true;
                    touched.push(c);
                }
                acc[c] += w;
            }

            tot[from] -= k;
            let score = |c: usize, acc: &[f64], tot: &[f64]| acc[c] - k * tot[c] / two_m;
            let stay = score(from, &acc, &tot);
            let mut best = from;
            let mut best_score = f64::NEG_INFINITY;
            for &c in &touched {
                if c == from {
                    continue;
                }
                let s = score(c, &acc, &tot);
                if s > best_score || (s == best_score && c < best) {
                    best = c;
                    best_score = s;
                }
            }
            let target = if best != from && 2.0 * (best_score - stay) / two_m > cfg.min_gain {
                best
            } else {
                from
            };
            tot[target] += k;
            if target != from {
                assign[i] = target;
                moved = true;
            }

            for &c in &touched {
                acc[c] = 0.0;
                seen[c] = false;
            }
            touched.clear();
        }
        if !moved {
            break;
        }
        any_move = true;
    }
    any_move.then_some(assign)
}

/// Composes the dendrogram's levels into one partition of the finest nodes.
pub fn flatten(d: &Dendrogram) -> Partition {
    let mut levels = d.levels.iter();
    let mut composed = levels.next().expect("dendrogram has no levels").clone();
    for level in levels {
        for c in composed.iter_mut() {
            *c = level[*c];
        }
    }
    Partition::new(composed).expect("dendrogram levels are dense")
}
