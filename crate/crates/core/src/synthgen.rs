//! Synthetic hypergraphs with planted classes and a heavy-tailed
//! hyperedge size distribution.
//!
//! Nodes are split into equal contiguous classes. Hyperedge sizes come from
//! three buckets with fixed quotas (by default 75% small, 20% medium, 5%
//! spanning more than half the nodes). A conforming hyperedge draws its
//! nodes from one class; a deviating one draws uniformly from all nodes.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::modularity::Partition;

/// Share of hyperedges whose size is drawn uniformly from `min_size..=max_size`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizeBucket {
    pub fraction: f64,
    pub min_size: usize,
    pub max_size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub nodes: usize,
    pub classes: usize,
    /// Probability that a hyperedge ignores class membership.
    pub homophily_deviation: f64,
    /// Hyperedges per node.
    pub edge_factor: f64,
    pub size_buckets: [SizeBucket; 3],
    pub seed: u64,
}

impl GenConfig {
    pub fn new(nodes: usize, seed: u64) -> Self {
        Self {
            nodes,
            classes: 2,
            homophily_deviation: 0.4,
            edge_factor: 1.5,
            size_buckets: default_buckets(nodes),
            seed,
        }
    }

    pub fn num_edges(&self) -> usize {
        (self.edge_factor * self.nodes as f64).ceil() as usize
    }

    /// Hyperedge count per bucket: floor of each share, remainder to the last.
    pub fn quotas(&self) -> [usize; 3] {
        let m = self.num_edges();
        let small = (self.size_buckets[0].fraction * m as f64 + 1e-9).floor() as usize;
        let medium = (self.size_buckets[1].fraction * m as f64 + 1e-9).floor() as usize;
        [small, medium, m - small - medium]
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.nodes < 10 {
            return bad(format!("need at least 10 nodes, got {}", self.nodes));
        }
        if self.classes == 0 || self.classes > self.nodes {
            return bad(format!("class count {} out of range", self.classes));
        }
        if !(0.0..=1.0).contains(&self.homophily_deviation) {
            return bad("homophily deviation must lie in [0, 1]".into());
        }
        if self.edge_factor.is_nan() || self.edge_factor <= 0.0 {
            return bad("edge factor must be > 0".into());
        }
        let total: f64 = self.size_buckets.iter().map(|b| b.fraction).sum();
        if (total - 1.0).abs() > 1e-9 || self.size_buckets.iter().any(|b| b.fraction < 0.0) {
            return bad("bucket fractions must be nonnegative and sum to 1".into());
        }
        if self.quotas()[0] + self.quotas()[1] > self.num_edges() {
            return bad("bucket quotas exceed the hyperedge count".into());
        }
        for b in &self.size_buckets {
            if b.min_size < 2 || b.max_size > self.nodes || b.min_size > b.max_size {
                return bad(format!(
                    "size range [{}, {}] is empty or outside [2, {}]",
                    b.min_size, b.max_size, self.nodes
                ));
            }
        }
        Ok(())
    }
}

/// Small: up to 3% of the nodes; medium: 3%–50%; large: over 50%.
pub fn default_buckets(n: usize) -> [SizeBucket; 3] {
    let three_pct = n * 3 / 100;
    let half = n / 2;
    [
        SizeBucket {
            fraction: 0.75,
            min_size: 2,
            max_size: three_pct.max(2),
        },
        SizeBucket {
            fraction: 0.20,
            min_size: (three_pct + 1).max(2),
            max_size: half,
        },
        SizeBucket {
            fraction: 0.05,
            min_size: half + 1,
            max_size: n,
        },
    ]
}

/// Class of each node: contiguous, balanced blocks.
pub fn class_labels(nodes: usize, classes: usize) -> Vec<usize> {
    (0..nodes).map(|v| v * classes / nodes).collect()
}

/// Generates a hypergraph and its planted class partition.
pub fn generate(cfg: &GenConfig) -> Result<(Hypergraph, Partition)> {
    cfg.validate()?;
    let n = cfg.nodes;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let labels = class_labels(n, cfg.classes);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); cfg.classes];
    for (v, &c) in labels.iter().enumerate() {
        members[c].push(v);
    }

    let mut buckets: Vec<usize> = cfg
        .quotas()
        .iter()
        .enumerate()
        .flat_map(|(b, &q)| std::iter::repeat_n(b, q))
        .collect();
    buckets.shuffle(&mut rng);

    let mut edges = Vec::with_capacity(buckets.len());
    for b in buckets {
        let range = cfg.size_buckets[b];
        let size = rng.gen_range(range.min_size..=range.max_size);
        let edge: Vec<usize> = if rng.gen_bool(cfg.homophily_deviation) {
            index::sample(&mut rng, n, size).into_vec()
        } else {
            let class = rng.gen_range(0..cfg.classes);
            let own = &members[class];
            if size <= own.len() {
                index::sample(&mut rng, own.len(), size)
                    .into_iter()
                    .map(|i| own[i])
                    .collect()
            } else {
                // Larger than the class: take all of it and fill from outside.
                let outside: Vec<usize> = (0..n).filter(|&v| labels[v] != class).collect();
                let mut e = own.clone();
                e.extend(
                    index::sample(&mut rng, outside.len(), size - own.len())
                        .into_iter()
                        .map(|i| outside[i]),
                );
                e
            }
        };
        edges.push(edge);
    }
    let g = Hypergraph::new(n, edges, None)?;
    Ok((g, Partition::new(labels).expect("classes are nonempty")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quota_arithmetic() {
        let cfg = GenConfig::new(1000, 1);
        assert_eq!(cfg.num_edges(), 1500);
        assert_eq!(cfg.quotas(), [1125, 300, 75]);
        assert_eq!(GenConfig::new(201, 1).num_edges(), 302);
    }

    #[test]
    fn sizes_respect_buckets() {
        let cfg = GenConfig::new(1000, 3);
        let (g, truth) = generate(&cfg).unwrap();
        assert_eq!(g.num_edges(), 1500);
        assert_eq!(truth.cluster_sizes(), &[500, 500]);
        let mut per_bucket = [0usize; 3];
        for e in g.edges() {
            let d = e.len();
            let b = cfg
                .size_buckets
                .iter()
                .position(|b| (b.min_size..=b.max_size).contains(&d))
                .unwrap();
            per_bucket[b] += 1;
        }
        assert_eq!(per_bucket, [1125, 300, 75]);
    }

    #[test]
    fn deterministic_per_seed() {
        let a = generate(&GenConfig::new(300, 9)).unwrap();
        let b = generate(&GenConfig::new(300, 9)).unwrap();
        let c = generate(&GenConfig::new(300, 10)).unwrap();
        assert_eq!(a.0, b.0);
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn small_n_ranges() {
        let b = default_buckets(10);
        assert_eq!((b[0].min_size, b[0].max_size), (2, 2));
        assert_eq!((b[1].min_size, b[1].max_size), (2, 5));
        assert_eq!((b[2].min_size, b[2].max_size), (6, 10));
        assert!(generate(&GenConfig::new(10, 0)).is_ok());
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(generate(&GenConfig::new(9, 0)).is_err());
        let mut cfg = GenConfig::new(100, 0);
        cfg.size_buckets[2].max_size = 101;
        assert!(generate(&cfg).is_err());
        let mut cfg = GenConfig::new(100, 0);
        cfg.size_buckets[0].fraction = 0.5;
        assert!(generate(&cfg).is_err());
        let mut cfg = GenConfig::new(100, 0);
        cfg.size_buckets[1].min_size = 60;
        assert!(generate(&cfg).is_err());
    }

    #[test]
    fn class_purity_near_conforming_share() {
        let mut total = 0.0;
        for seed in 0..20 {
            let (g, truth) = generate(&GenConfig::new(1000, seed)).unwrap();
            let pure = g
                .edges()
                .filter(|e| {
                    e.iter()
                        .all(|&v| truth.cluster_of(v) == truth.cluster_of(e[0]))
                })
                .count();
            total += pure as f64 / g.num_edges() as f64;
        }
        let mean = total / 20.0;
        assert!((mean - 0.6).abs() <= 0.05, "mean purity {mean}");
    }

    #[test]
    fn mostly_connected() {
        for seed in 0..5 {
            let (g, _) = generate(&GenConfig::new(500, seed)).unwrap();
            let p = g.preprocess().unwrap();
            assert!(p.num_nodes() as f64 >= 0.95 * 500.0);
        }
    }
}
