//! Iteratively reweighted modularity maximization.
//!
//! Each round clusters the degree-preserving reduction, then reweights
//! every hyperedge by how evenly the clustering cuts it: an edge whose nodes
//! are split `k_1, …, k_c` ways gets
//!
//! ```text
//! w'(e) = (1/m) · Σ_i 1/(k_i + 1) · (δ(e) + c)
//! ```
//!
//! which is largest for edges that are almost, but not quite, inside one
//! cluster. The new weight is a moving average `α·w + (1−α)·w'`. Rounds
//! stop once the weight vector changes by less than the threshold.

use log::{debug, warn};

use crate::error::{Error, Result};
use crate::eval::cluster_counts;
use crate::hypergraph::Hypergraph;
use crate::louvain::{louvain, LouvainConfig};
use crate::modularity::Partition;
use crate::reduction::degree_preserving_reduce_with;

/// Norm used for the stopping rule `‖W − W_prev‖ < threshold`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormKind {
    /// Largest absolute per-hyperedge change.
    #[default]
    LInf,
    L2,
}

impl NormKind {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        match self {
            NormKind::LInf => diffs.fold(0.0, f64::max),
            NormKind::L2 => diffs.map(|d| d * d).sum::<f64>().sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IrmmConfig {
    /// Weight kept from the previous round, in (0, 1).
    pub alpha: f64,
    pub threshold: f64,
    pub max_iters: usize,
    pub norm: NormKind,
    pub louvain: LouvainConfig,
}

impl Default for IrmmConfig {
    fn default() -> Self {
        Self {
            alpha: 0.5,
            threshold: 0.01,
            max_iters: 50,
            norm: NormKind::LInf,
            louvain: LouvainConfig::default(),
        }
    }
}

impl IrmmConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidConfig("alpha must lie in (0, 1)".into()));
        }
        if self.threshold.is_nan() || self.threshold <= 0.0 {
            return Err(Error::InvalidConfig("threshold must be > 0".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidConfig("max_iters must be >= 1".into()));
        }
        self.louvain.validate()
    }
}

/// `(1/k1 + 1/k2) · δ` for a hyperedge cut into two nonempty parts.
pub fn two_way_cut_score(k1: usize, k2: usize, delta: usize) -> Result<f64> {
    let (num, den) = two_way_cut_score_ratio(k1, k2, delta)?;
    Ok(num as f64 / den as f64)
}

/// [`two_way_cut_score`] as a reduced fraction `(numerator, denominator)`.
pub fn two_way_cut_score_ratio(k1: usize, k2: usize, delta: usize) -> Result<(u64, u64)> {
    if k1 == 0 || k2 == 0 {
        return Err(Error::InvalidConfig(
            "two-way cut score needs both parts nonempty".into(),
        ));
    }
    if k1 + k2 != delta {
        return Err(Error::InvalidConfig(format!(
            "part sizes {k1} + {k2} do not add up to {delta}"
        )));
    }
    let num = (delta * (k1 + k2)) as u64;
    let den = (k1 * k2) as u64;
    let g = gcd(num, den);
    Ok((num / g, den / g))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Reweighting from the per-cluster node counts of one hyperedge.
///
/// `counts` lists `k_i` for some of the `num_clusters` clusters; clusters
/// not listed count as zero. The hyperedge degree is the sum of `counts`.
pub fn reweight_from_counts(counts: &[usize], num_edges: usize, num_clusters: usize) -> f64 {
    debug_assert!(counts.len() <= num_clusters);
    let delta: usize = counts.iter().sum();
    let absent = (num_clusters - counts.len()) as f64;
    let spread: f64 = counts.iter().map(|&k| 1.0 / (k + 1) as f64).sum::<f64>() + absent;
    spread * (delta + num_clusters) as f64 / num_edges as f64
}

/// New weight `w'(e)` for hyperedge `e` under partition `p`.
pub fn reweight(g: &Hypergraph, e: usize, p: &Partition) -> f64 {
    let counts: Vec<usize> = cluster_counts(g.edge(e), p)
        .into_iter()
        .map(|(_, k)| k)
        .collect();
    reweight_from_counts(&counts, g.num_edges(), p.num_clusters())
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightState {
    pub current: Vec<f64>,
    pub previous: Vec<f64>,
    pub alpha: f64,
    pub iteration: usize,
}

impl WeightState {
    pub fn new(initial: Vec<f64>, alpha: f64) -> Self {
        Self {
            previous: initial.clone(),
            current: initial,
            alpha,
            iteration: 0,
        }
    }

    /// Moves every weight toward `targets`: `α·w + (1−α)·w'`.
    pub fn blend(&self, targets: &[f64]) -> Self {
        let current = self
            .current
            .iter()
            .zip(targets)
            .map(|(&w, &t)| self.alpha * w + (1.0 - self.alpha) * t)
            .collect();
        Self {
            current,
            previous: self.current.clone(),
            alpha: self.alpha,
            iteration: self.iteration + 1,
        }
    }

    pub fn change(&self, norm: NormKind) -> f64 {
        norm.distance(&self.current, &self.previous)
    }
}

/// One reweighting step for every hyperedge of `g` under partition `p`.
pub fn update_weights(state: &WeightState, g: &Hypergraph, p: &Partition) -> WeightState {
    let targets: Vec<f64> = (0..g.num_edges()).map(|e| reweight(g, e, p)).collect();
    state.blend(&targets)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    pub weight_change: f64,
    pub modularity: f64,
    pub num_clusters: usize,
}

#[derive(Debug, Clone)]
pub struct IrmmResult {
    /// Clustering from the last round.
    pub partition: Partition,
    /// Modularity of `partition` on the reduction it was found on.
    pub modularity: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Weights after the last update.
    pub weights: Vec<f64>,
    /// Weights the last clustering was computed with.
    pub clustering_weights: Vec<f64>,
    pub trace: Vec<IterationRecord>,
    /// Clustering found in each round, oldest first.
    pub history: Vec<Partition>,
}

pub fn irmm(g: &Hypergraph, cfg: &IrmmConfig) -> Result<IrmmResult> {
    cfg.validate()?;
    let mut state = WeightState::new(g.weights().to_vec(), cfg.alpha);
    let mut trace = Vec::new();
    let mut history = Vec::new();
    loop {
        let reduced = degree_preserving_reduce_with(g, &state.current)?;
        let clustering = louvain(&reduced, &cfg.louvain)?;
        let next = update_weights(&state, g, &clustering.partition);
        let change = next.change(cfg.norm);
        trace.push(IterationRecord {
            iteration: next.iteration,
            weight_change: change,
            modularity: clustering.modularity,
            num_clusters: clustering.partition.num_clusters(),
        });
        debug!(
            "irmm round {}: |dW| = {change:.6}, Q = {:.6}, c = {}",
            next.iteration,
            clustering.modularity,
            clustering.partition.num_clusters()
        );
        history.push(clustering.partition.clone());
        let converged = change < cfg.threshold;
        if converged || next.iteration >= cfg.max_iters {
            if !converged {
                warn!(
                    "irmm stopped after {} rounds without converging (|dW| = {change})",
                    next.iteration
                );
            }
            return Ok(IrmmResult {
                partition: clustering.partition,
                modularity: clustering.modularity,
                iterations: next.iteration,
                converged,
                clustering_weights: state.current,
                weights: next.current,
                trace,
                history,
            });
        }
        state = next;
    }
}
