//! Clustering quality against ground truth and hyperedge-cut diagnostics.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::modularity::Partition;

pub const HISTOGRAM_BINS: usize = 10;

/// `(cluster, count)` pairs for the nodes of one hyperedge, by cluster id.
pub fn cluster_counts(edge: &[usize], p: &Partition) -> Vec<(usize, usize)> {
    let mut ids: Vec<usize> = edge.iter().map(|&v| p.cluster_of(v)).collect();
    ids.sort_unstable();
    let mut out: Vec<(usize, usize)> = Vec::new();
    for c in ids {
        match out.last_mut() {
            Some((last, k)) if *last == c => *k += 1,
            _ => out.push((c, 1)),
        }
    }
    out
}

/// Average of best-match F1 scores computed in both directions.
///
/// For every cluster on one side, take the highest F1 against any cluster
/// on the other side; average those over the clusters of that side. The
/// result is the mean of the two directional averages.
pub fn symmetric_f1(pred: &Partition, truth: &Partition) -> Result<f64> {
    if pred.num_nodes() != truth.num_nodes() {
        return Err(Error::NodeSetMismatch(format!(
            "{} predicted vs {} true nodes",
            pred.num_nodes(),
            truth.num_nodes()
        )));
    }
    if pred.num_nodes() == 0 {
        return Err(Error::NodeSetMismatch("no nodes".into()));
    }
    // Overlap counts per (pred, truth) pair, sparse per predicted cluster.
    let mut overlaps: Vec<Vec<(usize, usize)>> = vec![Vec::new(); pred.num_clusters()];
    {
        let mut pairs: Vec<(usize, usize)> = pred
            .assignment()
            .iter()
            .zip(truth.assignment())
            .map(|(&a, &b)| (a, b))
            .collect();
        pairs.sort_unstable();
        for (a, b) in pairs {
            match overlaps[a].last_mut() {
                Some((t, k)) if *t == b => *k += 1,
                _ => overlaps[a].push((b, 1)),
            }
        }
    }
    let f1 = |inter: usize, x: usize, y: usize| 2.0 * inter as f64 / (x + y) as f64;
    let mut best_pred = vec![0.0f64; pred.num_clusters()];
    let mut best_truth = vec![0.0f64; truth.num_clusters()];
    for (a, row) in overlaps.iter().enumerate() {
        for &(b, inter) in row {
            let s = f1(inter, pred.cluster_sizes()[a], truth.cluster_sizes()[b]);
            best_pred[a] = best_pred[a].max(s);
            best_truth[b] = best_truth[b].max(s);
        }
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    Ok(0.5 * (mean(&best_pred) + mean(&best_truth)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutStats {
    /// Per hyperedge, `(cluster, count)` for every cluster it touches.
    pub counts: Vec<Vec<(usize, usize)>>,
    /// Per hyperedge, largest cluster count over hyperedge degree.
    pub relative_sizes: Vec<f64>,
    /// Fraction of hyperedges whose relative size falls in
    /// `(0.0, 0.1], (0.1, 0.2], …, (0.9, 1.0]`.
    pub histogram: [f64; HISTOGRAM_BINS],
}

pub fn cut_stats(g: &Hypergraph, p: &Partition) -> CutStats {
    let mut counts = Vec::with_capacity(g.num_edges());
    let mut relative_sizes = Vec::with_capacity(g.num_edges());
    let mut bins = [0usize; HISTOGRAM_BINS];
    for edge in g.edges() {
        let c = cluster_counts(edge, p);
        let largest = c.iter().map(|&(_, k)| k).max().unwrap_or(0);
        let delta = edge.len();
        // Right-inclusive bin, computed in integers: ceil(10·largest/δ) − 1.
        let bin = (HISTOGRAM_BINS * largest).div_ceil(delta).saturating_sub(1);
        bins[bin.min(HISTOGRAM_BINS - 1)] += 1;
        relative_sizes.push(largest as f64 / delta as f64);
        counts.push(c);
    }
    let total = g.num_edges().max(1) as f64;
    CutStats {
        counts,
        relative_sizes,
        histogram: bins.map(|b| b as f64 / total),
    }
}
