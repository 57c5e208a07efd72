//! Modularity under the degree-preserving null model `P_ij = k_i k_j / 2m`.
//!
//! `2m` is the sum of row sums of the graph being scored. For the
//! degree-preserving reduction this equals `Σ_v d(v)`, so the null model is
//! the hypergraph one. The modularity matrix is never materialized: `Q` is
//! evaluated from per-cluster totals `Σ_in` (weight inside the cluster,
//! both directions plus diagonal) and `Σ_tot` (sum of member degrees).

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Assignment of nodes to dense cluster ids `0..c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    assignment: Vec<usize>,
    sizes: Vec<usize>,
}

impl Partition {
    /// Wraps an assignment whose ids are already dense.
    pub fn new(assignment: Vec<usize>) -> Result<Self> {
        let c = assignment.iter().max().map_or(0, |&m| m + 1);
        let mut sizes = vec![0; c];
        for &a in &assignment {
            sizes[a] += 1;
        }
        if let Some(empty) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidConfig(format!(
                "cluster id {empty} is unused; ids must be dense"
            )));
        }
        Ok(Self { assignment, sizes })
    }

    /// Renumbers arbitrary labels densely in order of first appearance.
    pub fn from_labels<T: Eq + Hash + Clone>(labels: &[T]) -> Self {
        let mut ids: HashMap<T, usize> = HashMap::new();
        let assignment: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l.clone()).or_insert(next)
            })
            .collect();
        let mut sizes = vec![0; ids.len()];
        for &a in &assignment {
            sizes[a] += 1;
        }
        Self { assignment, sizes }
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            assignment: (0..n).collect(),
            sizes: vec![1; n],
        }
    }

    pub fn one_cluster(n: usize) -> Self {
        Self {
            assignment: vec![0; n],
            sizes: if n == 0 { vec![] } else { vec![n] },
        }
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn cluster_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn num_nodes(&self) -> usize {
        self.assignment.len()
    }

    pub fn num_clusters(&self) -> usize {
        self.sizes.len()
    }

    pub fn cluster_sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Member lists, each in ascending node order.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self.sizes.iter().map(|&s| Vec::with_capacity(s)).collect();
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// Per-cluster sufficient statistics for modularity on one graph.
#[derive(Debug, Clone)]
pub struct ModularityContext<'g> {
    graph: &'g WeightedGraph,
    assignment: Vec<usize>,
    sigma_tot: Vec<f64>,
    sigma_in: Vec<f64>,
}

impl<'g> ModularityContext<'g> {
    pub fn new(graph: &'g WeightedGraph, partition: &Partition) -> Self {
        assert_eq!(
            graph.num_nodes(),
            partition.num_nodes(),
            "partition does not cover the graph"
        );
        let c = partition.num_clusters();
        let mut sigma_tot = vec![0.0; c];
        let mut sigma_in = vec![0.0; c];
        for (i, &ci) in partition.assignment().iter().enumerate() {
            sigma_tot[ci] += graph.degree(i);
            // Summed in the same order as the degree, so a single cluster
            // yields exactly zero.
            let mut inside = graph.self_loop(i);
            let (t, w) = graph.neighbors(i);
            for (&j, &w) in t.iter().zip(w) {
                if partition.cluster_of(j as usize) == ci {
                    inside += w;
                }
            }
            sigma_in[ci] += inside;
        }
        Self {
            graph,
            assignment: partition.assignment().to_vec(),
            sigma_tot,
            sigma_in,
        }
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.graph
    }

    pub fn two_m(&self) -> f64 {
        self.graph.two_m()
    }

    /// Expected weight between `i` and `j` under the null model.
    pub fn null_model_entry(&self, i: usize, j: usize) -> f64 {
        self.graph.degree(i) * self.graph.degree(j) / self.two_m()
    }

    pub fn sigma_tot(&self, c: usize) -> f64 {
        self.sigma_tot[c]
    }

    pub fn sigma_in(&self, c: usize) -> f64 {
        self.sigma_in[c]
    }

    pub fn cluster_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn modularity(&self) -> f64 {
        let two_m = self.two_m();
        if two_m <= 0.0 {
            return 0.0;
        }
        self.sigma_in
            .iter()
            .zip(&self.sigma_tot)
            .map(|(&inside, &tot)| inside / two_m - (tot / two_m).powi(2))
            .sum()
    }

    /// Weight from `node` to the other members of `from` and of `to`.
    fn links(&self, node: usize, from: usize, to: usize) -> (f64, f64) {
        let (t, w) = self.graph.neighbors(node);
        let mut k_from = 0.0;
        let mut k_to = 0.0;
        for (&j, &w) in t.iter().zip(w) {
            let c = self.assignment[j as usize];
            if c == from {
                k_from += w;
            } else if c == to {
                k_to += w;
            }
        }
        (k_from, k_to)
    }

    /// Change in modularity if `node` moved from its current cluster to `to`.
    pub fn gain_of_move(&self, node: usize, to: usize) -> f64 {
        let from = self.assignment[node];
        if from == to {
            return 0.0;
        }
        let (k_from, k_to) = self.links(node, from, to);
        let k = self.graph.degree(node);
        let two_m = self.two_m();
        let tot_from_rest = self.sigma_tot[from] - k;
        2.0 * (k_to - k_from) / two_m
            - 2.0 * k * (self.sigma_tot[to] - tot_from_rest) / (two_m * two_m)
    }

    /// Moves `node` to cluster `to`, which must be an existing id. The old
    /// cluster may become empty.
    pub fn move_node(&mut self, node: usize, to: usize) {
        let from = self.assignment[node];
        if from == to {
            return;
        }
        let (k_from, k_to) = self.links(node, from, to);
        let k = self.graph.degree(node);
        let ll = self.graph.self_loop(node);
        self.sigma_in[from] -= 2.0 * k_from + ll;
        self.sigma_in[to] += 2.0 * k_to + ll;
        self.sigma_tot[from] -= k;
        self.sigma_tot[to] += k;
        self.assignment[node] = to;
    }

    /// Current assignment, renumbered densely.
    pub fn partition(&self) -> Partition {
        Partition::from_labels(&self.assignment)
    }
}

pub fn modularity(graph: &WeightedGraph, partition: &Partition) -> f64 {
    ModularityContext::new(graph, partition).modularity()
}
