//! Hypergraph data model and preprocessing.
//!
//! Hyperedges are stored as a compressed list of sorted, distinct node
//! indices, with a transposed node-to-hyperedge incidence kept alongside for
//! row-wise traversal. Node indices are 0-based internally; `original_ids`
//! records the 0-based index each node had in the input file so that
//! preprocessing can compact indices without losing the mapping.

use log::warn;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph {
    n: usize,
    edge_offsets: Vec<usize>,
    edge_nodes: Vec<usize>,
    weights: Vec<f64>,
    node_offsets: Vec<usize>,
    node_edges: Vec<usize>,
    original_ids: Vec<usize>,
    weighted: bool,
}

/// Weighted node degrees `d(v)` and hyperedge cardinalities `δ(e)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeView {
    pub node_degrees: Vec<f64>,
    pub edge_degrees: Vec<usize>,
    pub total_degree: f64,
}

impl Hypergraph {
    /// Builds a hypergraph over nodes `0..n`.
    ///
    /// Repeated nodes within a hyperedge are collapsed. Missing weights
    /// default to 1.0 and mark the hypergraph as unweighted.
    pub fn new(n: usize, edges: Vec<Vec<usize>>, weights: Option<Vec<f64>>) -> Result<Self> {
        let weighted = weights.is_some();
        let weights = match weights {
            Some(w) => {
                if w.len() != edges.len() {
                    return Err(Error::WeightCountMismatch {
                        expected: edges.len(),
                        actual: w.len(),
                    });
                }
                w
            }
            None => vec![1.0; edges.len()],
        };
        for (e, &w) in weights.iter().enumerate() {
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::NonPositiveWeight { edge: e, weight: w });
            }
        }

        let mut edge_offsets = Vec::with_capacity(edges.len() + 1);
        edge_offsets.push(0);
        let mut edge_nodes = Vec::with_capacity(edges.iter().map(Vec::len).sum());
        for (e, mut nodes) in edges.into_iter().enumerate() {
            if nodes.is_empty() {
                return Err(Error::EmptyHyperedge { edge: e });
            }
            if let Some(&bad) = nodes.iter().find(|&&v| v >= n) {
                return Err(Error::NodeOutOfRange {
                    edge: e,
                    node: bad + 1,
                    n,
                });
            }
            nodes.sort_unstable();
            nodes.dedup();
            edge_nodes.extend_from_slice(&nodes);
            edge_offsets.push(edge_nodes.len());
        }

        let (node_offsets, node_edges) = transpose(n, &edge_offsets, &edge_nodes);
        Ok(Self {
            n,
            edge_offsets,
            edge_nodes,
            weights,
            node_offsets,
            node_edges,
            original_ids: (0..n).collect(),
            weighted,
        })
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.weights.len()
    }

    /// Sorted member nodes of hyperedge `e`.
    pub fn edge(&self, e: usize) -> &[usize] {
        &self.edge_nodes[self.edge_offsets[e]..self.edge_offsets[e + 1]]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        (0..self.num_edges()).map(move |e| self.edge(e))
    }

    pub fn edge_degree(&self, e: usize) -> usize {
        self.edge_offsets[e + 1] - self.edge_offsets[e]
    }

    pub fn weight(&self, e: usize) -> f64 {
        self.weights[e]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Hyperedges containing node `v`, in ascending index order.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.node_edges[self.node_offsets[v]..self.node_offsets[v + 1]]
    }

    /// 0-based index each node had in the originally loaded hypergraph.
    pub fn original_ids(&self) -> &[usize] {
        &self.original_ids
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    /// Total number of (node, hyperedge) memberships.
    pub fn num_pins(&self) -> usize {
        self.edge_nodes.len()
    }

    /// Same incidence structure with a replacement weight vector.
    pub fn with_weights(&self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.num_edges() {
            return Err(Error::WeightCountMismatch {
                expected: self.num_edges(),
                actual: weights.len(),
            });
        }
        if let Some((e, &w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(**w > 0.0 && w.is_finite()))
        {
            return Err(Error::NonPositiveWeight { edge: e, weight: w });
        }
        Ok(Self {
            weights,
            weighted: true,
            ..self.clone()
        })
    }

    pub fn degrees(&self) -> DegreeView {
        let node_degrees: Vec<f64> = (0..self.n)
            .map(|v| {
                self.incident_edges(v)
                    .iter()
                    .map(|&e| self.weights[e])
                    .sum()
            })
            .collect();
        let edge_degrees: Vec<usize> = (0..self.num_edges()).map(|e| self.edge_degree(e)).collect();
        let total_degree = node_degrees.iter().sum();
        DegreeView {
            node_degrees,
            edge_degrees,
            total_degree,
        }
    }

    /// Drops singleton hyperedges and keeps only the largest connected
    /// component, compacting node indices in ascending order.
    ///
    /// Components are compared by node count; ties go to the component
    /// holding the lowest original node index.
    pub fn preprocess(&self) -> Result<Self> {
        let kept_edges: Vec<usize> = (0..self.num_edges())
            .filter(|&e| self.edge_degree(e) >= 2)
            .collect();
        let dropped = self.num_edges() - kept_edges.len();
        if dropped > 0 {
            warn!("removed {dropped} singleton hyperedge(s)");
        }
        if kept_edges.is_empty() {
            return Err(Error::EmptyHypergraph);
        }

        let mut sets = DisjointSets::new(self.n);
        for &e in &kept_edges {
            let nodes = self.edge(e);
            for &v in &nodes[1..] {
                sets.union(nodes[0], v);
            }
        }
        let roots: Vec<usize> = (0..self.n).map(|v| sets.find(v)).collect();
        let mut size = vec![0usize; self.n];
        let mut lowest = vec![usize::MAX; self.n];
        for v in 0..self.n {
            size[roots[v]] += 1;
            lowest[roots[v]] = lowest[roots[v]].min(self.original_ids[v]);
        }
        let best = (0..self.n)
            .filter(|&r| roots[r] == r)
            .max_by(|&a, &b| size[a].cmp(&size[b]).then(lowest[b].cmp(&lowest[a])))
            .ok_or(Error::EmptyHypergraph)?;

        let mut new_index = vec![usize::MAX; self.n];
        let mut original_ids = Vec::with_capacity(size[best]);
        for v in 0..self.n {
            if roots[v] == best {
                new_index[v] = original_ids.len();
                original_ids.push(self.original_ids[v]);
            }
        }
        let discarded = self.n - original_ids.len();
        if discarded > 0 {
            warn!("discarded {discarded} node(s) outside the largest connected component");
        }

        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for &e in &kept_edges {
            let nodes = self.edge(e);
            if roots[nodes[0]] == best {
                edges.push(nodes.iter().map(|&v| new_index[v]).collect());
                weights.push(self.weights[e]);
            }
        }
        let mut out = Self::new(original_ids.len(), edges, Some(weights))?;
        out.weighted = self.weighted;
        out.original_ids = original_ids;
        Ok(out)
    }
}

fn transpose(n: usize, edge_offsets: &[usize], edge_nodes: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut counts = vec![0usize; n + 1];
    for &v in edge_nodes {
        counts[v + 1] += 1;
    }
    for v in 0..n {
        counts[v + 1] += counts[v];
    }
    let offsets = counts.clone();
    let mut cursor = counts;
    let mut node_edges = vec![0usize; edge_nodes.len()];
    for e in 0..edge_offsets.len() - 1 {
        for &v in &edge_nodes[edge_offsets[e]..edge_offsets[e + 1]] {
            node_edges[cursor[v]] = e;
            cursor[v] += 1;
        }
    }
    (offsets, node_edges)
}
