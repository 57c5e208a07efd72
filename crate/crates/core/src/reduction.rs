//! Graph reductions of a hypergraph.
//!
//! Both reductions have the form `A = H · diag(f) · Hᵀ` with the diagonal
//! removed, where `f(e) = w(e)` for the clique reduction and
//! `f(e) = w(e) / (δ(e) − 1)` for the degree-preserving one. Rows are
//! accumulated independently, each over its incident hyperedges in
//! ascending index order, so the result does not depend on thread count.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::hypergraph::Hypergraph;

/// Symmetric reduced adjacency with an all-zero diagonal.
pub type ReducedGraph = WeightedGraph;

/// `A = HWHᵀ` with the diagonal zeroed.
pub fn clique_reduce(g: &Hypergraph) -> ReducedGraph {
    build(g, g.weights().to_vec())
}

/// `A = HW(D_e − I)⁻¹Hᵀ` with the diagonal zeroed. Row sums equal the
/// hypergraph node degrees.
pub fn degree_preserving_reduce(g: &Hypergraph) -> Result<ReducedGraph> {
    degree_preserving_reduce_with(g, g.weights())
}

/// Degree-preserving reduction using `weights` in place of the hypergraph's own.
pub fn degree_preserving_reduce_with(g: &Hypergraph, weights: &[f64]) -> Result<ReducedGraph> {
    if weights.len() != g.num_edges() {
        return Err(Error::WeightCountMismatch {
            expected: g.num_edges(),
            actual: weights.len(),
        });
    }
    let factors = (0..g.num_edges())
        .map(|e| match g.edge_degree(e) {
            d if d < 2 => Err(Error::DegenerateHyperedge { edge: e, degree: d }),
            d => Ok(weights[e] / (d - 1) as f64),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(build(g, factors))
}

struct RowScratch {
    acc: Vec<f64>,
    seen: Vec<bool>,
    touched: Vec<u32>,
}

fn build(g: &Hypergraph, factors: Vec<f64>) -> ReducedGraph {
    let n = g.num_nodes();
    let rows: Vec<Vec<(u32, f64)>> = (0..n)
        .into_par_iter()
        .map_init(
            || RowScratch {
                acc: vec![0.0; n],
                seen: vec![false; n],
                touched: Vec::new(),
            },
            |s, i| {
                let reach: usize = g.incident_edges(i).iter().map(|&e| g.edge_degree(e)).sum();
                if reach >= n / 4 {
                    // Row is likely dense: skip membership tracking, scan once.
                    for &e in g.incident_edges(i) {
                        let f = factors[e];
                        for &j in g.edge(e) {
                            s.acc[j] += f;
                        }
                    }
                    s.acc[i] = 0.0;
                    return s
                        .acc
                        .iter_mut()
                        .enumerate()
                        .filter(|(_, a)| **a != 0.0)
                        .map(|(j, a)| (j as u32, std::mem::take(a)))
                        .collect();
                }
                for &e in g.incident_edges(i) {
                    let f = factors[e];
                    for &j in g.edge(e) {
                        if j != i {
                            if !s.seen[j] {
                                s.seen[j] = true;
                                s.touched.push(j as u32);
                            }
                            s.acc[j] += f;
                        }
                    }
                }
                s.touched.sort_unstable();
                let row = s
                    .touched
                    .iter()
                    .map(|&j| {
                        let j_ = j as usize;
                        s.seen[j_] = false;
                        (j, std::mem::take(&mut s.acc[j_]))
                    })
                    .collect();
                s.touched.clear();
                row
            },
        )
        .collect();
    WeightedGraph::from_rows(rows, vec![0.0; n])
}

/// `i j weight` lines (0-based, `i < j`).
pub fn format_edge_list(graph: &ReducedGraph) -> String {
    let mut out = String::new();
    for (i, j, w) in graph.upper_edges() {
        writeln!(out, "{i} {j} {w}").unwrap();
    }
    out
}

/// Row-stochastic transition matrix in compressed sparse row form.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    probs: Vec<f64>,
}

impl TransitionMatrix {
    pub fn num_nodes(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn row(&self, i: usize) -> (&[u32], &[f64]) {
        let r = self.offsets[i]..self.offsets[i + 1];
        (&self.targets[r.clone()], &self.probs[r])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (t, p) = self.row(i);
        t.binary_search(&(j as u32)).map_or(0.0, |k| p[k])
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.num_nodes())
            .map(|i| self.row(i).1.iter().sum())
            .collect()
    }
}

/// Walk that picks an incident hyperedge with probability proportional to
/// its weight, then a different node of it uniformly:
/// `P = D_v⁻¹ HW(D_e − I)⁻¹Hᵀ`.
pub fn random_walk_matrix(g: &Hypergraph) -> Result<TransitionMatrix> {
    let a = degree_preserving_reduce(g)?;
    let degrees = g.degrees().node_degrees;
    let mut offsets = Vec::with_capacity(g.num_nodes() + 1);
    let mut targets = Vec::with_capacity(a.num_entries());
    let mut probs = Vec::with_capacity(a.num_entries());
    offsets.push(0);
    for (i, &d) in degrees.iter().enumerate() {
        if d <= 0.0 {
            return Err(Error::IsolatedNode { node: i });
        }
        let (t, w) = a.neighbors(i);
        targets.extend_from_slice(t);
        probs.extend(w.iter().map(|w| w / d));
        offsets.push(targets.len());
    }
    Ok(TransitionMatrix {
        offsets,
        targets,
        probs,
    })
}
