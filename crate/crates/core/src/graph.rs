//! Symmetric weighted graph in compressed sparse row form.
//!
//! Off-diagonal entries are stored in both directions, sorted by column.
//! Diagonal entries live in a separate `self_loops` vector holding the matrix
//! value `A_ii`; reductions of hypergraphs leave it at zero, aggregated
//! graphs built during Louvain use it for intra-cluster weight.

use crate::error::{Error, Result};

/// Largest node count for which [`WeightedGraph::to_dense`] will allocate.
pub const DENSE_NODE_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<f64>,
    self_loops: Vec<f64>,
    degrees: Vec<f64>,
    two_m: f64,
}

impl WeightedGraph {
    /// Builds a graph from per-row adjacency lists (sorted by column, no
    /// diagonal entries) and diagonal values. Rows must be symmetric.
    pub(crate) fn from_rows(rows: Vec<Vec<(u32, f64)>>, self_loops: Vec<f64>) -> Self {
        debug_assert_eq!(rows.len(), self_loops.len());
        let nnz = rows.iter().map(Vec::len).sum();
        let mut offsets = Vec::with_capacity(rows.len() + 1);
        let mut targets = Vec::with_capacity(nnz);
        let mut weights = Vec::with_capacity(nnz);
        let mut degrees = Vec::with_capacity(rows.len());
        offsets.push(0);
        for (i, row) in rows.into_iter().enumerate() {
            let mut k = self_loops[i];
            for (j, w) in row {
                debug_assert_ne!(j as usize, i);
                targets.push(j);
                weights.push(w);
                k += w;
            }
            offsets.push(targets.len());
            degrees.push(k);
        }
        let two_m = degrees.iter().sum();
        Self {
            offsets,
            targets,
            weights,
            self_loops,
            degrees,
            two_m,
        }
    }

    /// Builds a graph from undirected weighted edges. Parallel edges are
    /// summed; an edge `(i, i, w)` adds `2w` to the diagonal, matching the
    /// contribution of a symmetric pair.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Self {
        let mut rows: Vec<std::collections::BTreeMap<u32, f64>> = vec![Default::default(); n];
        let mut loops = vec![0.0; n];
        for &(i, j, w) in edges {
            if i == j {
                loops[i] += 2.0 * w;
            } else {
                *rows[i].entry(j as u32).or_default() += w;
                *rows[j].entry(i as u32).or_default() += w;
            }
        }
        Self::from_rows(
            rows.into_iter().map(|r| r.into_iter().collect()).collect(),
            loops,
        )
    }

    pub fn num_nodes(&self) -> usize {
        self.degrees.len()
    }

    /// Number of stored off-diagonal entries (each undirected edge counted twice).
    pub fn num_entries(&self) -> usize {
        self.targets.len()
    }

    pub fn neighbors(&self, i: usize) -> (&[u32], &[f64]) {
        let range = self.offsets[i]..self.offsets[i + 1];
        (&self.targets[range.clone()], &self.weights[range])
    }

    pub fn self_loop(&self, i: usize) -> f64 {
        self.self_loops[i]
    }

    /// Row sum `k_i`, diagonal included.
    pub fn degree(&self, i: usize) -> f64 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[f64] {
        &self.degrees
    }

    /// Sum of all row sums.
    pub fn two_m(&self) -> f64 {
        self.two_m
    }

    /// Matrix entry `A_ij`.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return self.self_loops[i];
        }
        let (t, w) = self.neighbors(i);
        t.binary_search(&(j as u32)).map_or(0.0, |p| w[p])
    }

    /// Upper-triangle entries `(i, j, A_ij)` with `i < j`, row-major.
    pub fn upper_edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.num_nodes()).flat_map(move |i| {
            let (t, w) = self.neighbors(i);
            t.iter()
                .zip(w)
                .filter(move |(&j, _)| (j as usize) > i)
                .map(move |(&j, &w)| (i, j as usize, w))
        })
    }

    pub fn to_dense(&self) -> Result<Vec<Vec<f64>>> {
        self.to_dense_with_limit(DENSE_NODE_LIMIT)
    }

    pub fn to_dense_with_limit(&self, limit: usize) -> Result<Vec<Vec<f64>>> {
        let n = self.num_nodes();
        if n > limit {
            return Err(Error::DenseTooLarge { n, limit });
        }
        let mut dense = vec![vec![0.0; n]; n];
        for (i, row) in dense.iter_mut().enumerate() {
            row[i] = self.self_loops[i];
            let (t, w) = self.neighbors(i);
            for (&j, &w) in t.iter().zip(w) {
                row[j as usize] = w;
            }
        }
        Ok(dense)
    }

    /// Collapses each cluster into one node. Intra-cluster weight (including
    /// existing self-loops) becomes the new diagonal, so row sums and the
    /// total weight are preserved.
    pub fn aggregate(&self, assignment: &[usize], num_clusters: usize) -> Self {
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); num_clusters];
        for (v, &c) in assignment.iter().enumerate() {
            members[c].push(v);
        }
        let mut acc = vec![0.0; num_clusters];
        let mut touched: Vec<u32> = Vec::new();
        let mut loops = vec![0.0; num_clusters];
        let mut rows = Vec::with_capacity(num_clusters);
        for (c, nodes) in members.iter().enumerate() {
            for &v in nodes {
                loops[c] += self.self_loops[v];
                let (t, w) = self.neighbors(v);
                for (&j, &w) in t.iter().zip(w) {
                    let d = assignment[j as usize];
                    if d == c {
                        loops[c] += w;
                    } else {
                        if acc[d] == 0.0 {
                            touched.push(d as u32);
                        }
                        acc[d] += w;
                    }
                }
            }
            touched.sort_unstable();
            let row: Vec<(u32, f64)> = touched
                .iter()
                .map(|&d| (d, std::mem::take(&mut acc[d as usize])))
                .collect();
            touched.clear();
            rows.push(row);
        }
        Self::from_rows(rows, loops)
    }
}
