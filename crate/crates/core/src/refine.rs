//! Reduces a partition to a fixed number of clusters by average-linkage
//! agglomeration.
//!
//! The similarity of clusters `a` and `b` is the total reduced-graph weight
//! between them divided by `|a|·|b|`, i.e. the mean edge weight over all node
//! pairs, zero-weight pairs included.

use std::collections::BTreeMap;

use log::debug;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::modularity::Partition;

pub fn agglomerate(graph: &WeightedGraph, p: &Partition, k: usize) -> Result<Partition> {
    let c = p.num_clusters();
    if k == 0 {
        return Err(Error::InvalidConfig(
            "target cluster count must be >= 1".into(),
        ));
    }
    if k > c {
        return Err(Error::TargetExceedsClusters { k, c });
    }
    assert_eq!(
        graph.num_nodes(),
        p.num_nodes(),
        "partition does not cover the graph"
    );

    let mut links: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); c];
    for i in 0..graph.num_nodes() {
        let a = p.cluster_of(i);
        let (t, w) = graph.neighbors(i);
        for (&j, &w) in t.iter().zip(w) {
            let b = p.cluster_of(j as usize);
            if a != b {
                *links[a].entry(b).or_default() += w;
            }
        }
    }
    let mut sizes: Vec<usize> = p.cluster_sizes().to_vec();
    let mut alive = vec![true; c];
    let mut owner: Vec<usize> = (0..c).collect();
    let mut remaining = c;

    while remaining > k {
        let mut best: Option<(usize, usize, f64)> = None;
        for a in (0..c).filter(|&a| alive[a]) {
            for (&b, &w) in links[a].range(a + 1..) {
                let linkage = w / (sizes[a] * sizes[b]) as f64;
                if best.is_none_or(|(_, _, l)| linkage > l) {
                    best = Some((a, b, linkage));
                }
            }
        }
        let (a, b, linkage) = best.unwrap_or_else(|| {
            let mut ids = (0..c).filter(|&x| alive[x]);
            (ids.next().unwrap(), ids.next().unwrap(), 0.0)
        });
        debug!("merge clusters {a} and {b} (linkage {linkage})");

        let absorbed = std::mem::take(&mut links[b]);
        for (x, w) in absorbed {
            links[x].remove(&b);
            if x != a {
                *links[a].entry(x).or_default() += w;
                *links[x].entry(a).or_default() += w;
            }
        }
        links[a].remove(&b);
        sizes[a] += sizes[b];
        alive[b] = false;
        for o in owner.iter_mut().filter(|o| **o == b) {
            *o = a;
        }
        remaining -= 1;
    }

    let mut dense = vec![usize::MAX; c];
    let mut next = 0;
    for (slot, d) in dense.iter_mut().enumerate() {
        if alive[slot] {
            *d = next;
            next += 1;
        }
    }
    Partition::new(p.assignment().iter().map(|&x| dense[owner[x]]).collect())
}
