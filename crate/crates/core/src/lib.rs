//! Hypergraph clustering by modularity maximization.
//!
//! The pipeline reduces a weighted hypergraph to a graph whose node degrees
//! equal the hypergraph node degrees, maximizes modularity on that graph with
//! the Louvain method, and optionally refines the result by iteratively
//! reweighting hyperedges according to how evenly they are cut.
//!
//! ```
//! use hypermod::{Hypergraph, LouvainConfig};
//!
//! let g = Hypergraph::new(6, vec![vec![0, 1, 2], vec![3, 4, 5], vec![2, 3]], None).unwrap();
//! let reduced = hypermod::degree_preserving_reduce(&g).unwrap();
//! let result = hypermod::louvain(&reduced, &LouvainConfig::default()).unwrap();
//! assert_eq!(result.partition.num_clusters(), 2);
//! ```

mod dsu;
pub mod error;
pub mod eval;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod irmm;
pub mod louvain;
pub mod modularity;
pub mod reduction;
pub mod refine;
pub mod synthgen;

pub use error::{Error, Result};
pub use eval::{cut_stats, symmetric_f1, CutStats, HISTOGRAM_BINS};
pub use graph::WeightedGraph;
pub use hypergraph::{DegreeView, Hypergraph};
pub use irmm::{irmm, reweight, two_way_cut_score, IrmmConfig, IrmmResult, NormKind, WeightState};
pub use louvain::{flatten, louvain, Dendrogram, LouvainConfig, LouvainResult};
pub use modularity::{modularity, ModularityContext, Partition};
pub use reduction::{
    clique_reduce, degree_preserving_reduce, random_walk_matrix, ReducedGraph, TransitionMatrix,
};
pub use refine::agglomerate;
pub use synthgen::{generate, GenConfig, SizeBucket};
