use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use hypermod::io::{format_hmetis, format_labels, format_partition, load_assignment, load_hmetis};
use hypermod::reduction::degree_preserving_reduce_with;
use hypermod::{
    agglomerate, clique_reduce, cut_stats, degree_preserving_reduce, irmm, louvain, modularity,
    symmetric_f1, GenConfig, Hypergraph, IrmmConfig, LouvainConfig, NormKind, Partition,
    WeightedGraph, HISTOGRAM_BINS,
};
use log::info;
use serde::Serialize;

use crate::cputime::process_cpu_seconds;
use crate::{
    BenchArgs, ClusterArgs, EvalArgs, GenerateArgs, Method, Norm, ReduceArgs, Reduction, StatsArgs,
};

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn write_or_print(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(p) => write(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<Hypergraph> {
    let g = load_hmetis(path).with_context(|| format!("cannot load {}", path.display()))?;
    Ok(g.preprocess()?)
}

/// `<dir>/<stem>.<suffix>` next to `input`.
fn sibling(input: &Path, suffix: &str) -> PathBuf {
    let stem = input
        .file_stem()
        .map_or_else(|| "hypergraph".into(), |s| s.to_string_lossy().into_owned());
    input.with_file_name(format!("{stem}.{suffix}"))
}

/// Restricts a 1-based node-id map to the nodes kept by preprocessing.
fn restrict(g: &Hypergraph, labels: &BTreeMap<usize, i64>, source: &Path) -> Result<Partition> {
    let picked =
        g.original_ids()
            .iter()
            .map(|&v| {
                labels.get(&(v + 1)).copied().with_context(|| {
                    format!("{} has no entry for node {}", source.display(), v + 1)
                })
            })
            .collect::<Result<Vec<i64>>>()?;
    Ok(Partition::from_labels(&picked))
}

fn histogram_row(label: &str, h: &[f64; HISTOGRAM_BINS]) -> String {
    let mut row = label.to_string();
    for x in h {
        write!(row, "\t{x}").unwrap();
    }
    row.push('\n');
    row
}

fn histogram_header(first: &str) -> String {
    let mut row = first.to_string();
    for b in 0..HISTOGRAM_BINS {
        write!(
            row,
            "\t({:.1},{:.1}]",
            b as f64 / 10.0,
            (b + 1) as f64 / 10.0
        )
        .unwrap();
    }
    row.push('\n');
    row
}

#[derive(Serialize)]
struct ClusterMetrics {
    method: &'static str,
    f1: Option<f64>,
    num_clusters: usize,
    modularity: f64,
    histogram: [f64; HISTOGRAM_BINS],
    iterations: usize,
    converged: bool,
    nodes: usize,
    hyperedges: usize,
}

struct Round {
    weight_change: f64,
    modularity: f64,
    num_clusters: usize,
    partition: Partition,
}

pub fn cluster(a: &ClusterArgs) -> Result<()> {
    let g = load(&a.input)?;
    info!(
        "{}: {} nodes, {} hyperedges after preprocessing",
        a.input.display(),
        g.num_nodes(),
        g.num_edges()
    );
    let lcfg = LouvainConfig {
        seed: a.seed,
        shuffle: a.shuffle,
        ..LouvainConfig::default()
    };
    let truth = a
        .labels
        .as_ref()
        .map(|p| -> Result<Partition> {
            let map = load_assignment(p).with_context(|| format!("cannot load {}", p.display()))?;
            restrict(&g, &map, p)
        })
        .transpose()?;

    // The reduced graph each method clusters, reused for refinement.
    let (graph, partition, mut q, iterations, converged, rounds): (
        WeightedGraph,
        _,
        _,
        _,
        _,
        Vec<Round>,
    ) = match a.method {
        Method::CliqueLouvain | Method::Hlouvain => {
            let graph = if a.method == Method::CliqueLouvain {
                clique_reduce(&g)
            } else {
                degree_preserving_reduce(&g)?
            };
            let r = louvain(&graph, &lcfg)?;
            let round = Round {
                weight_change: 0.0,
                modularity: r.modularity,
                num_clusters: r.partition.num_clusters(),
                partition: r.partition.clone(),
            };
            (graph, r.partition, r.modularity, 1, true, vec![round])
        }
        Method::Irmm => {
            let cfg = IrmmConfig {
                alpha: a.alpha,
                threshold: a.threshold,
                max_iters: a.max_iters,
                norm: match a.norm {
                    Norm::Linf => NormKind::LInf,
                    Norm::L2 => NormKind::L2,
                },
                louvain: lcfg,
            };
            let r = irmm(&g, &cfg)?;
            let graph = degree_preserving_reduce_with(&g, &r.clustering_weights)?;
            let rounds = r
                .trace
                .iter()
                .zip(r.history)
                .map(|(t, p)| Round {
                    weight_change: t.weight_change,
                    modularity: t.modularity,
                    num_clusters: t.num_clusters,
                    partition: p,
                })
                .collect();
            (
                graph,
                r.partition,
                r.modularity,
                r.iterations,
                r.converged,
                rounds,
            )
        }
    };

    let partition = match a.k {
        Some(k) => {
            let refined = agglomerate(&graph, &partition, k)?;
            q = modularity(&graph, &refined);
            refined
        }
        None => partition,
    };

    let f1 = truth
        .as_ref()
        .map(|t| symmetric_f1(&partition, t))
        .transpose()?;
    let metrics = ClusterMetrics {
        method: a.method.name(),
        f1,
        num_clusters: partition.num_clusters(),
        modularity: q,
        histogram: cut_stats(&g, &partition).histogram,
        iterations,
        converged,
        nodes: g.num_nodes(),
        hyperedges: g.num_edges(),
    };

    let out = a
        .output
        .clone()
        .unwrap_or_else(|| sibling(&a.input, &format!("{}.partition.tsv", a.method.name())));
    let metrics_path = a
        .metrics
        .clone()
        .unwrap_or_else(|| sibling(&a.input, &format!("{}.metrics.json", a.method.name())));
    write(&out, &format_partition(&g, &partition))?;
    write(
        &metrics_path,
        &(serde_json::to_string_pretty(&metrics)? + "\n"),
    )?;

    if let Some(path) = &a.trace {
        let mut s = String::from("iteration\tweight_change\tmodularity\tnum_clusters\n");
        for (i, r) in rounds.iter().enumerate() {
            writeln!(
                s,
                "{}\t{}\t{}\t{}",
                i + 1,
                r.weight_change,
                r.modularity,
                r.num_clusters
            )
            .unwrap();
        }
        write(path, &s)?;
    }
    if let Some(path) = &a.stats_trace {
        let mut s = histogram_header("iteration");
        for (i, r) in rounds.iter().enumerate() {
            s += &histogram_row(&(i + 1).to_string(), &cut_stats(&g, &r.partition).histogram);
        }
        write(path, &s)?;
    }
    eprintln!(
        "{}: {} clusters, Q = {:.6}{}",
        a.method.name(),
        metrics.num_clusters,
        metrics.modularity,
        f1.map_or(String::new(), |f| format!(", F1 = {f:.4}"))
    );
    Ok(())
}

#[derive(Serialize)]
struct EvalReport {
    f1: f64,
    nodes: usize,
    pred_clusters: usize,
    truth_clusters: usize,
}

pub fn eval(a: &EvalArgs) -> Result<()> {
    let pred =
        load_assignment(&a.pred).with_context(|| format!("cannot load {}", a.pred.display()))?;
    let truth =
        load_assignment(&a.truth).with_context(|| format!("cannot load {}", a.truth.display()))?;
    // Clustering may drop nodes during preprocessing: compare on the smaller
    // node set as long as it is contained in the larger one.
    let (small, large) = if pred.len() <= truth.len() {
        (&pred, &truth)
    } else {
        (&truth, &pred)
    };
    if let Some(v) = small.keys().find(|v| !large.contains_key(v)) {
        bail!(
            "node sets differ: node {v} appears in only one file ({} vs {} nodes)",
            pred.len(),
            truth.len()
        );
    }
    let nodes: Vec<usize> = small.keys().copied().collect();
    let p = Partition::from_labels(&nodes.iter().map(|v| pred[v]).collect::<Vec<_>>());
    let t = Partition::from_labels(&nodes.iter().map(|v| truth[v]).collect::<Vec<_>>());
    let report = EvalReport {
        f1: symmetric_f1(&p, &t)?,
        nodes: nodes.len(),
        pred_clusters: p.num_clusters(),
        truth_clusters: t.num_clusters(),
    };
    let json = serde_json::to_string_pretty(&report)? + "\n";
    print!("{json}");
    if let Some(path) = &a.output {
        write(path, &json)?;
    }
    Ok(())
}

pub fn generate(a: &GenerateArgs) -> Result<()> {
    let mut cfg = GenConfig::new(a.nodes, a.seed);
    cfg.classes = a.classes;
    cfg.homophily_deviation = a.homophily_deviation;
    cfg.edge_factor = a.edge_factor;
    let (g, truth) = hypermod::generate(&cfg)?;
    let base = format!("synthetic-n{}-s{}", a.nodes, a.seed);
    let out = a
        .output
        .clone()
        .unwrap_or_else(|| format!("{base}.hgr").into());
    let labels = a
        .labels
        .clone()
        .unwrap_or_else(|| format!("{base}.labels").into());
    write(&out, &format_hmetis(&g))?;
    write(&labels, &format_labels(truth.assignment()))?;
    eprintln!(
        "wrote {} ({} nodes, {} hyperedges) and {}",
        out.display(),
        g.num_nodes(),
        g.num_edges(),
        labels.display()
    );
    Ok(())
}

pub fn stats(a: &StatsArgs) -> Result<()> {
    let g = load(&a.input)?;
    let mut s = histogram_header("partition");
    for path in &a.partition {
        let map =
            load_assignment(path).with_context(|| format!("cannot load {}", path.display()))?;
        let p = restrict(&g, &map, path)?;
        s += &histogram_row(&path.display().to_string(), &cut_stats(&g, &p).histogram);
    }
    write_or_print(a.output.as_deref(), &s)
}

pub fn bench(a: &BenchArgs) -> Result<()> {
    if a.step == 0 {
        bail!("--step must be positive");
    }
    if a.min < 10 || a.min > a.max {
        bail!(
            "invalid range: need 10 <= min <= max, got min {} max {}",
            a.min,
            a.max
        );
    }
    let mut s = String::from("n\tcpu_seconds\n");
    for n in (a.min..=a.max).step_by(a.step) {
        let (g, _) = hypermod::generate(&GenConfig::new(n, a.seed))?;
        let g = g.preprocess()?;
        let start = process_cpu_seconds();
        let reduced = degree_preserving_reduce(&g)?;
        let r = louvain(&reduced, &LouvainConfig::default())?;
        let secs = process_cpu_seconds() - start;
        info!(
            "n = {n}: {secs:.3}s, {} clusters",
            r.partition.num_clusters()
        );
        writeln!(s, "{n}\t{secs:.6}").unwrap();
    }
    write_or_print(a.output.as_deref(), &s)
}

pub fn reduce(a: &ReduceArgs) -> Result<()> {
    let g = load(&a.input)?;
    let graph = match a.reduction {
        Reduction::Clique => clique_reduce(&g),
        Reduction::DegreePreserving => degree_preserving_reduce(&g)?,
    };
    let ids = g.original_ids();
    let mut s = String::new();
    for (i, j, w) in graph.upper_edges() {
        writeln!(s, "{}\t{}\t{w}", ids[i] + 1, ids[j] + 1).unwrap();
    }
    write_or_print(a.output.as_deref(), &s)
}
