//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL line
//! with the measured quantities; the process exits nonzero if any fails.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use hypermod::irmm::two_way_cut_score_ratio;
use hypermod::{
    clique_reduce, degree_preserving_reduce, generate, irmm, louvain, modularity,
    random_walk_matrix, symmetric_f1, two_way_cut_score, GenConfig, Hypergraph, IrmmConfig,
    LouvainConfig, Partition,
};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BIN: &str = env!("CARGO_BIN_EXE_hypermod");

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Weighted hypergraphs with n ≤ 100, mostly small hyperedges plus an
/// occasional one spanning a large share of the nodes.
fn random_corpus(count: usize, seed: u64) -> Vec<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=100);
            let m = rng.gen_range(1..=60);
            let mut edges = Vec::with_capacity(m);
            let mut weights = Vec::with_capacity(m);
            for _ in 0..m {
                let size = if rng.gen_bool(0.1) {
                    rng.gen_range(2..=n)
                } else {
                    rng.gen_range(2..=n.min(8))
                };
                edges.push(index::sample(&mut rng, n, size).into_vec());
                weights.push(rng.gen_range(0.1..10.0));
            }
            Hypergraph::new(n, edges, Some(weights)).unwrap()
        })
        .collect()
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn degree_preservation(corpus: &[Hypergraph]) -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for g in corpus {
        let a = degree_preserving_reduce(g).unwrap();
        let d = g.degrees().node_degrees;
        for (i, &d) in d.iter().enumerate() {
            worst = worst.max(rel_err(a.degree(i), d));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-9 && secs < 5.0,
        format!(
            "{} hypergraphs, max relative error {worst:.2e}, {secs:.3}s",
            corpus.len()
        ),
    )
}

fn clique_overcount(corpus: &[Hypergraph]) -> Outcome {
    let mut worst = 0.0f64;
    for g in corpus {
        let a = clique_reduce(g);
        for i in 0..g.num_nodes() {
            let expect: f64 = g
                .incident_edges(i)
                .iter()
                .map(|&e| g.weight(e) * (g.edge_degree(e) - 1) as f64)
                .sum();
            worst = worst.max(rel_err(a.degree(i), expect));
        }
    }
    outcome(worst <= 1e-9, format!("max relative error {worst:.2e}"))
}

fn walk_stochastic(corpus: &[Hypergraph]) -> Outcome {
    let mut worst = 0.0f64;
    let mut checked = 0;
    for g in corpus {
        // Random hypergraphs may leave nodes uncovered; the walk is defined
        // on the covered part.
        let g = g.preprocess().unwrap();
        let p = random_walk_matrix(&g).unwrap();
        for s in p.row_sums() {
            worst = worst.max((s - 1.0).abs());
        }
        checked += 1;
    }
    outcome(
        worst <= 1e-9,
        format!("{checked} walks, max |row sum - 1| {worst:.2e}"),
    )
}

/// `(1/2m) Σ_ij (A_ij − k_i k_j / 2m) [g_i = g_j]` straight from a list of
/// node pairs.
fn pair_list_modularity(n: usize, pairs: &[(usize, usize)], labels: &[usize]) -> f64 {
    let mut a = vec![vec![0.0; n]; n];
    for &(i, j) in pairs {
        a[i][j] += 1.0;
        a[j][i] += 1.0;
    }
    let k: Vec<f64> = a.iter().map(|r| r.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

fn dyadic_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut worst = 0.0f64;
    let mut same_partition = 0;
    for _ in 0..50 {
        let n = rng.gen_range(4..=40);
        let m = rng.gen_range(n..=3 * n);
        let pairs: Vec<(usize, usize)> = (0..m)
            .map(|_| {
                let s = index::sample(&mut rng, n, 2);
                (s.index(0), s.index(1))
            })
            .collect();
        let g = Hypergraph::new(n, pairs.iter().map(|&(i, j)| vec![i, j]).collect(), None).unwrap();
        let c = rng.gen_range(1..=n.min(6));
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..c)).collect();
        let p = Partition::from_labels(&labels);
        let hyper = degree_preserving_reduce(&g).unwrap();
        let q_hyper = modularity(&hyper, &p);
        let q_graph = pair_list_modularity(n, &pairs, p.assignment());
        worst = worst.max((q_hyper - q_graph).abs());

        let cfg = LouvainConfig {
            seed: 7,
            ..LouvainConfig::default()
        };
        let a = louvain(&hyper, &cfg).unwrap();
        let b = louvain(&clique_reduce(&g), &cfg).unwrap();
        same_partition += usize::from(a.partition == b.partition);
    }
    outcome(
        worst <= 1e-12 && same_partition == 50,
        format!("max |Q_hyp - Q_graph| {worst:.2e}, identical partitions {same_partition}/50"),
    )
}

fn modularity_identities(corpus: &[Hypergraph]) -> Outcome {
    let mut one_nonzero = 0;
    let mut worst = 0.0f64;
    for g in corpus {
        let a = degree_preserving_reduce(g).unwrap();
        let n = g.num_nodes();
        if modularity(&a, &Partition::one_cluster(n)) != 0.0 {
            one_nonzero += 1;
        }
        let k = g.degrees().node_degrees;
        let two_m: f64 = k.iter().sum();
        let expect = -k.iter().map(|k| k * k).sum::<f64>() / (two_m * two_m);
        worst = worst.max((modularity(&a, &Partition::singletons(n)) - expect).abs());
    }
    outcome(
        one_nonzero == 0 && worst <= 1e-12,
        format!("Q(one) != 0 in {one_nonzero} cases, max singleton error {worst:.2e}"),
    )
}

fn cut_score_values() -> Outcome {
    let mut failures = Vec::new();
    let mut check = |k1: usize, k2: usize, d: usize, expect: (u64, u64)| {
        let got = two_way_cut_score_ratio(k1, k2, d).unwrap();
        if got != expect {
            failures.push(format!("{k1}:{k2} of {d} gave {}/{}", got.0, got.1));
        }
    };
    check(2, 18, 20, (100, 9));
    check(10, 10, 20, (4, 1));
    for d in (20..=400).step_by(20) {
        check(3 * d / 4, d / 4, d, (16, 3));
        check(19 * d / 20, d / 20, d, (400, 19));
    }
    let shown = two_way_cut_score(2, 18, 20).unwrap();
    if format!("{shown:.3}") != "11.111" {
        failures.push(format!("2:18 of 20 displays as {shown:.3}"));
    }
    let detail = if failures.is_empty() {
        "100/9, 4, 16/3 and 400/19 exact for δ = 20..400".to_string()
    } else {
        failures.join("; ")
    };
    outcome(failures.is_empty(), detail)
}

/// Calls `f` with every partition of `0..n` as a restricted growth string.
fn for_each_partition(n: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(labels: &mut Vec<usize>, next: usize, n: usize, f: &mut impl FnMut(&[usize])) {
        if labels.len() == n {
            f(labels);
            return;
        }
        for c in 0..=next {
            labels.push(c);
            rec(labels, next.max(c + 1), n, f);
            labels.pop();
        }
    }
    rec(&mut Vec::with_capacity(n), 0, n, f);
}

fn dense_modularity(a: &[Vec<f64>], k: &[f64], two_m: f64, labels: &[usize]) -> f64 {
    let n = a.len();
    let mut q = 0.0;
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                q += a[i][j] - k[i] * k[j] / two_m;
            }
        }
    }
    q / two_m
}

fn louvain_vs_brute_force() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut above_max = 0;
    let mut near_optimal = 0;
    let mut positive = 0;
    for _ in 0..100 {
        let n = rng.gen_range(3..=9);
        let m = rng.gen_range(2..=8);
        let edges: Vec<Vec<usize>> = (0..m)
            .map(|_| {
                let size = rng.gen_range(2..=n.min(5));
                index::sample(&mut rng, n, size).into_vec()
            })
            .collect();
        let weights: Vec<f64> = (0..m).map(|_| rng.gen_range(0.5..3.0)).collect();
        let g = Hypergraph::new(n, edges, Some(weights)).unwrap();
        let reduced = degree_preserving_reduce(&g).unwrap();
        let a = reduced.to_dense().unwrap();
        let k: Vec<f64> = a.iter().map(|r| r.iter().sum()).collect();
        let two_m: f64 = k.iter().sum();
        let mut q_max = f64::NEG_INFINITY;
        for_each_partition(n, &mut |labels| {
            q_max = q_max.max(dense_modularity(&a, &k, two_m, labels));
        });
        let q = louvain(&reduced, &LouvainConfig::default())
            .unwrap()
            .modularity;
        if q > q_max + 1e-12 {
            above_max += 1;
        }
        // Partitions of symmetric instances can score ~1e-17 from rounding
        // alone; those count as zero.
        if q_max > 1e-12 {
            positive += 1;
            if q >= 0.95 * q_max - 1e-12 {
                near_optimal += 1;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let share = near_optimal as f64 / positive.max(1) as f64;
    outcome(
        above_max == 0 && share >= 0.95 && secs < 60.0,
        format!(
            "above optimum {above_max}/100, within 95% of optimum {near_optimal}/{positive} ({:.1}%), {secs:.2}s",
            100.0 * share
        ),
    )
}

fn synthetic(n: usize, seed: u64) -> (Hypergraph, Partition) {
    let (g, truth) = generate(&GenConfig::new(n, seed)).unwrap();
    let kept = g.preprocess().unwrap();
    let labels: Vec<usize> = kept
        .original_ids()
        .iter()
        .map(|&v| truth.cluster_of(v))
        .collect();
    (kept, Partition::from_labels(&labels))
}

fn irmm_convergence() -> Outcome {
    let mut worst_change = 0.0f64;
    let mut max_rounds = 0;
    let mut failed = 0;
    for seed in 0..10 {
        let (g, _) = synthetic(200, seed);
        let r = irmm(&g, &IrmmConfig::default()).unwrap();
        let last = r.trace.last().unwrap().weight_change;
        worst_change = worst_change.max(last);
        max_rounds = max_rounds.max(r.iterations);
        if !(r.converged && last < 0.01 && r.iterations <= 50) {
            failed += 1;
        }
    }
    outcome(
        failed == 0,
        format!("{failed} runs failed, at most {max_rounds} rounds, final |dW|_inf <= {worst_change:.4}"),
    )
}

fn quality_direction() -> Outcome {
    let (mut f_irmm, mut f_hl, mut f_cl) = (0.0, 0.0, 0.0);
    let runs = 10;
    for seed in 0..runs {
        let (g, truth) = synthetic(200, seed);
        let cfg = LouvainConfig::default();
        let cl = louvain(&clique_reduce(&g), &cfg).unwrap().partition;
        let hl = louvain(&degree_preserving_reduce(&g).unwrap(), &cfg)
            .unwrap()
            .partition;
        let ir = irmm(&g, &IrmmConfig::default()).unwrap().partition;
        f_cl += symmetric_f1(&cl, &truth).unwrap();
        f_hl += symmetric_f1(&hl, &truth).unwrap();
        f_irmm += symmetric_f1(&ir, &truth).unwrap();
    }
    let (f_irmm, f_hl, f_cl) = (f_irmm / runs as f64, f_hl / runs as f64, f_cl / runs as f64);
    let gap = f_irmm - f_cl;
    outcome(
        f_irmm >= f_hl && f_hl >= f_cl && gap > 0.0,
        format!(
            "mean F1 irmm {f_irmm:.4}, hlouvain {f_hl:.4}, clique-louvain {f_cl:.4}, gap {gap:.4}"
        ),
    )
}

/// Least-squares slope of `ln y` against `ln x`.
fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

fn run(args: &[&str], dir: &Path) -> Result<(), String> {
    let out = Command::new(BIN)
        .args(args)
        .current_dir(dir)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(())
    } else {
        Err(format!(
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr).trim()
        ))
    }
}

fn scalability(dir: &Path) -> Outcome {
    let start = Instant::now();
    if let Err(e) = run(
        &[
            "bench",
            "--min",
            "1000",
            "--max",
            "4000",
            "--step",
            "500",
            "--seed",
            "1",
            "--output",
            "bench.tsv",
        ],
        dir,
    ) {
        return outcome(false, e);
    }
    let secs = start.elapsed().as_secs_f64();
    let text = fs::read_to_string(dir.join("bench.tsv")).unwrap();
    let points: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let mut f = l.split('\t').map(|x| x.parse::<f64>().unwrap());
            (f.next().unwrap(), f.next().unwrap())
        })
        .collect();
    let slope = log_log_slope(&points);
    let timings: Vec<String> = points.iter().map(|(n, t)| format!("{n}:{t:.3}s")).collect();
    outcome(
        points.len() == 7 && slope < 2.0 && secs < 600.0,
        format!(
            "fitted exponent {slope:.3} over {} sizes [{}], bench wall time {secs:.1}s",
            points.len(),
            timings.join(" ")
        ),
    )
}

fn determinism(dir: &Path) -> Outcome {
    let steps: Vec<Vec<&str>> = vec![
        vec![
            "generate", "--nodes", "300", "--seed", "5", "--output", "g.hgr", "--labels",
            "g.labels",
        ],
        vec![
            "cluster",
            "--input",
            "g.hgr",
            "--method",
            "irmm",
            "--seed",
            "7",
            "--output",
            "a.tsv",
            "--metrics",
            "a.json",
            "--trace",
            "a.trace",
        ],
        vec![
            "cluster",
            "--input",
            "g.hgr",
            "--method",
            "irmm",
            "--seed",
            "7",
            "--output",
            "b.tsv",
            "--metrics",
            "b.json",
            "--trace",
            "b.trace",
        ],
        vec![
            "cluster",
            "--input",
            "g.hgr",
            "--method",
            "hlouvain",
            "--shuffle",
            "--seed",
            "3",
            "--output",
            "c.tsv",
            "--metrics",
            "c.json",
        ],
        vec![
            "cluster",
            "--input",
            "g.hgr",
            "--method",
            "hlouvain",
            "--shuffle",
            "--seed",
            "3",
            "--output",
            "d.tsv",
            "--metrics",
            "d.json",
        ],
    ];
    for s in &steps {
        if let Err(e) = run(s, dir) {
            return outcome(false, e);
        }
    }
    let read = |f: &str| fs::read(dir.join(f)).unwrap();
    let pairs = [
        ("a.tsv", "b.tsv"),
        ("a.json", "b.json"),
        ("a.trace", "b.trace"),
        ("c.tsv", "d.tsv"),
        ("c.json", "d.json"),
    ];
    let differing: Vec<String> = pairs
        .iter()
        .filter(|(x, y)| read(x) != read(y))
        .map(|(x, y)| format!("{x}/{y}"))
        .collect();
    outcome(
        differing.is_empty(),
        if differing.is_empty() {
            format!("{} file pairs byte-identical", pairs.len())
        } else {
            format!("differing: {}", differing.join(", "))
        },
    )
}

fn main() {
    let corpus = random_corpus(200, 2024);
    let dir = tempfile::tempdir().expect("temporary directory");
    let criteria: Vec<(&str, Check)> = vec![
        (
            "degree preservation",
            Box::new(|| degree_preservation(&corpus)),
        ),
        (
            "clique reduction overcount",
            Box::new(|| clique_overcount(&corpus)),
        ),
        (
            "random walk rows stochastic",
            Box::new(|| walk_stochastic(&corpus)),
        ),
        ("dyadic equivalence", Box::new(dyadic_equivalence)),
        (
            "modularity identities",
            Box::new(|| modularity_identities(&corpus)),
        ),
        ("two-way cut scores", Box::new(cut_score_values)),
        ("louvain vs brute force", Box::new(louvain_vs_brute_force)),
        ("irmm convergence", Box::new(irmm_convergence)),
        ("quality direction", Box::new(quality_direction)),
        ("scalability trend", Box::new(|| scalability(dir.path()))),
        ("determinism", Box::new(|| determinism(dir.path()))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failed += usize::from(!o.pass);
        println!(
            "criterion {:>2} {:<28} {}  {}",
            i + 1,
            name,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
