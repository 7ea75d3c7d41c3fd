//! Scaling benchmark over generated random graphs.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::generate_random_graph;
use crate::pricing::{price_graph, PricingConfig, PricingReport, SimilarityMode, StageTimings};

/// Exact similarity is quadratic; larger benchmark sizes are refused.
pub const EXACT_NODE_LIMIT: usize = 4000;

/// Default size ladder: 1000, 2000, 4000, 8000, 16000 nodes.
pub fn default_ladder() -> Vec<usize> {
    (0..5).map(|k| 1000 << k).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub dataset: String,
    pub seed: u64,
    /// Nodes and edges of the preprocessed graph.
    pub n: usize,
    pub m: usize,
    pub method: String,
    pub timings: StageTimings,
    pub total_ms: f64,
    pub price_std: f64,
    pub price_min: f64,
    pub price_max: f64,
}

impl BenchRecord {
    pub fn from_report(dataset: impl Into<String>, seed: u64, report: &PricingReport) -> Self {
        Self {
            dataset: dataset.into(),
            seed,
            n: report.nodes,
            m: report.edges,
            method: report.config.similarity_mode.tag().to_string(),
            timings: report.timings,
            total_ms: report.timings.total_ms,
            price_std: report.prices.std_dev(),
            price_min: report.prices.min(),
            price_max: report.prices.max(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub sizes: Vec<usize>,
    /// Edges per node in generated graphs.
    pub edge_factor: usize,
    pub seeds: Vec<u64>,
    /// Pipeline runs per graph; the median one is recorded.
    pub repeats: usize,
    pub config: PricingConfig,
}

impl Default for BenchSpec {
    fn default() -> Self {
        Self {
            sizes: default_ladder(),
            edge_factor: 5,
            seeds: (0..10).collect(),
            repeats: 1,
            config: PricingConfig::default(),
        }
    }
}

/// Runs the pipeline on one generated graph per (size, seed).
///
/// With several repeats, each round times every graph once and the run
/// with the median total is kept per graph. Interleaving rounds spreads a
/// slow period on the machine over all sizes instead of letting it land on
/// one, and the median is not biased towards sizes whose longer runs are
/// more likely to catch a brief fast period.
pub fn run_bench(spec: &BenchSpec) -> Result<Vec<BenchRecord>> {
    if spec.config.similarity_mode == SimilarityMode::Exact {
        if let Some(&n) = spec.sizes.iter().find(|&&n| n > EXACT_NODE_LIMIT) {
            return Err(Error::TooManyNodes { limit: EXACT_NODE_LIMIT, actual: n });
        }
    }
    if spec.repeats == 0 {
        return Err(Error::InvalidParameter("repeats must be at least 1".into()));
    }
    let mut graphs = Vec::with_capacity(spec.sizes.len() * spec.seeds.len());
    for &n in &spec.sizes {
        for &seed in &spec.seeds {
            let m = n * spec.edge_factor;
            graphs.push((format!("er_{n}_{m}"), seed, generate_random_graph(n, m, seed)?));
        }
    }
    let mut runs: Vec<Vec<PricingReport>> = vec![Vec::with_capacity(spec.repeats); graphs.len()];
    // seed-major order, so each seed's ladder is timed close together
    let order: Vec<usize> = (0..spec.seeds.len())
        .flat_map(|s| (0..spec.sizes.len()).map(move |k| k * spec.seeds.len() + s))
        .collect();
    for _ in 0..spec.repeats {
        for &i in &order {
            runs[i].push(price_graph(graphs[i].2.clone(), &spec.config)?);
        }
    }
    Ok(graphs
        .iter()
        .zip(runs)
        .map(|((name, seed, _), mut reports)| {
            reports.sort_by(|a, b| a.timings.total_ms.total_cmp(&b.timings.total_ms));
            BenchRecord::from_report(name.clone(), *seed, &reports[reports.len() / 2])
        })
        .collect())
}

/// One step of the ladder: summed wall-clock at `n` and at the next size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepRatio {
    pub from_n: usize,
    pub to_n: usize,
    pub from_ms: f64,
    pub to_ms: f64,
    pub ratio: f64,
}

/// Runtime ratio between adjacent sizes, runtimes summed over seeds.
/// Sizes are taken in the order they first appear in `records`.
pub fn step_ratios(records: &[BenchRecord], sizes: &[usize]) -> Vec<StepRatio> {
    let totals: Vec<f64> = (0..sizes.len())
        .map(|i| {
            let per_size = records.len() / sizes.len().max(1);
            records[i * per_size..(i + 1) * per_size].iter().map(|r| r.total_ms).sum()
        })
        .collect();
    sizes
        .windows(2)
        .zip(totals.windows(2))
        .map(|(s, t)| StepRatio { from_n: s[0], to_n: s[1], from_ms: t[0], to_ms: t[1], ratio: t[1] / t[0] })
        .collect()
}

pub fn write_records_csv<W: Write>(records: &[BenchRecord], mut out: W) -> Result<()> {
    writeln!(
        out,
        "dataset,seed,n,m,method,preprocess_ms,dominator_ms,similarity_ms,criticality_ms,\
         substitutability_ms,pricing_ms,total_ms,price_std,price_min,price_max"
    )?;
    for r in records {
        let t = &r.timings;
        writeln!(
            out,
            "{},{},{},{},{},{:.3},{:.3},{:.3},{:.3},{:.3},{:.3},{:.3},{},{},{}",
            r.dataset,
            r.seed,
            r.n,
            r.m,
            r.method,
            t.preprocess_ms,
            t.dominator_ms,
            t.similarity_ms,
            t.criticality_ms,
            t.substitutability_ms,
            t.pricing_ms,
            r.total_ms,
            r.price_std,
            r.price_min,
            r.price_max
        )?;
    }
    Ok(())
}
