use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::criticality::{criticality_dominator, criticality_shortest_path};
use super::prices::{derive_prices, PriceVector, DEFAULT_EPSILON};
use super::scores::ScoreTable;
use crate::dominator::compute_dominator_tree;
use crate::error::{Error, Result};
use crate::graph::{preprocess, DirectedGraph, NodeId, RootPolicy, RootedGraph};
use crate::similarity::{approx_similarity_scores, build_tree_lsh_index, exact_similarity_scores, LshParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalityMode {
    #[default]
    Dominator,
    ShortestPath,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimilarityMode {
    #[default]
    Exact,
    MinhashLsh,
}

impl SimilarityMode {
    /// Short tag used in CSV output.
    pub fn tag(self) -> &'static str {
        match self {
            SimilarityMode::Exact => "exact",
            SimilarityMode::MinhashLsh => "approx",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PricingConfig {
    pub root_policy: RootPolicy,
    pub criticality_mode: CriticalityMode,
    pub similarity_mode: SimilarityMode,
    pub num_perm: usize,
    pub threshold: f64,
    pub epsilon: f64,
    pub seed: u64,
}

impl Default for PricingConfig {
    fn default() -> Self {
        let lsh = LshParams::default();
        Self {
            root_policy: RootPolicy::VirtualSuperRoot,
            criticality_mode: CriticalityMode::Dominator,
            similarity_mode: SimilarityMode::Exact,
            num_perm: lsh.num_perm,
            threshold: lsh.threshold,
            epsilon: DEFAULT_EPSILON,
            seed: lsh.seed,
        }
    }
}

impl PricingConfig {
    pub fn lsh_params(&self) -> LshParams {
        LshParams { num_perm: self.num_perm, threshold: self.threshold, seed: self.seed }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::InvalidParameter(format!("epsilon must lie in (0, 1), got {}", self.epsilon)));
        }
        if self.similarity_mode == SimilarityMode::MinhashLsh {
            self.lsh_params().validate()?;
        }
        Ok(())
    }
}

/// Wall-clock milliseconds spent in each stage.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct StageTimings {
    pub preprocess_ms: f64,
    pub dominator_ms: f64,
    pub similarity_ms: f64,
    pub criticality_ms: f64,
    pub substitutability_ms: f64,
    pub pricing_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceRow {
    pub node_label: u64,
    pub criticality: f64,
    pub mean_similarity: f64,
    pub substitutability: f64,
    pub price: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PricingReport {
    pub config: PricingConfig,
    /// Node and edge counts of the analysed graph, synthetic root included.
    pub nodes: usize,
    pub edges: usize,
    pub virtual_root_added: bool,
    pub timings: StageTimings,
    pub rows: Vec<PriceRow>,
    #[serde(skip)]
    pub scores: ScoreTable<f64>,
    #[serde(skip)]
    pub prices: PriceVector<f64>,
}

impl PricingReport {
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "node_label,criticality,mean_similarity,substitutability,price")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{}",
                r.node_label, r.criticality, r.mean_similarity, r.substitutability, r.price
            )?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, self)?;
        Ok(())
    }
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Preprocess, build the dominator tree, score and price every node.
pub fn price_graph(graph: DirectedGraph, config: &PricingConfig) -> Result<PricingReport> {
    config.validate()?;
    let start = Instant::now();
    let rooted = preprocess(graph, config.root_policy)?;
    let preprocess_ms = elapsed_ms(start);
    let mut report = price_rooted(&rooted, config)?;
    report.timings.preprocess_ms = preprocess_ms;
    report.timings.total_ms += preprocess_ms;
    Ok(report)
}

/// The pipeline from the dominator tree onwards, on an already rooted graph.
pub fn price_rooted(rooted: &RootedGraph, config: &PricingConfig) -> Result<PricingReport> {
    config.validate()?;
    let mut timings = StageTimings::default();

    let start = Instant::now();
    let tree = compute_dominator_tree(rooted)?;
    timings.dominator_ms = elapsed_ms(start);

    let start = Instant::now();
    let similarity: Vec<f64> = match config.similarity_mode {
        SimilarityMode::Exact => exact_similarity_scores(&tree)?,
        SimilarityMode::MinhashLsh => {
            let (sigs, index) = build_tree_lsh_index(&tree, config.lsh_params())?;
            approx_similarity_scores(&sigs, &index)?
        }
    };
    timings.similarity_ms = elapsed_ms(start);

    let start = Instant::now();
    let criticality: Vec<f64> = match config.criticality_mode {
        CriticalityMode::Dominator => criticality_dominator(&tree)?,
        CriticalityMode::ShortestPath => criticality_shortest_path(rooted)?,
    };
    timings.criticality_ms = elapsed_ms(start);

    let start = Instant::now();
    let scores = ScoreTable::from_parts(criticality, similarity)?;
    timings.substitutability_ms = elapsed_ms(start);

    let start = Instant::now();
    let nodes: Vec<NodeId> = rooted.output_nodes();
    let prices = derive_prices(&scores, &nodes, config.epsilon)?;
    timings.pricing_ms = elapsed_ms(start);

    timings.total_ms = timings.dominator_ms
        + timings.similarity_ms
        + timings.criticality_ms
        + timings.substitutability_ms
        + timings.pricing_ms;

    let rows = prices
        .nodes
        .iter()
        .zip(&prices.prices)
        .map(|(&v, &price)| PriceRow {
            node_label: rooted.graph.label(v),
            criticality: scores.criticality[v],
            mean_similarity: scores.mean_similarity[v],
            substitutability: scores.substitutability[v],
            price,
        })
        .collect();

    Ok(PricingReport {
        config: *config,
        nodes: rooted.node_count(),
        edges: rooted.graph.edge_count(),
        virtual_root_added: rooted.virtual_root_added,
        timings,
        rows,
        scores,
        prices,
    })
}
