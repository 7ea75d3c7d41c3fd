use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use nodeprice::baselines::{
    degree_centrality_prices, eigenvector_centrality_prices, entropy_prices, monte_carlo_shapley, NodeAttributes,
    ReachablePairs,
};
use nodeprice::bench::{run_bench, step_ratios, write_records_csv, BenchRecord, BenchSpec, StepRatio, EXACT_NODE_LIMIT};
use nodeprice::similarity::{approx_similarity_scores, build_tree_lsh_index, exact_similarity_scores};
use nodeprice::{
    compute_dominator_tree, generate_random_graph, load_edge_list, preprocess, price_graph, write_edge_list,
    DirectedGraph, PriceVector, PricingConfig, RootPolicy, RootedGraph, SimilarityMode,
};
use serde::Serialize;

use crate::{
    BaselineArgs, BaselineMethod, BaselineOptions, BenchArgs, BenchMode, Cli, Command, CompareArgs, CompareMethod,
    Format, GenArgs, GlobalArgs, PipelineArgs, PriceArgs, RootArgs,
};

/// Bad flags, unreadable or malformed input. Maps to exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

pub fn exit_code(e: &anyhow::Error) -> u8 {
    use nodeprice::Error as E;
    for cause in e.chain() {
        if cause.is::<UsageError>() || cause.is::<io::Error>() || cause.is::<serde_json::Error>() {
            return 2;
        }
        if let Some(err) = cause.downcast_ref::<E>() {
            return match err {
                E::Parse { .. }
                | E::EmptyInput
                | E::UnknownNode(_)
                | E::InvalidParameter(_)
                | E::TooManyNodes { .. }
                | E::Io(_)
                | E::Json(_) => 2,
                _ => 3,
            };
        }
    }
    3
}

pub fn run(cli: Cli) -> Result<()> {
    if let Some(threads) = cli.global.threads {
        if threads == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring thread pool")?;
    }
    let g = &cli.global;
    match &cli.command {
        Command::Price(args) => cmd_price(g, args),
        Command::Similarity(args) => cmd_similarity(g, args),
        Command::Domtree(args) => cmd_domtree(g, args),
        Command::Baseline(args) => cmd_baseline(g, args),
        Command::Compare(args) => cmd_compare(g, args),
        Command::Bench(args) => cmd_bench(g, args),
        Command::Gen(args) => cmd_gen(g, args),
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn load_input(global: &GlobalArgs) -> Result<DirectedGraph> {
    let path = global.input.as_deref().ok_or_else(|| usage("--input is required"))?;
    let reader: Box<dyn BufRead> = if path == Path::new("-") {
        Box::new(BufReader::new(io::stdin().lock()))
    } else {
        Box::new(BufReader::new(
            File::open(path).with_context(|| format!("opening {}", path.display()))?,
        ))
    };
    load_edge_list(reader).with_context(|| format!("reading {}", path.display()))
}

fn load_config(global: &GlobalArgs) -> Result<PricingConfig> {
    let mut config = match &global.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing config {}", p.display()))?
        }
        None => PricingConfig::default(),
    };
    if let Some(seed) = global.seed {
        config.seed = seed;
    }
    Ok(config)
}

fn apply_root(config: &mut PricingConfig, args: &RootArgs) {
    if let Some(label) = args.root {
        config.root_policy = RootPolicy::Designated(label);
    }
}

fn apply_pipeline(config: &mut PricingConfig, args: &PipelineArgs) {
    apply_root(config, &args.root);
    if let Some(s) = args.similarity {
        config.similarity_mode = s.into();
    }
    if let Some(k) = args.num_perm {
        config.num_perm = k;
    }
    if let Some(t) = args.threshold {
        config.threshold = t;
    }
}

fn price_config(global: &GlobalArgs, args: &PriceArgs) -> Result<PricingConfig> {
    let mut config = load_config(global)?;
    apply_pipeline(&mut config, &args.pipeline);
    if let Some(c) = args.criticality {
        config.criticality_mode = c.into();
    }
    if let Some(e) = args.epsilon {
        config.epsilon = e;
    }
    config.validate()?;
    Ok(config)
}

fn cmd_price(global: &GlobalArgs, args: &PriceArgs) -> Result<()> {
    let config = price_config(global, args)?;
    let graph = load_input(global)?;
    let report = price_graph(graph, &config)?;
    let mut out = open_output(global.output.as_deref())?;
    match global.format {
        Format::Csv => report.write_csv(&mut out)?,
        Format::Json => report.write_json(&mut out)?,
    }
    out.flush()?;
    if let Some(p) = &args.report {
        let mut f = BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?);
        report.write_json(&mut f)?;
        f.flush()?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SimilarityRow {
    node_label: u64,
    mode: &'static str,
    score: f64,
}

fn cmd_similarity(global: &GlobalArgs, args: &PipelineArgs) -> Result<()> {
    let mut config = load_config(global)?;
    apply_pipeline(&mut config, args);
    config.validate()?;
    let rooted = preprocess(load_input(global)?, config.root_policy)?;
    let tree = compute_dominator_tree(&rooted)?;
    let scores: Vec<f64> = match config.similarity_mode {
        SimilarityMode::Exact => exact_similarity_scores(&tree)?,
        SimilarityMode::MinhashLsh => {
            let (sigs, index) = build_tree_lsh_index(&tree, config.lsh_params())?;
            approx_similarity_scores(&sigs, &index)?
        }
    };
    let mode = config.similarity_mode.tag();
    let rows: Vec<SimilarityRow> = rooted
        .output_nodes()
        .into_iter()
        .map(|v| SimilarityRow { node_label: rooted.graph.label(v), mode, score: scores[v] })
        .collect();
    let mut out = open_output(global.output.as_deref())?;
    match global.format {
        Format::Csv => {
            writeln!(out, "node_label,mode,score")?;
            for r in &rows {
                writeln!(out, "{},{},{}", r.node_label, r.mode, r.score)?;
            }
        }
        Format::Json => serde_json::to_writer_pretty(&mut out, &rows)?,
    }
    out.flush()?;
    Ok(())
}

fn rooted_input(global: &GlobalArgs, root: &RootArgs) -> Result<RootedGraph> {
    let mut config = load_config(global)?;
    apply_root(&mut config, root);
    Ok(preprocess(load_input(global)?, config.root_policy)?)
}

fn cmd_domtree(global: &GlobalArgs, args: &RootArgs) -> Result<()> {
    let rooted = rooted_input(global, args)?;
    let tree = compute_dominator_tree(&rooted)?;
    let mut out = open_output(global.output.as_deref())?;
    match global.format {
        Format::Csv => tree.write_dump(&rooted.graph, &mut out)?,
        Format::Json => {
            let rows: Vec<(String, String)> = rooted
                .output_nodes()
                .into_iter()
                .map(|v| (rooted.graph.display_label(v), rooted.graph.display_label(tree.idom(v))))
                .collect();
            let rows: Vec<serde_json::Value> =
                rows.into_iter().map(|(n, i)| serde_json::json!({ "node": n, "idom": i })).collect();
            serde_json::to_writer_pretty(&mut out, &rows)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn baseline_prices(
    g: &DirectedGraph,
    method: BaselineMethod,
    options: &BaselineOptions,
    seed: u64,
) -> Result<PriceVector> {
    Ok(match method {
        BaselineMethod::Shapley => monte_carlo_shapley(g, &ReachablePairs::new(g), options.samples, seed)?,
        BaselineMethod::Entropy => {
            let attrs = NodeAttributes::from_graph(g, options.numeric_attributes);
            entropy_prices(g, attrs.as_ref())?
        }
        BaselineMethod::Degree => degree_centrality_prices(g)?,
        BaselineMethod::Eigenvector => eigenvector_centrality_prices(g, options.tolerance, options.max_iter)?,
    })
}

#[derive(Serialize)]
struct BaselineRow {
    node_label: u64,
    criticality: Option<f64>,
    mean_similarity: Option<f64>,
    substitutability: Option<f64>,
    price: f64,
}

fn cmd_baseline(global: &GlobalArgs, args: &BaselineArgs) -> Result<()> {
    let config = load_config(global)?;
    let rooted = rooted_input(global, &args.root)?;
    let g = rooted.without_virtual_root()?;
    let prices = baseline_prices(&g, args.method, &args.options, config.seed)?;
    let rows: Vec<BaselineRow> = prices
        .nodes
        .iter()
        .zip(&prices.prices)
        .map(|(&v, &price)| BaselineRow {
            node_label: g.label(v),
            criticality: None,
            mean_similarity: None,
            substitutability: None,
            price,
        })
        .collect();
    let mut out = open_output(global.output.as_deref())?;
    match global.format {
        Format::Csv => {
            writeln!(out, "node_label,criticality,mean_similarity,substitutability,price")?;
            for r in &rows {
                writeln!(out, "{},,,,{}", r.node_label, r.price)?;
            }
        }
        Format::Json => serde_json::to_writer_pretty(&mut out, &rows)?,
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct LongRow {
    node: u64,
    method: &'static str,
    price: f64,
}

#[derive(Serialize)]
struct Dispersion {
    method: &'static str,
    count: usize,
    mean: f64,
    std_dev: f64,
    min: f64,
    max: f64,
}

impl CompareMethod {
    fn name(self) -> &'static str {
        match self {
            CompareMethod::Substitutability => "substitutability",
            CompareMethod::Shapley => "shapley",
            CompareMethod::Entropy => "entropy",
            CompareMethod::Degree => "degree",
            CompareMethod::Eigenvector => "eigenvector",
        }
    }

    fn baseline(self) -> Option<BaselineMethod> {
        match self {
            CompareMethod::Substitutability => None,
            CompareMethod::Shapley => Some(BaselineMethod::Shapley),
            CompareMethod::Entropy => Some(BaselineMethod::Entropy),
            CompareMethod::Degree => Some(BaselineMethod::Degree),
            CompareMethod::Eigenvector => Some(BaselineMethod::Eigenvector),
        }
    }
}

fn cmd_compare(global: &GlobalArgs, args: &CompareArgs) -> Result<()> {
    let mut config = load_config(global)?;
    apply_pipeline(&mut config, &args.pipeline);
    config.validate()?;
    let rooted = preprocess(load_input(global)?, config.root_policy)?;
    let plain = rooted.without_virtual_root()?;

    let mut methods = args.methods.clone();
    methods.dedup();
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for method in methods {
        let (labels, prices): (Vec<u64>, PriceVector) = match method.baseline() {
            None => {
                let report = nodeprice::pricing::price_rooted(&rooted, &config)?;
                let labels = report.prices.nodes.iter().map(|&v| rooted.graph.label(v)).collect();
                (labels, report.prices)
            }
            Some(b) => {
                let p = baseline_prices(&plain, b, &args.options, config.seed)?;
                (p.nodes.iter().map(|&v| plain.label(v)).collect(), p)
            }
        };
        let name = method.name();
        summary.push(Dispersion {
            method: name,
            count: prices.len(),
            mean: prices.sum() / prices.len() as f64,
            std_dev: prices.std_dev(),
            min: prices.min(),
            max: prices.max(),
        });
        rows.extend(labels.into_iter().zip(&prices.prices).map(|(node, &price)| LongRow { node, method: name, price }));
    }

    let mut out = open_output(global.output.as_deref())?;
    let mut summary_out: Box<dyn Write> = match &args.summary {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stderr().lock()),
    };
    match global.format {
        Format::Csv => {
            writeln!(out, "node,method,price")?;
            for r in &rows {
                writeln!(out, "{},{},{}", r.node, r.method, r.price)?;
            }
            writeln!(summary_out, "method,count,mean,std_dev,min,max")?;
            for s in &summary {
                writeln!(summary_out, "{},{},{},{},{},{}", s.method, s.count, s.mean, s.std_dev, s.min, s.max)?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &rows)?;
            serde_json::to_writer_pretty(&mut summary_out, &summary)?;
        }
    }
    out.flush()?;
    summary_out.flush()?;
    Ok(())
}

fn cmd_bench(global: &GlobalArgs, args: &BenchArgs) -> Result<()> {
    let config = load_config(global)?;
    let sizes = args.sizes.clone().unwrap_or_else(nodeprice::bench::default_ladder);
    if sizes.is_empty() || args.seeds == 0 {
        bail!(usage("need at least one size and one seed"));
    }
    let first_seed = global.seed.unwrap_or(0);
    let seeds: Vec<u64> = (first_seed..first_seed + args.seeds).collect();
    let modes: &[SimilarityMode] = match args.mode {
        BenchMode::Exact => &[SimilarityMode::Exact],
        BenchMode::MinhashLsh => &[SimilarityMode::MinhashLsh],
        BenchMode::Both => &[SimilarityMode::Exact, SimilarityMode::MinhashLsh],
    };

    let mut records: Vec<BenchRecord> = Vec::new();
    let mut ratios: Vec<(&'static str, StepRatio)> = Vec::new();
    for &mode in modes {
        let sizes: Vec<usize> = if mode == SimilarityMode::Exact && args.mode == BenchMode::Both {
            sizes.iter().copied().filter(|&n| n <= EXACT_NODE_LIMIT).collect()
        } else {
            sizes.clone()
        };
        if sizes.is_empty() {
            continue;
        }
        let spec = BenchSpec {
            sizes: sizes.clone(),
            edge_factor: args.edge_factor,
            seeds: seeds.clone(),
            repeats: args.repeats,
            config: PricingConfig { similarity_mode: mode, ..config },
        };
        let batch = run_bench(&spec)?;
        ratios.extend(step_ratios(&batch, &sizes).into_iter().map(|r| (mode.tag(), r)));
        records.extend(batch);
    }

    let mut out = open_output(global.output.as_deref())?;
    let mut ratio_out: Box<dyn Write> = match &args.ratios {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stderr().lock()),
    };
    match global.format {
        Format::Csv => {
            write_records_csv(&records, &mut out)?;
            writeln!(ratio_out, "method,from_n,to_n,from_ms,to_ms,ratio")?;
            for (m, r) in &ratios {
                writeln!(ratio_out, "{m},{},{},{:.3},{:.3},{:.4}", r.from_n, r.to_n, r.from_ms, r.to_ms, r.ratio)?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, &records)?;
            let rows: Vec<serde_json::Value> = ratios
                .iter()
                .map(|(m, r)| serde_json::json!({ "method": m, "step": r }))
                .collect();
            serde_json::to_writer_pretty(&mut ratio_out, &rows)?;
        }
    }
    out.flush()?;
    ratio_out.flush()?;
    Ok(())
}

fn cmd_gen(global: &GlobalArgs, args: &GenArgs) -> Result<()> {
    let seed = global.seed.unwrap_or(0);
    let g = generate_random_graph(args.nodes, args.edges, seed)?;
    let mut out = open_output(global.output.as_deref())?;
    write_edge_list(&g, &mut out)?;
    out.flush()?;
    Ok(())
}
