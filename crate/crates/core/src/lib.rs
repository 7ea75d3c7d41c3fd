//! Substitutability-based pricing of the nodes of a directed graph.
//!
//! The pipeline roots the graph, builds its dominator tree, measures how
//! much of each node's path profile is shared with other nodes, weighs that
//! by how many nodes the node dominates, and turns the resulting
//! substitutability into prices: the more substitutable a node, the cheaper.
//!
//! Score computations are generic over [`Scalar`] so they can run in `f32`,
//! `f64` or exact rationals; the aliases below fix the common choices.

pub mod baselines;
pub mod bench;
pub mod dominator;
pub mod error;
pub mod graph;
pub mod pricing;
pub mod scalar;
pub mod similarity;

pub use dominator::{brute_force_dominance, compute_dominator_tree, descendant_counts, DominatorTree};
pub use error::{Error, Result};
pub use graph::{
    generate_random_graph, load_edge_list, load_edge_list_path, preprocess, write_edge_list, DirectedGraph,
    EdgeId, NodeId, RootPolicy, RootedGraph,
};
pub use pricing::{
    criticality_dominator, criticality_shortest_path, derive_prices, price_graph, substitutability,
    CriticalityMode, PricingConfig, PricingReport, SimilarityMode,
};
pub use scalar::Scalar;
pub use similarity::{collect_profiles, pairwise_similarity, PathProfile};

/// Exact rational scalar.
pub type Exact = num_rational::Rational64;

pub type ScoreTable = pricing::ScoreTable<f64>;
pub type ScoreTableF32 = pricing::ScoreTable<f32>;
pub type ExactScoreTable = pricing::ScoreTable<Exact>;

pub type PriceVector = pricing::PriceVector<f64>;
pub type PriceVectorF32 = pricing::PriceVector<f32>;
