//! Positional criticality, substitutability, price derivation and the
//! end-to-end pipeline.

mod criticality;
mod pipeline;
mod prices;
mod scores;

pub use criticality::{criticality_dominator, criticality_shortest_path};
pub use pipeline::{
    price_graph, price_rooted, CriticalityMode, PriceRow, PricingConfig, PricingReport, SimilarityMode,
    StageTimings,
};
pub use prices::{derive_prices, PriceVector, DEFAULT_EPSILON};
pub use scores::{substitutability, ScoreTable};
