//! Comparison pricing methods: Shapley values, attribute entropy, degree
//! centrality and damped eigenvector centrality.
//!
//! Every method ends in [`positive_prices`], so outputs share the price
//! vector contract (strictly positive, summing to one).

mod centrality;
mod entropy;
mod shapley;

pub use centrality::{
    degree_centrality_prices, eigenvector_centrality, eigenvector_centrality_prices, DAMPING,
};
pub use entropy::{entropy_prices, NodeAttributes, NUMERIC_BINS};
pub use shapley::{
    exact_shapley_small, exact_shapley_values, exact_shapley_values_by_permutation, monte_carlo_shapley,
    monte_carlo_shapley_values, CharacteristicFunction, ReachablePairs, EXACT_SHAPLEY_LIMIT,
};

use crate::graph::NodeId;
use crate::pricing::PriceVector;

/// Share of the mean shifted score added to every node when scores have
/// to be shifted up to become positive.
pub const FLOOR_FRACTION: f64 = 0.01;

/// Turns raw scores into a price vector.
///
/// Equal scores give uniform prices. Strictly positive scores are
/// normalised as they are. Otherwise scores are shifted so the minimum
/// sits at a floor of 1% of the mean shifted score, then normalised.
pub fn positive_prices(nodes: Vec<NodeId>, scores: &[f64], method: &str) -> PriceVector<f64> {
    let min = scores.iter().copied().fold(f64::INFINITY, f64::min);
    let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if scores.is_empty() || min == max {
        return PriceVector::uniform(nodes, method);
    }
    let weights: Vec<f64> = if min > 0.0 {
        scores.to_vec()
    } else {
        let shifted: Vec<f64> = scores.iter().map(|&s| s - min).collect();
        let floor = FLOOR_FRACTION * shifted.iter().sum::<f64>() / shifted.len() as f64;
        shifted.into_iter().map(|s| s + floor).collect()
    };
    PriceVector::from_weights(nodes, weights, method).expect("weights are positive")
}
