use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::scores::ScoreTable;
use crate::error::{Error, Result};
use crate::graph::NodeId;

pub const DEFAULT_EPSILON: f64 = 1e-9;

/// Normalised per-node prices; strictly positive and summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceVector<T> {
    /// Node ids the prices refer to, in output order.
    pub nodes: Vec<NodeId>,
    pub prices: Vec<T>,
    pub method: String,
}

impl<T: Float> PriceVector<T> {
    /// Normalises non-negative weights into prices.
    pub fn from_weights(nodes: Vec<NodeId>, weights: Vec<T>, method: impl Into<String>) -> Result<Self> {
        let total = weights.iter().fold(T::zero(), |acc, &w| acc + w);
        if total.partial_cmp(&T::zero()) != Some(std::cmp::Ordering::Greater) || !total.is_finite() {
            return Err(Error::InvalidParameter("weights must have a positive finite sum".into()));
        }
        Ok(Self {
            nodes,
            prices: weights.into_iter().map(|w| w / total).collect(),
            method: method.into(),
        })
    }

    /// Equal prices for every node.
    pub fn uniform(nodes: Vec<NodeId>, method: impl Into<String>) -> Self {
        let n = T::from(nodes.len()).expect("node count fits scalar");
        let prices = vec![T::one() / n; nodes.len()];
        Self { nodes, prices, method: method.into() }
    }

    pub fn len(&self) -> usize {
        self.prices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prices.is_empty()
    }

    pub fn sum(&self) -> T {
        self.prices.iter().fold(T::zero(), |acc, &p| acc + p)
    }

    pub fn min(&self) -> T {
        self.prices.iter().fold(T::infinity(), |acc, &p| acc.min(p))
    }

    pub fn max(&self) -> T {
        self.prices.iter().fold(T::neg_infinity(), |acc, &p| acc.max(p))
    }

    /// Population standard deviation of the prices.
    pub fn std_dev(&self) -> T {
        let n = T::from(self.len()).expect("length fits scalar");
        let mean = self.sum() / n;
        let var = self
            .prices
            .iter()
            .fold(T::zero(), |acc, &p| acc + (p - mean) * (p - mean))
            / n;
        var.sqrt()
    }
}

/// Prices from substitutability: higher substitutability, lower price.
///
/// Each node with `B > 0` gets weight `-ln(clamp(B, ε, 1-ε))`. Nodes with
/// `B = 0` have no substitutes in the similarity sense and receive the
/// mean of those weights (all weights equal when no node has `B > 0`).
/// Weights are then normalised over `nodes`.
pub fn derive_prices<T: Float>(scores: &ScoreTable<T>, nodes: &[NodeId], epsilon: T) -> Result<PriceVector<T>> {
    if nodes.len() < 2 {
        return Err(Error::TooFewNodes { required: 2, actual: nodes.len() });
    }
    if !(epsilon > T::zero() && epsilon < T::one()) {
        return Err(Error::InvalidParameter("epsilon must lie in (0, 1)".into()));
    }
    let b = &scores.substitutability;
    let lo = epsilon;
    let hi = T::one() - epsilon;
    let weights: Vec<Option<T>> = nodes
        .iter()
        .map(|&v| (b[v] > T::zero()).then(|| -(b[v].max(lo).min(hi)).ln()))
        .collect();

    let positive: Vec<T> = weights.iter().flatten().copied().collect();
    if positive.is_empty() {
        return Ok(PriceVector::uniform(nodes.to_vec(), "substitutability"));
    }
    let count = T::from(positive.len()).expect("count fits scalar");
    let mean = positive.iter().fold(T::zero(), |acc, &w| acc + w) / count;
    let weights = weights.into_iter().map(|w| w.unwrap_or(mean)).collect();
    PriceVector::from_weights(nodes.to_vec(), weights, "substitutability")
}
