use std::collections::HashMap;

use super::positive_prices;
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::pricing::PriceVector;

/// Bin count for numeric attributes.
pub const NUMERIC_BINS: usize = 16;

/// One attribute value per node.
#[derive(Debug, Clone, PartialEq)]
pub enum NodeAttributes {
    Categorical(Vec<String>),
    /// Missing values (`None`) share a bin of their own.
    Numeric(Vec<Option<f64>>),
}

impl NodeAttributes {
    /// Attributes captured while loading the graph, if any node has one.
    /// Numeric mode parses each value as a float.
    pub fn from_graph(g: &DirectedGraph, numeric: bool) -> Option<Self> {
        let raw = g.attributes();
        if raw.iter().all(Option::is_none) {
            return None;
        }
        Some(if numeric {
            NodeAttributes::Numeric(
                raw.iter()
                    .map(|a| a.as_deref().and_then(|s| s.parse::<f64>().ok()).filter(|x| x.is_finite()))
                    .collect(),
            )
        } else {
            NodeAttributes::Categorical(raw.iter().map(|a| a.clone().unwrap_or_default()).collect())
        })
    }

    pub fn len(&self) -> usize {
        match self {
            NodeAttributes::Categorical(v) => v.len(),
            NodeAttributes::Numeric(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Dense bin index per node.
    fn bins(&self) -> Vec<usize> {
        match self {
            NodeAttributes::Categorical(values) => {
                let mut ids: HashMap<&str, usize> = HashMap::new();
                values
                    .iter()
                    .map(|v| {
                        let next = ids.len();
                        *ids.entry(v.as_str()).or_insert(next)
                    })
                    .collect()
            }
            NodeAttributes::Numeric(values) => {
                let present = values.iter().flatten();
                let lo = present.clone().copied().fold(f64::INFINITY, f64::min);
                let hi = present.copied().fold(f64::NEG_INFINITY, f64::max);
                let width = (hi - lo) / NUMERIC_BINS as f64;
                values
                    .iter()
                    .map(|v| match v {
                        None => NUMERIC_BINS,
                        Some(_) if width <= 0.0 => 0,
                        Some(x) => (((x - lo) / width) as usize).min(NUMERIC_BINS - 1),
                    })
                    .collect()
            }
        }
    }
}

/// Scarcity pricing: a node's information content is `-ln` of the
/// add-one-smoothed frequency of its attribute bin.
///
/// Without attributes, out-degree is used as a categorical attribute.
pub fn entropy_prices(g: &DirectedGraph, attributes: Option<&NodeAttributes>) -> Result<PriceVector<f64>> {
    let n = g.node_count();
    let fallback;
    let attributes = match attributes {
        Some(a) => a,
        None => {
            fallback = NodeAttributes::Categorical((0..n).map(|v| g.out_degree(v).to_string()).collect());
            &fallback
        }
    };
    if attributes.len() != n {
        return Err(Error::InvalidParameter(format!("{} attributes for {n} nodes", attributes.len())));
    }
    let bins = attributes.bins();
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &b in &bins {
        *counts.entry(b).or_default() += 1;
    }
    let denom = (n + counts.len()) as f64;
    let info: Vec<f64> = bins
        .iter()
        .map(|b| -((counts[b] + 1) as f64 / denom).ln())
        .collect();
    Ok(positive_prices((0..n).collect(), &info, "entropy"))
}
