use super::positive_prices;
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::pricing::PriceVector;

/// Teleport damping for eigenvector centrality.
pub const DAMPING: f64 = 0.85;

/// `(in-degree + out-degree) / (2(n-1))`, made positive and normalised.
pub fn degree_centrality_prices(g: &DirectedGraph) -> Result<PriceVector<f64>> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes { required: 2, actual: n });
    }
    let denom = 2.0 * (n - 1) as f64;
    let scores: Vec<f64> = (0..n)
        .map(|v| (g.in_degree(v) + g.out_degree(v)) as f64 / denom)
        .collect();
    Ok(positive_prices((0..n).collect(), &scores, "degree"))
}

/// Dominant eigenvector of `d·Aᵀ + (1-d)/n·J`, scaled to sum to one.
///
/// `A` is the adjacency matrix, so a node's score grows with the scores
/// of the nodes pointing at it. The teleport term makes the operator
/// positive, so the eigenvector is unique and strictly positive even on
/// reducible graphs. Stops when the L1 change drops below `tol`.
pub fn eigenvector_centrality(g: &DirectedGraph, damping: f64, tol: f64, max_iter: usize) -> Result<Vec<f64>> {
    let n = g.node_count();
    if !(0.0..1.0).contains(&damping) {
        return Err(Error::InvalidParameter(format!("damping must lie in [0, 1), got {damping}")));
    }
    let mut x = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        let mass: f64 = x.iter().sum();
        let teleport = (1.0 - damping) * mass / n as f64;
        for (v, slot) in next.iter_mut().enumerate() {
            *slot = damping * g.predecessors(v).map(|u| x[u]).sum::<f64>() + teleport;
        }
        let norm: f64 = next.iter().sum();
        next.iter_mut().for_each(|s| *s /= norm);
        residual = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if residual < tol {
            return Ok(x);
        }
    }
    Err(Error::NotConverged { iterations: max_iter, residual })
}

pub fn eigenvector_centrality_prices(g: &DirectedGraph, tol: f64, max_iter: usize) -> Result<PriceVector<f64>> {
    let x = eigenvector_centrality(g, DAMPING, tol, max_iter)?;
    Ok(positive_prices((0..g.node_count()).collect(), &x, "eigenvector"))
}
