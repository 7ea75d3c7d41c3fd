use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::positive_prices;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeId};
use crate::pricing::PriceVector;

/// Largest player count for which exact Shapley values are computed.
pub const EXACT_SHAPLEY_LIMIT: usize = 12;
const PERMUTATION_LIMIT: usize = 10;
const CHUNK: usize = 256;

/// Coalition value over the nodes of a graph.
pub trait CharacteristicFunction: Sync {
    fn player_count(&self) -> usize;

    /// Value of the coalition `members`; the empty coalition must be worth 0.
    fn value(&self, members: &FixedBitSet) -> f64;

    /// Marginal contribution of each player when players join in `order`,
    /// indexed by player.
    fn marginals(&self, order: &[NodeId]) -> Vec<f64> {
        let mut members = FixedBitSet::with_capacity(self.player_count());
        let mut out = vec![0.0; self.player_count()];
        let mut last = 0.0;
        for &p in order {
            members.insert(p);
            let v = self.value(&members);
            out[p] = v - last;
            last = v;
        }
        out
    }
}

/// Number of ordered pairs `(a, b)`, `a != b`, with `b` reachable from `a`
/// inside the subgraph induced by the coalition.
pub struct ReachablePairs<'g> {
    graph: &'g DirectedGraph,
}

impl<'g> ReachablePairs<'g> {
    pub fn new(graph: &'g DirectedGraph) -> Self {
        Self { graph }
    }
}

impl CharacteristicFunction for ReachablePairs<'_> {
    fn player_count(&self) -> usize {
        self.graph.node_count()
    }

    fn value(&self, members: &FixedBitSet) -> f64 {
        let g = self.graph;
        let mut pairs = 0usize;
        let mut seen = FixedBitSet::with_capacity(g.node_count());
        let mut stack = Vec::new();
        for a in members.ones() {
            seen.clear();
            seen.insert(a);
            stack.push(a);
            while let Some(u) = stack.pop() {
                for w in g.successors(u) {
                    if members.contains(w) && !seen.put(w) {
                        pairs += 1;
                        stack.push(w);
                    }
                }
            }
        }
        pairs as f64
    }

    /// Incremental version: when `v` joins, exactly the members that reach
    /// one of `v`'s predecessors gain everything `v` reaches.
    fn marginals(&self, order: &[NodeId]) -> Vec<f64> {
        let g = self.graph;
        let n = g.node_count();
        let mut members = FixedBitSet::with_capacity(n);
        let mut member_list: Vec<NodeId> = Vec::with_capacity(n);
        // reach[a] includes a itself
        let mut reach: Vec<FixedBitSet> = vec![FixedBitSet::new(); n];
        let mut out = vec![0.0; n];

        for &v in order {
            let mut reach_v = FixedBitSet::with_capacity(n);
            reach_v.insert(v);
            for w in g.successors(v) {
                if members.contains(w) {
                    reach_v.union_with(&reach[w]);
                }
            }
            let preds: Vec<NodeId> = g.predecessors(v).filter(|&p| members.contains(p)).collect();
            let mut gained = reach_v.count_ones(..) - 1;
            if !preds.is_empty() {
                for &a in &member_list {
                    if preds.iter().any(|&p| reach[a].contains(p)) {
                        let before = reach[a].count_ones(..);
                        reach[a].union_with(&reach_v);
                        gained += reach[a].count_ones(..) - before;
                    }
                }
            }
            reach[v] = reach_v;
            members.insert(v);
            member_list.push(v);
            out[v] = gained as f64;
        }
        out
    }
}

fn check_players(g: &DirectedGraph, f: &dyn CharacteristicFunction) -> Result<usize> {
    if f.player_count() != g.node_count() {
        return Err(Error::InvalidParameter(format!(
            "characteristic function has {} players, graph has {} nodes",
            f.player_count(),
            g.node_count()
        )));
    }
    Ok(g.node_count())
}

/// Permutation-sampling Shapley estimates.
///
/// Permutation `k` is drawn from ChaCha8 stream `k` of `seed`, and sums are
/// reduced in fixed chunks, so results do not depend on the thread count.
pub fn monte_carlo_shapley_values<F: CharacteristicFunction>(f: &F, samples: usize, seed: u64) -> Result<Vec<f64>> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let n = f.player_count();
    let chunks: Vec<Vec<f64>> = (0..samples.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut sum = vec![0.0; n];
            let mut order: Vec<NodeId> = (0..n).collect();
            for k in chunk * CHUNK..((chunk + 1) * CHUNK).min(samples) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(k as u64);
                order.sort_unstable();
                order.shuffle(&mut rng);
                for (s, m) in sum.iter_mut().zip(f.marginals(&order)) {
                    *s += m;
                }
            }
            sum
        })
        .collect();
    let mut total = vec![0.0; n];
    for chunk in chunks {
        for (t, c) in total.iter_mut().zip(chunk) {
            *t += c;
        }
    }
    Ok(total.into_iter().map(|t| t / samples as f64).collect())
}

pub fn monte_carlo_shapley<F: CharacteristicFunction>(
    g: &DirectedGraph,
    f: &F,
    samples: usize,
    seed: u64,
) -> Result<PriceVector<f64>> {
    let n = check_players(g, f)?;
    let values = monte_carlo_shapley_values(f, samples, seed)?;
    Ok(positive_prices((0..n).collect(), &values, "shapley"))
}

fn factorials(n: usize) -> Vec<f64> {
    let mut out = vec![1.0; n + 1];
    for i in 1..=n {
        out[i] = out[i - 1] * i as f64;
    }
    out
}

/// Exact Shapley values by the subset formula,
/// `φ_i = Σ_{S ⊆ N∖{i}} |S|!(n-|S|-1)!/n! · (v(S ∪ {i}) - v(S))`.
pub fn exact_shapley_values<F: CharacteristicFunction>(f: &F) -> Result<Vec<f64>> {
    let n = f.player_count();
    if n > EXACT_SHAPLEY_LIMIT {
        return Err(Error::TooManyNodes { limit: EXACT_SHAPLEY_LIMIT, actual: n });
    }
    let values: Vec<f64> = (0..1usize << n)
        .into_par_iter()
        .map(|mask| {
            let mut members = FixedBitSet::with_capacity(n);
            for i in (0..n).filter(|i| mask >> i & 1 == 1) {
                members.insert(i);
            }
            f.value(&members)
        })
        .collect();
    let fact = factorials(n);
    let mut phi = vec![0.0; n];
    for (i, p) in phi.iter_mut().enumerate() {
        for mask in (0..1usize << n).filter(|m| m >> i & 1 == 0) {
            let s = mask.count_ones() as usize;
            let weight = fact[s] * fact[n - s - 1] / fact[n];
            *p += weight * (values[mask | 1 << i] - values[mask]);
        }
    }
    Ok(phi)
}

/// Exact Shapley values by averaging marginals over all `n!` orders.
pub fn exact_shapley_values_by_permutation<F: CharacteristicFunction>(f: &F) -> Result<Vec<f64>> {
    let n = f.player_count();
    if n > PERMUTATION_LIMIT {
        return Err(Error::TooManyNodes { limit: PERMUTATION_LIMIT, actual: n });
    }
    let mut order: Vec<NodeId> = (0..n).collect();
    let mut sum = vec![0.0; n];
    let mut count = 0usize;
    // Heap's algorithm, iterative
    let mut c = vec![0usize; n];
    let mut visit = |order: &[NodeId]| {
        for (s, m) in sum.iter_mut().zip(f.marginals(order)) {
            *s += m;
        }
        count += 1;
    };
    visit(&order);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            visit(&order);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(sum.into_iter().map(|s| s / count as f64).collect())
}

/// Exact Shapley prices; refuses graphs above [`EXACT_SHAPLEY_LIMIT`] nodes.
pub fn exact_shapley_small<F: CharacteristicFunction>(g: &DirectedGraph, f: &F) -> Result<PriceVector<f64>> {
    let n = check_players(g, f)?;
    let values = exact_shapley_values(f)?;
    Ok(positive_prices((0..n).collect(), &values, "shapley_exact"))
}
