use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::DirectedGraph;
use crate::error::{Error, Result};

/// Uniform random digraph with exactly `m` distinct non-loop edges.
///
/// Node labels are `0..n`. Sampling uses ChaCha8 so a given
/// `(n, m, seed)` produces the same edge set on every platform.
pub fn generate_random_graph(n: usize, m: usize, seed: u64) -> Result<DirectedGraph> {
    let slots = n
        .checked_mul(n.saturating_sub(1))
        .ok_or_else(|| Error::InvalidParameter(format!("n = {n} too large")))?;
    if m == 0 || m > slots {
        return Err(Error::InvalidParameter(format!(
            "edge count {m} outside 1..={slots} for {n} nodes"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = index::sample(&mut rng, slots, m).into_vec();
    picks.sort_unstable();
    let edges = picks.into_iter().map(|k| {
        let u = k / (n - 1);
        let r = k % (n - 1);
        (u, if r < u { r } else { r + 1 })
    });
    DirectedGraph::from_edges((0..n as u64).collect(), edges)
}
