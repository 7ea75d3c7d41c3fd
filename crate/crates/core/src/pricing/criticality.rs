use std::collections::VecDeque;

use rayon::prelude::*;

use crate::dominator::DominatorTree;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeId, RootedGraph};
use crate::scalar::Scalar;

/// Share of the other nodes that `v` dominates: `desc(v) / (n - 1)`.
pub fn criticality_dominator<T: Scalar>(t: &DominatorTree) -> Result<Vec<T>> {
    let n = t.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes { required: 2, actual: n });
    }
    Ok(t.desc_counts().iter().map(|&d| T::ratio(d, n - 1)).collect())
}

const UNREACHED: u32 = u32::MAX;

struct PathCounts {
    dist: Vec<u32>,
    sigma: Vec<u128>,
    order: Vec<NodeId>,
}

/// BFS distances and saturating shortest-path counts from `source`.
fn count_paths(g: &DirectedGraph, source: NodeId) -> PathCounts {
    let n = g.node_count();
    let mut dist = vec![UNREACHED; n];
    let mut sigma = vec![0u128; n];
    let mut order = Vec::new();
    dist[source] = 0;
    sigma[source] = 1;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for w in g.successors(u) {
            if dist[w] == UNREACHED {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[u] + 1 {
                sigma[w] = sigma[w].saturating_add(sigma[u]);
            }
        }
    }
    PathCounts { dist, sigma, order }
}

/// Nodes whose every shortest path from the root passes through `vi`,
/// found by propagating "all shortest-path predecessors require `vi`"
/// in BFS order. Exact, and free of path counts.
fn required_by_propagation(g: &DirectedGraph, root: NodeId, from_root: &PathCounts, vi: NodeId) -> usize {
    let mut required = vec![false; g.node_count()];
    required[vi] = true;
    for &w in &from_root.order {
        if w == root || w == vi {
            continue;
        }
        let dw = from_root.dist[w];
        required[w] = g
            .predecessors(w)
            .filter(|&p| from_root.dist[p] != UNREACHED && from_root.dist[p] + 1 == dw)
            .all(|p| required[p]);
    }
    required.iter().enumerate().filter(|&(w, &r)| r && w != vi).count()
}

fn required_by_counting(g: &DirectedGraph, from_root: &PathCounts, vi: NodeId) -> Option<usize> {
    let di = from_root.dist[vi];
    let si = from_root.sigma[vi];
    if si == u128::MAX {
        return None;
    }
    let from_vi = count_paths(g, vi);
    let mut count = 0;
    for &vj in from_vi.order.iter().skip(1) {
        if di + from_vi.dist[vj] != from_root.dist[vj] {
            continue;
        }
        let (sij, sj) = (from_vi.sigma[vj], from_root.sigma[vj]);
        if sij == u128::MAX || sj == u128::MAX {
            return None;
        }
        if si.checked_mul(sij)? == sj {
            count += 1;
        }
    }
    Some(count)
}

/// Share of the other nodes all of whose shortest root paths pass through
/// each node.
///
/// `vj` requires `vi` when `d(r,vi) + d(vi,vj) = d(r,vj)` and
/// `σ(r,vi)·σ(vi,vj) = σ(r,vj)`. Counts are 128-bit and saturating; a row
/// that hits saturation is recomputed by predecessor propagation instead.
pub fn criticality_shortest_path<T: Scalar>(g: &RootedGraph) -> Result<Vec<T>> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes { required: 2, actual: n });
    }
    let graph = &g.graph;
    let from_root = count_paths(graph, g.root);
    if let Some(node) = from_root.dist.iter().position(|&d| d == UNREACHED) {
        return Err(Error::Unreachable { node });
    }
    Ok((0..n)
        .into_par_iter()
        .map(|vi| {
            let count = required_by_counting(graph, &from_root, vi)
                .unwrap_or_else(|| required_by_propagation(graph, g.root, &from_root, vi));
            T::ratio(count, n - 1)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;

    use super::*;
    use crate::dominator::compute_dominator_tree;
    use crate::graph::{generate_random_graph, preprocess, RootPolicy};

    fn rooted(edges: &[(u64, u64)]) -> RootedGraph {
        preprocess(DirectedGraph::from_label_edges(edges).unwrap(), RootPolicy::Designated(0)).unwrap()
    }

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn chain() {
        let g = rooted(&[(0, 1), (1, 2), (2, 3)]);
        let t = compute_dominator_tree(&g).unwrap();
        let expect = vec![r(1, 1), r(2, 3), r(1, 3), r(0, 1)];
        assert_eq!(criticality_dominator::<Rational64>(&t).unwrap(), expect);
        assert_eq!(criticality_shortest_path::<Rational64>(&g).unwrap(), expect);
    }

    #[test]
    fn diamond() {
        let g = rooted(&[(0, 1), (0, 2), (1, 3), (2, 3)]);
        let t = compute_dominator_tree(&g).unwrap();
        assert_eq!(criticality_dominator::<f64>(&t).unwrap(), vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn shortest_path_and_dominance_diverge() {
        let g = rooted(&[(0, 1), (1, 2), (0, 3), (3, 4), (4, 2)]);
        let t = compute_dominator_tree(&g).unwrap();
        assert_eq!(criticality_shortest_path::<Rational64>(&g).unwrap()[1], r(1, 4));
        assert_eq!(criticality_dominator::<Rational64>(&t).unwrap()[1], r(0, 1));
    }

    #[test]
    fn propagation_agrees_with_counting() {
        for seed in 0..20 {
            let g = generate_random_graph(40, 120, seed).unwrap();
            let g = preprocess(g, RootPolicy::VirtualSuperRoot).unwrap();
            let from_root = count_paths(&g.graph, g.root);
            for vi in 0..g.node_count() {
                let counted = required_by_counting(&g.graph, &from_root, vi).unwrap();
                assert_eq!(counted, required_by_propagation(&g.graph, g.root, &from_root, vi));
            }
        }
    }

    #[test]
    fn saturated_counts_fall_back() {
        // 130 stacked diamonds: 2^130 shortest paths to the bottom, past u128
        let mut edges = Vec::new();
        let mut top = 0u64;
        let mut next = 1u64;
        for _ in 0..130 {
            let (a, b, bottom) = (next, next + 1, next + 2);
            edges.extend([(top, a), (top, b), (a, bottom), (b, bottom)]);
            top = bottom;
            next += 3;
        }
        let g = rooted(&edges);
        let sp = criticality_shortest_path::<f64>(&g).unwrap();
        let t = compute_dominator_tree(&g).unwrap();
        // layered diamonds have a single shortest-path structure, so both notions agree
        assert_eq!(sp, criticality_dominator::<f64>(&t).unwrap());
        let from_root = count_paths(&g.graph, g.root);
        assert_eq!(from_root.sigma[top as usize], u128::MAX);
    }
}
