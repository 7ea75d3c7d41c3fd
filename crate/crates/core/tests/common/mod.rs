//! Independent reference implementations used as test oracles.
//!
//! Everything here works from first principles (path enumeration, node
//! deletion, dense linear algebra) and shares no code with the library
//! beyond the graph container.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use nalgebra::DMatrix;
use nodeprice::{preprocess, DirectedGraph, RootPolicy, RootedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type LabelEdge = (u64, u64);
pub type EdgeSet = BTreeSet<(usize, usize)>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random edge list on labels `0..n`, no self loops, duplicates dropped.
pub fn random_edges(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<LabelEdge> {
    let mut set = BTreeSet::new();
    let limit = n * (n - 1);
    let target = m.min(limit);
    while set.len() < target {
        let u = rng.gen_range(0..n as u64);
        let v = rng.gen_range(0..n as u64);
        if u != v {
            set.insert((u, v));
        }
    }
    set.into_iter().collect()
}

/// Random DAG on labels `0..n`: edges only go from smaller to larger labels.
pub fn random_dag_edges(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Vec<LabelEdge> {
    let mut edges = Vec::new();
    for u in 0..n as u64 {
        for v in u + 1..n as u64 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    if edges.is_empty() {
        edges.push((0, 1));
    }
    edges
}

/// Random graph rooted at label 0, where a spanning arborescence from 0
/// guarantees every node is reachable.
pub fn random_rooted(rng: &mut ChaCha8Rng, n: usize, m: usize) -> RootedGraph {
    let mut edges: BTreeSet<LabelEdge> = (1..n as u64).map(|v| (rng.gen_range(0..v), v)).collect();
    let target = m.max(n - 1).min(n * (n - 1));
    while edges.len() < target {
        let u = rng.gen_range(0..n as u64);
        let v = rng.gen_range(0..n as u64);
        if u != v {
            edges.insert((u, v));
        }
    }
    let edges: Vec<LabelEdge> = edges.into_iter().collect();
    preprocess(DirectedGraph::from_label_edges(&edges).unwrap(), RootPolicy::Designated(0)).unwrap()
}

pub fn reachable_avoiding(g: &DirectedGraph, root: usize, removed: Option<usize>) -> Vec<bool> {
    let mut seen = vec![false; g.node_count()];
    if Some(root) == removed {
        return seen;
    }
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for w in g.successors(u) {
            if !seen[w] && Some(w) != removed {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// `dominated[d]` = nodes other than `d` that become unreachable once `d`
/// is deleted, i.e. the nodes `d` strictly dominates.
pub fn dominance_by_deletion(g: &RootedGraph) -> Vec<BTreeSet<usize>> {
    let n = g.node_count();
    let base = reachable_avoiding(&g.graph, g.root, None);
    (0..n)
        .map(|d| {
            let after = reachable_avoiding(&g.graph, g.root, Some(d));
            (0..n).filter(|&v| v != d && base[v] && !after[v]).collect()
        })
        .collect()
}

/// Every simple path from `start`, visited as a list of edges. The
/// callback sees each path prefix once, including the empty path.
fn each_path(g: &DirectedGraph, start: usize, f: &mut impl FnMut(usize, &[(usize, usize)])) {
    fn go(
        g: &DirectedGraph,
        v: usize,
        on_path: &mut Vec<bool>,
        path: &mut Vec<(usize, usize)>,
        f: &mut impl FnMut(usize, &[(usize, usize)]),
    ) {
        f(v, path);
        for w in g.successors(v).collect::<Vec<_>>() {
            if !on_path[w] {
                on_path[w] = true;
                path.push((v, w));
                go(g, w, on_path, path, f);
                path.pop();
                on_path[w] = false;
            }
        }
    }
    let mut on_path = vec![false; g.node_count()];
    on_path[start] = true;
    go(g, start, &mut on_path, &mut Vec::new(), f);
}

/// Edge-set profiles by enumerating every root path and every path out of
/// each node. Exponential; for small graphs only.
pub fn enumerated_profiles(g: &RootedGraph) -> Vec<(EdgeSet, EdgeSet)> {
    let n = g.node_count();
    let mut incoming = vec![BTreeSet::new(); n];
    each_path(&g.graph, g.root, &mut |v, path| incoming[v].extend(path.iter().copied()));
    let outgoing: Vec<_> = (0..n)
        .map(|v| {
            let mut set = BTreeSet::new();
            each_path(&g.graph, v, &mut |_, path| set.extend(path.iter().copied()));
            set
        })
        .collect();
    incoming.into_iter().zip(outgoing).collect()
}

/// Every shortest root path to every node, as node lists.
pub fn all_shortest_paths(g: &RootedGraph) -> Vec<Vec<Vec<usize>>> {
    let n = g.node_count();
    let mut dist = vec![usize::MAX; n];
    dist[g.root] = 0;
    let mut queue = VecDeque::from([g.root]);
    while let Some(u) = queue.pop_front() {
        for w in g.graph.successors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut paths = vec![Vec::new(); n];
    fn go(g: &DirectedGraph, dist: &[usize], v: usize, path: &mut Vec<usize>, out: &mut [Vec<Vec<usize>>]) {
        out[v].push(path.clone());
        for w in g.successors(v) {
            if dist[w] == dist[v] + 1 {
                path.push(w);
                go(g, dist, w, path, out);
                path.pop();
            }
        }
    }
    go(&g.graph, &dist, g.root, &mut vec![g.root], &mut paths);
    paths
}

/// Number of other nodes whose every shortest root path contains `v`.
pub fn enumerated_sp_required(g: &RootedGraph) -> Vec<usize> {
    let n = g.node_count();
    let paths = all_shortest_paths(g);
    (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| u != v && paths[u].iter().all(|p| p.contains(&v)))
                .count()
        })
        .collect()
}

pub fn jaccard(a: &BTreeSet<u64>, b: &BTreeSet<u64>) -> f64 {
    let union = a.union(b).count();
    if union == 0 {
        return 1.0;
    }
    a.intersection(b).count() as f64 / union as f64
}

/// Dominant eigenvector of `d·Aᵀ + (1-d)/n·J`, L1-normalised, from dense
/// linear algebra: the Perron root is the eigenvalue of largest real part,
/// and the eigenvector spans the null space of `M - λI`.
pub fn dense_eigenvector(g: &DirectedGraph, damping: f64) -> Vec<f64> {
    let n = g.node_count();
    let mut m = DMatrix::from_element(n, n, (1.0 - damping) / n as f64);
    for (u, v) in g.edges() {
        m[(v, u)] += damping;
    }
    let lambda = m
        .complex_eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let shifted = &m - DMatrix::identity(n, n) * lambda;
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.unwrap();
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    let x: Vec<f64> = v_t.row(idx).iter().copied().collect();
    let sum: f64 = x.iter().sum();
    x.into_iter().map(|c| c / sum).collect()
}
