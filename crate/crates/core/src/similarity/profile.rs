use rayon::prelude::*;

use crate::graph::{EdgeId, NodeId, RootedGraph};

/// Incoming and outgoing edge sets of one node, each sorted by edge id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathProfile {
    /// Edges on some root-to-node path.
    pub incoming: Vec<EdgeId>,
    /// Edges reachable from the node.
    pub outgoing: Vec<EdgeId>,
}

struct Scratch {
    stamp: Vec<u32>,
    epoch: u32,
    stack: Vec<NodeId>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Self { stamp: vec![0; n], epoch: 0, stack: Vec::new() }
    }

    fn next_epoch(&mut self) {
        self.epoch += 1;
        if self.epoch == u32::MAX {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 1;
        }
    }

    fn visit(&mut self, v: NodeId) -> bool {
        if self.stamp[v] == self.epoch {
            false
        } else {
            self.stamp[v] = self.epoch;
            true
        }
    }
}

/// Profiles of every node, computed by one backward and one forward
/// traversal per node; no path is ever enumerated.
///
/// The backward traversal never expands the root, so edges entering the
/// root are not counted as lying on root-to-node paths.
pub fn collect_profiles(g: &RootedGraph) -> Vec<PathProfile> {
    let n = g.node_count();
    (0..n)
        .into_par_iter()
        .map_init(
            || Scratch::new(n),
            |scratch, v| PathProfile {
                incoming: incoming_edges(g, v, scratch),
                outgoing: outgoing_edges(g, v, scratch),
            },
        )
        .collect()
}

fn incoming_edges(g: &RootedGraph, v: NodeId, s: &mut Scratch) -> Vec<EdgeId> {
    let graph = &g.graph;
    let mut edges = Vec::new();
    if v == g.root {
        return edges;
    }
    s.next_epoch();
    s.visit(v);
    s.stack.push(v);
    while let Some(w) = s.stack.pop() {
        for u in graph.predecessors(w) {
            edges.push(graph.edge_id(u, w).expect("predecessor edge exists"));
            if u != g.root && s.visit(u) {
                s.stack.push(u);
            }
        }
    }
    edges.sort_unstable();
    edges
}

fn outgoing_edges(g: &RootedGraph, v: NodeId, s: &mut Scratch) -> Vec<EdgeId> {
    let graph = &g.graph;
    let mut edges = Vec::new();
    s.next_epoch();
    s.visit(v);
    s.stack.push(v);
    while let Some(u) = s.stack.pop() {
        for (e, w) in graph.out_edges(u) {
            edges.push(e);
            if s.visit(w) {
                s.stack.push(w);
            }
        }
    }
    edges.sort_unstable();
    edges
}
