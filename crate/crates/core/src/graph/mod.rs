//! Directed graph storage, edge-list I/O, preprocessing and generation.

mod generate;
mod io;
mod preprocess;
mod scc;

pub use generate::generate_random_graph;
pub use io::{load_edge_list, load_edge_list_path, write_edge_list};
pub use preprocess::{preprocess, RootPolicy, RootedGraph};
pub use scc::strongly_connected_components;

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// Dense node index in `0..n`.
pub type NodeId = usize;

/// Dense edge index in `0..m`, ordered by (source, target).
pub type EdgeId = usize;

/// Label reserved for the synthetic entry node added by preprocessing.
pub const VIRTUAL_ROOT_LABEL: u64 = u64::MAX;

/// Immutable directed graph in compressed sparse row form.
///
/// Node ids are dense and ordered by original label. Both adjacency
/// directions are stored; every list is sorted ascending, edges are unique
/// and there are no self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    labels: Vec<u64>,
    out_offsets: Vec<usize>,
    out_targets: Vec<u32>,
    edge_sources: Vec<u32>,
    in_offsets: Vec<usize>,
    in_sources: Vec<u32>,
    attributes: Vec<Option<String>>,
}

impl DirectedGraph {
    /// Builds a graph over `labels.len()` nodes. Duplicate edges and
    /// self-loops are dropped.
    pub fn from_edges<I>(labels: Vec<u64>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        if n > u32::MAX as usize {
            return Err(Error::InvalidParameter(format!("{n} nodes exceeds u32 index space")));
        }
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!("edge ({u}, {v}) out of range for {n} nodes")));
            }
            if u != v {
                pairs.push((u as u32, v as u32));
            }
        }
        pairs.sort_unstable();
        pairs.dedup();

        let mut out_offsets = vec![0usize; n + 1];
        let mut in_offsets = vec![0usize; n + 1];
        for &(u, v) in &pairs {
            out_offsets[u as usize + 1] += 1;
            in_offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
            in_offsets[i + 1] += in_offsets[i];
        }
        let out_targets: Vec<u32> = pairs.iter().map(|&(_, v)| v).collect();
        let edge_sources: Vec<u32> = pairs.iter().map(|&(u, _)| u).collect();

        let mut in_sources = vec![0u32; pairs.len()];
        let mut cursor = in_offsets.clone();
        // pairs are sorted by source, so each in-list comes out sorted too
        for &(u, v) in &pairs {
            in_sources[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }

        Ok(Self {
            attributes: vec![None; n],
            labels,
            out_offsets,
            out_targets,
            edge_sources,
            in_offsets,
            in_sources,
        })
    }

    /// Builds a graph from labelled edges, compacting labels in ascending order.
    pub fn from_label_edges(edges: &[(u64, u64)]) -> Result<Self> {
        Self::from_labels_and_edges(&[], edges)
    }

    /// Like [`from_label_edges`](Self::from_label_edges) but also keeps the
    /// listed nodes even when they have no edges.
    pub fn from_labels_and_edges(nodes: &[u64], edges: &[(u64, u64)]) -> Result<Self> {
        let mut labels: Vec<u64> = nodes
            .iter()
            .copied()
            .chain(edges.iter().flat_map(|&(u, v)| [u, v]))
            .collect();
        labels.sort_unstable();
        labels.dedup();
        let index: HashMap<u64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        Self::from_edges(labels, edges.iter().map(|(u, v)| (index[u], index[v])))
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out_targets.len()
    }

    pub fn label(&self, v: NodeId) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Node id for an original label, if present.
    pub fn node_of(&self, label: u64) -> Option<NodeId> {
        self.labels.binary_search(&label).ok()
    }

    pub fn is_virtual(&self, v: NodeId) -> bool {
        self.labels[v] == VIRTUAL_ROOT_LABEL
    }

    /// Label as printed in output files; the virtual root shows as `*`.
    pub fn display_label(&self, v: NodeId) -> String {
        if self.is_virtual(v) {
            "*".to_string()
        } else {
            self.labels[v].to_string()
        }
    }

    pub fn successors(&self, v: NodeId) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        self.out_targets[self.out_offsets[v]..self.out_offsets[v + 1]]
            .iter()
            .map(|&w| w as usize)
    }

    pub fn predecessors(&self, v: NodeId) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        self.in_sources[self.in_offsets[v]..self.in_offsets[v + 1]]
            .iter()
            .map(|&w| w as usize)
    }

    /// Outgoing edges of `v` as `(edge id, target)`.
    pub fn out_edges(&self, v: NodeId) -> impl ExactSizeIterator<Item = (EdgeId, NodeId)> + '_ {
        (self.out_offsets[v]..self.out_offsets[v + 1]).map(move |e| (e, self.out_targets[e] as usize))
    }

    pub fn out_degree(&self, v: NodeId) -> usize {
        self.out_offsets[v + 1] - self.out_offsets[v]
    }

    pub fn in_degree(&self, v: NodeId) -> usize {
        self.in_offsets[v + 1] - self.in_offsets[v]
    }

    /// `(source, target)` of an edge.
    pub fn edge(&self, e: EdgeId) -> (NodeId, NodeId) {
        (self.edge_sources[e] as usize, self.out_targets[e] as usize)
    }

    /// Id of the edge `u -> v`, if present.
    pub fn edge_id(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        let start = self.out_offsets[u];
        let slice = &self.out_targets[start..self.out_offsets[u + 1]];
        slice.binary_search(&(v as u32)).ok().map(|i| start + i)
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.edge_count()).map(|e| self.edge(e))
    }

    /// Edges as `(source label, target label)` pairs.
    pub fn label_edges(&self) -> Vec<(u64, u64)> {
        self.edges().map(|(u, v)| (self.labels[u], self.labels[v])).collect()
    }

    /// Raw attribute text captured for each node, if any.
    pub fn attributes(&self) -> &[Option<String>] {
        &self.attributes
    }

    pub fn with_attributes(mut self, attributes: Vec<Option<String>>) -> Result<Self> {
        if attributes.len() != self.node_count() {
            return Err(Error::InvalidParameter(format!(
                "{} attributes for {} nodes",
                attributes.len(),
                self.node_count()
            )));
        }
        self.attributes = attributes;
        Ok(self)
    }

    /// Subgraph induced by the nodes with `keep[v]`, re-compacted in id order.
    pub fn induced_subgraph(&self, keep: &[bool]) -> Result<Self> {
        let mut remap = vec![usize::MAX; self.node_count()];
        let mut labels = Vec::new();
        let mut attributes = Vec::new();
        for v in 0..self.node_count() {
            if keep[v] {
                remap[v] = labels.len();
                labels.push(self.labels[v]);
                attributes.push(self.attributes[v].clone());
            }
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| keep[u] && keep[v])
            .map(|(u, v)| (remap[u], remap[v]));
        Self::from_edges(labels, edges)?.with_attributes(attributes)
    }

    /// Nodes reachable from `source` (inclusive), in BFS order.
    pub fn bfs_order(&self, source: NodeId) -> Vec<NodeId> {
        let mut seen = vec![false; self.node_count()];
        let mut order = vec![source];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for w in self.successors(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// Reachability mask from `source`.
    pub fn reachable_from(&self, source: NodeId) -> Vec<bool> {
        let mut mask = vec![false; self.node_count()];
        for v in self.bfs_order(source) {
            mask[v] = true;
        }
        mask
    }
}
