use serde::{Deserialize, Serialize};

use super::{strongly_connected_components, DirectedGraph, NodeId, VIRTUAL_ROOT_LABEL};
use crate::error::{Error, Result};

/// How the entry node of the analysed graph is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RootPolicy {
    /// Use the node with this original label; nodes it cannot reach are dropped.
    Designated(u64),
    /// Use the unique entry node when there is one; otherwise add a synthetic
    /// root wired to every source strongly connected component.
    #[default]
    VirtualSuperRoot,
}

/// A graph in which every node is reachable from `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedGraph {
    pub graph: DirectedGraph,
    pub root: NodeId,
    pub virtual_root_added: bool,
}

impl RootedGraph {
    /// Wraps a graph whose nodes are all reachable from `root`.
    pub fn new(graph: DirectedGraph, root: NodeId) -> Result<Self> {
        let reach = graph.reachable_from(root);
        if let Some(node) = reach.iter().position(|&r| !r) {
            return Err(Error::Unreachable { node });
        }
        let virtual_root_added = graph.is_virtual(root);
        Ok(Self { graph, root, virtual_root_added })
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    /// Whether `v` is the synthetic root and should be left out of results.
    pub fn is_virtual(&self, v: NodeId) -> bool {
        self.virtual_root_added && v == self.root
    }

    /// Ids of the nodes that appear in outputs, ascending.
    pub fn output_nodes(&self) -> Vec<NodeId> {
        (0..self.node_count()).filter(|&v| !self.is_virtual(v)).collect()
    }

    /// The analysed graph without the synthetic root.
    pub fn without_virtual_root(&self) -> Result<DirectedGraph> {
        if !self.virtual_root_added {
            return Ok(self.graph.clone());
        }
        let keep: Vec<bool> = (0..self.node_count()).map(|v| v != self.root).collect();
        self.graph.induced_subgraph(&keep)
    }
}

/// Removes isolated nodes, picks a root and drops whatever the root cannot reach.
pub fn preprocess(graph: DirectedGraph, policy: RootPolicy) -> Result<RootedGraph> {
    let keep: Vec<bool> = (0..graph.node_count())
        .map(|v| graph.in_degree(v) > 0 || graph.out_degree(v) > 0)
        .collect();
    if !keep.iter().any(|&k| k) {
        return Err(Error::EmptyGraph);
    }
    let graph = if keep.iter().all(|&k| k) {
        graph
    } else {
        graph.induced_subgraph(&keep)?
    };

    match policy {
        RootPolicy::Designated(label) => {
            let root = graph.node_of(label).ok_or(Error::UnknownNode(label))?;
            restrict_to_reachable(graph, root)
        }
        RootPolicy::VirtualSuperRoot => attach_super_root(graph),
    }
}

fn restrict_to_reachable(graph: DirectedGraph, root: NodeId) -> Result<RootedGraph> {
    let reach = graph.reachable_from(root);
    if reach.iter().all(|&r| r) {
        return RootedGraph::new(graph, root);
    }
    let root_label = graph.label(root);
    let graph = graph.induced_subgraph(&reach)?;
    let root = graph.node_of(root_label).expect("root survives restriction");
    RootedGraph::new(graph, root)
}

fn attach_super_root(graph: DirectedGraph) -> Result<RootedGraph> {
    let comp = strongly_connected_components(&graph);
    let comp_count = comp.iter().max().map_or(0, |&c| c + 1);

    let mut has_incoming = vec![false; comp_count];
    for (u, v) in graph.edges() {
        if comp[u] != comp[v] {
            has_incoming[comp[v]] = true;
        }
    }
    // smallest node id of each source component
    let mut representative = vec![usize::MAX; comp_count];
    let mut comp_size = vec![0usize; comp_count];
    for v in 0..graph.node_count() {
        comp_size[comp[v]] += 1;
        if !has_incoming[comp[v]] && representative[comp[v]] == usize::MAX {
            representative[comp[v]] = v;
        }
    }
    let mut sources: Vec<NodeId> = (0..comp_count)
        .filter(|&c| !has_incoming[c])
        .map(|c| representative[c])
        .collect();
    sources.sort_unstable();

    if let [only] = sources[..] {
        if comp_size[comp[only]] == 1 {
            return RootedGraph::new(graph, only);
        }
    }

    let n = graph.node_count();
    let mut labels = graph.labels().to_vec();
    labels.push(VIRTUAL_ROOT_LABEL);
    let mut attributes = graph.attributes().to_vec();
    attributes.push(None);
    let edges: Vec<(NodeId, NodeId)> = graph
        .edges()
        .chain(sources.iter().map(|&s| (n, s)))
        .collect();
    let augmented = DirectedGraph::from_edges(labels, edges)?.with_attributes(attributes)?;
    RootedGraph::new(augmented, n)
}
