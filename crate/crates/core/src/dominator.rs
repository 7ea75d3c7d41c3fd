//! Dominator trees via Lengauer-Tarjan, plus a definitional oracle.
//!
//! Node `d` dominates `v` when every path from the root to `v` passes
//! through `d`. The tree stores each node's immediate dominator; the
//! dominators of `v` are exactly its ancestors.
//!
//! The construction is the "simple" variant: link without balancing and
//! eval with path compression, O(m log n).

use std::collections::VecDeque;
use std::io::Write;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeId, RootedGraph};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatorTree {
    root: NodeId,
    idom: Vec<NodeId>,
    children: Vec<Vec<NodeId>>,
    desc_count: Vec<usize>,
    depth: Vec<usize>,
    labels: Vec<u64>,
    virtual_root: bool,
}

impl DominatorTree {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.idom.len()
    }

    /// Immediate dominator; the root maps to itself.
    pub fn idom(&self, v: NodeId) -> NodeId {
        self.idom[v]
    }

    pub fn idoms(&self) -> &[NodeId] {
        &self.idom
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v]
    }

    pub fn desc_count(&self, v: NodeId) -> usize {
        self.desc_count[v]
    }

    pub fn desc_counts(&self) -> &[usize] {
        &self.desc_count
    }

    pub fn depth(&self, v: NodeId) -> usize {
        self.depth[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn has_virtual_root(&self) -> bool {
        self.virtual_root
    }

    /// Proper descendants of `v`, ascending.
    pub fn proper_descendants(&self, v: NodeId) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.desc_count[v]);
        let mut stack: Vec<NodeId> = self.children[v].clone();
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend_from_slice(&self.children[u]);
        }
        out.sort_unstable();
        out
    }

    /// Whether `d` dominates `v` (reflexive).
    pub fn dominates(&self, d: NodeId, mut v: NodeId) -> bool {
        if self.depth[d] > self.depth[v] {
            return false;
        }
        while self.depth[v] > self.depth[d] {
            v = self.idom[v];
        }
        v == d
    }

    /// Nodes in tree preorder, children visited in ascending id order.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.node_count());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        order
    }

    /// The tree as a rooted graph with one edge `idom(v) -> v` per non-root node.
    pub fn to_rooted_graph(&self) -> RootedGraph {
        let edges = (0..self.node_count())
            .filter(|&v| v != self.root)
            .map(|v| (self.idom[v], v));
        let graph = DirectedGraph::from_edges(self.labels.clone(), edges)
            .expect("tree edges are in range");
        RootedGraph {
            graph,
            root: self.root,
            virtual_root_added: self.virtual_root,
        }
    }

    /// Writes `node idom` per line, virtual root omitted and shown as `*`.
    pub fn write_dump<W: Write>(&self, graph: &DirectedGraph, mut out: W) -> Result<()> {
        for v in 0..self.node_count() {
            if self.virtual_root && v == self.root {
                continue;
            }
            writeln!(out, "{} {}", graph.display_label(v), graph.display_label(self.idom[v]))?;
        }
        Ok(())
    }
}

/// Builds the dominator tree of a rooted graph.
pub fn compute_dominator_tree(g: &RootedGraph) -> Result<DominatorTree> {
    let graph = &g.graph;
    let n = graph.node_count();

    // DFS preorder numbering; successors taken in adjacency order
    let mut dfnum = vec![NONE; n];
    let mut vertex: Vec<NodeId> = Vec::with_capacity(n);
    let mut parent = vec![NONE; n];
    let mut stack: Vec<(NodeId, usize)> = vec![(g.root, 0)];
    dfnum[g.root] = 0;
    vertex.push(g.root);
    while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
        match graph.successors(v).nth(*pos) {
            Some(w) => {
                *pos += 1;
                if dfnum[w] == NONE {
                    dfnum[w] = vertex.len();
                    vertex.push(w);
                    parent[dfnum[w]] = dfnum[v];
                    stack.push((w, 0));
                }
            }
            None => {
                stack.pop();
            }
        }
    }
    if let Some(node) = dfnum.iter().position(|&d| d == NONE) {
        return Err(Error::Unreachable { node });
    }

    // everything below is indexed by DFS number
    let mut semi: Vec<usize> = (0..n).collect();
    let mut idom = vec![NONE; n];
    let mut ancestor = vec![NONE; n];
    let mut label: Vec<usize> = (0..n).collect();
    let mut bucket: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut path: Vec<usize> = Vec::new();

    for w in (1..n).rev() {
        for p in graph.predecessors(vertex[w]) {
            let v = dfnum[p];
            let u = eval(v, &mut ancestor, &mut label, &semi, &mut path);
            if semi[u] < semi[w] {
                semi[w] = semi[u];
            }
        }
        bucket[semi[w]].push(w);
        let pw = parent[w];
        ancestor[w] = pw;
        for v in std::mem::take(&mut bucket[pw]) {
            let u = eval(v, &mut ancestor, &mut label, &semi, &mut path);
            idom[v] = if semi[u] < semi[v] { u } else { pw };
        }
    }
    for w in 1..n {
        if idom[w] != semi[w] {
            idom[w] = idom[idom[w]];
        }
    }
    idom[0] = 0;

    let mut idom_node = vec![NONE; n];
    for w in 0..n {
        idom_node[vertex[w]] = vertex[idom[w]];
    }
    Ok(build_tree(g, idom_node))
}

fn eval(
    v: usize,
    ancestor: &mut [usize],
    label: &mut [usize],
    semi: &[usize],
    path: &mut Vec<usize>,
) -> usize {
    if ancestor[v] == NONE {
        return v;
    }
    // path compression, iteratively: collect nodes whose grand-ancestor exists
    path.clear();
    let mut x = v;
    while ancestor[ancestor[x]] != NONE {
        path.push(x);
        x = ancestor[x];
    }
    while let Some(y) = path.pop() {
        let a = ancestor[y];
        if semi[label[a]] < semi[label[y]] {
            label[y] = label[a];
        }
        ancestor[y] = ancestor[a];
    }
    label[v]
}

fn build_tree(g: &RootedGraph, idom: Vec<NodeId>) -> DominatorTree {
    let n = idom.len();
    let mut children = vec![Vec::new(); n];
    for v in 0..n {
        if v != g.root {
            children[idom[v]].push(v);
        }
    }
    let mut depth = vec![0usize; n];
    let mut queue = VecDeque::from([g.root]);
    while let Some(v) = queue.pop_front() {
        for &c in &children[v] {
            depth[c] = depth[v] + 1;
            queue.push_back(c);
        }
    }
    let mut tree = DominatorTree {
        root: g.root,
        idom,
        children,
        desc_count: Vec::new(),
        depth,
        labels: g.graph.labels().to_vec(),
        virtual_root: g.virtual_root_added,
    };
    tree.desc_count = descendant_counts(&tree);
    tree
}

/// Proper-descendant count of every node, from one post-order pass.
pub fn descendant_counts(t: &DominatorTree) -> Vec<usize> {
    let mut counts = vec![0usize; t.node_count()];
    for v in t.preorder().into_iter().rev() {
        counts[v] = t.children[v].iter().map(|&c| counts[c] + 1).sum();
    }
    counts
}

/// Nodes dominated by `v`, found by deleting `v` and searching from the root.
pub fn brute_force_dominance(g: &RootedGraph, v: NodeId) -> Result<Vec<NodeId>> {
    if v == g.root {
        return Err(Error::InvalidParameter("the root dominates every node".into()));
    }
    let graph = &g.graph;
    let mut seen = vec![false; graph.node_count()];
    seen[g.root] = true;
    seen[v] = true;
    let mut queue = VecDeque::from([g.root]);
    while let Some(u) = queue.pop_front() {
        for w in graph.successors(u) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    Ok((0..graph.node_count()).filter(|&u| u != v && !seen[u]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{preprocess, RootPolicy};

    fn rooted(edges: &[(u64, u64)], root: u64) -> RootedGraph {
        let g = DirectedGraph::from_label_edges(edges).unwrap();
        preprocess(g, RootPolicy::Designated(root)).unwrap()
    }

    #[test]
    fn chain() {
        let g = rooted(&[(0, 1), (1, 2)], 0);
        let t = compute_dominator_tree(&g).unwrap();
        assert_eq!(t.idoms(), &[0, 0, 1]);
        assert_eq!(t.desc_counts(), &[2, 1, 0]);
        assert_eq!(brute_force_dominance(&g, 1).unwrap(), vec![2]);
    }

    #[test]
    fn diamond() {
        let g = rooted(&[(0, 1), (0, 2), (1, 3), (2, 3)], 0);
        let t = compute_dominator_tree(&g).unwrap();
        assert_eq!(t.idom(3), 0);
        assert!(brute_force_dominance(&g, 1).unwrap().is_empty());
        assert_eq!(t.desc_counts(), &[3, 0, 0, 0]);
    }

    #[test]
    fn star() {
        let g = rooted(&[(0, 1), (0, 2), (0, 3)], 0);
        let t = compute_dominator_tree(&g).unwrap();
        assert_eq!(descendant_counts(&t), vec![3, 0, 0, 0]);
    }

    #[test]
    fn irrelevant_edges_are_dropped() {
        // 3->5, 8->2 and 8->6 do not change any immediate dominator
        let edges = [(0, 1), (0, 2), (1, 3), (1, 4), (3, 5), (4, 5), (2, 6), (2, 8), (8, 2), (8, 6), (6, 7)];
        let g = rooted(&edges, 0);
        let t = compute_dominator_tree(&g).unwrap();
        let tree_edges = t.to_rooted_graph().graph.label_edges();
        for e in [(3, 5), (8, 2), (8, 6)] {
            assert!(g.graph.label_edges().contains(&e));
            assert!(!tree_edges.contains(&e));
        }
        assert_eq!(tree_edges.len(), g.node_count() - 1);
    }

    #[test]
    fn loop_with_back_edge() {
        // classic example with a cross edge into a loop
        let g = rooted(&[(0, 1), (1, 2), (2, 3), (3, 1), (0, 4), (4, 2), (3, 5)], 0);
        let t = compute_dominator_tree(&g).unwrap();
        assert_eq!(t.idom(1), 0);
        assert_eq!(t.idom(2), 0);
        assert_eq!(t.idom(3), 2);
        assert_eq!(t.idom(5), 3);
        assert!(t.dominates(2, 5));
        assert!(!t.dominates(1, 5));
    }

    #[test]
    fn root_oracle_rejected() {
        let g = rooted(&[(0, 1)], 0);
        assert!(brute_force_dominance(&g, 0).is_err());
    }

    #[test]
    fn dump_format() {
        let g = rooted(&[(0, 1), (1, 2)], 0);
        let t = compute_dominator_tree(&g).unwrap();
        let mut buf = Vec::new();
        t.write_dump(&g.graph, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0 0\n1 0\n2 1\n");
    }
}
