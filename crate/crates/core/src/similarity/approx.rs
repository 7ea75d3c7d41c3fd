use rayon::prelude::*;

use super::lsh::{LshIndex, LshParams};
use super::minhash::{MinHashSignature, MinHasher};
use super::profile::PathProfile;
use crate::dominator::DominatorTree;
use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, NodeId};
use crate::scalar::Scalar;

fn edge_key(u: NodeId, v: NodeId) -> u64 {
    ((u as u64) << 32) | v as u64
}

/// MinHash signatures of both profile sides for every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureSet {
    pub incoming: Vec<MinHashSignature>,
    pub outgoing: Vec<MinHashSignature>,
}

impl SignatureSet {
    pub fn len(&self) -> usize {
        self.incoming.len()
    }

    pub fn is_empty(&self) -> bool {
        self.incoming.is_empty()
    }
}

/// Signatures from explicit profiles. Edges are keyed by their endpoints in `graph`.
pub fn signatures_from_profiles(
    graph: &DirectedGraph,
    profiles: &[PathProfile],
    hasher: &MinHasher,
) -> SignatureSet {
    let sign = |edges: &[usize]| {
        hasher.signature(edges.iter().map(|&e| {
            let (u, v) = graph.edge(e);
            edge_key(u, v)
        }))
    };
    let (incoming, outgoing) = profiles
        .par_iter()
        .map(|p| (sign(&p.incoming), sign(&p.outgoing)))
        .unzip();
    SignatureSet { incoming, outgoing }
}

/// Signatures of the dominator-tree profiles without materialising them.
///
/// On a tree the incoming set of `v` is its parent's plus the edge into
/// `v`, and the outgoing set is the union over children of the child's set
/// plus the edge to the child, so each signature is a slot-wise minimum of
/// already-computed ones. Total work is O(n * num_perm).
pub fn tree_signatures(t: &DominatorTree, hasher: &MinHasher) -> SignatureSet {
    let n = t.node_count();
    let k = hasher.num_perm();
    let edge_sig: Vec<Option<MinHashSignature>> = (0..n)
        .into_par_iter()
        .map(|v| (v != t.root()).then(|| hasher.singleton(edge_key(t.idom(v), v))))
        .collect();

    let order = t.preorder();
    let mut incoming = vec![MinHashSignature::empty(k); n];
    for &v in order.iter().skip(1) {
        let mut sig = incoming[t.idom(v)].clone();
        sig.merge(edge_sig[v].as_ref().expect("non-root edge"));
        incoming[v] = sig;
    }
    let mut outgoing = vec![MinHashSignature::empty(k); n];
    for &v in order.iter().rev() {
        let mut sig = MinHashSignature::empty(k);
        for &c in t.children(v) {
            sig.merge(&outgoing[c]);
            sig.merge(edge_sig[c].as_ref().expect("non-root edge"));
        }
        outgoing[v] = sig;
    }
    SignatureSet { incoming, outgoing }
}

/// Inserts every node under its incoming and its outgoing signature.
pub fn build_lsh_index(signatures: &SignatureSet, params: LshParams) -> Result<LshIndex> {
    if signatures.incoming.iter().chain(&signatures.outgoing).any(|s| s.len() != params.num_perm) {
        return Err(Error::InvalidParameter("signature length differs from num_perm".into()));
    }
    LshIndex::build(params, &signatures.incoming, &signatures.outgoing)
}

/// Signatures and index for the profiles of a dominator tree.
pub fn build_tree_lsh_index(t: &DominatorTree, params: LshParams) -> Result<(SignatureSet, LshIndex)> {
    params.validate()?;
    let sigs = tree_signatures(t, &MinHasher::new(params.num_perm, params.seed));
    let index = build_lsh_index(&sigs, params)?;
    Ok((sigs, index))
}

/// Fraction of all nodes that collide with each node on either side,
/// the node itself excluded. `index` must have been built from
/// `signatures`, as [`build_lsh_index`] does.
pub fn approx_similarity_scores<T: Scalar>(signatures: &SignatureSet, index: &LshIndex) -> Result<Vec<T>> {
    let n = signatures.len();
    if n < 2 {
        return Err(Error::TooFewNodes { required: 2, actual: n });
    }
    if index.params().num_perm != signatures.incoming.first().map_or(0, |s| s.len()) {
        return Err(Error::InvalidParameter("signature length differs from the index".into()));
    }
    Ok(index
        .colliding_nodes(n)
        .iter()
        .enumerate()
        .map(|(v, similar)| T::ratio(similar.iter().filter(|&&u| u != v).count(), n))
        .collect())
}
