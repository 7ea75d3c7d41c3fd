//! Path profiles and node similarity, exact and sketched.
//!
//! A node's profile is a pair of edge sets: the edges lying on some path
//! from the root to the node, and the edges reachable from the node.
//! Similarity of `a` to `b` averages the fraction of `a`'s incoming edges
//! shared with `b` and the fraction of `a`'s outgoing edges shared with `b`.

mod approx;
mod exact;
mod lsh;
mod minhash;
mod profile;

pub use approx::{
    approx_similarity_scores, build_lsh_index, build_tree_lsh_index, signatures_from_profiles,
    tree_signatures, SignatureSet,
};
pub use exact::{exact_similarity_scores, mean_similarity, pairwise_similarity};
pub use lsh::{optimal_band_params, LshIndex, LshParams, ProfileSide};
pub use minhash::{MinHashSignature, MinHasher};
pub use profile::{collect_profiles, PathProfile};
