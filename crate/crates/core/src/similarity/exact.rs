use rayon::prelude::*;

use super::profile::{collect_profiles, PathProfile};
use crate::dominator::DominatorTree;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

fn overlap<T: Scalar>(mine: &[usize], theirs: &[usize]) -> T {
    if mine.is_empty() {
        T::zero()
    } else {
        T::ratio(intersection_len(mine, theirs), mine.len())
    }
}

/// Similarity of `a` to `b`. A side with an empty set contributes 0.
///
/// Not symmetric: each ratio is taken relative to `a`'s own sets.
pub fn pairwise_similarity<T: Scalar>(a: &PathProfile, b: &PathProfile) -> T {
    let two = T::one() + T::one();
    (overlap::<T>(&a.incoming, &b.incoming) + overlap::<T>(&a.outgoing, &b.outgoing)) / two
}

/// Average similarity of each node to every other node. O(n^2) pairs.
pub fn mean_similarity<T: Scalar>(profiles: &[PathProfile]) -> Result<Vec<T>> {
    let n = profiles.len();
    if n < 2 {
        return Err(Error::TooFewNodes { required: 2, actual: n });
    }
    let others = T::from_count(n - 1);
    Ok(profiles
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            if p.incoming.is_empty() && p.outgoing.is_empty() {
                return T::zero();
            }
            let sum = profiles
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(T::zero(), |acc, (_, q)| acc + pairwise_similarity::<T>(p, q));
            sum / others
        })
        .collect())
}

/// Mean similarity of every node, with profiles taken on the dominator tree.
pub fn exact_similarity_scores<T: Scalar>(t: &DominatorTree) -> Result<Vec<T>> {
    if t.node_count() < 2 {
        return Err(Error::TooFewNodes { required: 2, actual: t.node_count() });
    }
    mean_similarity(&collect_profiles(&t.to_rooted_graph()))
}
