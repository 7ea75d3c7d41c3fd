use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::similarity::{mean_similarity, PathProfile};

/// Per-node criticality, mean similarity and their product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreTable<T> {
    pub criticality: Vec<T>,
    pub mean_similarity: Vec<T>,
    pub substitutability: Vec<T>,
}

impl<T: Scalar> ScoreTable<T> {
    /// Combines criticality and mean similarity: `B(v) = c(v) * S̄(v)`.
    pub fn from_parts(criticality: Vec<T>, mean_similarity: Vec<T>) -> Result<Self> {
        if criticality.len() != mean_similarity.len() {
            return Err(Error::InvalidParameter(format!(
                "{} criticality values for {} similarity values",
                criticality.len(),
                mean_similarity.len()
            )));
        }
        let substitutability = criticality
            .iter()
            .zip(&mean_similarity)
            .map(|(&c, &s)| c * s)
            .collect();
        Ok(Self { criticality, mean_similarity, substitutability })
    }

    pub fn len(&self) -> usize {
        self.criticality.len()
    }

    pub fn is_empty(&self) -> bool {
        self.criticality.is_empty()
    }
}

/// Substitutability of every node from its criticality and the exact
/// pairwise similarities of the given profiles.
///
/// The criticality factor does not depend on the partner node, so it is
/// pulled out of the average.
pub fn substitutability<T: Scalar>(criticality: &[T], profiles: &[PathProfile]) -> Result<ScoreTable<T>> {
    if criticality.len() != profiles.len() {
        return Err(Error::InvalidParameter(format!(
            "{} criticality values for {} profiles",
            criticality.len(),
            profiles.len()
        )));
    }
    ScoreTable::from_parts(criticality.to_vec(), mean_similarity(profiles)?)
}

#[cfg(test)]
mod tests {
    use num_rational::Rational64;

    use super::*;

    fn same(n: usize) -> Vec<PathProfile> {
        vec![PathProfile { incoming: vec![0], outgoing: vec![1, 2] }; n]
    }

    #[test]
    fn zero_criticality_zero_substitutability() {
        let t = substitutability(&[0.0, 1.0, 0.5], &same(3)).unwrap();
        assert_eq!(t.substitutability, vec![0.0, 1.0, 0.5]);
    }

    #[test]
    fn upper_bound() {
        let one = Rational64::from_integer(1);
        let t = substitutability(&[one; 4], &same(4)).unwrap();
        assert!(t.substitutability.iter().all(|&b| b == one));
    }

    #[test]
    fn length_mismatch() {
        assert!(substitutability(&[1.0], &same(2)).is_err());
    }
}
