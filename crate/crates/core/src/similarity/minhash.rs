use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MERSENNE_PRIME: u64 = (1 << 61) - 1;

/// Value used for every slot of the signature of an empty set.
pub const EMPTY_SLOT: u64 = u64::MAX;

/// Fixed-length MinHash fingerprint of a set of 64-bit keys.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinHashSignature {
    values: Vec<u64>,
}

impl MinHashSignature {
    /// Signature of the empty set under `num_perm` permutations.
    pub fn empty(num_perm: usize) -> Self {
        Self { values: vec![EMPTY_SLOT; num_perm] }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Number of slots. See [`is_empty_set`](Self::is_empty_set) for the
    /// emptiness of the underlying set.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty_set(&self) -> bool {
        self.values.iter().all(|&v| v == EMPTY_SLOT)
    }

    /// Signature of the union of the two underlying sets.
    pub fn merge(&mut self, other: &MinHashSignature) {
        for (a, &b) in self.values.iter_mut().zip(&other.values) {
            *a = (*a).min(b);
        }
    }

    /// Fraction of agreeing slots, an unbiased estimate of Jaccard similarity.
    pub fn jaccard(&self, other: &MinHashSignature) -> f64 {
        assert_eq!(self.len(), other.len(), "signature lengths differ");
        let same = self.values.iter().zip(&other.values).filter(|(a, b)| a == b).count();
        same as f64 / self.len() as f64
    }
}

/// Universal hash family `(a * x + b) mod (2^61 - 1)` drawn from a seed.
#[derive(Debug, Clone)]
pub struct MinHasher {
    coefficients: Vec<(u64, u64)>,
}

impl MinHasher {
    pub fn new(num_perm: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coefficients = (0..num_perm)
            .map(|_| (rng.gen_range(1..MERSENNE_PRIME), rng.gen_range(0..MERSENNE_PRIME)))
            .collect();
        Self { coefficients }
    }

    pub fn num_perm(&self) -> usize {
        self.coefficients.len()
    }

    /// Signature of a single key.
    pub fn singleton(&self, key: u64) -> MinHashSignature {
        let x = splitmix64(key) % MERSENNE_PRIME;
        let values = self
            .coefficients
            .iter()
            .map(|&(a, b)| ((a as u128 * x as u128 + b as u128) % MERSENNE_PRIME as u128) as u64)
            .collect();
        MinHashSignature { values }
    }

    pub fn signature<I: IntoIterator<Item = u64>>(&self, keys: I) -> MinHashSignature {
        let mut sig = MinHashSignature::empty(self.num_perm());
        for key in keys {
            sig.merge(&self.singleton(key));
        }
        sig
    }
}

pub(crate) fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}
