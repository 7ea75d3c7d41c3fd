use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::minhash::{splitmix64, MinHashSignature};
use crate::error::{Error, Result};
use crate::graph::NodeId;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LshParams {
    pub num_perm: usize,
    pub threshold: f64,
    pub seed: u64,
}

impl Default for LshParams {
    fn default() -> Self {
        Self { num_perm: 128, threshold: 0.5, seed: 0 }
    }
}

impl LshParams {
    pub fn validate(&self) -> Result<()> {
        if self.num_perm < 16 {
            return Err(Error::InvalidParameter(format!("num_perm must be >= 16, got {}", self.num_perm)));
        }
        if !(self.threshold > 0.0 && self.threshold < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "threshold must lie in (0, 1), got {}",
                self.threshold
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileSide {
    Incoming,
    Outgoing,
}

fn collision_probability(s: f64, bands: usize, rows: usize) -> f64 {
    1.0 - (1.0 - s.powi(rows as i32)).powi(bands as i32)
}

fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    const STEPS: usize = 200;
    let h = (b - a) / STEPS as f64;
    (0..STEPS).map(|i| f(a + (i as f64 + 0.5) * h)).sum::<f64>() * h
}

/// Band count and rows per band for `num_perm` slots that minimise the
/// sum of false-positive mass below `threshold` and false-negative mass
/// above it.
pub fn optimal_band_params(num_perm: usize, threshold: f64) -> (usize, usize) {
    let mut best = (1, num_perm);
    let mut best_err = f64::INFINITY;
    for bands in 1..=num_perm {
        for rows in 1..=num_perm / bands {
            let fp = integrate(|s| collision_probability(s, bands, rows), 0.0, threshold);
            let fneg = integrate(|s| 1.0 - collision_probability(s, bands, rows), threshold, 1.0);
            let err = 0.5 * fp + 0.5 * fneg;
            if err < best_err {
                best_err = err;
                best = (bands, rows);
            }
        }
    }
    best
}

/// Banded MinHash index with separate tables for the two profile sides.
///
/// Each band table is a sorted array of `(band key, node)` pairs, so a
/// bucket is a contiguous run found by binary search.
///
/// Signatures of empty sets are neither stored nor matched: an empty
/// profile side carries no structural information.
#[derive(Debug, Clone)]
pub struct LshIndex {
    params: LshParams,
    bands: usize,
    rows: usize,
    incoming: Vec<Vec<(u64, u32)>>,
    outgoing: Vec<Vec<(u64, u32)>>,
}

impl LshIndex {
    pub fn new(params: LshParams) -> Result<Self> {
        params.validate()?;
        let (bands, rows) = optimal_band_params(params.num_perm, params.threshold);
        Ok(Self { params, bands, rows, incoming: vec![Vec::new(); bands], outgoing: vec![Vec::new(); bands] })
    }

    /// Index over both sides of every node at once; entry `v` of each
    /// slice belongs to node `v`.
    pub fn build(params: LshParams, incoming: &[MinHashSignature], outgoing: &[MinHashSignature]) -> Result<Self> {
        let mut index = Self::new(params)?;
        for (side, sigs) in [(ProfileSide::Incoming, incoming), (ProfileSide::Outgoing, outgoing)] {
            for sig in sigs {
                index.check_len(sig)?;
            }
            let rows = index.rows;
            let tables = index.tables_mut(side);
            for (band, table) in tables.iter_mut().enumerate() {
                table.reserve(sigs.len());
                for (v, sig) in sigs.iter().enumerate().filter(|(_, s)| !s.is_empty_set()) {
                    table.push((band_key(sig, band, rows), v as u32));
                }
                table.sort_unstable();
            }
        }
        Ok(index)
    }

    pub fn params(&self) -> &LshParams {
        &self.params
    }

    /// `(bands, rows per band)`.
    pub fn band_shape(&self) -> (usize, usize) {
        (self.bands, self.rows)
    }

    fn check_len(&self, sig: &MinHashSignature) -> Result<()> {
        if sig.len() != self.params.num_perm {
            return Err(Error::InvalidParameter(format!(
                "signature has {} slots, index expects {}",
                sig.len(),
                self.params.num_perm
            )));
        }
        Ok(())
    }

    fn tables(&self, side: ProfileSide) -> &[Vec<(u64, u32)>] {
        match side {
            ProfileSide::Incoming => &self.incoming,
            ProfileSide::Outgoing => &self.outgoing,
        }
    }

    fn tables_mut(&mut self, side: ProfileSide) -> &mut [Vec<(u64, u32)>] {
        match side {
            ProfileSide::Incoming => &mut self.incoming,
            ProfileSide::Outgoing => &mut self.outgoing,
        }
    }

    /// Adds one signature, keeping every table sorted. Linear in the table
    /// size; use [`LshIndex::build`] for bulk loading.
    pub fn insert(&mut self, node: NodeId, side: ProfileSide, sig: &MinHashSignature) -> Result<()> {
        self.check_len(sig)?;
        if sig.is_empty_set() {
            return Ok(());
        }
        let rows = self.rows;
        for (band, table) in self.tables_mut(side).iter_mut().enumerate() {
            let entry = (band_key(sig, band, rows), node as u32);
            let at = table.partition_point(|e| *e < entry);
            table.insert(at, entry);
        }
        Ok(())
    }

    /// Nodes sharing at least one band with `sig`, ascending.
    pub fn query(&self, side: ProfileSide, sig: &MinHashSignature) -> Result<Vec<NodeId>> {
        self.check_len(sig)?;
        if sig.is_empty_set() {
            return Ok(Vec::new());
        }
        let mut out: Vec<NodeId> = Vec::new();
        for (band, table) in self.tables(side).iter().enumerate() {
            let key = band_key(sig, band, self.rows);
            let start = table.partition_point(|&(k, _)| k < key);
            out.extend(table[start..].iter().take_while(|&&(k, _)| k == key).map(|&(_, v)| v as usize));
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// For every node below `node_count`, the stored nodes sharing a band
    /// with it on either side, itself included, ascending.
    ///
    /// Equals querying each node's own stored signatures, but reads every
    /// bucket once instead of searching the tables per node.
    pub fn colliding_nodes(&self, node_count: usize) -> Vec<Vec<NodeId>> {
        let mut out: Vec<Vec<NodeId>> = vec![Vec::new(); node_count];
        for table in self.incoming.iter().chain(&self.outgoing) {
            for run in table.chunk_by(|a, b| a.0 == b.0) {
                for &(_, v) in run {
                    if let Some(list) = out.get_mut(v as usize) {
                        list.extend(run.iter().map(|&(_, u)| u as usize));
                    }
                }
            }
        }
        out.par_iter_mut().for_each(|list| {
            list.sort_unstable();
            list.dedup();
        });
        out
    }
}

fn band_key(sig: &MinHashSignature, band: usize, rows: usize) -> u64 {
    let start = band * rows;
    sig.values()[start..start + rows]
        .iter()
        .fold(band as u64, |acc, &v| splitmix64(acc ^ v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::similarity::MinHasher;

    #[test]
    fn band_shape_fits() {
        let (b, r) = optimal_band_params(128, 0.5);
        assert!(b * r <= 128);
        assert!(b > 1 && r > 1);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(LshIndex::new(LshParams { num_perm: 8, ..Default::default() }).is_err());
        assert!(LshIndex::new(LshParams { threshold: 1.0, ..Default::default() }).is_err());
        assert!(LshIndex::new(LshParams { threshold: 0.0, ..Default::default() }).is_err());
    }

    #[test]
    fn finds_itself() {
        let h = MinHasher::new(128, 9);
        let mut idx = LshIndex::new(LshParams::default()).unwrap();
        let sig = h.signature([3, 4, 5]);
        idx.insert(7, ProfileSide::Outgoing, &sig).unwrap();
        assert_eq!(idx.query(ProfileSide::Outgoing, &sig).unwrap(), vec![7]);
        assert!(idx.query(ProfileSide::Incoming, &sig).unwrap().is_empty());
    }

    #[test]
    fn colliding_nodes_match_queries() {
        let h = MinHasher::new(64, 2);
        let sets: Vec<Vec<u64>> = vec![vec![1, 2, 3], vec![1, 2, 3], vec![1, 2, 4], vec![9], vec![], vec![1, 2, 3, 4]];
        let sigs: Vec<MinHashSignature> = sets.iter().map(|s| h.signature(s.iter().copied())).collect();
        let reversed: Vec<MinHashSignature> = sigs.iter().rev().cloned().collect();
        let params = LshParams { num_perm: 64, threshold: 0.5, seed: 2 };
        let idx = LshIndex::build(params, &sigs, &reversed).unwrap();
        let joined = idx.colliding_nodes(sigs.len());
        for v in 0..sigs.len() {
            let mut expect = idx.query(ProfileSide::Incoming, &sigs[v]).unwrap();
            expect.extend(idx.query(ProfileSide::Outgoing, &reversed[v]).unwrap());
            expect.sort_unstable();
            expect.dedup();
            assert_eq!(joined[v], expect, "node {v}");
        }
        assert!(joined[0].contains(&1) && joined[1].contains(&0));
    }

    #[test]
    fn empty_signatures_ignored() {
        let mut idx = LshIndex::new(LshParams::default()).unwrap();
        let e = MinHashSignature::empty(128);
        idx.insert(1, ProfileSide::Incoming, &e).unwrap();
        assert!(idx.query(ProfileSide::Incoming, &e).unwrap().is_empty());
    }
}
