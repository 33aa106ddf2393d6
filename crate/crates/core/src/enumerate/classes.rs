//! Deduplication of configurations up to `GL_n(Z)`.

use std::collections::{HashMap, HashSet};

use crate::equiv::{are_equivalent, fingerprint, Fingerprint, IntMat};
use crate::error::Result;
use crate::forms::config::VectorConfiguration;

/// Class representatives bucketed by fingerprint. Insertion order decides
/// which member of a class is kept, so sequential insertion of an ordered
/// candidate list is deterministic.
#[derive(Clone, Debug, Default)]
pub struct ClassStore {
    reps: Vec<VectorConfiguration>,
    prints: Vec<Fingerprint>,
    buckets: HashMap<Fingerprint, Vec<usize>>,
    seen: HashSet<VectorConfiguration>,
}

impl ClassStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn reps(&self) -> &[VectorConfiguration] {
        &self.reps
    }

    /// Index of the class of `v` with `g` such that `g·v` is the stored
    /// representative.
    pub fn find(&self, v: &VectorConfiguration) -> Result<Option<(usize, IntMat)>> {
        let fp = fingerprint(v);
        let Some(bucket) = self.buckets.get(&fp) else {
            return Ok(None);
        };
        for &i in bucket {
            if let Some(g) = are_equivalent(v, &self.reps[i])? {
                return Ok(Some((i, g)));
            }
        }
        Ok(None)
    }

    /// Adds `v` unless its class is already present; returns whether it was
    /// added.
    pub fn insert(&mut self, v: VectorConfiguration) -> Result<bool> {
        if self.seen.contains(&v) {
            return Ok(false);
        }
        self.seen.insert(v.clone());
        if self.find(&v)?.is_some() {
            return Ok(false);
        }
        let fp = fingerprint(&v);
        self.buckets.entry(fp.clone()).or_default().push(self.reps.len());
        self.prints.push(fp);
        self.reps.push(v);
        Ok(true)
    }

    /// Representatives in canonical order: by fingerprint, then by the
    /// configuration itself.
    pub fn sorted(&self) -> Vec<VectorConfiguration> {
        self.clone().into_sorted()
    }

    pub fn into_sorted(self) -> Vec<VectorConfiguration> {
        let mut pairs: Vec<(Fingerprint, VectorConfiguration)> = self.prints.into_iter().zip(self.reps).collect();
        pairs.sort();
        pairs.into_iter().map(|(_, v)| v).collect()
    }
}

/// Sorts representatives canonically.
pub fn sort_canonical(reps: &mut [VectorConfiguration]) {
    reps.sort_by_cached_key(|v| (fingerprint(v), v.clone()));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_by_class() {
        let a = VectorConfiguration::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let b = VectorConfiguration::new(2, vec![vec![1, 0], vec![0, 1], vec![1, -1]]).unwrap();
        let c = VectorConfiguration::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let mut s = ClassStore::new();
        assert!(s.insert(a).unwrap());
        assert!(!s.insert(b.clone()).unwrap());
        assert!(s.insert(c).unwrap());
        assert_eq!(s.len(), 2);
        let (i, g) = s.find(&b).unwrap().unwrap();
        assert_eq!(b.transform(&g), s.reps()[i]);
    }
}
