//! Partitions labelling the irreducible representations of `Sp(2g)`.

use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be weakly decreasing and positive")]
    NotDecreasing,
    #[error("partition has {len} parts but g = {g}")]
    TooLong { len: usize, g: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        if parts.windows(2).any(|p| p[0] < p[1]) || parts.iter().any(|&p| p == 0) {
            return Err(PartitionError::NotDecreasing);
        }
        Ok(Partition(parts))
    }

    pub fn trivial() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|lambda|`, the sum of the parts.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn check_fits(&self, g: usize) -> Result<(), PartitionError> {
        if self.len() > g {
            return Err(PartitionError::TooLong { len: self.len(), g });
        }
        Ok(())
    }

    /// Weight-vector form padded to length `g`.
    pub fn to_weight(&self, g: usize) -> Vec<i64> {
        let mut w = vec![0i64; g];
        for (i, &p) in self.0.iter().enumerate() {
            w[i] = p as i64;
        }
        w
    }

    /// Build from a dominant weight vector (weakly decreasing, nonnegative).
    pub fn from_weight(w: &[i64]) -> Option<Self> {
        let mut parts = Vec::new();
        for window in w.windows(2) {
            if window[0] < window[1] {
                return None;
            }
        }
        for &x in w {
            if x < 0 {
                return None;
            }
            if x > 0 {
                parts.push(x as u32);
            }
        }
        Some(Partition(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.0
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validity() {
        assert!(Partition::new(vec![2, 1, 1]).is_ok());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![1, 0]).is_err());
        assert_eq!(Partition::trivial().size(), 0);
    }

    #[test]
    fn weight_roundtrip() {
        let p = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(p.to_weight(4), vec![3, 1, 0, 0]);
        assert_eq!(Partition::from_weight(&[3, 1, 0, 0]), Some(p));
        assert_eq!(Partition::from_weight(&[1, 2]), None);
        assert_eq!(Partition::from_weight(&[1, -1]), None);
    }
}
