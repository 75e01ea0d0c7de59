use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of {0..n-1} in one-line form: `image[i]` is the image of `i`.
///
/// All indices are 0-based internally; the 1-based shift happens at the
/// file-format and report boundaries only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Validates that `image` is a bijection of {0..n-1}.
    pub fn new(image: Vec<usize>) -> Option<Permutation> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(Permutation { image })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation { image: (0..n).collect() }
    }

    /// Expands a list of cycles over 1..n into one-line form.
    /// Cycles are composed left to right with the later cycle applied first,
    /// matching the (f.g)(i) = f(g(i)) convention.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Permutation> {
        let mut acc: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for &v in cycle {
                if v == 0 || v > n {
                    return Err(Error::IndexOutOfRange { index: v, n });
                }
            }
            let mut step: Vec<usize> = (0..n).collect();
            for i in 0..cycle.len() {
                step[cycle[i] - 1] = cycle[(i + 1) % cycle.len()] - 1;
            }
            // acc = acc . step
            acc = (0..n).map(|i| acc[step[i]]).collect();
        }
        Ok(Permutation { image: acc })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    /// Composition (self.other)(i) = self(other(i)); `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.len(), other.len());
        Permutation {
            image: (0..self.len()).map(|i| self.image[other.image[i]]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn one_line(&self) -> &[usize] {
        &self.image
    }

    /// One-line form as 1-based indices, for reports.
    pub fn one_line_1based(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v + 1).collect()
    }
}
