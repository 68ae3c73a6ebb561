use serde::{Deserialize, Serialize};
use std::fmt;

/// Identifier of a nondegenerate simplex: its dimension and its index among
/// the nondegenerate simplices of that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexId {
    pub dim: usize,
    pub idx: usize,
}

impl SimplexId {
    pub fn new(dim: usize, idx: usize) -> Self {
        SimplexId { dim, idx }
    }
}

impl fmt::Display for SimplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.dim, self.idx)
    }
}

/// A simplex in Eilenberg–Zilber normal form `s_{j_1} ⋯ s_{j_k} x` with
/// `j_1 > ⋯ > j_k` and `x` nondegenerate.
///
/// The word is exactly the set of positions `t` at which the underlying
/// surjection `η : [dim] → [base.dim]` repeats, i.e. `η(t) = η(t+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex {
    pub word: Vec<usize>,
    pub base: SimplexId,
}

impl Simplex {
    pub fn nondeg(base: SimplexId) -> Self {
        Simplex { word: Vec::new(), base }
    }

    pub fn vertex(idx: usize) -> Self {
        Simplex::nondeg(SimplexId::new(0, idx))
    }

    pub fn dim(&self) -> usize {
        self.base.dim + self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    pub fn is_normal(&self) -> bool {
        self.word.windows(2).all(|w| w[0] > w[1]) && self.word.iter().all(|&j| j < self.dim())
    }

    /// The surjection `η : [dim] → [base.dim]` with `self = η^* base`.
    pub fn surjection(&self) -> Vec<usize> {
        let d = self.dim();
        let mut eta = Vec::with_capacity(d + 1);
        let mut v = 0;
        eta.push(0);
        for t in 0..d {
            if !self.word.contains(&t) {
                v += 1;
            }
            eta.push(v);
        }
        eta
    }

    /// Inverse of [`Simplex::surjection`].
    pub fn from_surjection(eta: &[usize], base: SimplexId) -> Self {
        debug_assert_eq!(*eta.last().unwrap(), base.dim);
        let mut word: Vec<usize> = (0..eta.len() - 1).filter(|&t| eta[t] == eta[t + 1]).collect();
        word.reverse();
        Simplex { word, base }
    }

    /// Apply the degeneracy operators `s_{ops[0]} s_{ops[1]} ⋯` (outermost
    /// first) and return the normal form. Every index must be valid for the
    /// dimension it is applied at.
    pub fn degenerate(&self, ops: &[usize]) -> Self {
        let mut eta = self.surjection();
        for &j in ops.iter().rev() {
            // s_j x = σ_j^* x, so the surjection precomposes with σ_j
            let d = eta.len() - 1;
            assert!(j <= d, "degeneracy index {j} out of range at dimension {d}");
            let sigma = super::ordmap::codegeneracy(d, j);
            eta = super::ordmap::compose(&eta, &sigma);
        }
        Simplex::from_surjection(&eta, self.base)
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in &self.word {
            write!(f, "s{j} ")?;
        }
        write!(f, "[{}]", self.base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_round_trip() {
        let s = Simplex { word: vec![3, 1], base: SimplexId::new(2, 0) };
        let eta = s.surjection();
        assert_eq!(eta, vec![0, 1, 1, 2, 2]);
        assert_eq!(Simplex::from_surjection(&eta, s.base), s);
    }

    #[test]
    fn simplicial_degeneracy_identity() {
        // s_i s_j = s_{j+1} s_i for i ≤ j
        let x = Simplex::nondeg(SimplexId::new(2, 5));
        for j in 0..=2 {
            for i in 0..=j {
                assert_eq!(x.degenerate(&[i, j]), x.degenerate(&[j + 1, i]));
            }
        }
    }

    #[test]
    fn word_decreases() {
        let x = Simplex::nondeg(SimplexId::new(1, 0));
        let s = x.degenerate(&[0, 1, 0]);
        assert!(s.is_normal());
        assert_eq!(s.dim(), 4);
        assert_eq!(s.word.len(), 3);
    }
}
