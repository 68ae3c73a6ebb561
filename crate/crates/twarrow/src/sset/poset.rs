use crate::error::{invalid, Result};

/// A finite poset on elements `0..len` with a dense order matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Build from an explicit relation, checking it is a partial order.
    pub fn new(names: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = names.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return invalid("order matrix has the wrong shape");
        }
        for a in 0..n {
            if !leq[a][a] {
                return invalid(format!("relation is not reflexive at {}", names[a]));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return invalid(format!("relation is not antisymmetric at {}, {}", names[a], names[b]));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return invalid(format!(
                            "relation is not transitive at {}, {}, {}",
                            names[a], names[b], names[c]
                        ));
                    }
                }
            }
        }
        Ok(FinitePoset { names, leq })
    }

    /// Reflexive-transitive closure of the given covering pairs `a < b`.
    pub fn from_relations(names: Vec<String>, lt: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (a, row) in leq.iter_mut().enumerate() {
            row[a] = true;
        }
        for &(a, b) in lt {
            if a >= n || b >= n {
                return invalid("relation mentions an unknown element");
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for a in 0..n {
                if leq[a][k] {
                    for b in 0..n {
                        if leq[k][b] {
                            leq[a][b] = true;
                        }
                    }
                }
            }
        }
        FinitePoset::new(names, leq)
    }

    /// The chain `[n] = {0 < 1 < ⋯ < n}`.
    pub fn chain(n: usize) -> Self {
        let names = (0..=n).map(|i| i.to_string()).collect();
        let leq = (0..=n).map(|a| (0..=n).map(|b| a <= b).collect()).collect();
        FinitePoset { names, leq }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq[a][b] || self.leq[b][a]
    }

    pub fn opposite(&self) -> Self {
        let n = self.len();
        let leq = (0..n).map(|a| (0..n).map(|b| self.leq[b][a]).collect()).collect();
        FinitePoset { names: self.names.clone(), leq }
    }

    /// Product order; element `(a, b)` has index `a * |other| + b`.
    pub fn product(&self, other: &Self) -> Self {
        let (n, m) = (self.len(), other.len());
        let mut names = Vec::with_capacity(n * m);
        for a in 0..n {
            for b in 0..m {
                names.push(format!("({},{})", self.names[a], other.names[b]));
            }
        }
        let leq = (0..n * m)
            .map(|x| (0..n * m).map(|y| self.leq[x / m][y / m] && other.leq[x % m][y % m]).collect())
            .collect();
        FinitePoset { names, leq }
    }

    /// Ordinal sum: every element of `self` lies below every element of `other`.
    pub fn ordinal_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.len(), other.len());
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let leq = (0..n + m)
            .map(|x| {
                (0..n + m)
                    .map(|y| match (x < n, y < n) {
                        (true, true) => self.leq[x][y],
                        (false, false) => other.leq[x - n][y - n],
                        (true, false) => true,
                        (false, true) => false,
                    })
                    .collect()
            })
            .collect();
        FinitePoset { names, leq }
    }

    /// Full subposet on the listed elements, in the given order.
    pub fn restrict(&self, elems: &[usize]) -> Self {
        let names = elems.iter().map(|&a| self.names[a].clone()).collect();
        let leq = elems.iter().map(|&a| elems.iter().map(|&b| self.leq[a][b]).collect()).collect();
        FinitePoset { names, leq }
    }

    /// A linear extension, smallest index first among minimal elements.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n)
                .find(|&a| !placed[a] && (0..n).all(|b| placed[b] || b == a || !self.leq[b][a]))
                .expect("partial orders have minimal elements");
            placed[next] = true;
            out.push(next);
        }
        out
    }

    /// All strictly increasing chains, sorted by length then lexicographically
    /// after listing each chain bottom-up.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let ext = self.linear_extension();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn go(p: &FinitePoset, ext: &[usize], from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            for k in from..ext.len() {
                let x = ext[k];
                if cur.last().is_none_or(|&l| p.lt(l, x)) {
                    cur.push(x);
                    out.push(cur.clone());
                    go(p, ext, k + 1, cur, out);
                    cur.pop();
                }
            }
        }
        go(self, &ext, 0, &mut cur, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Number of monotone maps `[m] → P`.
    pub fn count_monotone(&self, m: usize) -> usize {
        let n = self.len();
        // dp[a] = number of weakly increasing sequences of current length ending at a
        let mut dp = vec![1usize; n];
        for _ in 0..m {
            dp = (0..n).map(|b| (0..n).filter(|&a| self.leq[a][b]).map(|a| dp[a]).sum()).collect();
        }
        dp.iter().sum()
    }

    /// All posets on `n` labelled elements `0..n` in which `a ≤ b` implies
    /// `a ≤ b` as integers. Every finite poset is isomorphic to one of these.
    pub fn natural_posets(n: usize) -> Vec<FinitePoset> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << pairs.len()) {
            let mut leq = vec![vec![false; n]; n];
            for (a, row) in leq.iter_mut().enumerate() {
                row[a] = true;
            }
            for (k, &(a, b)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    leq[a][b] = true;
                }
            }
            let transitive = (0..n).all(|a| {
                (a..n).all(|b| !leq[a][b] || (b..n).all(|c| !leq[b][c] || leq[a][c]))
            });
            if transitive {
                out.push(FinitePoset { names: names.clone(), leq });
            }
        }
        out
    }

    /// Covering relations `a ⋖ b`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_cycles() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(FinitePoset::from_relations(names, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn natural_poset_counts() {
        // labelled posets admitting the identity as a linear extension
        let counts: Vec<usize> = (0..=5).map(|n| FinitePoset::natural_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 7, 40, 357]);
    }

    #[test]
    fn monotone_count_on_chain() {
        // weakly increasing maps [m] → [n] number C(m+n+1, m+1)
        assert_eq!(FinitePoset::chain(2).count_monotone(1), 6);
        assert_eq!(FinitePoset::chain(1).count_monotone(3), 5);
    }
}
