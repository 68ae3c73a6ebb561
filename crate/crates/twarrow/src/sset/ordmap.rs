//! Monotone maps between finite ordinals, stored as value lists: `f[t]` is the
//! image of `t`.

/// Coface `δ_i : [n-1] → [n]`, skipping `i`.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|t| if t < i { t } else { t + 1 }).collect()
}

/// Codegeneracy `σ_i : [n+1] → [n]`, hitting `i` twice.
pub fn codegeneracy(n: usize, i: usize) -> Vec<usize> {
    (0..n + 2).map(|t| if t <= i { t } else { t - 1 }).collect()
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..=n).collect()
}

/// `(f ∘ g)[t] = f[g[t]]`.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&t| f[t]).collect()
}

pub fn is_monotone(f: &[usize]) -> bool {
    f.windows(2).all(|w| w[0] <= w[1])
}

/// Epi-mono factorisation `f = mono ∘ epi`; `mono` is the sorted image.
pub fn epi_mono(f: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut mono: Vec<usize> = Vec::with_capacity(f.len());
    let mut epi = Vec::with_capacity(f.len());
    for &v in f {
        if mono.last() != Some(&v) {
            mono.push(v);
        }
        epi.push(mono.len() - 1);
    }
    (epi, mono)
}

/// All monotone surjections `[d] → [k]`, in lexicographic order.
pub fn surjections(d: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    if k > d {
        return vec![];
    }
    // a surjection is fixed by the k positions t in 0..d where f(t+1) = f(t) + 1
    let mut out: Vec<Vec<usize>> = (0..d)
        .combinations(k)
        .map(|steps| {
            let mut f = Vec::with_capacity(d + 1);
            let mut v = 0;
            f.push(0);
            for t in 0..d {
                if steps.contains(&t) {
                    v += 1;
                }
                f.push(v);
            }
            f
        })
        .collect();
    out.sort();
    out
}

/// All strictly increasing maps `[d] → [k]`, lexicographically.
pub fn injections(d: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..=k).combinations(d + 1).collect()
}

/// All monotone maps `[m] → [n]`, in lexicographic order.
pub fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m + 1);
    fn go(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m + 1 {
            out.push(cur.clone());
            return;
        }
        for v in lo..=n {
            cur.push(v);
            go(m, n, v, cur, out);
            cur.pop();
        }
    }
    go(m, n, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorisation_recomposes() {
        for f in monotone_maps(3, 3) {
            let (e, m) = epi_mono(&f);
            assert_eq!(compose(&m, &e), f);
            assert!(m.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn surjection_count_is_binomial() {
        assert_eq!(surjections(4, 2).len(), 6);
        assert_eq!(surjections(3, 3).len(), 1);
        assert!(surjections(2, 3).is_empty());
    }

    #[test]
    fn cosimplicial_identity_on_ordinals() {
        // δ_j δ_i = δ_i δ_{j-1} for i < j
        for n in 2..5 {
            for j in 0..=n {
                for i in 0..j {
                    let l = compose(&coface(n, j), &coface(n - 1, i));
                    let r = compose(&coface(n, i), &coface(n - 1, j - 1));
                    assert_eq!(l, r);
                }
            }
        }
    }
}
